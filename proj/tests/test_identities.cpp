#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qseries/identities.hpp"
#include "support.hpp"

#include <algorithm>

using namespace qseries;
using testing_support::Draw;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::ParseError;
}

bool same(const VerificationReport& a, const VerificationReport& b)
{
    return a.identity_id == b.identity_id && a.n == b.n && a.params == b.params && a.lhs == b.lhs &&
           a.rhs == b.rhs && a.pass == b.pass && a.note == b.note;
}

} // namespace

TEST_CASE("registry lookup")
{
    auto ids = identity_ids();
    CHECK(ids.size() == 22);
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    CHECK(lookup("T_BAILEY41").balance == BalanceClass::balanced(1));
    CHECK(lookup("T_NEW_N3").balance == BalanceClass::balanced(2));
    CHECK(lookup("T_NEW_N7").balance == BalanceClass::balanced(3));
    CHECK(kind_of([] { lookup("nope"); }) == ErrorKind::UnknownIdentity);
    CHECK(kind_of([] { verify("nope", {}, 0); }) == ErrorKind::UnknownIdentity);
}

TEST_CASE("stored balance class matches the left side")
{
    for (const auto& r : identity_registry()) {
        CAPTURE(r.id);
        IdentitySampler s(r, seed_for(r.id, 11));
        for (int tries = 0; tries < 50; ++tries) {
            ParamMap m = s.draw();
            try {
                CHECK(balance_class(r.lhs(m, 3)) == r.balance);
                break;
            } catch (const Error&) {
            }
        }
    }
}

TEST_CASE("n = 0 gives 1 = 1")
{
    for (const auto& id : identity_ids()) {
        if (lookup(id).n_min > 0)
            continue;
        CAPTURE(id);
        auto reps = sweep(id, 2, 5, 0, 0);
        for (const auto& r : reps) {
            CHECK(r.pass);
            if (r.mode == "exact") {
                CHECK(r.lhs == "1");
                CHECK(r.rhs == "1");
            }
        }
    }
}

TEST_CASE("q-Watson vanishes for odd n")
{
    ParamMap m{{"q", Gauss(1, 2)}, {"s", Gauss(2, 3)}, {"sc", Gauss(1, 5)}};
    auto r = verify("T_ANDREWS_WATSON", m, 3);
    CHECK(r.pass);
    CHECK(r.lhs == "0");
    CHECK(r.rhs == "0");
    CHECK(r.degenerate);
    CHECK(r.note == "degenerate-by-parity");
}

TEST_CASE("quadratic summation at a fixed point")
{
    ParamMap m{{"q", Gauss(1, 2)}, {"sa", Gauss(1, 7)}, {"sc", Gauss(1, 3)}};
    auto r = verify("T_NEW_N2", m, 4);
    CHECK(r.pass);
    CHECK(r.mode == "exact");
    CHECK(r.abs_err == 0);
}

TEST_CASE("q-Bailey sweep, 25 points, n = 0..8")
{
    auto reps = sweep("T_QBAILEY_1", 25, 7, 0, 8);
    CHECK(reps.size() == 225);
    CHECK(std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.pass && r.abs_err == 0; }));
}

TEST_CASE("every exact record sweeps clean")
{
    for (const auto& r : identity_registry()) {
        if (r.approx_only)
            continue;
        CAPTURE(r.id);
        auto reps = sweep(r.id, 6, 3, 0, 8);
        CHECK(reps.size() == static_cast<size_t>(6 * (9 - r.n_min)));
        for (const auto& rep : reps) {
            CAPTURE(rep.n);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("approx-only records agree to 1e-40")
{
    for (const char* id : {"T_GASPER_RAHMAN_WATSON", "T_ANDREWS_WHIPPLE_E"}) {
        CAPTURE(id);
        auto reps = sweep(id, 4, 9, 0, 6);
        for (const auto& rep : reps) {
            CHECK(rep.mode == "approx");
            CHECK(rep.pass);
            CHECK(rep.rel_err <= 1e-40);
        }
    }
}

TEST_CASE("odd n vanishes exactly for the three parity sums")
{
    for (const char* id : {"T_ANDREWS_WATSON", "T_BAILEY41", "T_GASPER_RAHMAN_WATSON"}) {
        CAPTURE(id);
        for (long n : {1, 3, 5, 7, 9}) {
            auto reps = sweep(id, 5, 21, n, n);
            for (const auto& r : reps) {
                CHECK(r.pass);
                CHECK(r.abs_err == 0);
                CHECK(r.note == "degenerate-by-parity");
            }
        }
    }
}

TEST_CASE("sweeps are deterministic")
{
    auto a = sweep("T_NEW_N7", 3, 3, 0, 8);
    auto b = sweep("T_NEW_N7", 3, 3, 0, 8);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(same(a[i], b[i]));
    auto c = sweep("T_NEW_N7", 3, 4, 0, 8);
    CHECK(!same(a.front(), c.front()));
}

TEST_CASE("constraint violations name the predicate")
{
    ParamMap ok{{"q", Gauss(1, 2)}, {"a", Gauss(1, 3)}, {"b", Gauss(1, 5)}};
    CHECK(verify("T_BAILEY41", ok, 4).pass);

    auto message = [](const std::string& id, const ParamMap& m, long n) {
        try {
            verify(id, m, n);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ConstraintViolation);
            return std::string(e.what());
        }
        FAIL("expected ConstraintViolation");
        return std::string();
    };
    CHECK(message("T_BAILEY41", {{"q", Gauss(1, 2)}, {"a", Gauss(1, 3)}}, 2).find("'b'") != std::string::npos);
    CHECK(message("T_BAILEY41", {{"q", Gauss(2)}, {"a", Gauss(1, 3)}, {"b", Gauss(1, 5)}}, 2).find("|q|") !=
          std::string::npos);
    CHECK(message("T_BAILEY41", {{"q", Gauss(1, 2)}, {"a", Gauss(0)}, {"b", Gauss(1, 5)}}, 2).find("nonzero") !=
          std::string::npos);
    CHECK(message("T_BW_SUM", ok, 0).find("n >= 1") != std::string::npos);
    // lower parameter q^(1-n)/a = q^-1 lies in Omega_q
    CHECK(message("T_BAILEY41", {{"q", Gauss(1, 2)}, {"a", Gauss(4)}, {"b", Gauss(1, 5)}}, 4).find("pole") !=
          std::string::npos);
    // sa^2 = q^-2 makes 1 - q^(2n-2) a vanish at n = 2
    CHECK(message("T_NEW_N8", {{"q", Gauss(1, 2)}, {"sa", Gauss(2)}, {"sc", Gauss(1, 3)}}, 2).find("q^(2n-2)") !=
          std::string::npos);
}

TEST_CASE("the n = 0 value of the Berkovich-Warnaar sum is outside its domain")
{
    // The displayed closed form gives 2 at n = 0 while the series is 1.
    auto reps = sweep("T_BW_SUM", 3, 1, 0, 4);
    CHECK(reps.size() == 12);
    for (const auto& r : reps)
        CHECK(*r.n >= 1);
}

TEST_CASE("elementary identities")
{
    CHECK(elementary_identity_check(ElementaryKind::ELID, {{"q", Gauss(1, 2)}, {"a", Gauss(1, 3)}}, 1, 2).pass);
    auto z = elementary_identity_check(ElementaryKind::ELID2, {{"c", Gauss(0)}, {"q", Gauss(1, 2)}}, 3);
    CHECK(z.pass);
    CHECK(z.lhs == "1");
    CHECK(elementary_identity_check(ElementaryKind::ELID2, {{"c", Gauss(1, 4)}, {"q", Gauss(1, 2)}}, 3).pass);
    Draw d(5);
    for (int t = 0; t < 50; ++t) {
        long n = d.uniform(0, 6), k = d.uniform(0, n);
        ParamMap m{{"q", d.inside()}, {"a", d.nonzero()}, {"c", d.nonzero()}};
        try {
            bool e1 = elementary_identity_check(ElementaryKind::ELID, m, k, n).pass;
            bool e2 = elementary_identity_check(ElementaryKind::ELID2, m, k).pass;
            CHECK(e1);
            CHECK(e2);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PoleError);
        }
    }
    CHECK(kind_of([] {
              elementary_identity_check(ElementaryKind::ELID, {{"q", Gauss(1, 2)}, {"a", Gauss(1, 3)}}, 3, 2);
          }) == ErrorKind::PoleError);
}

TEST_CASE("Gasper-Rahman-Watson reduces to Bailey 1941")
{
    Draw d(41);
    int done = 0;
    for (int t = 0; t < 200 && done < 40; ++t) {
        long n = d.uniform(0, 8);
        try {
            auto r = gasper_rahman_bailey_equivalence(d.inside(), d.nonzero(), d.nonzero(), n);
            CHECK(r.pass);
            ++done;
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PoleError);
        }
    }
    CHECK(done >= 20);
}

TEST_CASE("the quadratic pair is connected by Sears' transformation")
{
    Draw d(42);
    int done = 0;
    for (int t = 0; t < 100 && done < 25; ++t) {
        long n = d.uniform(0, 8);
        try {
            bool ok = sears_connection_check(d.inside(), d.nonzero(), d.nonzero(), n).pass;
            CHECK(ok);
            ++done;
        } catch (const Error& e) {
            CHECK((e.kind() == ErrorKind::ConstraintViolation || e.kind() == ErrorKind::PoleError));
        }
    }
    CHECK(done >= 15);
}

TEST_CASE("corollary is the a = -q^(1-2n) specialization")
{
    Draw d(43);
    for (long n = 0; n <= 8; ++n) {
        for (int t = 0; t < 3; ++t) {
            try {
                bool ok = n6_n7_specialization(d.inside(), d.nonzero(), n).pass;
                CHECK(ok);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::PoleError);
            }
        }
    }
}

TEST_CASE("both Andrews-Whipple right sides agree")
{
    Draw d(44);
    int done = 0;
    for (int t = 0; t < 60 && done < 20; ++t) {
        long n = d.uniform(0, 8);
        try {
            auto r = andrews_whipple_rhs_agreement(d.inside(), d.nonzero(), d.nonzero(), n);
            CHECK(r.pass);
            ++done;
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PoleError);
        }
    }
    CHECK(done >= 10);
}
