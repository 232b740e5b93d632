#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qseries/askey_wilson.hpp"
#include "support.hpp"

#include <algorithm>
#include <array>

using namespace qseries;
using testing_support::Draw;

namespace {

AWParams<Gauss> random_point(Draw& d, long n)
{
    return AWParams<Gauss>{d.nonzero(), d.nonzero(), d.nonzero(), d.nonzero(), d.inside(), d.nonzero(), n};
}

} // namespace

TEST_CASE("degree zero is one")
{
    Draw d(31);
    auto p = random_point(d, 0);
    for (AWRep r : {AWRep::R1, AWRep::R2, AWRep::R3, AWRep::CONV})
        CHECK(eval_aw(p, r) == Gauss(1));
}

TEST_CASE("four representations agree exactly")
{
    Draw d(32);
    for (int trial = 0; trial < 15; ++trial) {
        auto p = random_point(d, d.uniform(1, 6));
        Gauss conv = eval_aw(p, AWRep::CONV);
        CHECK(eval_aw(p, AWRep::R1) == conv);
        CHECK(eval_aw(p, AWRep::R2) == conv);
        CHECK(eval_aw(p, AWRep::R3) == conv);
    }
}

TEST_CASE("value at w = d")
{
    Draw d(33);
    for (long n = 0; n <= 6; ++n) {
        auto p = random_point(d, n);
        auto v = eval_special_value(SpecialValueID::AW32, {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}, {"q", p.q}}, n);
        CHECK(v.lhs == v.rhs);
    }
}

TEST_CASE("symmetric in the four parameters and in w -> 1/w")
{
    Draw d(34);
    for (int trial = 0; trial < 3; ++trial) {
        auto p = random_point(d, d.uniform(1, 5));
        Gauss ref = eval_aw(p, AWRep::R1);
        std::array<Gauss, 4> prm{p.a, p.b, p.c, p.d};
        std::sort(prm.begin(), prm.end(), [](const Gauss& x, const Gauss& y) {
            return x.re < y.re || (x.re == y.re && x.im < y.im);
        });
        int count = 0;
        do {
            AWParams<Gauss> r = p;
            r.a = prm[0];
            r.b = prm[1];
            r.c = prm[2];
            r.d = prm[3];
            CHECK(eval_aw(r, AWRep::R1) == ref);
            ++count;
        } while (std::next_permutation(prm.begin(), prm.end(), [](const Gauss& x, const Gauss& y) {
            return x.re < y.re || (x.re == y.re && x.im < y.im);
        }));
        CHECK(count <= 24);
        AWParams<Gauss> inv = p;
        inv.w = Gauss(1) / p.w;
        CHECK(eval_aw(inv, AWRep::R2) == ref);
    }
}

TEST_CASE("polynomial of exact degree n in x")
{
    Draw d(35);
    for (long n = 0; n <= 6; ++n) {
        auto p = random_point(d, n);
        std::vector<Gauss> ws;
        for (long k = 0; k < n + 2; ++k)
            ws.push_back(Gauss(k + 2) + Gauss(k, 3) * Gauss::i());
        CHECK(aw_polynomiality_check(p, ws, AWRep::CONV).pass);
    }
}

TEST_CASE("continuous q-Hermite degeneration")
{
    const Gauss q(1, 3), w(2, 5);
    CHECK(aw_hermite_degenerate(w, q, 0) == Gauss(1));
    CHECK(aw_hermite_degenerate(w, q, 1) == w + Gauss(1) / w);
    for (long n = 0; n <= 8; ++n)
        CHECK(aw_hermite_degenerate(w, q, n) == aw_hermite_degenerate(Gauss(1) / w, q, n));
}

TEST_CASE("representations reject zero parameters, CONV accepts them")
{
    AWParams<Gauss> p{Gauss(0), Gauss(1, 2), Gauss(1, 3), Gauss(1, 5), Gauss(1, 2), Gauss(3), 3};
    CHECK_THROWS_AS(eval_aw(p, AWRep::R1), Error);
    CHECK_NOTHROW(eval_aw(p, AWRep::CONV));
    AWParams<Gauss> pole{Gauss(2), Gauss(1), Gauss(1, 3), Gauss(1, 5), Gauss(1, 2), Gauss(3), 3};
    CHECK_THROWS_WITH_AS(eval_aw(pole, AWRep::CONV), doctest::Contains("ab"), Error);
}

TEST_CASE("quadratic special values")
{
    const std::map<std::string, Gauss> pt{{"a", Gauss(1, 3)}, {"b", Gauss(1, 5)}, {"q", Gauss(1, 2)}};
    for (long n : {1L, 3L, 5L}) {
        auto v = eval_special_value(SpecialValueID::BAILEY0, pt, n);
        CHECK(v.lhs == Gauss(0));
        CHECK(v.rhs == Gauss(0));
    }
    for (auto id : {SpecialValueID::BAILEY0, SpecialValueID::ANDREWS_WHIPPLE0, SpecialValueID::NEWQUAD,
                    SpecialValueID::ESOTERIC}) {
        auto v0 = eval_special_value(id, pt, 0);
        CHECK(v0.lhs == Gauss(1));
        CHECK(v0.rhs == Gauss(1));
    }
    auto nq = eval_special_value(SpecialValueID::NEWQUAD, pt, 4);
    CHECK(nq.lhs == nq.rhs);
    CHECK(nq.rhs_alt.value() == nq.rhs);
    CHECK(eval_aw(AWParams<Gauss>{Gauss(1, 3) * Gauss::i(), -Gauss(1, 3) * Gauss::i(), Gauss(1, 5) * Gauss::i(),
                                  -Gauss(1, 10) * Gauss::i(), Gauss(1, 2), Gauss::i(), 4},
                  AWRep::CONV) == nq.lhs);

    Draw d(36);
    for (int trial = 0; trial < 4; ++trial) {
        std::map<std::string, Gauss> p{{"a", d.nonzero()}, {"b", d.nonzero()}, {"q", d.inside()}};
        for (long n = 0; n <= 10; ++n)
            for (auto id : {SpecialValueID::BAILEY0, SpecialValueID::ANDREWS_WHIPPLE0, SpecialValueID::NEWQUAD,
                            SpecialValueID::ESOTERIC}) {
                auto r = verify_special_value(id, p, n);
                CHECK_MESSAGE(r.pass, special_value_name(id), " n=", n);
            }
    }
}

TEST_CASE("three-term recurrence reproduces the 4phi3 values")
{
    Draw d(61);
    int done = 0;
    for (int t = 0; t < 60 && done < 20; ++t) {
        AWParams<Gauss> p{d.nonzero(), d.nonzero(), d.nonzero(), d.nonzero(), d.inside(), d.nonzero(), 0};
        try {
            AWSequence<Gauss> seq(p);
            bool all = true;
            for (long n = 0; n <= 8; ++n) {
                p.n = n;
                all = all && seq(n) == eval_aw(p, AWRep::R1);
            }
            CHECK(all);
            ++done;
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PoleError);
        }
    }
    CHECK(done >= 15);
}

TEST_CASE("recurrence stays accurate where R1 cancels in floating point")
{
    const long P = 256;
    AWParams<Complex> p{Complex(Gauss(1, 2), P), Complex(Gauss(1, 3), P), Complex(Gauss(1, 2), P),
                        Complex(Gauss(1, 5), P), Complex(Gauss(1, 3), P), Complex(Gauss(9, 10), P), 40};
    AWSequence<Complex> seq(p);
    const Complex conv = eval_aw(p, AWRep::CONV);
    CHECK(abs(seq(40) - conv).to_double() <= 1e-60 * abs(conv).to_double());
}

TEST_CASE("recurrence keeps relative precision when a is tiny")
{
    // a = q^60 a0 as in the deep shifts of the triple sum; w = -1 puts x at
    // the end of the orthogonality interval.
    const Gauss q(-1, 4), a = Gauss(mpq_class(-2, 11), mpq_class(3, 22)) * pow(q, 60);
    const Gauss b(1, 3), c(3, 4), d(5, 9), w(-1);
    AWSequence<Gauss> exact(AWParams<Gauss>{a, b, c, d, q, w, 0});
    const long P = 256;
    AWSequence<Complex> approx(
        AWParams<Complex>{Complex(a, P), Complex(b, P), Complex(c, P), Complex(d, P), Complex(q, P), Complex(w, P), 0});
    double worst = 0;
    for (long n = 0; n <= 24; ++n) {
        const Complex ref(exact(n), P);
        worst = std::max(worst, abs(approx(n) - ref).to_double() / abs(ref).to_double());
    }
    CHECK(worst < 1e-70);
}
