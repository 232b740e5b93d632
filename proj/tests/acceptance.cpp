// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include "qseries/cli.hpp"
#include "qseries/integrals.hpp"
#include "qseries/products.hpp"
#include "support.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace qseries;
using Json = nlohmann::ordered_json;
using testing_support::diff;
using testing_support::Draw;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    // Keeps the first failure as the detail.
    void require(bool ok, const std::string& what)
    {
        if (!ok && pass)
            detail = what;
        pass = pass && ok;
    }
};

struct Cli {
    int code;
    std::string out, err;
};

Cli cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// |x - y| <= tol * max(1, |y|)
bool close(const Complex& x, const Complex& y, double tol)
{
    return diff(x, y) <= tol * std::max(1.0, abs(y).to_double());
}

using Params = std::map<std::string, Gauss>;

// Retries draws that land on a pole of some representation.
template <class F>
long exact_trials(Draw& d, long wanted, F&& body)
{
    long done = 0;
    for (long attempt = 0; attempt < 50 * wanted && done < wanted; ++attempt) {
        try {
            body(d);
            ++done;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PoleError && e.kind() != ErrorKind::ZeroFactor)
                throw;
        }
    }
    return done;
}

Outcome terminating_suite()
{
    Outcome o;
    long points = 0, zero_err = 0, degenerate = 0, entries = 0;
    for (const auto& id : identity_ids()) {
        const auto& rec = lookup(id);
        if (rec.approx_only)
            continue;
        ++entries;
        const long lo = std::max(0L, rec.n_min);
        auto r = cli({"sweep", id, "--trials", "25", "--seed", "2024", "--n-range", std::to_string(lo) + "..8",
                      "--mode", "exact"});
        o.require(r.code == 0, id + " exit " + std::to_string(r.code) + " " + r.err);
        if (r.code != 0 && r.code != 1)
            continue;
        auto doc = Json::parse(r.out);
        for (const auto& e : doc["reports"]) {
            ++points;
            if (e["degenerate"] == true) {
                ++degenerate;
                continue;
            }
            const bool ok = e["pass"] == true && e["abs_err"] == 0.0 && e["lhs"] == e["rhs"];
            zero_err += ok;
            o.require(ok, id + " n=" + e["n"].dump() + " lhs " + e["lhs"].get<std::string>());
        }
    }
    o.require(entries == 20, "expected 20 exact entries, found " + std::to_string(entries));
    if (o.pass)
        o.detail = std::to_string(entries) + " entries, " + std::to_string(points) + " reports, " +
                   std::to_string(zero_err) + " with error 0, " + std::to_string(degenerate) + " degenerate";
    return o;
}

Outcome parity_vanishing()
{
    Outcome o;
    long checked = 0;
    for (const char* id : {"T_ANDREWS_WATSON", "T_BAILEY41", "T_GASPER_RAHMAN_WATSON"}) {
        const auto& rec = lookup(id);
        for (long n : {1L, 3L, 5L, 7L, 9L}) {
            for (const auto& rep : sweep(id, 25, 11, n, n)) {
                // re-evaluate the left side exactly at the reported point
                ParamMap m;
                for (const auto& [k, v] : rep.params)
                    m[k] = parse_gauss(v);
                const Gauss lhs = eval_phi_terminating(rec.lhs(m, n));
                ++checked;
                const std::string at = std::string(id) + " n=" + std::to_string(n);
                o.require(lhs == Gauss(0), at + " lhs " + to_string(lhs));
                o.require(rep.pass && rep.degenerate, at + " not flagged degenerate");
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(checked) + " odd-degree left sides exactly 0";
    return o;
}

Outcome aw_cross_representation()
{
    Outcome o;
    Draw d(303);
    long evals = 0;
    long pts = exact_trials(d, 25, [&](Draw& dr) {
        AWParams<Gauss> p{dr.nonzero(), dr.nonzero(), dr.nonzero(), dr.nonzero(), dr.inside(), dr.nonzero(), 0};
        std::vector<Gauss> conv;
        for (long n = 0; n <= 8; ++n) {
            p.n = n;
            conv.push_back(eval_aw(p, AWRep::CONV));
            for (AWRep r : {AWRep::R1, AWRep::R2, AWRep::R3}) {
                const Gauss v = eval_aw(p, r);
                ++evals;
                o.require(v == conv.back(), std::string(rep_name(r)) + " != CONV at n=" + std::to_string(n));
            }
            auto sv = verify_special_value(SpecialValueID::AW32,
                                           {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}, {"q", p.q}}, n);
            o.require(sv.pass, "w = d value at n=" + std::to_string(n));
        }
    });
    o.require(pts == 25, "only " + std::to_string(pts) + " pole-free points");
    if (o.pass)
        o.detail = std::to_string(pts) + " points, n 0..8, " + std::to_string(evals) + " exact comparisons";
    return o;
}

Outcome quadratic_special_values()
{
    Outcome o;
    Draw d(404);
    long pts = exact_trials(d, 10, [&](Draw& dr) {
        Params p{{"a", dr.nonzero()}, {"b", dr.nonzero()}, {"q", dr.inside()}};
        for (long n = 0; n <= 10; ++n) {
            for (auto id : {SpecialValueID::BAILEY0, SpecialValueID::ANDREWS_WHIPPLE0, SpecialValueID::NEWQUAD,
                            SpecialValueID::ESOTERIC}) {
                auto r = verify_special_value(id, p, n);
                o.require(r.pass, std::string(special_value_name(id)) + " n=" + std::to_string(n));
            }
            auto nq = eval_special_value(SpecialValueID::NEWQUAD, p, n);
            o.require(nq.rhs_alt && *nq.rhs_alt == nq.rhs, "parity-split display differs at n=" + std::to_string(n));
        }
    });
    o.require(pts == 10, "only " + std::to_string(pts) + " pole-free points");
    if (o.pass)
        o.detail = std::to_string(pts) + " points, n 0..10, four values plus the parity-split display";
    return o;
}

Outcome generating_function()
{
    Outcome o;
    Draw d(505);
    long pts = exact_trials(d, 10, [&](Draw& dr) {
        auto r = awgf_coefficient_check(dr.nonzero(), dr.nonzero(), dr.nonzero(), dr.nonzero(), dr.nonzero(),
                                        dr.inside(), 10);
        o.require(r.pass, "coefficients: " + r.note);
    });
    o.require(pts == 10, "only " + std::to_string(pts) + " pole-free points");
    for (const auto& [w, q] : {std::pair{Gauss(2, 3), Gauss(1, 2)}, std::pair{Gauss(mpq_class(1, 3), mpq_class(1, 2)),
                                                                             Gauss(mpq_class(-2, 5), mpq_class(1, 5))}}) {
        auto h = awgf_coefficient_check(0, 0, 0, 0, w, q, 10);
        o.require(h.pass, "q-Hermite degeneration: " + h.note);
        for (long n = 0; n <= 10; ++n)
            o.require(eval_aw(AWParams<Gauss>{0, 0, 0, 0, q, w, n}, AWRep::CONV) == aw_hermite_degenerate(w, q, n),
                      "CONV at zero parameters != q-Hermite at n=" + std::to_string(n));
    }
    if (o.pass)
        o.detail = std::to_string(pts) + " points through t^10, q-Hermite degeneration exact";
    return o;
}

Outcome multi_sums()
{
    Outcome o;
    double worst = 0, worst_ut = 0;
    for (const auto& m : product_sample_points(ProductID::TRIPLE_32PF, 5, 606)) {
        auto r = triple_sum_32pf(m, 1e-30, 256);
        o.require(r.pass && r.rel_err <= 1e-30, "triple sum: " + r.note);
        worst = std::max(worst, r.rel_err);
    }
    // A quadruple-sum point with u = t also meets |u| < min(|a|,|c|), so the
    // same points serve the closed form and the specialization.
    for (const auto& m : product_sample_points(ProductID::QUAD_COR13, 5, 607)) {
        SeriesValue quad;
        auto r = quad_cor13(m, 1e-30, 256, &quad);
        o.require(r.pass && r.rel_err <= 1e-30, "quadruple sum: " + r.note);
        worst = std::max(worst, r.rel_err);
        ParamMap ut = m;
        ut["u"] = ut["t"];
        auto tri = triple_sum_value(ut, 1e-30, 256);
        const double e = diff(tri.value, quad.value) / std::max(1.0, abs(quad.value).to_double());
        worst_ut = std::max(worst_ut, e);
        o.require(e <= 1e-28, "u = t specialization off by " + std::to_string(e));
    }
    if (o.pass) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "5 + 5 points at 256 bits, worst error %.2e; u = t worst %.2e", worst, worst_ut);
        o.detail = buf;
    }
    return o;
}

Outcome product_transformations()
{
    Outcome o;
    long values = 0, coeff = 0;
    for (const auto& info : product_registry()) {
        for (const auto& m : product_sample_points(info.id, 5, 707)) {
            auto r = verify_product(info.id, m);
            ++values;
            o.require(r.pass && r.rel_err <= 1e-30, info.name + ": " + r.note);
            if (info.series_sides || info.id == ProductID::CAYLEY_ORR_A || info.id == ProductID::CAYLEY_ORR_B) {
                auto c = product_coefficient_check(info.id, m, 9);
                ++coeff;
                o.require(c.pass, info.name + " coefficients: " + c.note);
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(values) + " value checks within 1e-30, " + std::to_string(coeff) +
                   " exact coefficient checks through z^9";
    return o;
}

Outcome cayley_orr_consistency()
{
    Outcome o;
    Draw d(808);
    long pts = exact_trials(d, 8, [&](Draw& dr) {
        const Gauss p = dr.inside(), a = dr.nonzero(), b = dr.nonzero(), q = p * p, A = a * a, B = b * b;
        ParamMap m{{"p", p}, {"a", a}, {"b", b}, {"z", 0}};
        auto thm = product_rhs_coefficients(ProductID::THM21, m, 10);
        auto lem_a = cayley_orr_coefficients(CayleyOrr::A, A, B, A * B / q, q, 10);
        auto n2 = product_rhs_coefficients(ProductID::NASSRALLAH_2, m, 10);
        auto lem_b = cayley_orr_coefficients(CayleyOrr::B, q * B, A / q, q * A * B, q, 10);
        o.require(thm == lem_a, "THM21 against the first lemma at c = ab/q");
        o.require(n2 == lem_b, "NASSRALLAH_2 against the second lemma at c = qab");
    });
    o.require(pts == 8, "only " + std::to_string(pts) + " pole-free points");
    if (o.pass)
        o.detail = std::to_string(pts) + " points, sequences identical through n = 10";
    return o;
}

Outcome integral_representations()
{
    Outcome o;
    double worst = 0, worst_sigma = 0, worst_f = 0;
    for (const auto& info : integral_registry()) {
        for (const auto& m : integral_sample_points(info.id, 2, 909)) {
            auto r = verify_integral_rep(info.id, m);
            o.require(r.pass && r.rel_err <= 1e-25, info.name + ": " + r.note);
            worst = std::max(worst, r.rel_err);
            const Complex base = integral_value(info.id, m);
            const Complex s = integral_value(info.id, with_other_sigma(info.id, m));
            const Complex f = integral_value(info.id, with_other_f(m));
            const double scale = std::max(1.0, abs(base).to_double());
            worst_sigma = std::max(worst_sigma, diff(base, s) / scale);
            worst_f = std::max(worst_f, diff(base, f) / scale);
            o.require(close(s, base, 2e-25), info.name + " depends on sigma");
            o.require(close(f, base, 2e-25), info.name + " depends on f");
        }
    }
    if (o.pass) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "5 x 2 points, worst %.2e; sigma spread %.2e, f spread %.2e", worst,
                      worst_sigma, worst_f);
        o.detail = buf;
    }
    return o;
}

Outcome classical_limits()
{
    Outcome o;
    const Gauss pts[3][3] = {{Gauss(2, 7), Gauss(3, 5), Gauss(-2, 5)},
                             {Gauss(-1, 6), Gauss(5, 4), Gauss(1, 2)},
                             {Gauss(1, 3), Gauss(1, 4), Gauss(1, 5)}};
    double worst = 0;
    for (auto w : {ClassicalLimit::CLAUSEN, ClassicalLimit::ORR_A, ClassicalLimit::ORR_B, ClassicalLimit::BAILEY_211,
                   ClassicalLimit::COR_3F2})
        for (const auto& p : pts) {
            auto r = classical_limit_check(w, p[0], p[1], p[2], 1e-10);
            worst = std::max(worst, r.rel_err);
            o.require(r.pass, std::string(classical_limit_name(w)) + ": " + r.note);
        }
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "5 limits x 3 points, worst %.2e", worst);
        o.detail = buf;
    }
    return o;
}

Outcome determinism()
{
    Outcome o;
    const std::vector<std::vector<std::string>> runs = {
        {"sweep", "T_NEW_N2", "--trials", "25", "--seed", "7", "--n-range", "0..8"},
        {"sweep", "X_SEARS", "--trials", "5", "--seed", "3", "--n-range", "0..4", "--mode", "approx", "--format", "csv"},
        {"sweep", "T_GASPER_RAHMAN_WATSON", "--trials", "5", "--seed", "3", "--n-range", "0..4"},
        {"sweep", "T517", "--trials", "4", "--seed", "5"},
        {"sweep", "IR_NASSRALLAH_1", "--trials", "1", "--seed", "5", "--format", "csv"},
    };
    for (const auto& args : runs) {
        auto a = cli(args), b = cli(args);
        o.require(a.code == 0 && !a.out.empty(), args[1] + " did not run cleanly: " + a.err);
        o.require(a.out == b.out, args[1] + " output differs between runs");
    }
    if (o.pass)
        o.detail = std::to_string(runs.size()) + " sweeps rerun byte-identically";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"terminating identities exact at 25 points, n 0..8", terminating_suite},
        {"odd-degree vanishing", parity_vanishing},
        {"Askey-Wilson representations and w = d value", aw_cross_representation},
        {"quadratic special values, n <= 10", quadratic_special_values},
        {"generating function coefficients through n = 10", generating_function},
        {"triple and quadruple sums within 1e-30", multi_sums},
        {"product transformations within 1e-30 and exact through z^9", product_transformations},
        {"Cayley-Orr coefficient sequences through n = 10", cayley_orr_consistency},
        {"integral representations within 1e-25", integral_representations},
        {"classical limits within 1e-10", classical_limits},
        {"byte-identical reruns", determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("threw ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && o.pass;
        std::printf("criterion %zu: %s %s (%s) [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
