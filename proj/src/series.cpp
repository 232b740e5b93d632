#include "qseries/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qseries {

std::string BalanceClass::to_string() const
{
    switch (kind) {
    case Kind::Balanced: return "balanced(" + std::to_string(k) + ")";
    case Kind::WellPoised: return "well_poised";
    case Kind::VeryWellPoised: return "very_well_poised";
    case Kind::None: return "none";
    }
    return "none";
}

namespace {

Gauss product(const std::vector<Gauss>& xs)
{
    Gauss p(1);
    for (const auto& x : xs)
        p *= x;
    return p;
}

bool well_poised(const SeriesSpec<Gauss>& spec)
{
    if (spec.upper.size() != spec.lower.size() + 1)
        return false;
    const Gauss target = spec.base * spec.upper.front();
    std::vector<bool> used(spec.lower.size(), false);
    for (std::size_t i = 1; i < spec.upper.size(); ++i) {
        bool matched = false;
        for (std::size_t j = 0; j < spec.lower.size() && !matched; ++j) {
            if (!used[j] && spec.upper[i] * spec.lower[j] == target) {
                used[j] = true;
                matched = true;
            }
        }
        if (!matched)
            return false;
    }
    return true;
}

bool very_well_poised(const SeriesSpec<Gauss>& spec)
{
    const Gauss sq = spec.base * spec.base * spec.upper.front();
    for (std::size_t i = 1; i < spec.upper.size(); ++i)
        for (std::size_t j = i + 1; j < spec.upper.size(); ++j)
            if (spec.upper[i] == -spec.upper[j] && spec.upper[i] * spec.upper[i] == sq)
                return true;
    return false;
}

} // namespace

BalanceClass balance_class(const SeriesSpec<Gauss>& spec)
{
    if (spec.upper.size() == spec.lower.size() + 1) {
        const Gauss up = product(spec.upper), lo = product(spec.lower);
        for (int k = 0; k <= 8; ++k)
            for (int sgn : {1, -1}) {
                int kk = sgn * k;
                if (pow(spec.base, kk) * up == lo)
                    return BalanceClass::balanced(kk);
            }
    }
    if (!spec.upper.empty() && well_poised(spec))
        return very_well_poised(spec) ? BalanceClass{BalanceClass::Kind::VeryWellPoised, 0}
                                      : BalanceClass{BalanceClass::Kind::WellPoised, 0};
    return BalanceClass::none();
}

std::optional<long> detect_termination(const SeriesSpec<Gauss>& spec)
{
    std::optional<long> best;
    for (const auto& a : spec.upper) {
        long k = vanishing_index(a, spec.base);
        if (k >= 0 && (!best || k < *best))
            best = k;
    }
    return best;
}

Gauss eval_phi_terminating(const SeriesSpec<Gauss>& spec)
{
    require_base(spec.base);
    long n;
    if (spec.terminates_at) {
        n = *spec.terminates_at;
        if (n < 0)
            fail(ErrorKind::DomainError, "negative termination index");
        const Gauss qn = pow(spec.base, n);
        bool found = std::any_of(spec.upper.begin(), spec.upper.end(),
                                 [&](const Gauss& a) { return (a * qn).is_one(); });
        if (!found)
            fail(ErrorKind::DomainError, "no upper parameter equals q^-" + std::to_string(n));
    } else {
        auto d = detect_termination(spec);
        if (!d)
            fail(ErrorKind::DomainError, "series does not terminate");
        n = *d;
    }
    // A lower parameter in Omega_q is a pole even where an upper parameter
    // already zeroes the numerator: the term is 0/0, not 0.
    for (size_t j = 0; j < spec.lower.size(); ++j) {
        long k = vanishing_index(spec.lower[j], spec.base);
        if (k >= 0 && k < n)
            fail(ErrorKind::PoleError, "lower parameter " + std::to_string(j + 1) +
                                           " makes the denominator vanish at term index " + std::to_string(k + 1));
    }
    return sum_terms(spec, n);
}

namespace {

double log_abs_double(const Complex& x) { return log_abs(x); }

} // namespace

SeriesValue eval_phi_nonterminating(const SeriesSpec<Complex>& spec, double eps, long max_terms)
{
    require_base(spec.base);
    if (!(eps > 0))
        fail(ErrorKind::DomainError, "eps must be positive");
    const long prec = spec.base.prec();
    const int excess = 1 + static_cast<int>(spec.lower.size()) - static_cast<int>(spec.upper.size());

    if (spec.terminates_at) {
        Complex v = sum_terms(spec, *spec.terminates_at);
        return {v, TruncationCert{*spec.terminates_at + 1, 0.0, eps}};
    }
    if (spec.arg.is_zero())
        return {Complex(1L, prec), TruncationCert{1, 0.0, eps}};

    const double abs_z = abs(spec.arg).to_double();
    const double abs_q = abs(spec.base).to_double();
    if (excess < 0)
        fail(ErrorKind::DivergenceError, "nonterminating series with more than s+1 upper parameters");
    if (excess == 0 && !(abs_z < 1))
        fail(ErrorKind::DivergenceError, "|z| >= 1 for a nonterminating r = s+1 series");

    std::vector<double> abs_upper, abs_lower;
    for (const auto& a : spec.upper)
        abs_upper.push_back(abs(a).to_double());
    for (const auto& b : spec.lower)
        abs_lower.push_back(abs(b).to_double());

    const double rstar = excess == 0 ? (1 + abs_z) / 2 : 0.5;
    const double log_rstar = std::log(rstar);

    Complex term(1L, prec), total(1L, prec), qk(1L, prec);
    double log_prev = 0; // log|t_0|
    int window = 0;
    for (long k = 0; k < max_terms; ++k) {
        if (!advance_term(term, spec, qk, k, excess))
            return {total, TruncationCert{k + 1, 0.0, eps}};
        total += term;
        qk *= spec.base;
        const double log_t = log_abs_double(term);
        window = (log_t - log_prev < log_rstar) ? window + 1 : 0;
        log_prev = log_t;
        if (window < 8)
            continue;

        // Rigorous majorant of |t_{j+1}/t_j| for all j >= K = k+1.
        const long K = k + 1;
        const double qK = std::pow(abs_q, static_cast<double>(K));
        double R = abs_z / (1 - qK * abs_q);
        bool ok = true;
        for (double a : abs_upper)
            R *= 1 + a * qK;
        for (double b : abs_lower) {
            if (b * qK >= 1) {
                ok = false;
                break;
            }
            R /= 1 - b * qK;
        }
        if (excess > 0)
            R *= std::pow(qK, excess);
        if (!ok || !(R < 1))
            continue;
        const double log_tail = log_t + std::log(R) - std::log1p(-R);
        const double log_scale = std::max(0.0, log_abs_double(total));
        const double rel_tail = std::exp(log_tail - log_scale);
        if (rel_tail <= eps)
            return {total, TruncationCert{K + 1, rel_tail, eps}};
    }
    fail(ErrorKind::NoConvergence, "series tail not certified within " + std::to_string(max_terms) + " terms");
}

SeriesValue eval_phi(const SeriesSpec<Gauss>& spec, long prec, double eps)
{
    SeriesSpec<Gauss> s = spec;
    if (!s.terminates_at)
        s.terminates_at = detect_termination(s);
    return eval_phi_nonterminating(to_approx(s, prec), eps);
}

VerificationReport jackson_22_to_21_check(const Gauss& a, const Gauss& b, const Gauss& c, const Gauss& z,
                                          const Gauss& q, double eps, long prec)
{
    SeriesSpec<Gauss> lhs_spec;
    if (b.is_zero())
        lhs_spec = SeriesSpec<Gauss>{{a}, {c, a * z}, q, c * z, std::nullopt};
    else
        lhs_spec = SeriesSpec<Gauss>{{a, c / b}, {c, a * z}, q, b * z, std::nullopt};
    const double inner = eps / 16;
    SeriesValue lhs = eval_phi(lhs_spec, prec, inner);

    InfiniteProduct zq = qpoch_inf(z, q, inner, prec);
    InfiniteProduct azq = qpoch_inf(a * z, q, inner, prec);
    if (azq.zero_factor >= 0)
        fail(ErrorKind::PoleError, "(az;q)_oo vanishes");
    SeriesValue phi = eval_phi(SeriesSpec<Gauss>{{a, b}, {c}, q, z, std::nullopt}, prec, inner);
    Complex rhs = zq.value / azq.value * phi.value;

    VerificationReport r = compare_approx("JACKSON_22_21", lhs.value, rhs, eps);
    r.params = {{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)}, {"z", to_string(z)}, {"q", to_string(q)}};
    r.truncation_terms = std::to_string(lhs.cert.terms_used) + "," + std::to_string(phi.cert.terms_used);
    return r;
}

Gauss qbinomial(long n, long k, const Gauss& q)
{
    if (k < 0 || k > n)
        return Gauss(0);
    return qpoch(q, q, n) / (qpoch(q, q, k) * qpoch(q, q, n - k));
}

VerificationReport qbinomial_terminating(const Gauss& u, const Gauss& t, const Gauss& q, long k)
{
    if (t.is_zero())
        fail(ErrorKind::DomainError, "t must be nonzero");
    Gauss lhs = qpoch(u / t, q, k) * pow(t, k);
    Gauss rhs(0);
    for (long j = 0; j <= k; ++j) {
        Gauss term = qbinomial(k, j, q) * pow(q, j * (j - 1) / 2) * pow(u, j) * pow(t, k - j);
        rhs += (j % 2) ? -term : term;
    }
    VerificationReport r = compare_exact("QBINOMIAL_TERMINATING", lhs, rhs);
    r.params = {{"u", to_string(u)}, {"t", to_string(t)}, {"q", to_string(q)}};
    r.n = k;
    return r;
}

VerificationReport qbinomial_nonterminating(const Gauss& a, const Gauss& z, const Gauss& q, double eps, long prec)
{
    const double inner = eps / 16;
    SeriesValue lhs = eval_phi(SeriesSpec<Gauss>{{a}, {}, q, z, std::nullopt}, prec, inner);
    InfiniteProduct num = qpoch_inf(a * z, q, inner, prec);
    InfiniteProduct den = qpoch_inf(z, q, inner, prec);
    if (den.zero_factor >= 0)
        fail(ErrorKind::PoleError, "(z;q)_oo vanishes");
    VerificationReport r = compare_approx("QBINOMIAL_NONTERMINATING", lhs.value, num.value / den.value, eps);
    r.params = {{"a", to_string(a)}, {"z", to_string(z)}, {"q", to_string(q)}};
    r.truncation_terms = std::to_string(lhs.cert.terms_used);
    return r;
}

SeriesValue eval_rfs(const std::vector<Complex>& upper, const std::vector<Complex>& lower, const Complex& z,
                     double eps, long max_terms)
{
    const long prec = z.prec();
    const std::size_t r = upper.size(), s = lower.size();
    if (z.is_zero())
        return {Complex(1L, prec), TruncationCert{1, 0.0, eps}};
    const double abs_z = abs(z).to_double();

    std::vector<double> abs_upper, abs_lower;
    for (const auto& a : upper)
        abs_upper.push_back(abs(a).to_double());
    for (const auto& b : lower)
        abs_lower.push_back(abs(b).to_double());

    const Complex one(1L, prec);
    Complex term = one, total = one;
    double log_prev = 0;
    int window = 0;
    const double rstar = (r == s + 1) ? (1 + abs_z) / 2 : 0.5;
    bool diverges_checked = false;
    for (long k = 0; k < max_terms; ++k) {
        const Complex kk(k, prec);
        Complex num = one, den(k + 1, prec);
        for (const auto& a : upper)
            num *= a + kk;
        if (num.is_zero())
            return {total, TruncationCert{k + 1, 0.0, eps}};
        if (!diverges_checked) {
            if (r > s + 1 || (r == s + 1 && !(abs_z < 1)))
                fail(ErrorKind::DivergenceError, "classical series outside its disc of convergence");
            diverges_checked = true;
        }
        for (const auto& b : lower) {
            Complex f = b + kk;
            if (f.is_zero())
                fail(ErrorKind::PoleError, "lower parameter is a nonpositive integer");
            den *= f;
        }
        term *= num;
        term *= z;
        term /= den;
        total += term;

        const double log_t = log_abs(term);
        window = (log_t - log_prev < std::log(rstar)) ? window + 1 : 0;
        log_prev = log_t;
        if (window < 8)
            continue;

        // For j >= K the ratio |t_{j+1}/t_j| is bounded by |z| times the
        // product of the pairwise factor bounds below.
        const double K = static_cast<double>(k + 1);
        double R = abs_z;
        bool ok = true;
        std::size_t i = 0;
        if (i < abs_upper.size())
            R *= std::max(1.0, (K + abs_upper[i++]) / (K + 1));
        else
            R /= K + 1;
        for (double b : abs_lower) {
            if (K <= b) {
                ok = false;
                break;
            }
            if (i < abs_upper.size())
                R *= (K + abs_upper[i++]) / (K - b);
            else
                R /= K - b;
        }
        if (!ok || !(R < 1))
            continue;
        const double log_tail = log_t + std::log(R) - std::log1p(-R);
        const double rel_tail = std::exp(log_tail - std::max(0.0, log_abs(total)));
        if (rel_tail <= eps)
            return {total, TruncationCert{k + 2, rel_tail, eps}};
    }
    fail(ErrorKind::NoConvergence, "classical series tail not certified");
}

SeriesValue eval_qappell_phi1(const Complex& a, const Complex& b, const Complex& bp, const Complex& c,
                              const Complex& x, const Complex& y, const Complex& q, double eps)
{
    require_base(q);
    const long prec = q.prec();
    if (!(abs(x) < 1.0) || !(abs(y) < 1.0))
        fail(ErrorKind::DivergenceError, "q-Appell series needs |x| < 1 and |y| < 1");

    const double inner = eps / 64;
    const double rstar = (1 + abs(x).to_double()) / 2;
    const Complex one(1L, prec);

    Complex total(prec), pre = one, qm = one;
    double log_prev = 0;
    int window = 0;
    long rows = 0, deepest = 0;
    for (long m = 0; m < 100000; ++m) {
        SeriesSpec<Complex> row{{a * qm, bp}, {c * qm}, q, y, std::nullopt};
        SeriesValue sm = eval_phi_nonterminating(row, inner);
        deepest = std::max(deepest, sm.cert.terms_used);
        Complex rm = pre * sm.value;
        total += rm;
        ++rows;

        const double log_r = log_abs(rm);
        window = (m > 0 && log_r - log_prev < std::log(rstar)) ? window + 1 : 0;
        log_prev = log_r;
        if (window >= 8) {
            const double log_tail = log_r + std::log(rstar) - std::log1p(-rstar);
            const double rel_tail = std::exp(log_tail - std::max(0.0, log_abs(total)));
            if (rel_tail <= eps / 2)
                return {total, TruncationCert{rows * deepest, rel_tail, eps}};
        }

        // prefactor (a)_m (b)_m / ((q)_m (c)_m) x^m, advanced to m+1
        Complex f = (one - a * qm) * (one - b * qm) * x;
        Complex g = (one - q * qm) * (one - c * qm);
        if (g.is_zero())
            fail(ErrorKind::PoleError, "(c;q)_m vanishes in the q-Appell series");
        pre *= f;
        pre /= g;
        if (pre.is_zero())
            return {total, TruncationCert{rows * deepest, 0.0, eps}};
        qm *= q;
    }
    fail(ErrorKind::NoConvergence, "q-Appell double series not certified");
}

} // namespace qseries
