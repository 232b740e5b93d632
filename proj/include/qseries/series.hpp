#ifndef QSERIES_SERIES_HPP
#define QSERIES_SERIES_HPP

#include "qseries/qkernel.hpp"
#include "qseries/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qseries {

// r phi s (upper; lower; base, arg).  terminates_at = n means the sum runs
// over k = 0..n and some upper parameter equals base^-n.
template <class S>
struct SeriesSpec {
    std::vector<S> upper;
    std::vector<S> lower;
    S base;
    S arg;
    std::optional<long> terminates_at;
};

inline SeriesSpec<Complex> to_approx(const SeriesSpec<Gauss>& s, long prec)
{
    SeriesSpec<Complex> out{{}, {}, Complex(s.base, prec), Complex(s.arg, prec), s.terminates_at};
    for (const auto& a : s.upper)
        out.upper.emplace_back(a, prec);
    for (const auto& b : s.lower)
        out.lower.emplace_back(b, prec);
    return out;
}

struct BalanceClass {
    enum class Kind { Balanced, WellPoised, VeryWellPoised, None };
    Kind kind = Kind::None;
    int k = 0; // for Balanced

    static BalanceClass balanced(int k) { return {Kind::Balanced, k}; }
    static BalanceClass none() { return {Kind::None, 0}; }
    std::string to_string() const;
    bool operator==(const BalanceClass& o) const { return kind == o.kind && k == o.k; }
};

// Classifies the parameter lists (the argument plays no role).  k-balance is
// searched for |k| <= 8; well-poisedness uses an exact pairing search.
BalanceClass balance_class(const SeriesSpec<Gauss>& spec);

// Smallest n with some upper a satisfying a q^n == 1, exactly.
std::optional<long> detect_termination(const SeriesSpec<Gauss>& spec);

// One step of the term recurrence, shared by the exact and approximate paths.
// Returns false when the numerator vanishes (the series has terminated).
template <class S>
bool advance_term(S& term, const SeriesSpec<S>& spec, const S& qk, long k, int excess)
{
    const S one = one_like(term);
    S num = one;
    for (const S& a : spec.upper)
        num *= one - a * qk;
    if (exact_zero(num)) {
        term = zero_like(term);
        return false;
    }
    S den = one - qk * spec.base;
    for (const S& b : spec.lower)
        den *= one - b * qk;
    if (exact_zero(den))
        fail(ErrorKind::PoleError, "denominator vanishes at term index " + std::to_string(k + 1));
    term *= num;
    term *= spec.arg;
    if (excess != 0) {
        S f = -qk;
        for (int e = 1; e < std::abs(excess); ++e)
            f *= -qk;
        if (excess > 0)
            term *= f;
        else
            term /= f;
    }
    term /= den;
    return true;
}

// Sum of terms 0..n by recurrence, stopping early when a term is exactly 0.
template <class S>
S sum_terms(const SeriesSpec<S>& spec, long n)
{
    const int excess = 1 + static_cast<int>(spec.lower.size()) - static_cast<int>(spec.upper.size());
    S term = one_like(spec.base);
    S total = term;
    S qk = one_like(spec.base);
    for (long k = 0; k < n; ++k) {
        if (!advance_term(term, spec, qk, k, excess))
            break;
        total += term;
        qk *= spec.base;
    }
    return total;
}

// Exact terminating evaluation.  Without a declared termination the index is
// detected; a declared index is validated against the upper parameters.
Gauss eval_phi_terminating(const SeriesSpec<Gauss>& spec);

struct SeriesValue {
    Complex value;
    TruncationCert cert;
};

// Certified nonterminating evaluation; declared termination sums n+1 terms.
SeriesValue eval_phi_nonterminating(const SeriesSpec<Complex>& spec, double eps, long max_terms = 1000000);

// Evaluate an exactly specified series numerically: termination is detected
// exactly, then the sum is taken at prec bits.
SeriesValue eval_phi(const SeriesSpec<Gauss>& spec, long prec, double eps);

// 2phi2(a, c/b; c, az; q, bz) = (z;q)_oo/(az;q)_oo 2phi1(a,b;c;q,z).  b = 0
// uses the limiting 1phi2(a; c, az; q, cz) on the left.
VerificationReport jackson_22_to_21_check(const Gauss& a, const Gauss& b, const Gauss& c, const Gauss& z,
                                          const Gauss& q, double eps, long prec = default_precision);

enum class QBinomialKind { Terminating, Nonterminating };

// Terminating: (u/t;q)_k t^k = sum_j [k j]_q (-1)^j q^C(j,2) u^j t^(k-j), exactly.
VerificationReport qbinomial_terminating(const Gauss& u, const Gauss& t, const Gauss& q, long k);
// Nonterminating: 1phi0(a;-;q,z) = (az;q)_oo/(z;q)_oo.
VerificationReport qbinomial_nonterminating(const Gauss& a, const Gauss& z, const Gauss& q, double eps,
                                            long prec = default_precision);

// Gaussian binomial [n k]_q, exact.
Gauss qbinomial(long n, long k, const Gauss& q);

// Classical r F s by Pochhammer recurrence with a rigorous ratio majorant.
SeriesValue eval_rfs(const std::vector<Complex>& upper, const std::vector<Complex>& lower, const Complex& z,
                     double eps, long max_terms = 1000000);

// q-Appell Phi^(1)(a; b, b'; c; q; x, y) = sum_{m,n} (a)_{m+n} (b)_m (b')_n
// / ((q)_m (q)_n (c)_{m+n}) x^m y^n.  Rows are nonterminating 2phi1 sums.
SeriesValue eval_qappell_phi1(const Complex& a, const Complex& b, const Complex& bp, const Complex& c,
                              const Complex& x, const Complex& y, const Complex& q, double eps);

} // namespace qseries

#endif
