#ifndef QSERIES_QKERNEL_HPP
#define QSERIES_QKERNEL_HPP

#include "qseries/error.hpp"
#include "qseries/scalar.hpp"

#include <vector>

namespace qseries {

// (a;q)_n = prod_{k<n} (1 - a q^k).  Negative n is rejected.
template <class S>
S qpoch(const S& a, const S& q, long n)
{
    if (n < 0)
        fail(ErrorKind::DomainError, "negative q-Pochhammer index");
    S result = one_like(a);
    if (n == 0)
        return result;
    S aq = a;
    for (long k = 0; k < n; ++k) {
        result *= one_like(a) - aq;
        if (k + 1 < n)
            aq *= q;
    }
    return result;
}

// (a_1, ..., a_m; q)_n
template <class S>
S qpoch(const std::vector<S>& as, const S& q, long n)
{
    if (as.empty())
        fail(ErrorKind::DomainError, "empty parameter list");
    S result = one_like(as.front());
    for (const S& a : as)
        result *= qpoch(a, q, n);
    return result;
}

// The paper-style shorthands: {a, -a} and {x w, x / w}.
template <class S>
std::vector<S> pm(const S& a) { return {a, -a}; }

template <class S>
std::vector<S> wpm(const S& x, const S& w) { return {x * w, x / w}; }

AnyScalar qpoch(const AnyScalar& a, const AnyScalar& q, long n);
AnyScalar qpoch(const std::vector<AnyScalar>& as, const AnyScalar& q, long n);

struct TruncationCert {
    long terms_used = 0;
    double tail_bound = 0;
    double target_eps = 0;
};

struct InfiniteProduct {
    Complex value;
    TruncationCert cert;
    // Index k with a q^k == 1 when a factor vanishes exactly (value is 0).
    long zero_factor = -1;
};

// (a;q)_oo with |V - (a;q)_oo| <= eps max(1,|V|).  Requires |q| < 1.
InfiniteProduct qpoch_inf(const Complex& a, const Complex& q, double eps);

// Same, but a vanishing factor a q^k = 1 is detected exactly before the
// numerical product runs.
InfiniteProduct qpoch_inf(const Gauss& a, const Gauss& q, double eps, long prec);

// Exact: smallest k >= 0 with a q^k == 1, or -1.  Requires 0 < |q| < 1.
long vanishing_index(const Gauss& a, const Gauss& q);

// Checks |q| < 1 and q != 0 (the QBase invariant).
void require_base(const Gauss& q);
void require_base(const Complex& q);

} // namespace qseries

#endif
