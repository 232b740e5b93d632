#include "qseries/qkernel.hpp"

#include <cmath>

namespace qseries {

AnyScalar qpoch(const AnyScalar& a, const AnyScalar& q, long n)
{
    if (a.index() != q.index())
        fail(ErrorKind::ModeMismatch, "q-Pochhammer operands mix exact and approximate values");
    if (auto* ea = std::get_if<Gauss>(&a))
        return qpoch(*ea, std::get<Gauss>(q), n);
    return qpoch(std::get<Complex>(a), std::get<Complex>(q), n);
}

AnyScalar qpoch(const std::vector<AnyScalar>& as, const AnyScalar& q, long n)
{
    if (as.empty())
        fail(ErrorKind::DomainError, "empty parameter list");
    AnyScalar result = qpoch(as.front(), q, n);
    for (std::size_t i = 1; i < as.size(); ++i) {
        AnyScalar f = qpoch(as[i], q, n);
        if (auto* e = std::get_if<Gauss>(&result))
            *e *= std::get<Gauss>(f);
        else
            std::get<Complex>(result) *= std::get<Complex>(f);
    }
    return result;
}

void require_base(const Gauss& q)
{
    if (q.is_zero())
        fail(ErrorKind::DomainError, "base q must be nonzero");
    if (q.norm() >= 1)
        fail(ErrorKind::DomainError, "base requires |q| < 1");
}

void require_base(const Complex& q)
{
    if (q.is_zero())
        fail(ErrorKind::DomainError, "base q must be nonzero");
    if (!(abs(q) < 1.0))
        fail(ErrorKind::DomainError, "base requires |q| < 1");
}

long vanishing_index(const Gauss& a, const Gauss& q)
{
    require_base(q);
    Gauss x = a;
    for (long k = 0;; ++k) {
        if (x.is_one())
            return k;
        // |a q^k| only shrinks from here on, so once below 1 it never returns.
        if (x.norm() < 1)
            return -1;
        x *= q;
    }
}

InfiniteProduct qpoch_inf(const Complex& a, const Complex& q, double eps)
{
    require_base(q);
    if (!(eps > 0))
        fail(ErrorKind::DomainError, "eps must be positive");
    long prec = std::min(a.prec(), q.prec());
    InfiniteProduct out{Complex(1L, prec), TruncationCert{0, 0.0, eps}, -1};
    if (a.is_zero())
        return out;

    double abs_a = abs(a).to_double();
    double abs_q = abs(q).to_double();
    // Log-sum majorant: for |a||q|^K < 1/2,
    //   |log prod_{k>=K}(1 - a q^k)| <= |a||q|^K / ((1-|q|)(1 - |a||q|^K)) = L,
    // and the relative perturbation of the product is at most e^L - 1.
    double target = std::log1p(eps);
    Complex one(1L, prec), aq = a;
    double mag = abs_a;
    long k = 0;
    for (;;) {
        if (mag < 0.5) {
            double L = mag / ((1 - abs_q) * (1 - mag));
            if (L <= target) {
                out.cert.terms_used = k;
                out.cert.tail_bound = std::expm1(L);
                return out;
            }
        }
        Complex f = one - aq;
        if (f.is_zero()) {
            out.value = Complex(prec);
            out.zero_factor = k;
            out.cert = TruncationCert{k + 1, 0.0, eps};
            return out;
        }
        out.value *= f;
        aq *= q;
        mag *= abs_q;
        ++k;
        if (k > 10000000)
            fail(ErrorKind::NoConvergence, "infinite product did not reach its tail bound");
    }
}

InfiniteProduct qpoch_inf(const Gauss& a, const Gauss& q, double eps, long prec)
{
    long k = vanishing_index(a, q);
    if (k >= 0)
        return InfiniteProduct{Complex(prec), TruncationCert{k + 1, 0.0, eps}, k};
    return qpoch_inf(Complex(a, prec), Complex(q, prec), eps);
}

} // namespace qseries
