#ifndef QSERIES_PRODUCTS_HPP
#define QSERIES_PRODUCTS_HPP

#include "qseries/askey_wilson.hpp"
#include "qseries/identities.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qseries {

// Power series c_0 + c_1 t + ... + c_T t^T.  Products drop every term past T.
template <class S>
struct PowerSeriesTrunc {
    std::vector<S> coeffs;

    explicit PowerSeriesTrunc(long order, const S& zero) : coeffs(order + 1, zero) {}
    explicit PowerSeriesTrunc(std::vector<S> c) : coeffs(std::move(c)) {}

    long order() const { return static_cast<long>(coeffs.size()) - 1; }
    const S& operator[](long k) const { return coeffs[k]; }
    S& operator[](long k) { return coeffs[k]; }

    PowerSeriesTrunc& operator*=(const S& s)
    {
        for (auto& c : coeffs)
            c *= s;
        return *this;
    }

    PowerSeriesTrunc& operator+=(const PowerSeriesTrunc& o)
    {
        const long T = std::min(order(), o.order());
        coeffs.resize(T + 1);
        for (long k = 0; k <= T; ++k)
            coeffs[k] += o.coeffs[k];
        return *this;
    }

    friend PowerSeriesTrunc operator*(const PowerSeriesTrunc& x, const PowerSeriesTrunc& y)
    {
        const long T = std::min(x.order(), y.order());
        PowerSeriesTrunc out(T, zero_like(x.coeffs[0]));
        for (long i = 0; i <= T; ++i) {
            if (exact_zero(x.coeffs[i]))
                continue;
            for (long j = 0; i + j <= T; ++j)
                out.coeffs[i + j] += x.coeffs[i] * y.coeffs[j];
        }
        return out;
    }

    // Multiplies by t^k.
    PowerSeriesTrunc shifted(long k) const
    {
        PowerSeriesTrunc out(order(), zero_like(coeffs[0]));
        for (long i = 0; i + k <= order(); ++i)
            out.coeffs[i + k] = coeffs[i];
        return out;
    }
};

enum class ProductID {
    AWGF,
    TRIPLE_32PF,
    QUAD_COR13,
    WD_APPELL,
    SCHLOSSER_T4,
    SRIV_JAIN,
    JACKSON_CLAUSEN,
    NASSRALLAH_1,
    NASSRALLAH_2,
    THM21,
    TRIVIAL_21_32,
    SRIVASTAVA_313,
    T515,
    T516,
    T517,
    T518,
    CAYLEY_ORR_A,
    CAYLEY_ORR_B,
};

struct ProductInfo {
    ProductID id;
    std::string name;
    std::string anchor;
    std::vector<std::string> params;
    std::string variable; // the expansion variable, z or t
    // True when both sides are products and sums of r phi s factors, so an
    // exact coefficient comparison applies.
    bool series_sides;
};

const std::vector<ProductInfo>& product_registry();
const ProductInfo& product_info(ProductID id);
std::optional<ProductID> product_from_name(const std::string& name);
std::vector<std::string> product_ids();

struct ProductOptions {
    long prec = default_precision;
    double eps = 1e-30;
    double radius = 0.25; // safety radius for |z| and |t|
    long coefficient_order = 9;
};

// Value check at one point plus, where it applies, the exact coefficient
// check through z^order.  Hypothesis failures raise DivergenceError.
VerificationReport verify_product(ProductID id, const ParamMap& params, const ProductOptions& opts = {});

// The left side (product of two series) at a point.
Complex product_lhs_value(ProductID id, const ParamMap& params, const ProductOptions& opts = {});

// Exact t^k coefficients, k <= order, of each side.  Only for series_sides
// identities.
std::vector<Gauss> product_lhs_coefficients(ProductID id, const ParamMap& params, long order);
std::vector<Gauss> product_rhs_coefficients(ProductID id, const ParamMap& params, long order);

VerificationReport product_coefficient_check(ProductID id, const ParamMap& params, long order = 9);

// Even powers of the left side come from the first 4phi3 alone and odd
// powers from the z-prefactored second one.
VerificationReport schlosser_parity_check(const ParamMap& params, long order = 9);

// Truncated Cauchy product of the two left factors, evaluated at the point,
// against the product of the two values.
VerificationReport lhs_product_crosscheck(ProductID id, const ParamMap& params, const ProductOptions& opts = {});

// t^n coefficients of 2phi1(aw,bw;ab;q,t/w) 2phi1(c/w,d/w;cd;q,tw) against
// p_n/(q,ab,cd;q)_n for n <= n_max.  All-zero parameters use the continuous
// q-Hermite values, otherwise the first 4phi3 representation.
VerificationReport awgf_coefficient_check(const Gauss& a, const Gauss& b, const Gauss& c, const Gauss& d,
                                          const Gauss& w, const Gauss& q, long n_max);

// Both sides of the triple-sum generating function.  The right side uses
// shifted-parameter Askey-Wilson values from the three-term recurrence.
VerificationReport triple_sum_32pf(const ParamMap& params, double eps = 1e-30, long prec = default_precision);

// prefactor^-1 times the right side: the bare triple sum.
SeriesValue triple_sum_value(const ParamMap& params, double eps, long prec);

// Quadruple sum (convolution-expanded p_n) against (tw, t/w;q)_oo/(t/a, t/c;q)_oo.
// value, when given, receives the quadruple sum itself.
VerificationReport quad_cor13(const ParamMap& params, double eps = 1e-30, long prec = default_precision,
                              SeriesValue* value = nullptr);
SeriesValue quad_cor13_value(const ParamMap& params, double eps, long prec);

enum class CayleyOrr { A, B };

// Exact weighted coefficients w_n a_n, n <= n_max, where a_n come from
// the auxiliary product expansion of the lemma.
std::vector<Gauss> cayley_orr_coefficients(CayleyOrr which, const Gauss& a, const Gauss& b, const Gauss& c,
                                           const Gauss& q, long n_max);

// Coefficient-by-coefficient: product of the two 2phi1 series against the
// weighted coefficients.
VerificationReport cayley_orr_check(CayleyOrr which, const Gauss& a, const Gauss& b, const Gauss& c, const Gauss& q,
                                    long n_max);

enum class ClassicalLimit { CLAUSEN, ORR_A, ORR_B, BAILEY_211, COR_3F2 };

const char* classical_limit_name(ClassicalLimit which);

VerificationReport classical_limit_check(ClassicalLimit which, const Gauss& a, const Gauss& b, const Gauss& z,
                                         double eps = 1e-10, long prec = 128);

// Deterministic sample points inside the identity's hypotheses and the
// safety radius, pole-free at the value check.
std::vector<ParamMap> product_sample_points(ProductID id, long count, std::uint64_t seed,
                                            const ProductOptions& opts = {});

} // namespace qseries

#endif
