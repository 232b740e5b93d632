#ifndef QSERIES_INTEGRALS_HPP
#define QSERIES_INTEGRALS_HPP

#include "qseries/products.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qseries {

// theta(x;q) = (x;q)_oo (q/x;q)_oo.  x = 0 raises ZeroArgument.
Complex theta(const Complex& x, const Complex& q, double eps);

struct QuadratureSpec {
    long nodes = 16;          // starting grid, a power of two >= 16
    double eps = 1e-25;       // relative agreement of successive levels
    long max_doublings = 14;
};

struct QuadratureResult {
    Complex value;
    double achieved_eps = 0; // last inter-level difference over the integral of |f|
    long nodes = 0;
};

// Trapezoidal rule for the integral of f(e^{i psi}) over psi in [-pi, pi].
// Each doubling reuses the previous nodes.  A node that throws PoleError or
// returns a non-finite value raises PoleOnContour.
QuadratureResult integrate_periodic(const std::function<Complex(const Complex& w)>& f, const QuadratureSpec& spec,
                                    long prec = default_precision);

enum class IntegralID { IR_SCHLOSSER, IR_NASSRALLAH_1, IR_NASSRALLAH_2, IR_SRIV_JAIN, IR_THM21 };

struct IntegralInfo {
    IntegralID id;
    std::string name;
    std::string anchor;
    ProductID series;                // the product whose left side is the target
    std::vector<std::string> params; // product parameters, then f and sigma
};

const std::vector<IntegralInfo>& integral_registry();
const IntegralInfo& integral_info(IntegralID id);
std::optional<IntegralID> integral_from_name(const std::string& name);
std::vector<std::string> integral_ids();

struct IntegralOptions {
    long prec = default_precision;
    double eps = 1e-25;
    long max_doublings = 14;
    double radius = 0.25;
};

// Every representation is one kernel at substituted parameters:
//   (1/2pi) (base, A Z^+-, B Z^+-, C Z^+-)_oo / (theta(f) theta(Z^2 f) (AB,AC,BC)_oo)
//   * int N/D 3phi2(AB, AC, D s; AD, ABC r; base, T r) dpsi
// with s = sigma/w, r = w/sigma, w = e^{i psi},
//   N = (Z f s, base s/(Z f), Z f r, base r/(Z f), ABC r)_oo,
//   D = (Z s, s/Z, A r, B r, C r)_oo,
// equal to 2phi1(AZ, DZ; AD; T/Z) 2phi1(B/Z, C/Z; BC; T Z).
struct KernelParams {
    Gauss A, B, C, D, T, Z, base;
};

KernelParams kernel_params(IntegralID id, const ParamMap& params);

// Open interval of sigma for which every denominator argument and the
// 3phi2 argument stay inside the unit disc on |w| = 1.
std::pair<double, double> admissible_sigma(IntegralID id, const ParamMap& params);

// Prefactor times the integral.  The 64-node pre-scan raises
// HypothesisViolation naming the first offending factor.
Complex integral_value(IntegralID id, const ParamMap& params, const IntegralOptions& opts = {},
                       QuadratureResult* quad = nullptr);

// Integral side against the product's series side.
VerificationReport verify_integral_rep(IntegralID id, const ParamMap& params, const IntegralOptions& opts = {});

// Deterministic points with f in {3/2, 7/3} and sigma inside the admissible
// interval.
std::vector<ParamMap> integral_sample_points(IntegralID id, long count, std::uint64_t seed,
                                             const IntegralOptions& opts = {});

// Same point at a second admissible sigma (or a second f).
ParamMap with_other_sigma(IntegralID id, const ParamMap& params);
ParamMap with_other_f(const ParamMap& params);

} // namespace qseries

#endif
