#include "qseries/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qseries {

Complex theta(const Complex& x, const Complex& q, double eps)
{
    if (x.is_zero())
        fail(ErrorKind::ZeroArgument, "theta(0; q) is undefined");
    require_base(q);
    return qpoch_inf(x, q, eps).value * qpoch_inf(q / x, q, eps).value;
}

QuadratureResult integrate_periodic(const std::function<Complex(const Complex& w)>& f, const QuadratureSpec& spec,
                                    long prec)
{
    if (spec.nodes < 16 || (spec.nodes & (spec.nodes - 1)) != 0)
        fail(ErrorKind::DomainError, "quadrature needs a power-of-two node count >= 16");
    // Successive levels cannot agree below the rounding floor; doubling
    // towards such a target only burns time.
    if (spec.eps < std::ldexp(1.0, -static_cast<int>(prec - 16))) {
        std::ostringstream msg;
        msg << "quadrature tolerance " << spec.eps << " is below the resolution of " << prec << "-bit arithmetic";
        fail(ErrorKind::NoConvergence, msg.str());
    }
    const Real two_pi = pi(prec) * Real(2L, prec);
    auto node = [&](long j, long N) {
        // psi_j = -pi + 2 pi j / N
        Real psi = two_pi * Real(mpq_class(j, N), prec) - pi(prec);
        Complex v(prec);
        try {
            v = f(expi(psi));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::PoleError)
                fail(ErrorKind::PoleOnContour, "integrand pole at node " + std::to_string(j) + " of " +
                                                   std::to_string(N) + ": " + e.what());
            throw;
        }
        if (!v.is_finite())
            fail(ErrorKind::PoleOnContour,
                 "integrand overflows at node " + std::to_string(j) + " of " + std::to_string(N));
        return v;
    };

    // Agreement is measured against the integral of |f|, so integrals that
    // vanish by cancellation still terminate.
    long N = spec.nodes;
    Complex sum(prec);
    double mag = 0;
    auto add = [&](long j, long n) {
        Complex v = node(j, n);
        mag += abs(v).to_double();
        sum += v;
    };
    for (long j = 0; j < N; ++j)
        add(j, N);
    Complex prev = sum * (two_pi / Real(N, prec));
    for (long level = 0; level < spec.max_doublings; ++level) {
        // new nodes sit at the odd indices of the doubled grid
        for (long j = 1; j < 2 * N; j += 2)
            add(j, 2 * N);
        N *= 2;
        Complex cur = sum * (two_pi / Real(N, prec));
        const double diff = abs(cur - prev).to_double();
        const double scale = mag * 2 * M_PI / static_cast<double>(N);
        const double rel = scale > 0 ? diff / scale : diff;
        if (rel <= spec.eps)
            return {cur, rel, N};
        prev = cur;
    }
    fail(ErrorKind::NoConvergence, "trapezoidal rule did not settle within " + std::to_string(N) + " nodes");
}

// ---------------------------------------------------------------------------

const std::vector<IntegralInfo>& integral_registry()
{
    static const std::vector<IntegralInfo> reg{
        {IntegralID::IR_SCHLOSSER, "IR_SCHLOSSER", "integral representation of the product in the split formula",
         ProductID::SCHLOSSER_T4, {"a", "b", "q", "z", "f", "sigma"}},
        {IntegralID::IR_NASSRALLAH_1, "IR_NASSRALLAH_1", "integral representation, first Nassrallah product",
         ProductID::NASSRALLAH_1, {"p", "a", "b", "z", "f", "sigma"}},
        {IntegralID::IR_NASSRALLAH_2, "IR_NASSRALLAH_2", "integral representation, second Nassrallah product",
         ProductID::NASSRALLAH_2, {"p", "a", "b", "z", "f", "sigma"}},
        {IntegralID::IR_SRIV_JAIN, "IR_SRIV_JAIN", "integral representation, Srivastava-Jain product",
         ProductID::SRIV_JAIN, {"a", "b", "q", "z", "f", "sigma"}},
        {IntegralID::IR_THM21, "IR_THM21", "integral representation, first q-Bailey product", ProductID::THM21,
         {"p", "a", "b", "z", "f", "sigma"}},
    };
    return reg;
}

const IntegralInfo& integral_info(IntegralID id)
{
    for (const auto& r : integral_registry())
        if (r.id == id)
            return r;
    fail(ErrorKind::UnknownIdentity, "unregistered integral representation");
}

std::optional<IntegralID> integral_from_name(const std::string& name)
{
    for (const auto& r : integral_registry())
        if (r.name == name)
            return r.id;
    return std::nullopt;
}

std::vector<std::string> integral_ids()
{
    std::vector<std::string> out;
    for (const auto& r : integral_registry())
        out.push_back(r.name);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

const Gauss& need(const ParamMap& m, const char* key)
{
    auto it = m.find(key);
    if (it == m.end())
        fail(ErrorKind::DomainError, std::string("missing parameter '") + key + "'");
    return it->second;
}

ParamMap product_part(const ParamMap& m)
{
    ParamMap out = m;
    out.erase("f");
    out.erase("sigma");
    return out;
}

std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

} // namespace

KernelParams kernel_params(IntegralID id, const ParamMap& m)
{
    const Gauss i = Gauss::i();
    switch (id) {
    case IntegralID::IR_SCHLOSSER:
    case IntegralID::IR_SRIV_JAIN: {
        const Gauss &a = need(m, "a"), &b = need(m, "b"), &q = need(m, "q"), &z = need(m, "z");
        if (id == IntegralID::IR_SCHLOSSER)
            return {-i * a, i * b, i * q / b, -i * q / a, i * z, i, q};
        return {-i * a, i * b, -i * b, i * a, i * z, i, q};
    }
    default: {
        const Gauss &p = need(m, "p"), &a = need(m, "a"), &b = need(m, "b"), &z = need(m, "z");
        const Gauss a2 = a * a, b2 = b * b, base = pow(p, 4);
        switch (id) {
        case IntegralID::IR_THM21: return {p * a2, a2 / p, b2 / p, p * b2, p * z, p, base};
        case IntegralID::IR_NASSRALLAH_2: return {p * a2, a2 / p, pow(p, 3) * b2, p * b2, p * z, p, base};
        default: return {a2 / p, p * a2, p * b2, b2 / p, p * z, p, base};
        }
    }
    }
}

std::pair<double, double> admissible_sigma(IntegralID id, const ParamMap& params)
{
    KernelParams k = kernel_params(id, params);
    const double z = k.Z.abs_double();
    const double lo = std::max({k.A.abs_double(), k.B.abs_double(), k.C.abs_double(), k.T.abs_double()});
    const double hi = std::min(z, 1 / z);
    return {lo, hi};
}

namespace {

// The modulus hypotheses, checked at 64 nodes.
void prescan(const KernelParams& k, const Gauss& sigma, long prec)
{
    const Real two_pi = pi(prec) * Real(2L, prec);
    const Complex A(k.A, prec), B(k.B, prec), C(k.C, prec), Z(k.Z, prec), T(k.T, prec), s(sigma, prec);
    for (long j = 0; j < 64; ++j) {
        const Complex w = expi(two_pi * Real(mpq_class(j, 64), prec) - pi(prec));
        const Complex sw = s / w, rw = w / s;
        const std::pair<const char*, Complex> args[] = {
            {"(Z sigma/w)", Z * sw}, {"(sigma/(Z w))", sw / Z}, {"(A w/sigma)", A * rw},
            {"(B w/sigma)", B * rw}, {"(C w/sigma)", C * rw},   {"3phi2 argument T w/sigma", T * rw},
        };
        for (const auto& [name, v] : args) {
            const double m = abs(v).to_double();
            if (!(m < 1))
                fail(ErrorKind::HypothesisViolation, std::string(name) + " has modulus " + fmt(m) +
                                                         " >= 1 at node " + std::to_string(j) + " of 64");
        }
    }
}

} // namespace

Complex integral_value(IntegralID id, const ParamMap& params, const IntegralOptions& opts, QuadratureResult* quad)
{
    const auto& info = integral_info(id);
    for (const auto& [key, v] : params)
        if (std::find(info.params.begin(), info.params.end(), key) == info.params.end())
            fail(ErrorKind::DomainError, "unknown parameter '" + key + "' for " + info.name);
    const Gauss& f = need(params, "f");
    const Gauss& sigma = need(params, "sigma");
    if (f.is_zero())
        fail(ErrorKind::ZeroArgument, "f must be nonzero");
    if (!(sigma.im == 0 && sgn(sigma.re) > 0))
        fail(ErrorKind::DomainError, "sigma must be a positive real");
    if (need(params, "z").abs_double() > opts.radius)
        fail(ErrorKind::DivergenceError, "|z| exceeds the safety radius");

    const KernelParams k = kernel_params(id, params);
    require_base(k.base);
    const long P = opts.prec;
    prescan(k, sigma, P);

    const double e = opts.eps * 1e-6;
    auto C = [&](const Gauss& g) { return Complex(g, P); };
    const Complex base = C(k.base), A = C(k.A), B = C(k.B), Cc = C(k.C), D = C(k.D), T = C(k.T), Z = C(k.Z),
                  s0 = C(sigma), F = C(f);
    const Complex AB = A * B, AC = A * Cc, AD = A * D, ABC = AB * Cc, Zf = Z * F, bZf = base / Zf;
    auto pinf = [&](const Complex& x) { return qpoch_inf(x, base, e).value; };

    auto integrand = [&](const Complex& w) {
        const Complex s = s0 / w, r = w / s0;
        Complex num = pinf(Zf * s) * pinf(bZf * s) * pinf(Zf * r) * pinf(bZf * r) * pinf(ABC * r);
        Complex den = pinf(Z * s) * pinf(s / Z) * pinf(A * r) * pinf(B * r) * pinf(Cc * r);
        SeriesSpec<Complex> spec{{AB, AC, D * s}, {AD, ABC * r}, base, T * r, std::nullopt};
        return num / den * eval_phi_nonterminating(spec, e).value;
    };

    QuadratureSpec qs;
    qs.eps = opts.eps * 1e-2;
    qs.max_doublings = opts.max_doublings;
    QuadratureResult res = integrate_periodic(integrand, qs, P);
    if (quad)
        *quad = res;

    Complex pre = pinf(base) * pinf(A * Z) * pinf(A / Z) * pinf(B * Z) * pinf(B / Z) * pinf(Cc * Z) * pinf(Cc / Z);
    pre /= theta(F, base, e) * theta(Z * Z * F, base, e) * pinf(AB) * pinf(AC) * pinf(B * Cc);
    const Real two_pi = pi(P) * Real(2L, P);
    return pre * res.value / Complex(two_pi, Real(0L, P));
}

VerificationReport verify_integral_rep(IntegralID id, const ParamMap& params, const IntegralOptions& opts)
{
    const auto& info = integral_info(id);
    QuadratureResult quad;
    Complex lhs = integral_value(id, params, opts, &quad);
    ProductOptions po;
    po.prec = opts.prec;
    po.eps = opts.eps * 1e-3;
    po.radius = opts.radius;
    Complex rhs = product_lhs_value(info.series, product_part(params), po);
    auto rep = compare_approx(info.name, lhs, rhs, opts.eps);
    for (const auto& name : info.params)
        rep.params.emplace_back(name, to_string(need(params, name.c_str())));
    rep.quadrature_nodes = quad.nodes;
    rep.note = "integral vs " + std::string(product_info(info.series).name) + " product; quadrature level agreement " +
               fmt(quad.achieved_eps);
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Rational strictly inside (lo, hi), at fraction num/den of the way.
Gauss inside_interval(double lo, double hi, long num, long den)
{
    const double x = lo + (hi - lo) * static_cast<double>(num) / static_cast<double>(den);
    // round to a multiple of 1/240, kept strictly inside
    long k = std::lround(x * 240);
    Gauss g(k, 240);
    if (!(g.abs_double() > lo && g.abs_double() < hi))
        g = Gauss(mpq_class(x));
    return g;
}

} // namespace

std::vector<ParamMap> integral_sample_points(IntegralID id, long count, std::uint64_t seed, const IntegralOptions& opts)
{
    const auto& info = integral_info(id);
    ProductOptions po;
    po.radius = opts.radius;
    std::vector<ParamMap> out;
    std::uint64_t s = seed_for(info.name, seed);
    long tries = 0;
    while (static_cast<long>(out.size()) < count) {
        if (++tries > 1000)
            fail(ErrorKind::SamplerExhausted, info.name + ": no admissible point in 1000 draws");
        auto pts = product_sample_points(info.series, 1, s++, po);
        ParamMap m = pts.front();
        auto [lo, hi] = admissible_sigma(id, m);
        if (!(hi - lo > 0.1))
            continue;
        m["sigma"] = inside_interval(lo, hi, 1, 3);
        m["f"] = Gauss(3, 2);
        out.push_back(m);
    }
    return out;
}

ParamMap with_other_sigma(IntegralID id, const ParamMap& params)
{
    ParamMap m = params;
    auto [lo, hi] = admissible_sigma(id, m);
    m["sigma"] = inside_interval(lo, hi, 2, 3);
    if (m["sigma"] == need(params, "sigma"))
        m["sigma"] = inside_interval(lo, hi, 1, 2);
    return m;
}

ParamMap with_other_f(const ParamMap& params)
{
    ParamMap m = params;
    m["f"] = need(params, "f") == Gauss(7, 3) ? Gauss(3, 2) : Gauss(7, 3);
    return m;
}

} // namespace qseries
