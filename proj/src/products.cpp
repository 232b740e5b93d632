#include "qseries/products.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

namespace qseries {

namespace {

using G = Gauss;
using GV = std::vector<Gauss>;

const G& need(const ParamMap& m, const char* key)
{
    auto it = m.find(key);
    if (it == m.end())
        fail(ErrorKind::DomainError, std::string("missing parameter '") + key + "'");
    return it->second;
}

ParamList param_list(const std::vector<std::string>& names, const ParamMap& m)
{
    ParamList out;
    for (const auto& n : names)
        out.emplace_back(n, to_string(need(m, n.c_str())));
    return out;
}

// ---------------------------------------------------------------------------
// Sides built from r phi s factors: sum of pre * z^xpow * prod phi(...; coeff z^zpow)

struct SFactor {
    GV upper, lower;
    G base;
    G coeff;
    int zpow = 1;
};

struct Term {
    G pre;
    int xpow = 0;
    std::vector<SFactor> series;
};

using Side = std::vector<Term>;

struct Sides {
    Side lhs, rhs;
};

SFactor f(GV up, GV lo, const G& base, const G& coeff, int zpow = 1)
{
    return SFactor{std::move(up), std::move(lo), base, coeff, zpow};
}

Term term(std::vector<SFactor> fs, const G& pre = G(1), int xpow = 0) { return Term{pre, xpow, std::move(fs)}; }

Sides build_sides(ProductID id, const ParamMap& m)
{
    const G one(1);
    auto base_q = [&]() -> G {
        auto it = m.find("p");
        if (it != m.end())
            return it->second * it->second;
        return need(m, "q");
    };
    const G q = base_q(), Q = q * q;
    switch (id) {
    case ProductID::SCHLOSSER_T4: {
        const G &a = need(m, "a"), &b = need(m, "b");
        const G ab = a * b;
        return {{term({f({a, q / a}, {-q}, q, one), f({b, q / b}, {-q}, q, -one)})},
                {term({f({ab, Q / ab, q * a / b, q * b / a}, {-Q, q, -q}, Q, one, 2)}),
                 term({f({q * ab, Q * q / ab, Q * a / b, Q * b / a}, {-Q, Q * q, -Q * q}, Q, one, 2)},
                      (b - a) * (one - q / ab) / (one - Q), 1)}};
    }
    case ProductID::SRIV_JAIN: {
        const G &a = need(m, "a"), &b = need(m, "b");
        const G ab = a * b;
        return {{term({f({a, -a}, {a * a}, q, one), f({b, -b}, {b * b}, q, -one)})},
                {term({f({ab, -ab, q * ab, -q * ab}, {q * a * a, q * b * b, ab * ab}, Q, one, 2)})}};
    }
    case ProductID::JACKSON_CLAUSEN:
    case ProductID::NASSRALLAH_1:
    case ProductID::NASSRALLAH_2:
    case ProductID::THM21: {
        const G &p = need(m, "p"), &a = need(m, "a"), &b = need(m, "b");
        const G a2 = a * a, b2 = b * b, ab = a * b, pab = p * ab;
        switch (id) {
        case ProductID::JACKSON_CLAUSEN:
            return {{term({f({a2, b2}, {q * a2 * b2}, Q, one), f({a2, b2}, {q * a2 * b2}, Q, q)})},
                    {term({f({a2, b2, ab, -ab}, {a2 * b2, pab, -pab}, q, one)})}};
        case ProductID::NASSRALLAH_1:
            return {{term({f({a2, b2}, {a2 * b2 / q}, Q, one), f({a2, b2}, {q * a2 * b2}, Q, q)})},
                    {term({f({a2, b2, ab, -ab}, {a2 * b2 / q, pab, -pab}, q, one)})}};
        case ProductID::NASSRALLAH_2:
            return {{term({f({q * a2, q * b2}, {q * a2 * b2}, Q, one), f({a2 / q, q * b2}, {q * a2 * b2}, Q, q)})},
                    {term({f({a2, q * b2, ab, -ab}, {a2 * b2, pab, -pab}, q, one)})}};
        default:
            return {{term({f({q * a2, q * b2}, {q * a2 * b2}, Q, one), f({a2 / q, b2 / q}, {a2 * b2 / q}, Q, q)})},
                    {term({f({a2, b2, ab, -ab}, {a2 * b2 / q, pab, -pab}, q, one)})}};
        }
    }
    case ProductID::TRIVIAL_21_32: {
        const G &p = need(m, "p"), &a = need(m, "a");
        return {{term({f({Q, a * a}, {q * a * a}, Q, one)})}, {term({f({q, a, -a}, {p * a, -p * a}, q, one)})}};
    }
    case ProductID::SRIVASTAVA_313: {
        const G &a = need(m, "a"), &b = need(m, "b");
        const G ab = a * b;
        return {{term({f({a, b}, {-ab}, q, one), f({a, b}, {-ab}, q, -one)})},
                {term({f({ab, q * ab, a * a, b * b}, {-ab, -q * ab, ab * ab}, Q, one, 2)})}};
    }
    case ProductID::T515:
    case ProductID::T516:
    case ProductID::T517:
    case ProductID::T518: {
        const G &a = need(m, "a"), &c = need(m, "c");
        const G a2 = a * a, c2 = c * c, ac = a * c, q3 = Q * q;
        const G D = (one - Q * c2) * (one - a2 * c2);
        switch (id) {
        case ProductID::T515:
            return {{term({f({-c, q * c}, {q * c2}, q, one), f({a, -a}, {a2}, q, -one)})},
                    {term({f({ac, -ac, q * ac, -q * ac}, {q * a2, q * c2, a2 * c2}, Q, one, 2)}),
                     term({f({q * ac, -q * ac, Q * ac, -Q * ac}, {q * a2, q3 * c2, Q * a2 * c2}, Q, one, 2)},
                          c / (one - q * c2), 1)}};
        case ProductID::T516:
            return {{term({f({-a, -c}, {-ac}, q, one), f({-a, -q * c}, {-q * ac}, q, -one)})},
                    {term({f({a2, Q * c2, ac, q * ac}, {-q * ac, -Q * ac, a2 * c2}, Q, one, 2)}),
                     term({f({Q * a2, Q * c2, q * ac, Q * ac}, {-Q * ac, -q3 * ac, Q * a2 * c2}, Q, one, 2)},
                          c * (one - a2) / ((one + ac) * (one + q * ac)), 1)}};
        case ProductID::T517:
            return {{term({f({-c, Q * c}, {Q * c2}, q, one), f({a, -a}, {a2}, q, -one)})},
                    {term({f({q * ac, -q * ac, Q * ac, -Q * ac}, {q * a2, q3 * c2, Q * a2 * c2}, Q, one, 2)},
                          c * (one + q) / (one - Q * c2), 1),
                     term({f({q3 * a2 * c2, ac, -ac, q * ac, -q * ac}, {q * a2, q * c2, q * a2 * c2, Q * a2 * c2}, Q,
                             one, 2)},
                          (one - q * c2) * (one - q * a2 * c2) / D),
                     term({f({q3, ac, -ac, q * ac, -q * ac}, {q, a2 / q, q3 * c2, Q * a2 * c2}, Q, one, 2)},
                          q * c2 * (one - q) * (one - a2 / q) / D)}};
        default:
            return {{term({f({-a, -c}, {-ac}, q, one), f({-a, -Q * c}, {-Q * ac}, q, -one)})},
                    {term({f({Q * a2, Q * Q * c2, q * ac, Q * ac}, {-q3 * ac, -Q * Q * ac, Q * a2 * c2}, Q, one, 2)},
                          c * (one + q) * (one - a2) / ((one + ac) * (one + Q * ac)), 1),
                     term({f({a2, Q * c2, q3 * c2, ac, q * ac, q3 * a2 * c2},
                             {q * c2, -Q * ac, -q3 * ac, q * a2 * c2, Q * a2 * c2}, Q, one, 2)},
                          (one - q * c2) * (one - q * a2 * c2) / D),
                     term({f({q3, a2, q * a2, Q * c2, ac, q * ac}, {q, a2 / q, -Q * ac, -q3 * ac, Q * a2 * c2}, Q,
                             one, 2)},
                          q * c2 * (one - q) * (one - a2 / q) / D)}};
        }
    }
    default:
        fail(ErrorKind::DomainError, std::string(product_info(id).name) + " has no series-factor form");
    }
}

template <class S>
std::vector<S> phi_coeffs(const std::vector<S>& up, const std::vector<S>& lo, const S& base, const S& coeff, int zpow,
                          long order)
{
    std::vector<S> out(order + 1, zero_like(base));
    SeriesSpec<S> spec{up, lo, base, coeff, std::nullopt};
    const int excess = 1 + static_cast<int>(lo.size()) - static_cast<int>(up.size());
    S t = one_like(base), qk = one_like(base);
    for (long k = 0; k * zpow <= order; ++k) {
        out[k * zpow] = t;
        if (!advance_term(t, spec, qk, k, excess))
            break;
        qk *= base;
    }
    return out;
}

std::vector<G> side_coeffs(const Side& side, long order)
{
    PowerSeriesTrunc<G> total(order, G(0));
    for (const Term& t : side) {
        PowerSeriesTrunc<G> p(order, G(0));
        p[0] = G(1);
        for (const auto& sf : t.series)
            p = p * PowerSeriesTrunc<G>(phi_coeffs(sf.upper, sf.lower, sf.base, sf.coeff, sf.zpow, order));
        p *= t.pre;
        total += p.shifted(t.xpow);
    }
    return total.coeffs;
}

Complex phi_value(const GV& up, const GV& lo, const G& base, const G& arg, const ProductOptions& o,
                  long* terms = nullptr)
{
    auto v = eval_phi(SeriesSpec<G>{up, lo, base, arg, std::nullopt}, o.prec, o.eps * 1e-4);
    if (terms)
        *terms = std::max(*terms, v.cert.terms_used);
    return v.value;
}

// terms, when given, collects the longest truncation among the factors.
Complex side_value(const Side& side, const G& z, const ProductOptions& o, long* terms = nullptr)
{
    Complex total(o.prec);
    for (const Term& t : side) {
        Complex v(t.pre * pow(z, t.xpow), o.prec);
        for (const auto& sf : t.series)
            v *= phi_value(sf.upper, sf.lower, sf.base, sf.coeff * pow(z, sf.zpow), o, terms);
        total += v;
    }
    return total;
}

VerificationReport compare_coefficients(const std::string& id, const std::vector<G>& l, const std::vector<G>& r)
{
    VerificationReport rep;
    rep.identity_id = id;
    rep.mode = "exact";
    rep.pass = l.size() == r.size();
    for (size_t k = 0; k < std::min(l.size(), r.size()); ++k) {
        if (!(l[k] == r[k])) {
            auto part = compare_exact(id, l[k], r[k]);
            rep.pass = false;
            rep.abs_err = std::max(rep.abs_err, part.abs_err);
            rep.rel_err = std::max(rep.rel_err, part.rel_err);
            if (rep.note.empty()) {
                rep.note = "coefficient " + std::to_string(k) + " differs";
                rep.lhs = part.lhs;
                rep.rhs = part.rhs;
            }
        }
    }
    if (rep.pass) {
        rep.lhs = l.empty() ? "" : to_string(l.back());
        rep.rhs = r.empty() ? "" : to_string(r.back());
        rep.note = "coefficients 0.." + std::to_string(static_cast<long>(l.size()) - 1) + " equal";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Windowed summation for the multi-index sums

double log_mag(const Complex& x) { return log_abs(x); }

// Sums term(0), term(1), ... and stops once the last 8 ratios are all below
// 1 and the geometric tail estimate |t_i| r/(1-r), with r the largest of
// those ratios, is below eps max(e^log_floor, |S|).  An inner sum whose
// value enters the total with weight W passes log_floor = -log|W|, so far
// out in the outer index it stops after a few terms.
template <class F>
Complex window_sum(F&& term, double eps, long prec, long& depth, double log_floor = 0, long max_terms = 5000)
{
    Complex total(prec);
    std::deque<double> ratios;
    double prev = 0;
    for (long i = 0; i < max_terms; ++i) {
        Complex t = term(i);
        total += t;
        const double lt = log_mag(t);
        if (i > 0) {
            double lr;
            if (std::isinf(lt))
                lr = -std::numeric_limits<double>::infinity();
            else if (std::isinf(prev))
                lr = std::numeric_limits<double>::infinity();
            else
                lr = lt - prev;
            ratios.push_back(lr);
            if (ratios.size() > 8)
                ratios.pop_front();
            const double lmax = *std::max_element(ratios.begin(), ratios.end());
            if (ratios.size() == 8 && lmax < 0) {
                const double r = std::exp(lmax);
                const double ltail = std::isinf(lt) ? lt : lt + std::log(r / (1 - r));
                if (ltail <= std::log(eps) + std::max(log_floor, log_mag(total))) {
                    depth = std::max(depth, i + 1);
                    return total;
                }
            }
        }
        prev = lt;
    }
    fail(ErrorKind::NoConvergence, "multi-index sum did not settle within " + std::to_string(max_terms) + " terms");
}

Complex cx(const G& g, long prec) { return Complex(g, prec); }

// acc += x y without temporaries; scratch holds the product.
void add_product(Complex& acc, const Complex& x, const Complex& y, Complex& scratch)
{
    mpfr_fmms(scratch.re.get(), x.re.get(), y.re.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_fmma(scratch.im.get(), x.re.get(), y.im.get(), x.im.get(), y.re.get(), MPFR_RNDN);
    mpfr_add(acc.re.get(), acc.re.get(), scratch.re.get(), MPFR_RNDN);
    mpfr_add(acc.im.get(), acc.im.get(), scratch.im.get(), MPFR_RNDN);
}

// log_floor for an inner sum entering with weight w.
double inner_floor(const Complex& w)
{
    const double l = log_abs(w);
    return std::isinf(l) ? 0.0 : std::max(0.0, -l);
}

void require_below(double lhs, double rhs, const std::string& what)
{
    if (!(lhs < rhs))
        fail(ErrorKind::DivergenceError, "hypothesis " + what + " fails");
}

void require_radius(const G& z, const ProductOptions& o, const std::string& name)
{
    if (z.abs_double() > o.radius)
        fail(ErrorKind::DivergenceError,
             "|" + name + "| = " + std::to_string(z.abs_double()) + " exceeds the safety radius");
}

// ---------------------------------------------------------------------------
// Generating functions

struct GFParams {
    G a, b, c, d, w, q, t;
};

GFParams gf_params(const ParamMap& m)
{
    return {need(m, "a"), need(m, "b"), need(m, "c"), need(m, "d"), need(m, "w"), need(m, "q"), need(m, "t")};
}

bool any_zero(const GFParams& g) { return g.a.is_zero() || g.b.is_zero() || g.c.is_zero() || g.d.is_zero(); }

Complex awgf_lhs(const GFParams& g, const ProductOptions& o)
{
    return phi_value({g.a * g.w, g.b * g.w}, {g.a * g.b}, g.q, g.t / g.w, o) *
           phi_value({g.c / g.w, g.d / g.w}, {g.c * g.d}, g.q, g.t * g.w, o);
}

Complex awgf_rhs(const GFParams& g, const ProductOptions& o, long& depth)
{
    const long P = o.prec;
    AWParams<Complex> ap{cx(g.a, P), cx(g.b, P), cx(g.c, P), cx(g.d, P), cx(g.q, P), cx(g.w, P), 0};
    std::optional<AWSequence<Complex>> seq;
    if (!any_zero(g))
        seq.emplace(ap);
    const Complex q = cx(g.q, P), t = cx(g.t, P), ab = cx(g.a * g.b, P), cd = cx(g.c * g.d, P);
    const Complex one(1L, P);
    Complex tn = one, den = one, qk = one;
    return window_sum(
        [&](long n) {
            if (n > 0) {
                den *= (one - q * qk) * (one - ab * qk) * (one - cd * qk);
                qk *= q;
                tn *= t;
            }
            ap.n = n;
            return (seq ? (*seq)(n) : eval_aw(ap, AWRep::CONV)) * tn / den;
        },
        o.eps * 1e-3, P, depth);
}

// u^k/a^k (aw, a/w;q)_k / (q, ab;q)_k, built incrementally.
struct ShiftWeights {
    Complex ratio; // u/a
    Complex x1, x2, y;
    Complex q;
    std::vector<Complex> w;
    ShiftWeights(const Complex& ratio_, const Complex& x1_, const Complex& x2_, const Complex& y_, const Complex& q_)
        : ratio(ratio_), x1(x1_), x2(x2_), y(y_), q(q_), w{Complex(1L, q_.prec())}
    {
    }
    const Complex& operator()(long k)
    {
        const Complex one(1L, q.prec());
        while (static_cast<long>(w.size()) <= k) {
            const long j = static_cast<long>(w.size()) - 1;
            const Complex qj = pow(q, j);
            w.push_back(w.back() * ratio * (one - x1 * qj) * (one - x2 * qj) / ((one - q * qj) * (one - y * qj)));
        }
        return w[k];
    }
};

struct MultiSums {
    GFParams g;
    Complex u;
    long P;
};

// Sum over n, k, l of t^n u^(k+l)/(a^k c^l) (aw^+-)_k (cw^+-)_l
// p_n(x; q^k a, b, q^l c, d) / ((q)_k (q)_l (q)_n (ab)_(n+k) (cd)_(n+l)).
SeriesValue triple_sum(const GFParams& g, const G& u_exact, double eps, long P)
{
    const Complex one(1L, P), q = cx(g.q, P), a = cx(g.a, P), b = cx(g.b, P), c = cx(g.c, P), d = cx(g.d, P),
                  w = cx(g.w, P), t = cx(g.t, P), u = cx(u_exact, P);
    ShiftWeights K(u / a, a * w, a / w, a * b, q);
    ShiftWeights L(u / c, c * w, c / w, c * d, q);
    long dk = 0, dl = 0, dn = 0;
    // Each level's tolerance is absolute in units of the total, so a level
    // summing many inner sums gets a share small enough for all of them.
    Complex total = window_sum(
        [&](long k) {
            const Complex ak = a * pow(q, k);
            const Complex& Kk = K(k);
            return Kk * window_sum(
                            [&](long l) {
                                const Complex cl = c * pow(q, l);
                                AWSequence<Complex> pn(AWParams<Complex>{ak, b, cl, d, q, w, 0});
                                const Complex abk = ak * b, cdl = cl * d;
                                Complex den = one, tn = one, qn = one;
                                const Complex& Ll = L(l);
                                return Ll * window_sum(
                                                [&](long n) {
                                                    if (n > 0) {
                                                        den *= (one - q * qn) * (one - abk * qn) * (one - cdl * qn);
                                                        qn *= q;
                                                        tn *= t;
                                                    }
                                                    return pn(n) * tn / den;
                                                },
                                                eps * 1e-8, P, dn, inner_floor(Kk * Ll));
                            },
                            eps * 1e-4, P, dl, inner_floor(Kk));
        },
        eps * 1e-1, P, dk);
    SeriesValue out{total, {}};
    out.cert.terms_used = std::max({dk, dl, dn});
    out.cert.target_eps = eps;
    return out;
}

std::string depth_string(long d) { return "max index depth " + std::to_string(d); }

} // namespace

// ---------------------------------------------------------------------------
// Registry

const std::vector<ProductInfo>& product_registry()
{
    static const std::vector<ProductInfo> reg{
        {ProductID::AWGF, "AWGF", "Ismail-Wilson product generating function", {"a", "b", "c", "d", "w", "q", "t"},
         "t", false},
        {ProductID::TRIPLE_32PF, "TRIPLE_32PF", "triple summation generating function",
         {"u", "w", "t", "a", "b", "c", "d", "q"}, "t", false},
        {ProductID::QUAD_COR13, "QUAD_COR13", "closed form quadruple summation", {"t", "w", "a", "b", "c", "d", "q"},
         "t", false},
        {ProductID::WD_APPELL, "WD_APPELL", "w = d case: multiple of a q-Appell function",
         {"u", "t", "a", "b", "d", "q"}, "t", false},
        {ProductID::SCHLOSSER_T4, "SCHLOSSER_T4", "product formula split into even and odd parts",
         {"a", "b", "q", "z"}, "z", true},
        {ProductID::SRIV_JAIN, "SRIV_JAIN", "Srivastava-Jain product formula", {"a", "b", "q", "z"}, "z", true},
        {ProductID::JACKSON_CLAUSEN, "JACKSON_CLAUSEN", "Jackson's q-analogue of Clausen's formula (q = p^2)",
         {"p", "a", "b", "z"}, "z", true},
        {ProductID::NASSRALLAH_1, "NASSRALLAH_1", "q-analogue of Orr's first formula (q = p^2)", {"p", "a", "b", "z"},
         "z", true},
        {ProductID::NASSRALLAH_2, "NASSRALLAH_2", "corrected q-analogue of Orr's second formula (q = p^2)",
         {"p", "a", "b", "z"}, "z", true},
        {ProductID::THM21, "THM21", "product formula from the first q-Bailey sum (q = p^2)", {"p", "a", "b", "z"},
         "z", true},
        {ProductID::TRIVIAL_21_32, "TRIVIAL_21_32", "termwise 2phi1 = 3phi2 (q = p^2)", {"p", "a", "z"}, "z", true},
        {ProductID::SRIVASTAVA_313, "SRIVASTAVA_313", "Srivastava's product of 2phi1(t) and 2phi1(-t)",
         {"a", "b", "q", "t"}, "t", true},
        {ProductID::T515, "T515", "3-term transformation, first form", {"a", "c", "q", "t"}, "t", true},
        {ProductID::T516, "T516", "3-term transformation, second form", {"a", "c", "q", "t"}, "t", true},
        {ProductID::T517, "T517", "4-term transformation, first form", {"a", "c", "q", "t"}, "t", true},
        {ProductID::T518, "T518", "4-term transformation, second form", {"a", "c", "q", "t"}, "t", true},
        {ProductID::CAYLEY_ORR_A, "CAYLEY_ORR_A", "Cayley-Orr type product, first lemma", {"a", "b", "c", "q", "z"},
         "z", false},
        {ProductID::CAYLEY_ORR_B, "CAYLEY_ORR_B", "Cayley-Orr type product, second lemma", {"a", "b", "c", "q", "z"},
         "z", false},
    };
    return reg;
}

const ProductInfo& product_info(ProductID id)
{
    for (const auto& p : product_registry())
        if (p.id == id)
            return p;
    fail(ErrorKind::UnknownIdentity, "unregistered product identity");
}

std::optional<ProductID> product_from_name(const std::string& name)
{
    for (const auto& p : product_registry())
        if (p.name == name)
            return p.id;
    return std::nullopt;
}

std::vector<std::string> product_ids()
{
    std::vector<std::string> out;
    for (const auto& p : product_registry())
        out.push_back(p.name);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Coefficients

std::vector<Gauss> product_lhs_coefficients(ProductID id, const ParamMap& params, long order)
{
    if (id == ProductID::CAYLEY_ORR_A || id == ProductID::CAYLEY_ORR_B) {
        const G &a = need(params, "a"), &b = need(params, "b"), &c = need(params, "c"), &q = need(params, "q");
        const G Q = q * q;
        PowerSeriesTrunc<G> x(id == ProductID::CAYLEY_ORR_A
                                  ? phi_coeffs<G>({Q * c / a, Q * c / b}, {Q * c}, Q, G(1), 1, order)
                                  : phi_coeffs<G>({q * c / a, c / (q * b)}, {c}, Q, G(1), 1, order));
        PowerSeriesTrunc<G> y(id == ProductID::CAYLEY_ORR_A
                                  ? phi_coeffs<G>({a / q, b / q}, {c}, Q, Q * c / (a * b), 1, order)
                                  : phi_coeffs<G>({a, b}, {c}, Q, c / (a * b), 1, order));
        return (x * y).coeffs;
    }
    return side_coeffs(build_sides(id, params).lhs, order);
}

std::vector<Gauss> product_rhs_coefficients(ProductID id, const ParamMap& params, long order)
{
    if (id == ProductID::CAYLEY_ORR_A || id == ProductID::CAYLEY_ORR_B)
        return cayley_orr_coefficients(id == ProductID::CAYLEY_ORR_A ? CayleyOrr::A : CayleyOrr::B,
                                       need(params, "a"), need(params, "b"), need(params, "c"), need(params, "q"),
                                       order);
    return side_coeffs(build_sides(id, params).rhs, order);
}

VerificationReport product_coefficient_check(ProductID id, const ParamMap& params, long order)
{
    const auto& info = product_info(id);
    auto rep = compare_coefficients(info.name, product_lhs_coefficients(id, params, order),
                                    product_rhs_coefficients(id, params, order));
    rep.params = param_list(info.params, params);
    rep.truncation_terms = std::to_string(order + 1);
    return rep;
}

VerificationReport schlosser_parity_check(const ParamMap& params, long order)
{
    Sides s = build_sides(ProductID::SCHLOSSER_T4, params);
    auto lhs = side_coeffs(s.lhs, order);
    auto even = side_coeffs({s.rhs[0]}, order);
    auto odd = side_coeffs({s.rhs[1]}, order);
    std::vector<G> l_even(order + 1, G(0)), l_odd(order + 1, G(0));
    for (long k = 0; k <= order; ++k)
        (k % 2 ? l_odd : l_even)[k] = lhs[k];
    auto a = compare_coefficients("SCHLOSSER_T4", l_even, even);
    auto b = compare_coefficients("SCHLOSSER_T4", l_odd, odd);
    auto rep = combine("SCHLOSSER_T4", {a, b});
    rep.note = a.pass && b.pass ? "even part = first 4phi3, odd part = z * second 4phi3 through z^" +
                                      std::to_string(order)
                                : (a.pass ? "odd part: " + b.note : "even part: " + a.note);
    rep.params = param_list(product_info(ProductID::SCHLOSSER_T4).params, params);
    return rep;
}

// ---------------------------------------------------------------------------
// Values

namespace {

long truncation_order(double z_abs, double growth, double eps)
{
    const double r = std::max(z_abs * std::max(1.0, growth), 1e-300);
    if (r >= 1)
        fail(ErrorKind::DivergenceError, "coefficient series does not converge at this point");
    return static_cast<long>(std::ceil(std::log(eps * 1e-3) / std::log(r))) + 8;
}

Complex horner(const std::vector<Complex>& c, const Complex& z)
{
    Complex v = c.back();
    for (long k = static_cast<long>(c.size()) - 2; k >= 0; --k)
        v = v * z + c[k];
    return v;
}

std::vector<Complex> to_cx(const GV& v, long P)
{
    std::vector<Complex> out;
    for (const auto& g : v)
        out.emplace_back(g, P);
    return out;
}

// Approximate w_n a_n for n <= T.
std::vector<Complex> cayley_orr_weighted_approx(CayleyOrr which, const G& a, const G& b, const G& c, const G& q,
                                                long T, long P)
{
    const G Q = q * q;
    const bool A = which == CayleyOrr::A;
    const G x = A ? Q * q * c / (a * b) : q * c / (a * b);
    const Complex one(1L, P), Qc = cx(Q, P), xc = cx(x, P);
    // (x z; Q)_oo and 1/(z; Q)_oo
    std::vector<Complex> e(T + 1, Complex(P)), fz(T + 1, Complex(P));
    Complex qq = one; // (Q;Q)_k
    Complex xk = one, Qbin = one, Qk = one;
    for (long k = 0; k <= T; ++k) {
        if (k > 0) {
            qq *= one - Qc * Qk;
            Qbin *= Qk; // Q^C(k,2)
            Qk *= Qc;
            xk *= xc;
        }
        e[k] = ((k % 2) ? -Qbin : Qbin) * xk / qq;
        fz[k] = one / qq;
    }
    auto phi = A ? phi_coeffs<Complex>(to_cx({a / q, b / q}, P), to_cx({c}, P), cx(q, P), cx(Q * c / (a * b), P), 1, T)
                 : phi_coeffs<Complex>(to_cx({a / q, b}, P), to_cx({c / q}, P), cx(q, P), cx(c / (a * b), P), 1, T);
    auto an = (PowerSeriesTrunc<Complex>(e) * PowerSeriesTrunc<Complex>(fz) * PowerSeriesTrunc<Complex>(phi)).coeffs;
    const Complex w1 = cx(A ? q * c : c / q, P), w2 = cx(A ? Q * c : c, P);
    Complex wn = one, Qn = one;
    for (long n = 0; n <= T; ++n) {
        if (n > 0) {
            wn *= (one - w1 * Qn) / (one - w2 * Qn);
            Qn *= Qc;
        }
        an[n] *= wn;
    }
    return an;
}

struct ValuePair {
    Complex lhs, rhs;
    std::string depth;
};

ValuePair product_values(ProductID id, const ParamMap& m, const ProductOptions& o)
{
    const auto& info = product_info(id);
    const long P = o.prec;
    require_radius(need(m, info.variable.c_str()), o, info.variable);
    switch (id) {
    case ProductID::AWGF: {
        GFParams g = gf_params(m);
        require_below(g.t.abs_double(), std::min(g.w.abs_double(), 1 / g.w.abs_double()), "|t| < min(|w|,1/|w|)");
        long depth = 0;
        Complex l = awgf_lhs(g, o);
        Complex r = awgf_rhs(g, o, depth);
        return {l, r, std::to_string(depth)};
    }
    case ProductID::TRIPLE_32PF:
    case ProductID::QUAD_COR13:
        fail(ErrorKind::DomainError, info.name + " is checked through its own sum, not a value pair");
    case ProductID::WD_APPELL: {
        const G &u = need(m, "u"), &t = need(m, "t"), &a = need(m, "a"), &b = need(m, "b"), &d = need(m, "d"),
                &q = need(m, "q");
        require_below((u / a).abs_double(), 1, "|u/a| < 1");
        require_below((t / d).abs_double(), 1, "|t/d| < 1");
        Complex l = phi_value({u / t, a * d, b * d}, {a * b, d * u}, q, t / d, o);
        const double e = o.eps * 1e-4;
        auto phi1 = eval_qappell_phi1(cx(a * d, P), cx(a / d, P), cx(b * d, P), cx(a * b, P), cx(u / a, P),
                                      cx(t / d, P), cx(q, P), e);
        Complex r = qpoch_inf(u / a, q, e, P).value / qpoch_inf(d * u, q, e, P).value * phi1.value;
        return {l, r, std::to_string(phi1.cert.terms_used)};
    }
    case ProductID::CAYLEY_ORR_A:
    case ProductID::CAYLEY_ORR_B: {
        const G &a = need(m, "a"), &b = need(m, "b"), &c = need(m, "c"), &q = need(m, "q"), &z = need(m, "z");
        const bool A = id == ProductID::CAYLEY_ORR_A;
        const G Q = q * q, kappa = A ? Q * c / (a * b) : c / (a * b);
        require_below((kappa * z).abs_double(), 1, A ? "|q^2 c z/(ab)| < 1" : "|c z/(ab)| < 1");
        Complex l = A ? phi_value({Q * c / a, Q * c / b}, {Q * c}, Q, z, o) *
                            phi_value({a / q, b / q}, {c}, Q, kappa * z, o)
                      : phi_value({q * c / a, c / (q * b)}, {c}, Q, z, o) * phi_value({a, b}, {c}, Q, kappa * z, o);
        const long T = truncation_order(z.abs_double(), kappa.abs_double(), o.eps);
        auto coeffs = cayley_orr_weighted_approx(A ? CayleyOrr::A : CayleyOrr::B, a, b, c, q, T, P);
        return {l, horner(coeffs, cx(z, P)), std::to_string(T + 1)};
    }
    default: {
        Sides s = build_sides(id, m);
        const G& z = need(m, info.variable.c_str());
        long terms = 0;
        Complex l = side_value(s.lhs, z, o, &terms), r = side_value(s.rhs, z, o, &terms);
        return {l, r, std::to_string(terms)};
    }
    }
}

} // namespace

Complex product_lhs_value(ProductID id, const ParamMap& params, const ProductOptions& opts)
{
    const auto& info = product_info(id);
    if (info.series_sides)
        return side_value(build_sides(id, params).lhs, need(params, info.variable.c_str()), opts);
    if (id == ProductID::AWGF)
        return awgf_lhs(gf_params(params), opts);
    return product_values(id, params, opts).lhs;
}

VerificationReport verify_product(ProductID id, const ParamMap& params, const ProductOptions& opts)
{
    const auto& info = product_info(id);
    for (const auto& [k, v] : params)
        if (std::find(info.params.begin(), info.params.end(), k) == info.params.end())
            fail(ErrorKind::DomainError, "unknown parameter '" + k + "' for " + info.name);
    if (id == ProductID::TRIPLE_32PF || id == ProductID::QUAD_COR13) {
        require_radius(need(params, "t"), opts, "t");
        return id == ProductID::TRIPLE_32PF ? triple_sum_32pf(params, opts.eps, opts.prec)
                                            : quad_cor13(params, opts.eps, opts.prec);
    }
    ValuePair v = product_values(id, params, opts);
    auto rep = compare_approx(info.name, v.lhs, v.rhs, opts.eps);
    rep.params = param_list(info.params, params);
    rep.truncation_terms = v.depth;
    std::optional<VerificationReport> coeff;
    if (info.series_sides || id == ProductID::CAYLEY_ORR_A || id == ProductID::CAYLEY_ORR_B)
        coeff = product_coefficient_check(id, params, opts.coefficient_order);
    else if (id == ProductID::AWGF) {
        GFParams g = gf_params(params);
        coeff = awgf_coefficient_check(g.a, g.b, g.c, g.d, g.w, g.q, opts.coefficient_order);
    }
    if (coeff) {
        rep.pass = rep.pass && coeff->pass;
        rep.note = "value; exact " + coeff->note;
    }
    return rep;
}

VerificationReport lhs_product_crosscheck(ProductID id, const ParamMap& params, const ProductOptions& opts)
{
    const auto& info = product_info(id);
    Sides s = build_sides(id, params);
    const G& z = need(params, info.variable.c_str());
    require_radius(z, opts, info.variable);
    const long P = opts.prec;
    const Term& t = s.lhs.front();
    long T = truncation_order(z.abs_double(), 1.0, opts.eps);
    PowerSeriesTrunc<Complex> prod(T, Complex(P));
    prod[0] = Complex(1L, P);
    Complex direct(1L, P);
    for (const auto& sf : t.series) {
        prod = prod * PowerSeriesTrunc<Complex>(
                          phi_coeffs<Complex>(to_cx(sf.upper, P), to_cx(sf.lower, P), cx(sf.base, P),
                                              cx(sf.coeff, P), sf.zpow, T));
        direct *= phi_value(sf.upper, sf.lower, sf.base, sf.coeff * pow(z, sf.zpow), opts);
    }
    auto rep = compare_approx(info.name, horner(prod.coeffs, cx(z, P)), direct, opts.eps);
    rep.params = param_list(info.params, params);
    rep.truncation_terms = std::to_string(T + 1);
    rep.note = "truncated Cauchy product vs product of values";
    return rep;
}

VerificationReport awgf_coefficient_check(const Gauss& a, const Gauss& b, const Gauss& c, const Gauss& d,
                                          const Gauss& w, const Gauss& q, long n_max)
{
    const G one(1);
    PowerSeriesTrunc<G> left(phi_coeffs<G>({a * w, b * w}, {a * b}, q, one / w, 1, n_max));
    PowerSeriesTrunc<G> right(phi_coeffs<G>({c / w, d / w}, {c * d}, q, w, 1, n_max));
    auto prod = (left * right).coeffs;
    const bool hermite = a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero();
    const bool zeros = a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero();
    std::vector<G> expect;
    for (long n = 0; n <= n_max; ++n) {
        G pn = hermite ? aw_hermite_degenerate(w, q, n)
                       : eval_aw(AWParams<G>{a, b, c, d, q, w, n}, zeros ? AWRep::CONV : AWRep::R1);
        expect.push_back(pn / qpoch(GV{q, a * b, c * d}, q, n));
    }
    auto rep = compare_coefficients("AWGF", prod, expect);
    rep.params = {{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)},
                  {"d", to_string(d)}, {"w", to_string(w)}, {"q", to_string(q)}};
    rep.truncation_terms = std::to_string(n_max + 1);
    if (hermite)
        rep.note += " (continuous q-Hermite)";
    return rep;
}

// ---------------------------------------------------------------------------
// Triple and quadruple sums

namespace {

GFParams multi_params(const ParamMap& m, bool with_u, G& u)
{
    GFParams g = gf_params(m);
    u = with_u ? need(m, "u") : g.t;
    return g;
}

} // namespace

SeriesValue triple_sum_value(const ParamMap& params, double eps, long prec)
{
    G u;
    GFParams g = multi_params(params, true, u);
    require_base(g.q);
    const double wmin = std::min(g.w.abs_double(), 1 / g.w.abs_double());
    require_below(u.abs_double(), std::min(g.a.abs_double(), g.c.abs_double()), "|u| < min(|a|,|c|)");
    require_below(g.t.abs_double(), wmin, "|t| < min(|w|,1/|w|)");
    return triple_sum(g, u, eps, prec);
}

VerificationReport triple_sum_32pf(const ParamMap& params, double eps, long prec)
{
    G u;
    GFParams g = multi_params(params, true, u);
    SeriesValue s = triple_sum_value(params, eps, prec);
    ProductOptions o;
    o.prec = prec;
    o.eps = eps;
    Complex lhs = phi_value({u / g.t, g.a * g.w, g.b * g.w}, {g.a * g.b, u * g.w}, g.q, g.t / g.w, o) *
                  phi_value({u / g.t, g.c / g.w, g.d / g.w}, {g.c * g.d, u / g.w}, g.q, g.t * g.w, o);
    const double e = eps * 1e-4;
    Complex pre = qpoch_inf(u / g.a, g.q, e, prec).value * qpoch_inf(u / g.c, g.q, e, prec).value /
                  (qpoch_inf(u * g.w, g.q, e, prec).value * qpoch_inf(u / g.w, g.q, e, prec).value);
    auto rep = compare_approx("TRIPLE_32PF", lhs, pre * s.value, eps);
    rep.params = param_list(product_info(ProductID::TRIPLE_32PF).params, params);
    rep.truncation_terms = depth_string(s.cert.terms_used);
    return rep;
}

SeriesValue quad_cor13_value(const ParamMap& params, double eps, long P)
{
    G unused;
    GFParams g = multi_params(params, false, unused);
    require_base(g.q);
    const double tmax = std::min({g.a.abs_double(), g.c.abs_double(), g.w.abs_double(), 1 / g.w.abs_double()});
    require_below(g.t.abs_double(), tmax, "|t| < min(|a|,|c|,|w|,1/|w|)");
    const Complex one(1L, P), q = cx(g.q, P), a = cx(g.a, P), b = cx(g.b, P), c = cx(g.c, P), d = cx(g.d, P),
                  w = cx(g.w, P), t = cx(g.t, P);
    ShiftWeights K(t / a, a * w, a / w, a * b, q);
    ShiftWeights L(t / c, c * w, c / w, c * d, q);
    // alpha^(k)_j = (q^k a w, b w;q)_j/(q, q^k ab;q)_j w^-j and the matching beta^(l) w^j
    std::vector<std::vector<Complex>> alpha, beta;
    auto coeff = [&](std::vector<std::vector<Complex>>& cache, long idx, long j, const Complex& x1,
                     const Complex& x2, const Complex& y, const Complex& step) -> const Complex& {
        if (static_cast<long>(cache.size()) <= idx)
            cache.resize(idx + 1);
        auto& v = cache[idx];
        if (v.empty())
            v.push_back(one);
        while (static_cast<long>(v.size()) <= j) {
            const Complex qj = pow(q, static_cast<long>(v.size()) - 1);
            v.push_back(v.back() * (one - x1 * qj) * (one - x2 * qj) / ((one - q * qj) * (one - y * qj)) * step);
        }
        return v[j];
    };
    long dk = 0, dl = 0, dn = 0;
    const Complex winv = one / w;
    Complex scratch(P);
    Complex total = window_sum(
        [&](long k) {
            const Complex ak = a * pow(q, k);
            return K(k) * window_sum(
                              [&](long l) {
                                  const Complex cl = c * pow(q, l);
                                  Complex tn = one;
                                  return L(l) * window_sum(
                                                    [&](long n) {
                                                        if (n > 0)
                                                            tn *= t;
                                                        Complex s(P);
                                                        for (long j = 0; j <= n; ++j)
                                                            add_product(s,
                                                                        coeff(alpha, k, j, ak * w, b * w, ak * b, winv),
                                                                        coeff(beta, l, n - j, cl * winv, d * winv,
                                                                              cl * d, w),
                                                                        scratch);
                                                        return tn * s;
                                                    },
                                                    eps * 1e-8, P, dn, inner_floor(K(k) * L(l)));
                              },
                              eps * 1e-4, P, dl, inner_floor(K(k)));
        },
        eps * 1e-1, P, dk);
    SeriesValue out{total, {}};
    out.cert.terms_used = std::max({dk, dl, dn});
    out.cert.target_eps = eps;
    return out;
}

VerificationReport quad_cor13(const ParamMap& params, double eps, long prec, SeriesValue* value)
{
    GFParams g = gf_params(params);
    SeriesValue s = quad_cor13_value(params, eps, prec);
    if (value)
        *value = s;
    const double e = eps * 1e-4;
    Complex closed = qpoch_inf(g.t * g.w, g.q, e, prec).value * qpoch_inf(g.t / g.w, g.q, e, prec).value /
                     (qpoch_inf(g.t / g.a, g.q, e, prec).value * qpoch_inf(g.t / g.c, g.q, e, prec).value);
    auto rep = compare_approx("QUAD_COR13", s.value, closed, eps);
    rep.params = param_list(product_info(ProductID::QUAD_COR13).params, params);
    rep.truncation_terms = depth_string(s.cert.terms_used);
    return rep;
}

// ---------------------------------------------------------------------------
// Cayley-Orr

std::vector<Gauss> cayley_orr_coefficients(CayleyOrr which, const Gauss& a, const Gauss& b, const Gauss& c,
                                           const Gauss& q, long n_max)
{
    const G Q = q * q, one(1);
    const bool A = which == CayleyOrr::A;
    const G x = A ? Q * q * c / (a * b) : q * c / (a * b);
    PowerSeriesTrunc<G> e(n_max, G(0)), fz(n_max, G(0));
    G qq = one, xk = one, Qbin = one, Qk = one;
    for (long k = 0; k <= n_max; ++k) {
        if (k > 0) {
            qq *= one - Q * Qk;
            Qbin *= Qk;
            Qk *= Q;
            xk *= x;
        }
        e[k] = ((k % 2) ? -Qbin : Qbin) * xk / qq;
        fz[k] = one / qq;
    }
    PowerSeriesTrunc<G> phi(A ? phi_coeffs<G>({a / q, b / q}, {c}, q, Q * c / (a * b), 1, n_max)
                              : phi_coeffs<G>({a / q, b}, {c / q}, q, c / (a * b), 1, n_max));
    auto an = (e * fz * phi).coeffs;
    const G w1 = A ? q * c : c / q, w2 = A ? Q * c : c;
    for (long n = 0; n <= n_max; ++n)
        an[n] *= qpoch(w1, Q, n) / qpoch(w2, Q, n);
    return an;
}

VerificationReport cayley_orr_check(CayleyOrr which, const Gauss& a, const Gauss& b, const Gauss& c, const Gauss& q,
                                    long n_max)
{
    const ProductID id = which == CayleyOrr::A ? ProductID::CAYLEY_ORR_A : ProductID::CAYLEY_ORR_B;
    ParamMap m{{"a", a}, {"b", b}, {"c", c}, {"q", q}, {"z", G(0)}};
    auto rep = compare_coefficients(product_info(id).name, product_lhs_coefficients(id, m, n_max),
                                    cayley_orr_coefficients(which, a, b, c, q, n_max));
    rep.params = {{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)}, {"q", to_string(q)}};
    rep.truncation_terms = std::to_string(n_max + 1);
    return rep;
}

// ---------------------------------------------------------------------------
// Classical limits

const char* classical_limit_name(ClassicalLimit which)
{
    switch (which) {
    case ClassicalLimit::CLAUSEN: return "CLAUSEN";
    case ClassicalLimit::ORR_A: return "ORR_A";
    case ClassicalLimit::ORR_B: return "ORR_B";
    case ClassicalLimit::BAILEY_211: return "BAILEY_211";
    case ClassicalLimit::COR_3F2: return "COR_3F2";
    }
    return "?";
}

VerificationReport classical_limit_check(ClassicalLimit which, const Gauss& a, const Gauss& b, const Gauss& z,
                                         double eps, long prec)
{
    const G half(1, 2), one(1), two(2);
    auto C = [&](const G& g) { return Complex(g, prec); };
    auto F = [&](GV up, GV lo, const G& x) {
        std::vector<Complex> u, l;
        for (const auto& g : up)
            u.push_back(C(g));
        for (const auto& g : lo)
            l.push_back(C(g));
        return eval_rfs(u, l, C(x), eps * 1e-3).value;
    };
    const G s = a + b;
    Complex lhs(prec), rhs(prec);
    switch (which) {
    case ClassicalLimit::CLAUSEN: {
        Complex f = F({a, b}, {s + half}, z);
        lhs = f * f;
        rhs = F({two * a, two * b, s}, {s + half, two * s}, z);
        break;
    }
    case ClassicalLimit::ORR_A:
        lhs = F({a, b}, {s - half}, z) * F({a, b}, {s + half}, z);
        rhs = F({two * a, two * b, s}, {two * s - one, s + half}, z);
        break;
    case ClassicalLimit::ORR_B:
        lhs = F({a, b}, {s - half}, z) * F({a, b - one}, {s - half}, z);
        rhs = F({two * a, two * b - one, s - one}, {two * s - two, s - half}, z);
        break;
    case ClassicalLimit::BAILEY_211:
        lhs = F({a}, {two * a}, z) * F({b}, {two * b}, -z);
        rhs = F({s / two, (s + one) / two}, {a + half, b + half, s}, z * z / G(4));
        break;
    case ClassicalLimit::COR_3F2:
        lhs = F({a, b}, {s + half}, z) * F({a + one, b + one}, {s + G(3, 2)}, z);
        rhs = F({two * a + one, two * b + one, s + one}, {two * s + one, s + G(3, 2)}, z);
        break;
    }
    auto rep = compare_approx(classical_limit_name(which), lhs, rhs, eps);
    rep.params = {{"a", to_string(a)}, {"b", to_string(b)}, {"z", to_string(z)}};
    return rep;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

struct PointDraw {
    std::mt19937_64 rng;
    explicit PointDraw(std::uint64_t s) : rng(s) {}
    long uniform(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }
    // Real rational of modulus in [lo, hi] with a random sign.
    G magnitude(double lo, double hi)
    {
        for (;;) {
            long den = uniform(3, 24);
            long num = uniform(1, den * 2);
            double v = static_cast<double>(num) / static_cast<double>(den);
            if (v >= lo && v <= hi)
                return G(uniform(0, 1) ? num : -num, den);
        }
    }
    // Optionally rotated off the real axis by a small Gaussian factor.
    G param(double lo, double hi)
    {
        G x = magnitude(lo, hi);
        if (uniform(0, 3) == 0) {
            G rot(G(4, 5).re, G(3, 5).re); // unit modulus
            x *= uniform(0, 1) ? rot : rot.conj();
        }
        return x;
    }
};

ParamMap draw_point(ProductID id, PointDraw& d, double radius)
{
    const auto& info = product_info(id);
    ParamMap m;
    for (const auto& name : info.params) {
        if (name == "q")
            m[name] = d.magnitude(0.2, 0.6);
        else if (name == "p")
            m[name] = d.magnitude(0.35, 0.75);
        else if (name == "z" || name == "t")
            m[name] = d.param(0.05, radius);
        else if (name == "w")
            m[name] = d.param(0.8, 1.0);
        else
            m[name] = d.param(0.2, 0.85);
    }
    if (id == ProductID::TRIPLE_32PF) {
        const double lim = std::min(m["a"].abs_double(), m["c"].abs_double());
        m["u"] = d.param(0.05, std::min(radius, 0.9 * lim));
    }
    if (id == ProductID::QUAD_COR13 || id == ProductID::TRIPLE_32PF) {
        const double lim = std::min({m["a"].abs_double(), m["c"].abs_double(), radius});
        m["t"] = d.param(0.05, 0.9 * lim);
    }
    return m;
}

} // namespace

std::vector<ParamMap> product_sample_points(ProductID id, long count, std::uint64_t seed, const ProductOptions& opts)
{
    const auto& info = product_info(id);
    PointDraw d(seed_for(info.name, seed));
    std::vector<ParamMap> out;
    long rejected = 0;
    while (static_cast<long>(out.size()) < count) {
        ParamMap m = draw_point(id, d, opts.radius);
        try {
            if (info.series_sides || id == ProductID::CAYLEY_ORR_A || id == ProductID::CAYLEY_ORR_B)
                (void)product_coefficient_check(id, m, opts.coefficient_order);
            if (id != ProductID::TRIPLE_32PF && id != ProductID::QUAD_COR13)
                (void)product_values(id, m, opts);
            else if (id == ProductID::TRIPLE_32PF)
                (void)product_lhs_value(ProductID::AWGF, m, opts);
            out.push_back(m);
            rejected = 0;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PoleError && e.kind() != ErrorKind::DivergenceError &&
                e.kind() != ErrorKind::DomainError)
                throw;
            if (++rejected >= 1000)
                fail(ErrorKind::SamplerExhausted, info.name + ": 1000 consecutive draws rejected");
        }
    }
    return out;
}

} // namespace qseries
