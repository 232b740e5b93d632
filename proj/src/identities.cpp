#include "qseries/identities.hpp"

#include <algorithm>

namespace qseries {

namespace {

using G = Gauss;
using GV = std::vector<Gauss>;

struct Args {
    const ParamMap& m;
    const G& operator[](const char* key) const
    {
        auto it = m.find(key);
        if (it == m.end())
            fail(ErrorKind::ConstraintViolation, std::string("missing parameter '") + key + "'");
        return it->second;
    }
};

long ceil_half(long n) { return (n + 1) / 2; }
long floor_half(long n) { return n / 2; }
G sgn(long k) { return (k % 2) ? G(-1) : G(1); }
bool odd(long n) { return n % 2 != 0; }

G P(const GV& as, const G& q, long n) { return qpoch(as, q, n); }
G P(const G& a, const G& q, long n) { return qpoch(a, q, n); }

SeriesSpec<G> phi(GV upper, GV lower, const G& q, const G& z, long n)
{
    return SeriesSpec<G>{std::move(upper), std::move(lower), q, z, n};
}

struct InfFactor {
    G a;
    G base;
};

// Ratio of infinite products.  Denominator zeros are poles; a numerator
// zero makes the value an exact 0.
Complex inf_ratio(const std::vector<InfFactor>& num, const std::vector<InfFactor>& den, const VerifyOptions& o)
{
    for (const auto& f : den) {
        long k = vanishing_index(f.a, f.base);
        if (k >= 0)
            fail(ErrorKind::PoleError, "denominator product (" + to_string(f.a) + ";" + to_string(f.base) +
                                           ")_oo vanishes at factor " + std::to_string(k));
    }
    for (const auto& f : num)
        if (vanishing_index(f.a, f.base) >= 0)
            return Complex(o.prec);
    const double eps = o.eps / 64;
    Complex v(1L, o.prec);
    for (const auto& f : num)
        v *= qpoch_inf(f.a, f.base, eps, o.prec).value;
    for (const auto& f : den)
        v /= qpoch_inf(f.a, f.base, eps, o.prec).value;
    return v;
}

bool never(long) { return false; }

// ---------------------------------------------------------------------------
// Left and right sides

SeriesSpec<G> grw_lhs(const G& q, const G& b, const G& c, long n)
{
    const G Q = q * q, q1n = pow(q, 1 - n);
    return phi({pow(q, -2 * n), c, -q1n / b, q1n * b / c}, {pow(q, 2 - 2 * n) / c, -q1n * b, q1n * c / b}, Q, Q, n);
}

SeriesSpec<G> bailey41_lhs(const G& q, const G& a, const G& b, long n)
{
    const G q1n = pow(q, 1 - n);
    return phi({pow(q, -n), -q1n / (a * b), a, b}, {-a * b, q1n / a, q1n / b}, q, q, n);
}

G bailey41_rhs(const G& q, const G& a, const G& b, long n)
{
    if (odd(n))
        return G(0);
    const G q2 = q * q;
    const long h = n / 2;
    return P({q, a * a, b * b}, q2, h) * P(a * b, q, n) / (P({a, b}, q, n) * P(a * a * b * b, q2, h));
}

SeriesSpec<G> sears_lhs(const G& q, const G& a, const G& b, const G& c, const G& d, const G& e, long n)
{
    const G f = pow(q, 1 - n) * a * b * c / (d * e);
    return phi({pow(q, -n), a, b, c}, {d, e, f}, q, q, n);
}

G sears_rhs(const G& q, const G& a, const G& b, const G& c, const G& d, const G& e, long n)
{
    const G f = pow(q, 1 - n) * a * b * c / (d * e);
    const G q1n = pow(q, 1 - n);
    G pre = P({e / a, f / a}, q, n) / P({e, f}, q, n) * pow(a, n);
    return pre * eval_phi_terminating(phi({pow(q, -n), a, d / b, d / c}, {d, a * q1n / e, a * q1n / f}, q, q, n));
}

SeriesSpec<G> n7_lhs(const G& q, const G& a, const G& sa, const G& sc, long n)
{
    return phi({pow(q, -n), pow(q, n - 1) * a, sc, -sc}, {q * sa, -q * sa, sc * sc}, q, q, n);
}

G n7_rhs(const G& q, const G& a, const G& c, long n)
{
    const G one(1), q2 = q * q;
    const long m = ceil_half(n), h = floor_half(n);
    const G qn = pow(q, n);
    G br;
    if (odd(n)) {
        const G qn1a = pow(q, n - 1) * a;
        br = qn1a * (one + q) * (one - q * qn * a) * (one - qn1a) * (one - qn1a / c);
    } else {
        br = (one - qn * a) * (pow(q, 2 * n - 2) * a * (a - c) * (one - qn * qn * a) +
                               (c - qn * a) * (one + pow(q, 2 * n - 1) * a) * (one - pow(q, n - 1) * a));
    }
    G den = (c - a) * (one - qn * qn * a) * (one - pow(q, 2 * n - 2) * a) * P(q2 * a, q2, m) * P(q * c, q2, h);
    return pow(c, m) * P(q, q2, m) * P(a / c, q2, h) * br / den;
}

SeriesSpec<G> n6_lhs(const G& p, const G& sc, long n)
{
    const G q = p * p, I = G::i(), x = I * pow(p, 3 - 2 * n);
    return phi({pow(q, -n), -pow(q, -n), sc, -sc}, {x, -x, sc * sc}, q, q, n);
}

G n6_rhs(const G& p, const G& sc, long n)
{
    const G q = p * p, q2 = q * q, c = sc * sc, one(1);
    const long m = ceil_half(n), h = floor_half(n);
    return sgn(n) * (one + pow(q, 1 - 2 * n)) / (one + q) * P(q, q2, m) * P(-pow(q, 1 + 2 * h) * c, q2, h) /
           (P(q * c, q2, h) * P(-pow(q, 1 + 2 * m), q2, h));
}

G awc_rhs(const G& q, const G& a, const G& b, long n)
{
    const G q2 = q * q, one(1);
    if (!odd(n))
        return pow(a, n) * P({q2 / b, q * b / (a * a)}, q2, n / 2) / P({q * b, q2 * a * a / b}, q2, n / 2);
    const long h = (n - 1) / 2;
    return q * (one - b / q) * (one - a * a / b) / ((one - b) * (one - q * a * a / b)) * pow(-a, n - 1) *
           P({q2 * q / b, q2 * b / (a * a)}, q2, h) / P({q2 * b, q2 * q * a * a / b}, q2, h);
}

Complex awe_rhs(const G& q, const G& c, const G& e, long n, const VerifyOptions& o)
{
    const G q2 = q * q;
    std::vector<InfFactor> num{{pow(q, -n) * e, q2},
                               {pow(q, n + 1) * e, q2},
                               {pow(q, 1 - n) * c * c / e, q2},
                               {pow(q, n + 2) * c * c / e, q2}};
    std::vector<InfFactor> den{{e, q}, {q * c * c / e, q}};
    Complex v = inf_ratio(num, den, o);
    if (v.is_zero())
        return v;
    return v * Complex(pow(q, n * (n + 1) / 2), o.prec);
}

// ---------------------------------------------------------------------------

IdentityRecord rec(std::string id, std::string anchor, std::vector<std::string> params, BalanceClass bal)
{
    IdentityRecord r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.params = std::move(params);
    r.base_param = r.params.front();
    r.balance = bal;
    r.parity_zero = never;
    return r;
}

std::vector<IdentityRecord> build_registry()
{
    const BalanceClass B1 = BalanceClass::balanced(1), B2 = BalanceClass::balanced(2),
                       B3 = BalanceClass::balanced(3);
    const G one(1);
    std::vector<IdentityRecord> R;

    {
        auto r = rec("T_ANDREWS_WATSON", "Andrews' q-Watson sum: vanishes for n odd", {"q", "s", "sc"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &s = A["s"], &sc = A["sc"];
            const G a = s * s / q, c = sc * sc;
            return phi({pow(q, -n), pow(q, n) * a, sc, -sc}, {s, -s, c}, q, q, n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &s = A["s"], &sc = A["sc"];
            const G a = s * s / q, c = sc * sc, q2 = q * q;
            if (odd(n))
                return G(0);
            return pow(c, n / 2) * P({q, q * a / c}, q2, n / 2) / P({q * a, q * c}, q2, n / 2);
        };
        r.parity_zero = odd;
        R.push_back(r);
    }
    {
        auto r = rec("T_GASPER_RAHMAN_WATSON", "q-Watson balanced 4phi3 with infinite-product right side",
                     {"q", "b", "c"}, B1);
        r.approx_only = true;
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            return grw_lhs(A["q"], A["b"], A["c"], n);
        };
        r.rhs_approx = [](const ParamMap& m, long n, const VerifyOptions& o) {
            Args A{m};
            const G &q = A["q"], &b = A["b"], &c = A["c"];
            const G Q = q * q, Q2 = Q * Q;
            std::vector<InfFactor> num{{pow(q, 1 - n) * b, Q},      {c * c, Q},
                                       {pow(q, 2 * n) * c, Q},      {pow(q, 1 + n) * c / b, Q},
                                       {pow(q, 2 - 2 * n), Q2},     {Q * b * b, Q2},
                                       {pow(q, 2 * n + 2) * c * c, Q2}, {Q * c * c / (b * b), Q2}};
            std::vector<InfFactor> den{{pow(q, n + 1) * b, Q},           {c, Q},
                                       {pow(q, 2 * n) * c * c, Q},       {pow(q, 1 - n) * c / b, Q},
                                       {Q, Q2},                          {pow(q, 2 - 2 * n) * b * b, Q2},
                                       {Q * c * c, Q2},                  {pow(q, 2 * n + 2) * c * c / (b * b), Q2}};
            return inf_ratio(num, den, o);
        };
        r.parity_zero = odd;
        R.push_back(r);
    }
    {
        auto r = rec("T_BAILEY41", "Bailey (1941) balanced terminating 4phi3 sum", {"q", "a", "b"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            return bailey41_lhs(A["q"], A["a"], A["b"], n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            return bailey41_rhs(A["q"], A["a"], A["b"], n);
        };
        r.parity_zero = odd;
        R.push_back(r);
    }
    {
        auto r = rec("T_ANDREWS_WHIPPLE_E", "q-Whipple sum, simplified infinite-product form", {"q", "c", "e"}, B1);
        r.approx_only = true;
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &c = A["c"], &e = A["e"];
            return phi({pow(q, -n), pow(q, n + 1), c, -c}, {-q, e, q * c * c / e}, q, q, n);
        };
        r.rhs_approx = [](const ParamMap& m, long n, const VerifyOptions& o) {
            Args A{m};
            return awe_rhs(A["q"], A["c"], A["e"], n, o);
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_ANDREWS_WHIPPLE_C", "q-Whipple sum, compact parity-split form", {"q", "a", "b"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            return phi({pow(q, -n), pow(q, n + 1), a, -a}, {-q, b, q * a * a / b}, q, q, n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            return awc_rhs(A["q"], A["a"], A["b"], n);
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_QBAILEY_1", "q-analogue of Bailey's 4F3(1) sum", {"q", "a", "b"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            const G Q = q * q;
            return phi({pow(q, -2 * n), pow(q, 2 * n) * b * b, a, q * a}, {b, q * b, Q * a * a}, Q, Q, n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            return pow(a, n) * P({-q, b / a}, q, n) / P({-q * a, b}, q, n);
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_QBAILEY_2", "second q-analogue of Bailey's 4F3(1) sum", {"q", "a", "b"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            const G Q = q * q;
            return phi({pow(q, -2 * n), pow(q, 2 * n - 2) * b * b, a, q * a}, {b, q * b, a * a}, Q, Q, n);
        };
        r.rhs = [one](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            return pow(a, n) * (one - pow(q, n - 1) * b) * P({-q, b / a}, q, n) /
                   ((one - pow(q, 2 * n - 1) * b) * P({-a, b}, q, n));
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_QPFAFF_SAALSCHUTZ", "q-Pfaff-Saalschutz sum as a balanced 3phi2",
                     {"q", "a", "b", "c", "d"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"], &c = A["c"], &d = A["d"];
            return phi({pow(q, -n), pow(q, n + 1) * a * a / (b * c * d), d}, {q * a / b, q * a / c}, q, q, n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"], &c = A["c"], &d = A["d"];
            return pow(d, n) * P({q * a / (b * d), q * a / (c * d)}, q, n) / P({q * a / b, q * a / c}, q, n);
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_GR_EX214", "balanced 4phi3 summation from a textbook exercise", {"q", "a", "b"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            return phi({pow(q, -n), b, a * a, q * a}, {b * b * pow(q, 1 - n), q * a * a / b, a}, q, q, n);
        };
        r.rhs = [one](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            return (one + a / b * pow(q, n)) * P({a * a / (b * b), one / b}, q, n) /
                   ((one + a / b) * P({q * a * a / b, one / (b * b)}, q, n));
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_GR_3109", "textbook balanced 4phi3 summation with a (1 - a q^2n / b) factor",
                     {"q", "a", "b"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            const G q1n = pow(q, 1 - n);
            return phi({pow(q, -n), -b * pow(q, -n), a * a, q * a}, {a * b * q1n, -a * q1n, a}, q, q, n);
        };
        r.rhs = [one](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            return pow(q * a * a, -n) * (one - a / b * pow(q, 2 * n)) * P({q * a / b, -a}, q, n) /
                   ((one - a / b * pow(q, n)) * P({one / (a * b), -one / a}, q, n));
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_GR_31010", "textbook balanced 4phi3 summation, companion form", {"q", "a", "b"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            const G q1n = pow(q, 1 - n);
            return phi({pow(q, -n), -b * q1n, a * b, b}, {b * b * q1n, -b * pow(q, -n), q * a}, q, q, n);
        };
        r.rhs = [one](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            return (one + one / b) * (one - a / b * pow(q, 2 * n)) * P({a / b, one / b}, q, n) /
                   ((one + pow(q, n) / b) * (one - a / b) * P({a * q, one / (b * b)}, q, n));
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_BW_SUM", "Berkovich-Warnaar sum, not an n-th order Askey-Wilson value", {"q", "a", "b"}, B1);
        r.n_min = 1;
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            const G a2 = a * a, Q = q * q;
            return phi({pow(q, -n), pow(q, 1 - n), a2, a2 / (b * b)}, {pow(q, 2 - 2 * n), a2 / b, q * a2 / b}, Q, Q,
                       n / 2);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"];
            return (P({-a, a / b}, q, n) + P({a, -a / b}, q, n)) / P({G(-1), a * a / b}, q, n);
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_BW_TRANSFORM", "Berkovich-Warnaar transformation to a base q^2 series",
                     {"q", "a", "b", "c"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"], &c = A["c"];
            return phi({pow(q, -n), b, c, -c}, {-pow(q, 1 - n) * b / a, a, c * c}, q, q, n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &a = A["a"], &b = A["b"], &c = A["c"];
            const G a2 = a * a, c2 = c * c, Q = q * q;
            G pre = P(a2 / b, q, n) * P(c2, Q, n) / P({-a / b, a, c2}, q, n);
            return pre * eval_phi_terminating(phi({pow(q, -n), pow(q, 1 - n), a2 / (b * b), a2 / c2},
                                                  {pow(q, 2 - 2 * n) / c2, a2 / b, q * a2 / b}, Q, Q, n / 2));
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_NEW_N2", "quadratic summation, first of an equivalent pair", {"q", "sa", "sc"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            return phi({pow(q, -n), pow(q, n) * sa * sa, sc, -sc}, {q * sc * sc, sa, -sa}, q, q, n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            const G a = sa * sa, c = sc * sc, q2 = q * q;
            const long k = ceil_half(n);
            return pow(c, k) * P({q, a / c}, q2, k) / P({a, q * c}, q2, k);
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_NEW_N1", "quadratic summation, second of an equivalent pair", {"q", "sa", "sc"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            return phi({pow(q, -n), pow(q, n) * sa * sa, q * sc, -q * sc}, {q * sc * sc, q * sa, -q * sa}, q, q, n);
        };
        r.rhs = [one](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            const G a = sa * sa, c = sc * sc, q2 = q * q;
            const long k = ceil_half(n);
            return pow(-q, n) * pow(c, k) * (one - a) / (one - pow(q, 2 * n) * a) * P({q, a / c}, q2, k) /
                   P({a, q * c}, q2, k);
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_NEW_N5", "esoteric balanced quadratic summation", {"q", "sa", "sc"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            return phi({pow(q, -n), pow(q, n + 1) * sa * sa, sc, -sc}, {q * q * sc * sc, sa, -sa}, q, q, n);
        };
        r.rhs = [one](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            const G a = sa * sa, c = sc * sc, q2 = q * q, qn1 = pow(q, n + 1);
            const long k = ceil_half(n), h = floor_half(n);
            G br = odd(n) ? one + q : (q * c - pow(q, n) * a) * (one - qn1) + (one - qn1 * a) * (one - qn1 * c);
            return pow(c, k) / (one - q2 * c) * P({q, a / c}, q2, k) / (P(a, q2, (n + 2) / 2) * P(q2 * q * c, q2, h)) *
                   br;
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_NEW_N3", "terminating 2-balanced 4phi3 summation, lower pair +-sqrt(qa)",
                     {"q", "s", "sc"}, B2);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &s = A["s"], &sc = A["sc"];
            return phi({pow(q, -n), pow(q, n) * s * s / q, sc, -sc}, {s, -s, q * sc * sc}, q, q, n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &s = A["s"], &sc = A["sc"];
            const G a = s * s / q, c = sc * sc, q2 = q * q;
            const long k = ceil_half(n), h = floor_half(n);
            return pow(c, k) * P(q, q2, k) * P(q * a / c, q2, h) / (P(q * a, q2, h) * P(q * c, q2, k));
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_NEW_N4", "terminating 2-balanced 4phi3 summation, lower pair +-q sqrt(a)",
                     {"q", "sa", "sc"}, B2);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            return phi({pow(q, -n), pow(q, n) * sa * sa, sc, -sc}, {q * sa, -q * sa, sc * sc}, q, q, n);
        };
        r.rhs = [one](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            const G a = sa * sa, c = sc * sc, q2 = q * q;
            const long k = ceil_half(n), h = floor_half(n);
            return pow(pow(q, n) * a, n) * pow(pow(q, -2 * n) * c / (a * a), h) * (one - a) /
                   (one - a * pow(q, 2 * n)) * P(q, q2, k) * P(q2 * a / c, q2, h) / (P(a, q2, k) * P(q * c, q2, h));
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_NEW_N8", "esoteric 2-balanced 4phi3 summation", {"q", "sa", "sc"}, B2);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            return phi({pow(q, -n), pow(q, n - 1) * sa * sa, q * sc, -q * sc}, {q * sa, -q * sa, q * sc * sc}, q, q,
                       n);
        };
        r.rhs = [one](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            const G a = sa * sa, c = sc * sc, q2 = q * q;
            const long k = ceil_half(n), h = floor_half(n);
            const G t = one + pow(q, 2 * n - 1) * a, u = pow(q, n - 2) * a * (one + q);
            G br = odd(n) ? c * t - u : t - u;
            return sgn(n) * pow(q, n) * pow(c, h) * (one - a) /
                   ((one - pow(q, 2 * n) * a) * (one - pow(q, 2 * n - 2) * a)) * P(q, q2, k) * P(a / c, q2, h) /
                   (P(a, q2, h) * P(q * c, q2, k)) * br;
        };
        r.constraints = [one](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"], &sc = A["sc"];
            const G a = sa * sa, c = sc * sc, q2 = q * q;
            if (P(a, q2, floor_half(n)).is_zero())
                fail(ErrorKind::ConstraintViolation, "(a;q^2)_floor(n/2) must be nonzero");
            if ((one - pow(q, 2 * n) * a).is_zero())
                fail(ErrorKind::ConstraintViolation, "1 - q^2n a must be nonzero");
            if ((one - pow(q, 2 * n - 2) * a).is_zero())
                fail(ErrorKind::ConstraintViolation, "1 - q^(2n-2) a must be nonzero");
            if (P(q * c, q2, ceil_half(n)).is_zero())
                fail(ErrorKind::ConstraintViolation, "(qc;q^2)_ceil(n/2) must be nonzero");
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_NEW_N7", "terminating 3-balanced 4phi3 summation", {"q", "sa", "sc"}, B3);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &q = A["q"], &sa = A["sa"];
            return n7_lhs(q, sa * sa, sa, A["sc"], n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            const G &sa = A["sa"], &sc = A["sc"];
            return n7_rhs(A["q"], sa * sa, sc * sc, n);
        };
        R.push_back(r);
    }
    {
        auto r = rec("T_NEW_N6", "3-balanced 4phi3 that completely factorizes (q = p^2)", {"p", "sc"}, B3);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            return n6_lhs(A["p"], A["sc"], n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            return n6_rhs(A["p"], A["sc"], n);
        };
        R.push_back(r);
    }
    {
        auto r = rec("X_SEARS", "Sears' balanced terminating 4phi3 transformation",
                     {"q", "a", "b", "c", "d", "e"}, B1);
        r.lhs = [](const ParamMap& m, long n) {
            Args A{m};
            return sears_lhs(A["q"], A["a"], A["b"], A["c"], A["d"], A["e"], n);
        };
        r.rhs = [](const ParamMap& m, long n) {
            Args A{m};
            return sears_rhs(A["q"], A["a"], A["b"], A["c"], A["d"], A["e"], n);
        };
        R.push_back(r);
    }
    return R;
}

const IdentityRecord* find_record(const std::string& id)
{
    for (const auto& r : identity_registry())
        if (r.id == id)
            return &r;
    return nullptr;
}

void check_domain(const IdentityRecord& r, const ParamMap& m, long n)
{
    for (const auto& name : r.params) {
        auto it = m.find(name);
        if (it == m.end())
            fail(ErrorKind::ConstraintViolation, "missing parameter '" + name + "'");
        if (it->second.is_zero())
            fail(ErrorKind::ConstraintViolation, "parameter '" + name + "' must be nonzero");
    }
    for (const auto& [name, value] : m)
        if (std::find(r.params.begin(), r.params.end(), name) == r.params.end())
            fail(ErrorKind::ConstraintViolation, "unknown parameter '" + name + "' for " + r.id);
    if (m.at(r.base_param).norm() >= 1)
        fail(ErrorKind::ConstraintViolation, "base '" + r.base_param + "' must satisfy 0 < |" + r.base_param + "| < 1");
    if (n < r.n_min)
        fail(ErrorKind::ConstraintViolation, "n >= " + std::to_string(r.n_min) + " required");
    if (r.constraints)
        r.constraints(m, n);
}

template <class F>
auto pole_guard(const char* side, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::PoleError)
            fail(ErrorKind::ConstraintViolation, std::string(side) + " has a pole: " + e.what());
        throw;
    }
}

ParamList param_list(const IdentityRecord& r, const ParamMap& m)
{
    ParamList out;
    for (const auto& name : r.params)
        out.emplace_back(name, to_string(m.at(name)));
    return out;
}

VerificationReport verify_exact_or_mixed(const IdentityRecord& r, const ParamMap& m, long n, const VerifyOptions& o);

VerificationReport verify_record(const IdentityRecord& r, const ParamMap& m, long n, const VerifyOptions& o)
{
    check_domain(r, m, n);
    VerificationReport rep;
    if (o.approx && !r.approx_only) {
        Complex lhs = pole_guard("LHS", [&] { return eval_phi(r.lhs(m, n), o.prec, o.eps * 1e-3).value; });
        const G rhs = pole_guard("RHS", [&] { return r.rhs(m, n); });
        rep = compare_approx(r.id, lhs, Complex(rhs, o.prec), o.eps);
        // The numeric sum of a vanishing branch is rounding noise, not 0.
        rep.degenerate = rhs.is_zero() && rep.pass;
    } else {
        rep = verify_exact_or_mixed(r, m, n, o);
    }
    rep.n = n;
    rep.params = param_list(r, m);
    rep.truncation_terms = std::to_string(n + 1);
    if (rep.degenerate)
        rep.note = r.parity_zero(n) ? "degenerate-by-parity" : "degenerate";
    return rep;
}

VerificationReport verify_exact_or_mixed(const IdentityRecord& r, const ParamMap& m, long n, const VerifyOptions& o)
{
    const G lhs = pole_guard("LHS", [&] { return eval_phi_terminating(r.lhs(m, n)); });
    VerificationReport rep;
    if (r.approx_only) {
        Complex rhs = pole_guard("RHS", [&] { return r.rhs_approx(m, n, o); });
        rep = compare_approx(r.id, Complex(lhs, o.prec), rhs, o.eps);
    } else {
        const G rhs = pole_guard("RHS", [&] { return r.rhs(m, n); });
        rep = compare_exact(r.id, lhs, rhs);
    }
    return rep;
}

} // namespace

const std::vector<IdentityRecord>& identity_registry()
{
    static const std::vector<IdentityRecord> registry = build_registry();
    return registry;
}

std::vector<std::string> identity_ids()
{
    std::vector<std::string> ids;
    for (const auto& r : identity_registry())
        ids.push_back(r.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

bool has_identity(const std::string& id) { return find_record(id) != nullptr; }

const IdentityRecord& lookup(const std::string& id)
{
    if (const IdentityRecord* r = find_record(id))
        return *r;
    fail(ErrorKind::UnknownIdentity, "no identity named '" + id + "'");
}

VerificationReport verify(const std::string& id, const ParamMap& params, long n, const VerifyOptions& opts)
{
    return verify_record(lookup(id), params, n, opts);
}

std::uint64_t seed_for(const std::string& id, std::uint64_t seed)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : id) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h ^ (seed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

IdentitySampler::IdentitySampler(const IdentityRecord& rec, std::uint64_t seed) : rec_(rec), rng_(seed) {}

long IdentitySampler::uniform(long lo, long hi)
{
    return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
}

Gauss IdentitySampler::rational(long max_num, long max_den)
{
    long num = uniform(1, max_num) * (uniform(0, 1) ? 1 : -1);
    return Gauss(num, uniform(1, max_den));
}

Gauss IdentitySampler::base_point()
{
    for (;;) {
        Gauss q(uniform(-8, 8), uniform(2, 9));
        if (uniform(0, 2) == 0)
            q += Gauss(uniform(-8, 8), uniform(2, 9)) * Gauss::i();
        if (!q.is_zero() && q.norm() < 1)
            return q;
    }
}

ParamMap IdentitySampler::draw()
{
    ParamMap m;
    for (const auto& name : rec_.params) {
        if (name == rec_.base_param) {
            m[name] = base_point();
            continue;
        }
        Gauss x = rational(7, 8);
        if (uniform(0, 2) == 0)
            x += rational(7, 8) * Gauss::i();
        m[name] = x;
    }
    return m;
}

std::vector<VerificationReport> sweep(const std::string& id, long trials, std::uint64_t seed, long n_lo, long n_hi,
                                      const VerifyOptions& opts)
{
    const IdentityRecord& r = lookup(id);
    if (trials < 1)
        fail(ErrorKind::DomainError, "trials must be >= 1");
    if (n_lo < 0 || n_hi < n_lo)
        fail(ErrorKind::DomainError, "invalid n range");
    const long lo = std::max(n_lo, r.n_min);
    IdentitySampler sampler(r, seed_for(id, seed));
    std::vector<VerificationReport> out;
    for (long t = 0; t < trials; ++t) {
        long rejected = 0;
        for (;;) {
            ParamMap m = sampler.draw();
            std::vector<VerificationReport> point;
            bool ok = true;
            for (long n = lo; n <= n_hi && ok; ++n) {
                try {
                    point.push_back(verify_record(r, m, n, opts));
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::ConstraintViolation)
                        throw;
                    ok = false;
                }
            }
            if (ok) {
                out.insert(out.end(), point.begin(), point.end());
                break;
            }
            if (++rejected >= 1000)
                fail(ErrorKind::SamplerExhausted, id + ": 1000 consecutive draws rejected");
        }
    }
    return out;
}

VerificationReport elementary_identity_check(ElementaryKind kind, const ParamMap& params, long k, long n)
{
    Args A{params};
    const G one(1);
    if (kind == ElementaryKind::ELID) {
        const G &q = A["q"], &a = A["a"];
        const G den = (one - pow(q, k - n - 1)) * (one - pow(q, n) * a);
        const G lhs = (one - pow(q, -n - 1)) * (one - pow(q, n + k) * a) / den;
        const G rhs = one - pow(q, -n - 1) * (one - pow(q, k)) * (one - pow(q, 2 * n + 1) * a) / den;
        auto r = compare_exact("ELID", lhs, rhs);
        r.n = n;
        r.params = {{"q", to_string(q)}, {"a", to_string(a)}, {"k", std::to_string(k)}};
        return r;
    }
    const G &c = A["c"], &q = A["q"];
    const G qk = pow(q, k);
    const G lhs = (one - c) / (one - qk * c);
    const G rhs = one - c * (one - qk) / (one - qk * c);
    auto r = compare_exact("ELID2", lhs, rhs);
    r.params = {{"c", to_string(c)}, {"q", to_string(q)}, {"k", std::to_string(k)}};
    return r;
}

VerificationReport gasper_rahman_bailey_equivalence(const Gauss& q, const Gauss& a, const Gauss& b, long n)
{
    const G Q = q * q;
    const G grw = eval_phi_terminating(grw_lhs(q, -pow(q, 1 - n) / b, a, n));
    const G b41 = eval_phi_terminating(bailey41_lhs(Q, a, b, n));
    auto series = compare_exact("T_GASPER_RAHMAN_WATSON~T_BAILEY41", grw, b41);
    auto closed = compare_exact("T_GASPER_RAHMAN_WATSON~T_BAILEY41", grw, bailey41_rhs(Q, a, b, n));
    auto r = combine("T_GASPER_RAHMAN_WATSON~T_BAILEY41", {series, closed});
    r.n = n;
    r.params = {{"q", to_string(q)}, {"a", to_string(a)}, {"b", to_string(b)}};
    r.degenerate = series.degenerate;
    return r;
}

VerificationReport sears_connection_check(const Gauss& q, const Gauss& sa, const Gauss& sc, long n)
{
    const ParamMap pt{{"q", q}, {"sa", sa}, {"sc", sc}};
    auto n2 = verify("T_NEW_N2", pt, n);
    auto n1 = verify("T_NEW_N1", pt, n);
    const G a = sa * sa, c = sc * sc;
    const ParamMap link{{"q", q}, {"a", pow(q, n) * a}, {"b", sc}, {"c", -sc}, {"d", q * c}, {"e", sa}};
    auto sears = verify("X_SEARS", link, n);
    // The transformed side must be the second summation's series.
    const G transformed = eval_phi_terminating(lookup("T_NEW_N1").lhs(pt, n));
    const G sears_series = eval_phi_terminating(
        phi({pow(q, -n), pow(q, n) * a, q * sc, -q * sc}, {q * c, q * sa, -q * sa}, q, q, n));
    auto same = compare_exact("X_SEARS", transformed, sears_series);
    auto r = combine("T_NEW_N2~T_NEW_N1", {n2, n1, sears, same});
    r.n = n;
    r.params = n2.params;
    return r;
}

VerificationReport n6_n7_specialization(const Gauss& p, const Gauss& sc, long n)
{
    const G q = p * p, I = G::i();
    const G a = -pow(q, 1 - 2 * n), sa = I * pow(p, 1 - 2 * n);
    auto lhs = compare_exact("T_NEW_N6~T_NEW_N7", eval_phi_terminating(n6_lhs(p, sc, n)),
                             eval_phi_terminating(n7_lhs(q, a, sa, sc, n)));
    auto rhs = compare_exact("T_NEW_N6~T_NEW_N7", n6_rhs(p, sc, n), n7_rhs(q, a, sc * sc, n));
    auto r = combine("T_NEW_N6~T_NEW_N7", {lhs, rhs});
    r.n = n;
    r.params = {{"p", to_string(p)}, {"sc", to_string(sc)}};
    return r;
}

VerificationReport andrews_whipple_rhs_agreement(const Gauss& q, const Gauss& a, const Gauss& b, long n,
                                                 const VerifyOptions& opts)
{
    Complex e = awe_rhs(q, a, b, n, opts);
    G c = awc_rhs(q, a, b, n);
    auto r = compare_approx("T_ANDREWS_WHIPPLE_E~T_ANDREWS_WHIPPLE_C", e, Complex(c, opts.prec), opts.eps);
    r.n = n;
    r.params = {{"q", to_string(q)}, {"a", to_string(a)}, {"b", to_string(b)}};
    return r;
}

} // namespace qseries
