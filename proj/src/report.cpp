#include "qseries/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qseries {

double log_abs(const Real& x)
{
    if (x.is_zero())
        return -std::numeric_limits<double>::infinity();
    long e = 0;
    double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

double log_abs(const Complex& x) { return log_abs(abs(x)); }

namespace {

// |x| as double, saturating instead of overflowing
double magnitude(const Complex& x)
{
    double l = log_abs(x);
    if (l > 700)
        return std::numeric_limits<double>::max();
    return std::exp(l);
}

} // namespace

VerificationReport compare_exact(const std::string& id, const Gauss& lhs, const Gauss& rhs)
{
    VerificationReport r;
    r.identity_id = id;
    r.mode = "exact";
    r.lhs = to_string(lhs);
    r.rhs = to_string(rhs);
    r.pass = lhs == rhs;
    r.degenerate = lhs.is_zero() && rhs.is_zero();
    if (!r.pass) {
        Complex d(lhs - rhs, 128);
        r.abs_err = magnitude(d);
        double scale = std::max(lhs.abs_double(), rhs.abs_double());
        r.rel_err = scale > 0 ? r.abs_err / scale : r.abs_err;
    }
    return r;
}

VerificationReport compare_approx(const std::string& id, const Complex& lhs, const Complex& rhs, double eps)
{
    VerificationReport r;
    r.identity_id = id;
    r.mode = "approx";
    r.lhs = to_string(lhs);
    r.rhs = to_string(rhs);
    Complex d = lhs - rhs;
    double la = log_abs(d), ll = log_abs(lhs), lr = log_abs(rhs);
    r.abs_err = std::isinf(la) ? 0.0 : std::exp(std::min(la, 700.0));
    double lscale = std::max(ll, lr);
    r.rel_err = std::isinf(la) ? 0.0 : std::exp(std::min(la - lscale, 700.0));
    double allowed = std::log(eps) + std::max(0.0, lr);
    r.pass = std::isinf(la) || la <= allowed;
    r.degenerate = lhs.is_zero() && rhs.is_zero();
    return r;
}

VerificationReport combine(const std::string& id, const std::vector<VerificationReport>& parts)
{
    VerificationReport r;
    r.identity_id = id;
    r.pass = true;
    for (const auto& p : parts) {
        r.abs_err = std::max(r.abs_err, p.abs_err);
        r.rel_err = std::max(r.rel_err, p.rel_err);
        r.pass = r.pass && p.pass;
        if (r.mode.empty())
            r.mode = p.mode;
        else if (r.mode != p.mode)
            r.mode = "mixed";
    }
    if (!parts.empty()) {
        r.lhs = parts.front().lhs;
        r.rhs = parts.front().rhs;
        r.params = parts.front().params;
    }
    return r;
}

} // namespace qseries
