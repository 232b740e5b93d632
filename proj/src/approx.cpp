#include "qseries/approx.hpp"
#include "qseries/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace qseries {

namespace {

mpfr_prec_t checked(long prec)
{
    if (prec < min_precision)
        fail(ErrorKind::DomainError, "precision below 64 bits");
    return static_cast<mpfr_prec_t>(prec);
}

long lesser(const Real& a, const Real& b) { return std::min(a.prec(), b.prec()); }

} // namespace

Real::Real(long prec) { mpfr_init2(v_, checked(prec)); mpfr_set_zero(v_, 1); }

Real::Real(long value, long prec)
{
    mpfr_init2(v_, checked(prec));
    mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(double value, long prec)
{
    mpfr_init2(v_, checked(prec));
    mpfr_set_d(v_, value, MPFR_RNDN);
}

Real::Real(const mpq_class& value, long prec)
{
    mpfr_init2(v_, checked(prec));
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

void Real::clamp_prec(long p)
{
    if (p < prec())
        mpfr_prec_round(v_, static_cast<mpfr_prec_t>(p), MPFR_RNDN);
}

Real& Real::operator+=(const Real& o)
{
    clamp_prec(o.prec());
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o)
{
    clamp_prec(o.prec());
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o)
{
    clamp_prec(o.prec());
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& o)
{
    clamp_prec(o.prec());
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real operator+(const Real& a, const Real& b)
{
    Real r(lesser(a, b));
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b)
{
    Real r(lesser(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b)
{
    Real r(lesser(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b)
{
    Real r(lesser(a, b));
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real operator-(const Real& a)
{
    Real r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }

Real abs(const Real& x)
{
    Real r(x.prec());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x)
{
    Real r(x.prec());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& x)
{
    Real r(x.prec());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real exp(const Real& x)
{
    Real r(x.prec());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pi(long prec)
{
    Real r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

std::string to_string(const Real& x, int digits)
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, x.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Complex::Complex(const Real& r, const Real& i) : re(r), im(i)
{
    long p = std::min(r.prec(), i.prec());
    re.clamp_prec(p);
    im.clamp_prec(p);
}

Complex& Complex::operator+=(const Complex& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o)
{
    long p = std::min(prec(), o.prec());
    re.clamp_prec(p);
    im.clamp_prec(p);
    if (im.is_zero() && o.im.is_zero()) {
        mpfr_mul(re.get(), re.get(), o.re.get(), MPFR_RNDN);
        return *this;
    }
    Real t(p);
    mpfr_fmms(t.get(), re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
    mpfr_fmma(im.get(), re.get(), o.im.get(), im.get(), o.re.get(), MPFR_RNDN);
    mpfr_swap(re.get(), t.get());
    return *this;
}

Complex& Complex::operator/=(const Complex& o)
{
    if (o.is_zero())
        fail(ErrorKind::PoleError, "division by zero");
    long p = std::min(prec(), o.prec());
    re.clamp_prec(p);
    im.clamp_prec(p);
    if (o.im.is_zero()) {
        mpfr_div(re.get(), re.get(), o.re.get(), MPFR_RNDN);
        mpfr_div(im.get(), im.get(), o.re.get(), MPFR_RNDN);
        return *this;
    }
    Real den(p + 32), t(p);
    mpfr_fmma(den.get(), o.re.get(), o.re.get(), o.im.get(), o.im.get(), MPFR_RNDN);
    mpfr_fmma(t.get(), re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
    mpfr_fmms(im.get(), im.get(), o.re.get(), re.get(), o.im.get(), MPFR_RNDN);
    mpfr_div(re.get(), t.get(), den.get(), MPFR_RNDN);
    mpfr_div(im.get(), im.get(), den.get(), MPFR_RNDN);
    return *this;
}

Complex& Complex::operator*=(const Real& o)
{
    re *= o;
    im *= o;
    return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator*(Complex a, const Real& b) { return a *= b; }
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

Real abs(const Complex& z)
{
    Real r(z.prec());
    mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
    return r;
}

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Complex pow(const Complex& z, long k)
{
    if (k < 0)
        return Complex(1L, z.prec()) / pow(z, -k);
    Complex result(1L, z.prec()), base = z;
    while (k > 0) {
        if (k & 1)
            result *= base;
        k >>= 1;
        if (k)
            base *= base;
    }
    return result;
}

Complex expi(const Real& theta)
{
    Complex r(theta.prec());
    mpfr_sin_cos(r.im.get(), r.re.get(), theta.get(), MPFR_RNDN);
    return r;
}

std::string to_string(const Complex& z, int digits)
{
    std::string s = to_string(z.re, digits);
    if (z.im.is_zero())
        return s;
    std::string i = to_string(abs(z.im), digits);
    return s + (z.im.sign() < 0 ? "-" : "+") + i + "*i";
}

} // namespace qseries
