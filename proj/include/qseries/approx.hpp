#ifndef QSERIES_APPROX_HPP
#define QSERIES_APPROX_HPP

#include "qseries/exact.hpp"

#include <mpfr.h>

#include <string>

namespace qseries {

constexpr long min_precision = 64;
constexpr long default_precision = 256;

// Owning wrapper over mpfr_t.  Binary operations round to the smaller of the
// two operand precisions; compound assignment lowers the target precision when
// the right-hand side is coarser.
class Real {
public:
    explicit Real(long prec = default_precision);
    Real(long value, long prec);
    Real(double value, long prec);
    Real(const mpq_class& value, long prec);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    // Lower this value's precision to at most p (no-op when already coarser).
    void clamp_prec(long p);

private:
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);

bool operator<(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
inline bool operator>(const Real& a, const Real& b) { return b < a; }
inline bool operator>=(const Real& a, const Real& b) { return b <= a; }
bool operator<(const Real& a, double b);
bool operator>(const Real& a, double b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pi(long prec);
Real max(const Real& a, const Real& b);
std::string to_string(const Real& x, int digits = 40);

// Complex number over two Reals of equal precision: the ApproxScalar.
class Complex {
public:
    Real re;
    Real im;

    explicit Complex(long prec = default_precision) : re(prec), im(prec) {}
    Complex(long value, long prec) : re(value, prec), im(0L, prec) {}
    Complex(const Real& r, const Real& i);
    Complex(const Gauss& g, long prec) : re(g.re, prec), im(g.im, prec) {}

    long prec() const { return re.prec() < im.prec() ? re.prec() : im.prec(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator*(Complex a, const Real& b);
Complex operator-(const Complex& a);

Real abs(const Complex& z);
Complex conj(const Complex& z);
Complex pow(const Complex& z, long k);
// e^{i theta}
Complex expi(const Real& theta);
std::string to_string(const Complex& z, int digits = 40);

inline Complex to_approx(const Gauss& g, long prec) { return Complex(g, prec); }

} // namespace qseries

#endif
