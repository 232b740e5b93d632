#ifndef QSERIES_EXACT_HPP
#define QSERIES_EXACT_HPP

#include <gmpxx.h>

#include <string>

namespace qseries {

// Gaussian rational re + im*i over arbitrary-size rationals.  This is the
// ExactScalar of the library; gmpxx keeps both parts canonical.
class Gauss {
public:
    mpq_class re;
    mpq_class im;

    Gauss() : re(0), im(0) {}
    Gauss(long v) : re(v), im(0) {}
    Gauss(const mpq_class& r) : re(r), im(0) {}
    Gauss(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}
    Gauss(long num, long den) : re(num, den), im(0) { re.canonicalize(); }

    static Gauss i() { return Gauss(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }

    // re^2 + im^2, exact
    mpq_class norm() const { return re * re + im * im; }
    Gauss conj() const { return Gauss(re, -im); }

    Gauss& operator+=(const Gauss& o);
    Gauss& operator-=(const Gauss& o);
    Gauss& operator*=(const Gauss& o);
    Gauss& operator/=(const Gauss& o);

    double abs_double() const;
};

Gauss operator+(Gauss a, const Gauss& b);
Gauss operator-(Gauss a, const Gauss& b);
Gauss operator*(Gauss a, const Gauss& b);
Gauss operator/(Gauss a, const Gauss& b);
Gauss operator-(const Gauss& a);

inline bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }

// Integer power; negative exponents divide (PoleError on 0^-k).
Gauss pow(const Gauss& x, long k);

// "p/q", "p/q*i", "p/q+r/s*i", "p/q-r/s*i", "i", "-i"; integers may omit "/q".
std::string to_string(const Gauss& x);
Gauss parse_gauss(const std::string& text);

} // namespace qseries

#endif
