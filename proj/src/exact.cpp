#include "qseries/exact.hpp"
#include "qseries/error.hpp"

#include <cctype>
#include <cmath>

namespace qseries {

Gauss& Gauss::operator+=(const Gauss& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

Gauss& Gauss::operator-=(const Gauss& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

Gauss& Gauss::operator*=(const Gauss& o)
{
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

Gauss& Gauss::operator/=(const Gauss& o)
{
    if (o.is_zero())
        fail(ErrorKind::PoleError, "division by exact zero");
    if (sgn(o.im) == 0) {
        re /= o.re;
        im /= o.re;
        return *this;
    }
    mpq_class n = o.norm();
    mpq_class r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = std::move(r);
    return *this;
}

Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
Gauss operator-(const Gauss& a) { return Gauss(-a.re, -a.im); }

double Gauss::abs_double() const
{
    return std::hypot(re.get_d(), im.get_d());
}

Gauss pow(const Gauss& x, long k)
{
    if (k < 0) {
        if (x.is_zero())
            fail(ErrorKind::PoleError, "negative power of exact zero");
        return Gauss(1) / pow(x, -k);
    }
    Gauss result(1), base = x;
    while (k > 0) {
        if (k & 1)
            result *= base;
        k >>= 1;
        if (k)
            base *= base;
    }
    return result;
}

std::string to_string(const Gauss& x)
{
    if (sgn(x.im) == 0)
        return x.re.get_str();
    std::string im;
    mpq_class mag = abs(x.im);
    im = (mag == 1) ? std::string("i") : mag.get_str() + "*i";
    if (sgn(x.re) == 0)
        return (sgn(x.im) < 0 ? "-" : "") + im;
    return x.re.get_str() + (sgn(x.im) < 0 ? "-" : "+") + im;
}

namespace {

// rational := digits [ "/" digits ]
bool read_rational(const std::string& s, std::size_t& pos, mpq_class& out)
{
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
    if (pos == start)
        return false;
    std::string num = s.substr(start, pos - start);
    std::string den = "1";
    if (pos < s.size() && s[pos] == '/') {
        std::size_t dstart = ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos == dstart)
            return false;
        den = s.substr(dstart, pos - dstart);
    }
    mpz_class d(den);
    if (d == 0)
        fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    out = mpq_class(mpz_class(num), d);
    out.canonicalize();
    return true;
}

// term := [sign] ( rational [ "*i" ] | "i" )
bool read_term(const std::string& s, std::size_t& pos, mpq_class& val, bool& imag)
{
    int sign = 1;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
    }
    imag = false;
    if (pos < s.size() && s[pos] == 'i') {
        ++pos;
        val = sign;
        imag = true;
        return true;
    }
    if (!read_rational(s, pos, val))
        return false;
    if (pos + 1 < s.size() && s[pos] == '*' && s[pos + 1] == 'i') {
        pos += 2;
        imag = true;
    }
    if (sign < 0)
        val = -val;
    return true;
}

} // namespace

Gauss parse_gauss(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        fail(ErrorKind::ParseError, "empty literal");

    Gauss out;
    bool have_re = false, have_im = false;
    std::size_t pos = 0;
    while (pos < s.size()) {
        mpq_class v;
        bool imag;
        if (!read_term(s, pos, v, imag))
            fail(ErrorKind::ParseError, "malformed literal '" + text + "'");
        if (imag) {
            if (have_im)
                fail(ErrorKind::ParseError, "two imaginary parts in '" + text + "'");
            out.im = v;
            have_im = true;
        } else {
            if (have_re || have_im)
                fail(ErrorKind::ParseError, "real part must come first in '" + text + "'");
            out.re = v;
            have_re = true;
        }
        if (pos < s.size() && s[pos] != '+' && s[pos] != '-')
            fail(ErrorKind::ParseError, "unexpected '" + std::string(1, s[pos]) + "' in '" + text + "'");
    }
    return out;
}

} // namespace qseries
