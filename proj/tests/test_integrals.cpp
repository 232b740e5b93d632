#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qseries/integrals.hpp"
#include "support.hpp"

using namespace qseries;
using testing_support::diff;

namespace {

Gauss R(long n, long d) { return Gauss(n, d); }

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::ParseError;
}

ParamMap sj_point(const Gauss& sigma)
{
    return {{"a", R(1, 3)}, {"b", R(1, 4)}, {"q", R(1, 2)}, {"z", R(1, 5)}, {"f", R(3, 2)}, {"sigma", sigma}};
}

} // namespace

TEST_CASE("theta")
{
    const long P = 256;
    const Complex q(R(1, 2), P);
    CHECK(abs(theta(Complex(R(1, 3), P), q, 1e-60)).to_double() > 0.01);
    // zero at every x = q^k, k an integer of either sign
    CHECK(abs(theta(Complex(R(1, 4), P), q, 1e-60)).to_double() < 1e-60);
    CHECK(abs(theta(Complex(R(1, 8), P), q, 1e-60)).to_double() < 1e-60);
    const Complex x(Gauss(R(2, 3).re, R(1, 5).re), P);
    CHECK(diff(theta(x, q, 1e-60), theta(q / x, q, 1e-60)) < 1e-55);
    // x = -1 against a 300-factor product at 512 bits
    Complex long_prod(1L, 512);
    const Complex q2(R(1, 2), 512), m1(-1L, 512);
    Complex qk(1L, 512);
    for (int k = 0; k < 300; ++k) {
        long_prod *= (Complex(1L, 512) - m1 * qk) * (Complex(1L, 512) - q2 / m1 * qk);
        qk *= q2;
    }
    CHECK(diff(theta(Complex(-1L, P), q, 1e-60), long_prod) < 1e-58 * abs(long_prod).to_double());
    CHECK(kind_of([&] { theta(Complex(256), q, 1e-30); }) == ErrorKind::ZeroArgument);
}

TEST_CASE("trapezoidal rule on trigonometric polynomials")
{
    QuadratureSpec s;
    s.eps = 1e-60;
    auto one = integrate_periodic([](const Complex& w) { return Complex(1L, w.prec()); }, s);
    CHECK(diff(one.value, Complex(pi(256) * Real(2L, 256), Real(0L, 256))) < 1e-70);
    for (long k : {1, 3, 7}) {
        auto r = integrate_periodic([k](const Complex& w) { return pow(w, k) + pow(w, -k); }, s);
        CHECK(abs(r.value).to_double() < 1e-70);
    }
    s.nodes = 12;
    CHECK(kind_of([&] { integrate_periodic([](const Complex& w) { return w; }, s); }) == ErrorKind::DomainError);
}

TEST_CASE("pole on the contour and non-convergence")
{
    QuadratureSpec s;
    s.max_doublings = 3;
    auto pole = [](const Complex& w) -> Complex {
        if (abs(w - Complex(-1L, w.prec())).to_double() < 1e-50)
            fail(ErrorKind::PoleError, "w = -1");
        return w;
    };
    CHECK(kind_of([&] { integrate_periodic(pole, s); }) == ErrorKind::PoleOnContour);
    // 1/(1 - 0.99 w) converges far too slowly for three doublings
    auto slow = [](const Complex& w) { return Complex(1L, w.prec()) / (Complex(1L, w.prec()) - Complex(R(99, 100), w.prec()) * w); };
    CHECK(kind_of([&] { integrate_periodic(slow, s); }) == ErrorKind::NoConvergence);
}

TEST_CASE("Srivastava-Jain integral at the fixed point")
{
    for (const Gauss& sigma : {R(1, 2), R(3, 5)}) {
        auto r = verify_integral_rep(IntegralID::IR_SRIV_JAIN, sj_point(sigma));
        CHECK(r.pass);
        CHECK(r.rel_err <= 1e-25);
        CHECK(r.quadrature_nodes >= 32);
    }
    auto a = integral_value(IntegralID::IR_SRIV_JAIN, sj_point(R(1, 2)));
    auto b = integral_value(IntegralID::IR_SRIV_JAIN, sj_point(R(3, 5)));
    CHECK(diff(a, b) <= 2e-25 * abs(a).to_double());
}

TEST_CASE("sigma on or outside the unit circle is rejected")
{
    for (const Gauss& sigma : {Gauss(1), R(6, 5), R(1, 5)}) {
        CAPTURE(to_string(sigma));
        CHECK(kind_of([&] { verify_integral_rep(IntegralID::IR_SRIV_JAIN, sj_point(sigma)); }) ==
              ErrorKind::HypothesisViolation);
    }
}

TEST_CASE("z = 0 gives 1")
{
    ParamMap m = sj_point(R(1, 2));
    m["z"] = Gauss(0);
    auto v = integral_value(IntegralID::IR_SRIV_JAIN, m);
    CHECK(diff(v, Complex(1L, 256)) < 1e-25);
    CHECK(verify_integral_rep(IntegralID::IR_SRIV_JAIN, m).pass);
}

TEST_CASE("first Nassrallah integral at a fixed point")
{
    ParamMap m{{"p", R(3, 4)}, {"a", R(1, 3)}, {"b", R(2, 5)}, {"z", R(1, 5)}, {"f", R(3, 2)}, {"sigma", R(2, 5)}};
    auto r = verify_integral_rep(IntegralID::IR_NASSRALLAH_1, m);
    CHECK(r.pass);
}

TEST_CASE("all five representations: series value, sigma and f independence")
{
    for (const auto& info : integral_registry()) {
        CAPTURE(info.name);
        for (const auto& m : integral_sample_points(info.id, 1, 4)) {
            auto r = verify_integral_rep(info.id, m);
            CAPTURE(r.note);
            CHECK(r.pass);
            Complex v = integral_value(info.id, m);
            Complex vs = integral_value(info.id, with_other_sigma(info.id, m));
            Complex vf = integral_value(info.id, with_other_f(m));
            const double scale = std::max(1.0, abs(v).to_double());
            CHECK(diff(v, vs) <= 2e-25 * scale);
            CHECK(diff(v, vf) <= 2e-25 * scale);
        }
    }
}
