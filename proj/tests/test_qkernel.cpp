#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qseries/qkernel.hpp"
#include "support.hpp"

#include <algorithm>

using namespace qseries;
using testing_support::Draw;

TEST_CASE("finite q-Pochhammer values")
{
    CHECK(qpoch(Gauss(7, 3), Gauss(1, 2), 0) == Gauss(1));
    CHECK(qpoch(Gauss(0), Gauss(1, 2), 5) == Gauss(1));
    // (1 - 1/2)(1 - 1/6)
    CHECK(qpoch(Gauss(1, 2), Gauss(1, 3), 2) == Gauss(5, 12));
    CHECK(qpoch(std::vector<Gauss>{Gauss(1, 2), Gauss(1, 3)}, Gauss(1, 2), 1) == Gauss(1, 3));
    CHECK(qpoch(std::vector<Gauss>{Gauss(4, 5)}, Gauss(1, 2), 0) == Gauss(1));
    CHECK_THROWS_AS(qpoch(Gauss(1, 2), Gauss(1, 3), -1), Error);
}

TEST_CASE("square-argument identity (a^2;q^2)_n = (a,-a;q)_n")
{
    Draw d(11);
    for (int trial = 0; trial < 40; ++trial) {
        Gauss a = d.nonzero(), q = d.inside();
        long n = d.uniform(0, 9);
        CHECK(qpoch(pm(a), q, n) == qpoch(a * a, q * q, n));
    }
}

TEST_CASE("index splitting")
{
    Draw d(12);
    for (int trial = 0; trial < 40; ++trial) {
        Gauss a = d.nonzero(), q = d.inside();
        long m = d.uniform(0, 6), n = d.uniform(0, 6);
        CHECK(qpoch(a, q, m + n) == qpoch(a, q, m) * qpoch(a * pow(q, m), q, n));
    }
}

TEST_CASE("exact products do not depend on evaluation order")
{
    Draw d(13);
    for (int trial = 0; trial < 20; ++trial) {
        Gauss q = d.inside();
        std::vector<Gauss> as;
        for (int i = 0; i < 6; ++i)
            as.push_back(d.nonzero());
        Gauss forward = qpoch(as, q, 4);
        std::vector<Gauss> shuffled = as;
        std::shuffle(shuffled.begin(), shuffled.end(), d.rng);
        Gauss tree = (qpoch(shuffled[0], q, 4) * qpoch(shuffled[1], q, 4)) *
                     ((qpoch(shuffled[2], q, 4) * qpoch(shuffled[3], q, 4)) *
                      (qpoch(shuffled[4], q, 4) * qpoch(shuffled[5], q, 4)));
        CHECK(forward == tree);
    }
}

TEST_CASE("mixed modes are rejected at run time")
{
    AnyScalar a = Gauss(1, 2);
    AnyScalar q = Complex(Gauss(1, 3), 128);
    CHECK_THROWS_WITH_AS(qpoch(a, q, 3), doctest::Contains("ModeMismatch"), Error);
    AnyScalar qe = Gauss(1, 3);
    CHECK(std::get<Gauss>(qpoch(a, qe, 2)) == Gauss(5, 12));
}

TEST_CASE("infinite product: trivial and long-product oracle")
{
    auto r0 = qpoch_inf(Complex(0L, 256), Complex(Gauss(1, 2), 256), 1e-30);
    CHECK(r0.value.re.to_double() == 1.0);
    CHECK(r0.cert.tail_bound == 0.0);

    // prod_{k>=1}(1 - 2^-k) from 200 explicit factors at 512 bits
    Complex half(Gauss(1, 2), 512), oracle(1L, 512), pk = half;
    for (int k = 1; k <= 200; ++k) {
        oracle *= Complex(1L, 512) - pk;
        pk *= half;
    }
    auto r = qpoch_inf(Complex(Gauss(1, 2), 256), Complex(Gauss(1, 2), 256), 1e-30);
    CHECK(testing_support::diff(r.value, oracle) < 1e-30);
    CHECK(r.cert.tail_bound <= 1e-30);
}

TEST_CASE("infinite product: precision doubling")
{
    auto lo = qpoch_inf(Complex(Gauss(1, 2), 256), Complex(Gauss(1, 2), 256), 1e-40);
    auto hi = qpoch_inf(Complex(Gauss(1, 2), 512), Complex(Gauss(1, 2), 512), 1e-40);
    CHECK(testing_support::diff(lo.value, hi.value) < 1e-40);
    CHECK(lo.value.prec() == 256);
}

TEST_CASE("infinite product: split at N agrees within 2 eps")
{
    Draw d(14);
    const double eps = 1e-35;
    for (int trial = 0; trial < 10; ++trial) {
        Gauss a = d.nonzero(), q = d.inside();
        long N = d.uniform(0, 50);
        auto whole = qpoch_inf(a, q, eps, 256);
        if (whole.zero_factor >= 0)
            continue;
        auto tail = qpoch_inf(a * pow(q, N), q, eps, 256);
        Complex split = Complex(qpoch(a, q, N), 256) * tail.value;
        double scale = std::max(1.0, abs(whole.value).to_double());
        CHECK(testing_support::diff(whole.value, split) <= 2 * eps * scale);
    }
}

TEST_CASE("infinite product: exact zero factor and domain")
{
    // a = q^-3 vanishes at k = 3
    auto z = qpoch_inf(Gauss(8), Gauss(1, 2), 1e-30, 256);
    CHECK(z.zero_factor == 3);
    CHECK(z.value.is_zero());
    CHECK_THROWS_WITH_AS(qpoch_inf(Complex(Gauss(1, 2), 128), Complex(Gauss(3, 2), 128), 1e-20),
                         doctest::Contains("DomainError"), Error);
}

TEST_CASE("approximate arithmetic keeps the smaller precision")
{
    Complex a(Gauss(1, 3), 512), b(Gauss(1, 7), 128);
    CHECK((a * b).prec() == 128);
    CHECK((a + b).prec() == 128);
    a *= b;
    CHECK(a.prec() == 128);
    CHECK_THROWS_AS(Real(1L, 32), Error);
}

TEST_CASE("Gaussian rational literals round-trip")
{
    Draw d(15);
    for (int trial = 0; trial < 10000; ++trial) {
        Gauss x(d.rational(1000000, 1000000), d.uniform(0, 1) ? d.rational(1000000, 1000000) : mpq_class(0));
        CHECK(parse_gauss(to_string(x)) == x);
    }
    CHECK(parse_gauss("1/2+1/3*i") == Gauss(mpq_class(1, 2), mpq_class(1, 3)));
    CHECK(parse_gauss("-i") == Gauss(mpq_class(0), mpq_class(-1)));
    CHECK(parse_gauss("-3/4") == Gauss(-3, 4));
    CHECK(parse_gauss("2/3*i") == Gauss(mpq_class(0), mpq_class(2, 3)));
    CHECK_THROWS_AS(parse_gauss("1/0"), Error);
    CHECK_THROWS_AS(parse_gauss("abc"), Error);
    CHECK_THROWS_AS(parse_gauss("1/2*i+1"), Error);
}
