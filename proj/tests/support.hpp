#ifndef QSERIES_TESTS_SUPPORT_HPP
#define QSERIES_TESTS_SUPPORT_HPP

#include "qseries/approx.hpp"
#include "qseries/exact.hpp"

#include <cstdint>
#include <random>

namespace testing_support {

using qseries::Gauss;

// Small deterministic generator of Gaussian rationals for property tests.
struct Draw {
    std::mt19937_64 rng;
    explicit Draw(std::uint64_t seed) : rng(seed) {}

    long uniform(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

    mpq_class rational(long max_num, long max_den)
    {
        mpq_class r(uniform(-max_num, max_num), uniform(1, max_den));
        r.canonicalize();
        return r;
    }

    Gauss nonzero(long max_num = 9, long max_den = 11)
    {
        for (;;) {
            Gauss g(rational(max_num, max_den), uniform(0, 2) == 0 ? rational(max_num, max_den) : mpq_class(0));
            if (!g.is_zero())
                return g;
        }
    }

    // nonzero with |x| < 1
    Gauss inside(long max_den = 9)
    {
        for (;;) {
            Gauss g = nonzero(max_den - 1, max_den);
            if (g.norm() < 1)
                return g;
        }
    }
};

inline double diff(const qseries::Complex& a, const qseries::Complex& b) { return abs(a - b).to_double(); }

} // namespace testing_support

#endif
