#ifndef QSERIES_SCALAR_HPP
#define QSERIES_SCALAR_HPP

#include "qseries/approx.hpp"
#include "qseries/exact.hpp"

#include <type_traits>
#include <variant>

namespace qseries {

// Generic code is written against these overloads so a single template
// serves both the exact and the approximate mode.

inline Gauss one_like(const Gauss&) { return Gauss(1); }
inline Complex one_like(const Complex& x) { return Complex(1L, x.prec()); }
inline Gauss zero_like(const Gauss&) { return Gauss(0); }
inline Complex zero_like(const Complex& x) { return Complex(x.prec()); }

inline Gauss lift(const Gauss& g, const Gauss&) { return g; }
inline Complex lift(const Gauss& g, const Complex& like) { return Complex(g, like.prec()); }

inline bool exact_zero(const Gauss& x) { return x.is_zero(); }
inline bool exact_zero(const Complex& x) { return x.is_zero(); }

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Gauss>;

// A scalar whose mode is only known at run time (CLI, mixed-mode checks).
using AnyScalar = std::variant<Gauss, Complex>;

} // namespace qseries

#endif
