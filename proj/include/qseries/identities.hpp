#ifndef QSERIES_IDENTITIES_HPP
#define QSERIES_IDENTITIES_HPP

#include "qseries/series.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace qseries {

using ParamMap = std::map<std::string, Gauss>;

struct VerifyOptions {
    long prec = default_precision;
    double eps = 1e-40;
    // Sum the left side numerically at prec bits and compare within eps,
    // even for records that have an exact closed form.
    bool approx = false;
};

// A terminating summation or transformation.  Square roots never appear in
// the parameters: records draw s_a, s_c, s = sqrt(qa), or p = sqrt(q)
// directly and square them inside the builders.
struct IdentityRecord {
    std::string id;
    std::string anchor;
    std::vector<std::string> params;
    std::string base_param; // drawn inside the unit disc
    BalanceClass balance;
    bool approx_only = false;
    long n_min = 0;
    std::function<SeriesSpec<Gauss>(const ParamMap&, long)> lhs;
    std::function<Gauss(const ParamMap&, long)> rhs;
    std::function<Complex(const ParamMap&, long, const VerifyOptions&)> rhs_approx;
    // True when the closed form is the identically vanishing branch at n.
    std::function<bool(long)> parity_zero;
    // Extra domain predicate; throws ConstraintViolation naming the factor.
    std::function<void(const ParamMap&, long)> constraints;
};

const std::vector<IdentityRecord>& identity_registry();

// Sorted, stable.
std::vector<std::string> identity_ids();

bool has_identity(const std::string& id);

const IdentityRecord& lookup(const std::string& id);

VerificationReport verify(const std::string& id, const ParamMap& params, long n, const VerifyOptions& opts = {});

// Draws trials points with a generator seeded from (seed, id); a point is
// kept only when every n in [n_lo, n_hi] is free of poles.  Reports are
// ordered by point, then n.
std::vector<VerificationReport> sweep(const std::string& id, long trials, std::uint64_t seed, long n_lo, long n_hi,
                                      const VerifyOptions& opts = {});

// Raw draws from a record's sampling box; sweep does the pole filtering.
// The generator is std::mt19937_64 and the draws avoid distribution
// classes, so a seed gives the same points on every platform.
class IdentitySampler {
public:
    IdentitySampler(const IdentityRecord& rec, std::uint64_t seed);
    ParamMap draw();

private:
    const IdentityRecord& rec_;
    std::mt19937_64 rng_;
    long uniform(long lo, long hi);
    Gauss rational(long max_num, long max_den);
    Gauss base_point();
};

std::uint64_t seed_for(const std::string& id, std::uint64_t seed);

enum class ElementaryKind { ELID, ELID2 };

// ELID uses q, a and the integers n, k; ELID2 uses c, q and k.
VerificationReport elementary_identity_check(ElementaryKind kind, const ParamMap& params, long k, long n = 0);

// The Gasper-Rahman-Watson left side at (b, c) -> (-q^(1-n)/b, a) is the
// Bailey 1941 series in base q^2; both series and the Bailey closed form
// must coincide exactly.
VerificationReport gasper_rahman_bailey_equivalence(const Gauss& q, const Gauss& a, const Gauss& b, long n);

// Both quadratic summations of the first pair hold, and Sears'
// transformation holds at the substitution that carries one into the other.
VerificationReport sears_connection_check(const Gauss& q, const Gauss& sa, const Gauss& sc, long n);

// The 3-balanced summation at a = -q^(1-2n) reproduces the factorized
// corollary (q = p^2), on both sides.
VerificationReport n6_n7_specialization(const Gauss& p, const Gauss& sc, long n);

// The expanded (infinite product) and compact Andrews-Whipple right sides
// agree at (c, e) = (a, b).
VerificationReport andrews_whipple_rhs_agreement(const Gauss& q, const Gauss& a, const Gauss& b, long n,
                                                 const VerifyOptions& opts = {});

} // namespace qseries

#endif
