#ifndef QSERIES_ASKEY_WILSON_HPP
#define QSERIES_ASKEY_WILSON_HPP

#include "qseries/series.hpp"

#include <initializer_list>
#include <map>
#include <optional>
#include <string>

namespace qseries {

// p_n(x; a,b,c,d | q) with x = (w + 1/w)/2 carried as w.
template <class S>
struct AWParams {
    S a, b, c, d;
    S q;
    S w;
    long n = 0;
};

enum class AWRep { R1, R2, R3, CONV };

const char* rep_name(AWRep rep);

namespace detail {

template <class S>
S aw_sum(const SeriesSpec<S>& spec, long n, AWRep rep)
{
    try {
        return sum_terms(spec, n);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::PoleError)
            fail(ErrorKind::PoleError, std::string(rep_name(rep)) + " 4phi3: " + e.what());
        throw;
    }
}

template <class S>
void require_nonzero_params(const AWParams<S>& p, AWRep rep)
{
    if (exact_zero(p.a) || exact_zero(p.b) || exact_zero(p.c) || exact_zero(p.d))
        fail(ErrorKind::DomainError, std::string(rep_name(rep)) + " needs nonzero a, b, c, d");
}

template <class S>
void require_no_pole(const S& x, const S& q, long n, const char* what)
{
    S xq = x;
    const S one = one_like(x);
    for (long k = 0; k < n; ++k) {
        if (exact_zero(one - xq))
            fail(ErrorKind::PoleError, std::string("denominator (") + what + ";q)_n vanishes at factor " +
                                           std::to_string(k));
        xq *= q;
    }
}

} // namespace detail

template <class S>
S eval_aw(const AWParams<S>& p, AWRep rep)
{
    if (p.n < 0)
        fail(ErrorKind::DomainError, "negative degree");
    if (exact_zero(p.w))
        fail(ErrorKind::DomainError, "w must be nonzero");
    const long n = p.n;
    const S& q = p.q;
    const S one = one_like(q);
    if (n == 0)
        return one;
    const S qmn = pow(q, -n);

    switch (rep) {
    case AWRep::R1: {
        detail::require_nonzero_params(p, rep);
        const S ab = p.a * p.b, ac = p.a * p.c, ad = p.a * p.d;
        SeriesSpec<S> s{{qmn, pow(q, n - 1) * ab * p.c * p.d, p.a * p.w, p.a / p.w}, {ab, ac, ad}, q, q, n};
        return pow(p.a, -n) * qpoch(std::vector<S>{ab, ac, ad}, q, n) * detail::aw_sum(s, n, rep);
    }
    case AWRep::R2: {
        detail::require_nonzero_params(p, rep);
        const S s4 = p.a * p.b * p.c * p.d;
        const S q1n = pow(q, 1 - n);
        SeriesSpec<S> s{{qmn, q1n / (p.a * p.b), q1n / (p.a * p.c), q1n / (p.a * p.d)},
                        {pow(q, 2 - 2 * n) / s4, q1n * p.w / p.a, q1n / (p.a * p.w)},
                        q, q, n};
        // (s/q;q)_2n / (s/q;q)_n = (s q^(n-1); q)_n
        S pre = pow(q, -(n * (n - 1) / 2)) * pow(-p.a, -n) * qpoch(s4 * pow(q, n - 1), q, n) *
                qpoch(std::vector<S>{p.a * p.w, p.a / p.w}, q, n);
        return pre * detail::aw_sum(s, n, rep);
    }
    case AWRep::R3: {
        detail::require_nonzero_params(p, rep);
        const S ab = p.a * p.b;
        const S q1n = pow(q, 1 - n);
        SeriesSpec<S> s{{qmn, p.a * p.w, p.b * p.w, q1n / (p.c * p.d)},
                        {ab, q1n * p.w / p.c, q1n * p.w / p.d},
                        q, q, n};
        return pow(p.w, n) * qpoch(std::vector<S>{ab, p.c / p.w, p.d / p.w}, q, n) * detail::aw_sum(s, n, rep);
    }
    case AWRep::CONV: {
        const S ab = p.a * p.b, cd = p.c * p.d;
        detail::require_no_pole(ab, q, n, "ab");
        detail::require_no_pole(cd, q, n, "cd");
        // alpha_j = (aw,bw;q)_j/(q,ab;q)_j,  beta_j = (c/w,d/w;q)_j/(q,cd;q)_j
        std::vector<S> alpha{one}, beta{one};
        S qj = one;
        const S aw = p.a * p.w, bw = p.b * p.w, cw = p.c / p.w, dw = p.d / p.w;
        for (long j = 0; j < n; ++j) {
            alpha.push_back(alpha.back() * (one - aw * qj) * (one - bw * qj) / ((one - q * qj) * (one - ab * qj)));
            beta.push_back(beta.back() * (one - cw * qj) * (one - dw * qj) / ((one - q * qj) * (one - cd * qj)));
            qj *= q;
        }
        const S w2 = p.w * p.w;
        S wp = pow(p.w, n); // w^(n-2j)
        S total = zero_like(one);
        for (long j = 0; j <= n; ++j) {
            total += alpha[j] * beta[n - j] * wp;
            wp /= w2;
        }
        return qpoch(std::vector<S>{q, ab, cd}, q, n) * total;
    }
    }
    return one;
}

// Continuous q-Hermite degeneration: CONV at a = b = c = d = 0.
Gauss aw_hermite_degenerate(const Gauss& w, const Gauss& q, long n);

// p_0, p_1, ... of one parameter set from the three-term recurrence in n,
// run on the normalized 4phi3 values r_n = a^n p_n / (ab,ac,ad;q)_n:
//   -(1 - aw)(1 - a/w) r_n = A_n r_(n+1) - (A_n + C_n) r_n + C_n r_(n-1).
// In floating point R1 loses about n^2 log2(1/|q|) / 2 bits to
// cancellation; the recurrence does not, so deep sums over n use this.
// The coefficient A_n - (1 - aw)(1 - a/w) is O(a) and is assembled from
// pieces proportional to a, so tiny a (the shifted q^k a of the triple sum)
// keeps full relative precision.  p.n is ignored.
template <class S>
class AWSequence {
public:
    explicit AWSequence(const AWParams<S>& p) : one_(one_like(p.q)), q_(p.q)
    {
        detail::require_nonzero_params(p, AWRep::R1);
        ab_ = p.a * p.b;
        ac_ = p.a * p.c;
        ad_ = p.a * p.d;
        bc_ = p.b * p.c;
        bd_ = p.b * p.d;
        cd_ = p.c * p.d;
        a2_ = p.a * p.a;
        inv_a_ = one_ / p.a;
        ax_ = p.a * (p.w + one_ / p.w - p.a); // 1 - (1 - aw)(1 - a/w)
        qn_ = one_;
        qm_ = one_ / p.q;
        s_prev_ = ab_ * cd_ / (p.q * p.q); // abcd q^(2n-2) at n = 0
        r_.push_back(one_);
        scale_.push_back(one_);
    }

    S operator()(long n)
    {
        while (static_cast<long>(r_.size()) <= n)
            extend();
        return scale_[n] * r_[n];
    }

private:
    S one_, q_;
    S ab_, ac_, ad_, bc_, bd_, cd_, a2_, inv_a_, ax_;
    S qn_, qm_;            // q^n and q^(n-1) for n = size-1
    S s_prev_;             // abcd q^(2n-2)
    std::vector<S> r_;     // normalized values
    std::vector<S> scale_; // a^-n (ab,ac,ad;q)_n

    void extend()
    {
        const long n = static_cast<long>(r_.size()) - 1;
        const S s1 = s_prev_ * q_; // abcd q^(2n-1)
        const S s2 = s1 * q_;      // abcd q^(2n)
        const S sq = s1 / qn_;     // abcd q^(n-1)
        // prod(1 - x_i) - 1 folded as m -> m - x (1 + m)
        auto less_one = [&](std::initializer_list<S> xs) {
            S m = zero_like(one_);
            for (const S& x : xs)
                m -= x * (one_ + m);
            return m;
        };
        const S abq = ab_ * qn_, acq = ac_ * qn_, adq = ad_ * qn_;
        const S mD = less_one({s1, s2});
        const S An_den = one_ + mD;
        if (exact_zero(An_den))
            fail(ErrorKind::PoleError, "recurrence coefficient A_" + std::to_string(n) + " has a zero denominator");
        const S f = (one_ - abq) * (one_ - acq) * (one_ - adq);
        const S mN = less_one({abq, acq, adq, sq});
        const S An = (one_ + mN) / An_den;
        if (exact_zero(An))
            fail(ErrorKind::PoleError, "recurrence coefficient A_" + std::to_string(n) + " vanishes");
        // A_n - (1 - aw)(1 - a/w) = (mN - mD)/D + ax
        S next = ((mN - mD) / An_den + ax_) * r_[n];
        if (n > 0) {
            const S Cn_den = (one_ - s_prev_) * (one_ - s1);
            if (exact_zero(Cn_den))
                fail(ErrorKind::PoleError, "recurrence coefficient C_" + std::to_string(n) + " has a zero denominator");
            const S Cn = a2_ * (one_ - qn_) * (one_ - bc_ * qm_) * (one_ - bd_ * qm_) * (one_ - cd_ * qm_) / Cn_den;
            next += Cn * (r_[n] - r_[n - 1]);
        }
        r_.push_back(next / An);
        scale_.push_back(scale_[n] * f * inv_a_);
        qm_ = qn_;
        qn_ *= q_;
        s_prev_ = s2;
    }
};

enum class SpecialValueID { AW32, BAILEY0, ANDREWS_WHIPPLE0, NEWQUAD, ESOTERIC };

const char* special_value_name(SpecialValueID id);

struct SpecialValue {
    Gauss lhs;
    Gauss rhs;
    // NEWQUAD only: the parity-split display, which must equal rhs.
    std::optional<Gauss> rhs_alt;
};

// AW32 takes {a,b,c,d,q}; the quadratic values take {a,b,q}.  lhs is eval_aw
// at the prescribed parameters and w (w = d, or w = i for x = 0).
SpecialValue eval_special_value(SpecialValueID id, const std::map<std::string, Gauss>& params, long n,
                                AWRep rep = AWRep::R1);

VerificationReport verify_special_value(SpecialValueID id, const std::map<std::string, Gauss>& params, long n,
                                        AWRep rep = AWRep::R1);

// Fits the degree-n interpolant through n+1 values of p_n at distinct
// x = (w+1/w)/2, then checks one further point and a nonzero leading
// coefficient.  Exact.
VerificationReport aw_polynomiality_check(const AWParams<Gauss>& base, const std::vector<Gauss>& ws, AWRep rep);

} // namespace qseries

#endif
