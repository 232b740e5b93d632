#ifndef QSERIES_REPORT_HPP
#define QSERIES_REPORT_HPP

#include "qseries/approx.hpp"
#include "qseries/exact.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qseries {

using ParamList = std::vector<std::pair<std::string, std::string>>;

struct VerificationReport {
    std::string identity_id;
    std::optional<long> n;
    ParamList params;
    std::string mode; // "exact" or "approx"
    std::string lhs;
    std::string rhs;
    double abs_err = 0;
    double rel_err = 0;
    bool pass = false;
    bool degenerate = false;
    std::string truncation_terms;
    long quadrature_nodes = 0;
    std::string note;
};

// pass iff lhs == rhs; both zero sets the degenerate flag.
VerificationReport compare_exact(const std::string& id, const Gauss& lhs, const Gauss& rhs);

// pass iff |lhs - rhs| <= eps * max(1, |rhs|).  rel_err is |lhs-rhs| / max(|lhs|,|rhs|).
VerificationReport compare_approx(const std::string& id, const Complex& lhs, const Complex& rhs, double eps);

// Folds a list of reports into one: worst errors, pass iff all pass.
VerificationReport combine(const std::string& id, const std::vector<VerificationReport>& parts);

// log|x| as a double, robust against under/overflow of the double range.
double log_abs(const Complex& x);
double log_abs(const Real& x);

} // namespace qseries

#endif
