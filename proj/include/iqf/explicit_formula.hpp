// The global explicit formula: sum of local generator terms over all places
// against the sum over Dedekind zeta zeros minus the pole terms.
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "iqf/localterms.hpp"
#include "iqf/quadfield.hpp"
#include "iqf/testfn.hpp"
#include "iqf/zeros.hpp"

namespace iqf {

struct VerificationReport {
    FieldSpec field;
    std::string test_function;
    double lhs_total = 0.0;
    std::vector<std::pair<PlaceInfo, double>> lhs_breakdown;
    double rhs_zero_sum = 0.0;   // sum over zeros only
    double mellin_at_0 = 0.0;    // M^0(f)
    double mellin_at_1 = 0.0;    // M^1(f)
    double truncation_height = 0.0;
    double tail_estimate = 0.0;
    double discrepancy = 0.0;    // lhs_total - (rhs_zero_sum - M^0 - M^1)
    double tolerance = 0.0;
    bool pass = false;
    // reproducibility stamps
    std::vector<std::pair<std::string, std::string>> zero_cache_checksums;
};

// LHS: sum over places of the closed-form W_v(f); split places count twice,
// the complex place always contributes. Requires class number one.
std::pair<double, std::vector<std::pair<PlaceInfo, double>>> lhs_sum(const FieldSpec& field,
                                                                     const TestFunction& f);

// RHS zero side: sum over ordinates <= T of both factors (zeta and L(chi_D))
// of 2 Re M^{1/2+i gamma}(f), with a computed tail bound for the part above T.
// Both lists must be certified to height >= T.
struct RhsSum {
    double zero_sum = 0.0;
    double tail_estimate = 0.0;
    double fold_residual = 0.0; // max |Im(M(rho) + M(conj rho))| seen
};
RhsSum rhs_sum(const FieldSpec& field, const TestFunction& f, double T, const ZeroList& zeta_zeros,
               const ZeroList& chi_zeros);

VerificationReport verify(const FieldSpec& field, const TestFunction& f, double T,
                          double tolerance, const ZeroList& zeta_zeros,
                          const ZeroList& chi_zeros);

// Deterministic JSON serialization (12 significant digits, fixed key order,
// no timestamps).
std::string report_to_json(const VerificationReport& report);

} // namespace iqf
