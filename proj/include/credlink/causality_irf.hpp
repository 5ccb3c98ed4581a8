#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credlink/var_engine.hpp"

namespace credlink {

// Block-exclusion Granger test: do the p lags of `cause` improve the
// `effect` equation beyond the restricted model?
struct GrangerResult {
    std::string cause;
    std::string effect;
    double f_statistic = 0.0;
    double p_value = 1.0;
    bool reject_at_5pct = false;
    int dof_num = 0;  // p
    int dof_den = 0;  // T_eff - m
};

GrangerResult granger_test(const AlignedPanel& panel, const VarSpec& spec,
                           const std::string& cause, const std::string& effect);

// Every ordered variable pair for each entity, plus per-direction totals.
// Direction order is fixed so grids align across entities and runs: for a
// 3-variable system (DBOND->RS, RS->DBOND, DCDS->RS, RS->DCDS,
// DCDS->DBOND, DBOND->DCDS).
struct CausalityTable {
    std::vector<std::pair<std::string, std::string>> directions;  // (cause, effect)
    std::vector<std::string> entity_ids;
    std::vector<std::vector<GrangerResult>> results;  // [entity][direction]
    std::vector<int> totals;                          // rejections per direction
};

CausalityTable causality_table(const std::vector<AlignedPanel>& panels,
                               const VarSpec& spec);

// Orthogonalized impulse responses: responses[h](i, j) is the reaction of
// variable i, h days after a one-standard-deviation shock to variable j,
// identified by the Cholesky factor of the residual covariance.
struct IrfResult {
    int horizon = 0;
    std::vector<std::string> variables;  // response/shock labels, spec order
    std::vector<std::string> ordering;   // Cholesky ordering used
    std::vector<Matrix> responses;       // horizon+1 matrices, k x k
    Vector shock_scale;                  // residual s.d. per variable
};

IrfResult impulse_response(const VarFit& fit, int horizon = 15,
                           std::optional<std::vector<std::string>> ordering =
                               std::nullopt);

// Moving-average matrices Phi_h of the estimated VAR (unit, non-orthogonal
// shocks); Phi_0 = I.
std::vector<Matrix> ma_coefficients(const VarFit& fit, int horizon);

// Market-capitalization-weighted element-wise mean of per-entity responses.
// The orthogonalization itself rests on cholesky_lower from linalg.hpp.
IrfResult cap_weighted_irf(
    const std::vector<std::pair<IrfResult, double>>& weighted_results);

}  // namespace credlink
