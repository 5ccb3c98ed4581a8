#pragma once

#include <optional>
#include <string>
#include <vector>

#include "credlink/series.hpp"

namespace credlink {

// Specification of one VAR system: which panel columns enter, how many lags,
// and an optional calendar window restricting the sample.
struct VarSpec {
    std::vector<std::string> variables;
    int lag_order = 5;
    std::optional<Date> window_start;
    std::optional<Date> window_end;
    bool include_intercept = true;

    int regressor_count() const {
        return static_cast<int>(variables.size()) * lag_order +
               (include_intercept ? 1 : 0);
    }
    bool same_shape(const VarSpec& other) const {
        return variables == other.variables && lag_order == other.lag_order &&
               include_intercept == other.include_intercept;
    }
};

// Stacked response/regressor matrices for equation-wise least squares.
// Regressor columns are ordered [1, var1 lags 1..p, var2 lags 1..p, ...].
struct VarDesign {
    Matrix response;    // T_eff x k
    Matrix regressors;  // T_eff x m
    std::vector<Date> dates;
    std::vector<std::string> regressor_names;  // "Const", "RS(-1)", ...
};

VarDesign build_design(const AlignedPanel& panel, const VarSpec& spec);

struct EquationStats {
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double f_statistic = 0.0;
    double log_likelihood = 0.0;
    double aic = 0.0;
    double sc = 0.0;
    double mean_dependent = 0.0;
    double sd_dependent = 0.0;
};

// Equation-wise OLS estimate of one VAR system. Row i of `coefficients` and
// `t_statistics` belongs to the equation for variables[i]; columns follow the
// design ordering. Immutable once returned.
struct VarFit {
    VarSpec spec;
    std::string entity_id;
    int t_eff = 0;
    int n_regressors = 0;
    Date sample_start;
    Date sample_end;
    std::vector<std::string> regressor_names;
    Matrix coefficients;        // k x m
    Matrix t_statistics;        // k x m
    Matrix residuals;           // T_eff x k
    Matrix residual_covariance; // k x k, 1/T_eff denominator
    std::vector<EquationStats> per_equation;
};

VarFit fit_var(const AlignedPanel& panel, const VarSpec& spec);

// Per-cell count of fits whose two-sided t test rejects zero at `level`,
// using Student critical values with each fit's own T_eff - m degrees of
// freedom. Shape k x m, matching the coefficient layout.
Eigen::MatrixXi significance_count(const std::vector<VarFit>& fits,
                                   double level = 0.05);

// Element-wise arithmetic means across fits.
struct AggregateFit {
    int n_fits = 0;
    std::vector<std::string> variables;
    std::vector<std::string> regressor_names;
    Matrix mean_coefficients;  // k x m
    Matrix mean_t;             // k x m
    std::vector<EquationStats> mean_stats;
};

AggregateFit aggregate_fits(const std::vector<VarFit>& fits);

// Independent fits on the calendar partition induced by `breakpoints`:
// [start, b1), [b1, b2), ..., [bk, end].
std::vector<VarFit> subperiod_fits(const AlignedPanel& panel, const VarSpec& spec,
                                   const std::vector<Date>& breakpoints);

}  // namespace credlink
