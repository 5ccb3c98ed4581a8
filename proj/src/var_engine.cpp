#include "credlink/var_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "credlink/distributions.hpp"
#include "credlink/errors.hpp"

namespace credlink {

namespace {

void check_spec(const VarSpec& spec) {
    if (spec.lag_order < 1) {
        throw InsufficientSample("VarSpec: lag order must be >= 1");
    }
    if (spec.variables.size() < 2) {
        throw InsufficientSample("VarSpec: need at least 2 variables");
    }
    for (std::size_t i = 0; i < spec.variables.size(); ++i) {
        for (std::size_t j = i + 1; j < spec.variables.size(); ++j) {
            if (spec.variables[i] == spec.variables[j]) {
                throw InvalidSeries("VarSpec: duplicate variable '" +
                                    spec.variables[i] + "'");
            }
        }
    }
    if (spec.window_start && spec.window_end &&
        !(*spec.window_start < *spec.window_end)) {
        throw InvalidSeries("VarSpec: window start must precede end");
    }
}

AlignedPanel apply_window(const AlignedPanel& panel, const VarSpec& spec) {
    if (!spec.window_start && !spec.window_end) return panel;
    const Date first = spec.window_start.value_or(panel.dates().front());
    const Date last = spec.window_end.value_or(panel.dates().back());
    return panel.window(first, last);
}

}  // namespace

VarDesign build_design(const AlignedPanel& panel, const VarSpec& spec) {
    check_spec(spec);
    const AlignedPanel sample = apply_window(panel, spec);

    const int k = static_cast<int>(spec.variables.size());
    const int p = spec.lag_order;
    const int t = static_cast<int>(sample.rows());
    // Smallest sample on which coefficients and t statistics are defined.
    const int min_rows = p + spec.regressor_count() + 1;
    if (t < min_rows) {
        throw InsufficientSample("build_design: " + std::to_string(t) +
                                 " rows, need at least " + std::to_string(min_rows));
    }

    std::vector<Eigen::Index> cols;
    for (const auto& name : spec.variables) {
        const Eigen::Index c = sample.column_index(name);
        if (c < 0) {
            throw InvalidSeries("build_design: panel lacks variable '" + name + "'");
        }
        cols.push_back(c);
    }

    const int t_eff = t - p;
    const int m = spec.regressor_count();
    VarDesign d;
    d.response.resize(t_eff, k);
    d.regressors.resize(t_eff, m);
    d.dates.assign(sample.dates().begin() + p, sample.dates().end());
    if (spec.include_intercept) d.regressor_names.push_back("Const");
    for (int v = 0; v < k; ++v) {
        for (int j = 1; j <= p; ++j) {
            d.regressor_names.push_back(spec.variables[static_cast<std::size_t>(v)] +
                                        "(-" + std::to_string(j) + ")");
        }
    }

    const Matrix& values = sample.values();
    for (int r = 0; r < t_eff; ++r) {
        const int row = r + p;  // position in the windowed panel
        for (int v = 0; v < k; ++v) {
            d.response(r, v) = values(row, cols[static_cast<std::size_t>(v)]);
        }
        int c = 0;
        if (spec.include_intercept) d.regressors(r, c++) = 1.0;
        for (int v = 0; v < k; ++v) {
            for (int j = 1; j <= p; ++j) {
                d.regressors(r, c++) = values(row - j, cols[static_cast<std::size_t>(v)]);
            }
        }
    }
    return d;
}

VarFit fit_var(const AlignedPanel& panel, const VarSpec& spec) {
    const VarDesign design = build_design(panel, spec);
    const int k = static_cast<int>(spec.variables.size());
    const int m = spec.regressor_count();
    const int t_eff = static_cast<int>(design.response.rows());
    if (t_eff <= m) {
        throw InsufficientSample("fit_var: T_eff <= number of regressors");
    }

    Eigen::ColPivHouseholderQR<Matrix> qr(design.regressors);
    if (qr.rank() < m) {
        throw RankDeficientDesign("fit_var: regressor matrix is rank deficient (rank " +
                                  std::to_string(qr.rank()) + " of " +
                                  std::to_string(m) + ")");
    }
    const Matrix xtx_inv = (design.regressors.transpose() * design.regressors)
                               .ldlt()
                               .solve(Matrix::Identity(m, m));

    VarFit fit;
    fit.spec = spec;
    fit.entity_id = panel.entity_id();
    fit.t_eff = t_eff;
    fit.n_regressors = m;
    fit.sample_start = design.dates.front();
    fit.sample_end = design.dates.back();
    fit.regressor_names = design.regressor_names;
    fit.coefficients.resize(k, m);
    fit.t_statistics.resize(k, m);
    fit.residuals.resize(t_eff, k);
    fit.per_equation.resize(static_cast<std::size_t>(k));

    for (int eq = 0; eq < k; ++eq) {
        const Vector y = design.response.col(eq);
        const Vector beta = qr.solve(y);
        const Vector resid = y - design.regressors * beta;
        fit.coefficients.row(eq) = beta.transpose();
        fit.residuals.col(eq) = resid;

        const double ssr = resid.squaredNorm();
        const double sigma2 = ssr / (t_eff - m);
        for (int j = 0; j < m; ++j) {
            const double se = std::sqrt(sigma2 * xtx_inv(j, j));
            fit.t_statistics(eq, j) = beta(j) / se;
        }

        auto& stats = fit.per_equation[static_cast<std::size_t>(eq)];
        const double mean_y = y.mean();
        const double sst = spec.include_intercept
                               ? (y.array() - mean_y).square().sum()
                               : y.squaredNorm();
        stats.mean_dependent = mean_y;
        stats.sd_dependent = std::sqrt((y.array() - mean_y).square().sum() / (t_eff - 1));
        stats.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 0.0;
        stats.adj_r_squared =
            1.0 - (1.0 - stats.r_squared) * double(t_eff - 1) / (t_eff - m);
        const int slopes = m - (spec.include_intercept ? 1 : 0);
        stats.f_statistic = slopes > 0 && ssr > 0.0
                                ? ((sst - ssr) / slopes) / (ssr / (t_eff - m))
                                : 0.0;
        stats.log_likelihood =
            -0.5 * t_eff * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(ssr / t_eff));
        stats.aic = -2.0 * stats.log_likelihood / t_eff + 2.0 * m / double(t_eff);
        stats.sc = -2.0 * stats.log_likelihood / t_eff +
                   m * std::log(double(t_eff)) / t_eff;
    }

    fit.residual_covariance =
        fit.residuals.transpose() * fit.residuals / double(t_eff);
    return fit;
}

Eigen::MatrixXi significance_count(const std::vector<VarFit>& fits, double level) {
    if (fits.empty()) {
        throw EmptyList("significance_count: no fits given");
    }
    for (const auto& f : fits) {
        if (!f.spec.same_shape(fits.front().spec)) {
            throw HeterogeneousSpecs("significance_count: fits have different spec shapes");
        }
    }
    const auto k = fits.front().t_statistics.rows();
    const auto m = fits.front().t_statistics.cols();
    Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(k, m);
    for (const auto& f : fits) {
        const double crit =
            student_t_two_sided_critical(level, double(f.t_eff - f.n_regressors));
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                if (std::abs(f.t_statistics(i, j)) > crit) counts(i, j) += 1;
            }
        }
    }
    return counts;
}

AggregateFit aggregate_fits(const std::vector<VarFit>& fits) {
    if (fits.empty()) {
        throw EmptyList("aggregate_fits: no fits given");
    }
    for (const auto& f : fits) {
        if (!f.spec.same_shape(fits.front().spec)) {
            throw HeterogeneousSpecs("aggregate_fits: fits have different spec shapes");
        }
    }
    const auto& first = fits.front();
    const auto k = first.coefficients.rows();
    const auto m = first.coefficients.cols();

    AggregateFit agg;
    agg.n_fits = static_cast<int>(fits.size());
    agg.variables = first.spec.variables;
    agg.regressor_names = first.regressor_names;
    agg.mean_coefficients = Matrix::Zero(k, m);
    agg.mean_t = Matrix::Zero(k, m);
    agg.mean_stats.resize(static_cast<std::size_t>(k));

    for (const auto& f : fits) {
        agg.mean_coefficients += f.coefficients;
        agg.mean_t += f.t_statistics;
        for (Eigen::Index eq = 0; eq < k; ++eq) {
            auto& acc = agg.mean_stats[static_cast<std::size_t>(eq)];
            const auto& s = f.per_equation[static_cast<std::size_t>(eq)];
            acc.r_squared += s.r_squared;
            acc.adj_r_squared += s.adj_r_squared;
            acc.f_statistic += s.f_statistic;
            acc.log_likelihood += s.log_likelihood;
            acc.aic += s.aic;
            acc.sc += s.sc;
            acc.mean_dependent += s.mean_dependent;
            acc.sd_dependent += s.sd_dependent;
        }
    }
    const double n = agg.n_fits;
    agg.mean_coefficients /= n;
    agg.mean_t /= n;
    for (auto& s : agg.mean_stats) {
        s.r_squared /= n;
        s.adj_r_squared /= n;
        s.f_statistic /= n;
        s.log_likelihood /= n;
        s.aic /= n;
        s.sc /= n;
        s.mean_dependent /= n;
        s.sd_dependent /= n;
    }
    return agg;
}

std::vector<VarFit> subperiod_fits(const AlignedPanel& panel, const VarSpec& spec,
                                   const std::vector<Date>& breakpoints) {
    std::vector<Date> sorted = breakpoints;
    std::sort(sorted.begin(), sorted.end());

    const AlignedPanel sample = apply_window(panel, spec);
    std::vector<std::pair<Date, Date>> windows;
    Date lo = sample.dates().front();
    for (const Date& b : sorted) {
        windows.emplace_back(lo, b.plus_days(-1));
        lo = b;
    }
    windows.emplace_back(lo, sample.dates().back());

    std::vector<VarFit> fits;
    for (const auto& [first, last] : windows) {
        VarSpec sub = spec;
        sub.window_start = first;
        sub.window_end = last;
        fits.push_back(fit_var(panel, sub));
    }
    return fits;
}

}  // namespace credlink
