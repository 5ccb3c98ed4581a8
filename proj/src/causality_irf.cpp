#include "credlink/causality_irf.hpp"

#include <algorithm>
#include <cmath>

#include "credlink/distributions.hpp"
#include "credlink/errors.hpp"

namespace credlink {

GrangerResult granger_test(const AlignedPanel& panel, const VarSpec& spec,
                           const std::string& cause, const std::string& effect) {
    if (cause == effect) {
        throw InvalidSeries("granger_test: cause and effect must differ");
    }
    const auto find_var = [&](const std::string& name) {
        const auto it = std::find(spec.variables.begin(), spec.variables.end(), name);
        if (it == spec.variables.end()) {
            throw InvalidSeries("granger_test: '" + name + "' not in the VAR spec");
        }
        return static_cast<int>(it - spec.variables.begin());
    };
    const int cause_idx = find_var(cause);
    const int effect_idx = find_var(effect);

    const VarDesign design = build_design(panel, spec);
    const int p = spec.lag_order;
    const int m = spec.regressor_count();
    const int t_eff = static_cast<int>(design.response.rows());
    if (t_eff <= m) {
        throw InsufficientSample("granger_test: T_eff <= number of regressors");
    }

    const Vector y = design.response.col(effect_idx);

    Eigen::ColPivHouseholderQR<Matrix> qr_full(design.regressors);
    if (qr_full.rank() < m) {
        throw RankDeficientDesign("granger_test: regressor matrix is rank deficient");
    }
    const double ssr_full = (y - design.regressors * qr_full.solve(y)).squaredNorm();

    // Restricted design: same rows, minus the p lag columns of `cause`.
    const int intercept = spec.include_intercept ? 1 : 0;
    const int drop_first = intercept + cause_idx * p;
    Matrix restricted(t_eff, m - p);
    restricted.leftCols(drop_first) = design.regressors.leftCols(drop_first);
    restricted.rightCols(m - p - drop_first) =
        design.regressors.rightCols(m - p - drop_first);
    Eigen::ColPivHouseholderQR<Matrix> qr_r(restricted);
    const double ssr_restricted = (y - restricted * qr_r.solve(y)).squaredNorm();

    GrangerResult result;
    result.cause = cause;
    result.effect = effect;
    result.dof_num = p;
    result.dof_den = t_eff - m;
    const double diff = std::max(ssr_restricted - ssr_full, 0.0);
    // Machine-exact fits on both sides mean the restricted and unrestricted
    // SSRs are equal up to rounding: F is 0 by definition.
    const double exact_fit = 1e-24 * y.squaredNorm();
    if (ssr_full <= exact_fit && ssr_restricted <= exact_fit) {
        result.f_statistic = 0.0;
    } else {
        result.f_statistic = (diff / p) / (ssr_full / (t_eff - m));
    }
    result.p_value = f_survival(result.f_statistic, p, t_eff - m);
    result.reject_at_5pct = result.p_value < 0.05;
    return result;
}

CausalityTable causality_table(const std::vector<AlignedPanel>& panels,
                               const VarSpec& spec) {
    CausalityTable table;
    if (spec.variables.size() == 3) {
        const auto& v = spec.variables;  // canonical (RS, DBOND, DCDS)
        table.directions = {{v[1], v[0]}, {v[0], v[1]}, {v[2], v[0]},
                            {v[0], v[2]}, {v[2], v[1]}, {v[1], v[2]}};
    } else {
        const auto& v = spec.variables;
        table.directions = {{v[0], v[1]}, {v[1], v[0]}};
    }
    table.totals.assign(table.directions.size(), 0);
    for (const auto& panel : panels) {
        table.entity_ids.push_back(panel.entity_id());
        std::vector<GrangerResult> row;
        for (std::size_t d = 0; d < table.directions.size(); ++d) {
            GrangerResult r = granger_test(panel, spec, table.directions[d].first,
                                           table.directions[d].second);
            if (r.reject_at_5pct) table.totals[d] += 1;
            row.push_back(std::move(r));
        }
        table.results.push_back(std::move(row));
    }
    return table;
}

std::vector<Matrix> ma_coefficients(const VarFit& fit, int horizon) {
    const int k = static_cast<int>(fit.spec.variables.size());
    const int p = fit.spec.lag_order;
    const int intercept = fit.spec.include_intercept ? 1 : 0;

    // Lag matrices from the stacked coefficient layout.
    std::vector<Matrix> lags;
    for (int j = 0; j < p; ++j) {
        Matrix a(k, k);
        for (int i = 0; i < k; ++i) {
            for (int v = 0; v < k; ++v) {
                a(i, v) = fit.coefficients(i, intercept + v * p + j);
            }
        }
        lags.push_back(std::move(a));
    }

    std::vector<Matrix> phi;
    phi.push_back(Matrix::Identity(k, k));
    for (int h = 1; h <= horizon; ++h) {
        Matrix m = Matrix::Zero(k, k);
        for (int j = 1; j <= std::min(h, p); ++j) {
            m += lags[static_cast<std::size_t>(j - 1)] *
                 phi[static_cast<std::size_t>(h - j)];
        }
        phi.push_back(std::move(m));
    }
    return phi;
}

IrfResult impulse_response(const VarFit& fit, int horizon,
                           std::optional<std::vector<std::string>> ordering) {
    if (horizon < 1) {
        throw InvalidSeries("impulse_response: horizon must be >= 1");
    }
    const int k = static_cast<int>(fit.spec.variables.size());
    std::vector<std::string> order = ordering.value_or(fit.spec.variables);
    if (static_cast<int>(order.size()) != k) {
        throw MismatchedShapes("impulse_response: ordering size mismatch");
    }

    // Permutation: row r of P selects the variable at Cholesky position r.
    Matrix perm = Matrix::Zero(k, k);
    for (int r = 0; r < k; ++r) {
        const auto it = std::find(fit.spec.variables.begin(), fit.spec.variables.end(),
                                  order[static_cast<std::size_t>(r)]);
        if (it == fit.spec.variables.end()) {
            throw MismatchedShapes("impulse_response: ordering names unknown variable '" +
                                   order[static_cast<std::size_t>(r)] + "'");
        }
        perm(r, it - fit.spec.variables.begin()) = 1.0;
    }

    Matrix impact;  // P^T chol(P Sigma P^T) P, back in spec ordering
    try {
        const Matrix chol = cholesky_lower(perm * fit.residual_covariance * perm.transpose());
        impact = perm.transpose() * chol * perm;
    } catch (const NotPositiveDefinite& e) {
        throw SingularCovariance(std::string("impulse_response: ") + e.what());
    }

    IrfResult irf;
    irf.horizon = horizon;
    irf.variables = fit.spec.variables;
    irf.ordering = std::move(order);
    irf.shock_scale = fit.residual_covariance.diagonal().cwiseSqrt();
    const std::vector<Matrix> phi = ma_coefficients(fit, horizon);
    for (const Matrix& p : phi) irf.responses.push_back(p * impact);
    return irf;
}

IrfResult cap_weighted_irf(
    const std::vector<std::pair<IrfResult, double>>& weighted_results) {
    if (weighted_results.empty()) {
        throw EmptyList("cap_weighted_irf: no results given");
    }
    const IrfResult& first = weighted_results.front().first;
    double total = 0.0;
    for (const auto& [irf, cap] : weighted_results) {
        if (!(cap > 0.0)) {
            throw NonPositiveCap("cap_weighted_irf: market caps must be positive");
        }
        if (irf.horizon != first.horizon || irf.variables != first.variables ||
            irf.ordering != first.ordering) {
            throw MismatchedShapes("cap_weighted_irf: results disagree on horizon, "
                                   "variables, or ordering");
        }
        total += cap;
    }

    IrfResult out;
    out.horizon = first.horizon;
    out.variables = first.variables;
    out.ordering = first.ordering;
    const auto k = first.responses.front().rows();
    out.shock_scale = Vector::Zero(k);
    out.responses.assign(first.responses.size(), Matrix::Zero(k, k));
    for (const auto& [irf, cap] : weighted_results) {
        const double w = cap / total;
        out.shock_scale += w * irf.shock_scale;
        for (std::size_t h = 0; h < out.responses.size(); ++h) {
            out.responses[h] += w * irf.responses[h];
        }
    }
    return out;
}

}  // namespace credlink
