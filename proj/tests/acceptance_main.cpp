// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Expects the bundled dataset directory as argv[1] (default "data").

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "credlink/causality_irf.hpp"
#include "credlink/cds.hpp"
#include "credlink/csv_io.hpp"
#include "credlink/errors.hpp"
#include "credlink/market_data.hpp"
#include "credlink/rng.hpp"
#include "credlink/simulator.hpp"
#include "credlink/stationarity.hpp"
#include "credlink/study.hpp"
#include "credlink/var_engine.hpp"

using namespace credlink;
namespace fs = std::filesystem;

namespace {

std::string g_data_dir = "data";

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Check {
    Outcome& outcome;
    void require(bool condition, const std::string& label) {
        if (!condition) {
            outcome.pass = false;
            outcome.detail += (outcome.detail.empty() ? "" : "; ") + label;
        }
    }
    void note(const std::string& text) {
        outcome.detail += (outcome.detail.empty() ? "" : "; ") + text;
    }
};

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --------------------------------------------------------------------------
// 1. CDS arithmetic, exact
// --------------------------------------------------------------------------
Outcome criterion_cds_exact() {
    Outcome outcome;
    Check check{outcome};

    CdsContract contract;
    contract.reference_entity = "FTE";
    contract.notional = 10'000'000.0;
    contract.spread_bp = 23.5;
    contract.tenor_years = 5.0;
    contract.payments_per_year = 4;
    contract.recovery_rate = 0.40;

    const auto start = std::chrono::steady_clock::now();
    const PremiumSchedule quiet = premium_schedule(contract);
    CdsContract distressed = contract;
    distressed.spread_bp = 730.0;
    const PremiumSchedule wide = premium_schedule(distressed);
    const double payout = default_payout(contract);
    const double elapsed = ms_since(start);

    check.require(quiet.per_period == 5875.0, "23.5bp quarterly != 5875");
    check.require(quiet.total == 117500.0, "23.5bp total != 117500");
    check.require(wide.per_period == 182500.0, "730bp quarterly != 182500");
    check.require(wide.total == 3650000.0, "730bp total != 3650000");
    check.require(payout == 6000000.0, "40% recovery payout != 6000000");
    check.require(elapsed < 1.0, "runtime >= 1 ms");
    return outcome;
}

// --------------------------------------------------------------------------
// 2. OLS oracle equivalence on the 6-observation instance
// --------------------------------------------------------------------------
Outcome criterion_ols_oracle() {
    Outcome outcome;
    Check check{outcome};

    Matrix values(6, 2);
    values << 1.0, 2.0,
              1.5, 1.0,
              0.5, 0.8,
              1.2, 1.6,
              0.9, 0.4,
              1.1, 1.3;
    std::vector<Date> dates;
    Date d(2001, 1, 1);
    while (dates.size() < 6) {
        if (d.is_weekday()) dates.push_back(d);
        d = d.plus_days(1);
    }
    const AlignedPanel panel("TOY", dates, {"RS", "DCDS"}, values);
    VarSpec spec;
    spec.variables = {"RS", "DCDS"};
    spec.lag_order = 1;
    const VarFit fit = fit_var(panel, spec);

    // Hand-computed normal equations, Cramer's rule on the 3x3 system.
    Matrix x(5, 3);
    for (int t = 1; t < 6; ++t) {
        x(t - 1, 0) = 1.0;
        x(t - 1, 1) = values(t - 1, 0);
        x(t - 1, 2) = values(t - 1, 1);
    }
    const Matrix gram = x.transpose() * x;
    const auto det3 = [](const Matrix& m) {
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    };
    const double denom = det3(gram);
    for (int eq = 0; eq < 2; ++eq) {
        Vector y(5);
        for (int t = 1; t < 6; ++t) y(t - 1) = values(t, eq);
        const Vector rhs = x.transpose() * y;
        for (int j = 0; j < 3; ++j) {
            Matrix numer = gram;
            numer.col(j) = rhs;
            const double beta_j = det3(numer) / denom;
            check.require(std::abs(fit.coefficients(eq, j) - beta_j) <= 1e-10,
                          "coefficient (" + std::to_string(eq) + "," +
                              std::to_string(j) + ") off by more than 1e-10");
        }
    }
    return outcome;
}

// --------------------------------------------------------------------------
// 3. VAR(5) recovery across 50 seeds
// --------------------------------------------------------------------------
Outcome criterion_var_recovery() {
    Outcome outcome;
    Check check{outcome};
    const auto start = std::chrono::steady_clock::now();

    std::vector<Matrix> lags(5, Matrix::Zero(3, 3));
    lags[0] << 0.35, 0.10, 0.00,
               0.05, 0.25, 0.10,
              -0.10, 0.00, 0.30;
    lags[1].diagonal() << 0.10, -0.12, 0.08;
    lags[2](0, 2) = 0.08;
    lags[3](1, 0) = -0.07;
    lags[4].diagonal() << 0.05, 0.04, -0.06;
    Matrix cov(3, 3);
    cov << 1.0, 0.2, -0.1,
           0.2, 1.5, 0.3,
          -0.1, 0.3, 2.0;

    VarSpec spec;
    spec.variables = {"RS", "DBOND", "DCDS"};
    spec.lag_order = 5;

    int inside = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto dgp =
            DgpSpec::var_process(lags, Vector::Zero(3), cov, 1500, 200, seed);
        const VarFit fit = fit_var(simulate(dgp), spec);
        for (int eq = 0; eq < 3; ++eq) {
            for (int j = 0; j < 16; ++j) {
                const double truth =
                    j == 0 ? 0.0
                           : lags[static_cast<std::size_t>((j - 1) % 5)](eq, (j - 1) / 5);
                const double est = fit.coefficients(eq, j);
                const double t_stat = fit.t_statistics(eq, j);
                const double se =
                    std::abs(t_stat) > 1e-12 ? std::abs(est / t_stat) : 1e9;
                ++total;
                if (std::abs(est - truth) <= 3.0 * se) ++inside;
            }
        }
    }
    const double elapsed = ms_since(start);
    const double coverage = double(inside) / total;
    check.note("coverage " + std::to_string(coverage));
    check.require(coverage >= 0.95, "3-sigma coverage below 95%");
    check.require(elapsed < 10000.0, "runtime >= 10 s");
    return outcome;
}

// --------------------------------------------------------------------------
// 4. Granger size and power, 1000 replications
// --------------------------------------------------------------------------
Outcome criterion_granger_size_power() {
    Outcome outcome;
    Check check{outcome};
    const auto start = std::chrono::steady_clock::now();

    VarSpec spec;
    spec.variables = {"RS", "DCDS"};
    spec.lag_order = 5;

    const auto simulate_pair = [](double beta, std::uint64_t seed) {
        std::vector<Matrix> lags(1, Matrix::Zero(2, 2));
        lags[0](0, 0) = 0.2;
        lags[0](1, 1) = 0.3;
        lags[0](1, 0) = beta;
        const auto dgp = DgpSpec::var_process(lags, Vector::Zero(2),
                                              Matrix::Identity(2, 2), 500, 100, seed);
        return simulate(dgp);
    };

    int size_rejects = 0, power_rejects = 0;
    const int reps = 1000;
    for (int r = 0; r < reps; ++r) {
        if (granger_test(simulate_pair(0.0, 10000 + static_cast<std::uint64_t>(r)),
                         spec, "RS", "DCDS")
                .reject_at_5pct) {
            ++size_rejects;
        }
        if (granger_test(simulate_pair(0.3, 20000 + static_cast<std::uint64_t>(r)),
                         spec, "RS", "DCDS")
                .reject_at_5pct) {
            ++power_rejects;
        }
    }
    const double elapsed = ms_since(start);
    const double size = double(size_rejects) / reps;
    const double power = double(power_rejects) / reps;
    check.note("size " + std::to_string(size) + ", power " + std::to_string(power));
    check.require(size >= 0.03 && size <= 0.07, "size outside [3%, 7%]");
    check.require(power >= 0.95, "power below 95%");
    check.require(elapsed < 60000.0, "runtime >= 60 s");
    return outcome;
}

// --------------------------------------------------------------------------
// 5. IRF analytic equivalence for the diagonal VAR(1)
// --------------------------------------------------------------------------
Outcome criterion_irf_analytic() {
    Outcome outcome;
    Check check{outcome};

    const int k = 3;
    VarFit fit;
    fit.spec.variables = {"A", "B", "C"};
    fit.spec.lag_order = 1;
    fit.t_eff = 100;
    fit.n_regressors = k + 1;
    fit.coefficients = Matrix::Zero(k, k + 1);
    for (int i = 0; i < k; ++i) fit.coefficients(i, 1 + i) = 0.5;
    fit.t_statistics = Matrix::Zero(k, k + 1);
    fit.residuals = Matrix::Zero(100, k);
    fit.residual_covariance = Matrix::Identity(k, k);

    const IrfResult irf = impulse_response(fit, 15);
    // Companion-matrix-power oracle.
    Matrix companion = Matrix::Zero(k, k);
    companion.diagonal().setConstant(0.5);
    Matrix power = Matrix::Identity(k, k);
    double max_err = 0.0;
    for (int h = 0; h <= 15; ++h) {
        max_err = std::max(max_err,
                           (irf.responses[static_cast<std::size_t>(h)] - power)
                               .cwiseAbs()
                               .maxCoeff());
        power = companion * power;
    }
    check.note("max |error| " + std::to_string(max_err));
    check.require(max_err <= 1e-10, "IRF deviates from 0.5^h by more than 1e-10");
    return outcome;
}

// --------------------------------------------------------------------------
// 6. Unit-root Monte Carlo battery
// --------------------------------------------------------------------------
Outcome criterion_unit_root_mc() {
    Outcome outcome;
    Check check{outcome};
    const auto start = std::chrono::steady_clock::now();

    const int reps = 1000;
    const int t_len = 1000;
    int adf_size = 0, pp_size = 0;
    int adf_power_wn = 0, pp_power_wn = 0;
    int adf_power_ar = 0, pp_power_ar = 0;
    int kpss_power_rw = 0, kpss_size_stat = 0;

    for (int r = 0; r < reps; ++r) {
        const auto seed = static_cast<std::uint64_t>(r);
        const Matrix rw = simulate_matrix(DgpSpec::random_walk(t_len, 30000 + seed));
        const Matrix wn = simulate_matrix(DgpSpec::white_noise(t_len, 40000 + seed));
        const Matrix ar = simulate_matrix(DgpSpec::ar1(0.5, t_len, 50000 + seed));
        const std::span<const double> rw_view(rw.data(), static_cast<std::size_t>(t_len));
        const std::span<const double> wn_view(wn.data(), static_cast<std::size_t>(t_len));
        const std::span<const double> ar_view(ar.data(), static_cast<std::size_t>(t_len));

        if (adf_test(rw_view).reject_at_5pct) ++adf_size;
        if (pp_test(rw_view).reject_at_5pct) ++pp_size;
        if (adf_test(wn_view).reject_at_5pct) ++adf_power_wn;
        if (pp_test(wn_view).reject_at_5pct) ++pp_power_wn;
        if (adf_test(ar_view).reject_at_5pct) ++adf_power_ar;
        if (pp_test(ar_view).reject_at_5pct) ++pp_power_ar;
        if (kpss_test(rw_view).reject_at_5pct) ++kpss_power_rw;
        if (kpss_test(ar_view).reject_at_5pct) ++kpss_size_stat;
    }
    const double elapsed = ms_since(start);

    const auto rate = [&](int n) { return double(n) / reps; };
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "ADF size %.3f power(WN) %.3f power(AR) %.3f | PP size %.3f "
                  "power(WN) %.3f power(AR) %.3f | KPSS power(RW) %.3f "
                  "size(AR) %.3f | %.1f s",
                  rate(adf_size), rate(adf_power_wn), rate(adf_power_ar),
                  rate(pp_size), rate(pp_power_wn), rate(pp_power_ar),
                  rate(kpss_power_rw), rate(kpss_size_stat), elapsed / 1000.0);
    check.note(buf);

    check.require(rate(adf_size) >= 0.03 && rate(adf_size) <= 0.07,
                  "ADF size outside [3%, 7%]");
    check.require(rate(pp_size) >= 0.03 && rate(pp_size) <= 0.07,
                  "PP size outside [3%, 7%]");
    check.require(rate(adf_power_wn) >= 0.90, "ADF power on white noise < 90%");
    check.require(rate(pp_power_wn) >= 0.90, "PP power on white noise < 90%");
    check.require(rate(adf_power_ar) >= 0.90, "ADF power on AR(0.5) < 90%");
    check.require(rate(pp_power_ar) >= 0.90, "PP power on AR(0.5) < 90%");
    check.require(rate(kpss_power_rw) >= 0.95, "KPSS power on random walk < 95%");
    check.require(rate(kpss_size_stat) <= 0.10, "KPSS size on stationary > 10%");
    check.require(elapsed < 120000.0, "runtime >= 2 min");
    return outcome;
}

// --------------------------------------------------------------------------
// 7. Pattern reproduction on the synthetic batch
// --------------------------------------------------------------------------
Outcome criterion_table_pattern() {
    Outcome outcome;
    Check check{outcome};

    const DemoBatch batch = demo_batch();
    VarSpec spec;
    spec.variables = {"RS", "DBOND", "DCDS"};
    spec.lag_order = 5;
    const CausalityTable table = causality_table(batch.panels, spec);
    int rs_to_dcds = -1;
    for (std::size_t d = 0; d < table.directions.size(); ++d) {
        if (table.directions[d] == std::make_pair(std::string("RS"), std::string("DCDS"))) {
            rs_to_dcds = table.totals[d];
        }
    }
    check.note("RS cause DCDS total " + std::to_string(rs_to_dcds));
    check.require(rs_to_dcds >= 10 && rs_to_dcds <= 12,
                  "RS->DCDS total outside {10, 11, 12}");

    const std::vector<double> reference_pct = {3.61, 15.28, 13.40, 3.37, 6.82,
                                               5.44, 9.19, 2.74, 0.60, 4.46,
                                               11.73, 1.51, 21.83};
    double total_cap = 0.0;
    for (const auto& e : batch.entities) total_cap += e.market_cap;
    for (std::size_t i = 0; i < batch.entities.size(); ++i) {
        const double weight = 100.0 * batch.entities[i].market_cap / total_cap;
        check.require(std::abs(weight - reference_pct[i]) <= 0.01,
                      batch.entities[i].entity_id + " weight off by > 0.01");
    }
    return outcome;
}

// --------------------------------------------------------------------------
// 8. Sign pattern: correlations and the share-shock response
// --------------------------------------------------------------------------
Outcome criterion_sign_pattern() {
    Outcome outcome;
    Check check{outcome};

    const DemoBatch batch = demo_batch();
    VarSpec spec;
    spec.variables = {"RS", "DBOND", "DCDS"};
    spec.lag_order = 5;

    double rs_dcds = 0.0, dbond_dcds = 0.0;
    std::vector<std::pair<IrfResult, double>> weighted;
    for (std::size_t e = 0; e < batch.panels.size(); ++e) {
        const Matrix corr = correlation_matrix(batch.panels[e]);
        rs_dcds += corr(0, 2);
        dbond_dcds += corr(1, 2);
        const VarFit fit = fit_var(batch.panels[e], spec);
        weighted.emplace_back(impulse_response(fit, 15),
                              batch.entities[e].market_cap);
    }
    rs_dcds /= double(batch.panels.size());
    dbond_dcds /= double(batch.panels.size());
    check.note("mean corr(RS,DCDS) " + std::to_string(rs_dcds) +
               ", mean corr(DBOND,DCDS) " + std::to_string(dbond_dcds));
    check.require(rs_dcds < 0.0, "mean corr(RS, DCDS) not negative");
    check.require(dbond_dcds > 0.0, "mean corr(DBOND, DCDS) not positive");

    // Negative share shock: the negated response of DCDS to the RS shock.
    const IrfResult agg = cap_weighted_irf(weighted);
    std::vector<double> response(16);
    double peak = 0.0;
    int peak_h = 0;
    for (int h = 0; h <= 15; ++h) {
        response[static_cast<std::size_t>(h)] =
            -agg.responses[static_cast<std::size_t>(h)](2, 0);
        if (response[static_cast<std::size_t>(h)] > peak) {
            peak = response[static_cast<std::size_t>(h)];
            peak_h = h;
        }
    }
    check.note("peak " + std::to_string(peak) + " at h=" + std::to_string(peak_h));
    check.require(peak > 0.0, "negative RS shock does not raise DCDS");
    check.require(peak_h <= 3, "response peaks later than h=3");
    for (int h = 7; h <= 15; ++h) {
        check.require(std::abs(response[static_cast<std::size_t>(h)]) < 0.10 * peak,
                      "response at h=" + std::to_string(h) + " above 10% of peak");
    }

    // Stability tail of the invariant: L-inf norm at h=15 under 10% of h=0.
    const double norm0 = agg.responses[0].cwiseAbs().maxCoeff();
    const double norm15 = agg.responses[15].cwiseAbs().maxCoeff();
    check.require(norm15 < 0.10 * norm0, "h=15 response norm above 10% of impact");
    return outcome;
}

// --------------------------------------------------------------------------
// 9. Determinism of `study` on the bundled dataset
// --------------------------------------------------------------------------
Outcome criterion_determinism() {
    Outcome outcome;
    Check check{outcome};

    const fs::path data(g_data_dir);
    if (!fs::exists(data / "observations.csv")) {
        outcome.pass = false;
        outcome.detail = "bundled dataset not found under '" + g_data_dir + "'";
        return outcome;
    }
    const fs::path out = fs::temp_directory_path() / "credlink_acceptance";
    fs::remove_all(out);

    StudyConfig config;
    config.observations_path = (data / "observations.csv").string();
    config.entities_path = (data / "entities.csv").string();

    config.output_dir = (out / "run1").string();
    run_study(config);
    config.output_dir = (out / "run2").string();
    run_study(config);

    std::string m1 = slurp(out / "run1" / "manifest.json");
    std::string m2 = slurp(out / "run2" / "manifest.json");
    check.require(!m1.empty(), "first manifest is empty");
    // Only the embedded output path may differ; normalize it.
    const std::string p1 = (out / "run1").string();
    const std::string p2 = (out / "run2").string();
    std::size_t pos;
    while ((pos = m1.find(p1)) != std::string::npos) m1.replace(pos, p1.size(), "OUT");
    while ((pos = m2.find(p2)) != std::string::npos) m2.replace(pos, p2.size(), "OUT");
    check.require(m1 == m2, "manifests differ between runs");
    return outcome;
}

// --------------------------------------------------------------------------
// 10. Invariant suite on randomized inputs
// --------------------------------------------------------------------------
Outcome criterion_invariants() {
    Outcome outcome;
    Check check{outcome};
    Rng rng(777);

    VarSpec spec;
    spec.variables = {"RS", "DCDS"};
    spec.lag_order = 2;

    int orthogonality_ok = 0, r2_ok = 0, psd_ok = 0, zero_sum_ok = 0,
        cholesky_ok = 0, scale_ok = 0;
    const int cases = 200;
    for (int c = 0; c < cases; ++c) {
        const std::uint64_t seed = 7000 + static_cast<std::uint64_t>(c);

        // Orthogonality, R-squared bounds, and scale equivariance on a
        // random stable 2-variable system.
        std::vector<Matrix> lags(1, Matrix::Zero(2, 2));
        lags[0] << 0.8 * rng.uniform() - 0.4, 0.4 * rng.uniform() - 0.2,
                   0.4 * rng.uniform() - 0.2, 0.8 * rng.uniform() - 0.4;
        Matrix cov(2, 2);
        const double rho = 1.6 * rng.uniform() - 0.8;
        const double s1 = 0.5 + rng.uniform(), s2 = 0.5 + 2.0 * rng.uniform();
        cov << s1 * s1, rho * s1 * s2, rho * s1 * s2, s2 * s2;
        const int t_len = 60 + static_cast<int>(rng.uniform() * 200.0);
        const auto dgp = DgpSpec::var_process(lags, Vector::Zero(2), cov, t_len,
                                              50, seed);
        const AlignedPanel panel = simulate(dgp);
        const VarFit fit = fit_var(panel, spec);
        const VarDesign design = build_design(panel, spec);

        const Matrix cross = design.regressors.transpose() * fit.residuals;
        const double scale = design.regressors.norm() * fit.residuals.norm();
        if (cross.cwiseAbs().maxCoeff() <= 1e-8 * std::max(scale, 1e-300)) {
            ++orthogonality_ok;
        }
        bool r2_fine = true;
        for (const auto& s : fit.per_equation) {
            r2_fine = r2_fine && s.r_squared >= 0.0 && s.r_squared <= 1.0 &&
                      s.adj_r_squared <= s.r_squared + 1e-15;
        }
        if (r2_fine) ++r2_ok;

        const Matrix corr = correlation_matrix(panel);
        if ((corr - corr.transpose()).cwiseAbs().maxCoeff() <= 1e-14 &&
            min_symmetric_eigenvalue(corr) >= -1e-10) {
            ++psd_ok;
        }

        // Zero-sum CDS P&L.
        CdsContract contract;
        contract.reference_entity = "X";
        contract.notional = 1e5 + rng.uniform() * 1e8;
        contract.spread_bp = rng.uniform() * 900.0;
        contract.tenor_years = 1.0 + double(static_cast<int>(rng.uniform() * 9.0));
        contract.payments_per_year = 1 + static_cast<int>(rng.uniform() * 4.0);
        contract.recovery_rate = rng.uniform();
        const int periods =
            static_cast<int>(contract.tenor_years) * contract.payments_per_year;
        const auto pnl = pnl_at_resolution(contract, rng.uniform() < 0.5,
                                           static_cast<int>(rng.uniform() * (periods + 1)));
        if (pnl.buyer + pnl.seller == 0.0) ++zero_sum_ok;

        // Cholesky reconstruction.
        const int k = 2 + static_cast<int>(rng.uniform() * 3.0);
        Matrix a(k, k);
        for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = rng.gaussian();
        const Matrix spd = a * a.transpose() + 0.05 * Matrix::Identity(k, k);
        const Matrix l = cholesky_lower(spd);
        if ((l * l.transpose() - spd).cwiseAbs().maxCoeff() <=
            1e-12 * spd.cwiseAbs().maxCoeff()) {
            ++cholesky_ok;
        }

        // Scale equivariance with invariant t statistics.
        const double factor = 0.5 + 10.0 * rng.uniform();
        Matrix scaled = panel.values();
        scaled.col(1) *= factor;
        std::vector<Date> dates = panel.dates();
        const VarFit fit2 =
            fit_var(AlignedPanel("X", dates, panel.columns(), scaled), spec);
        if ((fit2.t_statistics - fit.t_statistics).cwiseAbs().maxCoeff() <= 1e-6) {
            ++scale_ok;
        }
    }

    check.require(orthogonality_ok == cases, "orthogonality failures");
    check.require(r2_ok == cases, "R-squared bound failures");
    check.require(psd_ok == cases, "correlation PSD failures");
    check.require(zero_sum_ok == cases, "CDS zero-sum failures");
    check.require(cholesky_ok == cases, "Cholesky reconstruction failures");
    check.require(scale_ok == cases, "scale equivariance failures");
    return outcome;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_data_dir = argv[1];

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"CDS arithmetic, exact", criterion_cds_exact},
        {"OLS oracle equivalence", criterion_ols_oracle},
        {"VAR(5) recovery within 3 standard errors", criterion_var_recovery},
        {"Granger size and power", criterion_granger_size_power},
        {"IRF analytic equivalence", criterion_irf_analytic},
        {"Unit-root Monte Carlo battery", criterion_unit_root_mc},
        {"Demo-batch pattern reproduction", criterion_table_pattern},
        {"Sign-pattern and response decay", criterion_sign_pattern},
        {"Study determinism", criterion_determinism},
        {"Invariant suite", criterion_invariants},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double elapsed = ms_since(start);
        std::printf("[%s] %2zu. %s (%.1f ms)%s%s\n", outcome.pass ? "PASS" : "FAIL",
                    i + 1, criteria[i].first.c_str(), elapsed,
                    outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
        if (!outcome.pass) ++failures;
    }
    return failures;
}
