#include "credlink/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "credlink/causality_irf.hpp"
#include "credlink/csv_io.hpp"
#include "credlink/errors.hpp"
#include "credlink/market_data.hpp"
#include "credlink/simulator.hpp"
#include "credlink/stationarity.hpp"

namespace credlink {

namespace {

using nlohmann::json;

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, n == 0 ? 1 : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n) break;
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json counts_to_json(const Eigen::MatrixXi& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Minimal self-contained vector plot of one response path.
std::string svg_line_chart(const std::string& title, const std::vector<double>& y) {
    const double width = 480, height = 320;
    const double ml = 56, mr = 16, mt = 36, mb = 40;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double lo = 0.0, hi = 0.0;
    for (double v : y) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo < 1e-12) {
        hi += 1.0;
        lo -= 1.0;
    }
    const double pad = 0.08 * (hi - lo);
    lo -= pad;
    hi += pad;

    const auto px = [&](std::size_t i) {
        return ml + pw * double(i) / double(y.size() - 1);
    };
    const auto py = [&](double v) { return mt + ph * (hi - v) / (hi - lo); };
    char buf[128];

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"13\">" << title << "</text>\n";
    // axes
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"black\"/>\n",
                  ml, mt + ph, ml + pw, mt + ph);
    s << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"black\"/>\n",
                  ml, mt, ml, mt + ph);
    s << buf;
    // zero line
    if (lo < 0.0 && hi > 0.0) {
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                      "stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n",
                      ml, py(0.0), ml + pw, py(0.0));
        s << buf;
    }
    // x ticks each horizon, y ticks at lo/0/hi
    for (std::size_t i = 0; i < y.size(); ++i) {
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                      "font-family=\"sans-serif\" font-size=\"9\">%zu</text>\n",
                      px(i), mt + ph + 14, i);
        s << buf;
    }
    for (double v : {lo + pad, 0.0, hi - pad}) {
        if (v < lo || v > hi) continue;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" "
                      "font-family=\"sans-serif\" font-size=\"9\">%.4g</text>\n",
                      ml - 4, py(v) + 3, v);
        s << buf;
    }
    // response path
    s << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < y.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(i), py(y[i]));
        s << buf;
    }
    s << "\"/>\n</svg>\n";
    return s.str();
}

Date json_date(const json& j, const char* key, Date fallback) {
    if (!j.contains(key)) return fallback;
    return Date::from_iso(j.at(key).get<std::string>());
}

// ---------------------------------------------------------------------------
// Per-model study machinery
// ---------------------------------------------------------------------------

struct PeriodWindow {
    std::string name;
    std::optional<Date> first;  // nullopt: from the start of the data
    Date last;
};

struct EntityInputs {
    const EntityRecord* record = nullptr;
    std::optional<AlignedPanel> panel;
    std::string skip_reason;
};

struct EntityPeriodResult {
    bool present = false;
    std::string skip_reason;
    std::optional<Matrix> correlation;
    std::vector<std::pair<std::string, std::vector<double>>> acf;  // per variable
    std::vector<VariableBattery> battery;
    std::optional<VarFit> fit;
    std::string fit_failure;
    std::vector<GrangerResult> granger;  // empty unless fit succeeded
    std::optional<IrfResult> irf;
    std::string irf_failure;
};

std::vector<std::pair<std::string, std::string>> direction_layout(
    const std::vector<std::string>& vars) {
    if (vars.size() == 3) {
        return {{vars[1], vars[0]}, {vars[0], vars[1]}, {vars[2], vars[0]},
                {vars[0], vars[2]}, {vars[2], vars[1]}, {vars[1], vars[2]}};
    }
    return {{vars[0], vars[1]}, {vars[1], vars[0]}};
}

std::string direction_label(const std::pair<std::string, std::string>& d) {
    return d.first + " cause " + d.second;
}

EntityPeriodResult compute_entity_period(const AlignedPanel& model_panel,
                                         const PeriodWindow& period,
                                         const VarSpec& spec, int irf_horizon) {
    EntityPeriodResult out;
    std::optional<AlignedPanel> windowed;
    try {
        const Date first = period.first.value_or(model_panel.dates().front());
        windowed = model_panel.window(first, period.last);
    } catch (const Error& e) {
        out.skip_reason = e.what();
        return out;
    }
    out.present = true;

    try {
        out.correlation = correlation_matrix(*windowed);
    } catch (const Error&) {
    }
    for (Eigen::Index c = 0; c < windowed->cols(); ++c) {
        try {
            const Vector col = windowed->values().col(c);
            out.acf.emplace_back(
                windowed->columns()[static_cast<std::size_t>(c)],
                autocorrelation({col.data(), static_cast<std::size_t>(col.size())}, 5));
        } catch (const Error&) {
        }
    }
    try {
        out.battery = stationarity_battery(*windowed);
    } catch (const Error&) {
    }
    // Pipeline-level sample floor: k*p + p + 10 rows per fitted window.
    const int floor_rows = static_cast<int>(spec.variables.size()) * spec.lag_order +
                           spec.lag_order + 10;
    if (windowed->rows() < floor_rows) {
        out.fit_failure = "sample of " + std::to_string(windowed->rows()) +
                          " rows is below the floor of " + std::to_string(floor_rows);
        return out;
    }
    try {
        out.fit = fit_var(*windowed, spec);
    } catch (const Error& e) {
        out.fit_failure = e.what();
        return out;
    }
    for (const auto& dir : direction_layout(spec.variables)) {
        out.granger.push_back(granger_test(*windowed, spec, dir.first, dir.second));
    }
    try {
        out.irf = impulse_response(*out.fit, irf_horizon);
    } catch (const Error& e) {
        out.irf_failure = e.what();
    }
    return out;
}

std::string csv_bool(bool b) { return b ? "yes" : "no"; }

// Aggregates one (model, period) cell and writes its report files.
json emit_period(const std::string& dir, const VarSpec& spec,
                 const std::vector<const EntityRecord*>& records,
                 const std::vector<EntityPeriodResult>& results,
                 double significance, int irf_horizon) {
    json period_json;
    const auto& vars = spec.variables;
    const auto k = static_cast<Eigen::Index>(vars.size());

    json skipped = json::object();
    json entities = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].present) {
            entities.push_back(records[i]->entity_id);
        } else {
            skipped[records[i]->entity_id] = results[i].skip_reason;
        }
    }
    period_json["entities"] = entities;
    period_json["skipped"] = skipped;

    // --- correlations -------------------------------------------------------
    {
        Matrix mean = Matrix::Zero(k, k);
        int n = 0;
        for (const auto& r : results) {
            if (r.correlation) {
                mean += *r.correlation;
                ++n;
            }
        }
        if (n > 0) mean /= double(n);
        period_json["correlation"] = {{"variables", vars},
                                      {"entities_used", n},
                                      {"mean", matrix_to_json(mean)}};
        std::ostringstream csv;
        csv << "variable";
        for (const auto& v : vars) csv << ',' << v;
        csv << '\n';
        for (Eigen::Index i = 0; i < k; ++i) {
            csv << vars[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < k; ++j) csv << ',' << format_double(mean(i, j));
            csv << '\n';
        }
        write_file_atomic(dir + "/correlations.csv", csv.str());
    }

    // --- stationarity -------------------------------------------------------
    {
        json counts = json::object();
        json reports = json::array();
        std::ostringstream report_csv;
        report_csv << "entity_id,variable,test,statistic,cv1,cv5,cv10,reject5,nuisance\n";
        std::map<std::string, std::array<int, 4>> table;  // var -> adf, pp, kpss-ok, n
        for (std::size_t i = 0; i < results.size(); ++i) {
            for (const auto& b : results[i].battery) {
                auto& row = table[b.variable];
                row[0] += b.adf.reject_at_5pct ? 1 : 0;
                row[1] += b.pp.reject_at_5pct ? 1 : 0;
                row[2] += b.kpss.reject_at_5pct ? 0 : 1;
                row[3] += 1;
                for (const UnitRootReport* rep : {&b.adf, &b.pp, &b.kpss}) {
                    const std::string nuisance =
                        (rep->test_kind == UnitRootTest::ADF ? "lags=" : "bw=") +
                        std::to_string(rep->lag_or_bandwidth) +
                        ";det=" + to_string(rep->deterministic);
                    report_csv << records[i]->entity_id << ',' << b.variable << ','
                               << to_string(rep->test_kind) << ','
                               << format_double(rep->statistic) << ','
                               << format_double(rep->cv1) << ','
                               << format_double(rep->cv5) << ','
                               << format_double(rep->cv10) << ','
                               << csv_bool(rep->reject_at_5pct) << ',' << nuisance
                               << '\n';
                    reports.push_back({{"entity_id", records[i]->entity_id},
                                       {"variable", b.variable},
                                       {"test", to_string(rep->test_kind)},
                                       {"statistic", rep->statistic},
                                       {"cv1", rep->cv1},
                                       {"cv5", rep->cv5},
                                       {"cv10", rep->cv10},
                                       {"reject5", rep->reject_at_5pct},
                                       {"nuisance", nuisance}});
                }
            }
        }
        std::ostringstream counts_csv;
        counts_csv << "variable,adf_reject_unit_root,pp_reject_unit_root,"
                      "kpss_consistent_with_stationarity,entities_tested\n";
        for (const auto& v : vars) {
            const auto& row = table[v];
            counts_csv << v << ',' << row[0] << ',' << row[1] << ',' << row[2] << ','
                       << row[3] << '\n';
            counts[v] = {{"adf_reject_unit_root", row[0]},
                         {"pp_reject_unit_root", row[1]},
                         {"kpss_consistent_with_stationarity", row[2]},
                         {"entities_tested", row[3]}};
        }
        write_file_atomic(dir + "/stationarity_counts.csv", counts_csv.str());
        write_file_atomic(dir + "/stationarity_reports.csv", report_csv.str());
        period_json["stationarity_counts"] = counts;
        period_json["stationarity_reports"] = reports;
    }

    // --- autocorrelations ---------------------------------------------------
    {
        std::map<std::string, std::pair<std::vector<double>, int>> acc;
        for (const auto& r : results) {
            for (const auto& [var, acf] : r.acf) {
                auto& slot = acc[var];
                if (slot.first.empty()) slot.first.assign(acf.size(), 0.0);
                for (std::size_t l = 0; l < acf.size(); ++l) slot.first[l] += acf[l];
                slot.second += 1;
            }
        }
        json acf_json = json::object();
        std::ostringstream csv;
        csv << "variable,lag1,lag2,lag3,lag4,lag5\n";
        for (const auto& v : vars) {
            auto it = acc.find(v);
            std::vector<double> mean(5, 0.0);
            if (it != acc.end() && it->second.second > 0) {
                for (std::size_t l = 0; l < mean.size(); ++l) {
                    mean[l] = it->second.first[l] / it->second.second;
                }
            }
            csv << v;
            for (double m : mean) csv << ',' << format_double(m);
            csv << '\n';
            acf_json[v] = mean;
        }
        write_file_atomic(dir + "/autocorrelation.csv", csv.str());
        period_json["autocorrelation"] = acf_json;
    }

    // --- VAR estimates ------------------------------------------------------
    std::vector<VarFit> fits;
    std::vector<const EntityRecord*> fit_records;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].fit) {
            fits.push_back(*results[i].fit);
            fit_records.push_back(records[i]);
        }
    }
    json var_json;
    {
        json failures = json::object();
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].present && !results[i].fit) {
                failures[records[i]->entity_id] = results[i].fit_failure;
            }
        }
        var_json["failures"] = failures;
        var_json["entities_fit"] = static_cast<int>(fits.size());
        if (!fits.empty()) {
            const AggregateFit agg = aggregate_fits(fits);
            const Eigen::MatrixXi sig = significance_count(fits, significance);
            var_json["regressors"] = agg.regressor_names;
            var_json["mean_coefficients"] = matrix_to_json(agg.mean_coefficients);
            var_json["mean_t"] = matrix_to_json(agg.mean_t);
            var_json["significance_counts"] = counts_to_json(sig);
            json stats = json::object();
            for (std::size_t eq = 0; eq < agg.mean_stats.size(); ++eq) {
                const auto& s = agg.mean_stats[eq];
                stats[vars[eq]] = {{"r_squared", s.r_squared},
                                   {"adj_r_squared", s.adj_r_squared},
                                   {"f_statistic", s.f_statistic},
                                   {"log_likelihood", s.log_likelihood},
                                   {"aic", s.aic},
                                   {"sc", s.sc},
                                   {"mean_dependent", s.mean_dependent},
                                   {"sd_dependent", s.sd_dependent}};
            }
            var_json["mean_stats"] = stats;
            json fits_json = json::object();
            for (std::size_t i = 0; i < fits.size(); ++i) {
                fits_json[fit_records[i]->entity_id] = var_fit_to_json(fits[i]);
            }
            var_json["fits"] = fits_json;

            // Table layout: one row per regressor (lags first, then the
            // constant), three columns per equation.
            std::ostringstream csv;
            csv << "regressor";
            for (const auto& v : vars) {
                csv << ',' << v << "_mean_coef," << v << "_mean_t," << v
                    << "_n_significant";
            }
            csv << '\n';
            const int m = static_cast<int>(agg.regressor_names.size());
            std::vector<int> row_order;
            for (int j = 1; j < m; ++j) row_order.push_back(j);
            row_order.push_back(0);  // Const
            for (int j : row_order) {
                csv << agg.regressor_names[static_cast<std::size_t>(j)];
                for (Eigen::Index eq = 0; eq < k; ++eq) {
                    csv << ',' << format_double(agg.mean_coefficients(eq, j)) << ','
                        << format_double(agg.mean_t(eq, j)) << ',' << sig(eq, j);
                }
                csv << '\n';
            }
            const std::vector<std::pair<std::string, double EquationStats::*>> footer = {
                {"R-squared", &EquationStats::r_squared},
                {"Adj. R-squared", &EquationStats::adj_r_squared},
                {"F-statistic", &EquationStats::f_statistic},
                {"Log likelihood", &EquationStats::log_likelihood},
                {"Akaike AIC", &EquationStats::aic},
                {"Schwarz SC", &EquationStats::sc},
                {"Mean dependent", &EquationStats::mean_dependent},
                {"S.D. dependent", &EquationStats::sd_dependent},
            };
            for (const auto& [label, member] : footer) {
                csv << label;
                for (Eigen::Index eq = 0; eq < k; ++eq) {
                    csv << ',' << format_double(agg.mean_stats[static_cast<std::size_t>(eq)].*member)
                        << ",,";
                }
                csv << '\n';
            }
            write_file_atomic(dir + "/var_estimates.csv", csv.str());
        }
    }
    period_json["var"] = var_json;

    // --- Granger causality grid ----------------------------------------------
    {
        const auto directions = direction_layout(vars);
        std::vector<int> totals(directions.size(), 0);
        json grid = json::object();
        std::ostringstream csv;
        csv << "entity";
        for (const auto& d : directions) csv << ',' << direction_label(d);
        csv << '\n';
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].granger.empty()) continue;
            csv << records[i]->entity_id;
            json row = json::object();
            for (std::size_t d = 0; d < directions.size(); ++d) {
                const auto& g = results[i].granger[d];
                const bool yes = g.p_value < significance;
                if (yes) totals[d] += 1;
                csv << ',' << csv_bool(yes);
                row[direction_label(directions[d])] = {{"f", g.f_statistic},
                                                       {"p", g.p_value},
                                                       {"reject", yes}};
            }
            csv << '\n';
            grid[records[i]->entity_id] = row;
        }
        csv << "TOTAL";
        json totals_json = json::object();
        for (std::size_t d = 0; d < directions.size(); ++d) {
            csv << ',' << totals[d];
            totals_json[direction_label(directions[d])] = totals[d];
        }
        csv << '\n';
        write_file_atomic(dir + "/causality.csv", csv.str());
        period_json["granger"] = {{"grid", grid}, {"totals", totals_json}};
    }

    // --- impulse responses --------------------------------------------------
    {
        std::vector<std::pair<IrfResult, double>> weighted;
        json weights = json::object();
        double total_cap = 0.0;
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].irf) total_cap += records[i]->market_cap;
        }
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (!results[i].irf) continue;
            weighted.emplace_back(*results[i].irf, records[i]->market_cap);
            weights[records[i]->entity_id] = records[i]->market_cap / total_cap;
        }
        if (!weighted.empty()) {
            const IrfResult agg = cap_weighted_irf(weighted);
            std::ostringstream csv;
            csv << "horizon,shock_var,response_var,value\n";
            json responses = json::array();
            for (Eigen::Index shock = 0; shock < k; ++shock) {
                for (Eigen::Index resp = 0; resp < k; ++resp) {
                    std::vector<double> path;
                    for (int h = 0; h <= agg.horizon; ++h) {
                        const double v = agg.responses[static_cast<std::size_t>(h)](resp, shock);
                        path.push_back(v);
                        csv << h << ',' << vars[static_cast<std::size_t>(shock)] << ','
                            << vars[static_cast<std::size_t>(resp)] << ','
                            << format_double(v) << '\n';
                    }
                    responses.push_back({{"shock", vars[static_cast<std::size_t>(shock)]},
                                         {"response", vars[static_cast<std::size_t>(resp)]},
                                         {"values", path}});
                    const std::string title =
                        "Response of " + vars[static_cast<std::size_t>(resp)] +
                        " to a 1 s.d. " + vars[static_cast<std::size_t>(shock)] +
                        " shock (cap-weighted)";
                    write_file_atomic(dir + "/plots/irf_" +
                                          vars[static_cast<std::size_t>(shock)] + "_" +
                                          vars[static_cast<std::size_t>(resp)] + ".svg",
                                      svg_line_chart(title, path));
                }
            }
            write_file_atomic(dir + "/irf.csv", csv.str());
            period_json["irf"] = {{"horizon", irf_horizon},
                                  {"ordering", agg.ordering},
                                  {"weights", weights},
                                  {"responses", responses}};
        }
        json irf_failures = json::object();
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].fit && !results[i].irf) {
                irf_failures[records[i]->entity_id] = results[i].irf_failure;
            }
        }
        if (!irf_failures.empty()) period_json["irf_failures"] = irf_failures;
    }

    return period_json;
}

}  // namespace

void StudyConfig::validate() const {
    if (lag_order < 1) throw InvalidSeries("StudyConfig: lag order must be >= 1");
    if (irf_horizon < 1) throw InvalidSeries("StudyConfig: IRF horizon must be >= 1");
    if (!(significance > 0.0 && significance < 1.0)) {
        throw InvalidSeries("StudyConfig: significance must lie in (0, 1)");
    }
    if (observations_path.empty() || entities_path.empty()) {
        throw InvalidSeries("StudyConfig: observation and entity paths are required");
    }
}

StudyConfig study_config_from_json(const json& j) {
    StudyConfig c;
    c.observations_path = j.value("observations", c.observations_path);
    c.entities_path = j.value("entities", c.entities_path);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.lag_order = j.value("lag_order", c.lag_order);
    c.significance = j.value("significance", c.significance);
    c.irf_horizon = j.value("irf_horizon", c.irf_horizon);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    c.var1_end = json_date(j, "var1_end", c.var1_end);
    c.var2_end = json_date(j, "var2_end", c.var2_end);
    if (j.contains("breakpoints")) {
        c.breakpoints.clear();
        for (const auto& b : j.at("breakpoints")) {
            c.breakpoints.push_back(Date::from_iso(b.get<std::string>()));
        }
    }
    return c;
}

json study_config_to_json(const StudyConfig& c) {
    // Worker-thread count is omitted: it cannot affect the results, and the
    // manifest must be byte-identical across runs regardless of it.
    json breakpoints = json::array();
    for (const Date& b : c.breakpoints) breakpoints.push_back(b.to_iso());
    return {{"observations", c.observations_path},
            {"entities", c.entities_path},
            {"output_dir", c.output_dir},
            {"lag_order", c.lag_order},
            {"breakpoints", breakpoints},
            {"significance", c.significance},
            {"irf_horizon", c.irf_horizon},
            {"var1_end", c.var1_end.to_iso()},
            {"var2_end", c.var2_end.to_iso()},
            {"seed", c.seed}};
}

json var_fit_to_json(const VarFit& fit) {
    json equations = json::object();
    const auto k = fit.coefficients.rows();
    const auto m = fit.coefficients.cols();
    for (Eigen::Index eq = 0; eq < k; ++eq) {
        json rows = json::object();
        for (Eigen::Index j = 0; j < m; ++j) {
            rows[fit.regressor_names[static_cast<std::size_t>(j)]] = {
                {"coefficient", fit.coefficients(eq, j)},
                {"t", fit.t_statistics(eq, j)}};
        }
        const auto& s = fit.per_equation[static_cast<std::size_t>(eq)];
        equations[fit.spec.variables[static_cast<std::size_t>(eq)]] = {
            {"rows", rows},
            {"stats",
             {{"r_squared", s.r_squared},
              {"adj_r_squared", s.adj_r_squared},
              {"f_statistic", s.f_statistic},
              {"log_likelihood", s.log_likelihood},
              {"aic", s.aic},
              {"sc", s.sc},
              {"mean_dependent", s.mean_dependent},
              {"sd_dependent", s.sd_dependent}}}};
    }
    return {{"entity_id", fit.entity_id},
            {"variables", fit.spec.variables},
            {"lag_order", fit.spec.lag_order},
            {"sample",
             {{"start", fit.sample_start.to_iso()},
              {"end", fit.sample_end.to_iso()},
              {"t_eff", fit.t_eff},
              {"regressors", fit.n_regressors}}},
            {"equations", equations},
            {"residual_covariance", matrix_to_json(fit.residual_covariance)}};
}

json run_study(const StudyConfig& config) {
    config.validate();
    const std::vector<EntityRecord> entities = load_entities_csv(config.entities_path);
    if (entities.empty()) {
        throw ParseError("entities file lists no entities", 1, 1);
    }
    const MarketDataSet data = load_observations_csv(config.observations_path);

    json manifest;
    manifest["config"] = study_config_to_json(config);

    struct ModelPlan {
        std::string name;
        std::vector<std::string> variables;
        Date end;
        bool use_bond;
    };
    const std::vector<ModelPlan> models = {
        {"VAR1", {"RS", "DBOND", "DCDS"}, config.var1_end, true},
        {"VAR2", {"RS", "DCDS"}, config.var2_end, false},
    };

    int total_fits = 0;
    json models_json = json::object();
    for (const auto& model : models) {
        VarSpec spec;
        spec.variables = model.variables;
        spec.lag_order = config.lag_order;

        // Panel construction per entity.
        std::vector<EntityInputs> inputs(entities.size());
        parallel_for(entities.size(), config.threads, [&](std::size_t i) {
            auto& in = inputs[i];
            in.record = &entities[i];
            EntitySeriesBundle bundle;
            bundle.entity_id = entities[i].entity_id;
            bundle.share_price = data.find(bundle.entity_id, FieldKind::SharePrice);
            bundle.cds_bid = data.find(bundle.entity_id, FieldKind::CdsBid);
            bundle.cds_ask = data.find(bundle.entity_id, FieldKind::CdsAsk);
            bundle.bond_yield = data.find(bundle.entity_id, FieldKind::BondYield);
            bundle.swap_rate = data.find(bundle.entity_id, FieldKind::SwapRate5y);
            try {
                AlignedPanel panel = build_entity_panel(bundle, model.use_bond);
                in.panel = panel.window(panel.dates().front(), model.end);
            } catch (const Error& e) {
                in.skip_reason = e.what();
            }
        });

        // Global data window; breakpoints must fall strictly inside it.
        std::optional<Date> global_first, global_last;
        for (const auto& in : inputs) {
            if (!in.panel) continue;
            const Date f = in.panel->dates().front();
            const Date l = in.panel->dates().back();
            if (!global_first || f < *global_first) global_first = f;
            if (!global_last || *global_last < l) global_last = l;
        }
        json model_json;
        model_json["variables"] = model.variables;
        model_json["sample_end"] = model.end.to_iso();
        json panel_skips = json::object();
        for (const auto& in : inputs) {
            if (!in.panel) panel_skips[in.record->entity_id] = in.skip_reason;
        }
        model_json["skipped"] = panel_skips;
        if (!global_first) {
            model_json["periods"] = json::object();
            models_json[model.name] = model_json;
            continue;
        }
        for (const Date& b : config.breakpoints) {
            if (!(*global_first < b && b < *global_last)) {
                throw InvalidSeries("StudyConfig: breakpoint " + b.to_iso() +
                                    " is not strictly inside the data window [" +
                                    global_first->to_iso() + ", " +
                                    global_last->to_iso() + "]");
            }
        }

        // Calendar periods: full sample, then the breakpoint partition.
        std::vector<PeriodWindow> periods;
        periods.push_back({"full", std::nullopt, model.end});
        std::vector<Date> sorted_breaks = config.breakpoints;
        std::sort(sorted_breaks.begin(), sorted_breaks.end());
        if (!sorted_breaks.empty()) {
            std::optional<Date> lo;
            for (std::size_t s = 0; s < sorted_breaks.size(); ++s) {
                periods.push_back({"sub" + std::to_string(s + 1), lo,
                                   sorted_breaks[s].plus_days(-1)});
                lo = sorted_breaks[s];
            }
            periods.push_back({"sub" + std::to_string(sorted_breaks.size() + 1), lo,
                               model.end});
        }

        json periods_json = json::object();
        for (const auto& period : periods) {
            std::vector<const EntityRecord*> records(entities.size());
            std::vector<EntityPeriodResult> results(entities.size());
            parallel_for(entities.size(), config.threads, [&](std::size_t i) {
                records[i] = inputs[i].record;
                if (!inputs[i].panel) {
                    results[i].skip_reason = inputs[i].skip_reason;
                    return;
                }
                results[i] = compute_entity_period(*inputs[i].panel, period, spec,
                                                   config.irf_horizon);
            });
            const std::string dir =
                config.output_dir + "/" + model.name + "/" + period.name;
            json period_json = emit_period(dir, spec, records, results,
                                           config.significance, config.irf_horizon);
            period_json["window"] = {
                {"first", period.first ? period.first->to_iso() : "data-start"},
                {"last", period.last.to_iso()}};
            total_fits += period_json["var"]["entities_fit"].get<int>();
            periods_json[period.name] = period_json;
        }
        model_json["periods"] = periods_json;
        models_json[model.name] = model_json;
    }
    manifest["models"] = models_json;

    if (total_fits == 0) {
        throw InsufficientSample("run_study: no entity produced a VAR fit in any model");
    }

    write_file_atomic(config.output_dir + "/manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

CdsContract cds_contract_from_json(const json& j) {
    CdsContract c;
    c.reference_entity = j.value("entity", "");
    c.notional = j.at("notional").get<double>();
    c.spread_bp = j.at("spread_bp").get<double>();
    c.tenor_years = j.at("tenor_years").get<double>();
    c.payments_per_year = j.value("payments_per_year", 4);
    c.recovery_rate = j.value("recovery_rate", 0.4);
    c.validate();
    return c;
}

CdsRunResult run_cds(const std::string& contract_json_path) {
    std::ifstream in(contract_json_path);
    if (!in) {
        throw ParseError("cannot open '" + contract_json_path + "'", 0, 0);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad contract JSON: ") + e.what(), 0, e.byte);
    }

    CdsRunResult result;
    try {
        result.contract = cds_contract_from_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad contract JSON: ") + e.what(), 0, 0);
    }
    result.schedule = premium_schedule(result.contract);
    result.payout = default_payout(result.contract);
    result.no_event =
        pnl_at_resolution(result.contract, false, result.schedule.period_count);
    result.event_immediate = pnl_at_resolution(result.contract, true, 0);
    result.report = {
        {"contract",
         {{"entity", result.contract.reference_entity},
          {"notional", result.contract.notional},
          {"spread_bp", result.contract.spread_bp},
          {"tenor_years", result.contract.tenor_years},
          {"payments_per_year", result.contract.payments_per_year},
          {"recovery_rate", result.contract.recovery_rate}}},
        {"premium_per_period", result.schedule.per_period},
        {"period_count", result.schedule.period_count},
        {"premium_total", result.schedule.total},
        {"default_payout", result.payout},
        {"pnl",
         {{"no_event",
           {{"buyer", result.no_event.buyer}, {"seller", result.no_event.seller}}},
          {"event_before_first_premium",
           {{"buyer", result.event_immediate.buyer},
            {"seller", result.event_immediate.seller}}}}}};
    return result;
}

void run_simulate(const std::string& spec_json_path, const std::string& out_dir) {
    std::ifstream in(spec_json_path);
    if (!in) {
        throw ParseError("cannot open '" + spec_json_path + "'", 0, 0);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad simulation spec: ") + e.what(), 0, e.byte);
    }

    const std::string kind = j.value("kind", "DemoBatch");
    std::vector<SimulatedEntity> entities;
    if (kind == "DemoBatch") {
        DemoBatchOptions options;
        options.seed = j.value("seed", options.seed);
        options.rs_to_dcds_scale = j.value("rs_to_dcds_scale", options.rs_to_dcds_scale);
        options.dcds_to_dbond_scale =
            j.value("dcds_to_dbond_scale", options.dcds_to_dbond_scale);
        entities = demo_batch_raw(options);
    } else if (kind == "VarProcess") {
        DgpSpec spec;
        spec.kind = DgpSpec::Kind::VarProcess;
        const auto& lags = j.at("lag_matrices");
        for (const auto& lag : lags) {
            const auto rows = lag.size();
            Matrix a(rows, rows);
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < rows; ++c) {
                    a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                        lag.at(r).at(c).get<double>();
                }
            }
            spec.lag_matrices.push_back(std::move(a));
        }
        spec.dimension = static_cast<int>(spec.lag_matrices.front().rows());
        spec.intercept = Vector::Zero(spec.dimension);
        if (j.contains("intercept")) {
            for (int i = 0; i < spec.dimension; ++i) {
                spec.intercept(i) = j.at("intercept").at(static_cast<std::size_t>(i)).get<double>();
            }
        }
        spec.innovation_covariance = Matrix::Identity(spec.dimension, spec.dimension);
        if (j.contains("innovation_covariance")) {
            for (int r = 0; r < spec.dimension; ++r) {
                for (int c = 0; c < spec.dimension; ++c) {
                    spec.innovation_covariance(r, c) =
                        j.at("innovation_covariance")
                            .at(static_cast<std::size_t>(r))
                            .at(static_cast<std::size_t>(c))
                            .get<double>();
                }
            }
        }
        spec.length = j.at("length").get<int>();
        spec.burn_in = j.value("burn_in", 100);
        spec.seed = j.value("seed", 0);
        spec.require_stable = j.value("require_stable", true);
        if (spec.dimension != 2 && spec.dimension != 3) {
            throw InvalidSeries("run_simulate: VarProcess dimension must be 2 or 3 "
                                "to render the dataset");
        }
        const Date start = json_date(j, "start_date", Date(2001, 1, 2));
        const std::string entity_id = j.value("entity_id", "SIM");
        const AlignedPanel panel = simulate(spec, start, entity_id);

        // Integrate into quoted levels with neutral starting points.
        SimulatedEntity sim;
        sim.record = EntityRecord{entity_id, entity_id, "Simulated", 1.0e9, start,
                                  panel.dates().back()};
        std::vector<Date> grid = panel.dates();
        grid.insert(grid.begin(), grid.front().plus_days(-1));  // level anchor
        const auto t_total = grid.size();
        std::vector<double> price(t_total, 100.0), mid(t_total, 50.0), bid(t_total),
            ask(t_total), yield(t_total, 0.0), swap(t_total, 440.0);
        std::vector<double> spread(t_total, 80.0);
        const Eigen::Index dcds_col = panel.column_index("DCDS");
        const Eigen::Index dbond_col = panel.column_index("DBOND");
        for (std::size_t t = 1; t < t_total; ++t) {
            const auto r = static_cast<Eigen::Index>(t - 1);
            price[t] = price[t - 1] * std::exp(panel.values()(r, 0));
            mid[t] = mid[t - 1] + panel.values()(r, dcds_col);
            spread[t] = spread[t - 1] +
                        (dbond_col >= 0 ? panel.values()(r, dbond_col) : 0.0);
        }
        for (std::size_t t = 0; t < t_total; ++t) {
            bid[t] = mid[t] - 1.0;
            ask[t] = mid[t] + 1.0;
            yield[t] = swap[t] + spread[t];
        }
        sim.series.emplace_back(entity_id, FieldKind::SharePrice, grid, price);
        sim.series.emplace_back(entity_id, FieldKind::CdsBid, grid, bid);
        sim.series.emplace_back(entity_id, FieldKind::CdsAsk, grid, ask);
        if (dbond_col >= 0) {
            sim.series.emplace_back(entity_id, FieldKind::BondYield, grid, yield);
            sim.series.emplace_back(entity_id, FieldKind::SwapRate5y, grid, swap);
        }
        entities.push_back(std::move(sim));
    } else {
        throw ParseError("unknown simulation kind '" + kind + "'", 0, 0);
    }

    write_observations_csv(out_dir + "/observations.csv", entities);
    std::vector<EntityRecord> records;
    for (const auto& e : entities) records.push_back(e.record);
    write_entities_csv(out_dir + "/entities.csv", records);
}

}  // namespace credlink
