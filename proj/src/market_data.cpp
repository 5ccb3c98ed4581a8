#include "credlink/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "credlink/errors.hpp"

namespace credlink {

namespace {

// Inner join of two date-sorted series; `combine(a, b)` produces the joined value.
template <typename F>
ObservationSeries join_on_dates(const ObservationSeries& a,
                                const ObservationSeries& b, F combine,
                                const char* op_name) {
    std::vector<Date> dates;
    std::vector<double> values;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a.dates()[i] < b.dates()[j]) {
            ++i;
        } else if (b.dates()[j] < a.dates()[i]) {
            ++j;
        } else {
            dates.push_back(a.dates()[i]);
            values.push_back(combine(a.values()[i], b.values()[j]));
            ++i;
            ++j;
        }
    }
    if (dates.empty()) {
        throw EmptyOverlap(std::string(op_name) + ": series share no dates (" +
                           a.entity_id() + ")");
    }
    return ObservationSeries(a.entity_id(), std::nullopt, std::move(dates),
                             std::move(values));
}

}  // namespace

ObservationSeries log_return(const ObservationSeries& prices) {
    if (prices.size() < 2) {
        throw TooShort("log_return: need at least 2 prices, got " +
                       std::to_string(prices.size()));
    }
    std::vector<Date> dates(prices.dates().begin() + 1, prices.dates().end());
    std::vector<double> values(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        const double prev = prices.values()[t - 1];
        const double cur = prices.values()[t];
        if (!(prev > 0.0) || !(cur > 0.0)) {
            throw NonPositivePrice("log_return: non-positive price at " +
                                   prices.dates()[t].to_iso());
        }
        values[t - 1] = std::log(cur / prev);
    }
    return ObservationSeries(prices.entity_id(), std::nullopt, std::move(dates),
                             std::move(values));
}

ObservationSeries mid_cds_spread(const ObservationSeries& bid,
                                 const ObservationSeries& ask) {
    return join_on_dates(
        bid, ask, [](double b, double a) { return (b + a) / 2.0; },
        "mid_cds_spread");
}

ObservationSeries bond_spread(const ObservationSeries& bond_yield,
                              const ObservationSeries& swap_rate) {
    return join_on_dates(
        bond_yield, swap_rate, [](double y, double s) { return y - s; },
        "bond_spread");
}

double interpolate_yield(MaturityYield below, MaturityYield above,
                         double target_maturity_years) {
    if (!(below.maturity_years < target_maturity_years &&
          target_maturity_years < above.maturity_years)) {
        throw TargetOutsideBracket(
            "interpolate_yield: target " + std::to_string(target_maturity_years) +
            "y outside bracket (" + std::to_string(below.maturity_years) + "y, " +
            std::to_string(above.maturity_years) + "y)");
    }
    const double w = (target_maturity_years - below.maturity_years) /
                     (above.maturity_years - below.maturity_years);
    return below.yield + w * (above.yield - below.yield);
}

ObservationSeries first_difference(const ObservationSeries& series) {
    if (series.size() < 2) {
        throw TooShort("first_difference: need at least 2 points, got " +
                       std::to_string(series.size()));
    }
    std::vector<Date> dates(series.dates().begin() + 1, series.dates().end());
    std::vector<double> values(series.size() - 1);
    for (std::size_t t = 1; t < series.size(); ++t) {
        values[t - 1] = series.values()[t] - series.values()[t - 1];
    }
    return ObservationSeries(series.entity_id(), std::nullopt, std::move(dates),
                             std::move(values));
}

AlignedPanel align(const std::string& entity_id,
                   const std::vector<NamedSeries>& series_list) {
    static const std::vector<std::string> canonical = {"RS", "DBOND", "DCDS"};

    if (series_list.size() < 2) {
        throw InvalidSeries("align: need at least 2 variables");
    }
    std::vector<const NamedSeries*> ordered;
    for (const auto& name : canonical) {
        const auto it = std::find_if(
            series_list.begin(), series_list.end(),
            [&](const NamedSeries& ns) { return ns.name == name; });
        if (it != series_list.end()) ordered.push_back(&*it);
    }
    if (ordered.size() != series_list.size()) {
        throw InvalidSeries("align: variable names must be distinct and among RS/DBOND/DCDS");
    }
    for (const auto* ns : ordered) {
        if (ns->series.entity_id() != entity_id) {
            throw InvalidSeries("align: series for '" + ns->series.entity_id() +
                                "' mixed into panel for '" + entity_id + "'");
        }
    }

    // Count how many variables quote each date; keep complete rows.
    std::map<Date, int> hits;
    for (const auto* ns : ordered) {
        for (const Date& d : ns->series.dates()) ++hits[d];
    }
    std::vector<Date> dates;
    for (const auto& [date, n] : hits) {
        if (n == static_cast<int>(ordered.size())) dates.push_back(date);
    }
    if (dates.empty()) {
        throw EmptyOverlap("align: no date carries all variables (" + entity_id + ")");
    }

    Matrix values(static_cast<Eigen::Index>(dates.size()),
                  static_cast<Eigen::Index>(ordered.size()));
    std::vector<std::string> columns;
    for (std::size_t c = 0; c < ordered.size(); ++c) {
        columns.push_back(ordered[c]->name);
        const auto& s = ordered[c]->series;
        std::size_t cursor = 0;
        for (std::size_t r = 0; r < dates.size(); ++r) {
            while (s.dates()[cursor] < dates[r]) ++cursor;
            values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                s.values()[cursor];
        }
    }
    return AlignedPanel(entity_id, std::move(dates), std::move(columns),
                        std::move(values));
}

Matrix correlation_matrix(const AlignedPanel& panel) {
    const auto t = panel.rows();
    const auto k = panel.cols();
    if (t < 3) {
        throw TooShort("correlation_matrix: need at least 3 rows");
    }
    const Matrix centered =
        panel.values().rowwise() - panel.values().colwise().mean();
    Vector norms(k);
    for (Eigen::Index c = 0; c < k; ++c) {
        norms(c) = centered.col(c).norm();
        if (!(norms(c) > 0.0)) {
            throw ZeroVariance("correlation_matrix: column '" +
                               panel.columns()[static_cast<std::size_t>(c)] +
                               "' is constant");
        }
    }
    Matrix corr(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        corr(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double r = centered.col(i).dot(centered.col(j)) / (norms(i) * norms(j));
            corr(i, j) = r;
            corr(j, i) = r;
        }
    }
    return corr;
}

std::vector<double> autocorrelation(std::span<const double> series, int max_lag) {
    const auto t = static_cast<int>(series.size());
    if (max_lag < 1 || t <= max_lag + 1) {
        throw TooShort("autocorrelation: need T > max_lag + 1");
    }
    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= t;
    double denom = 0.0;
    for (double x : series) denom += (x - mean) * (x - mean);
    if (!(denom > 0.0)) {
        throw ZeroVariance("autocorrelation: series is constant");
    }
    std::vector<double> acf(static_cast<std::size_t>(max_lag));
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (int i = k; i < t; ++i) {
            num += (series[static_cast<std::size_t>(i)] - mean) *
                   (series[static_cast<std::size_t>(i - k)] - mean);
        }
        acf[static_cast<std::size_t>(k - 1)] = num / denom;
    }
    return acf;
}

AlignedPanel build_entity_panel(const EntitySeriesBundle& bundle, bool use_bond) {
    if (!bundle.share_price || !bundle.cds_bid || !bundle.cds_ask) {
        throw InvalidSeries(bundle.entity_id +
                            ": share price and CDS bid/ask series are required");
    }
    std::vector<NamedSeries> variables;
    variables.push_back({"RS", log_return(*bundle.share_price)});
    variables.push_back(
        {"DCDS", first_difference(mid_cds_spread(*bundle.cds_bid, *bundle.cds_ask))});
    if (use_bond) {
        if (!bundle.bond_yield || !bundle.swap_rate) {
            throw InvalidSeries(bundle.entity_id + ": bond yield and swap rate "
                                "series are required for the 3-variable panel");
        }
        variables.push_back(
            {"DBOND", first_difference(bond_spread(*bundle.bond_yield, *bundle.swap_rate))});
    }
    return align(bundle.entity_id, variables);
}

}  // namespace credlink
