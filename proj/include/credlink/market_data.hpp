#pragma once

#include <span>
#include <string>
#include <vector>

#include "credlink/series.hpp"

namespace credlink {

// Daily log return: value at date t is ln(P_t / P_{t-1}), no dividend
// adjustment. Output has one point fewer than the input.
ObservationSeries log_return(const ObservationSeries& prices);

// Bid/ask midpoint on each date both series quote; other dates are dropped.
ObservationSeries mid_cds_spread(const ObservationSeries& bid,
                                 const ObservationSeries& ask);

// Bond yield minus same-maturity swap rate on each shared date, in the input
// quoting units.
ObservationSeries bond_spread(const ObservationSeries& bond_yield,
                              const ObservationSeries& swap_rate);

// Linear interpolation in maturity between two bracketing (maturity, yield)
// quotes. Requires below.maturity < target < above.maturity.
struct MaturityYield {
    double maturity_years = 0.0;
    double yield = 0.0;
};
double interpolate_yield(MaturityYield below, MaturityYield above,
                         double target_maturity_years);

// x_t - x_{t-1}; the cumulative sum plus the initial value reconstructs the
// input exactly.
ObservationSeries first_difference(const ObservationSeries& series);

// Inner join of named variable series on dates. Column order is forced to
// the canonical (RS, DBOND, DCDS) / (RS, DCDS) ordering regardless of the
// order given.
struct NamedSeries {
    std::string name;  // one of RS, DBOND, DCDS
    ObservationSeries series;
};
AlignedPanel align(const std::string& entity_id,
                   const std::vector<NamedSeries>& series_list);

// Pearson correlation matrix of the panel columns.
Matrix correlation_matrix(const AlignedPanel& panel);

// Sample autocorrelations at lags 1..max_lag.
std::vector<double> autocorrelation(std::span<const double> series,
                                    int max_lag);

// Full per-entity pipeline: prices -> RS, bid/ask -> DCDS, yield/swap ->
// DBOND when present, inner-joined into the canonical panel. `use_bond`
// selects the 3-variable construction; with false the bond inputs are
// ignored and a (RS, DCDS) panel is produced.
struct EntitySeriesBundle {
    std::string entity_id;
    const ObservationSeries* share_price = nullptr;
    const ObservationSeries* cds_bid = nullptr;
    const ObservationSeries* cds_ask = nullptr;
    const ObservationSeries* bond_yield = nullptr;  // may be null
    const ObservationSeries* swap_rate = nullptr;   // may be null
};
AlignedPanel build_entity_panel(const EntitySeriesBundle& bundle, bool use_bond);

}  // namespace credlink
