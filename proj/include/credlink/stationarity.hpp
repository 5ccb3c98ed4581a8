#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "credlink/series.hpp"

namespace credlink {

enum class Deterministic { ConstantOnly, ConstantAndTrend };
enum class UnitRootTest { ADF, PhillipsPerron, KPSS };

std::string to_string(Deterministic det);
std::string to_string(UnitRootTest test);

// Outcome of one unit-root/stationarity test. For ADF and Phillips-Perron the
// null is a unit root and rejection is in the left tail; for KPSS the null is
// stationarity and rejection is in the right tail, so reject_at_5pct there
// means "rejects stationarity".
struct UnitRootReport {
    UnitRootTest test_kind = UnitRootTest::ADF;
    double statistic = 0.0;
    double cv1 = 0.0;
    double cv5 = 0.0;
    double cv10 = 0.0;
    bool reject_at_5pct = false;
    bool reject_at_1pct = false;
    int lag_or_bandwidth = 0;  // ADF: augmentation lags; PP/KPSS: kernel bandwidth
    Deterministic deterministic = Deterministic::ConstantOnly;
};

// Augmented Dickey-Fuller t test. Augmentation order is chosen by the
// Schwarz criterion over 0..floor(12*(T/100)^(1/4)) when max_lag is unset.
UnitRootReport adf_test(std::span<const double> series,
                        Deterministic det = Deterministic::ConstantOnly,
                        std::optional<int> max_lag = std::nullopt);

// Phillips-Perron Z-tau test with Bartlett-kernel long-run variance;
// bandwidth defaults to the Newey-West automatic choice.
UnitRootReport pp_test(std::span<const double> series,
                       Deterministic det = Deterministic::ConstantOnly,
                       std::optional<int> bandwidth = std::nullopt);

// KPSS LM test of the stationarity null; same kernel/bandwidth conventions
// as pp_test.
UnitRootReport kpss_test(std::span<const double> series,
                         Deterministic det = Deterministic::ConstantOnly,
                         std::optional<int> bandwidth = std::nullopt);

// All three tests with default settings on every panel column.
struct VariableBattery {
    std::string variable;
    UnitRootReport adf;
    UnitRootReport pp;
    UnitRootReport kpss;
};
std::vector<VariableBattery> stationarity_battery(const AlignedPanel& panel);

// Newey-West (1994) automatic bandwidth for the Bartlett kernel.
int newey_west_bandwidth(std::span<const double> residuals);

}  // namespace credlink
