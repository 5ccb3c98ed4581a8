#include "credlink/cds.hpp"

#include <cmath>

#include "credlink/errors.hpp"

namespace credlink {

void CdsContract::validate() const {
    if (!(notional > 0.0)) {
        throw InvalidSeries("CdsContract: notional must be positive");
    }
    if (spread_bp < 0.0) {
        throw InvalidSeries("CdsContract: spread must be non-negative");
    }
    if (!(tenor_years > 0.0)) {
        throw InvalidSeries("CdsContract: tenor must be positive");
    }
    if (payments_per_year < 1) {
        throw InvalidSeries("CdsContract: payments per year must be >= 1");
    }
    if (recovery_rate < 0.0 || recovery_rate > 1.0) {
        throw InvalidSeries("CdsContract: recovery rate must lie in [0, 1]");
    }
}

PremiumSchedule premium_schedule(const CdsContract& contract) {
    contract.validate();
    const double exact_count = contract.tenor_years * contract.payments_per_year;
    const double rounded = std::round(exact_count);
    if (std::abs(exact_count - rounded) > 1e-9 || rounded < 1.0) {
        throw NonIntegralPeriodCount(
            "premium_schedule: tenor x frequency must be a whole number of periods, got " +
            std::to_string(exact_count));
    }

    PremiumSchedule schedule;
    schedule.period_count = static_cast<int>(rounded);
    // Grouped so the worked contract examples come out to the cent.
    schedule.per_period = contract.notional * contract.spread_bp /
                          (10000.0 * contract.payments_per_year);
    schedule.total = schedule.per_period * schedule.period_count;
    schedule.payments.reserve(static_cast<std::size_t>(schedule.period_count));
    for (int i = 1; i <= schedule.period_count; ++i) {
        schedule.payments.emplace_back(i, schedule.per_period);
    }
    return schedule;
}

double default_payout(const CdsContract& contract) {
    contract.validate();
    return contract.notional - contract.notional * contract.recovery_rate;
}

ResolutionPnl pnl_at_resolution(const CdsContract& contract, bool credit_event,
                                int periods_paid) {
    const PremiumSchedule schedule = premium_schedule(contract);
    if (periods_paid < 0 || periods_paid > schedule.period_count) {
        throw PeriodsOutOfRange("pnl_at_resolution: periods_paid " +
                                std::to_string(periods_paid) + " outside [0, " +
                                std::to_string(schedule.period_count) + "]");
    }
    const double premiums = schedule.per_period * periods_paid;
    ResolutionPnl pnl;
    pnl.buyer = credit_event ? default_payout(contract) - premiums : -premiums;
    pnl.seller = -pnl.buyer;
    return pnl;
}

std::string to_string(BasisSignal signal) {
    switch (signal) {
        case BasisSignal::SellCdsBuyBond: return "SellCdsBuyBond";
        case BasisSignal::BuyCdsShortBond: return "BuyCdsShortBond";
        case BasisSignal::NoArbitrage: return "NoArbitrage";
    }
    return "?";
}

BasisReport basis_signal(double cds_spread, double bond_spread, double tolerance) {
    if (tolerance < 0.0) {
        throw InvalidSeries("basis_signal: tolerance must be non-negative");
    }
    BasisReport report;
    report.cds_spread = cds_spread;
    report.bond_spread = bond_spread;
    report.basis = cds_spread - bond_spread;
    if (report.basis > tolerance) {
        report.signal = BasisSignal::SellCdsBuyBond;
    } else if (report.basis < -tolerance) {
        report.signal = BasisSignal::BuyCdsShortBond;
    } else {
        report.signal = BasisSignal::NoArbitrage;
    }
    return report;
}

}  // namespace credlink
