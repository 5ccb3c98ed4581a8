#pragma once

#include <string>
#include <vector>

namespace credlink {

// Plain-vanilla single-name CDS contract. Premiums are flat: the annual
// spread is split evenly across payment periods, with no day-count or
// discounting conventions.
struct CdsContract {
    std::string reference_entity;
    double notional = 0.0;        // currency units, > 0
    double spread_bp = 0.0;       // annual premium in basis points, >= 0
    double tenor_years = 0.0;     // > 0
    int payments_per_year = 4;    // quarterly by default
    double recovery_rate = 0.0;   // in [0, 1]

    void validate() const;
};

struct PremiumSchedule {
    double per_period = 0.0;
    int period_count = 0;
    double total = 0.0;
    std::vector<std::pair<int, double>> payments;  // (period index, amount)
};

// Periodic premium leg: per-period payment, full schedule, and total paid
// over the contract life.
PremiumSchedule premium_schedule(const CdsContract& contract);

// Protection leg on a credit event: notional x (1 - recovery).
double default_payout(const CdsContract& contract);

// Net cash positions at contract resolution. Zero-sum by construction.
struct ResolutionPnl {
    double buyer = 0.0;
    double seller = 0.0;
};
ResolutionPnl pnl_at_resolution(const CdsContract& contract, bool credit_event,
                                int periods_paid);

// CDS-vs-bond-spread arbitrage signal.
enum class BasisSignal { SellCdsBuyBond, BuyCdsShortBond, NoArbitrage };

struct BasisReport {
    double cds_spread = 0.0;
    double bond_spread = 0.0;
    double basis = 0.0;  // cds - bond
    BasisSignal signal = BasisSignal::NoArbitrage;
};

std::string to_string(BasisSignal signal);
BasisReport basis_signal(double cds_spread, double bond_spread,
                         double tolerance = 1.0);

}  // namespace credlink
