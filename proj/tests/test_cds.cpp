#include "credlink/cds.hpp"

#include "doctest.h"

#include "credlink/errors.hpp"
#include "credlink/rng.hpp"

using namespace credlink;

namespace {

CdsContract france_telecom_2007() {
    CdsContract c;
    c.reference_entity = "FTE";
    c.notional = 10'000'000.0;
    c.spread_bp = 23.5;
    c.tenor_years = 5.0;
    c.payments_per_year = 4;
    c.recovery_rate = 0.40;
    return c;
}

CdsContract france_telecom_2002() {
    CdsContract c = france_telecom_2007();
    c.spread_bp = 730.0;
    return c;
}

}  // namespace

TEST_CASE("quarterly premium on the 23.5 bp five-year contract") {
    const auto schedule = premium_schedule(france_telecom_2007());
    CHECK(schedule.per_period == 5875.0);
    CHECK(schedule.period_count == 20);
    CHECK(schedule.total == 117500.0);
    REQUIRE(schedule.payments.size() == 20);
    CHECK(schedule.payments.front().first == 1);
    CHECK(schedule.payments.back().first == 20);
    for (const auto& [index, amount] : schedule.payments) CHECK(amount == 5875.0);
}

TEST_CASE("quarterly premium on the distressed 730 bp quote") {
    const auto schedule = premium_schedule(france_telecom_2002());
    CHECK(schedule.per_period == 182500.0);
    CHECK(schedule.total == 3650000.0);
}

TEST_CASE("zero spread means zero payments") {
    CdsContract c = france_telecom_2007();
    c.spread_bp = 0.0;
    const auto schedule = premium_schedule(c);
    CHECK(schedule.per_period == 0.0);
    CHECK(schedule.total == 0.0);
}

TEST_CASE("schedule rejects fractional period counts") {
    CdsContract c = france_telecom_2007();
    c.tenor_years = 5.1;
    CHECK_THROWS_AS(premium_schedule(c), NonIntegralPeriodCount);
    c.tenor_years = 4.75;  // 19 quarters is fine
    CHECK(premium_schedule(c).period_count == 19);
}

TEST_CASE("premium total is linear in notional and spread") {
    Rng rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        CdsContract c = france_telecom_2007();
        c.notional = 1e6 + rng.uniform() * 5e7;
        c.spread_bp = rng.uniform() * 500.0;
        const double base = premium_schedule(c).total;

        CdsContract doubled_notional = c;
        doubled_notional.notional *= 2.0;
        CHECK(premium_schedule(doubled_notional).total ==
              doctest::Approx(2.0 * base).epsilon(1e-12));

        CdsContract tripled_spread = c;
        tripled_spread.spread_bp *= 3.0;
        CHECK(premium_schedule(tripled_spread).total ==
              doctest::Approx(3.0 * base).epsilon(1e-12));
    }
}

TEST_CASE("default payout is notional times the loss fraction") {
    CHECK(default_payout(france_telecom_2007()) == 6000000.0);

    CdsContract full = france_telecom_2007();
    full.recovery_rate = 1.0;
    CHECK(default_payout(full) == 0.0);

    CdsContract none = france_telecom_2007();
    none.recovery_rate = 0.0;
    CHECK(default_payout(none) == 10000000.0);
}

TEST_CASE("resolution P&L on the worked contract") {
    const CdsContract c = france_telecom_2007();

    const auto survived = pnl_at_resolution(c, false, 20);
    CHECK(survived.buyer == -117500.0);
    CHECK(survived.seller == 117500.0);

    const auto immediate = pnl_at_resolution(c, true, 0);
    CHECK(immediate.buyer == 6000000.0);
    CHECK(immediate.seller == -6000000.0);

    CHECK_THROWS_AS(pnl_at_resolution(c, false, 21), PeriodsOutOfRange);
    CHECK_THROWS_AS(pnl_at_resolution(c, true, -1), PeriodsOutOfRange);
}

TEST_CASE("P&L is zero-sum for every scenario") {
    Rng rng(8);
    for (int rep = 0; rep < 200; ++rep) {
        CdsContract c;
        c.reference_entity = "X";
        c.notional = 1e5 + rng.uniform() * 1e8;
        c.spread_bp = rng.uniform() * 800.0;
        c.tenor_years = 1.0 + double(static_cast<int>(rng.uniform() * 9.0));
        c.payments_per_year = 1 + static_cast<int>(rng.uniform() * 4.0);
        c.recovery_rate = rng.uniform();
        const int periods = static_cast<int>(c.tenor_years) * c.payments_per_year;
        const bool event = rng.uniform() < 0.5;
        const int paid = static_cast<int>(rng.uniform() * (periods + 1));
        const auto pnl = pnl_at_resolution(c, event, paid);
        CHECK(pnl.buyer + pnl.seller == 0.0);
    }
}

TEST_CASE("contract invariants are enforced") {
    CdsContract c = france_telecom_2007();
    c.notional = 0.0;
    CHECK_THROWS_AS(premium_schedule(c), InvalidSeries);
    c = france_telecom_2007();
    c.recovery_rate = 1.2;
    CHECK_THROWS_AS(default_payout(c), InvalidSeries);
    c = france_telecom_2007();
    c.spread_bp = -1.0;
    CHECK_THROWS_AS(premium_schedule(c), InvalidSeries);
}

TEST_CASE("basis signal classifies the arbitrage direction") {
    const auto wide = basis_signal(50.0, 30.0, 1.0);
    CHECK(wide.basis == 20.0);
    CHECK(wide.signal == BasisSignal::SellCdsBuyBond);

    const auto tight = basis_signal(10.0, 40.0, 1.0);
    CHECK(tight.basis == -30.0);
    CHECK(tight.signal == BasisSignal::BuyCdsShortBond);

    const auto flat = basis_signal(25.0, 25.0, 1.0);
    CHECK(flat.basis == 0.0);
    CHECK(flat.signal == BasisSignal::NoArbitrage);

    // Within tolerance counts as no arbitrage.
    CHECK(basis_signal(25.5, 25.0, 1.0).signal == BasisSignal::NoArbitrage);
}

TEST_CASE("basis signal is antisymmetric") {
    Rng rng(9);
    for (int rep = 0; rep < 200; ++rep) {
        const double cds = rng.uniform() * 200.0;
        const double bond = rng.uniform() * 200.0;
        const double tol = rng.uniform() * 5.0;
        const auto fwd = basis_signal(cds, bond, tol);
        const auto rev = basis_signal(bond, cds, tol);
        CHECK(fwd.basis == -rev.basis);
        if (fwd.signal == BasisSignal::SellCdsBuyBond) {
            CHECK(rev.signal == BasisSignal::BuyCdsShortBond);
        } else if (fwd.signal == BasisSignal::BuyCdsShortBond) {
            CHECK(rev.signal == BasisSignal::SellCdsBuyBond);
        } else {
            CHECK(rev.signal == BasisSignal::NoArbitrage);
        }
    }
}
