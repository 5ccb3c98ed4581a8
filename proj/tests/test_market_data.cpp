#include "credlink/market_data.hpp"

#include <cmath>

#include "doctest.h"

#include "credlink/errors.hpp"
#include "credlink/linalg.hpp"
#include "credlink/rng.hpp"
#include "credlink/simulator.hpp"
#include "test_helpers.hpp"

using namespace credlink;
using credlink::testing::make_series;

TEST_CASE("log_return on a constant series is zero") {
    const auto rs = log_return(make_series({100.0, 100.0, 100.0}, FieldKind::SharePrice));
    REQUIRE(rs.size() == 2);
    CHECK(rs.values()[0] == 0.0);
    CHECK(rs.values()[1] == 0.0);
}

TEST_CASE("log_return matches the high-precision logarithm") {
    const auto rs = log_return(make_series({100.0, 105.0}, FieldKind::SharePrice));
    // ln(1.05) to 20 significant digits: 0.048790164169432003065
    CHECK(rs.values()[0] == doctest::Approx(0.048790164169432003).epsilon(1e-14));
}

TEST_CASE("log_return telescopes to ln(P_T/P_0)") {
    Rng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> prices;
        double p = 50.0 + 100.0 * rng.uniform();
        for (int t = 0; t < 40; ++t) {
            prices.push_back(p);
            p *= std::exp(0.03 * rng.gaussian());
        }
        const auto rs = log_return(make_series(prices, FieldKind::SharePrice));
        double sum = 0.0;
        for (double v : rs.values()) sum += v;
        const double expected = std::log(prices.back() / prices.front());
        CHECK(sum == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("log_return rejects corrupt input") {
    CHECK_THROWS_AS(log_return(make_series({100.0})), TooShort);
    const ObservationSeries bad("E1", std::nullopt,
                                {Date(2001, 1, 1), Date(2001, 1, 2)}, {100.0, -3.0});
    CHECK_THROWS_AS(log_return(bad), NonPositivePrice);
    CHECK_THROWS_AS(make_series({100.0, -3.0}, FieldKind::SharePrice),
                    NonPositivePrice);
}

TEST_CASE("mid_cds_spread averages the touch") {
    const auto mid = mid_cds_spread(make_series({23.0}, FieldKind::CdsBid),
                                    make_series({24.0}, FieldKind::CdsAsk));
    CHECK(mid.values()[0] == 23.5);

    const auto degenerate = mid_cds_spread(make_series({42.0}, FieldKind::CdsBid),
                                           make_series({42.0}, FieldKind::CdsAsk));
    CHECK(degenerate.values()[0] == 42.0);
}

TEST_CASE("mid_cds_spread drops unshared dates and rejects disjoint grids") {
    const auto bid = make_series({10.0, 11.0, 12.0}, FieldKind::CdsBid);
    const auto ask = make_series({14.0, 15.0}, FieldKind::CdsAsk,
                                 "E1", Date(2001, 1, 2));
    const auto mid = mid_cds_spread(bid, ask);
    REQUIRE(mid.size() == 2);  // Jan 2 and Jan 3 only
    CHECK(mid.values()[0] == 12.5);
    CHECK(mid.values()[1] == 13.5);

    const auto far = make_series({1.0, 2.0}, FieldKind::CdsAsk, "E1", Date(2005, 1, 3));
    CHECK_THROWS_AS(mid_cds_spread(bid, far), EmptyOverlap);
}

TEST_CASE("mid lies between bid and ask pointwise") {
    Rng rng(12);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> bid(20), ask(20);
        for (std::size_t i = 0; i < bid.size(); ++i) {
            bid[i] = 20.0 + 5.0 * rng.gaussian();
            ask[i] = bid[i] + 3.0 * rng.uniform();
        }
        const auto mid = mid_cds_spread(make_series(bid, FieldKind::CdsBid),
                                        make_series(ask, FieldKind::CdsAsk));
        for (std::size_t i = 0; i < mid.size(); ++i) {
            CHECK(mid.values()[i] >= bid[i]);
            CHECK(mid.values()[i] <= ask[i]);
        }
    }
}

TEST_CASE("bond_spread subtracts the swap rate") {
    const auto spread = bond_spread(make_series({5.0}, FieldKind::BondYield),
                                    make_series({4.2}, FieldKind::SwapRate5y));
    CHECK(spread.values()[0] == doctest::Approx(0.8).epsilon(1e-15));

    const auto flat = bond_spread(make_series({4.0, 4.0}, FieldKind::BondYield),
                                  make_series({4.0, 4.0}, FieldKind::SwapRate5y));
    CHECK(flat.values()[0] == 0.0);

    CHECK_THROWS_AS(bond_spread(make_series({5.0}, FieldKind::BondYield),
                                make_series({4.0}, FieldKind::SwapRate5y, "E1",
                                            Date(2003, 1, 1))),
                    EmptyOverlap);
}

TEST_CASE("interpolate_yield is linear in maturity") {
    CHECK(interpolate_yield({4.0, 4.0}, {6.0, 5.0}, 5.0) == doctest::Approx(4.5));
    CHECK(interpolate_yield({4.0, 3.3}, {6.0, 3.3}, 5.0) == doctest::Approx(3.3));
    CHECK_THROWS_AS(interpolate_yield({4.0, 4.0}, {6.0, 5.0}, 7.0),
                    TargetOutsideBracket);
    CHECK_THROWS_AS(interpolate_yield({4.0, 4.0}, {6.0, 5.0}, 4.0),
                    TargetOutsideBracket);
}

TEST_CASE("interpolate_yield is monotone in target maturity") {
    Rng rng(13);
    for (int rep = 0; rep < 200; ++rep) {
        const double y_lo = 2.0 + rng.uniform();
        const double y_hi = y_lo + 2.0 * rng.uniform();  // increasing bracket
        double prev = y_lo;
        for (double target = 4.2; target < 6.0; target += 0.2) {
            const double y = interpolate_yield({4.0, y_lo}, {6.0, y_hi}, target);
            CHECK(y >= prev - 1e-12);
            CHECK(y >= y_lo);
            CHECK(y <= y_hi);
            prev = y;
        }
    }
}

TEST_CASE("first_difference and cumulative sum invert each other") {
    const auto diff = first_difference(make_series({10.0, 12.0, 11.0}));
    REQUIRE(diff.size() == 2);
    CHECK(diff.values()[0] == 2.0);
    CHECK(diff.values()[1] == -1.0);

    const auto flat = first_difference(make_series({7.0, 7.0, 7.0, 7.0}));
    for (double v : flat.values()) CHECK(v == 0.0);

    CHECK_THROWS_AS(first_difference(make_series({1.0})), TooShort);

    Rng rng(14);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> x(30);
        for (auto& v : x) v = 10.0 * rng.gaussian();
        const auto d = first_difference(make_series(x));
        double level = x[0];
        for (std::size_t t = 0; t < d.size(); ++t) {
            level += d.values()[t];
            // Exact up to float rounding in the running sum.
            CHECK(level == doctest::Approx(x[t + 1]).epsilon(1e-12));
        }
    }
}

TEST_CASE("align inner-joins on dates in canonical column order") {
    const auto rs = make_series({0.01, 0.02, 0.03}, std::nullopt);
    const auto dcds = make_series({1.0, 2.0, 3.0}, std::nullopt);
    const auto dbond = make_series({5.0, 6.0, 7.0}, std::nullopt);

    SUBCASE("identical grids keep every row, order forced") {
        const auto panel = align("E1", {{"DCDS", dcds}, {"RS", rs}, {"DBOND", dbond}});
        CHECK(panel.rows() == 3);
        CHECK(panel.columns() == std::vector<std::string>{"RS", "DBOND", "DCDS"});
        CHECK(panel.values()(1, 0) == 0.02);
        CHECK(panel.values()(1, 1) == 6.0);
        CHECK(panel.values()(1, 2) == 2.0);
    }

    SUBCASE("a date missing from one series drops that row") {
        // Drop the middle date from DBOND.
        const ObservationSeries gappy("E1", std::nullopt,
                                      {rs.dates()[0], rs.dates()[2]}, {5.0, 7.0});
        const auto panel = align("E1", {{"RS", rs}, {"DBOND", gappy}, {"DCDS", dcds}});
        CHECK(panel.rows() == 2);
        CHECK(panel.values()(1, 0) == 0.03);
    }

    SUBCASE("disjoint grids throw") {
        const auto far = make_series({1.0, 2.0}, std::nullopt, "E1", Date(2006, 1, 2));
        CHECK_THROWS_AS(align("E1", {{"RS", rs}, {"DCDS", far}}), EmptyOverlap);
    }

    SUBCASE("mixed entities are rejected") {
        const auto other = make_series({1.0, 2.0, 3.0}, std::nullopt, "E2");
        CHECK_THROWS_AS(align("E1", {{"RS", rs}, {"DCDS", other}}), InvalidSeries);
    }
}

TEST_CASE("correlation_matrix basics") {
    Matrix values(64, 2);
    Rng rng(15);
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        values(i, 0) = rng.gaussian();
        values(i, 1) = -values(i, 0);
    }
    const auto panel = credlink::testing::make_panel(values, {"RS", "DCDS"});
    const Matrix corr = correlation_matrix(panel);
    CHECK(corr(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(corr(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(corr(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));

    Matrix flat = values;
    flat.col(1).setConstant(3.0);
    CHECK_THROWS_AS(
        correlation_matrix(credlink::testing::make_panel(flat, {"RS", "DCDS"})),
        ZeroVariance);
}

TEST_CASE("correlation matrices are symmetric, unit-diagonal, and PSD") {
    Rng rng(16);
    for (int rep = 0; rep < 200; ++rep) {
        const int t = 20 + static_cast<int>(rng.uniform() * 60);
        Matrix values(t, 3);
        for (Eigen::Index i = 0; i < t; ++i) {
            const double common = rng.gaussian();
            values(i, 0) = common + 0.7 * rng.gaussian();
            values(i, 1) = -0.4 * common + rng.gaussian();
            values(i, 2) = 0.2 * common + rng.gaussian();
        }
        const Matrix corr = correlation_matrix(
            credlink::testing::make_panel(values, {"RS", "DBOND", "DCDS"}));
        CHECK((corr - corr.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
        for (int d = 0; d < 3; ++d) CHECK(corr(d, d) == 1.0);
        CHECK(min_symmetric_eigenvalue(corr) > -1e-10);
    }
}

TEST_CASE("demo-batch correlation signs on synthetic panels") {
    const DemoBatch batch = demo_batch();
    double rs_dcds = 0.0, dbond_dcds = 0.0;
    for (const auto& panel : batch.panels) {
        const Matrix corr = correlation_matrix(panel);
        rs_dcds += corr(0, 2);
        dbond_dcds += corr(1, 2);
    }
    rs_dcds /= static_cast<double>(batch.panels.size());
    dbond_dcds /= static_cast<double>(batch.panels.size());
    CHECK(rs_dcds < 0.0);      // share returns move against CDS changes
    CHECK(dbond_dcds > 0.0);   // the two credit spreads co-move
}

TEST_CASE("autocorrelation of seeded noise is small at every lag") {
    const auto noise = credlink::testing::gaussian_vector(10000, 17);
    const auto acf = autocorrelation(noise, 5);
    REQUIRE(acf.size() == 5);
    for (double rho : acf) {
        CHECK(std::abs(rho) < 0.05);
        CHECK(rho >= -1.0);
        CHECK(rho <= 1.0);
    }
}

TEST_CASE("autocorrelation of an AR(1) with coefficient 0.5 is about 0.5") {
    const auto spec = DgpSpec::ar1(0.5, 20000, 18);
    const Matrix x = simulate_matrix(spec);
    std::vector<double> series(x.data(), x.data() + x.rows());
    const auto acf = autocorrelation(series, 3);
    CHECK(acf[0] == doctest::Approx(0.5).epsilon(0.05));
    CHECK(acf[1] == doctest::Approx(0.25).epsilon(0.12));
}

TEST_CASE("autocorrelation error paths") {
    std::vector<double> constant(50, 4.0);
    CHECK_THROWS_AS(autocorrelation(constant, 5), ZeroVariance);
    std::vector<double> tiny{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(autocorrelation(tiny, 5), TooShort);
}

TEST_CASE("build_entity_panel runs the full construction") {
    // Prices, quotes, and curves on one weekday grid; panel rows start at the
    // second date because of the differencing.
    const auto price = make_series({100.0, 105.0, 103.0, 104.0}, FieldKind::SharePrice);
    const auto bid = make_series({20.0, 21.0, 22.0, 23.0}, FieldKind::CdsBid);
    const auto ask = make_series({22.0, 23.0, 24.0, 25.0}, FieldKind::CdsAsk);
    const auto yield = make_series({520.0, 530.0, 525.0, 540.0}, FieldKind::BondYield);
    const auto swap = make_series({440.0, 441.0, 442.0, 443.0}, FieldKind::SwapRate5y);

    EntitySeriesBundle bundle;
    bundle.entity_id = "E1";
    bundle.share_price = &price;
    bundle.cds_bid = &bid;
    bundle.cds_ask = &ask;
    bundle.bond_yield = &yield;
    bundle.swap_rate = &swap;

    const auto panel = build_entity_panel(bundle, true);
    CHECK(panel.rows() == 3);
    CHECK(panel.columns() == std::vector<std::string>{"RS", "DBOND", "DCDS"});
    CHECK(panel.values()(0, 0) == doctest::Approx(std::log(105.0 / 100.0)));
    CHECK(panel.values()(0, 1) == doctest::Approx((530.0 - 441.0) - (520.0 - 440.0)));
    CHECK(panel.values()(0, 2) == doctest::Approx(1.0));  // mid moves 21->22

    const auto two_var = build_entity_panel(bundle, false);
    CHECK(two_var.columns() == std::vector<std::string>{"RS", "DCDS"});

    bundle.bond_yield = nullptr;
    CHECK_THROWS_AS(build_entity_panel(bundle, true), InvalidSeries);
}
