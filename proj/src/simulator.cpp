#include "credlink/simulator.hpp"

#include <array>
#include <cmath>

#include "credlink/errors.hpp"
#include "credlink/rng.hpp"

namespace credlink {

namespace {

Matrix scalar_cov(double sd) {
    Matrix m(1, 1);
    m(0, 0) = sd * sd;
    return m;
}

void validate(const DgpSpec& spec) {
    if (spec.length <= 0) {
        throw InvalidSeries("simulate: length must be positive");
    }
    if (spec.dimension <= 0) {
        throw InvalidSeries("simulate: dimension must be positive");
    }
    if (spec.innovation_covariance.rows() != spec.dimension ||
        spec.innovation_covariance.cols() != spec.dimension) {
        throw InvalidSeries("simulate: innovation covariance shape mismatch");
    }
    if (spec.kind == DgpSpec::Kind::VarProcess) {
        for (const auto& a : spec.lag_matrices) {
            if (a.rows() != spec.dimension || a.cols() != spec.dimension) {
                throw InvalidSeries("simulate: lag matrix shape mismatch");
            }
        }
        if (spec.intercept.size() != spec.dimension) {
            throw InvalidSeries("simulate: intercept length mismatch");
        }
        if (spec.require_stable && !spec.lag_matrices.empty()) {
            const double radius =
                spectral_radius(companion_matrix(spec.lag_matrices, spec.dimension));
            if (!(radius < 1.0)) {
                throw UnstableProcess("simulate: companion spectral radius " +
                                      std::to_string(radius) + " >= 1");
            }
        }
    }
    if (spec.kind == DgpSpec::Kind::Ar1 && spec.require_stable &&
        !(std::abs(spec.ar1_coefficient) < 1.0)) {
        throw UnstableProcess("simulate: |AR(1) coefficient| >= 1");
    }
}

}  // namespace

DgpSpec DgpSpec::white_noise(int length, std::uint64_t seed, double sd) {
    DgpSpec s;
    s.kind = Kind::WhiteNoise;
    s.innovation_covariance = scalar_cov(sd);
    s.length = length;
    s.seed = seed;
    return s;
}

DgpSpec DgpSpec::random_walk(int length, std::uint64_t seed, double sd) {
    DgpSpec s;
    s.kind = Kind::RandomWalk;
    s.innovation_covariance = scalar_cov(sd);
    s.length = length;
    s.seed = seed;
    s.require_stable = false;
    return s;
}

DgpSpec DgpSpec::ar1(double coefficient, int length, std::uint64_t seed, double sd) {
    DgpSpec s;
    s.kind = Kind::Ar1;
    s.ar1_coefficient = coefficient;
    s.innovation_covariance = scalar_cov(sd);
    s.length = length;
    s.burn_in = 50;
    s.seed = seed;
    return s;
}

DgpSpec DgpSpec::var_process(std::vector<Matrix> lag_matrices, Vector intercept,
                             Matrix innovation_covariance, int length,
                             int burn_in, std::uint64_t seed, bool require_stable) {
    DgpSpec s;
    s.kind = Kind::VarProcess;
    s.dimension = static_cast<int>(intercept.size());
    s.lag_matrices = std::move(lag_matrices);
    s.intercept = std::move(intercept);
    s.innovation_covariance = std::move(innovation_covariance);
    s.length = length;
    s.burn_in = burn_in;
    s.seed = seed;
    s.require_stable = require_stable;
    return s;
}

Matrix companion_matrix(const std::vector<Matrix>& lag_matrices, int dimension) {
    const int p = static_cast<int>(lag_matrices.size());
    const int n = dimension * p;
    Matrix c = Matrix::Zero(n, n);
    for (int j = 0; j < p; ++j) {
        c.block(0, j * dimension, dimension, dimension) = lag_matrices[static_cast<std::size_t>(j)];
    }
    if (p > 1) {
        c.block(dimension, 0, n - dimension, n - dimension) =
            Matrix::Identity(n - dimension, n - dimension);
    }
    return c;
}

Matrix simulate_matrix(const DgpSpec& spec) {
    validate(spec);
    const int k = spec.dimension;
    const Matrix chol = cholesky_lower(spec.innovation_covariance);
    Rng rng(spec.seed);

    const auto draw = [&]() {
        Vector z(k);
        for (int i = 0; i < k; ++i) z(i) = rng.gaussian();
        return Vector(chol * z);
    };

    const int total = spec.length + spec.burn_in;
    Matrix out(spec.length, k);

    switch (spec.kind) {
        case DgpSpec::Kind::WhiteNoise: {
            for (int t = 0; t < total; ++t) {
                Vector e = draw();
                if (t >= spec.burn_in) out.row(t - spec.burn_in) = e.transpose();
            }
            break;
        }
        case DgpSpec::Kind::RandomWalk: {
            Vector level = Vector::Zero(k);
            for (int t = 0; t < total; ++t) {
                level += draw();
                if (t >= spec.burn_in) out.row(t - spec.burn_in) = level.transpose();
            }
            break;
        }
        case DgpSpec::Kind::Ar1: {
            Vector level = Vector::Zero(k);
            for (int t = 0; t < total; ++t) {
                level = spec.ar1_coefficient * level + draw();
                if (t >= spec.burn_in) out.row(t - spec.burn_in) = level.transpose();
            }
            break;
        }
        case DgpSpec::Kind::VarProcess: {
            const int p = static_cast<int>(spec.lag_matrices.size());
            std::vector<Vector> history(static_cast<std::size_t>(p), Vector::Zero(k));
            for (int t = 0; t < total; ++t) {
                Vector x = spec.intercept + draw();
                for (int j = 0; j < p; ++j) {
                    x += spec.lag_matrices[static_cast<std::size_t>(j)] *
                         history[static_cast<std::size_t>(j)];
                }
                for (int j = p - 1; j > 0; --j) {
                    history[static_cast<std::size_t>(j)] = history[static_cast<std::size_t>(j - 1)];
                }
                if (p > 0) history[0] = x;
                if (t >= spec.burn_in) out.row(t - spec.burn_in) = x.transpose();
            }
            break;
        }
    }
    return out;
}

AlignedPanel simulate(const DgpSpec& spec, Date start, const std::string& entity_id) {
    if (spec.dimension != 2 && spec.dimension != 3) {
        throw InvalidSeries("simulate: panels require dimension 2 or 3");
    }
    const Matrix values = simulate_matrix(spec);
    std::vector<Date> dates;
    dates.reserve(static_cast<std::size_t>(spec.length));
    Date d = start;
    while (dates.size() < static_cast<std::size_t>(spec.length)) {
        if (d.is_weekday()) dates.push_back(d);
        d = d.plus_days(1);
    }
    std::vector<std::string> columns =
        spec.dimension == 3 ? std::vector<std::string>{"RS", "DBOND", "DCDS"}
                            : std::vector<std::string>{"RS", "DCDS"};
    return AlignedPanel(entity_id, std::move(dates), std::move(columns), values);
}

// ---------------------------------------------------------------------------
// Paper-shaped batch
// ---------------------------------------------------------------------------

namespace {

struct EntityProfile {
    const char* id;
    const char* name;
    const char* sector;
    double market_cap;    // EUR at the 2007-04-23 reference date
    int start_y, start_m, start_d;
    double rs_sd;         // daily share-return volatility
    double spread_scale;  // multiplier on spread-change volatility
    bool rs_drives_dcds;
    bool dcds_drives_dbond;
    double price0;
    double cds_mid0;      // bp
    double bond_spread0;  // bp
};

// Thirteen-entity demo universe with a fixed capitalization breakdown.
// Two entities are left uncoupled in each direction pattern so batch
// causality totals land at 11 and 8.
constexpr std::array<EntityProfile, 13> kEntities{{
    {"ALC", "Alcatel", "Communications Equipment", 21480016011.30, 2001, 6, 26,
     0.035, 1.8, true, true, 18.0, 180.0, 220.0},
    {"SAN", "Sanofi-Aventis", "Pharmaceutical Industry", 90959774639.53, 2001, 9, 4,
     0.018, 0.7, true, false, 62.0, 28.0, 40.0},
    {"BNP", "BNP Paribas", "Banks", 79761110895.00, 2001, 9, 3,
     0.020, 0.8, true, false, 48.0, 24.0, 35.0},
    {"BOU", "Bouygues", "Construction and Related Machinery", 20043133894.21, 2002, 6, 19,
     0.020, 1.0, true, true, 26.0, 60.0, 80.0},
    {"CAR", "Carrefour", "Grocery Stores", 40574200332.96, 2001, 9, 4,
     0.018, 0.8, true, false, 42.0, 35.0, 55.0},
    {"DAN", "Danone", "Packaged Foods", 32396792805.74, 2001, 9, 4,
     0.015, 0.7, false, true, 52.0, 26.0, 38.0},
    {"FTE", "France Telecom", "Integrated Telecommunication Services", 54713063223.00, 2001, 8, 29,
     0.030, 1.5, true, true, 30.0, 150.0, 190.0},
    {"PPR", "Pinault PR", "Department Stores", 16314170907.18, 2002, 3, 15,
     0.022, 1.2, true, true, 75.0, 85.0, 110.0},
    {"RHA", "Rhodia", "Specialty Chemicals", 3588474798.52, 2002, 3, 25,
     0.028, 2.2, true, true, 9.0, 320.0, 380.0},
    {"REN", "Renault", "Automobile", 26539043170.52, 2001, 8, 29,
     0.022, 1.0, true, true, 45.0, 55.0, 75.0},
    {"SGE", "Societe Generale", "Banks", 69836607458.70, 2001, 9, 3,
     0.020, 0.9, true, true, 55.0, 25.0, 36.0},
    {"SOD", "Sodexho", "Restaurants", 8981811806.24, 2002, 7, 22,
     0.020, 1.1, true, false, 24.0, 45.0, 60.0},
    {"TOT", "Total", "Integrated Oil & Gas", 129927028347.90, 2001, 9, 4,
     0.016, 0.6, false, false, 50.0, 18.0, 28.0},
}};

constexpr int kVarOrder = 5;
constexpr int kBurnIn = 100;

// Lag profiles for the entity processes, in (RS, DBOND, DCDS) order.
constexpr std::array<double, 5> kDbondOwn{-0.43, -0.27, -0.18, -0.11, -0.04};
constexpr std::array<double, 5> kDcdsOwn{-0.05, -0.02, 0.00, -0.02, 0.05};
constexpr std::array<double, 5> kRsToDcds{-34.0, -29.0, -10.0, -25.0, 2.5};
constexpr std::array<double, 5> kDcdsToDbond{0.30, 0.15, 0.10, 0.05, 0.0};

constexpr double kBaseRsSd = 0.02;
constexpr double kDbondInnovSd = 8.0;
constexpr double kDcdsInnovSd = 5.8;

DgpSpec entity_spec(const EntityProfile& e, const DemoBatchOptions& options,
                    std::uint64_t seed, int length) {
    std::vector<Matrix> lags;
    for (int j = 0; j < kVarOrder; ++j) {
        Matrix a = Matrix::Zero(3, 3);
        a(1, 1) = kDbondOwn[static_cast<std::size_t>(j)];
        a(2, 2) = kDcdsOwn[static_cast<std::size_t>(j)];
        if (e.rs_drives_dcds) {
            // Rescaled so the implied t statistics match across entities.
            a(2, 0) = options.rs_to_dcds_scale * kRsToDcds[static_cast<std::size_t>(j)] *
                      e.spread_scale * (kBaseRsSd / e.rs_sd);
        }
        if (e.dcds_drives_dbond) {
            a(1, 2) = options.dcds_to_dbond_scale * kDcdsToDbond[static_cast<std::size_t>(j)];
        }
        lags.push_back(std::move(a));
    }

    Vector sds(3);
    sds << e.rs_sd, kDbondInnovSd * e.spread_scale, kDcdsInnovSd * e.spread_scale;
    Matrix corr(3, 3);
    corr << 1.00, -0.08, -0.12,
           -0.08, 1.00, 0.07,
           -0.12, 0.07, 1.00;
    const Matrix cov = sds.asDiagonal() * corr * sds.asDiagonal();

    return DgpSpec::var_process(std::move(lags), Vector::Zero(3), cov, length,
                                kBurnIn, seed);
}

std::uint64_t entity_seed(const DemoBatchOptions& options, std::size_t index) {
    return Rng(options.seed).fork(index).next_u64();
}

}  // namespace

Date demo_bond_end() { return Date(2007, 2, 8); }
Date demo_window_end() { return Date(2008, 2, 21); }

DemoBatch demo_batch(const DemoBatchOptions& options) {
    DemoBatch batch;
    for (std::size_t i = 0; i < kEntities.size(); ++i) {
        const auto& e = kEntities[i];
        const Date start(e.start_y, e.start_m, e.start_d);
        const auto grid = weekday_grid(start, demo_window_end());
        // Grid day 0 holds the initial price/spread levels; the panel of
        // returns and changes lives on days 1..end.
        const int length = static_cast<int>(grid.size()) - 1;
        const DgpSpec spec = entity_spec(e, options, entity_seed(options, i), length);
        const Matrix values = simulate_matrix(spec);

        EntityRecord record{e.id, e.name, e.sector, e.market_cap, start,
                            demo_window_end()};
        record.validate();

        AlignedPanel full(e.id, std::vector<Date>(grid.begin() + 1, grid.end()),
                          {"RS", "DBOND", "DCDS"}, values);
        batch.panels.push_back(full.window(start, demo_bond_end()));
        batch.entities.push_back(std::move(record));
    }
    return batch;
}

std::vector<SimulatedEntity> demo_batch_raw(const DemoBatchOptions& options) {
    std::vector<SimulatedEntity> out;
    for (std::size_t i = 0; i < kEntities.size(); ++i) {
        const auto& e = kEntities[i];
        const Date start(e.start_y, e.start_m, e.start_d);
        const auto grid = weekday_grid(start, demo_window_end());
        const int length = static_cast<int>(grid.size()) - 1;
        const std::uint64_t seed = entity_seed(options, i);
        const DgpSpec spec = entity_spec(e, options, seed, length);
        const Matrix values = simulate_matrix(spec);

        // Integrate the stationary variables back into quoted levels.
        std::vector<double> price(grid.size()), mid(grid.size()), spread(grid.size());
        price[0] = e.price0;
        mid[0] = e.cds_mid0;
        spread[0] = e.bond_spread0;
        for (std::size_t t = 1; t < grid.size(); ++t) {
            const auto r = static_cast<Eigen::Index>(t - 1);
            price[t] = price[t - 1] * std::exp(values(r, 0));
            spread[t] = spread[t - 1] + values(r, 1);
            mid[t] = mid[t - 1] + values(r, 2);
        }

        // Swap curve: slow drift drawn after the panel so the panel stream is
        // unchanged; quoted in basis points.
        Rng swap_rng = Rng(seed).fork(0x5157);
        std::vector<double> swap(grid.size());
        swap[0] = 440.0;
        for (std::size_t t = 1; t < grid.size(); ++t) {
            swap[t] = swap[t - 1] + 0.8 * swap_rng.gaussian();
        }

        const double half_quote = 1.0;  // 2 bp bid/ask width
        std::vector<Date> bond_dates;
        std::vector<double> yield_values, swap_values;
        std::vector<double> bid(grid.size()), ask(grid.size());
        for (std::size_t t = 0; t < grid.size(); ++t) {
            bid[t] = mid[t] - half_quote;
            ask[t] = mid[t] + half_quote;
            if (grid[t] <= demo_bond_end()) {
                bond_dates.push_back(grid[t]);
                yield_values.push_back(swap[t] + spread[t]);
                swap_values.push_back(swap[t]);
            }
        }

        SimulatedEntity sim;
        sim.record = EntityRecord{e.id, e.name, e.sector, e.market_cap, start,
                                  demo_window_end()};
        sim.series.emplace_back(e.id, FieldKind::SharePrice, grid, std::move(price));
        sim.series.emplace_back(e.id, FieldKind::CdsBid, grid, std::move(bid));
        sim.series.emplace_back(e.id, FieldKind::CdsAsk, grid, std::move(ask));
        sim.series.emplace_back(e.id, FieldKind::BondYield, bond_dates, std::move(yield_values));
        sim.series.emplace_back(e.id, FieldKind::SwapRate5y, std::move(bond_dates),
                                std::move(swap_values));
        out.push_back(std::move(sim));
    }
    return out;
}

}  // namespace credlink
