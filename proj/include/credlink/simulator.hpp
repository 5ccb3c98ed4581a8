#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "credlink/series.hpp"

namespace credlink {

// Seeded data-generating process. Output is a deterministic function of the
// spec, including the seed.
struct DgpSpec {
    enum class Kind { VarProcess, RandomWalk, WhiteNoise, Ar1 };

    Kind kind = Kind::WhiteNoise;
    int dimension = 1;
    std::vector<Matrix> lag_matrices;  // VarProcess: p matrices, each k x k
    Vector intercept;                  // VarProcess: k
    double ar1_coefficient = 0.0;      // Ar1
    Matrix innovation_covariance;      // k x k SPD
    int length = 0;
    int burn_in = 0;
    std::uint64_t seed = 0;
    bool require_stable = true;        // gate for VarProcess / Ar1

    static DgpSpec white_noise(int length, std::uint64_t seed, double sd = 1.0);
    static DgpSpec random_walk(int length, std::uint64_t seed, double sd = 1.0);
    static DgpSpec ar1(double coefficient, int length, std::uint64_t seed,
                       double sd = 1.0);
    static DgpSpec var_process(std::vector<Matrix> lag_matrices, Vector intercept,
                               Matrix innovation_covariance, int length,
                               int burn_in, std::uint64_t seed,
                               bool require_stable = true);
};

// Companion form of the lag matrices; spectral radius < 1 <=> stable.
Matrix companion_matrix(const std::vector<Matrix>& lag_matrices, int dimension);

// Raw simulated values, length x k.
Matrix simulate_matrix(const DgpSpec& spec);

// Simulated values wrapped as an aligned panel on a weekday grid starting at
// `start`. Column names follow the canonical ordering, so k must be 2 or 3.
AlignedPanel simulate(const DgpSpec& spec, Date start = Date(2001, 1, 1),
                      const std::string& entity_id = "SIM");

// Thirteen-entity synthetic batch shaped like the study universe: staggered
// observation windows, a fixed capitalization breakdown, and a configurable
// causal structure. By default the share-return ->
// CDS-change coupling is active for 11 of 13 entities and the CDS-change ->
// bond-change coupling for 8 of 13.
struct DemoBatchOptions {
    std::uint64_t seed = 20010104;
    double rs_to_dcds_scale = 1.0;    // 0 disables the coupling everywhere
    double dcds_to_dbond_scale = 1.0;
};

struct DemoBatch {
    std::vector<EntityRecord> entities;
    std::vector<AlignedPanel> panels;  // k=3, truncated at the bond-data end
};

DemoBatch demo_batch(const DemoBatchOptions& options = {});

// Same batch rendered as raw ingestion-format series over each entity's full
// window: share prices, CDS bid/ask, bond yield and swap rate (the bond
// fields stop at the bond-data end date). Spread-like fields are quoted in
// basis points.
struct SimulatedEntity {
    EntityRecord record;
    std::vector<ObservationSeries> series;
};

std::vector<SimulatedEntity> demo_batch_raw(const DemoBatchOptions& options = {});

// Sample end dates mirrored by the study defaults.
Date demo_bond_end();    // last bond observation
Date demo_window_end();  // last share/CDS observation

}  // namespace credlink
