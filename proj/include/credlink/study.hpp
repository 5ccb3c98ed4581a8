#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "credlink/cds.hpp"
#include "credlink/dates.hpp"
#include "credlink/var_engine.hpp"

namespace credlink {

// Batch-study configuration. Defaults mirror the study design: lag order 5,
// one calendar break at 2004-01-01, the 3-variable sample ending 2007-02-08
// and the 2-variable sample ending 2008-02-21.
struct StudyConfig {
    std::string observations_path;
    std::string entities_path;
    std::string output_dir = "out";
    int lag_order = 5;
    std::vector<Date> breakpoints = {Date(2004, 1, 1)};
    double significance = 0.05;
    int irf_horizon = 15;
    Date var1_end = Date(2007, 2, 8);
    Date var2_end = Date(2008, 2, 21);
    std::uint64_t seed = 0;  // consumed by the simulate command
    int threads = 0;         // 0 = hardware concurrency

    void validate() const;
};

StudyConfig study_config_from_json(const nlohmann::json& j);
nlohmann::json study_config_to_json(const StudyConfig& config);

// Runs the full pipeline on both VAR systems for every period, writes the
// report bundle under config.output_dir, and returns the manifest that was
// written to manifest.json.
nlohmann::json run_study(const StudyConfig& config);

// Tabular serialization of one fit: coefficient/t rows keyed by regressor
// plus the per-equation summary block.
nlohmann::json var_fit_to_json(const VarFit& fit);

// CDS contract report: schedule, payout, and both resolution scenarios.
struct CdsRunResult {
    CdsContract contract;
    PremiumSchedule schedule;
    double payout = 0.0;
    ResolutionPnl no_event;          // held to maturity, no credit event
    ResolutionPnl event_immediate;   // credit event before any premium
    nlohmann::json report;
};
CdsRunResult run_cds(const std::string& contract_json_path);
CdsContract cds_contract_from_json(const nlohmann::json& j);

// Simulation command: renders the DGP described by the JSON spec as an
// ingestion-format dataset (observations.csv + entities.csv) in out_dir.
void run_simulate(const std::string& spec_json_path, const std::string& out_dir);

}  // namespace credlink
