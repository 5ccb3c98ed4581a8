#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "credlink/csv_io.hpp"
#include "credlink/errors.hpp"
#include "credlink/study.hpp"

namespace {

using credlink::Date;
using credlink::StudyConfig;
using nlohmann::json;

int run_study_command(const std::string& config_path,
                      const std::vector<std::pair<std::string, std::string>>& overrides) {
    json j = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            throw credlink::ParseError("cannot open '" + config_path + "'", 0, 0);
        }
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw credlink::ParseError(std::string("bad config JSON: ") + e.what(), 0,
                                       e.byte);
        }
    }
    StudyConfig config = credlink::study_config_from_json(j);
    for (const auto& [key, value] : overrides) {
        if (key == "observations") config.observations_path = value;
        else if (key == "entities") config.entities_path = value;
        else if (key == "out") config.output_dir = value;
        else if (key == "lag_order") config.lag_order = std::stoi(value);
        else if (key == "significance") config.significance = std::stod(value);
        else if (key == "horizon") config.irf_horizon = std::stoi(value);
        else if (key == "var1_end") config.var1_end = Date::from_iso(value);
        else if (key == "var2_end") config.var2_end = Date::from_iso(value);
        else if (key == "threads") config.threads = std::stoi(value);
        else if (key == "breakpoints") {
            config.breakpoints.clear();
            std::stringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                config.breakpoints.push_back(Date::from_iso(tok));
            }
        }
    }

    const json manifest = credlink::run_study(config);
    int fits = 0;
    for (const auto& [model, mj] : manifest.at("models").items()) {
        for (const auto& [period, pj] : mj.at("periods").items()) {
            fits += pj.at("var").at("entities_fit").get<int>();
        }
    }
    std::cout << "study complete: " << fits << " fits across models/periods\n"
              << "reports under " << config.output_dir << "/ (manifest.json, "
              << "per-model CSV tables, IRF plots)\n";
    return 0;
}

int run_cds_command(const std::string& contract_path, const std::string& out_csv) {
    const credlink::CdsRunResult r = credlink::run_cds(contract_path);
    std::printf("CDS on %s: notional %.2f, spread %.4g bp, %gy, %d payments/year, "
                "recovery %.0f%%\n",
                r.contract.reference_entity.c_str(), r.contract.notional,
                r.contract.spread_bp, r.contract.tenor_years,
                r.contract.payments_per_year, 100.0 * r.contract.recovery_rate);
    std::printf("  premium per period : %.2f\n", r.schedule.per_period);
    std::printf("  periods            : %d\n", r.schedule.period_count);
    std::printf("  premium total      : %.2f\n", r.schedule.total);
    std::printf("  default payout     : %.2f\n", r.payout);
    std::printf("  P&L, no credit event    : buyer %.2f / seller %.2f\n",
                r.no_event.buyer, r.no_event.seller);
    std::printf("  P&L, immediate event    : buyer %.2f / seller %.2f\n",
                r.event_immediate.buyer, r.event_immediate.seller);
    if (!out_csv.empty()) {
        std::ostringstream csv;
        csv << "period,payment\n";
        for (const auto& [index, amount] : r.schedule.payments) {
            csv << index << ',' << credlink::format_double(amount) << '\n';
        }
        credlink::write_file_atomic(out_csv, csv.str());
        std::cout << "schedule written to " << out_csv << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Share/CDS/bond market linkage study"};
    app.require_subcommand(1);

    // study
    auto* study = app.add_subcommand("study", "Run the full per-entity study");
    std::string config_path, observations, entities, out_dir, breakpoints;
    std::string var1_end, var2_end;
    int lag_order = -1, horizon = -1, threads = -1;
    double significance = -1.0;
    study->add_option("--config", config_path, "Study config JSON");
    study->add_option("--observations", observations, "Observations CSV");
    study->add_option("--entities", entities, "Entity metadata CSV");
    study->add_option("--out", out_dir, "Output directory");
    study->add_option("--lag-order", lag_order, "VAR lag order");
    study->add_option("--breakpoints", breakpoints,
                      "Comma-separated sub-period breakpoints (ISO dates)");
    study->add_option("--significance", significance, "Significance level");
    study->add_option("--horizon", horizon, "IRF horizon in days");
    study->add_option("--var1-end", var1_end, "3-variable sample end date");
    study->add_option("--var2-end", var2_end, "2-variable sample end date");
    study->add_option("--threads", threads, "Worker threads (0 = hardware)");

    // cds
    auto* cds = app.add_subcommand("cds", "Price a CDS contract's cash flows");
    std::string contract_path, schedule_out;
    cds->add_option("--contract", contract_path, "Contract JSON")->required();
    cds->add_option("--out", schedule_out, "Write the premium schedule CSV here");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Write a synthetic dataset");
    std::string spec_path, sim_out;
    simulate->add_option("--spec", spec_path, "Simulation spec JSON")->required();
    simulate->add_option("--out", sim_out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (study->parsed()) {
            std::vector<std::pair<std::string, std::string>> overrides;
            if (!observations.empty()) overrides.emplace_back("observations", observations);
            if (!entities.empty()) overrides.emplace_back("entities", entities);
            if (!out_dir.empty()) overrides.emplace_back("out", out_dir);
            if (lag_order >= 0) overrides.emplace_back("lag_order", std::to_string(lag_order));
            if (significance >= 0.0) overrides.emplace_back("significance", std::to_string(significance));
            if (horizon >= 0) overrides.emplace_back("horizon", std::to_string(horizon));
            if (!var1_end.empty()) overrides.emplace_back("var1_end", var1_end);
            if (!var2_end.empty()) overrides.emplace_back("var2_end", var2_end);
            if (threads >= 0) overrides.emplace_back("threads", std::to_string(threads));
            if (!breakpoints.empty()) overrides.emplace_back("breakpoints", breakpoints);
            return run_study_command(config_path, overrides);
        }
        if (cds->parsed()) {
            return run_cds_command(contract_path, schedule_out);
        }
        if (simulate->parsed()) {
            credlink::run_simulate(spec_path, sim_out);
            std::cout << "dataset written to " << sim_out << "/\n";
            return 0;
        }
    } catch (const credlink::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const credlink::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
