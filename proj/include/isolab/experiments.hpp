#pragma once

#include <json.hpp>

#include "isolab/generators.hpp"
#include "isolab/plot.hpp"

namespace isolab {

/// A named experiment: every name checks exactly one quantitative claim.
struct ExperimentSpec {
    std::string name;
    nlohmann::json params = nlohmann::json::object();  // merged over per-experiment defaults
    Budget budget;
};

struct Assertion {
    std::string name;
    bool pass = false;
    nlohmann::json details = nlohmann::json::object();
};

/// Deterministic record of an experiment run. Pass/fail derives solely from
/// the stored data rows; serialization is byte-stable, so wall-clock time is
/// reported by the caller, never stored here.
struct Report {
    std::string experiment;
    std::string claim;   // self-contained statement of the checked claim
    std::string status;  // pass | fail | budget-exceeded | invalid-input
    std::uint64_t seed = 0;
    nlohmann::json params = nlohmann::json::object();
    std::vector<Assertion> assertions;
    nlohmann::json tables = nlohmann::json::object();
    nlohmann::json constants = nlohmann::json::object();

    bool passed() const { return status == "pass"; }
};

const std::vector<std::string>& experiment_names();
nlohmann::json experiment_defaults(const std::string& name);

Report run_experiment(const ExperimentSpec& spec);

nlohmann::json report_to_json(const Report& r);
std::string report_to_csv(const Report& r);
void emit_report(const Report& r, const std::string& path, const std::string& format);

/// Curves worth plotting for a given report (may be empty).
std::vector<PlotSeries> report_plot_series(const Report& r);

}  // namespace isolab
