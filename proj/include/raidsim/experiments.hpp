#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "raidsim/array_config.hpp"
#include "raidsim/errors.hpp"
#include "raidsim/fleet.hpp"
#include "raidsim/markov.hpp"

namespace raidsim {

/// Malformed or invalid experiment configuration (CLI exit code 1).
class ConfigError : public ParameterError {
public:
    explicit ConfigError(const std::string& what) : ParameterError(what) {}
};

struct ExperimentSpec {
    ExperimentConfig config;
    /// Also solve the RAID5 Markov baseline for this experiment.
    bool markov = false;
};

struct ExperimentResult {
    ExperimentSpec spec;
    FleetResult fleet;
    std::optional<MarkovMetrics> markov;
};

struct RunOptions {
    unsigned threads = 1;
    std::optional<double> confidence;  // overrides the config
    bool keep_logs = true;             // needed for incidents.csv
};

/// Parses the `key = value` / `[section]` format. Comma-separated values of
/// disk.model, code.preset, policy.hep, policy.dos and policy.spare expand into one experiment each.
std::vector<ExperimentSpec> parse_config(std::istream& in);
std::vector<ExperimentSpec> load_config(const std::string& path);

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// Built-in suites; throws ConfigError for an unknown name.
std::vector<std::string> suite_names();
std::vector<ExperimentSpec> suite(const std::string& name, std::uint64_t seed);

/// 21000 RAID1, 7000 RAID5(3+1) and 3000 RAID5(7+1) arrays of Disk A; `fleet_multiplier` scales all three.
std::vector<ExperimentResult> run_equal_capacity_comparison(std::uint64_t seed, double hep,
                                                            std::uint64_t fleet_multiplier = 1,
                                                            const RunOptions& options = {});

/// RAID5(7+1), RAID6(7+2), PMDS(m,8,1,1), PMDS(m,8,1,2), PMDS(m,9,2,2) on Disk A with a shared seed.
std::vector<ExperimentResult> run_pmds_suite(std::uint64_t seed, std::uint64_t capacity_scale,
                                             std::uint64_t n_arrays = 1000, const RunOptions& options = {});

// ---- output ----------------------------------------------------------------------------
std::string csv_field(const std::string& s);
std::string csv_number(double v);

void write_results_csv(std::ostream& out, const std::vector<ExperimentResult>& results);
void write_incidents_csv(std::ostream& out, const std::vector<ExperimentResult>& results);
void write_timeseries_csv(std::ostream& out, const std::vector<ExperimentResult>& results);
void write_markov_csv(std::ostream& out, const std::vector<ExperimentResult>& results);
std::string format_summary(const std::vector<ExperimentResult>& results);

/// Writes results.csv, summary.txt and, when requested, incidents.csv, timeseries.csv and markov.csv.
void write_outputs(const std::string& dir, const std::vector<ExperimentResult>& results);

}  // namespace raidsim
