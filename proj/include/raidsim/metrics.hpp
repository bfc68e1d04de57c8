#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "raidsim/sim_engine.hpp"

namespace raidsim {

/// (bytes * duration) / (usable * mission).
double nomdu_incident(double unavailable_bytes, double duration, double usable_bytes, double mission);
/// lost / usable.
double nomdl_incident(double lost_bytes, double usable_bytes);

struct DosSplit {
    double nomdl_part = 0.0;
    double nomdu_part = 0.0;
};
/// Splits one loss into its permanent part (1 - dos) and its recoverable part, unavailable for `recovery_time`.
DosSplit apply_dos(const DlIncident& incident, double dos, double recovery_time, double usable_bytes, double mission);

/// Integral over time of min(cap, sum of bytes of active intervals), in byte-hours.
double merged_byte_hours(std::span<const DuIncident> incidents, double cap);

/// Two-sided normal quantile for confidence 0.90, 0.95 or 0.99.
double z_value(double confidence);
/// Sample standard deviation * z / sqrt(n).
double mc_error(std::span<const double> per_array_values, double confidence);

struct FleetCounts {
    std::uint64_t adl = 0, sdl = 0, adu = 0, sdu = 0;
    std::uint64_t ddf = 0, tdf = 0;  // DL incidents of r = 1 / r = 2 codes
    std::uint64_t disk_failures = 0, lse_arrivals = 0, replacements = 0, human_errors = 0, crashes = 0;
};

/// Per-array contribution, already normalized by that array's usable capacity (and mission for DU).
struct ArrayContribution {
    double nomdu = 0.0;
    double nomdl = 0.0;
    double nomdu_adu = 0.0, nomdu_sdu = 0.0, nomdu_recovery = 0.0;  // unmerged, by cause
    double nomdl_adl = 0.0, nomdl_sdl = 0.0;
};

ArrayContribution contribution(const IncidentLog& log, double dos);

struct FleetResult {
    std::vector<IncidentLog> per_array;  // empty when logs were not kept
    std::uint64_t n_arrays = 0;
    double usable_bytes = 0.0;  // fleet total
    double mission = 0.0;
    double dos = 0.0;
    double confidence = 0.95;
    FleetCounts counts;

    double nomdu = 0.0, nomdl = 0.0;
    double nomdu_err = 0.0, nomdl_err = 0.0;
    double nomdu_adu = 0.0, nomdu_sdu = 0.0, nomdu_recovery = 0.0;
    double nomdl_adl = 0.0, nomdl_sdl = 0.0;
    double nomdl_adl_err = 0.0, nomdl_sdl_err = 0.0;

    /// New ADL, SDL, ADU and SDU incidents per equal time bucket over the mission.
    std::vector<std::array<std::uint64_t, 4>> timeseries;
};

inline constexpr std::size_t kTimeBuckets = 100;

/// Order-independent fleet aggregation fed one log at a time.
class FleetAggregator {
public:
    FleetAggregator(double dos, double confidence) : dos_(dos), confidence_(confidence) {}
    void add(const IncidentLog& log);
    /// Folds in another aggregator built with the same dos and confidence.
    void merge(const FleetAggregator& other);
    FleetResult finish() const;

private:
    double dos_;
    double confidence_;
    double usable_ = -1.0;
    double mission_ = -1.0;
    FleetCounts counts_;
    std::vector<ArrayContribution> parts_;
    std::vector<std::array<std::uint64_t, 4>> buckets_ = std::vector<std::array<std::uint64_t, 4>>(kTimeBuckets);
};

/// Throws ParameterError when the logs disagree on mission or array capacity.
FleetResult aggregate(std::vector<IncidentLog> logs, double dos, double confidence = 0.95);

}  // namespace raidsim
