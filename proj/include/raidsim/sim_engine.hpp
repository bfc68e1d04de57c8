#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "raidsim/array_config.hpp"
#include "raidsim/distributions.hpp"
#include "raidsim/failure_conditions.hpp"

namespace raidsim {

enum class EventKind : std::uint8_t {
    DiskFail,
    LseArrive,
    ScrubComplete,
    ReplaceComplete,
    RebuildComplete,
    HumanErrorRecovered,
    WrongDiskCrashed,
    BackupRecoveryComplete,
    SectorBackupRecoveryComplete,
    MissionEnd,
};

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0;  // tie-break: earlier scheduled fires first
    EventKind kind = EventKind::MissionEnd;
    std::uint32_t device = 0;
    std::uint64_t token = 0;  // staleness check or payload index
};

enum class DuCause : std::uint8_t { ADU, SDU, SurvivableRecovery };
enum class DlCause : std::uint8_t { ADL, SDL };

std::string_view to_string(DuCause c);
std::string_view to_string(DlCause c);

struct DuIncident {
    double start = 0.0;
    double end = 0.0;
    double bytes = 0.0;
    DuCause cause = DuCause::ADU;
    /// True for the first segment of an unavailability episode (SDU segments split when the byte count changes).
    bool opens_episode = true;
    std::optional<ArrayState> snapshot;
};

struct DlIncident {
    double time = 0.0;
    double lost_bytes = 0.0;
    DlCause cause = DlCause::ADL;
    double recovery_hours = 0.0;  // d_BR / d_SBR draw; 0 when dos = 0
};

struct EventCounters {
    std::uint64_t disk_failures = 0;
    std::uint64_t lse_arrivals = 0;   // LSEs that were recorded
    std::uint64_t lse_dropped = 0;    // arrivals on unreadable disks, full chunks, or ignored during rebuild
    std::uint64_t replacements = 0;   // replacement attempts
    std::uint64_t human_errors = 0;
    std::uint64_t crashes = 0;
    std::uint64_t events = 0;
};

struct IncidentLog {
    std::vector<DuIncident> du_incidents;
    std::vector<DlIncident> dl_incidents;
    EventCounters counters;
    double usable_bytes = 0.0;  // this array
    double mission = 0.0;
    std::uint32_t code_r = 0;
    bool absorbed = false;
    /// Likelihood ratio of the whole path; 1 unless replacement errors are drawn with a
    /// probability different from hep.
    double weight = 1.0;

    std::uint64_t count(DlCause c) const;
    /// Number of unavailability episodes of the given cause.
    std::uint64_t episodes(DuCause c) const;
};

struct SimOptions {
    /// Store the ArrayState at the start of every ADU/SDU incident.
    bool record_snapshots = false;
    /// Re-run the full classifier after every event and throw if the engine's tracked state disagrees.
    bool verify_classification = false;
};

IncidentLog simulate_array(const DiskModel& disk, const CodeConfig& code, const PolicyConfig& policy,
                           double mission, std::uint64_t seed, std::uint64_t array_index,
                           const SimOptions& options = {});

enum class CompatMode { Raid5, Raid6 };

/// DL incidents of either cause, for comparison with double/triple-disk-failure counts.
std::uint64_t count_ddf_compatible(const IncidentLog& log, CompatMode mode);

}  // namespace raidsim
