#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raidsim/distributions.hpp"

namespace raidsim {

inline constexpr double kTenYears = 87600.0;

struct DiskModel {
    std::string name;
    std::uint64_t capacity = 0;  // bytes
    std::uint32_t sector_size = 4096;
    WeibullParams d_df;     // time to operational failure
    WeibullParams d_rec;    // rebuild duration
    WeibullParams d_lse;    // time between latent sector errors
    WeibullParams d_scrub;  // time to scrub an LSE away

    /// Capacity divided by `divisor`, rounded down to a whole number of sectors.
    DiskModel scaled(std::uint64_t divisor) const;
};

/// PMDS(m, n, r, s): m sector rows per stripe, n devices, r row parities, s global parities.
struct CodeConfig {
    std::uint32_t m = 4;
    std::uint32_t n = 8;
    std::uint32_t r = 1;
    std::uint32_t s = 0;
    std::uint32_t chunk_size = 16384;  // bytes per device per stripe

    bool is_raid5() const noexcept { return r == 1 && s == 0; }
    bool is_raid6() const noexcept { return r == 2 && s == 0; }
    bool is_raid1() const noexcept { return n == 2 && r == 1 && s == 0; }

    /// Usable symbols per stripe, m(n-r)-s.
    std::int64_t data_symbols() const noexcept {
        return static_cast<std::int64_t>(m) * (static_cast<std::int64_t>(n) - r) - s;
    }
    /// Logical bytes held by one stripe.
    double stripe_bytes() const noexcept {
        return static_cast<double>(chunk_size) * static_cast<double>(data_symbols()) / m;
    }
    std::string label() const;

    static CodeConfig raid1();
    static CodeConfig raid5(std::uint32_t data_disks);
    static CodeConfig raid6(std::uint32_t data_disks);
    static CodeConfig pmds(std::uint32_t m, std::uint32_t n, std::uint32_t r, std::uint32_t s);

    friend bool operator==(const CodeConfig&, const CodeConfig&) = default;
};

enum class ScrubModel {
    PerLse,       // each LSE lives for its own d_Scrub draw
    RenewalPass,  // scrub passes renew per device; removal uniform inside the next full pass
};

struct PolicyConfig {
    double hep = 0.0;
    /// Probability used to draw replacement errors; negative means "same as hep".
    /// Values different from hep turn on likelihood-ratio weighting of incidents.
    double hep_sampling = -1.0;
    bool spare = false;
    double dos = 0.0;
    WeibullParams d_dr{0.0, 0.5, 2.0};
    WeibullParams d_her{0.0, 1.0, 2.0};
    WeibullParams d_crash{0.0, 8760.0, 1.4};
    WeibullParams d_br{20.0, 40.0, 2.0};
    WeibullParams d_sbr{2.7e-7, 5.5e-7, 2.0};
    bool ignore_lse_during_rebuild = true;
    ScrubModel scrub_model = ScrubModel::PerLse;

    double error_draw_probability() const noexcept { return hep_sampling < 0.0 ? hep : hep_sampling; }
};

struct OutputOptions {
    std::string dir = "out";
    bool incidents = true;
    bool timeseries = true;
};

struct ExperimentConfig {
    std::string name = "experiment";
    DiskModel disk;
    CodeConfig code;
    PolicyConfig policy;
    double mission_hours = kTenYears;
    std::uint64_t n_arrays = 1000;
    std::uint64_t seed = 1;
    std::uint64_t capacity_scale = 1;
    double confidence = 0.95;
    OutputOptions outputs;

    /// Disk with capacity_scale applied.
    DiskModel effective_disk() const { return disk.scaled(capacity_scale); }
};

struct Violation {
    std::string location;
    std::string message;
};

double erf(const CodeConfig& code);
double usable_capacity(const CodeConfig& code, const DiskModel& disk, std::uint64_t n_arrays);
std::vector<Violation> validate(const ExperimentConfig& config);

std::vector<Violation> validate(const CodeConfig& code);
std::vector<Violation> validate(const DiskModel& disk);
std::vector<Violation> validate(const PolicyConfig& policy);

/// Built-in disk models: "diskA", "diskB", "diskC" and "elerath" (validation parameter set).
std::optional<DiskModel> builtin_disk(const std::string& name);
std::vector<std::string> builtin_disk_names();

}  // namespace raidsim
