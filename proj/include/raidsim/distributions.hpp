#pragma once

#include <cstdint>

namespace raidsim {

/// Three-parameter Weibull: location `gamma`, scale `eta`, shape `beta`. Times are hours.
struct WeibullParams {
    double gamma = 0.0;
    double eta = 1.0;
    double beta = 1.0;

    bool valid() const noexcept;
    /// Throws ParameterError when invalid.
    void check() const;
    double mean() const;

    friend bool operator==(const WeibullParams&, const WeibullParams&) = default;
};

/// Purposes that get their own random substream. Adding a value never perturbs other streams.
enum class Purpose : std::uint32_t {
    DiskFailure = 1,
    LseArrival,
    LseStripe,
    Scrub,
    Repair,      // d_DR
    HumanError,  // error / success decision
    WrongPick,   // which device is removed
    HumanRecovery,
    Crash,
    Rebuild,
    BackupRecovery,
    SectorRecovery,
    Test = 0xffff,
};

/**
 * Counter-based uniform generator. A stream is identified by
 * (seed, array index, purpose, lane); the i-th draw is a pure hash of that key and i,
 * so streams are independent of how many draws other streams consumed.
 */
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t array_index,
                 Purpose purpose = Purpose::Test, std::uint64_t lane = 0) noexcept;

    /// Uniform in [0, 1), 53 bits.
    double next_uniform() noexcept;
    std::uint64_t next_u64() noexcept;

    std::uint64_t counter() const noexcept { return counter_; }
    std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Inverse-CDF draw; consumes exactly one uniform.
double sample_weibull(const WeibullParams& params, RandomStream& stream);

/// Inverse-CDF transform of a given uniform u in [0, 1).
double weibull_quantile(const WeibullParams& params, double u);

double weibull_cdf(const WeibullParams& params, double t);

/// Constant rate with the same cumulative hazard as the Weibull at `mission`: (mission/eta)^beta / mission.
/// Only defined for gamma = 0.
double match_exponential_rate(const WeibullParams& params, double mission);

double sample_uniform(double lo, double hi, RandomStream& stream);

}  // namespace raidsim
