#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "raidsim/array_config.hpp"

namespace raidsim {

/// How repair-type delays (d_DR, d_HER, d_Rec) become constant rates.
enum class RepairRateMode {
    Mean,             // 1 / E[T]
    MatchedAtMission  // same cumulative hazard at the mission time as failure-type delays
};

struct MarkovOptions {
    RepairRateMode repair_rates = RepairRateMode::Mean;
    /// Stop in DL_FLSE after a failure meets an outstanding LSE (otherwise record the loss and continue in EXP).
    bool absorb_lse_loss = false;
};

struct MarkovSpec {
    enum State : std::size_t { OP, EXP, EXP_LSE, EXP_R, DU, DL_FF, DL_FLSE, kStates };

    std::vector<std::string> names;
    std::vector<std::vector<double>> generator;  // rows sum to zero
    std::size_t initial = OP;
    std::vector<double> du_fraction;  // unavailable fraction of capacity while in a state
    std::vector<double> dl_fraction;  // lost fraction when absorbed in a state

    /// Part of a transition that loses data without leaving the transient states.
    struct LossTransition {
        std::size_t from;
        std::size_t to;
        double rate;
        double fraction;
    };
    std::vector<LossTransition> loss_transitions;

    // rates used, per hour
    double disk_failure = 0, lse = 0, scrub = 0, replace = 0, recover = 0, rebuild = 0, crash = 0;
    double hep = 0;

    std::size_t size() const noexcept { return names.size(); }
    /// Empty string when the generator is well formed.
    std::string generator_violation() const;
};

MarkovSpec build_raid5_markov(const DiskModel& disk, const CodeConfig& code, const PolicyConfig& policy,
                              double mission, const MarkovOptions& options = {});

/// General constructor used by tests: arbitrary generator, no tagging.
MarkovSpec make_markov(std::vector<std::string> names, std::vector<std::vector<double>> generator);

struct Trajectory {
    std::vector<double> times;                       // grid, 101 points over [0, mission]
    std::vector<std::vector<double>> probabilities;  // per grid point
    std::vector<double> occupancy;                   // time integral of each state's probability, hours
    std::vector<double> final_probability;
    double mission = 0.0;
    double doubling_difference = 0.0;  // max change when the step limit is halved
    std::size_t steps = 0;
};

/// Adaptive Dormand-Prince integration of dp/dt = p Q with `step` as the largest step.
/// Verified by re-solving with half the step limit; throws NumericalError when the two disagree
/// by more than 1e-8 or probability is not conserved to 1e-9.
Trajectory transient_solve(const MarkovSpec& spec, double mission, double step);

struct MarkovMetrics {
    double nomdu = 0.0;
    double nomdl = 0.0;
    double nomdl_ddf = 0.0;  // whole-array loss
    double nomdl_lse = 0.0;  // failure meeting an LSE
};

MarkovMetrics markov_metrics(const MarkovSpec& spec, const Trajectory& trajectory, double usable_bytes, double mission);

}  // namespace raidsim
