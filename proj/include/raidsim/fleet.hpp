#pragma once

#include <cstdint>

#include "raidsim/array_config.hpp"
#include "raidsim/metrics.hpp"
#include "raidsim/sim_engine.hpp"

namespace raidsim {

struct FleetOptions {
    unsigned threads = 1;
    bool keep_logs = true;
    /// Index of the first array; lets a large fleet be run in disjoint slices.
    std::uint64_t first_array = 0;
    SimOptions sim;
};

/// Simulates arrays first_array .. first_array + n_arrays - 1. Results do not depend on the thread count.
FleetResult simulate_fleet(std::uint64_t n_arrays, const ExperimentConfig& config, const FleetOptions& options = {});

}  // namespace raidsim
