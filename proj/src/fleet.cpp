#include "raidsim/fleet.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "raidsim/errors.hpp"

namespace raidsim {

FleetResult simulate_fleet(std::uint64_t n_arrays, const ExperimentConfig& config, const FleetOptions& options) {
    if (n_arrays < 1) throw ParameterError("a fleet needs at least one array");
    const DiskModel disk = config.effective_disk();
    const unsigned threads =
        static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads ? options.threads : 1, 1, n_arrays));

    // Contiguous slices; aggregation sorts per-array values, so slice order does not matter.
    std::vector<FleetAggregator> partial(threads, FleetAggregator(config.policy.dos, config.confidence));
    std::vector<std::vector<IncidentLog>> kept(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            const std::uint64_t lo = n_arrays * t / threads;
            const std::uint64_t hi = n_arrays * (t + 1) / threads;
            if (options.keep_logs) kept[t].reserve(hi - lo);
            for (std::uint64_t i = lo; i < hi; ++i) {
                IncidentLog log = simulate_array(disk, config.code, config.policy, config.mission_hours, config.seed,
                                                 options.first_array + i, options.sim);
                partial[t].add(log);
                if (options.keep_logs) kept[t].push_back(std::move(log));
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    FleetAggregator agg(config.policy.dos, config.confidence);
    for (const auto& p : partial) agg.merge(p);
    FleetResult r = agg.finish();
    if (options.keep_logs) {
        r.per_array.reserve(n_arrays);
        for (auto& slice : kept)
            for (auto& log : slice) r.per_array.push_back(std::move(log));
    }
    return r;
}

}  // namespace raidsim
