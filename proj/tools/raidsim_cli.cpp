// Command-line front end: run a config file or a built-in suite.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "raidsim/experiments.hpp"

namespace {

int execute(std::vector<raidsim::ExperimentSpec> specs, const std::string& out_override, unsigned threads,
            int confidence) {
    raidsim::RunOptions opts;
    opts.threads = threads;
    if (confidence) opts.confidence = confidence / 100.0;
    std::vector<raidsim::ExperimentResult> results;
    for (auto& s : specs) {
        if (!out_override.empty()) s.config.outputs.dir = out_override;
        std::cerr << "running " << s.config.name << " (" << s.config.n_arrays << " arrays)\n";
        results.push_back(raidsim::run_experiment(s, opts));
    }
    const std::string dir = specs.empty() ? out_override : specs.front().config.outputs.dir;
    raidsim::write_outputs(dir, results);
    std::cout << raidsim::format_summary(results);
    std::cerr << "wrote " << dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator for data unavailability and data loss in disk arrays"};
    app.require_subcommand(1);

    unsigned threads = 1;
    int confidence = 0;
    std::string out_dir;
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--confidence", confidence, "error-bar confidence in percent")->check(CLI::IsMember({90, 95, 99}));

    std::string config_path;
    auto* run = app.add_subcommand("run", "run the experiments described by a config file");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory (overrides the config)");

    std::string suite_name;
    std::uint64_t seed = 1;
    auto* suite = app.add_subcommand("suite", "run a built-in experiment suite");
    suite->add_option("name", suite_name, "suite name")->required();
    suite->add_option("--seed", seed, "random seed");
    suite->add_option("--out", out_dir, "output directory");

    auto* list = app.add_subcommand("list-suites", "print the built-in suite names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*list) {
            for (const auto& n : raidsim::suite_names()) std::cout << n << "\n";
            return 0;
        }
        if (*run) return execute(raidsim::load_config(config_path), out_dir, threads, confidence);
        auto specs = raidsim::suite(suite_name, seed);
        if (out_dir.empty()) out_dir = specs.front().config.outputs.dir;
        return execute(std::move(specs), out_dir, threads, confidence);
    } catch (const raidsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
