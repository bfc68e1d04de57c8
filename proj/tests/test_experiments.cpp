#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "raidsim/experiments.hpp"

using namespace raidsim;
namespace fs = std::filesystem;

namespace {

std::vector<ExperimentSpec> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') cur += line[++i];
            else if (c == '"') quoted = false;
            else cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::map<std::string, std::string>> read_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    const auto header = split_row(line);
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto f = split_row(line);
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size() && i < f.size(); ++i) row[header[i]] = f[i];
        rows.push_back(row);
    }
    return rows;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kSmallConfig = R"(
[experiment]
name = small
n_arrays = 400
seed = 9
[disk]
model = diskA
df = 0, 40000, 1.13
[code]
preset = raid5:7, pmds:4:8:1:1
[policy]
hep = 0.05
dos = 0, 0.5
)";

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("raidsim_test_" + name);
    fs::remove_all(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RAIDSIM_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(ParseConfig, BuiltinDiskAndDefaults) {
    const auto specs = parse("[disk]\nmodel = diskB\n[code]\npreset = raid6:7\n");
    ASSERT_EQ(specs.size(), 1u);
    const ExperimentConfig& c = specs[0].config;
    EXPECT_EQ(c.disk.d_df, builtin_disk("diskB")->d_df);
    EXPECT_EQ(c.code, CodeConfig::raid6(7));
    EXPECT_EQ(c.mission_hours, 87600.0);
    EXPECT_EQ(c.n_arrays, 1000u);
    EXPECT_EQ(c.policy.hep, 0.0);
    EXPECT_FALSE(specs[0].markov);
}

TEST(ParseConfig, SweepsExpandToCartesianProduct) {
    const auto specs = parse(kSmallConfig);
    ASSERT_EQ(specs.size(), 4u);
    EXPECT_EQ(specs[0].config.name, "small/RAID5(7+1)/dos=0");
    EXPECT_EQ(specs[3].config.name, "small/PMDS(4,8,1,1)/dos=0.5");
    EXPECT_EQ(specs[3].config.disk.d_df, (WeibullParams{0, 40000, 1.13}));
    EXPECT_EQ(specs[3].config.disk.d_lse, builtin_disk("diskA")->d_lse);
}

TEST(ParseConfig, ExplicitDiskAndPolicyKeys) {
    const auto specs = parse(R"(
[experiment]
mission_hours = 8760
confidence = 99
markov = true
capacity_scale = 64
[disk]
name = mine
capacity_bytes = 2000000000000
df = 0, 100000, 1.2
rec = 0, 10, 2
lse = 0, 5000, 1
scrub = 0, 100, 1
[code]
m = 2
n = 6
r = 2
s = 1
chunk_size = 8192
[policy]
hep = 0.01
hep_sampling = 0.1
spare = true
dr = 0, 1, 2
her = 0, 2, 2
crash = 0, 1000, 1
br = 10, 20, 2
sbr = 1e-6, 2e-6, 2
ignore_lse_during_rebuild = false
scrub_model = renewal_pass
[output]
dir = /tmp/x
incidents = false
timeseries = no
)");
    ASSERT_EQ(specs.size(), 1u);
    const auto& c = specs[0].config;
    EXPECT_TRUE(specs[0].markov);
    EXPECT_EQ(c.mission_hours, 8760.0);
    EXPECT_DOUBLE_EQ(c.confidence, 0.99);
    EXPECT_EQ(c.capacity_scale, 64u);
    EXPECT_EQ(c.disk.name, "mine");
    EXPECT_EQ(c.disk.capacity, 2000000000000u);
    EXPECT_EQ(c.disk.d_scrub, (WeibullParams{0, 100, 1}));
    CodeConfig code = CodeConfig::pmds(2, 6, 2, 1);
    code.chunk_size = 8192;
    EXPECT_EQ(c.code, code);
    EXPECT_TRUE(c.policy.spare);
    EXPECT_EQ(c.policy.hep_sampling, 0.1);
    EXPECT_EQ(c.policy.d_crash, (WeibullParams{0, 1000, 1}));
    EXPECT_EQ(c.policy.d_sbr, (WeibullParams{1e-6, 2e-6, 2}));
    EXPECT_FALSE(c.policy.ignore_lse_during_rebuild);
    EXPECT_EQ(c.policy.scrub_model, ScrubModel::RenewalPass);
    EXPECT_EQ(c.outputs.dir, "/tmp/x");
    EXPECT_FALSE(c.outputs.incidents);
    EXPECT_FALSE(c.outputs.timeseries);
}

TEST(ParseConfig, RejectsMalformedInput) {
    EXPECT_THROW(parse("[disk]\nmodel = diskA\nbogus = 1\n"), ConfigError);
    EXPECT_THROW(parse("[nowhere]\n"), ConfigError);
    EXPECT_THROW(parse("[disk]\nmodel = diskQ\n"), ConfigError);
    EXPECT_THROW(parse("[disk]\nmodel = diskA\n[policy]\nhep = lots\n"), ConfigError);
    EXPECT_THROW(parse("[disk]\nmodel = diskA\n[policy]\nhep = 1.5\n"), ConfigError);
    EXPECT_THROW(parse("[disk]\nmodel = diskA\n[code]\npreset = raid7:3\n"), ConfigError);
    EXPECT_THROW(parse("[disk]\nmodel = diskA\n[code]\nn = 4\nr = 4\n"), ConfigError);
    EXPECT_THROW(parse("[disk]\nmodel = diskA\ndf = 0, 1\n"), ConfigError);
    EXPECT_THROW(parse("[disk]\ncapacity_bytes = 4096\n"), ConfigError);
    EXPECT_THROW(parse("model = diskA\n"), ConfigError);
    EXPECT_THROW(parse("[disk]\nmodel = diskA\nmodel = diskB\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/raidsim.ini"), ConfigError);
}

TEST(ParseConfig, ErrorNamesTheOffendingKey) {
    try {
        parse("[disk]\nmodel = diskA\n[policy]\nhep = 1.5\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("policy.hep"), std::string::npos) << e.what();
    }
}

TEST(Suites, KnownNamesResolve) {
    const auto names = suite_names();
    for (const char* n : {"validate-elerath-raid5", "validate-elerath-raid6", "disk-comparison", "hep-sweep", "equal-capacity",
                          "spare-policy", "markov-compare", "pmds"})
        EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
    for (const auto& n : names) {
        const auto specs = suite(n, 1);
        EXPECT_FALSE(specs.empty()) << n;
        for (const auto& s : specs) EXPECT_TRUE(validate(s.config).empty()) << n << " " << s.config.name;
    }
    EXPECT_THROW(suite("no-such-suite", 1), ConfigError);
}

TEST(Suites, HepSweepCoversFourDecades) {
    std::vector<double> heps;
    for (const auto& s : suite("hep-sweep", 1))
        if (s.config.disk.name == "diskA") heps.push_back(s.config.policy.hep);
    EXPECT_EQ(heps, (std::vector<double>{0.0, 0.001, 0.01, 0.1}));
}

TEST(Csv, FieldQuoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(Csv, NumbersRoundTripExactly) {
    EXPECT_EQ(csv_number(1.0 / 3.0), "3.3333333333333331e-01");
    EXPECT_EQ(csv_number(0.0), "0.0000000000000000e+00");
    for (double v : {1.234567891e-13, 87600.0, 5.06e-9, 1.0 / 7.0}) EXPECT_EQ(std::stod(csv_number(v)), v);
}

TEST(Outputs, ResultsColumnsAreFixed) {
    std::ostringstream os;
    write_results_csv(os, {});
    EXPECT_EQ(os.str(),
              "experiment,disk,code,hep,dos,spare,n_arrays,mission_hours,seed,nomdu,nomdu_err,nomdl,nomdl_err,adl,sdl,"
              "adu,sdu,ddf_compat,tdf_compat\r\n");
}

TEST(Outputs, ResultsRederivableFromIncidents) {
    std::vector<ExperimentResult> results;
    for (const auto& s : parse(kSmallConfig)) results.push_back(run_experiment(s, {.threads = 4}));
    std::ostringstream res_os, inc_os, ts_os;
    write_results_csv(res_os, results);
    write_incidents_csv(inc_os, results);
    write_timeseries_csv(ts_os, results);
    const auto res = read_csv(res_os.str());
    const auto inc = read_csv(inc_os.str());
    ASSERT_EQ(res.size(), results.size());

    for (const auto& row : res) {
        const std::string name = row.at("experiment");
        const std::uint64_t n = std::stoull(row.at("n_arrays"));
        const double mission = std::stod(row.at("mission_hours"));
        const double dos = std::stod(row.at("dos"));
        std::map<std::uint64_t, IncidentLog> logs;
        double usable = 0.0;
        for (const auto& i : inc) {
            if (i.at("experiment") != name) continue;
            IncidentLog& log = logs[std::stoull(i.at("array"))];
            log.usable_bytes = usable = std::stod(i.at("array_usable_bytes"));
            log.mission = mission;
            log.weight = std::stod(i.at("path_weight"));
            const std::string cause = i.at("cause");
            if (i.at("kind") == "DU") {
                DuIncident d;
                d.start = std::stod(i.at("start_hours"));
                d.end = std::stod(i.at("end_hours"));
                d.bytes = std::stod(i.at("bytes"));
                d.cause = cause == "ADU" ? DuCause::ADU : cause == "SDU" ? DuCause::SDU : DuCause::SurvivableRecovery;
                d.opens_episode = i.at("episode_start") == "1";
                log.du_incidents.push_back(d);
            } else {
                log.dl_incidents.push_back({std::stod(i.at("start_hours")), std::stod(i.at("bytes")),
                                            cause == "ADL" ? DlCause::ADL : DlCause::SDL,
                                            std::stod(i.at("recovery_hours"))});
            }
        }
        ASSERT_GT(usable, 0.0);
        std::vector<IncidentLog> all(n);
        for (auto& l : all) {
            l.usable_bytes = usable;
            l.mission = mission;
        }
        for (auto& [a, l] : logs) all[a] = l;
        const FleetResult r = aggregate(all, dos);
        EXPECT_NEAR(r.nomdu, std::stod(row.at("nomdu")), 1e-12 * r.nomdu) << name;
        EXPECT_NEAR(r.nomdl, std::stod(row.at("nomdl")), 1e-12 * r.nomdl) << name;
        EXPECT_NEAR(r.nomdu_err, std::stod(row.at("nomdu_err")), 1e-12 * r.nomdu_err) << name;
        EXPECT_NEAR(r.nomdl_err, std::stod(row.at("nomdl_err")), 1e-12 * r.nomdl_err) << name;
        EXPECT_EQ(r.counts.adl, std::stoull(row.at("adl"))) << name;
        EXPECT_EQ(r.counts.sdl, std::stoull(row.at("sdl"))) << name;
        EXPECT_EQ(r.counts.adu, std::stoull(row.at("adu"))) << name;
        EXPECT_EQ(r.counts.sdu, std::stoull(row.at("sdu"))) << name;
        EXPECT_GT(r.counts.adu + r.counts.adl + r.counts.sdl, 0u) << name;
    }

    const auto ts = read_csv(ts_os.str());
    EXPECT_EQ(ts.size(), kTimeBuckets * results.size());
    EXPECT_EQ(ts.back().at("adl"), res.back().at("adl"));
}

TEST(Outputs, ByteIdenticalAcrossRunsAndThreadCounts) {
    const auto specs = parse(kSmallConfig);
    auto render = [&](unsigned threads) {
        std::vector<ExperimentResult> results;
        for (const auto& s : specs) results.push_back(run_experiment(s, {.threads = threads}));
        std::ostringstream os;
        write_results_csv(os, results);
        write_incidents_csv(os, results);
        return os.str();
    };
    const std::string a = render(1);
    EXPECT_EQ(a, render(1));
    EXPECT_EQ(a, render(6));
}

TEST(Cli, RunWritesFilesAndIsDeterministic) {
    const fs::path dir = temp_dir("cli");
    fs::create_directories(dir);
    const fs::path cfg = dir / "small.ini";
    std::ofstream(cfg) << kSmallConfig;
    ASSERT_EQ(run_cli("--threads 2 run " + cfg.string() + " --out " + (dir / "a").string()), 0);
    ASSERT_EQ(run_cli("run " + cfg.string() + " --out " + (dir / "b").string()), 0);
    for (const char* f : {"results.csv", "incidents.csv", "timeseries.csv", "summary.txt"})
        EXPECT_TRUE(fs::exists(dir / "a" / f)) << f;
    EXPECT_EQ(slurp(dir / "a" / "results.csv"), slurp(dir / "b" / "results.csv"));
    fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
    const fs::path dir = temp_dir("cli_codes");
    fs::create_directories(dir);
    const fs::path bad = dir / "bad.ini";
    std::ofstream(bad) << "[disk]\nmodel = diskA\n[policy]\nhep = 2\n";
    EXPECT_EQ(run_cli("run " + bad.string() + " --out " + dir.string()), 1);
    EXPECT_EQ(run_cli("run " + (dir / "missing.ini").string()), 1);
    EXPECT_EQ(run_cli("suite no-such-suite --out " + dir.string()), 1);
    EXPECT_EQ(run_cli("--confidence 80 list-suites"), 1);
    EXPECT_EQ(run_cli("list-suites"), 0);
    // Output path below a regular file cannot be created.
    const fs::path file = dir / "plainfile";
    std::ofstream(file) << "x";
    const fs::path ok = dir / "ok.ini";
    std::ofstream(ok) << "[experiment]\nn_arrays = 2\n[disk]\nmodel = diskA\n";
    EXPECT_EQ(run_cli("run " + ok.string() + " --out " + (file / "sub").string()), 2);
    fs::remove_all(dir);
}
