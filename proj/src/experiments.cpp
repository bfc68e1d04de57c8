#include "raidsim/experiments.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace raidsim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

struct Entry {
    std::string value;
    int line;
};
using Section = std::map<std::string, Entry>;

class Reader {
public:
    Reader(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

    const Entry* find(const std::string& section, const std::string& key) {
        auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        used_.insert(section + "." + key);
        return &k->second;
    }

    void error(const std::string& where, const Entry* e, const std::string& msg) {
        std::ostringstream os;
        os << where;
        if (e) os << " (line " << e->line << ")";
        os << ": " << msg;
        errors_.push_back(os.str());
    }

    double number(const std::string& section, const std::string& key, double fallback) {
        const Entry* e = find(section, key);
        if (!e) return fallback;
        return to_number(section + "." + key, e, e->value, fallback);
    }

    double to_number(const std::string& where, const Entry* e, const std::string& text, double fallback) {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
            error(where, e, "'" + text + "' is not a number");
            return fallback;
        }
        return v;
    }

    std::uint64_t integer(const std::string& section, const std::string& key, std::uint64_t fallback) {
        const Entry* e = find(section, key);
        if (!e) return fallback;
        errno = 0;
        char* end = nullptr;
        const unsigned long long v = std::strtoull(e->value.c_str(), &end, 10);
        if (e->value.empty() || e->value[0] == '-' || end != e->value.c_str() + e->value.size() || errno == ERANGE) {
            error(section + "." + key, e, "'" + e->value + "' is not a non-negative integer");
            return fallback;
        }
        return v;
    }

    bool to_bool(const std::string& where, const Entry* e, const std::string& text, bool fallback) {
        const std::string t = lower(text);
        if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
        if (t == "false" || t == "no" || t == "off" || t == "0") return false;
        error(where, e, "'" + text + "' is not a boolean");
        return fallback;
    }

    bool boolean(const std::string& section, const std::string& key, bool fallback) {
        const Entry* e = find(section, key);
        return e ? to_bool(section + "." + key, e, e->value, fallback) : fallback;
    }

    std::optional<WeibullParams> weibull(const std::string& section, const std::string& key) {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        const auto parts = split_list(e->value);
        if (parts.size() != 3) {
            error(section + "." + key, e, "expected 'gamma, eta, beta'");
            return std::nullopt;
        }
        const std::string where = section + "." + key;
        return WeibullParams{to_number(where, e, parts[0], 0), to_number(where, e, parts[1], 1),
                             to_number(where, e, parts[2], 1)};
    }

    std::vector<std::string> list(const std::string& section, const std::string& key) {
        const Entry* e = find(section, key);
        if (!e) return {};
        return split_list(e->value);
    }

    void check_unused() {
        for (const auto& [name, sec] : sections_)
            for (const auto& [key, entry] : sec)
                if (!used_.count(name + "." + key)) error(name + "." + key, &entry, "unknown key");
    }

    std::vector<std::string>& errors() { return errors_; }

private:
    std::map<std::string, Section> sections_;
    std::set<std::string> used_;
    std::vector<std::string> errors_;
};

std::optional<CodeConfig> parse_preset(const std::string& text) {
    const std::string t = lower(text);
    std::vector<std::string> parts;
    std::stringstream ss(t);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(trim(p));
    auto num = [](const std::string& s) -> std::optional<std::uint32_t> {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        return static_cast<std::uint32_t>(std::stoul(s));
    };
    if (parts.size() == 1 && parts[0] == "raid1") return CodeConfig::raid1();
    if (parts.size() == 2 && (parts[0] == "raid5" || parts[0] == "raid6")) {
        auto k = num(parts[1]);
        if (!k || *k == 0) return std::nullopt;
        return parts[0] == "raid5" ? CodeConfig::raid5(*k) : CodeConfig::raid6(*k);
    }
    if (parts.size() == 5 && parts[0] == "pmds") {
        auto m = num(parts[1]), n = num(parts[2]), r = num(parts[3]), s = num(parts[4]);
        if (!m || !n || !r || !s) return std::nullopt;
        return CodeConfig::pmds(*m, *n, *r, *s);
    }
    return std::nullopt;
}

std::string short_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string default_out_dir() {
    if (const char* env = std::getenv("RAIDSIM_OUT_DIR"); env && *env) return env;
    return "out";
}

}  // namespace

std::vector<ExperimentSpec> parse_config(std::istream& in) {
    std::map<std::string, Section> sections;
    std::vector<std::string> errors;
    std::string current;
    std::string raw;
    int line_no = 0;
    static const std::set<std::string> known = {"experiment", "disk", "code", "policy", "output"};
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty() || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("line " + std::to_string(line_no) + ": malformed section header");
                continue;
            }
            current = lower(trim(line.substr(1, line.size() - 2)));
            if (!known.count(current)) errors.push_back("line " + std::to_string(line_no) + ": unknown section [" + current + "]");
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        if (current.empty()) {
            errors.push_back("line " + std::to_string(line_no) + ": key outside of a section");
            continue;
        }
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (!sections[current].emplace(key, Entry{value, line_no}).second)
            errors.push_back("line " + std::to_string(line_no) + ": duplicate key " + current + "." + key);
    }

    Reader rd(std::move(sections));
    for (auto& e : errors) rd.errors().push_back(e);

    ExperimentSpec base;
    ExperimentConfig& c = base.config;
    if (const Entry* e = rd.find("experiment", "name")) c.name = e->value;
    c.mission_hours = rd.number("experiment", "mission_hours", c.mission_hours);
    c.n_arrays = rd.integer("experiment", "n_arrays", c.n_arrays);
    c.seed = rd.integer("experiment", "seed", c.seed);
    c.capacity_scale = rd.integer("experiment", "capacity_scale", c.capacity_scale);
    c.confidence = rd.number("experiment", "confidence", c.confidence);
    if (c.confidence > 1.0) c.confidence /= 100.0;
    base.markov = rd.boolean("experiment", "markov", false);

    // disk
    std::vector<std::string> models = rd.list("disk", "model");
    DiskModel explicit_disk;
    explicit_disk.name = "custom";
    const Entry* disk_name = rd.find("disk", "name");
    const Entry* cap = rd.find("disk", "capacity_bytes");
    const std::uint64_t capacity = rd.integer("disk", "capacity_bytes", 0);
    const std::uint64_t sector = rd.integer("disk", "sector_size", 4096);
    auto df = rd.weibull("disk", "df");
    auto rec = rd.weibull("disk", "rec");
    auto lse = rd.weibull("disk", "lse");
    auto scrub = rd.weibull("disk", "scrub");
    std::vector<DiskModel> disks;
    auto apply_overrides = [&](DiskModel d) {
        if (disk_name) d.name = disk_name->value;
        if (cap) d.capacity = capacity;
        d.sector_size = static_cast<std::uint32_t>(sector);
        if (df) d.d_df = *df;
        if (rec) d.d_rec = *rec;
        if (lse) d.d_lse = *lse;
        if (scrub) d.d_scrub = *scrub;
        return d;
    };
    if (models.empty()) {
        if (!cap || !df || !rec || !lse || !scrub)
            rd.error("disk", nullptr, "either disk.model or all of capacity_bytes, df, rec, lse, scrub are required");
        disks.push_back(apply_overrides(explicit_disk));
    } else {
        for (const auto& m : models) {
            if (auto d = builtin_disk(m)) disks.push_back(apply_overrides(*d));
            else rd.error("disk.model", rd.find("disk", "model"), "unknown built-in disk '" + m + "'");
        }
    }

    // code
    std::vector<CodeConfig> codes;
    const std::uint32_t chunk = static_cast<std::uint32_t>(rd.integer("code", "chunk_size", 16384));
    const std::uint32_t m_rows = static_cast<std::uint32_t>(rd.integer("code", "m", 4));
    if (auto presets = rd.list("code", "preset"); !presets.empty()) {
        for (const auto& p : presets) {
            if (auto cc = parse_preset(p)) {
                cc->chunk_size = chunk;
                cc->m = m_rows;
                codes.push_back(*cc);
            } else {
                rd.error("code.preset", rd.find("code", "preset"), "unknown preset '" + p + "'");
            }
        }
    } else {
        CodeConfig cc;
        cc.m = m_rows;
        cc.n = static_cast<std::uint32_t>(rd.integer("code", "n", cc.n));
        cc.r = static_cast<std::uint32_t>(rd.integer("code", "r", cc.r));
        cc.s = static_cast<std::uint32_t>(rd.integer("code", "s", cc.s));
        cc.chunk_size = chunk;
        codes.push_back(cc);
    }

    // policy
    PolicyConfig& pol = c.policy;
    pol.hep_sampling = rd.number("policy", "hep_sampling", pol.hep_sampling);
    if (auto w = rd.weibull("policy", "dr")) pol.d_dr = *w;
    if (auto w = rd.weibull("policy", "her")) pol.d_her = *w;
    if (auto w = rd.weibull("policy", "crash")) pol.d_crash = *w;
    if (auto w = rd.weibull("policy", "br")) pol.d_br = *w;
    if (auto w = rd.weibull("policy", "sbr")) pol.d_sbr = *w;
    pol.ignore_lse_during_rebuild = rd.boolean("policy", "ignore_lse_during_rebuild", true);
    if (const Entry* e = rd.find("policy", "scrub_model")) {
        const std::string v = lower(e->value);
        if (v == "per_lse") pol.scrub_model = ScrubModel::PerLse;
        else if (v == "renewal_pass") pol.scrub_model = ScrubModel::RenewalPass;
        else rd.error("policy.scrub_model", e, "expected per_lse or renewal_pass");
    }
    auto number_list = [&](const std::string& key, double fallback) {
        std::vector<double> out;
        const Entry* e = rd.find("policy", key);
        if (!e) return std::vector<double>{fallback};
        for (const auto& item : split_list(e->value)) out.push_back(rd.to_number("policy." + key, e, item, fallback));
        return out;
    };
    const std::vector<double> heps = number_list("hep", 0.0);
    const std::vector<double> doses = number_list("dos", 0.0);
    std::vector<bool> spares;
    if (const Entry* e = rd.find("policy", "spare")) {
        for (const auto& item : split_list(e->value)) spares.push_back(rd.to_bool("policy.spare", e, item, false));
    } else {
        spares.push_back(false);
    }

    // output
    c.outputs.dir = default_out_dir();
    if (const Entry* e = rd.find("output", "dir")) c.outputs.dir = e->value;
    c.outputs.incidents = rd.boolean("output", "incidents", true);
    c.outputs.timeseries = rd.boolean("output", "timeseries", true);

    rd.check_unused();
    if (!rd.errors().empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& e : rd.errors()) msg += "\n  " + e;
        throw ConfigError(msg);
    }

    std::vector<ExperimentSpec> out;
    std::vector<std::string> violations;
    for (const auto& d : disks)
        for (const auto& code : codes)
            for (double hep : heps)
                for (double dos : doses)
                    for (bool spare : spares) {
                        ExperimentSpec s = base;
                        s.config.disk = d;
                        s.config.code = code;
                        s.config.policy.hep = hep;
                        s.config.policy.dos = dos;
                        s.config.policy.spare = spare;
                        std::string name = c.name;
                        if (disks.size() > 1) name += "/" + d.name;
                        if (codes.size() > 1) name += "/" + code.label();
                        if (heps.size() > 1) name += "/hep=" + short_number(hep);
                        if (doses.size() > 1) name += "/dos=" + short_number(dos);
                        if (spares.size() > 1) name += spare ? "/spare" : "/manual";
                        s.config.name = name;
                        for (const auto& v : validate(s.config))
                            violations.push_back(name + ": " + v.location + ": " + v.message);
                        out.push_back(std::move(s));
                    }
    if (!violations.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw ConfigError(msg);
    }
    return out;
}

std::vector<ExperimentSpec> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    return parse_config(in);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
    ExperimentSpec s = spec;
    if (options.confidence) s.config.confidence = *options.confidence;
    if (auto v = validate(s.config); !v.empty()) throw ConfigError(s.config.name + ": " + v.front().location + ": " + v.front().message);
    FleetOptions fo;
    fo.threads = options.threads;
    fo.keep_logs = options.keep_logs && s.config.outputs.incidents;
    ExperimentResult r{s, simulate_fleet(s.config.n_arrays, s.config, fo), std::nullopt};
    if (s.markov) {
        const DiskModel disk = s.config.effective_disk();
        const MarkovSpec m = build_raid5_markov(disk, s.config.code, s.config.policy, s.config.mission_hours);
        const Trajectory t = transient_solve(m, s.config.mission_hours, 2.0);
        r.markov = markov_metrics(m, t, usable_capacity(s.config.code, disk, 1), s.config.mission_hours);
    }
    return r;
}

// ---- suites ---------------------------------------------------------------------------------

namespace {

ExperimentSpec make_spec(const std::string& name, const std::string& disk, const CodeConfig& code, double hep,
                         std::uint64_t n_arrays, std::uint64_t seed) {
    ExperimentSpec s;
    s.config.name = name;
    s.config.disk = *builtin_disk(disk);
    s.config.code = code;
    s.config.policy.hep = hep;
    s.config.n_arrays = n_arrays;
    s.config.seed = seed;
    s.config.outputs.dir = default_out_dir();
    return s;
}

std::vector<ExperimentSpec> equal_capacity_specs(std::uint64_t seed, double hep, std::uint64_t k) {
    const std::string tag = "equal-capacity/hep=" + short_number(hep) + "/";
    return {make_spec(tag + "RAID1(1+1)", "diskA", CodeConfig::raid1(), hep, 21000 * k, seed),
            make_spec(tag + "RAID5(3+1)", "diskA", CodeConfig::raid5(3), hep, 7000 * k, seed),
            make_spec(tag + "RAID5(7+1)", "diskA", CodeConfig::raid5(7), hep, 3000 * k, seed)};
}

std::vector<ExperimentSpec> pmds_specs(std::uint64_t seed, std::uint64_t scale, std::uint64_t n_arrays) {
    const std::string tag = "pmds/scale=" + std::to_string(scale) + "/";
    std::vector<CodeConfig> codes = {CodeConfig::raid5(7), CodeConfig::raid6(7), CodeConfig::pmds(4, 8, 1, 1),
                                     CodeConfig::pmds(4, 8, 1, 2), CodeConfig::pmds(4, 9, 2, 2)};
    std::vector<ExperimentSpec> out;
    for (const auto& code : codes) {
        ExperimentSpec s = make_spec(tag + code.label(), "diskA", code, 0.001, n_arrays, seed);
        s.config.capacity_scale = scale;
        out.push_back(s);
    }
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"validate-elerath-raid5", "validate-elerath-raid6", "disk-comparison", "hep-sweep", "equal-capacity",
            "spare-policy", "markov-compare", "pmds", "pmds-small", "pmds-ultra-small"};
}

std::vector<ExperimentSpec> suite(const std::string& name, std::uint64_t seed) {
    std::vector<ExperimentSpec> out;
    if (name == "validate-elerath-raid5") {
        for (double eta : {336.0, 168.0, 48.0, 12.0}) {
            ExperimentSpec s = make_spec("elerath-raid5/scrub-eta=" + short_number(eta), "elerath",
                                         CodeConfig::raid5(7), 0.0, 1000, seed);
            s.config.disk.d_scrub.eta = eta;
            s.config.mission_hours = 8760.0;
            s.config.policy.ignore_lse_during_rebuild = false;
            out.push_back(s);
        }
    } else if (name == "validate-elerath-raid6") {
        for (const char* d : {"diskA", "diskB", "diskC"}) {
            ExperimentSpec s = make_spec(std::string("elerath-raid6/") + d, d, CodeConfig::raid6(14), 0.0, 1000, seed);
            s.config.policy.ignore_lse_during_rebuild = false;
            out.push_back(s);
        }
    } else if (name == "disk-comparison") {
        for (const char* d : {"diskA", "diskB", "diskC"})
            out.push_back(make_spec(std::string("disk-comparison/") + d, d, CodeConfig::raid5(7), 0.001, 1000, seed));
    } else if (name == "hep-sweep") {
        for (double hep : {0.0, 1e-3, 1e-2, 1e-1})
            out.push_back(make_spec("hep-sweep/hep=" + short_number(hep), "diskA", CodeConfig::raid5(7), hep, 1000, seed));
    } else if (name == "equal-capacity") {
        for (double hep : {0.0, 0.01})
            for (auto& s : equal_capacity_specs(seed, hep, 1)) out.push_back(s);
    } else if (name == "spare-policy") {
        for (double hep : {1e-5, 0.1})
            for (bool spare : {false, true}) {
                ExperimentSpec s = make_spec("spare-policy/hep=" + short_number(hep) + (spare ? "/spare" : "/manual"),
                                             "diskA", CodeConfig::raid5(7), hep, 1000, seed);
                s.config.policy.spare = spare;
                if (hep < 0.01) s.config.policy.hep_sampling = 0.01;
                out.push_back(s);
            }
    } else if (name == "markov-compare") {
        for (const char* d : {"diskA", "diskB", "diskC"})
            for (double hep : {0.0, 1e-3, 1e-2, 1e-1}) {
                ExperimentSpec s = make_spec(std::string("markov/") + d + "/hep=" + short_number(hep), d,
                                             CodeConfig::raid5(7), hep, 1000, seed);
                s.markov = true;
                out.push_back(s);
            }
    } else if (name == "pmds") {
        out = pmds_specs(seed, 1, 1000);
    } else if (name == "pmds-small") {
        out = pmds_specs(seed, 64, 1000);
    } else if (name == "pmds-ultra-small") {
        out = pmds_specs(seed, 16384, 1000);
    } else {
        throw ConfigError("unknown suite '" + name + "'");
    }
    return out;
}

std::vector<ExperimentResult> run_equal_capacity_comparison(std::uint64_t seed, double hep, std::uint64_t k,
                                                            const RunOptions& options) {
    std::vector<ExperimentResult> out;
    for (const auto& s : equal_capacity_specs(seed, hep, k)) out.push_back(run_experiment(s, options));
    return out;
}

std::vector<ExperimentResult> run_pmds_suite(std::uint64_t seed, std::uint64_t scale, std::uint64_t n_arrays,
                                             const RunOptions& options) {
    if (scale != 1 && scale != 64 && scale != 16384) throw ConfigError("capacity_scale must be 1, 64 or 16384");
    std::vector<ExperimentResult> out;
    for (const auto& s : pmds_specs(seed, scale, n_arrays)) out.push_back(run_experiment(s, options));
    return out;
}

// ---- output -----------------------------------------------------------------------------------

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_results_csv(std::ostream& out, const std::vector<ExperimentResult>& results) {
    out << "experiment,disk,code,hep,dos,spare,n_arrays,mission_hours,seed,nomdu,nomdu_err,nomdl,nomdl_err,"
           "adl,sdl,adu,sdu,ddf_compat,tdf_compat\r\n";
    for (const auto& r : results) {
        const ExperimentConfig& c = r.spec.config;
        const FleetResult& f = r.fleet;
        out << csv_field(c.name) << ',' << csv_field(c.disk.name) << ',' << csv_field(c.code.label()) << ','
            << csv_number(c.policy.hep) << ',' << csv_number(c.policy.dos) << ',' << (c.policy.spare ? 1 : 0) << ','
            << c.n_arrays << ',' << csv_number(c.mission_hours) << ',' << c.seed << ',' << csv_number(f.nomdu) << ','
            << csv_number(f.nomdu_err) << ',' << csv_number(f.nomdl) << ',' << csv_number(f.nomdl_err) << ','
            << f.counts.adl << ',' << f.counts.sdl << ',' << f.counts.adu << ',' << f.counts.sdu << ',';
        if (c.code.r == 1) out << f.counts.ddf;
        out << ',';
        if (c.code.r == 2) out << f.counts.tdf;
        out << "\r\n";
    }
}

void write_incidents_csv(std::ostream& out, const std::vector<ExperimentResult>& results) {
    out << "experiment,array,kind,cause,episode_start,start_hours,end_hours,bytes,recovery_hours,"
           "array_usable_bytes,path_weight\r\n";
    for (const auto& r : results) {
        const std::string name = csv_field(r.spec.config.name);
        for (std::size_t a = 0; a < r.fleet.per_array.size(); ++a) {
            const IncidentLog& log = r.fleet.per_array[a];
            const std::string tail = ',' + csv_number(log.usable_bytes) + ',' + csv_number(log.weight) + "\r\n";
            for (const auto& d : log.du_incidents)
                out << name << ',' << a << ",DU," << to_string(d.cause) << ',' << (d.opens_episode ? 1 : 0) << ','
                    << csv_number(d.start) << ',' << csv_number(d.end) << ',' << csv_number(d.bytes) << ','
                    << csv_number(0.0) << tail;
            for (const auto& d : log.dl_incidents)
                out << name << ',' << a << ",DL," << to_string(d.cause) << ",1," << csv_number(d.time) << ','
                    << csv_number(d.time) << ',' << csv_number(d.lost_bytes) << ',' << csv_number(d.recovery_hours)
                    << tail;
        }
    }
}

void write_timeseries_csv(std::ostream& out, const std::vector<ExperimentResult>& results) {
    out << "experiment,bucket,t_hours,adl,sdl,adu,sdu\r\n";
    for (const auto& r : results) {
        std::array<std::uint64_t, 4> cum{};
        const auto& ts = r.fleet.timeseries;
        for (std::size_t b = 0; b < ts.size(); ++b) {
            for (std::size_t j = 0; j < 4; ++j) cum[j] += ts[b][j];
            const double t = r.spec.config.mission_hours * static_cast<double>(b + 1) / static_cast<double>(ts.size());
            out << csv_field(r.spec.config.name) << ',' << b << ',' << csv_number(t) << ',' << cum[0] << ',' << cum[1]
                << ',' << cum[2] << ',' << cum[3] << "\r\n";
        }
    }
}

void write_markov_csv(std::ostream& out, const std::vector<ExperimentResult>& results) {
    out << "experiment,disk,hep,mc_nomdu,mc_nomdu_err,markov_nomdu,nomdu_rel_diff,mc_nomdl_ddf,markov_nomdl_ddf,"
           "nomdl_ddf_rel_diff,mc_nomdl_lse,markov_nomdl_lse\r\n";
    auto rel = [](double mc, double mk) { return mc != 0.0 ? (mk - mc) / mc : 0.0; };
    for (const auto& r : results) {
        if (!r.markov) continue;
        const FleetResult& f = r.fleet;
        const MarkovMetrics& m = *r.markov;
        out << csv_field(r.spec.config.name) << ',' << csv_field(r.spec.config.disk.name) << ','
            << csv_number(r.spec.config.policy.hep) << ',' << csv_number(f.nomdu) << ',' << csv_number(f.nomdu_err)
            << ',' << csv_number(m.nomdu) << ',' << csv_number(rel(f.nomdu, m.nomdu)) << ',' << csv_number(f.nomdl_adl)
            << ',' << csv_number(m.nomdl_ddf) << ',' << csv_number(rel(f.nomdl_adl, m.nomdl_ddf)) << ','
            << csv_number(f.nomdl_sdl) << ',' << csv_number(m.nomdl_lse) << "\r\n";
    }
}

std::string format_summary(const std::vector<ExperimentResult>& results) {
    std::ostringstream os;
    os << std::setprecision(4);
    for (const auto& r : results) {
        const ExperimentConfig& c = r.spec.config;
        const FleetResult& f = r.fleet;
        os << c.name << "\n"
           << "  " << c.n_arrays << " x " << c.code.label() << " on " << c.disk.name << ", hep " << c.policy.hep
           << ", dos " << c.policy.dos << (c.policy.spare ? ", hot spare" : ", manual replacement") << ", "
           << c.mission_hours << " h\n"
           << "  NOMDU " << f.nomdu << " +/- " << f.nomdu_err << "  (" << f.nomdu * 1e12 << " bytes/hour/TB)\n"
           << "  NOMDL " << f.nomdl << " +/- " << f.nomdl_err << "  (" << f.nomdl * 1e12 << " bytes/TB; whole-array "
           << f.nomdl_adl << ", stripe " << f.nomdl_sdl << ")\n"
           << "  ADL " << f.counts.adl << "  SDL " << f.counts.sdl << "  ADU " << f.counts.adu << "  SDU "
           << f.counts.sdu << "  disk failures " << f.counts.disk_failures << "  human errors "
           << f.counts.human_errors << "\n";
        if (r.markov)
            os << "  Markov NOMDU " << r.markov->nomdu << "  NOMDL whole-array " << r.markov->nomdl_ddf << "  stripe "
               << r.markov->nomdl_lse << "\n";
    }
    return os.str();
}

void write_outputs(const std::string& dir, const std::vector<ExperimentResult>& results) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
    auto open = [&](const std::string& file) {
        std::ofstream f(fs::path(dir) / file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (fs::path(dir) / file).string());
        return f;
    };
    bool incidents = false, timeseries = false, markov = false;
    for (const auto& r : results) {
        incidents |= r.spec.config.outputs.incidents;
        timeseries |= r.spec.config.outputs.timeseries;
        markov |= r.markov.has_value();
    }
    {
        auto f = open("results.csv");
        write_results_csv(f, results);
    }
    {
        auto f = open("summary.txt");
        f << format_summary(results);
    }
    if (incidents) {
        auto f = open("incidents.csv");
        write_incidents_csv(f, results);
    }
    if (timeseries) {
        auto f = open("timeseries.csv");
        write_timeseries_csv(f, results);
    }
    if (markov) {
        auto f = open("markov.csv");
        write_markov_csv(f, results);
    }
}

}  // namespace raidsim
