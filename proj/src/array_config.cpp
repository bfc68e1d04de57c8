#include "raidsim/array_config.hpp"

#include <cmath>

namespace raidsim {

DiskModel DiskModel::scaled(std::uint64_t divisor) const {
    DiskModel d = *this;
    if (divisor > 1) {
        const std::uint64_t c = capacity / divisor;
        d.capacity = sector_size ? c - c % sector_size : c;
    }
    return d;
}

std::string CodeConfig::label() const {
    if (is_raid1()) return "RAID1(1+1)";
    if (s == 0 && (r == 1 || r == 2))
        return (r == 1 ? "RAID5(" : "RAID6(") + std::to_string(n - r) + "+" + std::to_string(r) + ")";
    return "PMDS(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(r) + "," +
           std::to_string(s) + ")";
}

CodeConfig CodeConfig::raid1() { return CodeConfig{4, 2, 1, 0, 16384}; }
CodeConfig CodeConfig::raid5(std::uint32_t k) { return CodeConfig{4, k + 1, 1, 0, 16384}; }
CodeConfig CodeConfig::raid6(std::uint32_t k) { return CodeConfig{4, k + 2, 2, 0, 16384}; }
CodeConfig CodeConfig::pmds(std::uint32_t m, std::uint32_t n, std::uint32_t r, std::uint32_t s) {
    return CodeConfig{m, n, r, s, 16384};
}

double erf(const CodeConfig& c) {
    return static_cast<double>(c.m) * c.n / static_cast<double>(c.data_symbols());
}

double usable_capacity(const CodeConfig& code, const DiskModel& disk, std::uint64_t n_arrays) {
    // physical / erf, written to avoid a division round trip
    return static_cast<double>(n_arrays) * static_cast<double>(disk.capacity) *
           static_cast<double>(code.data_symbols()) / static_cast<double>(code.m);
}

namespace {

void check_weibull(std::vector<Violation>& out, const std::string& where, const WeibullParams& p) {
    if (!p.valid())
        out.push_back({where, "Weibull parameters need eta > 0, beta > 0, gamma >= 0"});
}

void check_probability(std::vector<Violation>& out, const std::string& where, double v) {
    if (!(v >= 0.0 && v <= 1.0)) out.push_back({where, "must lie in [0, 1]"});
}

}  // namespace

std::vector<Violation> validate(const CodeConfig& c) {
    std::vector<Violation> out;
    if (c.m < 1) out.push_back({"code.m", "needs at least one row per stripe"});
    if (c.n < 2) out.push_back({"code.n", "an array needs at least two devices"});
    if (c.r >= c.n) out.push_back({"code.r", "row parities must be fewer than devices"});
    if (c.m >= 1 && c.r < c.n && c.data_symbols() <= 0)
        out.push_back({"code.s", "global parities leave no usable capacity"});
    if (c.chunk_size == 0) out.push_back({"code.chunk_size", "must be positive"});
    if (c.n > 64) out.push_back({"code.n", "at most 64 devices per array are supported"});
    return out;
}

std::vector<Violation> validate(const DiskModel& d) {
    std::vector<Violation> out;
    if (d.sector_size == 0) out.push_back({"disk.sector_size", "must be positive"});
    if (d.capacity == 0) out.push_back({"disk.capacity", "must be positive"});
    else if (d.sector_size && d.capacity % d.sector_size != 0)
        out.push_back({"disk.capacity", "must be a multiple of the sector size"});
    check_weibull(out, "disk.df", d.d_df);
    check_weibull(out, "disk.rec", d.d_rec);
    check_weibull(out, "disk.lse", d.d_lse);
    check_weibull(out, "disk.scrub", d.d_scrub);
    return out;
}

std::vector<Violation> validate(const PolicyConfig& p) {
    std::vector<Violation> out;
    check_probability(out, "policy.hep", p.hep);
    check_probability(out, "policy.dos", p.dos);
    if (p.hep_sampling >= 0.0) {
        check_probability(out, "policy.hep_sampling", p.hep_sampling);
        if (p.hep > 0.0 && !(p.hep_sampling > 0.0))
            out.push_back({"policy.hep_sampling", "must be positive when hep is positive"});
        if (p.hep < 1.0 && p.hep_sampling >= 1.0)
            out.push_back({"policy.hep_sampling", "must be below 1 when hep is below 1"});
    }
    check_weibull(out, "policy.dr", p.d_dr);
    check_weibull(out, "policy.her", p.d_her);
    check_weibull(out, "policy.crash", p.d_crash);
    check_weibull(out, "policy.br", p.d_br);
    check_weibull(out, "policy.sbr", p.d_sbr);
    return out;
}

std::vector<Violation> validate(const ExperimentConfig& cfg) {
    std::vector<Violation> out = validate(cfg.code);
    auto append = [&out](std::vector<Violation> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    append(validate(cfg.disk));
    append(validate(cfg.policy));
    if (cfg.name.empty()) out.push_back({"experiment.name", "must not be empty"});
    if (!(cfg.mission_hours > 0.0) || !std::isfinite(cfg.mission_hours))
        out.push_back({"experiment.mission_hours", "must be positive"});
    if (cfg.n_arrays < 1) out.push_back({"experiment.n_arrays", "must be at least 1"});
    if (cfg.capacity_scale != 1 && cfg.capacity_scale != 64 && cfg.capacity_scale != 16384)
        out.push_back({"experiment.capacity_scale", "must be one of 1, 64, 16384"});
    if (cfg.confidence != 0.90 && cfg.confidence != 0.95 && cfg.confidence != 0.99)
        out.push_back({"experiment.confidence", "must be one of 0.90, 0.95, 0.99"});
    if (out.empty()) {
        const DiskModel d = cfg.effective_disk();
        if (d.capacity < cfg.code.chunk_size)
            out.push_back({"experiment.capacity_scale", "scaled disk is smaller than one chunk"});
    }
    return out;
}

std::optional<DiskModel> builtin_disk(const std::string& name) {
    constexpr std::uint64_t TB = 1000000000000ULL;
    if (name == "diskA")
        return DiskModel{"diskA", TB, 4096, {0, 302016, 1.13}, {0, 22.7, 1.65}, {0, 12325, 1}, {0, 186, 1}};
    if (name == "diskB")
        return DiskModel{"diskB", TB, 4096, {0, 4833522, 0.576}, {0, 20.25, 1.15}, {0, 42857, 1}, {0, 160, 0.97}};
    if (name == "diskC")
        return DiskModel{"diskC", 288000000000ULL, 4096, {0, 1058364, 0.721}, {0, 6.75, 1.4}, {0, 50254, 1}, {0, 124, 2.1}};
    if (name == "elerath")
        return DiskModel{"elerath", TB, 4096, {0, 461386, 1.12}, {6, 12, 2}, {0, 9259, 1}, {6, 168, 3}};
    return std::nullopt;
}

std::vector<std::string> builtin_disk_names() { return {"diskA", "diskB", "diskC", "elerath"}; }

}  // namespace raidsim
