#include "raidsim/failure_conditions.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

#include "raidsim/errors.hpp"

namespace raidsim {

ArrayState ArrayState::healthy(const CodeConfig& code) {
    return ArrayState{code, std::vector<DeviceStatus>(code.n, DeviceStatus::Operational), {}};
}

std::string ArrayState::invariant_violation() const {
    if (device_status.size() != code.n) return "device_status size differs from n";
    for (const auto& [stripe, counts] : lse_counts) {
        if (counts.size() != code.n) return "stripe " + std::to_string(stripe) + " has wrong width";
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] != 0 && device_status[i] != DeviceStatus::Operational)
                return "non-operational device " + std::to_string(i) + " holds LSEs";
    }
    return {};
}

std::string ConditionSet::to_string() const {
    std::string out;
    auto put = [&](Condition c, const char* name) {
        if (!has(c)) return;
        if (!out.empty()) out += '|';
        out += name;
    };
    put(Condition::ADL, "ADL");
    put(Condition::SDL, "SDL");
    put(Condition::ADU, "ADU");
    put(Condition::SDU, "SDU");
    return out.empty() ? "none" : out;
}

ConditionSet make_conditions(std::initializer_list<Condition> cs) {
    ConditionSet out;
    for (Condition c : cs) out.add(c);
    return out;
}

std::uint32_t count_df(const ArrayState& s) {
    return static_cast<std::uint32_t>(std::count_if(s.device_status.begin(), s.device_status.end(), [](auto d) {
        return d == DeviceStatus::Failed || d == DeviceStatus::Rebuilding;
    }));
}

std::uint32_t count_he(const ArrayState& s) {
    return static_cast<std::uint32_t>(
        std::count(s.device_status.begin(), s.device_status.end(), DeviceStatus::WronglyRemoved));
}

namespace {

// Sum of the k largest entries.
std::uint64_t top_k_sum(std::span<const std::uint32_t> counts, std::uint32_t k) {
    if (k == 0) return 0;
    std::array<std::uint32_t, 64> buf;
    const std::size_t n = std::min<std::size_t>(counts.size(), buf.size());
    std::copy_n(counts.begin(), n, buf.begin());
    const std::size_t kk = std::min<std::size_t>(k, n);
    std::partial_sort(buf.begin(), buf.begin() + kk, buf.begin() + n, std::greater<>());
    return std::accumulate(buf.begin(), buf.begin() + kk, std::uint64_t{0});
}

}  // namespace

std::uint64_t max_correctable_lse(std::span<const std::uint32_t> counts, const CodeConfig& code,
                                  std::uint32_t df) {
    if (df > code.r) throw PreconditionError("max_correctable_lse requires df <= r");
    return code.s + top_k_sum(counts, code.r - df);
}

Classification classify_detailed(const ArrayState& state) {
    Classification out;
    const CodeConfig& c = state.code;
    const std::uint32_t df = count_df(state);
    const std::uint32_t he = count_he(state);
    if (df > c.r) {
        out.conditions.add(Condition::ADL);
        return out;
    }
    if (df + he > c.r) out.conditions.add(Condition::ADU);
    const bool check_sdu = he > 0 && df + he <= c.r;
    for (const auto& [stripe, counts] : state.lse_counts) {
        const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
        if (total == 0) continue;
        // Counts on non-operational devices are zero, so the sums over non-failed and over
        // operational devices coincide with the plain total and top-k.
        if (total > max_correctable_lse(counts, c, df)) {
            out.lost_stripes.push_back(stripe);
        } else if (check_sdu && c.s + top_k_sum(counts, c.r - df - he) < total) {
            out.unavailable_stripes.push_back(stripe);
        }
    }
    if (!out.lost_stripes.empty()) out.conditions.add(Condition::SDL);
    if (!out.unavailable_stripes.empty()) out.conditions.add(Condition::SDU);
    return out;
}

ConditionSet classify(const ArrayState& state) { return classify_detailed(state).conditions; }

namespace {

constexpr std::array<std::uint8_t, 256> kBits = [] {
    std::array<std::uint8_t, 256> t{};
    for (std::uint32_t i = 1; i < 256; ++i) t[i] = static_cast<std::uint8_t>(t[i >> 1] + (i & 1u));
    return t;
}();

}  // namespace

ConditionSet oracle_classify(const ArrayState& state) {
    const std::uint32_t n = state.code.n;
    if (n > 8) throw SizeError("oracle_classify enumerates subsets and is limited to n <= 8");
    const std::uint32_t r = state.code.r;
    const std::uint32_t s = state.code.s;

    std::uint32_t failed_mask = 0, operational_mask = 0, df = 0, he = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        switch (state.device_status[i]) {
            case DeviceStatus::Failed:
            case DeviceStatus::Rebuilding: failed_mask |= 1u << i; ++df; break;
            case DeviceStatus::WronglyRemoved: ++he; break;
            case DeviceStatus::Operational: operational_mask |= 1u << i; break;
        }
    }
    ConditionSet out;
    if (r < df) {
        out.add(Condition::ADL);
        return out;
    }
    if (r < df + he) out.add(Condition::ADU);

    const std::uint32_t full = (1u << n) - 1;
    for (const auto& [stripe, counts] : state.lse_counts) {
        std::array<std::uint32_t, 256> subset_sum;
        subset_sum[0] = 0;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            const std::uint32_t low = std::countr_zero(mask);
            subset_sum[mask] = subset_sum[mask & (mask - 1)] + counts[low];
        }
        const std::uint32_t total = subset_sum[full];

        // Recoverable: some set of at most r-df non-failed devices is treated as erased
        // and the LSEs left outside it fit in the s global parities.
        bool recoverable = false;
        for (std::uint32_t mask = 0; mask <= full && !recoverable; ++mask) {
            if (mask & failed_mask) continue;
            if (kBits[mask] > r - df) continue;
            if (total - subset_sum[mask] <= s) recoverable = true;
        }
        if (!recoverable) {
            out.add(Condition::SDL);
            continue;
        }
        if (he == 0 || df + he > r) continue;
        // Readable now: only operational devices can be used, and the missing devices
        // already consume df + he erasures.
        const std::uint32_t op_total = subset_sum[operational_mask];
        bool readable = false;
        for (std::uint32_t mask = 0; mask <= full && !readable; ++mask) {
            if (mask & ~operational_mask) continue;
            if (kBits[mask] > r - df - he) continue;
            if (op_total - subset_sum[mask] <= s) readable = true;
        }
        if (!readable) out.add(Condition::SDU);
    }
    return out;
}

}  // namespace raidsim
