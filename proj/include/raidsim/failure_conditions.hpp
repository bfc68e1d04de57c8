#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "raidsim/array_config.hpp"

namespace raidsim {

enum class DeviceStatus : std::uint8_t { Operational, Failed, WronglyRemoved, Rebuilding };

/// Instantaneous array snapshot. Only Operational devices may hold nonzero LSE counts.
struct ArrayState {
    CodeConfig code;
    std::vector<DeviceStatus> device_status;
    /// stripe index -> per-device lost-sector counts (size n). Absent stripes are clean.
    std::map<std::uint64_t, std::vector<std::uint32_t>> lse_counts;

    static ArrayState healthy(const CodeConfig& code);
    /// Empty string when the state respects its invariants, otherwise the first problem.
    std::string invariant_violation() const;
};

enum class Condition : std::uint8_t { ADL = 1, SDL = 2, ADU = 4, SDU = 8 };

class ConditionSet {
public:
    constexpr ConditionSet() = default;
    constexpr bool has(Condition c) const noexcept { return bits_ & static_cast<std::uint8_t>(c); }
    constexpr void add(Condition c) noexcept { bits_ |= static_cast<std::uint8_t>(c); }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr std::uint8_t bits() const noexcept { return bits_; }
    std::string to_string() const;

    friend constexpr bool operator==(ConditionSet, ConditionSet) = default;

private:
    std::uint8_t bits_ = 0;
};

ConditionSet make_conditions(std::initializer_list<Condition> cs);

/// Failed plus Rebuilding devices.
std::uint32_t count_df(const ArrayState& state);
/// WronglyRemoved devices.
std::uint32_t count_he(const ArrayState& state);

/// s plus the LSEs of the (r - df) devices holding the most LSEs.
std::uint64_t max_correctable_lse(std::span<const std::uint32_t> stripe_counts, const CodeConfig& code,
                                  std::uint32_t df);

ConditionSet classify(const ArrayState& state);

/// Per-stripe detail behind classify.
struct Classification {
    ConditionSet conditions;
    std::vector<std::uint64_t> lost_stripes;         // SDL stripes
    std::vector<std::uint64_t> unavailable_stripes;  // SDU stripes
};
Classification classify_detailed(const ArrayState& state);

/// Reference classifier that tries every absorbing device subset. Requires n <= 8.
ConditionSet oracle_classify(const ArrayState& state);

}  // namespace raidsim
