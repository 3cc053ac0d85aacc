#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cdmabus/codebook.hpp"
#include "cdmabus/codec.hpp"
#include "cdmabus/errors.hpp"

namespace cdmabus {

struct ChannelConfig {
    unsigned max_users = 8;
    unsigned code_length = 8;
    double error_rate = 0.0;  // probability per transmitted sum value
    std::uint64_t rng_seed = 0;
};

/// Output of the parallel counter: per-chip count of asserted inputs,
/// together with the number of users that drove the frame.
struct ChannelFrame {
    std::vector<std::uint8_t> sums;
    unsigned active_count = 0;

    bool operator==(const ChannelFrame&) const = default;
};

/// sums[t] = number of users whose chip[t] == 1.
ChannelFrame superpose(std::span<const std::vector<std::uint8_t>> chips_per_user);

/// One concurrent-access round: each user u spreads bits[u] with codes[u],
/// frames are superposed, and each receiver despreads with N = user count.
/// Codes must be pairwise distinct.
std::vector<std::uint8_t> multi_access_round(std::span<const std::uint8_t> bits,
                                             std::span<const SpreadingCode> codes);

/// With probability error_rate per slot, replace the sum with a uniform value
/// in [0, active_count]. Deterministic given config.rng_seed.
ChannelFrame inject_errors(const ChannelFrame& frame, const ChannelConfig& config);
ChannelFrame inject_errors(const ChannelFrame& frame, const ChannelConfig& config,
                           std::mt19937_64& rng);

}  // namespace cdmabus
