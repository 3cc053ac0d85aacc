#pragma once

#include <cstdint>
#include <vector>

#include "cdmabus/errors.hpp"

namespace cdmabus {

/// Fibonacci-style shift register with 1-based tap indices. Data shifts
/// R1 -> Rwidth; the XOR of the tapped registers feeds back into R1.
struct LfsrConfig {
    unsigned width = 8;
    std::vector<unsigned> taps;    // 1-based, each in [1, width]
    std::uint64_t seed = ~0ULL;    // bit (i-1) holds R_i; masked to width

    void validate() const;
    std::uint64_t masked_seed() const { return seed & mask(); }
    std::uint64_t mask() const { return (width >= 64) ? ~0ULL : ((1ULL << width) - 1); }
};

struct LfsrState {
    std::vector<std::uint8_t> registers;  // R1..Rwidth, one bit each

    static LfsrState from_seed(const LfsrConfig& config);
    bool is_zero() const;
    bool operator==(const LfsrState&) const = default;
};

LfsrState lfsr_step(const LfsrState& state, const LfsrConfig& config);

/// Orbit shape of the seed under repeated stepping. `tail` is the number of
/// steps before the orbit enters its cycle (0 when the seed recurs), `cycle`
/// the length of that cycle. With taps that exclude the last register the
/// step map is not injective and tail can be nonzero.
struct LfsrOrbit {
    std::uint64_t tail = 0;
    std::uint64_t cycle = 0;
    bool seed_recurs() const { return tail == 0; }
};

LfsrOrbit lfsr_orbit(const LfsrConfig& config);

/// Eventual cycle length of the seed's orbit; equals the first-return time
/// when the seed lies on the cycle. At most 2^width - 1.
std::uint64_t lfsr_period(const LfsrConfig& config);

}  // namespace cdmabus
