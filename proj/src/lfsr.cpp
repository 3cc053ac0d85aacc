#include "cdmabus/lfsr.hpp"

#include <algorithm>
#include <unordered_map>

namespace cdmabus {

void LfsrConfig::validate() const {
    if (width < 2) throw InvalidConfig("lfsr width must be >= 2");
    if (width > 63) throw InvalidConfig("lfsr width must be <= 63");
    if (taps.empty()) throw InvalidConfig("lfsr tap set must be non-empty");
    for (unsigned t : taps) {
        if (t < 1 || t > width) throw InvalidConfig("lfsr tap index out of [1, width]");
    }
    if (masked_seed() == 0) throw InvalidConfig("lfsr seed must be non-zero");
}

LfsrState LfsrState::from_seed(const LfsrConfig& config) {
    config.validate();
    LfsrState s;
    s.registers.resize(config.width);
    for (unsigned i = 0; i < config.width; ++i) {
        s.registers[i] = static_cast<std::uint8_t>((config.masked_seed() >> i) & 1);
    }
    return s;
}

bool LfsrState::is_zero() const {
    return std::all_of(registers.begin(), registers.end(),
                       [](std::uint8_t b) { return b == 0; });
}

LfsrState lfsr_step(const LfsrState& state, const LfsrConfig& config) {
    config.validate();
    if (state.registers.size() != config.width)
        throw InvalidState("state width does not match config");
    if (state.is_zero()) throw InvalidState("all-zero lfsr state");

    std::uint8_t feedback = 0;
    for (unsigned t : config.taps) feedback ^= state.registers[t - 1];

    LfsrState next;
    next.registers.resize(config.width);
    next.registers[0] = feedback;
    for (unsigned i = 1; i < config.width; ++i) {
        next.registers[i] = state.registers[i - 1];
    }
    return next;
}

namespace {

std::uint64_t pack(const LfsrState& s) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < s.registers.size(); ++i) {
        v |= static_cast<std::uint64_t>(s.registers[i]) << i;
    }
    return v;
}

}  // namespace

LfsrOrbit lfsr_orbit(const LfsrConfig& config) {
    config.validate();
    LfsrState state = LfsrState::from_seed(config);
    std::unordered_map<std::uint64_t, std::uint64_t> seen;
    std::uint64_t step_count = 0;
    for (;;) {
        auto [it, inserted] = seen.emplace(pack(state), step_count);
        if (!inserted) {
            return LfsrOrbit{it->second, step_count - it->second};
        }
        state = lfsr_step(state, config);
        ++step_count;
    }
}

std::uint64_t lfsr_period(const LfsrConfig& config) {
    return lfsr_orbit(config).cycle;
}

}  // namespace cdmabus
