#include "cdmabus/channel.hpp"

#include "cdmabus/kernels.hpp"

namespace cdmabus {

ChannelFrame superpose(std::span<const std::vector<std::uint8_t>> chips_per_user) {
    ChannelFrame frame;
    frame.active_count = static_cast<unsigned>(chips_per_user.size());
    if (chips_per_user.empty()) return frame;
    const std::size_t S = chips_per_user.front().size();
    frame.sums.assign(S, 0);
    for (const auto& chips : chips_per_user) {
        if (chips.size() != S) throw GeometryError("chip vector length mismatch");
        kernels::accumulate_chips(chips, frame.sums);
    }
    return frame;
}

std::vector<std::uint8_t> multi_access_round(std::span<const std::uint8_t> bits,
                                             std::span<const SpreadingCode> codes) {
    if (bits.size() != codes.size())
        throw GeometryError("one code per active user required");
    const std::size_t users = bits.size();
    for (std::size_t a = 0; a < users; ++a) {
        for (std::size_t b = a + 1; b < users; ++b) {
            if (codes[a].chips == codes[b].chips)
                throw CodeCollision("duplicate spreading code in round");
        }
    }
    std::vector<std::vector<std::uint8_t>> spread(users);
    for (std::size_t u = 0; u < users; ++u) {
        const auto& chips = codes[u].chips;
        spread[u].resize(chips.size());
        for (std::size_t t = 0; t < chips.size(); ++t) {
            spread[u][t] = bits[u] ^ chips[t];
        }
    }
    const ChannelFrame frame = superpose(spread);

    SumFrame sf{frame.sums, frame.sums.size()};
    std::vector<std::uint8_t> decoded(users);
    for (std::size_t u = 0; u < users; ++u) {
        const int corr = correlate(sf, codes[u], static_cast<int>(frame.active_count));
        if (corr == 0) throw AmbiguousBit("zero correlation for user", u);
        decoded[u] = corr > 0 ? 1 : 0;
    }
    return decoded;
}

ChannelFrame inject_errors(const ChannelFrame& frame, const ChannelConfig& config) {
    std::mt19937_64 rng(config.rng_seed);
    return inject_errors(frame, config, rng);
}

ChannelFrame inject_errors(const ChannelFrame& frame, const ChannelConfig& config,
                           std::mt19937_64& rng) {
    ChannelFrame out = frame;
    if (config.error_rate <= 0.0) return out;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<unsigned> value(0, frame.active_count);
    for (auto& s : out.sums) {
        if (coin(rng) < config.error_rate) {
            s = static_cast<std::uint8_t>(value(rng));
        }
    }
    return out;
}

}  // namespace cdmabus
