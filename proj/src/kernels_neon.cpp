#include <arm_neon.h>

#include <cassert>

#include "cdmabus/kernels.hpp"

namespace cdmabus::kernels {

void encode_sums_neon(std::span<const std::uint8_t> bits,
                      std::span<const std::uint8_t> chips, std::size_t S,
                      std::span<std::uint8_t> sums) {
    assert(bits.size() * S == chips.size());
    assert(sums.size() == S);
    std::size_t t0 = 0;
    for (; t0 + 16 <= S; t0 += 16) {
        uint8x16_t acc = vdupq_n_u8(0);
        for (std::size_t k = 0; k < bits.size(); ++k) {
            const uint8x16_t row = vld1q_u8(chips.data() + k * S + t0);
            acc = vaddq_u8(acc, veorq_u8(row, vdupq_n_u8(bits[k])));
        }
        vst1q_u8(sums.data() + t0, acc);
    }
    for (; t0 < S; ++t0) {
        std::uint8_t s = 0;
        for (std::size_t k = 0; k < bits.size(); ++k) {
            s = static_cast<std::uint8_t>(s + (bits[k] ^ chips[k * S + t0]));
        }
        sums[t0] = s;
    }
}

void correlate_all_neon(std::span<const std::uint8_t> sums,
                        std::span<const std::int8_t> signs, std::size_t n_codes,
                        std::size_t S, int N, std::span<std::int32_t> corr) {
    assert(sums.size() == S);
    assert(signs.size() == n_codes * S);
    assert(corr.size() == n_codes);
    for (std::size_t k = 0; k < n_codes; ++k) {
        std::int32_t acc = 0;
        std::size_t t0 = 0;
        for (; t0 + 8 <= S; t0 += 8) {
            const int16x8_t s16 =
                vreinterpretq_s16_u16(vmovl_u8(vld1_u8(sums.data() + t0)));
            const int16x8_t q = vsubq_s16(vaddq_s16(s16, s16), vdupq_n_s16(N));
            const int16x8_t c16 = vmovl_s8(vld1_s8(signs.data() + k * S + t0));
            acc += vaddvq_s32(vpaddlq_s16(vmulq_s16(c16, q)));
        }
        for (; t0 < S; ++t0) {
            acc += signs[k * S + t0] * (2 * static_cast<std::int32_t>(sums[t0]) - N);
        }
        corr[k] = acc;
    }
}

void accumulate_chips_neon(std::span<const std::uint8_t> chips,
                           std::span<std::uint8_t> sums) {
    assert(chips.size() == sums.size());
    const std::size_t S = chips.size();
    std::size_t t0 = 0;
    for (; t0 + 16 <= S; t0 += 16) {
        vst1q_u8(sums.data() + t0,
                 vaddq_u8(vld1q_u8(sums.data() + t0), vld1q_u8(chips.data() + t0)));
    }
    for (; t0 < S; ++t0) sums[t0] = static_cast<std::uint8_t>(sums[t0] + chips[t0]);
}

}  // namespace cdmabus::kernels
