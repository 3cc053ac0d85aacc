#include <immintrin.h>

#include <cassert>

#include "cdmabus/kernels.hpp"

namespace cdmabus::kernels {

namespace {

alignas(32) constexpr std::int32_t kMaskTable[16] = {-1, -1, -1, -1, -1, -1, -1, -1,
                                                     0,  0,  0,  0,  0,  0,  0,  0};

// Lane mask enabling the first `n` 32-bit lanes, n in [0, 8).
inline __m256i lane_mask(std::size_t n) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(kMaskTable + 8 - n));
}

inline std::int32_t hsum_epi32(__m256i v) {
    __m128i s = _mm_add_epi32(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
    s = _mm_add_epi32(s, _mm_shuffle_epi32(s, 0x4E));
    s = _mm_add_epi32(s, _mm_shuffle_epi32(s, 0xB1));
    return _mm_cvtsi128_si32(s);
}

}  // namespace

void encode_sums_avx2(std::span<const std::uint8_t> bits,
                      std::span<const std::uint8_t> chips, std::size_t S,
                      std::span<std::uint8_t> sums) {
    assert(bits.size() * S == chips.size());
    assert(sums.size() == S);
    std::size_t t0 = 0;
    while (t0 < S) {
        const std::size_t rem = S - t0;
        if (rem >= 32) {
            __m256i acc = _mm256_setzero_si256();
            for (std::size_t k = 0; k < bits.size(); ++k) {
                const __m256i row = _mm256_loadu_si256(
                    reinterpret_cast<const __m256i*>(chips.data() + k * S + t0));
                const __m256i b = _mm256_set1_epi8(static_cast<char>(bits[k]));
                acc = _mm256_add_epi8(acc, _mm256_xor_si256(row, b));
            }
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(sums.data() + t0), acc);
            t0 += 32;
            continue;
        }
        const std::size_t lanes = rem / 4;
        if (lanes > 0) {
            const __m256i mask = lane_mask(lanes);
            __m256i acc = _mm256_setzero_si256();
            for (std::size_t k = 0; k < bits.size(); ++k) {
                const __m256i row = _mm256_maskload_epi32(
                    reinterpret_cast<const int*>(chips.data() + k * S + t0), mask);
                const __m256i b = _mm256_set1_epi8(static_cast<char>(bits[k]));
                acc = _mm256_add_epi8(acc, _mm256_xor_si256(row, b));
            }
            _mm256_maskstore_epi32(reinterpret_cast<int*>(sums.data() + t0), mask, acc);
            t0 += lanes * 4;
        }
        // sub-word remainder (S not a multiple of 4)
        for (std::size_t t = t0; t < S; ++t) {
            std::uint8_t s = 0;
            for (std::size_t k = 0; k < bits.size(); ++k) {
                s = static_cast<std::uint8_t>(s + (bits[k] ^ chips[k * S + t]));
            }
            sums[t] = s;
        }
        break;
    }
}

void correlate_all_avx2(std::span<const std::uint8_t> sums,
                        std::span<const std::int8_t> signs, std::size_t n_codes,
                        std::size_t S, int N, std::span<std::int32_t> corr) {
    assert(sums.size() == S);
    assert(signs.size() == n_codes * S);
    assert(corr.size() == n_codes);
    for (std::size_t k = 0; k < n_codes; ++k) corr[k] = 0;

    const __m256i n16 = _mm256_set1_epi16(static_cast<short>(N));
    std::size_t t0 = 0;
    while (t0 < S) {
        const std::size_t rem = S - t0;
        const std::size_t take = (rem >= 32) ? 32 : (rem / 4) * 4;
        if (take == 0) break;
        const bool full = (take == 32);
        const __m256i mask = full ? _mm256_set1_epi32(-1) : lane_mask(take / 4);

        const __m256i sraw =
            full ? _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sums.data() + t0))
                 : _mm256_maskload_epi32(reinterpret_cast<const int*>(sums.data() + t0), mask);
        const __m256i slo = _mm256_cvtepu8_epi16(_mm256_castsi256_si128(sraw));
        const __m256i shi = _mm256_cvtepu8_epi16(_mm256_extracti128_si256(sraw, 1));
        const __m256i qlo = _mm256_sub_epi16(_mm256_add_epi16(slo, slo), n16);
        const __m256i qhi = _mm256_sub_epi16(_mm256_add_epi16(shi, shi), n16);

        for (std::size_t k = 0; k < n_codes; ++k) {
            const std::int8_t* row = signs.data() + k * S + t0;
            // masked-off lanes load as 0, so they contribute nothing
            const __m256i craw =
                full ? _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row))
                     : _mm256_maskload_epi32(reinterpret_cast<const int*>(row), mask);
            const __m256i clo = _mm256_cvtepi8_epi16(_mm256_castsi256_si128(craw));
            const __m256i chi = _mm256_cvtepi8_epi16(_mm256_extracti128_si256(craw, 1));
            const __m256i acc = _mm256_add_epi32(_mm256_madd_epi16(clo, qlo),
                                                 _mm256_madd_epi16(chi, qhi));
            corr[k] += hsum_epi32(acc);
        }
        t0 += take;
    }
    // sub-word remainder
    for (std::size_t k = 0; k < n_codes; ++k) {
        for (std::size_t t = t0; t < S; ++t) {
            corr[k] += signs[k * S + t] * (2 * static_cast<std::int32_t>(sums[t]) - N);
        }
    }
}

void accumulate_chips_avx2(std::span<const std::uint8_t> chips,
                           std::span<std::uint8_t> sums) {
    assert(chips.size() == sums.size());
    const std::size_t S = chips.size();
    std::size_t t0 = 0;
    for (; t0 + 32 <= S; t0 += 32) {
        const __m256i a =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sums.data() + t0));
        const __m256i b =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(chips.data() + t0));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(sums.data() + t0),
                            _mm256_add_epi8(a, b));
    }
    const std::size_t lanes = (S - t0) / 4;
    if (lanes > 0) {
        const __m256i mask = lane_mask(lanes);
        const __m256i a =
            _mm256_maskload_epi32(reinterpret_cast<const int*>(sums.data() + t0), mask);
        const __m256i b =
            _mm256_maskload_epi32(reinterpret_cast<const int*>(chips.data() + t0), mask);
        _mm256_maskstore_epi32(reinterpret_cast<int*>(sums.data() + t0), mask,
                               _mm256_add_epi8(a, b));
        t0 += lanes * 4;
    }
    for (; t0 < S; ++t0) sums[t0] = static_cast<std::uint8_t>(sums[t0] + chips[t0]);
}

}  // namespace cdmabus::kernels
