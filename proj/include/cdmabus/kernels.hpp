#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace cdmabus::kernels {

// Chip-level inner loops. `chips` is an n_codes x S row-major 0/1 matrix
// (row k = spreading code k); `signs` is its bipolar image, +1 for chip 0
// and -1 for chip 1. Scalar versions are the reference; AVX2/NEON variants
// are selected at runtime and must be bit-identical.

/// sums[t] = sum over k of (bits[k] XOR chips[k*S + t]), t = 0..S-1.
void encode_sums_scalar(std::span<const std::uint8_t> bits,
                        std::span<const std::uint8_t> chips, std::size_t S,
                        std::span<std::uint8_t> sums);

/// corr[k] = sum over t of signs[k*S + t] * (2*sums[t] - N).
void correlate_all_scalar(std::span<const std::uint8_t> sums,
                          std::span<const std::int8_t> signs, std::size_t n_codes,
                          std::size_t S, int N, std::span<std::int32_t> corr);

/// sums[t] += chips[t]; one superposition contribution.
void accumulate_chips_scalar(std::span<const std::uint8_t> chips,
                             std::span<std::uint8_t> sums);

#if defined(CDMABUS_HAVE_AVX2)
void encode_sums_avx2(std::span<const std::uint8_t> bits,
                      std::span<const std::uint8_t> chips, std::size_t S,
                      std::span<std::uint8_t> sums);
void correlate_all_avx2(std::span<const std::uint8_t> sums,
                        std::span<const std::int8_t> signs, std::size_t n_codes,
                        std::size_t S, int N, std::span<std::int32_t> corr);
void accumulate_chips_avx2(std::span<const std::uint8_t> chips,
                           std::span<std::uint8_t> sums);
#endif

#if defined(CDMABUS_HAVE_NEON)
void encode_sums_neon(std::span<const std::uint8_t> bits,
                      std::span<const std::uint8_t> chips, std::size_t S,
                      std::span<std::uint8_t> sums);
void correlate_all_neon(std::span<const std::uint8_t> sums,
                        std::span<const std::int8_t> signs, std::size_t n_codes,
                        std::size_t S, int N, std::span<std::int32_t> corr);
void accumulate_chips_neon(std::span<const std::uint8_t> chips,
                           std::span<std::uint8_t> sums);
#endif

enum class Backend { scalar, avx2, neon };

/// Backend chosen at first use (CPUID on x86, compile target on ARM).
/// CDMABUS_BACKEND=scalar|avx2|neon in the environment overrides it.
Backend active_backend();
std::string_view backend_name(Backend b);

/// Force a backend (testing hook). Throws if unsupported on this host.
void force_backend(Backend b);

// Dispatched entry points.
void encode_sums(std::span<const std::uint8_t> bits,
                 std::span<const std::uint8_t> chips, std::size_t S,
                 std::span<std::uint8_t> sums);
void correlate_all(std::span<const std::uint8_t> sums,
                   std::span<const std::int8_t> signs, std::size_t n_codes,
                   std::size_t S, int N, std::span<std::int32_t> corr);
void accumulate_chips(std::span<const std::uint8_t> chips,
                      std::span<std::uint8_t> sums);

}  // namespace cdmabus::kernels
