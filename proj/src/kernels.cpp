#include "cdmabus/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <string>

#include "cdmabus/errors.hpp"

namespace cdmabus::kernels {

void encode_sums_scalar(std::span<const std::uint8_t> bits,
                        std::span<const std::uint8_t> chips, std::size_t S,
                        std::span<std::uint8_t> sums) {
    assert(bits.size() * S == chips.size());
    assert(sums.size() == S);
    for (std::size_t t = 0; t < S; ++t) sums[t] = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const std::uint8_t b = bits[k];
        const std::uint8_t* row = chips.data() + k * S;
        for (std::size_t t = 0; t < S; ++t) {
            sums[t] = static_cast<std::uint8_t>(sums[t] + (b ^ row[t]));
        }
    }
}

void correlate_all_scalar(std::span<const std::uint8_t> sums,
                          std::span<const std::int8_t> signs, std::size_t n_codes,
                          std::size_t S, int N, std::span<std::int32_t> corr) {
    assert(sums.size() == S);
    assert(signs.size() == n_codes * S);
    assert(corr.size() == n_codes);
    for (std::size_t k = 0; k < n_codes; ++k) {
        const std::int8_t* row = signs.data() + k * S;
        std::int32_t acc = 0;
        for (std::size_t t = 0; t < S; ++t) {
            const std::int32_t q = 2 * static_cast<std::int32_t>(sums[t]) - N;
            acc += row[t] * q;
        }
        corr[k] = acc;
    }
}

void accumulate_chips_scalar(std::span<const std::uint8_t> chips,
                             std::span<std::uint8_t> sums) {
    assert(chips.size() == sums.size());
    for (std::size_t t = 0; t < chips.size(); ++t) {
        sums[t] = static_cast<std::uint8_t>(sums[t] + chips[t]);
    }
}

namespace {

Backend detect_backend() {
    if (const char* env = std::getenv("CDMABUS_BACKEND")) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
#if defined(CDMABUS_HAVE_AVX2)
        if (v == "avx2") return Backend::avx2;
#endif
#if defined(CDMABUS_HAVE_NEON)
        if (v == "neon") return Backend::neon;
#endif
        return Backend::scalar;
    }
#if defined(CDMABUS_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
#if defined(CDMABUS_HAVE_NEON)
    return Backend::neon;
#endif
    return Backend::scalar;
}

Backend g_backend = detect_backend();

}  // namespace

Backend active_backend() { return g_backend; }

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

void force_backend(Backend b) {
    switch (b) {
        case Backend::scalar:
            break;
        case Backend::avx2:
#if defined(CDMABUS_HAVE_AVX2)
            if (!__builtin_cpu_supports("avx2"))
                throw Error("avx2 not supported on this host");
            break;
#else
            throw Error("avx2 backend not built");
#endif
        case Backend::neon:
#if !defined(CDMABUS_HAVE_NEON)
            throw Error("neon backend not built");
#else
            break;
#endif
    }
    g_backend = b;
}

void encode_sums(std::span<const std::uint8_t> bits,
                 std::span<const std::uint8_t> chips, std::size_t S,
                 std::span<std::uint8_t> sums) {
    switch (g_backend) {
#if defined(CDMABUS_HAVE_AVX2)
        case Backend::avx2: encode_sums_avx2(bits, chips, S, sums); return;
#endif
#if defined(CDMABUS_HAVE_NEON)
        case Backend::neon: encode_sums_neon(bits, chips, S, sums); return;
#endif
        default: encode_sums_scalar(bits, chips, S, sums); return;
    }
}

void correlate_all(std::span<const std::uint8_t> sums,
                   std::span<const std::int8_t> signs, std::size_t n_codes,
                   std::size_t S, int N, std::span<std::int32_t> corr) {
    switch (g_backend) {
#if defined(CDMABUS_HAVE_AVX2)
        case Backend::avx2: correlate_all_avx2(sums, signs, n_codes, S, N, corr); return;
#endif
#if defined(CDMABUS_HAVE_NEON)
        case Backend::neon: correlate_all_neon(sums, signs, n_codes, S, N, corr); return;
#endif
        default: correlate_all_scalar(sums, signs, n_codes, S, N, corr); return;
    }
}

void accumulate_chips(std::span<const std::uint8_t> chips,
                      std::span<std::uint8_t> sums) {
    switch (g_backend) {
#if defined(CDMABUS_HAVE_AVX2)
        case Backend::avx2: accumulate_chips_avx2(chips, sums); return;
#endif
#if defined(CDMABUS_HAVE_NEON)
        case Backend::neon: accumulate_chips_neon(chips, sums); return;
#endif
        default: accumulate_chips_scalar(chips, sums); return;
    }
}

}  // namespace cdmabus::kernels
