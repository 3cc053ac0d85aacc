#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cdmabus/codebook.hpp"
#include "cdmabus/errors.hpp"

namespace cdmabus {

/// Per-chip integer sums for one S-bit group; sums[t] in [0, S].
struct SumFrame {
    std::vector<std::uint8_t> sums;
    std::size_t group_size = 0;

    bool operator==(const SumFrame&) const = default;
};

/// A full word as n/S parallel groups.
struct WordFrame {
    std::vector<SumFrame> groups;
    unsigned word_width = 0;

    bool operator==(const WordFrame&) const = default;
};

/// Lines needed for an n-bit word with code length S:
/// (n/S) * ceil(log2(S+1)). Throws IncompatibleGeometry when S > n or S
/// does not divide n.
unsigned bus_width(unsigned n, unsigned S);

/// Binary lines per sum group, ceil(log2(S+1)).
unsigned sum_lines(unsigned S);

/// sums[t] = sum_k (bits[k] XOR code_k[t]).
SumFrame encode_group(std::span<const std::uint8_t> bits, const CodeBook& book);

/// Correlator decode: bit k = 1 iff corr_k > 0 with N = S. Zero correlation
/// throws AmbiguousBit; in strict mode any |corr_k| != S throws
/// IntegrityViolation (corrupted frame or non-orthogonal book).
std::vector<std::uint8_t> decode_group(const SumFrame& frame, const CodeBook& book,
                                       bool strict = false);

/// Signed despread of one code against a frame with caller-supplied user
/// count N: sum_t of (N - 2P(t)) where the chip is 1, (2P(t) - N) where 0.
int correlate(const SumFrame& frame, const SpreadingCode& code, int N);

/// 2P - N, the bipolar value whose unipolar chip sum is P.
int reconstruct_bipolar(int P, int N);

/// Split an n-bit word into contiguous S-bit batches (bits 0..S-1 first) and
/// encode each with the same book.
WordFrame encode_word(std::uint64_t word, unsigned n, const CodeBook& book);

std::uint64_t decode_word(const WordFrame& frame, const CodeBook& book,
                          bool strict = false);

}  // namespace cdmabus
