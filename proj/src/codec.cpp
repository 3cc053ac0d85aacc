#include "cdmabus/codec.hpp"

#include <bit>
#include <cassert>
#include <string>

#include "cdmabus/kernels.hpp"

namespace cdmabus {

unsigned sum_lines(unsigned S) {
    unsigned lines = 0;
    while ((1U << lines) < S + 1) ++lines;
    return lines;
}

unsigned bus_width(unsigned n, unsigned S) {
    if (S < 2) throw IncompatibleGeometry("code length must be >= 2");
    if (S > n)
        throw IncompatibleGeometry("code length " + std::to_string(S) +
                                   " exceeds word width " + std::to_string(n));
    if (n % S != 0)
        throw IncompatibleGeometry("code length " + std::to_string(S) +
                                   " does not divide word width " + std::to_string(n));
    return (n / S) * sum_lines(S);
}

SumFrame encode_group(std::span<const std::uint8_t> bits, const CodeBook& book) {
    const std::size_t S = book.length();
    if (bits.size() != S)
        throw GeometryError("bit group length does not match code length");
    SumFrame frame;
    frame.group_size = S;
    frame.sums.resize(S);
    kernels::encode_sums(bits, book.chip_matrix(), S, frame.sums);
    for (std::uint8_t s : frame.sums) assert(s <= S);
    return frame;
}

std::vector<std::uint8_t> decode_group(const SumFrame& frame, const CodeBook& book,
                                       bool strict) {
    const std::size_t S = book.length();
    if (frame.group_size != S || frame.sums.size() != S)
        throw GeometryError("frame group size does not match code length");
    std::vector<std::int32_t> corr(S);
    kernels::correlate_all(frame.sums, book.sign_matrix(), S, S,
                           static_cast<int>(S), corr);
    std::vector<std::uint8_t> bits(S);
    for (std::size_t k = 0; k < S; ++k) {
        if (corr[k] == 0) throw AmbiguousBit("zero correlation for bit", k);
        if (strict && corr[k] != static_cast<int>(S) &&
            corr[k] != -static_cast<int>(S))
            throw IntegrityViolation("correlation magnitude != S for bit", k);
        bits[k] = corr[k] > 0 ? 1 : 0;
    }
    return bits;
}

int correlate(const SumFrame& frame, const SpreadingCode& code, int N) {
    if (frame.sums.size() != code.chips.size())
        throw GeometryError("frame and code length mismatch");
    int acc = 0;
    for (std::size_t t = 0; t < frame.sums.size(); ++t) {
        const int q = 2 * static_cast<int>(frame.sums[t]) - N;
        acc += code.chips[t] ? -q : q;
    }
    return acc;
}

int reconstruct_bipolar(int P, int N) {
    if (P < 0 || P > N) throw RangeError("sum value out of [0, N]");
    return 2 * P - N;
}

WordFrame encode_word(std::uint64_t word, unsigned n, const CodeBook& book) {
    const unsigned S = static_cast<unsigned>(book.length());
    bus_width(n, S);  // geometry gate
    if (n > 64) throw IncompatibleGeometry("word width > 64 not supported");
    WordFrame frame;
    frame.word_width = n;
    const unsigned batches = n / S;
    frame.groups.reserve(batches);
    std::vector<std::uint8_t> bits(S);
    for (unsigned g = 0; g < batches; ++g) {
        for (unsigned k = 0; k < S; ++k) {
            bits[k] = static_cast<std::uint8_t>((word >> (g * S + k)) & 1);
        }
        frame.groups.push_back(encode_group(bits, book));
    }
    return frame;
}

std::uint64_t decode_word(const WordFrame& frame, const CodeBook& book,
                          bool strict) {
    const unsigned S = static_cast<unsigned>(book.length());
    if (frame.word_width == 0 || frame.groups.size() != frame.word_width / S)
        throw GeometryError("word frame group count inconsistent with width");
    std::uint64_t word = 0;
    for (std::size_t g = 0; g < frame.groups.size(); ++g) {
        std::vector<std::uint8_t> bits;
        try {
            bits = decode_group(frame.groups[g], book, strict);
        } catch (const AmbiguousBit& e) {
            throw AmbiguousBit("batch " + std::to_string(g) + ": " + e.what(),
                               g * S + e.bit);
        } catch (const IntegrityViolation& e) {
            throw IntegrityViolation("batch " + std::to_string(g) + ": " + e.what(),
                                     g * S + e.bit);
        }
        for (unsigned k = 0; k < S; ++k) {
            word |= static_cast<std::uint64_t>(bits[k]) << (g * S + k);
        }
    }
    return word;
}

}  // namespace cdmabus
