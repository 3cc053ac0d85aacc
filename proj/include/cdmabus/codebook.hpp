#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cdmabus/errors.hpp"
#include "cdmabus/lfsr.hpp"

namespace cdmabus {

struct SpreadingCode {
    std::vector<std::uint8_t> chips;  // 0/1 per chip
    std::size_t index = 0;            // position within the owning book
};

enum class BookKind { walsh, lfsr_window, custom };

std::string to_string(BookKind kind);
BookKind book_kind_from_string(const std::string& s);

/// A square family of S spreading codes of length S, with the bipolar Gram
/// matrix cached. Immutable after construction.
class CodeBook {
public:
    CodeBook(BookKind kind, std::vector<std::vector<std::uint8_t>> chip_rows);

    std::size_t length() const { return length_; }
    BookKind kind() const { return kind_; }
    const SpreadingCode& code(std::size_t k) const { return codes_[k]; }
    const std::vector<SpreadingCode>& codes() const { return codes_; }

    /// gram[j][k] = sum_t (1-2*chips_j[t]) * (1-2*chips_k[t]); diagonal == S.
    int gram(std::size_t j, std::size_t k) const { return gram_[j * length_ + k]; }
    std::span<const int> gram_flat() const { return gram_; }

    // flattened layouts consumed by the kernels
    std::span<const std::uint8_t> chip_matrix() const { return chip_matrix_; }
    std::span<const std::int8_t> sign_matrix() const { return sign_matrix_; }

    std::string serialize() const;
    void save(const std::filesystem::path& path) const;
    static CodeBook parse(const std::string& text);
    static CodeBook load(const std::filesystem::path& path);

private:
    std::size_t length_;
    BookKind kind_;
    std::vector<SpreadingCode> codes_;
    std::vector<std::uint8_t> chip_matrix_;  // S*S row-major
    std::vector<std::int8_t> sign_matrix_;   // +1 for chip 0, -1 for chip 1
    std::vector<int> gram_;
};

/// Rows of the order-S Sylvester Hadamard matrix, +1 -> chip 0, -1 -> chip 1.
/// S must be a power of two >= 2.
CodeBook walsh_codebook(std::size_t S);

/// Run the LFSR for S steps from the seed; code k is the time series of
/// register R_k (SIPO reading). Requires config.width >= S.
CodeBook lfsr_parallel_codebook(const LfsrConfig& config, std::size_t S);

std::vector<std::vector<int>> gram_matrix(const CodeBook& book);

struct ValidationReport {
    bool orthogonal = false;
    bool decodable = false;
    int worst_offdiag = 0;
};

/// orthogonal: all off-diagonal Gram entries zero. decodable: round trip
/// through encode/decode holds for every input (exhaustive when 2^S <= 65536,
/// else 10^4 seeded random vectors).
ValidationReport validate(const CodeBook& book);

}  // namespace cdmabus
