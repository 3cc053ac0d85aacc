#include "cdmabus/codebook.hpp"

#include <bit>
#include <fstream>
#include <random>
#include <sstream>

#include "cdmabus/codec.hpp"

namespace cdmabus {

std::string to_string(BookKind kind) {
    switch (kind) {
        case BookKind::walsh: return "walsh";
        case BookKind::lfsr_window: return "lfsr-window";
        case BookKind::custom: return "custom";
    }
    return "?";
}

BookKind book_kind_from_string(const std::string& s) {
    if (s == "walsh") return BookKind::walsh;
    if (s == "lfsr-window") return BookKind::lfsr_window;
    if (s == "custom") return BookKind::custom;
    throw InvalidConfig("unknown codebook kind: " + s);
}

CodeBook::CodeBook(BookKind kind, std::vector<std::vector<std::uint8_t>> chip_rows)
    : length_(chip_rows.size()), kind_(kind) {
    if (length_ == 0) throw InvalidConfig("empty codebook");
    codes_.reserve(length_);
    chip_matrix_.reserve(length_ * length_);
    sign_matrix_.reserve(length_ * length_);
    for (std::size_t k = 0; k < length_; ++k) {
        auto& row = chip_rows[k];
        if (row.size() != length_)
            throw GeometryError("code length does not match book size");
        for (std::uint8_t c : row) {
            if (c > 1) throw InvalidConfig("chips must be 0 or 1");
            chip_matrix_.push_back(c);
            sign_matrix_.push_back(c ? -1 : 1);
        }
        codes_.push_back(SpreadingCode{std::move(row), k});
    }
    gram_.assign(length_ * length_, 0);
    for (std::size_t j = 0; j < length_; ++j) {
        for (std::size_t k = j; k < length_; ++k) {
            int g = 0;
            for (std::size_t t = 0; t < length_; ++t) {
                g += sign_matrix_[j * length_ + t] * sign_matrix_[k * length_ + t];
            }
            gram_[j * length_ + k] = g;
            gram_[k * length_ + j] = g;
        }
    }
}

std::string CodeBook::serialize() const {
    std::ostringstream out;
    out << "S=" << length_ << " kind=" << to_string(kind_) << "\n";
    for (const auto& code : codes_) {
        for (std::uint8_t c : code.chips) out << static_cast<char>('0' + c);
        out << "\n";
    }
    return out.str();
}

void CodeBook::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << serialize();
}

CodeBook CodeBook::parse(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw InvalidConfig("empty codebook file");
    std::size_t S = 0;
    std::string kind_str;
    {
        std::istringstream hs(header);
        std::string field;
        while (hs >> field) {
            if (field.rfind("S=", 0) == 0) S = std::stoul(field.substr(2));
            else if (field.rfind("kind=", 0) == 0) kind_str = field.substr(5);
            else throw InvalidConfig("bad codebook header field: " + field);
        }
    }
    if (S == 0 || kind_str.empty())
        throw InvalidConfig("codebook header must declare S= and kind=");
    std::vector<std::vector<std::uint8_t>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.size() != S) throw InvalidConfig("codebook row of wrong length");
        std::vector<std::uint8_t> row;
        row.reserve(S);
        for (char c : line) {
            if (c != '0' && c != '1') throw InvalidConfig("codebook rows must be 0/1");
            row.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() != S) throw InvalidConfig("codebook must contain exactly S rows");
    return CodeBook(book_kind_from_string(kind_str), std::move(rows));
}

CodeBook CodeBook::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open codebook: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

CodeBook walsh_codebook(std::size_t S) {
    if (S < 2 || !std::has_single_bit(S))
        throw UnsupportedLength("walsh code length must be a power of two >= 2");
    // Sylvester doubling over chip parity: chip = popcount(j & t) mod 2
    std::vector<std::vector<std::uint8_t>> rows(S, std::vector<std::uint8_t>(S));
    for (std::size_t j = 0; j < S; ++j) {
        for (std::size_t t = 0; t < S; ++t) {
            rows[j][t] = static_cast<std::uint8_t>(std::popcount(j & t) & 1);
        }
    }
    return CodeBook(BookKind::walsh, std::move(rows));
}

CodeBook lfsr_parallel_codebook(const LfsrConfig& config, std::size_t S) {
    config.validate();
    if (config.width < S)
        throw InsufficientWidth("lfsr width smaller than requested code length");
    std::vector<std::vector<std::uint8_t>> rows(S, std::vector<std::uint8_t>(S));
    LfsrState state = LfsrState::from_seed(config);
    for (std::size_t t = 0; t < S; ++t) {
        state = lfsr_step(state, config);
        for (std::size_t k = 0; k < S; ++k) rows[k][t] = state.registers[k];
    }
    return CodeBook(BookKind::lfsr_window, std::move(rows));
}

std::vector<std::vector<int>> gram_matrix(const CodeBook& book) {
    const std::size_t S = book.length();
    std::vector<std::vector<int>> g(S, std::vector<int>(S));
    for (std::size_t j = 0; j < S; ++j)
        for (std::size_t k = 0; k < S; ++k) g[j][k] = book.gram(j, k);
    return g;
}

ValidationReport validate(const CodeBook& book) {
    const std::size_t S = book.length();
    ValidationReport report;
    report.worst_offdiag = 0;
    bool orthogonal = true;
    for (std::size_t j = 0; j < S; ++j) {
        for (std::size_t k = 0; k < S; ++k) {
            if (j == k) continue;
            const int g = book.gram(j, k);
            if (g != 0) orthogonal = false;
            if (std::abs(g) > report.worst_offdiag) report.worst_offdiag = std::abs(g);
        }
    }
    report.orthogonal = orthogonal;

    auto round_trips = [&](std::uint64_t pattern) {
        std::vector<std::uint8_t> bits(S);
        for (std::size_t k = 0; k < S; ++k)
            bits[k] = static_cast<std::uint8_t>((pattern >> k) & 1);
        try {
            return decode_group(encode_group(bits, book), book) == bits;
        } catch (const DecodeError&) {
            return false;
        }
    };

    bool decodable = true;
    if (S <= 16) {
        for (std::uint64_t d = 0; d < (1ULL << S) && decodable; ++d)
            decodable = round_trips(d);
    } else {
        std::mt19937_64 rng(0x5eed0001);
        for (int i = 0; i < 10000 && decodable; ++i) decodable = round_trips(rng());
    }
    report.decodable = decodable;
    return report;
}

}  // namespace cdmabus
