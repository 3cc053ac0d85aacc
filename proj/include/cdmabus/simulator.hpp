#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cdmabus/bus_interface.hpp"
#include "cdmabus/channel.hpp"
#include "cdmabus/codebook.hpp"
#include "cdmabus/errors.hpp"

namespace cdmabus {

enum class AccessMode { sequential, concurrent };

struct CodebookSpec {
    BookKind kind = BookKind::walsh;
    unsigned lfsr_width = 8;
    std::vector<unsigned> lfsr_taps = {1, 2, 3, 7};
    std::uint64_t lfsr_seed = 0xFF;
    std::filesystem::path custom_path;  // kind == custom
};

struct SlaveSpec {
    std::uint32_t base = 0;
    std::size_t span = 64;  // words
};

struct ScenarioConfig {
    unsigned masters = 1;
    unsigned word_width = 32;
    unsigned code_length = 8;
    CodebookSpec codebook;
    unsigned transactions = 0;
    double write_fraction = 0.5;
    SlaveSpec slave;
    double error_rate = 0.0;
    std::uint64_t rng_seed = 1;
    unsigned extra_latency = 0;
    AccessMode mode = AccessMode::sequential;
    bool strict = true;

    void validate() const;
    CodeBook build_codebook() const;
};

struct SimMetrics {
    std::uint64_t total_chip_cycles = 0;
    std::uint64_t transactions_completed = 0;
    std::uint64_t bits_transferred = 0;
    std::uint64_t lines_used = 0;
    std::uint64_t lines_baseline = 0;
    double reduction_percent = 0.0;
    std::map<std::uint64_t, std::uint64_t> latency_histogram;
    std::uint64_t integrity_violations = 0;
    std::uint64_t decode_errors = 0;

    bool operator==(const SimMetrics&) const = default;
};

/// One record per signal per chip cycle; rendered as
/// "<cycle>\t<signal>\t<hex value>" lines.
struct TraceRecord {
    std::uint64_t cycle = 0;
    std::string signal;
    std::uint64_t value = 0;

    bool operator==(const TraceRecord&) const = default;
};

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void emit(std::uint64_t cycle, const std::string& signal,
                      std::uint64_t value) = 0;
};

class StreamTraceSink : public TraceSink {
public:
    explicit StreamTraceSink(std::ostream& out) : out_(out) {}
    void emit(std::uint64_t cycle, const std::string& signal,
              std::uint64_t value) override;

private:
    std::ostream& out_;
};

class VectorTraceSink : public TraceSink {
public:
    void emit(std::uint64_t cycle, const std::string& signal,
              std::uint64_t value) override {
        records.push_back({cycle, signal, value});
    }
    std::vector<TraceRecord> records;
};

/// Deterministic random workload: word-aligned addresses uniform over the
/// slave span, uniform 32-bit data, write with probability write_fraction.
std::vector<BusTransaction> generate_traffic(const ScenarioConfig& config);

/// Drive the workload through the coded wrappers and, with error_rate 0,
/// through an uncoded reference bus in lockstep; any divergence throws
/// DifferentialMismatch.
SimMetrics run_scenario(const ScenarioConfig& config, TraceSink* trace = nullptr);

void write_metrics(std::ostream& out, const SimMetrics& metrics);

/// Line counts over S in {4,8,16,32} x n in {8,16,64,128,256}; nullopt where
/// the geometry is incompatible (rendered as "-").
struct Table1Report {
    static constexpr unsigned code_lengths[4] = {4, 8, 16, 32};
    static constexpr unsigned word_widths[5] = {8, 16, 64, 128, 256};
    std::optional<unsigned> entries[4][5];
};

Table1Report table1_report();
std::string format_table1(const Table1Report& report);

/// Parse the versioned JSON scenario schema (see README). Missing required
/// fields throw ConfigError naming the field; cross-field invariants are
/// checked here.
ScenarioConfig parse_scenario_json(const std::string& text);
ScenarioConfig parse_scenario_config(const std::filesystem::path& path);

}  // namespace cdmabus
