#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cdmabus/codec.hpp"
#include "cdmabus/errors.hpp"

namespace cdmabus {

struct BusTransaction {
    enum class Kind { read, write };
    Kind kind = Kind::read;
    std::uint32_t address = 0;
    std::uint32_t writedata = 0;  // writes only
    std::uint32_t readdata = 0;   // filled on read completion

    static BusTransaction make_read(std::uint32_t address) {
        return BusTransaction{Kind::read, address, 0, 0};
    }
    static BusTransaction make_write(std::uint32_t address, std::uint32_t data) {
        return BusTransaction{Kind::write, address, data, 0};
    }
    bool operator==(const BusTransaction&) const = default;
};

/// One chip cycle on the wrapper ports. The coded line groups carry the
/// binary sum values packed low-to-high by batch, bus_width(32, S) bits wide.
struct PortSignals {
    bool read = false;
    bool write = false;
    bool waitrequest = false;
    std::uint64_t address_lines = 0;
    std::uint64_t writedata_lines = 0;
    std::uint64_t readdata_lines = 0;

    bool operator==(const PortSignals&) const = default;
};

/// Word-addressed register file standing in for the slave-side peripheral.
class SlaveModel {
public:
    SlaveModel(std::uint32_t base, std::size_t span_words)
        : base_(base), storage_(span_words, 0) {}

    std::uint32_t base() const { return base_; }
    std::size_t span() const { return storage_.size(); }
    const std::vector<std::uint32_t>& storage() const { return storage_; }

    bool contains(std::uint32_t address) const;
    std::uint32_t read_word(std::uint32_t address) const;
    void write_word(std::uint32_t address, std::uint32_t value);

    bool operator==(const SlaveModel&) const = default;

private:
    std::uint32_t base_;
    std::vector<std::uint32_t> storage_;
};

/// "<prefix>_<interface>_<signal>"; prefix must be one of the known Avalon
/// port prefixes (avs, avm, ats, atm, cso, csi).
std::string signal_name(const std::string& prefix, const std::string& interface,
                        const std::string& signal);

/// Pack one chip cycle of a WordFrame onto the reduced lines (batch g occupies
/// bits [g*sum_lines(S), (g+1)*sum_lines(S))); unpack is the inverse.
std::uint64_t pack_frame_cycle(const WordFrame& frame, std::size_t t);
WordFrame unpack_line_cycles(std::span<const std::uint64_t> line_values,
                             unsigned word_width, unsigned S);

/// Serialize one transaction into S + extra_latency chip cycles: address (and
/// writedata for writes) stream their per-chip sums on the coded lines while
/// the raw control bit stays asserted and waitrequest holds the master.
std::vector<PortSignals> master_issue(const BusTransaction& txn, const CodeBook& book,
                                      unsigned extra_latency = 0);

struct SlaveResponse {
    std::vector<PortSignals> signals;  // response cycles (reads only)
    std::uint32_t readdata = 0;
    bool did_read = false;
};

/// Decode the request window, execute against the register file, and for
/// reads re-encode readdata over a further S + extra_latency cycles.
SlaveResponse slave_execute(std::span<const PortSignals> signals, const CodeBook& book,
                            SlaveModel& slave, bool strict = false,
                            unsigned extra_latency = 0);

}  // namespace cdmabus
