#include "cdmabus/bus_interface.hpp"

#include <array>

namespace cdmabus {

bool SlaveModel::contains(std::uint32_t address) const {
    return address >= base_ && address < base_ + 4 * storage_.size() &&
           address % 4 == 0;
}

std::uint32_t SlaveModel::read_word(std::uint32_t address) const {
    if (!contains(address)) throw AddressOutOfRange("read outside slave span");
    return storage_[(address - base_) / 4];
}

void SlaveModel::write_word(std::uint32_t address, std::uint32_t value) {
    if (!contains(address)) throw AddressOutOfRange("write outside slave span");
    storage_[(address - base_) / 4] = value;
}

std::string signal_name(const std::string& prefix, const std::string& interface,
                        const std::string& signal) {
    static const std::array<const char*, 6> known = {"avs", "avm", "ats",
                                                     "atm", "cso", "csi"};
    bool ok = false;
    for (const char* p : known) ok = ok || (prefix == p);
    if (!ok) throw UnknownPrefix("unknown port prefix: " + prefix);
    return prefix + "_" + interface + "_" + signal;
}

std::uint64_t pack_frame_cycle(const WordFrame& frame, std::size_t t) {
    if (frame.groups.empty()) return 0;
    const unsigned S = static_cast<unsigned>(frame.groups.front().group_size);
    const unsigned lines = sum_lines(S);
    std::uint64_t v = 0;
    for (std::size_t g = 0; g < frame.groups.size(); ++g) {
        v |= static_cast<std::uint64_t>(frame.groups[g].sums.at(t)) << (g * lines);
    }
    return v;
}

WordFrame unpack_line_cycles(std::span<const std::uint64_t> line_values,
                             unsigned word_width, unsigned S) {
    if (line_values.size() != S)
        throw GeometryError("expected exactly S line cycles");
    bus_width(word_width, S);
    const unsigned lines = sum_lines(S);
    const unsigned batches = word_width / S;
    WordFrame frame;
    frame.word_width = word_width;
    frame.groups.assign(batches, SumFrame{std::vector<std::uint8_t>(S), S});
    const std::uint64_t mask = (1ULL << lines) - 1;
    for (unsigned t = 0; t < S; ++t) {
        for (unsigned g = 0; g < batches; ++g) {
            frame.groups[g].sums[t] =
                static_cast<std::uint8_t>((line_values[t] >> (g * lines)) & mask);
        }
    }
    return frame;
}

std::vector<PortSignals> master_issue(const BusTransaction& txn, const CodeBook& book,
                                      unsigned extra_latency) {
    const unsigned S = static_cast<unsigned>(book.length());
    bus_width(32, S);
    const WordFrame addr_frame = encode_word(txn.address, 32, book);
    const bool is_write = txn.kind == BusTransaction::Kind::write;
    WordFrame data_frame;
    if (is_write) data_frame = encode_word(txn.writedata, 32, book);

    std::vector<PortSignals> cycles(S + extra_latency);
    for (unsigned t = 0; t < S; ++t) {
        PortSignals& ps = cycles[t];
        ps.read = !is_write;
        ps.write = is_write;
        ps.waitrequest = true;
        ps.address_lines = pack_frame_cycle(addr_frame, t);
        ps.writedata_lines = is_write ? pack_frame_cycle(data_frame, t) : 0;
    }
    for (unsigned t = S; t < S + extra_latency; ++t) {
        cycles[t].read = !is_write;
        cycles[t].write = is_write;
        cycles[t].waitrequest = true;
    }
    return cycles;
}

SlaveResponse slave_execute(std::span<const PortSignals> signals, const CodeBook& book,
                            SlaveModel& slave, bool strict, unsigned extra_latency) {
    const unsigned S = static_cast<unsigned>(book.length());
    if (signals.size() < S) throw GeometryError("request window shorter than S");

    std::vector<std::uint64_t> addr_cycles(S);
    std::vector<std::uint64_t> data_cycles(S);
    bool is_write = false;
    for (unsigned t = 0; t < S; ++t) {
        addr_cycles[t] = signals[t].address_lines;
        data_cycles[t] = signals[t].writedata_lines;
        if (t == 0) is_write = signals[t].write;
    }
    const std::uint32_t address = static_cast<std::uint32_t>(
        decode_word(unpack_line_cycles(addr_cycles, 32, S), book, strict));

    SlaveResponse resp;
    if (is_write) {
        const std::uint32_t data = static_cast<std::uint32_t>(
            decode_word(unpack_line_cycles(data_cycles, 32, S), book, strict));
        slave.write_word(address, data);
        return resp;
    }

    resp.did_read = true;
    resp.readdata = slave.read_word(address);
    const WordFrame rd_frame = encode_word(resp.readdata, 32, book);
    resp.signals.resize(S + extra_latency);
    for (unsigned t = 0; t < S; ++t) {
        resp.signals[t].read = true;
        resp.signals[t].waitrequest = true;
        resp.signals[t].readdata_lines = pack_frame_cycle(rd_frame, t);
    }
    for (unsigned t = S; t < S + extra_latency; ++t) {
        resp.signals[t].read = true;
        resp.signals[t].waitrequest = true;
    }
    return resp;
}

}  // namespace cdmabus
