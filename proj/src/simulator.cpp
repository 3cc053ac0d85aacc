#include "cdmabus/simulator.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

namespace cdmabus {

void ScenarioConfig::validate() const {
    if (masters == 0) throw ConfigError("masters", "must be >= 1");
    if (word_width != 32)
        throw ConfigError("word_width", "wrappers carry 32-bit words");
    bus_width(word_width, code_length);
    if (mode == AccessMode::concurrent) {
        if (masters > code_length)
            throw ConfigError("masters", "must be <= code_length in concurrent mode");
        if (error_rate != 0.0)
            throw ConfigError("error_rate", "fault injection is sequential-mode only");
    }
    if (write_fraction < 0.0 || write_fraction > 1.0)
        throw ConfigError("write_fraction", "must be in [0,1]");
    if (error_rate < 0.0 || error_rate > 1.0)
        throw ConfigError("error_rate", "must be in [0,1]");
    if (slave.span == 0) throw ConfigError("slave.span", "must be >= 1 word");
    if (codebook.kind == BookKind::lfsr_window && codebook.lfsr_width < code_length)
        throw ConfigError("codebook.lfsr_width", "must be >= code_length");
}

CodeBook ScenarioConfig::build_codebook() const {
    switch (codebook.kind) {
        case BookKind::walsh:
            return walsh_codebook(code_length);
        case BookKind::lfsr_window: {
            LfsrConfig cfg{codebook.lfsr_width, codebook.lfsr_taps, codebook.lfsr_seed};
            return lfsr_parallel_codebook(cfg, code_length);
        }
        case BookKind::custom: {
            CodeBook book = CodeBook::load(codebook.custom_path);
            if (book.length() != code_length)
                throw ConfigError("codebook.path", "book length != code_length");
            return book;
        }
    }
    throw ConfigError("codebook.kind", "unknown kind");
}

void StreamTraceSink::emit(std::uint64_t cycle, const std::string& signal,
                           std::uint64_t value) {
    out_ << cycle << '\t' << signal << '\t' << std::hex << value << std::dec << '\n';
}

std::vector<BusTransaction> generate_traffic(const ScenarioConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.rng_seed);
    std::vector<BusTransaction> traffic;
    traffic.reserve(config.transactions);
    for (unsigned i = 0; i < config.transactions; ++i) {
        const std::uint32_t address =
            config.slave.base + 4 * static_cast<std::uint32_t>(rng() % config.slave.span);
        const bool is_write =
            static_cast<double>(rng() % 1000000) < config.write_fraction * 1000000.0;
        if (is_write) {
            traffic.push_back(BusTransaction::make_write(
                address, static_cast<std::uint32_t>(rng() & 0xFFFFFFFFULL)));
        } else {
            rng();  // keep the stream aligned across kinds
            traffic.push_back(BusTransaction::make_read(address));
        }
    }
    return traffic;
}

namespace {

// Resample sum values on the coded request lines through the fault model.
void corrupt_request(std::vector<PortSignals>& signals, unsigned S, bool is_write,
                     const ScenarioConfig& config, std::mt19937_64& rng) {
    ChannelConfig ch{S, S, config.error_rate, 0};
    auto corrupt_lines = [&](auto get, auto set) {
        std::vector<std::uint64_t> cycles(S);
        for (unsigned t = 0; t < S; ++t) cycles[t] = get(signals[t]);
        WordFrame frame = unpack_line_cycles(cycles, 32, S);
        for (auto& group : frame.groups) {
            ChannelFrame cf{group.sums, S};
            cf = inject_errors(cf, ch, rng);
            group.sums = cf.sums;
        }
        for (unsigned t = 0; t < S; ++t) set(signals[t], pack_frame_cycle(frame, t));
    };
    corrupt_lines([](const PortSignals& p) { return p.address_lines; },
                  [](PortSignals& p, std::uint64_t v) { p.address_lines = v; });
    if (is_write) {
        corrupt_lines([](const PortSignals& p) { return p.writedata_lines; },
                      [](PortSignals& p, std::uint64_t v) { p.writedata_lines = v; });
    }
}

void check_storage(const SlaveModel& coded, const SlaveModel& reference,
                   std::size_t txn_index) {
    if (coded.storage() != reference.storage())
        throw DifferentialMismatch("slave storage diverged from reference bus",
                                   txn_index);
}

SimMetrics run_sequential(const ScenarioConfig& config, const CodeBook& book,
                          TraceSink* trace) {
    const unsigned S = config.code_length;
    SimMetrics metrics;
    SlaveModel slave(config.slave.base, config.slave.span);
    SlaveModel reference(config.slave.base, config.slave.span);
    const bool differential = config.error_rate == 0.0;
    std::mt19937_64 fault_rng(config.rng_seed ^ 0x9e3779b97f4a7c15ULL);

    const auto traffic = generate_traffic(config);
    std::uint64_t cycle = 0;
    for (std::size_t i = 0; i < traffic.size(); ++i) {
        const BusTransaction& txn = traffic[i];
        const unsigned m = static_cast<unsigned>(i % config.masters);
        const std::string mi = "m" + std::to_string(m);
        const bool is_write = txn.kind == BusTransaction::Kind::write;

        auto signals = master_issue(txn, book, config.extra_latency);
        if (config.error_rate > 0.0)
            corrupt_request(signals, S, is_write, config, fault_rng);

        if (trace) {
            for (std::size_t t = 0; t < signals.size(); ++t) {
                const PortSignals& ps = signals[t];
                const std::uint64_t c = cycle + t;
                trace->emit(c, signal_name("avm", mi, "read"), ps.read);
                trace->emit(c, signal_name("avm", mi, "write"), ps.write);
                trace->emit(c, signal_name("avm", mi, "address"), ps.address_lines);
                trace->emit(c, signal_name("avm", mi, "writedata"), ps.writedata_lines);
                // control lines pass through the wrapper unchanged
                trace->emit(c, signal_name("avs", "s1", "read"), ps.read);
                trace->emit(c, signal_name("avs", "s1", "write"), ps.write);
                trace->emit(c, signal_name("avs", "s1", "waitrequest"), ps.waitrequest);
            }
        }
        std::uint64_t latency = signals.size();

        bool completed = false;
        SlaveResponse resp;
        try {
            resp = slave_execute(signals, book, slave, config.strict,
                                 config.extra_latency);
            completed = true;
        } catch (const IntegrityViolation&) {
            ++metrics.integrity_violations;
            try {
                resp = slave_execute(signals, book, slave, false,
                                     config.extra_latency);
                completed = true;
            } catch (const Error&) {
                ++metrics.decode_errors;
            }
        } catch (const Error&) {
            ++metrics.decode_errors;
        }

        if (completed && resp.did_read) {
            if (trace) {
                for (std::size_t t = 0; t < resp.signals.size(); ++t) {
                    const PortSignals& ps = resp.signals[t];
                    const std::uint64_t c = cycle + latency + t;
                    trace->emit(c, signal_name("avs", "s1", "readdata"),
                                ps.readdata_lines);
                    trace->emit(c, signal_name("avs", "s1", "waitrequest"),
                                ps.waitrequest);
                }
            }
            latency += resp.signals.size();
        }
        cycle += latency;

        if (completed) {
            ++metrics.transactions_completed;
            metrics.bits_transferred += 64;  // 32 address + 32 data
            ++metrics.latency_histogram[latency];
        }

        if (differential) {
            if (is_write) {
                reference.write_word(txn.address, txn.writedata);
            } else {
                const std::uint32_t expect = reference.read_word(txn.address);
                if (!completed || resp.readdata != expect)
                    throw DifferentialMismatch("readdata diverged from reference bus",
                                               i);
            }
            check_storage(slave, reference, i);
        }
    }
    metrics.total_chip_cycles = cycle;
    return metrics;
}

std::vector<std::uint8_t> to_bits(std::uint32_t word) {
    std::vector<std::uint8_t> bits(32);
    for (unsigned k = 0; k < 32; ++k)
        bits[k] = static_cast<std::uint8_t>((word >> k) & 1);
    return bits;
}

std::uint32_t from_bits(std::span<const std::uint8_t> bits) {
    std::uint32_t w = 0;
    for (unsigned k = 0; k < 32; ++k)
        w |= static_cast<std::uint32_t>(bits[k] & 1) << k;
    return w;
}

SimMetrics run_concurrent(const ScenarioConfig& config, const CodeBook& book,
                          TraceSink*) {
    const unsigned S = config.code_length;
    SimMetrics metrics;
    SlaveModel slave(config.slave.base, config.slave.span);
    SlaveModel reference(config.slave.base, config.slave.span);

    // Skip the all-zero code when it is not needed; it alone depends on an
    // accurate user count.
    std::vector<SpreadingCode> codes;
    const unsigned first = (config.masters < S) ? 1 : 0;
    for (unsigned u = 0; u < config.masters; ++u) codes.push_back(book.code(first + u));

    const auto traffic = generate_traffic(config);
    std::uint64_t cycle = 0;
    for (std::size_t wave_start = 0; wave_start < traffic.size();
         wave_start += config.masters) {
        const std::size_t wave_size =
            std::min<std::size_t>(config.masters, traffic.size() - wave_start);

        // serialize each master's request: address bits then writedata bits
        std::vector<std::vector<std::uint8_t>> streams(wave_size);
        std::size_t longest = 0;
        for (std::size_t u = 0; u < wave_size; ++u) {
            const BusTransaction& txn = traffic[wave_start + u];
            streams[u] = to_bits(txn.address);
            if (txn.kind == BusTransaction::Kind::write) {
                const auto data = to_bits(txn.writedata);
                streams[u].insert(streams[u].end(), data.begin(), data.end());
            }
            longest = std::max(longest, streams[u].size());
        }
        for (auto& s : streams) s.resize(longest, 0);

        std::vector<std::vector<std::uint8_t>> received(wave_size);
        std::vector<SpreadingCode> wave_codes(codes.begin(),
                                              codes.begin() + wave_size);
        for (std::size_t p = 0; p < longest; ++p) {
            std::vector<std::uint8_t> bits(wave_size);
            for (std::size_t u = 0; u < wave_size; ++u) bits[u] = streams[u][p];
            const auto decoded = multi_access_round(bits, wave_codes);
            for (std::size_t u = 0; u < wave_size; ++u)
                received[u].push_back(decoded[u]);
            cycle += S;
        }

        // execute, then stream read responses back through the channel
        std::vector<std::size_t> readers;
        std::vector<std::uint32_t> readdata;
        for (std::size_t u = 0; u < wave_size; ++u) {
            const BusTransaction& txn = traffic[wave_start + u];
            const std::uint32_t address = from_bits(received[u]);
            if (txn.kind == BusTransaction::Kind::write) {
                slave.write_word(address,
                                 from_bits(std::span(received[u]).subspan(32)));
                reference.write_word(txn.address, txn.writedata);
            } else {
                readers.push_back(u);
                readdata.push_back(slave.read_word(address));
            }
        }

        std::uint64_t response_cycles = 0;
        if (!readers.empty()) {
            std::vector<SpreadingCode> reader_codes;
            for (std::size_t r : readers) reader_codes.push_back(codes[r]);
            std::vector<std::vector<std::uint8_t>> rx(readers.size());
            for (unsigned p = 0; p < 32; ++p) {
                std::vector<std::uint8_t> bits(readers.size());
                for (std::size_t r = 0; r < readers.size(); ++r)
                    bits[r] = static_cast<std::uint8_t>((readdata[r] >> p) & 1);
                const auto decoded = multi_access_round(bits, reader_codes);
                for (std::size_t r = 0; r < readers.size(); ++r)
                    rx[r].push_back(decoded[r]);
            }
            response_cycles = 32ULL * S;
            cycle += response_cycles;
            for (std::size_t r = 0; r < readers.size(); ++r) {
                const std::uint32_t got = from_bits(rx[r]);
                const BusTransaction& txn = traffic[wave_start + readers[r]];
                const std::uint32_t expect = reference.read_word(txn.address);
                if (got != expect)
                    throw DifferentialMismatch("readdata diverged from reference bus",
                                               wave_start + readers[r]);
            }
        }
        check_storage(slave, reference, wave_start);

        for (std::size_t u = 0; u < wave_size; ++u) {
            const BusTransaction& txn = traffic[wave_start + u];
            const bool is_read = txn.kind == BusTransaction::Kind::read;
            ++metrics.transactions_completed;
            metrics.bits_transferred += 64;
            ++metrics.latency_histogram[longest * S +
                                        (is_read ? response_cycles : 0)];
        }
    }
    metrics.total_chip_cycles = cycle;
    return metrics;
}

}  // namespace

SimMetrics run_scenario(const ScenarioConfig& config, TraceSink* trace) {
    config.validate();
    const CodeBook book = config.build_codebook();
    SimMetrics metrics = (config.mode == AccessMode::sequential)
                             ? run_sequential(config, book, trace)
                             : run_concurrent(config, book, trace);
    metrics.lines_used = bus_width(config.word_width, config.code_length);
    metrics.lines_baseline = config.word_width;
    metrics.reduction_percent =
        100.0 * (1.0 - static_cast<double>(metrics.lines_used) /
                           static_cast<double>(metrics.lines_baseline));
    return metrics;
}

void write_metrics(std::ostream& out, const SimMetrics& m) {
    out << "{\n";
    out << "  \"total_chip_cycles\": " << m.total_chip_cycles << ",\n";
    out << "  \"transactions_completed\": " << m.transactions_completed << ",\n";
    out << "  \"bits_transferred\": " << m.bits_transferred << ",\n";
    out << "  \"lines_used\": " << m.lines_used << ",\n";
    out << "  \"lines_baseline\": " << m.lines_baseline << ",\n";
    out << "  \"reduction_percent\": " << m.reduction_percent << ",\n";
    out << "  \"latency_histogram\": {";
    bool first = true;
    for (const auto& [lat, count] : m.latency_histogram) {
        if (!first) out << ", ";
        out << "\"" << lat << "\": " << count;
        first = false;
    }
    out << "},\n";
    out << "  \"integrity_violations\": " << m.integrity_violations << ",\n";
    out << "  \"decode_errors\": " << m.decode_errors << "\n";
    out << "}\n";
}

Table1Report table1_report() {
    Table1Report report;
    for (int si = 0; si < 4; ++si) {
        for (int ni = 0; ni < 5; ++ni) {
            try {
                report.entries[si][ni] = bus_width(Table1Report::word_widths[ni],
                                                   Table1Report::code_lengths[si]);
            } catch (const IncompatibleGeometry&) {
                report.entries[si][ni] = std::nullopt;
            }
        }
    }
    return report;
}

std::string format_table1(const Table1Report& report) {
    std::ostringstream out;
    out << std::setw(6) << "S\\n";
    for (unsigned n : Table1Report::word_widths) out << std::setw(6) << n;
    out << "\n";
    for (int si = 0; si < 4; ++si) {
        out << std::setw(6) << Table1Report::code_lengths[si];
        for (int ni = 0; ni < 5; ++ni) {
            if (report.entries[si][ni])
                out << std::setw(6) << *report.entries[si][ni];
            else
                out << std::setw(6) << "-";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace cdmabus
