// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Expected values are frozen from independent brute-force oracles
// (see oracle.hpp) or hand-checked arithmetic.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cdmabus/bus_interface.hpp"
#include "cdmabus/channel.hpp"
#include "cdmabus/codebook.hpp"
#include "cdmabus/codec.hpp"
#include "cdmabus/lfsr.hpp"
#include "cdmabus/simulator.hpp"
#include "oracle.hpp"

using namespace cdmabus;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
              << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++g_failures;
}

double run_timed(const std::function<bool()>& body, bool& ok) {
    const auto start = std::chrono::steady_clock::now();
    ok = body();
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(end - start).count();
}

std::vector<std::uint8_t> bits_of(std::uint64_t pattern, std::size_t S) {
    std::vector<std::uint8_t> bits(S);
    for (std::size_t k = 0; k < S; ++k)
        bits[k] = static_cast<std::uint8_t>((pattern >> k) & 1);
    return bits;
}

// 1. Table 1 reproduction, all 17 numeric and 3 dash entries, < 1 s.
void criterion_table1() {
    bool ok = true;
    const double secs = run_timed(
        [&] {
            const int expected[4][5] = {{6, 12, 48, 96, 192},
                                        {4, 8, 32, 64, 128},
                                        {-1, 5, 20, 40, 80},
                                        {-1, -1, 12, 24, 48}};
            const Table1Report report = table1_report();
            bool all = true;
            for (int si = 0; si < 4; ++si) {
                for (int ni = 0; ni < 5; ++ni) {
                    const auto& cell = report.entries[si][ni];
                    if (expected[si][ni] < 0) {
                        all = all && !cell.has_value();
                    } else {
                        all = all && cell.has_value() &&
                              static_cast<int>(*cell) == expected[si][ni];
                    }
                }
            }
            all = all && bus_width(64, 8) == 32 && bus_width(256, 16) == 80;
            bool dash_throws = false;
            try {
                bus_width(8, 32);
            } catch (const IncompatibleGeometry&) {
                dash_throws = true;
            }
            return all && dash_throws;
        },
        ok);
    report(1, "Table 1 reproduction", ok && secs < 1.0,
           "20/20 cells, " + std::to_string(secs) + " s");
}

// 2. run_scenario with n=32, S=8 reports a 50% line reduction, exact.
void criterion_reduction() {
    ScenarioConfig cfg;
    cfg.masters = 1;
    cfg.word_width = 32;
    cfg.code_length = 8;
    cfg.transactions = 10;
    cfg.slave = {0, 64};
    cfg.rng_seed = 1;
    const SimMetrics m = run_scenario(cfg);
    const bool ok = m.lines_used == 16 && m.lines_baseline == 32 &&
                    m.reduction_percent == 50.0;
    report(2, "50% bus reduction for n=32, S=8", ok,
           "lines_used=" + std::to_string(m.lines_used));
}

// 3+4. Round-trip identity and exact correlation law over the Walsh sweeps.
void criterion_roundtrip_and_correlation() {
    bool round_ok = true;
    bool corr_ok = true;
    const double secs = run_timed(
        [&] {
            auto sweep = [&](std::size_t S, bool exhaustive) {
                const CodeBook book = walsh_codebook(S);
                std::mt19937_64 rng(0xACCE97 + S);
                const std::uint64_t count = exhaustive ? (1ULL << S) : 10000;
                for (std::uint64_t i = 0; i < count; ++i) {
                    const std::uint64_t d =
                        exhaustive ? i : (rng() & ((1ULL << S) - 1));
                    const auto bits = bits_of(d, S);
                    const SumFrame frame = encode_group(bits, book);
                    round_ok = round_ok && decode_group(frame, book) == bits;
                    for (std::size_t k = 0; k < S; ++k) {
                        const int expect = (2 * bits[k] - 1) * static_cast<int>(S);
                        corr_ok = corr_ok &&
                                  correlate(frame, book.code(k),
                                            static_cast<int>(S)) == expect;
                    }
                }
            };
            sweep(4, true);
            sweep(8, true);
            sweep(16, false);
            sweep(32, false);
            return round_ok && corr_ok;
        },
        round_ok);
    report(3, "round-trip identity over Walsh sweeps", round_ok && secs < 5.0,
           std::to_string(secs) + " s");
    report(4, "correlation law corr == (2d-1)*S", corr_ok);
}

// 5. LFSR periods: oracles for widths 3 and 4; width 8 measured vs the
// claimed 2^8-1 = 255.
void criterion_lfsr_period() {
    bool ok = true;
    std::string detail;
    const double secs = run_timed(
        [&] {
            const std::uint64_t p4 = lfsr_period({4, {3, 4}, 0xF});
            const std::uint64_t p3 = lfsr_period({3, {2, 3}, 0x7});
            bool good = p4 == 15 && p3 == 7;
            good = good && oracle::lfsr_orbit({1, 1, 1, 1}, {3, 4}).cycle == 15;
            good = good && oracle::lfsr_orbit({1, 1, 1}, {2, 3}).cycle == 7;

            const LfsrConfig w8{8, {1, 2, 3, 7}, 0xFF};
            const std::uint64_t measured = lfsr_period(w8);
            const auto oracle_orbit =
                oracle::lfsr_orbit({1, 1, 1, 1, 1, 1, 1, 1}, {1, 2, 3, 7});
            // stability: the measurement is frozen and reproduced by the oracle
            good = good && measured == 127 && oracle_orbit.cycle == 127 &&
                   lfsr_period(w8) == measured;
            detail = "width-8 taps {1,2,3,7} measured period " +
                     std::to_string(measured) +
                     (measured == 255 ? " == 255 as claimed"
                                      : " != the claimed 255 (tap set excludes "
                                        "register 8; seed never recurs)");
            return good;
        },
        ok);
    report(5, "LFSR periods (4->15, 3->7, 8 measured)", ok && secs < 1.0, detail);
}

// 6. Multi-access: full Walsh(8) exhaustively; subsets of sizes 2..7
// excluding the all-zero code, 1000 random patterns each.
void criterion_multi_access() {
    const CodeBook book = walsh_codebook(8);
    bool ok = true;

    std::vector<SpreadingCode> all;
    for (std::size_t k = 0; k < 8; ++k) all.push_back(book.code(k));
    for (std::uint64_t d = 0; d < 256; ++d) {
        ok = ok && multi_access_round(bits_of(d, 8), all) == bits_of(d, 8);
    }

    std::mt19937_64 rng(0x6ACCE55);
    for (std::size_t users = 2; users <= 7; ++users) {
        std::vector<SpreadingCode> codes;
        for (std::size_t k = 0; k < users; ++k) codes.push_back(book.code(k + 1));
        for (int i = 0; i < 1000; ++i) {
            const auto bits = bits_of(rng() & ((1ULL << users) - 1), users);
            ok = ok && multi_access_round(bits, codes) == bits;
        }
    }
    report(6, "multi-access recovery, full book and subsets", ok);
}

// 7+9. Differential end-to-end over 10^4 transactions, with cycle-aligned
// control-line transparency checked on the same workload. Returns the
// criterion-9 outcome so it can be reported in order.
bool criterion_differential_and_control() {
    bool diff_ok = true;
    bool control_ok = true;
    std::string detail;
    const double secs = run_timed(
        [&] {
            ScenarioConfig cfg;
            cfg.masters = 4;
            cfg.word_width = 32;
            cfg.code_length = 8;
            cfg.transactions = 10000;
            cfg.write_fraction = 0.5;
            cfg.slave = {0x2000, 256};
            cfg.rng_seed = 0xD1FF;
            VectorTraceSink trace;
            try {
                const SimMetrics m = run_scenario(cfg, &trace);
                diff_ok = m.transactions_completed == 10000 &&
                          m.decode_errors == 0 && m.integrity_violations == 0;
            } catch (const DifferentialMismatch& e) {
                diff_ok = false;
                detail = std::string("mismatch: ") + e.what();
            }

            // control transparency: per cycle, slave-observed read/write bits
            // equal the master-issued ones
            std::map<std::uint64_t, std::pair<int, int>> master_bits, slave_bits;
            for (const auto& rec : trace.records) {
                if (rec.signal.rfind("avm_", 0) == 0) {
                    if (rec.signal.ends_with("_read"))
                        master_bits[rec.cycle].first = static_cast<int>(rec.value);
                    if (rec.signal.ends_with("_write"))
                        master_bits[rec.cycle].second = static_cast<int>(rec.value);
                } else if (rec.signal == "avs_s1_read") {
                    slave_bits[rec.cycle].first = static_cast<int>(rec.value);
                } else if (rec.signal == "avs_s1_write") {
                    slave_bits[rec.cycle].second = static_cast<int>(rec.value);
                }
            }
            for (const auto& [cycle, bits] : master_bits) {
                auto it = slave_bits.find(cycle);
                control_ok = control_ok && it != slave_bits.end() &&
                             it->second == bits;
            }
            return diff_ok;
        },
        diff_ok);
    report(7, "differential vs uncoded reference, 10^4 txns",
           diff_ok && secs < 30.0,
           detail.empty() ? std::to_string(secs) + " s" : detail);
    return control_ok;
}

// 8. Timing shape: a single write spans exactly 8 chip cycles with
// waitrequest covering the window; a read takes exactly 16.
void criterion_timing_shape() {
    bool ok = true;
    ScenarioConfig cfg;
    cfg.masters = 1;
    cfg.word_width = 32;
    cfg.code_length = 8;
    cfg.transactions = 1;
    cfg.write_fraction = 1.0;
    cfg.slave = {0, 64};
    cfg.rng_seed = 5;
    VectorTraceSink trace;
    const SimMetrics wr = run_scenario(cfg, &trace);
    ok = ok && wr.total_chip_cycles == 8;
    ok = ok && wr.latency_histogram.size() == 1 &&
         wr.latency_histogram.begin()->first == 8;
    std::set<std::uint64_t> wait_window, sum_stream;
    for (const auto& rec : trace.records) {
        if (rec.signal == "avs_s1_waitrequest" && rec.value)
            wait_window.insert(rec.cycle);
        if (rec.signal == "avm_m0_writedata") sum_stream.insert(rec.cycle);
    }
    const std::set<std::uint64_t> window = {0, 1, 2, 3, 4, 5, 6, 7};
    ok = ok && wait_window == window && sum_stream == window;

    cfg.write_fraction = 0.0;
    const SimMetrics rd = run_scenario(cfg);
    ok = ok && rd.total_chip_cycles == 16 &&
         rd.latency_histogram.begin()->first == 16;
    report(8, "timing shape: write 8 cycles, read 16", ok);
}

// 10. Every injected corruption that changes a correlation magnitude raises
// IntegrityViolation under strict decoding, vs a brute-force recomputation.
void criterion_fault_detection() {
    const CodeBook book = walsh_codebook(8);
    std::vector<std::vector<int>> codes;
    for (const auto& c : book.codes())
        codes.emplace_back(c.chips.begin(), c.chips.end());

    bool ok = true;
    int corrupted_frames = 0;
    std::mt19937_64 rng(0xFA017);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto bits = bits_of(rng() & 0xFF, 8);
        const SumFrame clean = encode_group(bits, book);
        ChannelFrame cf{clean.sums, 8};
        const ChannelConfig cfg{8, 8, 0.6, rng()};
        cf = inject_errors(cf, cfg);
        if (cf.sums != clean.sums) ++corrupted_frames;

        // oracle: recompute every correlation on the corrupted sums
        bool magnitude_changed = false;
        const std::vector<int> sums(cf.sums.begin(), cf.sums.end());
        for (const auto& code : codes) {
            if (std::abs(oracle::correlate(sums, code, 8)) != 8)
                magnitude_changed = true;
        }

        bool threw = false;
        std::vector<std::uint8_t> decoded;
        try {
            decoded = decode_group(SumFrame{cf.sums, 8}, book, true);
        } catch (const DecodeError&) {
            threw = true;
        }
        if (magnitude_changed) {
            ok = ok && threw;
        } else {
            ok = ok && !threw && decoded == bits;
        }
    }
    report(10, "strict decoding flags every magnitude-changing corruption",
           ok && corrupted_frames > 0,
           std::to_string(corrupted_frames) + "/1000 frames corrupted");
}

}  // namespace

int main() {
    criterion_table1();
    criterion_reduction();
    criterion_roundtrip_and_correlation();
    criterion_lfsr_period();
    criterion_multi_access();
    const bool control_ok = criterion_differential_and_control();
    criterion_timing_shape();
    report(9, "control lines pass through unmodified", control_ok);
    criterion_fault_detection();
    if (g_failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return EXIT_SUCCESS;
    }
    std::cout << g_failures << " acceptance criteria failed\n";
    return EXIT_FAILURE;
}
