#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdmabus/codebook.hpp"
#include "cdmabus/codec.hpp"
#include "cdmabus/simulator.hpp"

namespace {

using namespace cdmabus;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string format_word_frame(const WordFrame& frame) {
    std::ostringstream out;
    for (std::size_t g = 0; g < frame.groups.size(); ++g) {
        if (g) out << ';';
        const auto& sums = frame.groups[g].sums;
        for (std::size_t t = 0; t < sums.size(); ++t) {
            if (t) out << ',';
            out << static_cast<int>(sums[t]);
        }
    }
    return out.str();
}

WordFrame parse_word_frame(const std::string& text, unsigned S) {
    WordFrame frame;
    std::istringstream batches(text);
    std::string batch;
    while (std::getline(batches, batch, ';')) {
        SumFrame sf;
        sf.group_size = S;
        std::istringstream vals(batch);
        std::string v;
        while (std::getline(vals, v, ',')) {
            const int s = std::stoi(v);
            if (s < 0 || s > static_cast<int>(S))
                throw RangeError("sum value out of [0, S]");
            sf.sums.push_back(static_cast<std::uint8_t>(s));
        }
        if (sf.sums.size() != S) throw GeometryError("batch must contain S sums");
        frame.groups.push_back(std::move(sf));
    }
    frame.word_width = static_cast<unsigned>(frame.groups.size() * S);
    return frame;
}

std::uint64_t parse_hex_word(const std::string& text) {
    std::string t = text;
    if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
    return std::stoull(t, nullptr, 16);
}

int cmd_codebook_gen(const std::string& kind, unsigned length, unsigned width,
                     const std::vector<unsigned>& taps, std::uint64_t seed,
                     const std::string& out_path) {
    CodeBook book = [&] {
        if (kind == "walsh") return walsh_codebook(length);
        if (kind == "lfsr-window") {
            LfsrConfig cfg{width, taps, seed};
            return lfsr_parallel_codebook(cfg, length);
        }
        throw ConfigError("kind", "must be walsh or lfsr-window");
    }();
    if (out_path.empty()) {
        std::cout << book.serialize();
    } else {
        book.save(out_path);
    }
    return kExitOk;
}

int cmd_codebook_validate(const std::string& path) {
    const CodeBook book = CodeBook::load(path);
    const ValidationReport report = validate(book);
    std::cout << "S=" << book.length() << " kind=" << to_string(book.kind())
              << " orthogonal=" << (report.orthogonal ? "yes" : "no")
              << " decodable=" << (report.decodable ? "yes" : "no")
              << " worst_offdiag=" << report.worst_offdiag << "\n";
    return (report.orthogonal && report.decodable) ? kExitOk : kExitDomain;
}

int cmd_encode(const std::string& word_hex, const std::string& book_path,
               unsigned width) {
    const CodeBook book = CodeBook::load(book_path);
    const std::uint64_t word = parse_hex_word(word_hex);
    std::cout << format_word_frame(encode_word(word, width, book)) << "\n";
    return kExitOk;
}

int cmd_decode(const std::string& frame_text, const std::string& book_path) {
    const CodeBook book = CodeBook::load(book_path);
    std::string text = frame_text;
    if (text.empty()) std::getline(std::cin, text);
    const WordFrame frame =
        parse_word_frame(text, static_cast<unsigned>(book.length()));
    const std::uint64_t word = decode_word(frame, book);
    std::cout << std::uppercase << std::hex << word << std::dec << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& metrics_path,
                 const std::string& trace_path, unsigned sweep) {
    ScenarioConfig base = parse_scenario_config(config_path);
    for (unsigned run = 0; run < sweep; ++run) {
        ScenarioConfig cfg = base;
        cfg.rng_seed = base.rng_seed + run;

        std::ofstream trace_file;
        std::unique_ptr<StreamTraceSink> sink;
        if (!trace_path.empty()) {
            std::string path = trace_path;
            if (sweep > 1) path += "." + std::to_string(run);
            trace_file.open(path, std::ios::binary);
            if (!trace_file) throw Error("cannot open trace file: " + path);
            sink = std::make_unique<StreamTraceSink>(trace_file);
        }
        const SimMetrics metrics = run_scenario(cfg, sink.get());

        if (metrics_path.empty()) {
            write_metrics(std::cout, metrics);
        } else {
            std::string path = metrics_path;
            if (sweep > 1) path += "." + std::to_string(run);
            std::ofstream out(path, std::ios::binary);
            if (!out) throw Error("cannot open metrics file: " + path);
            write_metrics(out, metrics);
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CDMA-coded shared-bus interconnect simulator"};
    app.require_subcommand(1);

    // codebook gen/validate
    auto* codebook = app.add_subcommand("codebook", "generate or validate code books");
    codebook->require_subcommand(1);
    std::string gen_kind = "walsh";
    unsigned gen_length = 8;
    unsigned gen_width = 8;
    std::vector<unsigned> gen_taps = {1, 2, 3, 7};
    std::string gen_seed = "0xFF";
    std::string gen_out;
    auto* gen = codebook->add_subcommand("gen", "generate a code book");
    gen->add_option("--kind", gen_kind, "walsh or lfsr-window");
    gen->add_option("--length", gen_length, "code length S");
    gen->add_option("--width", gen_width, "lfsr register count");
    gen->add_option("--taps", gen_taps, "lfsr taps, 1-based")->delimiter(',');
    gen->add_option("--seed", gen_seed, "lfsr seed (hex)");
    gen->add_option("-o,--output", gen_out, "output file (stdout if omitted)");

    std::string validate_path;
    auto* val = codebook->add_subcommand("validate", "validate a code book file");
    val->add_option("file", validate_path, "code book file")->required();

    std::string enc_word, enc_book;
    unsigned enc_width = 32;
    auto* enc = app.add_subcommand("encode", "encode a hex word into sum frames");
    enc->add_option("--word", enc_word, "word value (hex)")->required();
    enc->add_option("--book", enc_book, "code book file")->required();
    enc->add_option("--width", enc_width, "word width in bits");

    std::string dec_frame, dec_book;
    auto* dec = app.add_subcommand("decode", "decode sum frames back to a hex word");
    dec->add_option("--frame", dec_frame,
                    "frames as comma-separated sums, batches joined by ';' "
                    "(stdin if omitted)");
    dec->add_option("--book", dec_book, "code book file")->required();

    std::string sim_config, sim_metrics, sim_trace;
    unsigned sim_sweep = 1;
    auto* sim = app.add_subcommand("simulate", "run a scenario config");
    sim->add_option("--config", sim_config, "scenario JSON file")->required();
    sim->add_option("--metrics-out", sim_metrics, "metrics file (stdout if omitted)");
    sim->add_option("--trace-out", sim_trace, "trace file");
    sim->add_option("--sweep", sim_sweep, "run N consecutive seeds")
        ->check(CLI::PositiveNumber);

    auto* tab = app.add_subcommand("table1", "print line counts per (S, n)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_codebook_gen(gen_kind, gen_length, gen_width, gen_taps,
                                    parse_hex_word(gen_seed), gen_out);
        if (val->parsed()) return cmd_codebook_validate(validate_path);
        if (enc->parsed()) return cmd_encode(enc_word, enc_book, enc_width);
        if (dec->parsed()) return cmd_decode(dec_frame, dec_book);
        if (sim->parsed())
            return cmd_simulate(sim_config, sim_metrics, sim_trace, sim_sweep);
        if (tab->parsed()) {
            std::cout << format_table1(table1_report());
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IncompatibleGeometry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
