#include <fstream>
#include <sstream>

#include "cdmabus/simulator.hpp"
#include "json.hpp"

namespace cdmabus {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(path, "missing required field");
    return *it;
}

}  // namespace

ScenarioConfig parse_scenario_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }

    if (require(j, "version", "version").get<int>() != 1)
        throw ConfigError("version", "only version 1 is supported");

    ScenarioConfig cfg;
    cfg.masters = require(j, "masters", "masters").get<unsigned>();
    cfg.word_width = require(j, "word_width", "word_width").get<unsigned>();
    cfg.code_length = require(j, "code_length", "code_length").get<unsigned>();
    cfg.transactions = require(j, "transactions", "transactions").get<unsigned>();
    cfg.rng_seed = require(j, "rng_seed", "rng_seed").get<std::uint64_t>();

    const json& book = require(j, "codebook", "codebook");
    const std::string kind = require(book, "kind", "codebook.kind").get<std::string>();
    try {
        cfg.codebook.kind = book_kind_from_string(kind);
    } catch (const InvalidConfig&) {
        throw ConfigError("codebook.kind", "must be walsh, lfsr-window, or custom");
    }
    if (cfg.codebook.kind == BookKind::lfsr_window) {
        cfg.codebook.lfsr_width =
            book.value("width", cfg.code_length);
        cfg.codebook.lfsr_taps =
            book.value("taps", std::vector<unsigned>{1, 2, 3, 7});
        cfg.codebook.lfsr_seed =
            book.value("seed", (1ULL << cfg.codebook.lfsr_width) - 1);
    } else if (cfg.codebook.kind == BookKind::custom) {
        cfg.codebook.custom_path =
            require(book, "path", "codebook.path").get<std::string>();
    }

    const json& slave = require(j, "slave", "slave");
    cfg.slave.base = require(slave, "base", "slave.base").get<std::uint32_t>();
    cfg.slave.span = require(slave, "span", "slave.span").get<std::size_t>();

    cfg.write_fraction = j.value("write_fraction", 0.5);
    cfg.error_rate = j.value("error_rate", 0.0);
    cfg.extra_latency = j.value("extra_latency", 0U);
    cfg.strict = j.value("strict", true);
    const std::string mode = j.value("mode", std::string("sequential"));
    if (mode == "sequential") cfg.mode = AccessMode::sequential;
    else if (mode == "concurrent") cfg.mode = AccessMode::concurrent;
    else throw ConfigError("mode", "must be sequential or concurrent");

    cfg.validate();  // IncompatibleGeometry propagates with both values echoed
    return cfg;
}

ScenarioConfig parse_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str());
}

}  // namespace cdmabus
