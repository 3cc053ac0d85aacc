#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = CDMABUS_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "cdmabus_cli_out.txt";
    const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    fs::remove(out);
    return {WEXITSTATUS(status), buf.str()};
}

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

}  // namespace

TEST_CASE("table1 prints the full grid") {
    const RunResult r = run_cli("table1");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("192") != std::string::npos);
    CHECK(r.stdout_text.find("128") != std::string::npos);
    CHECK(r.stdout_text.find("-") != std::string::npos);
    int rows = 0;
    for (char c : r.stdout_text) rows += c == '\n';
    CHECK(rows == 5);  // header + 4 code lengths
}

TEST_CASE("codebook gen/validate and encode/decode round trip") {
    const fs::path book = fs::temp_directory_path() / "walsh8.book";
    CHECK(run_cli("codebook gen --kind walsh --length 8 -o " + book.string())
              .exit_code == 0);

    const RunResult val = run_cli("codebook validate " + book.string());
    CHECK(val.exit_code == 0);
    CHECK(val.stdout_text.find("orthogonal=yes") != std::string::npos);

    const RunResult enc =
        run_cli("encode --word 0xDEADBEEF --book " + book.string());
    CHECK(enc.exit_code == 0);
    const RunResult dec = run_cli("decode --book " + book.string() +
                                  " --frame \"" + trim(enc.stdout_text) + "\"");
    CHECK(dec.exit_code == 0);
    CHECK(trim(dec.stdout_text) == "DEADBEEF");
    fs::remove(book);
}

TEST_CASE("non-orthogonal codebook validation exits 1") {
    const fs::path dup = write_temp("dup.book",
                                    "S=4 kind=custom\n0000\n0000\n0011\n0101\n");
    const RunResult val = run_cli("codebook validate " + dup.string());
    CHECK(val.exit_code == 1);
    CHECK(val.stdout_text.find("orthogonal=no") != std::string::npos);
    fs::remove(dup);

    const RunResult lfsr = run_cli(
        "codebook gen --kind lfsr-window --length 8 --width 8 --taps 1,2,3,7");
    CHECK(lfsr.exit_code == 0);
    CHECK(lfsr.stdout_text.find("S=8 kind=lfsr-window") != std::string::npos);
}

TEST_CASE("simulate writes metrics and trace files") {
    const fs::path cfg = write_temp("scenario.json", R"({
      "version": 1, "masters": 2, "word_width": 32, "code_length": 8,
      "codebook": {"kind": "walsh"}, "transactions": 25,
      "slave": {"base": 0, "span": 64}, "rng_seed": 7})");
    const fs::path metrics = fs::temp_directory_path() / "metrics.json";
    const fs::path trace = fs::temp_directory_path() / "trace.tsv";

    const RunResult r = run_cli("simulate --config " + cfg.string() +
                                " --metrics-out " + metrics.string() +
                                " --trace-out " + trace.string());
    CHECK(r.exit_code == 0);

    std::ifstream m(metrics);
    std::ostringstream mbuf;
    mbuf << m.rdbuf();
    CHECK(mbuf.str().find("\"lines_used\": 16") != std::string::npos);
    CHECK(mbuf.str().find("\"transactions_completed\": 25") != std::string::npos);

    std::ifstream t(trace);
    std::string first_line;
    std::getline(t, first_line);
    // cycle <tab> signal <tab> hex value
    CHECK(first_line.find('\t') != std::string::npos);
    CHECK(first_line.find("avm_m0_") != std::string::npos);

    fs::remove(cfg);
    fs::remove(metrics);
    fs::remove(trace);
}

TEST_CASE("usage and config errors exit 2") {
    CHECK(run_cli("bogus-subcommand").exit_code == 2);
    CHECK(run_cli("encode --word 0x1").exit_code == 2);  // missing --book

    const fs::path bad = write_temp("bad.json", R"({
      "version": 1, "masters": 1, "word_width": 32, "code_length": 12,
      "codebook": {"kind": "walsh"}, "transactions": 1,
      "slave": {"base": 0, "span": 64}, "rng_seed": 1})");
    CHECK(run_cli("simulate --config " + bad.string()).exit_code == 2);
    fs::remove(bad);

    const fs::path gold = write_temp("gold.json", R"({
      "version": 1, "masters": 1, "word_width": 32, "code_length": 8,
      "codebook": {"kind": "gold"}, "transactions": 1,
      "slave": {"base": 0, "span": 64}, "rng_seed": 1})");
    CHECK(run_cli("simulate --config " + gold.string()).exit_code == 2);
    fs::remove(gold);
}

TEST_CASE("decode of an ambiguous frame exits 1") {
    const fs::path book = fs::temp_directory_path() / "walsh4.book";
    REQUIRE(run_cli("codebook gen --kind walsh --length 4 -o " + book.string())
                .exit_code == 0);
    const RunResult r =
        run_cli("decode --book " + book.string() + " --frame \"2,2,2,2;2,2,2,2\"");
    CHECK(r.exit_code == 1);
    fs::remove(book);
}
