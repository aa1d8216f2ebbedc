#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rscert/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = rscert::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("rscert_test_" + name);
}

}  // namespace

TEST_CASE("gen prints the coefficients", "[cli]") {
    const Result r = run({"gen", "--n", "3", "--which", "P", "--format", "json"});
    REQUIRE(r.code == rscert::cli::kPass);
    const json j = json::parse(r.out);
    CHECK(j["coeffs"] == json({1, 1, 1, -1, 1, 1, -1, 1}));
    CHECK(j["which"] == "P");

    const Result text = run({"gen", "--n", "3"});
    CHECK(text.code == 0);
    CHECK_FALSE(text.out.empty());
}

TEST_CASE("usage errors exit with 2", "[cli]") {
    CHECK(run({}).code == rscert::cli::kUsage);
    CHECK(run({"frobnicate"}).code == rscert::cli::kUsage);
    CHECK(run({"gen"}).code == rscert::cli::kUsage);
    CHECK(run({"gen", "--n", "abc"}).code == rscert::cli::kUsage);
    CHECK(run({"gen", "--n", "99"}).code == rscert::cli::kUsage);
    CHECK(run({"gen", "--n", "3", "--which", "R"}).code == rscert::cli::kUsage);
    CHECK(run({"sweep", "--k", "5"}).code == rscert::cli::kUsage);
    CHECK(run({"maxcoef", "--n-range", "x..y"}).code == rscert::cli::kUsage);
    CHECK(run({"bound-word", "--word", "AB"}).code == rscert::cli::kUsage);
    CHECK(run({"crossings", "--n", "5", "--eta", "0.5"}).code == rscert::cli::kUsage);
    CHECK(run({"--help"}).code == rscert::cli::kPass);
}

TEST_CASE("autocorr matches between routes", "[cli]") {
    const Result fast = run({"autocorr", "--n", "6", "--route", "fast", "--format", "csv"});
    const Result direct = run({"autocorr", "--n", "6", "--route", "direct", "--format", "csv"});
    CHECK(fast.code == 0);
    CHECK(fast.out == direct.out);
    const Result cross = run({"autocorr", "--n", "4", "--kind", "cross", "--format", "json"});
    CHECK(json::parse(cross.out)["values"].size() == 31);
}

TEST_CASE("verification subcommands report pass", "[cli]") {
    CHECK(run({"verify-recursion", "--n", "8"}).code == rscert::cli::kPass);
    const Result f = run({"verify-factorization", "--trials", "50", "--max-len", "10", "--format", "json"});
    CHECK(f.code == rscert::cli::kPass);
    CHECK(json::parse(f.out)["words"] == 250);
    CHECK(run({"lemma4"}).code == rscert::cli::kPass);
    CHECK(run({"bound-word", "--word", "ACDB"}).code == rscert::cli::kPass);
    CHECK(run({"lowerbound", "--parity", "odd", "--n-max", "15"}).code == rscert::cli::kPass);
}

TEST_CASE("sweep writes a certificate", "[cli]") {
    const auto path = temp_file("cert.json");
    const Result r = run({"sweep", "--k", "2", "--l-max", "5000", "--out", path.string()});
    REQUIRE(r.code == rscert::cli::kPass);
    std::ifstream in(path);
    const json j = json::parse(in);
    CHECK(j["passed"] == true);
    CHECK(j["k"] == 2);
    CHECK(j["l_range"] == json({1, 5000}));
    std::filesystem::remove(path);
}

TEST_CASE("json outputs parse and are stable across runs", "[cli][property]") {
    const std::vector<std::vector<std::string>> commands = {
        {"eigen", "--format", "json"},
        {"maxcoef", "--n-range", "4..8", "--format", "json"},
        {"crossings", "--n", "7", "--format", "json"},
        {"l4", "--n-range", "3..6", "--format", "json"},
        {"lowerbound", "--n-max", "20", "--format", "json"},
        {"verify-recursion", "--n", "5", "--format", "json"},
    };
    for (const auto& cmd : commands) {
        INFO(cmd.front());
        const Result a = run(cmd);
        const Result b = run(cmd);
        REQUIRE(a.code == 0);
        const json j = json::parse(a.out);
        CHECK(json::parse(j.dump()) == j);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("maxcoef csv has a header and one row per level", "[cli]") {
    const Result r = run({"maxcoef", "--n-range", "3..7", "--format", "csv"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    int rows = 0;
    std::getline(in, line);
    CHECK(line.rfind("n,max_abs_a", 0) == 0);
    while (std::getline(in, line)) rows += line.empty() ? 0 : 1;
    CHECK(rows == 5);
}

TEST_CASE("output file option", "[cli]") {
    const auto path = temp_file("eigen.txt");
    const Result r = run({"eigen", "--output", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(std::filesystem::file_size(path) > 0);
    std::filesystem::remove(path);
}
