#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "entdiag/io.hpp"

using namespace entdiag;
namespace fs = std::filesystem;

#ifdef ENTDIAG_CLI_PATH

namespace {

int cli(const std::string& args) {
    const std::string cmd = std::string(ENTDIAG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("cli exit codes: validation errors map to 2") {
    TempDir dir("entdiag_cli_test");
    CHECK(cli("grow --config " + dir.str() + "/does_not_exist.json") == 2);

    const std::string bad = dir.str() + "/bad.json";
    write_text_file(bad, "{\"experiment\": \"grow\", \"mystery_knob\": 1}");
    CHECK(cli("grow --config " + bad) == 2);

    write_text_file(bad, "{\"experiment\": \"grow\", \"n\": 9}");
    CHECK(cli("grow --config " + bad) == 2);

    CHECK(cli("frobnicate --config " + bad) == 2);  // unknown subcommand
}

TEST_CASE("cli tables run produces the table schema and verify accepts it") {
    TempDir dir("entdiag_cli_tables");
    const std::string cfg = dir.str() + "/tables.json";
    write_text_file(cfg, R"({"experiment": "tables", "n_list": [6], "seeds": 4, "master_seed": 3})");
    const std::string out = dir.str() + "/out";
    REQUIRE(cli("tables --config " + cfg + " --out " + out) == 0);

    const auto tables = nlohmann::json::parse(read_text_file(out + "/tables.json"));
    REQUIRE(tables.contains("rows"));
    CHECK(tables.at("rows").size() == 6);  // one row per entropy kind
    for (const auto& row : tables.at("rows")) {
        CHECK(row.contains("type"));
        CHECK(row.at("n") == 6);
        CHECK(row.contains("v_k"));
        CHECK(row.contains("L_l"));
        CHECK(row.contains("r"));
        CHECK(row.contains("L_s"));
    }

    // verify against itself: zero diffs, exit 0
    const std::string report = dir.str() + "/report.json";
    CHECK(cli("verify --golden " + out + "/tables.json --results " + out + " --report " + report) == 0);
    const auto rep = nlohmann::json::parse(read_text_file(report));
    CHECK(rep.at("pass") == true);
    CHECK(rep.at("diffs").empty());

    // a shifted golden row fails with exit 1 and a named diff
    auto golden = tables;
    golden["rows"][0]["v_k"] = golden["rows"][0]["v_k"].get<double>() + 1.0;
    const std::string shifted = dir.str() + "/golden_shifted.json";
    write_text_file(shifted, golden.dump());
    CHECK(cli("verify --golden " + shifted + " --results " + out) == 1);
}

#endif  // ENTDIAG_CLI_PATH
