#include "support.hpp"

#include "nilflat/cli.hpp"
#include "nilflat/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>

using namespace testing;
namespace cli = nilflat::cli;

namespace {

std::string tmp(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "nilflat_cli_test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

cli::RunConfig curvature_config(const std::string& file, unsigned threads) {
    cli::RunConfig c;
    c.command = "curvature";
    c.inputs = {data_path(file)};
    c.threads = threads;
    return c;
}

}  // namespace

TEST_CASE("validate") {
    CHECK(cli::cmd_validate(data_path("h3.json")).exit_code == cli::kOk);
    CHECK(cli::cmd_validate(data_path("n4.json")).exit_code == cli::kOk);
    const auto bad = cli::cmd_validate(data_path("jacobi_bad.json"));
    CHECK(bad.exit_code == cli::kInvalidMath);
    CHECK(bad.diagnostic.find("(e1,e2,e3)") != std::string::npos);
    CHECK(cli::cmd_validate(data_path("so3.json")).exit_code == cli::kInvalidMath);
    const auto mal = cli::cmd_validate(data_path("malformed.json"));
    CHECK(mal.exit_code == cli::kIoOrParse);
    CHECK(mal.diagnostic.find("line 5") != std::string::npos);
    CHECK(cli::cmd_validate(data_path("missing.json")).exit_code == cli::kIoOrParse);
}

TEST_CASE("peel") {
    const auto h3 = cli::cmd_peel(data_path("h3.json"), "");
    REQUIRE(h3.exit_code == cli::kOk);
    const auto steps = io::parse_tower(h3.output);
    REQUIRE(steps.size() == 3);
    CHECK(steps[0].cocycle(0, 1) == 1);
    const auto z3 = io::parse_tower(cli::cmd_peel(data_path("z3.json"), "").output);
    REQUIRE(z3.size() == 3);
    for (const auto& s : z3) CHECK(s.cocycle.entries().empty());
    CHECK(io::parse_tower(cli::cmd_peel(data_path("n4.json"), "").output).size() == 4);
    CHECK(cli::cmd_peel(data_path("so3.json"), "").exit_code == cli::kInvalidMath);
}

TEST_CASE("extend") {
    const auto h3 = cli::cmd_extend(data_path("z2.json"), data_path("z2_omega1.json"), "");
    REQUIRE(h3.exit_code == cli::kOk);
    CHECK(io::parse_algebra(h3.output) == algebras::heisenberg3());
    const auto z3 = cli::cmd_extend(data_path("z2.json"), data_path("z2_omega0.json"), "");
    CHECK(io::parse_algebra(z3.output) == algebras::abelian(3));
    const auto bad = cli::cmd_extend(data_path("n4.json"), data_path("n4_bad_omega.json"), "");
    CHECK(bad.exit_code == cli::kInvalidMath);
    CHECK(bad.diagnostic.find("(e1,e3,e2)") != std::string::npos);
    CHECK(cli::cmd_extend(data_path("h3.json"), data_path("z2_omega1.json"), "").exit_code == cli::kInvalidMath);
}

TEST_CASE("peel then extend reproduces the corpus files") {
    for (const char* name : {"h3.json", "z3.json", "n4.json", "h5.json", "h3xz.json"}) {
        const std::string tower = tmp(std::string("tower_") + name);
        REQUIRE(cli::cmd_peel(data_path(name), tower).exit_code == cli::kOk);
        const auto rebuilt = cli::cmd_extend_tower(tower, "");
        REQUIRE(rebuilt.exit_code == cli::kOk);
        const std::string canonical = io::format_algebra(io::parse_algebra(io::read_file(data_path(name))));
        CHECK(rebuilt.output == canonical);
        // The written tower file is already canonical.
        CHECK(io::format_tower(io::parse_tower(io::read_file(tower))) == io::read_file(tower));
    }
}

TEST_CASE("curvature reports") {
    auto cfg = curvature_config("h3.json", 1);
    const auto r = cli::cmd_curvature(cfg);
    REQUIRE(r.exit_code == cli::kOk);
    bool found = false;
    for (std::size_t pos = r.output.find('\n'); pos != std::string::npos && pos + 1 < r.output.size();
         pos = r.output.find('\n', pos + 1)) {
        double t = 0, k = 0;
        if (std::sscanf(r.output.c_str() + pos + 1, "%lf,%lf", &t, &k) == 2 && std::abs(t - 1e-4) < 1e-12) {
            CHECK(std::abs(k - 7.5e-5) < 1e-9);
            found = true;
        }
    }
    CHECK(found);
    const auto summary = nlohmann::json::parse(r.summary);
    CHECK(summary["seed"] == 0);
    CHECK(summary["sample_count"].get<std::size_t>() >= 10000);
    CHECK(summary.contains("C"));
    CHECK(summary["config"]["t_points"] == 7);

    const auto z3 = cli::cmd_curvature(curvature_config("z3.json", 1));
    REQUIRE(z3.exit_code == cli::kOk);
    std::size_t rows = 0;
    for (std::size_t pos = z3.output.find('\n'); pos != std::string::npos && pos + 1 < z3.output.size();
         pos = z3.output.find('\n', pos + 1)) {
        double t = 0, k = -1;
        REQUIRE(std::sscanf(z3.output.c_str() + pos + 1, "%lf,%lf", &t, &k) == 2);
        CHECK(k == 0.0);
        ++rows;
    }
    CHECK(rows == 7);

    cfg.format = "json";
    const auto js = nlohmann::json::parse(cli::cmd_curvature(cfg).output);
    CHECK(js["rows"].size() == 7);

    cfg.format = "xml";
    CHECK(cli::cmd_curvature(cfg).exit_code == cli::kInvalidMath);
    auto bad_grid = curvature_config("h3.json", 1);
    bad_grid.t_min = 0.0;
    CHECK(cli::cmd_curvature(bad_grid).exit_code == cli::kInvalidMath);
}

TEST_CASE("curvature files and thread-count independence") {
    auto c1 = curvature_config("n4.json", 1);
    auto c8 = curvature_config("n4.json", 8);
    c1.out = tmp("n4_t1.csv");
    c8.out = tmp("n4_t8.csv");
    REQUIRE(cli::cmd_curvature(c1).exit_code == cli::kOk);
    REQUIRE(cli::cmd_curvature(c8).exit_code == cli::kOk);
    CHECK(io::read_file(c1.out) == io::read_file(c8.out));
    CHECK(std::filesystem::exists(c1.out + ".summary.json"));
}

TEST_CASE("certify") {
    cli::RunConfig c;
    c.command = "certify";
    c.inputs = {data_path("h3.json")};
    c.eps = 0.01;
    const auto r = cli::cmd_certify(c);
    REQUIRE(r.exit_code == cli::kOk);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["t_top"].get<double>() <= 0.0134);
    CHECK(doc["achieved_sup_K"].get<double>() <= 0.01);

    c.inputs = {data_path("z3.json")};
    c.eps = 1e-6;
    const auto z = nlohmann::json::parse(cli::cmd_certify(c).output);
    CHECK(z["schedule"] == nlohmann::json::array({1.0, 1.0, 1.0}));
    CHECK(z["achieved_sup_K"] == 0.0);

    c.eps = -1;
    CHECK(cli::cmd_certify(c).exit_code == cli::kInvalidMath);
}

TEST_CASE("argv front end") {
    const std::string h3 = data_path("h3.json");
    std::vector<std::string> args = {"nilflat", "validate", h3};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    CHECK(cli::main_entry(static_cast<int>(argv.size()), argv.data()) == cli::kOk);

    std::vector<std::string> bad = {"nilflat", "frobnicate"};
    std::vector<char*> bargv;
    for (auto& a : bad) bargv.push_back(a.data());
    CHECK(cli::main_entry(static_cast<int>(bargv.size()), bargv.data()) == cli::kIoOrParse);
}
