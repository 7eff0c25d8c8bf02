#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "predprey/cli_io.hpp"
#include "predprey/oracle.hpp"

using namespace predprey;
namespace fs = std::filesystem;

namespace {

nlohmann::json minimal_config() {
    return nlohmann::json{
        {"grid", {{"n", 32}}},
        {"coefficients", {{"a", 1.0}, {"b", 2.0}, {"c", 1.0}, {"d", 1.0}, {"m", 1.0}}},
        {"parameters", {{"mu", 1.0}, {"eps", 0.1}, {"lambda", 2.5}}},
    };
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("predprey_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("minimal config parses and builds the constant model") {
    RunConfig cfg = parse_config(minimal_config());
    CHECK(cfg.grid.n == 32);
    CHECK(cfg.mu == 1.0);
    CHECK(cfg.eps == 0.1);
    auto model = cfg.build_model();
    CHECK(model.op1.size() == 34); // Neumann keeps both endpoints
}

TEST_CASE("unknown keys are rejected everywhere") {
    auto doc = minimal_config();
    doc["grid"]["m"] = 3; // typo for n
    CHECK_THROWS_AS(parse_config(doc), ValidationError);
    auto doc2 = minimal_config();
    doc2["continuation"] = {{"ds0", 1e-3}, {"dsmax", 1.0}};
    CHECK_THROWS_AS(parse_config(doc2), ValidationError);
    auto doc3 = minimal_config();
    doc3["unknown_section"] = 1;
    CHECK_THROWS_AS(parse_config(doc3), ValidationError);
}

TEST_CASE("invalid coefficients are rejected with the constraint named") {
    auto doc = minimal_config();
    doc["coefficients"]["a"] = 0.0;
    try {
        RunConfig cfg = parse_config(doc);
        cfg.build_model();
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).size() > 0);
    }
}

TEST_CASE("m above 1 in sup norm is accepted with renormalization") {
    auto doc = minimal_config();
    doc["coefficients"]["m"] = 2.0;
    RunConfig cfg = parse_config(doc);
    auto model = cfg.build_model();
    CHECK(model.m.max() == doctest::Approx(1.0));
}

TEST_CASE("example_section6 preset expands to the constant Neumann model") {
    nlohmann::json doc{{"example_section6",
                        {{"a", 1.0}, {"b", 2.0}, {"c", 1.0}, {"d", 1.0}, {"mu", 1.0}}}};
    RunConfig cfg = parse_config(doc);
    auto model = cfg.build_model();
    CHECK(model.b.min() == doctest::Approx(2.0));
    CHECK(model.m.min() == doctest::Approx(1.0));
    CHECK(cfg.mu == 1.0);
}

TEST_CASE("format17 round-trips doubles bit-exactly") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        double v = U(rng) * std::pow(10.0, int(rng() % 20) - 10);
        double back = std::stod(format17(v));
        CHECK(back == v);
    }
    CHECK(format17(0.1).find('.') != std::string::npos);
}

TEST_CASE("branch CSV round-trip preserves every floating-point value") {
    Grid g = build_grid(32);
    auto model = make_constant_model(g, 1.0, 2.0, 1.0, 1.0);
    Branch br = continue_branch(1.0, 0.7, model);
    REQUIRE(br.points.size() > 10);

    std::stringstream ss;
    write_branch_csv(br, ss);
    std::string text = ss.str();
    CHECK(text.rfind("s,lambda,norm_w_inf,norm_v_inf,morse_index,is_coexistence,is_fold", 0) == 0);
    CHECK(text.find("\r") == std::string::npos); // LF endings

    std::stringstream in(text);
    auto rows = read_branch_csv(in);
    REQUIRE(rows.size() == br.points.size());
    std::size_t folds_marked = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].s == br.points[i].s);
        CHECK(rows[i].lambda == br.points[i].state.lambda);
        CHECK(rows[i].norm_w_inf == br.points[i].state.norm_w_inf());
        CHECK(rows[i].norm_v_inf == br.points[i].state.norm_v_inf());
        if (rows[i].is_fold) ++folds_marked;
    }
    CHECK(folds_marked == br.folds.size());

    // deterministic output: a second serialization is byte-identical
    std::stringstream ss2;
    write_branch_csv(br, ss2);
    CHECK(ss2.str() == text);
}

TEST_CASE("malformed branch CSV header is rejected") {
    std::stringstream in("s,lambda,norm_w\n0,1,2\n");
    CHECK_THROWS_AS(read_branch_csv(in), ValidationError);
}

TEST_CASE("eigen command writes sigma0 and the eigenfunction") {
    TempDir tmp;
    RunConfig cfg = parse_config(minimal_config());
    run_command("eigen", cfg, tmp.path.string(), 1);
    std::ifstream summary(tmp.path / "eigen_summary.csv");
    REQUIRE(summary.good());
    std::string header, row;
    std::getline(summary, header);
    std::getline(summary, row);
    CHECK(header == "sigma0,residual");
    double sigma0 = std::stod(row.substr(0, row.find(',')));
    CHECK(std::fabs(sigma0) < 1e-10); // Neumann Laplacian
    CHECK(fs::exists(tmp.path / "eigen.csv"));
}

TEST_CASE("oracle command tabulates the constant-model regimes") {
    TempDir tmp;
    auto doc = minimal_config();
    doc["parameters"] = {{"mu", 1.0},
                         {"eps_list", {0.1, 0.7, 3.0}},
                         {"lambda_range", {{"lo", 1.8}, {"hi", 2.2}, {"count", 5}}}};
    RunConfig cfg = parse_config(doc);
    run_command("oracle", cfg, tmp.path.string(), 1);
    std::ifstream regimes(tmp.path / "oracle_regime.csv");
    REQUIRE(regimes.good());
    std::string line;
    std::getline(regimes, line); // header
    std::vector<std::string> names;
    while (std::getline(regimes, line)) {
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        names.push_back(line.substr(c1 + 1, c2 - c1 - 1));
    }
    REQUIRE(names.size() == 3);
    CHECK(names[0] == "single_fold");
    CHECK(names[1] == "s_shaped");
    CHECK(names[2] == "monotone");
}

TEST_CASE("unknown command is a config error") {
    TempDir tmp;
    RunConfig cfg = parse_config(minimal_config());
    CHECK_THROWS_AS(run_command("frobnicate", cfg, tmp.path.string(), 1), ValidationError);
}

TEST_CASE("compare command reports zero deviation for constant states") {
    TempDir tmp;
    auto doc = minimal_config();
    doc["parameters"] = {{"mu", 1.0}, {"eps", 0.1},
                         {"lambda_range", {{"lo", 2.2}, {"hi", 3.0}, {"count", 2}}}};
    RunConfig cfg = parse_config(doc);
    run_command("compare", cfg, tmp.path.string(), 1);
    std::ifstream cmp(tmp.path / "compare.csv");
    REQUIRE(cmp.good());
    std::string line;
    std::getline(cmp, line); // header
    int rows = 0;
    while (std::getline(cmp, line)) {
        ++rows;
        // columns: lambda,eps,oracle_w,oracle_v,dev_w,dev_v,count_oracle,count_pde
        std::vector<std::string> cols;
        std::size_t pos = 0;
        while (true) {
            auto nxt = line.find(',', pos);
            cols.push_back(line.substr(pos, nxt - pos));
            if (nxt == std::string::npos) break;
            pos = nxt + 1;
        }
        REQUIRE(cols.size() == 8);
        CHECK(std::stod(cols[4]) <= 1e-6);
        CHECK(std::stod(cols[5]) <= 1e-6);
        CHECK(cols[6] == cols[7]);
    }
    CHECK(rows >= 2);
}

TEST_CASE("load_config reports missing files") {
    CHECK_THROWS_AS(load_config("/nonexistent/path/config.json"), ValidationError);
}
