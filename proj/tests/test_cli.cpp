// End-to-end checks of the conetool binary: stdout/stderr split, exit codes
// and deterministic payloads.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

#ifndef CONETOOL_PATH
#error "CONETOOL_PATH must point at the conetool binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
    int status;
    std::string out;
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string(CONETOOL_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe))
        out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("conetool_test_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& content) {
        const auto path = dir_ / name;
        std::ofstream(path) << content;
        return path.string();
    }

    fs::path dir_;
};

json results_of(const Outcome& r) { return json::parse(r.out)["results"]; }

} // namespace

TEST_F(Cli, Dist) {
    auto r = run("dist 1,2 2,1");
    ASSERT_EQ(r.status, 0);
    EXPECT_DOUBLE_EQ(results_of(r)["d"].get<double>(), 0.6);
    EXPECT_NEAR(results_of(r)["d_H"].get<double>(), 1.386294, 1e-6);

    r = run("dist 1,0 0,1");
    EXPECT_EQ(results_of(r)["d_H"], "inf");
    EXPECT_EQ(results_of(r)["d"].get<double>(), 1.0);

    r = run("dist --file " + write("two.csv", "1,2,3\n2,4,6\n"));
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(results_of(r)["d"].get<double>(), 0.0);
}

TEST_F(Cli, DistErrorsGoToStderr) {
    auto r = run("dist 1,2 1,2,3 2>/dev/null");
    EXPECT_NE(r.status, 0);
    EXPECT_TRUE(r.out.empty());

    r = run("dist 1,2 1,2,3 2>&1 >/dev/null");
    const auto err = json::parse(r.out);
    EXPECT_EQ(err["error"]["code"], "dimension_mismatch");
    EXPECT_TRUE(err["error"].contains("location"));
}

TEST_F(Cli, Coeff) {
    const auto sym = write("sym.csv", "2,1\n1,2\n");
    auto r = run("coeff " + sym);
    ASSERT_EQ(r.status, 0);
    EXPECT_NEAR(results_of(r)["c"].get<double>(), 0.6, 1e-15);
    EXPECT_NEAR(results_of(r)["a_star"].get<double>(), 2.0, 1e-12);

    r = run("coeff " + write("id.json", R"({"matrix": [[1,0],[0,1]]})"));
    EXPECT_EQ(results_of(r)["c"].get<double>(), 1.0);
    EXPECT_EQ(results_of(r)["is_strict"], false);

    r = run("coeff --formula " + sym);
    EXPECT_EQ(results_of(r)["method"], "closed_form");

    r = run("coeff " + write("zc.csv", "1,0\n1,0\n") + " 2>&1 >/dev/null");
    const auto err = json::parse(r.out);
    EXPECT_EQ(err["error"]["code"], "not_cone_preserving");
    EXPECT_NE(err["error"]["message"].get<std::string>().find("column 1"), std::string::npos);

    r = run("coeff " + write("neg.csv", "1,-1\n1,1\n") + " 2>&1 >/dev/null");
    EXPECT_EQ(json::parse(r.out)["error"]["code"], "negative_entry");
}

TEST_F(Cli, Check) {
    auto r = run("check " + write("zr.csv", "1,1\n0,0\n"));
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(results_of(r)["is_strictly_contracting"], true);
    EXPECT_EQ(results_of(r)["certificate"]["A"].get<double>(), 1.0);
    r = run("check " + write("id.csv", "1,0\n0,1\n"));
    EXPECT_EQ(results_of(r)["is_uniformly_positive"], false);
    EXPECT_TRUE(results_of(r)["certificate"].is_null());
}

TEST_F(Cli, Perron) {
    auto r = run("perron " + write("sym.csv", "2,1\n1,2\n") + " --start 1,0");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(results_of(r)["eigenvector"][0].get<double>(), 1.0);
    EXPECT_NEAR(results_of(r)["eigenvector"][1].get<double>(), 1.0, 1e-10);
    EXPECT_NEAR(results_of(r)["eigenvalue_upper"].get<double>(), 3.0, 1e-9);

    r = run("perron " + write("diag.csv", "2,0\n0,1\n"));
    ASSERT_EQ(r.status, 0);
    EXPECT_FALSE(json::parse(r.out)["warnings"].empty());

    r = run("perron --tol -1 " + write("d2.csv", "2,0\n0,1\n") + " 2>/dev/null");
    EXPECT_NE(r.status, 0);
}

TEST_F(Cli, Kernel) {
    auto r = run("kernel --builtin separable --n 16");
    ASSERT_EQ(r.status, 0);
    EXPECT_NEAR(results_of(r)["certificate"]["A"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(results_of(r)["c_grid"].get<double>(), 0.0, 1e-12);

    r = run("kernel --builtin poly1xy --n 8");
    EXPECT_NEAR(results_of(r)["certificate"]["A"].get<double>(), 2.0, 1e-12);
    EXPECT_NEAR(results_of(r)["c_grid"].get<double>(), 1.0 / 3.0, 1e-12);

    const auto bad = write("bad.json", R"({"nodes": [0.25, 0.75], "weights": [0.5, 0.5], "values": [[1, 0], [1, 1]]})");
    r = run("kernel --file " + bad + " 2>&1 >/dev/null");
    const auto err = json::parse(r.out);
    EXPECT_EQ(err["error"]["code"], "pattern_failure");
    EXPECT_NE(err["error"]["location"].get<std::string>().find("row 0, column 1"), std::string::npos);
}

TEST_F(Cli, DeterministicPayloads) {
    const auto m = write("m.csv", "0.3,1.7,2\n4,0.5,0.25\n1,1,9\n");
    auto strip = [](const Outcome& r) {
        auto j = json::parse(r.out);
        j["results"].erase("elapsed");
        return j["results"].dump();
    };
    EXPECT_EQ(strip(run("coeff " + m)), strip(run("coeff " + m)));
    EXPECT_EQ(strip(run("coeff --threads 4 " + m)), strip(run("coeff " + m)));
    EXPECT_EQ(run("perron " + m).out, run("perron " + m).out);
    EXPECT_EQ(run("kernel --builtin gaussian --n 12").out, run("kernel --builtin gaussian --n 12").out);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_NE(run("2>/dev/null").status, 0);
    EXPECT_NE(run("coeff 2>/dev/null").status, 0);
    EXPECT_NE(run("kernel --builtin nope 2>/dev/null").status, 0);
}
