#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "obswitch/commands.hpp"
#include "obswitch/config.hpp"
#include "obswitch/error.hpp"
#include "obswitch/surface_io.hpp"
#include "obswitch/vi_solver.hpp"

namespace obswitch {
namespace fs = std::filesystem;
namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::size_t count_lines(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class CommandsTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("obswitch_cmd_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        options_.out_dir = dir_.string();
    }
    void TearDown() override { fs::remove_all(dir_); }

    static ExperimentConfig small(const std::string& extra = {}) {
        return parse_config("x_min = -6\nx_max = 6\nn_x = 241\nn_t = 80\nn_paths = 400\n" + extra);
    }

    fs::path dir_;
    CommandOptions options_;
    std::ostringstream log_;
};

TEST_F(CommandsTest, SurfaceFileNames) {
    EXPECT_EQ(surface_file_name(0.0625), "surface_eps_0.0625.csv");
    EXPECT_EQ(surface_file_name(0.0), "surface_eps_0.csv");
    EXPECT_EQ(surface_file_name(8.0), "surface_eps_8.csv");
}

TEST_F(CommandsTest, OverridesAreValidated) {
    options_.n_x = 41;
    options_.seed = 3;
    const auto c = apply_overrides(small(), options_);
    EXPECT_EQ(c.grid.n_x, 41u);
    EXPECT_EQ(c.mc.seed, 3u);
    EXPECT_EQ(c.output_dir, dir_.string());
    options_.n_x = 2;
    EXPECT_THROW(apply_overrides(small(), options_), ConfigError);
}

TEST_F(CommandsTest, SolveWritesFirstEpsilon) {
    ASSERT_EQ(cmd_solve(small("epsilon_list = 0.5\n"), options_, log_), 0);
    std::ifstream in(dir_ / "surface_eps_0.5.csv");
    ASSERT_TRUE(in);
    const auto s = read_surface_csv(in, ProblemSpec::baseline(0.5));
    EXPECT_EQ(s.grid().n_x, 241u);
    EXPECT_EQ(s.grid().n_t, 80u);
}

TEST_F(CommandsTest, SweepAgreesWithNoInformationAtLargeNoise) {
    ASSERT_EQ(cmd_sweep(small("epsilon_list = 0, 8\n"), options_, log_), 0);
    EXPECT_TRUE(fs::exists(dir_ / "surface_eps_0.csv"));
    std::ifstream in(dir_ / "surface_eps_8.csv");
    const auto s = read_surface_csv(in, ProblemSpec::baseline(8.0));
    for (double m : {0.25, 0.5}) {
        EXPECT_NEAR(value_at(s, 0.0, m, Mode::Open), no_info_value(0.0, m, s.spec()), 0.05);
    }
    const auto figure = slurp(dir_ / "figure1.csv");
    EXPECT_EQ(figure.rfind("epsilon,t,m,v1\n", 0), 0u);
    EXPECT_EQ(count_lines(figure), 1u + 2u * 2u * 241u);
}

TEST_F(CommandsTest, SimulateIsReproducible) {
    const auto config = small("epsilon_list = 1\nquery_points = 0:0:1, 0.5:0.5:0, 1:0:1\n");
    ASSERT_EQ(cmd_simulate(config, options_, log_), 0);
    const auto first = slurp(dir_ / "estimates.csv");
    ASSERT_EQ(cmd_simulate(config, options_, log_), 0);
    EXPECT_EQ(slurp(dir_ / "estimates.csv"), first);
    EXPECT_EQ(first.rfind("epsilon,t0,m0,mode,mean,std_err,n_paths,seed\n", 0), 0u);
    EXPECT_EQ(count_lines(first), 3u);  // the query at t = T is skipped

    options_.seed = 99;
    ASSERT_EQ(cmd_simulate(config, options_, log_), 0);
    EXPECT_NE(slurp(dir_ / "estimates.csv"), first);
}

TEST_F(CommandsTest, VerifySingleEpsilonSkipsCrossChecks) {
    ASSERT_EQ(cmd_verify(small("epsilon_list = 1\n"), options_, log_), 0);
    const auto checks = slurp(dir_ / "checks.csv");
    EXPECT_NE(checks.find("epsilon_monotonicity,skipped"), std::string::npos);
    EXPECT_NE(checks.find("convergence_bound,skipped"), std::string::npos);
    EXPECT_NE(checks.find("feasibility,true"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir_ / "summary.txt"));
}

TEST_F(CommandsTest, VerifyReadsSurfaceFiles) {
    const auto config = small("epsilon_list = 0, 1\n");
    ASSERT_EQ(cmd_sweep(config, options_, log_), 0);
    options_.surface_files = {(dir_ / "surface_eps_0.csv").string(),
                              (dir_ / "surface_eps_1.csv").string()};
    EXPECT_EQ(cmd_verify(config, options_, log_), 0);
    const auto checks = slurp(dir_ / "checks.csv");
    EXPECT_NE(checks.find("epsilon_monotonicity,true"), std::string::npos);
    EXPECT_NE(checks.find("convergence_bound,true"), std::string::npos);
}

TEST_F(CommandsTest, VerifyRejectsCorruptedSurfaces) {
    const auto config = small("epsilon_list = 1\n");
    ASSERT_EQ(cmd_solve(config, options_, log_), 0);
    const auto good = dir_ / "surface_eps_1.csv";
    auto text = slurp(good);
    text.replace(text.find('\n') + 1, 4, "xx,y");
    const auto bad = dir_ / "corrupt.csv";
    write_file_atomically(bad.string(), text);
    options_.surface_files = {bad.string()};
    EXPECT_THROW(cmd_verify(config, options_, log_), DomainError);

    // A feasible-looking file with the modes swapped fails the checks.
    std::ifstream in(good);
    const auto s = read_surface_csv(in, ProblemSpec::baseline(1.0));
    std::vector<double> v0(s.values(Mode::Open).begin(), s.values(Mode::Open).end());
    std::vector<double> v1(s.values(Mode::Closed).begin(), s.values(Mode::Closed).end());
    const ValueSurface swapped(s.grid(), s.spec(), v0, v1);
    std::ostringstream out;
    write_surface_csv(out, swapped, extract_regions(swapped));
    write_file_atomically(bad.string(), out.str());
    EXPECT_EQ(cmd_verify(config, options_, log_), 1);
    EXPECT_NE(slurp(dir_ / "checks.csv").find("feasibility,false"), std::string::npos);

    options_.surface_files = {};
    options_.surface_files.push_back((dir_ / "missing.csv").string());
    EXPECT_ANY_THROW(cmd_verify(config, options_, log_));
}

TEST_F(CommandsTest, Table2WritesEighteenRows) {
    const int code = cmd_table2(small(), options_, log_);
    EXPECT_TRUE(code == 0 || code == 1);
    const auto table = slurp(dir_ / "table2.csv");
    EXPECT_EQ(table.rfind("t,m,epsilon,paper,computed,abs_diff,tolerance,pass\n", 0), 0u);
    EXPECT_EQ(count_lines(table), 19u);
}

TEST_F(CommandsTest, AtomicWriteReplacesContents) {
    fs::create_directories(dir_);
    const auto path = dir_ / "file.txt";
    write_file_atomically(path.string(), "one");
    write_file_atomically(path.string(), "two");
    EXPECT_EQ(slurp(path), "two");
    EXPECT_FALSE(fs::exists(dir_ / "file.txt.tmp"));
}

}  // namespace
}  // namespace obswitch
