// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

fs::path const kConfig = fs::path(EOTX_CONFIG_DIR) / "parallel_plates.ini";

fs::path fresh_dir(std::string const& name)
{
    auto const dir = fs::temp_directory_path() / ("eotx_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

int run(std::string const& args)
{
    std::string const cmd = std::string("\"") + EOTX_CLI + "\" " + args + " >/dev/null 2>&1";
    int const status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(fs::path const& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Keep the CLI runs fast: bypass the field solve unless it is the point.
std::string const kFastG = " --set microwave.g_rad_s=62831.853";

TEST(Cli, PipelineWritesReport)
{
    auto const out = fresh_dir("pipeline");
    ASSERT_EQ(run("pipeline " + kConfig.string() + " -o " + out.string() + kFastG), 0);
    EXPECT_TRUE(fs::exists(out / "report.csv"));
    EXPECT_EQ(slurp(out / "run_info.txt").rfind("eotx ", 0), 0u);
    EXPECT_NE(slurp(out / "report.csv").find("cooperativity"), std::string::npos);
}

TEST(Cli, EveryVerbProducesItsFiles)
{
    struct Case
    {
        char const* verb;
        char const* file;
    };
    for (auto const& c : {Case{"tune", "tuning.csv"}, Case{"dynamics", "trajectory.csv"},
                          Case{"convert", "transfer.csv"}, Case{"convert", "coupling_sweep.csv"},
                          Case{"qp", "qp_sweep.csv"}})
    {
        auto const out = fresh_dir(c.verb);
        ASSERT_EQ(run(std::string(c.verb) + " " + kConfig.string() + " -o " + out.string() + kFastG), 0)
            << c.verb;
        EXPECT_TRUE(fs::exists(out / c.file)) << c.file;
    }
}

TEST(Cli, FieldAndCouplingCurve)
{
    auto const out = fresh_dir("fields");
    ASSERT_EQ(run("fields " + kConfig.string() + " -o " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "field_summary.csv"));
    EXPECT_TRUE(fs::exists(out / "field.csv"));
    ASSERT_EQ(run("gfactor " + kConfig.string() + " -o " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "gfactor.csv"));
}

TEST(Cli, NamedSweep)
{
    auto const out = fresh_dir("sweep");
    ASSERT_EQ(run("sweep " + kConfig.string() + " --name bias -j 2 -o " + out.string() + kFastG), 0);
    EXPECT_TRUE(fs::exists(out / "sweep_bias.csv"));
    EXPECT_FALSE(fs::exists(out / "sweep_fsr.csv"));
    EXPECT_EQ(run("sweep " + kConfig.string() + " --name missing -o " + out.string() + kFastG), 2);
}

TEST(Cli, ConfigErrorsExitTwo)
{
    auto const out = fresh_dir("bad");
    EXPECT_EQ(run("pipeline " + kConfig.string() + " -o " + out.string() + " --set ring.fsr_hz=-1"), 2);
    EXPECT_EQ(run("pipeline " + kConfig.string() + " -o " + out.string() + " --set ring.bogus=1"), 2);
    EXPECT_EQ(run("pipeline " + kConfig.string() + " -o " + out.string() + " --set coupler.bias_v=100"), 2);
    EXPECT_EQ(run("pipeline /nonexistent.ini -o " + out.string()), 2);
    EXPECT_EQ(run("frobnicate " + kConfig.string()), 2);
}

TEST(Cli, SolverFailureExitsThree)
{
    auto const out = fresh_dir("solver");
    EXPECT_EQ(run("fields " + kConfig.string() + " -o " + out.string() + " --set cross_section.max_iterations=2"), 3);
    EXPECT_EQ(run("pipeline " + kConfig.string() + " -o " + out.string() + " --set cross_section.max_iterations=2"),
              3);
}

}  // namespace
