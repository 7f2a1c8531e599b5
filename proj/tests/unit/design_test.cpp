// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/design/config.hpp"
#include "eotx/design/pipeline.hpp"
#include "eotx/design/sweep.hpp"
#include "eotx/design/validate.hpp"

#include "eotx/constants.hpp"
#include "eotx/csv.hpp"
#include "eotx/errors.hpp"
#include "eotx/open_system.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace eotx::design {
namespace {

std::filesystem::path config_path(char const* name)
{
    return std::filesystem::path(EOTX_CONFIG_DIR) / name;
}

RawConfig plates()
{
    return load_config_file(config_path("parallel_plates.ini"));
}

/// The plate config with the field solve bypassed.
RawConfig plates_with_g(double g_hz = 1e4)
{
    auto raw = plates();
    apply_override(raw, "microwave.g_rad_s=" + format_number(kTwoPi * g_hz));
    return raw;
}

double column_value(CsvTable const& t, std::size_t row, std::string const& name)
{
    auto const& cols = t.columns();
    auto it = std::find_if(cols.begin(), cols.end(), [&](auto const& c) { return c.name == name; });
    EXPECT_NE(it, cols.end()) << name;
    return std::get<double>(t.rows().at(row).at(static_cast<std::size_t>(it - cols.begin())));
}

bool has_diag(std::vector<Diagnostic> const& d, Severity s, std::string const& path)
{
    return std::any_of(d.begin(), d.end(), [&](auto const& x) { return x.severity == s && x.path == path; });
}

TEST(Parse, SectionsKeysAndSweeps)
{
    auto const raw = parse_config_text("; comment\n[ring]\nfsr_hz = 1e11\n# comment\n[sweep.a]\nvariable = ring.n_g\n");
    EXPECT_EQ(raw.values.at("ring.fsr_hz"), "1e11");
    EXPECT_EQ(raw.sweeps.at("a").at("variable"), "ring.n_g");
}

TEST(Parse, KeyOutsideSectionIsError)
{
    EXPECT_THROW(parse_config_text("fsr_hz = 1\n"), ConfigError);
}

TEST(Parse, Overrides)
{
    auto raw = plates();
    apply_override(raw, "ring.fsr_hz=2e11");
    apply_override(raw, "sweep.bias.steps=5");
    EXPECT_EQ(raw.values.at("ring.fsr_hz"), "2e11");
    EXPECT_EQ(raw.sweeps.at("bias").at("steps"), "5");
    EXPECT_THROW(apply_override(raw, "no_equals_sign"), ConfigError);
}

TEST(Validate, ShippedConfigsAreClean)
{
    for (auto const* name : {"parallel_plates.ini", "side_grounds.ini"})
    {
        auto const d = validate_config(load_config_file(config_path(name)));
        EXPECT_FALSE(has_errors(d)) << name << ": " << (d.empty() ? "" : d.front().str());
    }
}

TEST(Validate, EmptyConfigListsMissingFieldsInStableOrder)
{
    auto const a = validate_config(RawConfig{});
    auto const b = validate_config(RawConfig{});
    ASSERT_FALSE(a.empty());
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        EXPECT_EQ(a[k].str(), b[k].str());
    EXPECT_EQ(a.front().path, "ring.fsr_hz");
    for (auto const* path : {"ring.n_eff", "ring.n_g", "coupler.phase_shifter_length_m", "coupler.v_pi_l_v_m",
                             "microwave.frequency_hz", "material.n_e", "material.r33_m_per_v",
                             "cross_section.config"})
        EXPECT_TRUE(has_diag(a, Severity::Error, path)) << path;
    EXPECT_THROW(resolve_config(RawConfig{}), ConfigError);
}

TEST(Validate, UnknownAndMalformedKeys)
{
    auto raw = plates();
    raw.values["ring.fsr"] = "1";
    raw.values["ring.n_g"] = "abc";
    auto const d = validate_config(raw);
    EXPECT_TRUE(has_diag(d, Severity::Error, "ring.fsr"));
    EXPECT_TRUE(has_diag(d, Severity::Error, "ring.n_g"));
}

TEST(Validate, RateAndQualityConflict)
{
    auto raw = plates();
    raw.values["budget.gamma_i_opt_rad_s"] = "1e8";
    EXPECT_TRUE(has_errors(validate_config(raw)));
}

TEST(Validate, NonPositiveRate)
{
    auto raw = plates();
    raw.values["budget.q_i_m"] = "0";
    EXPECT_TRUE(has_errors(validate_config(raw)));
}

TEST(Validate, BiasAtBranchEdgeIsError)
{
    // phi = pi V L / (V_pi L): 200 um and 0.02 V m put pi at 100 V.
    auto raw = plates();
    raw.values["coupler.bias_v"] = "100";
    EXPECT_TRUE(has_diag(validate_config(raw), Severity::Error, "coupler.bias_v"));
    raw.values["coupler.bias_v"] = "99";
    EXPECT_FALSE(has_errors(validate_config(raw)));
}

TEST(Validate, CapacitanceThreshold)
{
    auto raw = plates_with_g();
    raw.values["microwave.capacitance_f"] = "39e-15";
    auto const d = validate_config(raw);
    EXPECT_TRUE(has_diag(d, Severity::Warning, "microwave.capacitance_f"));
    EXPECT_FALSE(has_errors(d));
    raw.values["microwave.capacitance_f"] = "40e-15";
    EXPECT_FALSE(has_diag(validate_config(raw), Severity::Warning, "microwave.capacitance_f"));
    EXPECT_TRUE(capacitance_diagnostic(39e-15).has_value());
    EXPECT_FALSE(capacitance_diagnostic(40e-15).has_value());
}

TEST(Validate, UnknownSweepVariableListsValidPaths)
{
    auto raw = plates();
    raw.sweeps["bad"] = {{"variable", "ring.nope"}, {"start", "1"}, {"stop", "2"}, {"steps", "3"}};
    auto const d = validate_config(raw);
    auto it = std::find_if(d.begin(), d.end(), [](auto const& x) { return x.path.find("sweep.bad") == 0; });
    ASSERT_NE(it, d.end());
    EXPECT_NE(it->message.find("ring.fsr_hz"), std::string::npos);
    EXPECT_NE(it->message.find("budget.q_ex_opt"), std::string::npos);
}

TEST(Validate, LogSweepNeedsPositiveEnds)
{
    auto raw = plates();
    raw.sweeps["bad"] = {{"variable", "ring.fsr_hz"}, {"start", "0"}, {"stop", "2"}, {"steps", "3"},
                         {"scale", "log"}};
    EXPECT_TRUE(has_errors(validate_config(raw)));
}

TEST(Sweep, PointsLinearAndLog)
{
    SweepBlock const lin{"a", "ring.fsr_hz", 1.0, 3.0, 3, SweepScale::Linear};
    EXPECT_EQ(lin.points(), (std::vector<double>{1.0, 2.0, 3.0}));
    SweepBlock const lg{"b", "ring.fsr_hz", 1.0, 100.0, 3, SweepScale::Log};
    auto const p = lg.points();
    EXPECT_NEAR(p[1], 10.0, 1e-12);
    EXPECT_DOUBLE_EQ(p[2], 100.0);
}

TEST(Pipeline, RatesAndQualityFactorsGiveSameReport)
{
    auto const cfg_q = resolve_config(plates_with_g());
    auto raw = plates_with_g();
    auto const b = cfg_q.budget;
    for (auto const* k : {"q_i_opt", "q_ex_opt", "q_i_m", "q_ex_m"})
        raw.values.erase(std::string("budget.") + k);
    raw.values["budget.gamma_i_opt_rad_s"] = format_number(b.gamma_i_opt);
    raw.values["budget.gamma_ex_opt_rad_s"] = format_number(b.gamma_ex_opt);
    raw.values["budget.gamma_i_m_rad_s"] = format_number(b.gamma_i_m);
    raw.values["budget.gamma_ex_m_rad_s"] = format_number(b.gamma_ex_m);
    auto const ra = run_pipeline(cfg_q).entries();
    auto const rb = run_pipeline(resolve_config(raw)).entries();
    ASSERT_EQ(ra.size(), rb.size());
    for (std::size_t k = 0; k < ra.size(); ++k)
    {
        EXPECT_EQ(ra[k].value.source, rb[k].value.source) << ra[k].name;
        if (ra[k].value.source == Provenance::Skipped)
            continue;
        EXPECT_NEAR(ra[k].value.value, rb[k].value.value, 1e-9 * std::abs(ra[k].value.value)) << ra[k].name;
    }
}

TEST(Pipeline, GivenCouplingSkipsFieldSolve)
{
    auto const r = run_pipeline(resolve_config(plates_with_g()));
    EXPECT_EQ(r.g_rad_s.source, Provenance::Config);
    EXPECT_EQ(r.e_mz_v_per_m.source, Provenance::Skipped);
    EXPECT_EQ(r.capacitance_f.source, Provenance::Skipped);
    EXPECT_DOUBLE_EQ(r.g_rad_s.value, kTwoPi * 1e4);
}

TEST(Pipeline, CooperativityClosure)
{
    auto const r = run_pipeline(resolve_config(plates_with_g()));
    EXPECT_TRUE(r.targets_unit_cooperativity);
    EXPECT_NEAR(r.cooperativity.value, 1.0, 1e-9);
    // Feed the reported pump power back in and re-evaluate independently.
    open_system::OperatingPoint const op{
        r.g_rad_s.value, open_system::pump_photons_from_power(r.p_in_w.value, r.budget, r.omega_opt), 0.0,
        r.budget, r.omega_opt, r.omega_m};
    EXPECT_NEAR(open_system::cooperativity(op), 1.0, 1e-9);

    auto raw = plates_with_g();
    raw.values["pump.p_in_w"] = format_number(r.p_in_w.value);
    auto const again = run_pipeline(resolve_config(raw));
    EXPECT_FALSE(again.targets_unit_cooperativity);
    EXPECT_NEAR(again.cooperativity.value, 1.0, 1e-9);
    EXPECT_NEAR(again.efficiency.value, r.efficiency.value, 1e-9);
}

TEST(Pipeline, TenfoldLowerOpticalQCostsHundredfoldPower)
{
    auto const hi = run_pipeline(resolve_config(plates_with_g()));
    auto raw = plates_with_g();
    raw.values["budget.q_i_opt"] = "2e5";
    raw.values["budget.q_ex_opt"] = "2e5";
    auto const lo = run_pipeline(resolve_config(raw));
    EXPECT_NEAR(lo.p_in_w.value / hi.p_in_w.value, 100.0, 1e-6);
    EXPECT_GT(lo.n_qp_al_m3.value, hi.n_qp_al_m3.value);
    EXPECT_LT(lo.q_al.value, hi.q_al.value);
}

TEST(Pipeline, ComputedFieldGivesKilohertzCoupling)
{
    auto const cfg = resolve_config(plates());
    auto const r = run_pipeline(cfg);
    EXPECT_EQ(r.g_rad_s.source, Provenance::Computed);
    double const g_hz = rad_to_hz(r.g_rad_s.value);
    EXPECT_GT(g_hz, 5e3);
    EXPECT_LT(g_hz, 15e3);
    EXPECT_NEAR(r.cooperativity.value, 1.0, 1e-9);
    // Pump power follows the 1/g^2 law from 45.2 uW at 10 kHz with the
    // same Q budget. The ratio is independent of the optical carrier.
    double const p10 = open_system::required_pump_power(r.budget, kTwoPi * 1e4, r.omega_opt);
    EXPECT_NEAR(r.p_in_w.value, p10 * std::pow(1e4 / g_hz, 2), 1e-9 * r.p_in_w.value);
    // The bias is solved so the splitting matches the microwave frequency.
    EXPECT_NEAR(r.splitting_hz.value, 6e9, 1e-3);
    EXPECT_EQ(r.bias_v.source, Provenance::Computed);
    EXPECT_EQ(report_table(r).rows().size(), r.entries().size());
}

TEST(Pipeline, UnreachableSplittingReportsStage)
{
    auto raw = plates_with_g();
    raw.values["microwave.frequency_hz"] = "1e12";
    try
    {
        run_pipeline(resolve_config(raw));
        FAIL() << "expected StageError";
    }
    catch (StageError const& e)
    {
        EXPECT_EQ(e.stage(), "spectra");
    }
}

TEST(Sweeps, BiasSlopeScalesWithShifterLength)
{
    double prev = 0.0;
    for (double len : {100e-6, 200e-6, 300e-6})
    {
        auto raw = plates_with_g();
        raw.values["coupler.phase_shifter_length_m"] = format_number(len);
        auto const cfg = resolve_config(raw);
        auto const t = run_sweep(raw, find_sweep(cfg, "bias"), 1);
        ASSERT_EQ(t.rows().size(), 31u);
        double const slope = (column_value(t, 10, "splitting_hz") - column_value(t, 0, "splitting_hz")) /
                             (column_value(t, 10, "coupler.bias_v") - column_value(t, 0, "coupler.bias_v"));
        // 7.5084 GHz/V at 200 um, proportional to the shifter length.
        EXPECT_NEAR(slope, 7508406442.0796 * len / 200e-6, 1e-6 * slope) << len;
        // Linear through the origin.
        EXPECT_NEAR(column_value(t, 0, "splitting_hz"), 0.0, 1e-6);
        EXPECT_NEAR(column_value(t, 30, "splitting_hz"), 3.0 * slope, 1e-6 * slope);
        EXPECT_GT(slope, prev);
        prev = slope;
    }
}

TEST(Sweeps, DeterministicAcrossThreadCounts)
{
    auto const raw = plates_with_g();
    auto const cfg = resolve_config(raw);
    auto const& block = find_sweep(cfg, "q_ex_opt");
    auto const a = run_sweep(raw, block, 1).str();
    auto const b = run_sweep(raw, block, 4).str();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, run_sweep(raw, block, 1).str());
}

TEST(Sweeps, CouplingSweepAnnotatesRegime)
{
    auto const raw = plates_with_g();
    auto const cfg = resolve_config(raw);
    auto const t = run_sweep(raw, find_sweep(cfg, "q_ex_opt"), 2);
    ASSERT_EQ(t.columns().back().name, "optical_regime");
    auto regime = [&](std::size_t k) { return std::get<std::string>(t.rows()[k].back()); };
    ASSERT_EQ(t.rows().size(), 41u);
    EXPECT_EQ(regime(0), "over");
    EXPECT_EQ(regime(40), "under");
    // q_ex_opt = 2e6 = q_i_opt is not on the log grid; the regime flips
    // between 1.995e6 and 2.512e6 (rows 13 and 14).
    EXPECT_EQ(regime(13), "over");
    EXPECT_EQ(regime(14), "under");
    for (std::size_t k = 1; k < t.rows().size(); ++k)
        EXPECT_LT(column_value(t, k, "efficiency"), column_value(t, k - 1, "efficiency"));
}

TEST(Sweeps, UnknownNameThrows)
{
    auto const cfg = resolve_config(plates_with_g());
    EXPECT_THROW(find_sweep(cfg, "nope"), ConfigError);
}

TEST(Sweeps, CrossSectionSweepResolvesFieldPerPoint)
{
    auto raw = plates();
    raw.sweeps["s1"] = {{"variable", "cross_section.s1_m"}, {"start", "1.5e-6"}, {"stop", "2.5e-6"},
                        {"steps", "3"}};
    auto const cfg = resolve_config(raw);
    auto const t = run_sweep(raw, find_sweep(cfg, "s1"), 1);
    // Wider gap, weaker field.
    EXPECT_GT(std::abs(column_value(t, 0, "e_mz_v_per_m")), std::abs(column_value(t, 2, "e_mz_v_per_m")));
}

}  // namespace
}  // namespace eotx::design
