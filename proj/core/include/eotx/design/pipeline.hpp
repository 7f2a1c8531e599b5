// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end design chain: supermode tuning, field solve, conversion rate,
//! open-system budget and the quasiparticle-limited microwave Q.

#pragma once

#include "eotx/coupling.hpp"
#include "eotx/csv.hpp"
#include "eotx/design/config.hpp"
#include "eotx/design/validate.hpp"
#include "eotx/errors.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eotx::design {

enum class Provenance
{
    Computed,
    Config,
    Skipped,
};

std::string_view to_string(Provenance p);

struct ReportValue
{
    double value = 0.0;
    Provenance source = Provenance::Computed;
};

struct ReportEntry
{
    std::string_view name;
    std::string_view unit;
    ReportValue value;
};

struct PipelineReport
{
    ReportValue bias_v;
    ReportValue splitting_hz;
    ReportValue e_mz_v_per_m;
    ReportValue capacitance_per_length_f_per_m;
    ReportValue capacitance_f;
    ReportValue g_rad_s;
    ReportValue n_s;
    ReportValue cooperativity;
    ReportValue p_in_w;
    ReportValue p_scat_w;
    ReportValue efficiency;
    ReportValue n_qp_al_m3;
    ReportValue q_al;
    ReportValue q_nb;

    /// Inputs the open-system values were derived from.
    open_system::LossBudget budget;
    double omega_opt = 0.0;
    double omega_m = 0.0;
    bool targets_unit_cooperativity = true;

    std::vector<Diagnostic> diagnostics;

    /// Values in a fixed order, for tables.
    std::vector<ReportEntry> entries() const;
};

/// Thrown when a stage fails on physics grounds (bad parameter reaching a
/// module). Solver failures keep their own type.
class StageError : public ConfigError
{
  public:
    StageError(std::string stage, std::string const& what);
    std::string const& stage() const noexcept { return stage_; }

  private:
    std::string stage_;
};

/// Runs spectra -> electrostatics -> coupling -> open_system ->
/// quasiparticle. `field` short-circuits the solve when a caller already
/// has one for this cross-section.
PipelineReport run_pipeline(DesignConfig const& config,
                            coupling::FieldSummary const* field = nullptr);

/// Field solve exactly as the pipeline would run it.
coupling::FieldSummary solve_field(DesignConfig const& config);

/// quantity,unit,value,source rows.
CsvTable report_table(PipelineReport const& report);

}  // namespace eotx::design
