// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

//! Quasi-static 2D field solve for the electrode cross-section of an
//! electro-optic ring.
//!
//! The cross-section is meshed with a tensor-product grid: uniform cells of
//! size 1/resolution inside the device box, smoothly stretched cells in the
//! padding out to a Neumann outer boundary. Potentials live on nodes,
//! materials on cells, electrodes are Dirichlet node sets. The node-centred
//! finite-volume operator for div(eps grad phi) = 0 is symmetric positive
//! definite on the free nodes and is solved with preconditioned conjugate
//! gradients.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eotx::electrostatics {

enum class ElectrodeConfig
{
    ParallelPlates,      //!< drive electrode above the ridge, ground below
    TopPlusSideGrounds,  //!< drive electrode above, two lateral grounds
};

enum class Region : std::uint8_t
{
    SiO2,
    LN,
    Si,
    Electrode,
};

/// Relative permittivities. LN is uniaxial; for Z-cut the optic axis is
/// vertical, so eps_z applies to vertical fluxes and eps_xy to lateral ones.
struct Permittivities
{
    double ln_z = 28.0;
    double ln_xy = 43.0;
    double sio2 = 3.9;
    double si = 11.7;
};

/// Electrode and dielectric geometry. All lengths in metres; the LN ridge
/// occupies x in [-W/2, W/2], y in [0, H].
struct CrossSection
{
    ElectrodeConfig config = ElectrodeConfig::ParallelPlates;
    double W = 1.2e-6;
    double H = 0.75e-6;
    double S1 = 2.0e-6;  //!< ridge top to drive electrode
    double S2 = 2.0e-6;  //!< ridge bottom to bottom ground (ParallelPlates)
    double G = 3.0e-6;   //!< ridge side wall to side ground (TopPlusSideGrounds)
    /// Side grounds sit this far below the ridge base (TopPlusSideGrounds).
    double L_side = 1.5e-6;

    double electrode_thickness = 0.2e-6;
    double drive_width = 0.0;   //!< <= 0 means W
    double ground_width = 0.0;  //!< bottom plate width, <= 0 means W

    /// Uniformly meshed clearance around the electrodes and ridge.
    double device_margin = 1.0e-6;
    /// Distance from the device box to the Neumann wall; <= 0 selects five
    /// times the largest device-box dimension.
    double padding = 0.0;
    /// Controls how many stretched cells fill the padding: res * this.
    double stretch_length = 2.0e-6;

    /// Optional silicon substrate filling everything below this depth
    /// under the lowest electrode.
    bool include_substrate = false;
    double substrate_offset = 3.0e-6;

    Permittivities eps;

    double effective_drive_width() const { return drive_width > 0 ? drive_width : W; }
    double effective_ground_width() const { return ground_width > 0 ? ground_width : W; }
};

/// Throws InvalidArgument for non-positive lengths or permittivities < 1.
void validate(CrossSection const& xs);

struct Grid2D
{
    int nx = 0;  //!< node counts
    int ny = 0;
    std::vector<double> x;   //!< node coordinates, size nx
    std::vector<double> y;   //!< size ny
    std::vector<double> dx;  //!< cell widths, size nx-1
    std::vector<double> dy;  //!< size ny-1

    std::vector<Region> region;           //!< per cell, (nx-1)*(ny-1)
    std::vector<std::uint8_t> dirichlet;  //!< per node, 0 = free
    std::vector<double> fixed_value;      //!< per node, V (used when dirichlet)
    /// Per node: 1 for nodes held at the drive potential.
    std::vector<std::uint8_t> drive_node;

    /// Per-cell relative permittivity along x and y.
    std::vector<double> eps_x;
    std::vector<double> eps_y;

    double drive_voltage = 1.0;
    /// Point where the solver samples e_mz_center (the ridge centre).
    double probe_x = 0.0;
    double probe_y = 0.0;

    int cell_count() const { return (nx - 1) * (ny - 1); }
    int node(int i, int j) const { return j * nx + i; }
    int cell(int i, int j) const { return j * (nx - 1) + i; }

    /// Number of cells spanned by [a, b] along an axis (mesh lines are
    /// placed on every feature boundary).
    int cells_between_x(double a, double b) const;
    int cells_between_y(double a, double b) const;
};

/// Uniform rectangular grid over [0, width] x [0, height], all SiO2, no
/// electrodes. Callers mark Dirichlet nodes and permittivities themselves;
/// used for closed-form sanity problems.
Grid2D make_rect_grid(double width, double height, int cells_x, int cells_y);

/// Fill eps_x / eps_y from `region`.
void assign_permittivities(Grid2D& grid, Permittivities const& eps);

/// Mesh a cross-section at `resolution` cells per micron inside the device
/// box. The drive electrode is held at `drive_voltage`, grounds at 0 V.
/// Throws FeatureUnderResolvedError when any dielectric feature spans fewer
/// than three cells.
Grid2D build_grid(CrossSection const& xs, double resolution,
                  double drive_voltage = 1.0);

enum class Preconditioner
{
    Jacobi,
    ModifiedIncompleteCholesky,
};

struct SolverOptions
{
    double tolerance = 1e-8;  //!< relative residual ||b - A phi|| / ||b||
    int max_iterations = 200000;
    Preconditioner preconditioner = Preconditioner::ModifiedIncompleteCholesky;
};

struct FieldSolution
{
    Grid2D grid;
    std::vector<double> potential;  //!< per node, V
    std::vector<double> ex;         //!< per cell centre, V/m
    std::vector<double> ey;
    double e_mz_center = 0.0;  //!< vertical field at the ridge centre, V/m
    double capacitance_per_length = 0.0;  //!< F/m
    double energy_per_length = 0.0;       //!< J/m
    double drive_charge_per_length = 0.0;  //!< C/m, from the discrete flux
    double residual = 0.0;
    int iterations = 0;
    std::vector<double> residual_history;

    /// Bilinear interpolation of the cell-centred field at (x, y).
    double ex_at(double x, double y) const;
    double ey_at(double x, double y) const;
};

/// Solve the Laplace problem on `grid`. Throws SolverFailure (with the
/// residual history) if `tolerance` is not reached in `max_iterations`.
FieldSolution solve(Grid2D grid, SolverOptions const& opts = {});

/// Vertical field at the geometric centre of the LN ridge.
double e_mz_at_center(FieldSolution const& sol, CrossSection const& xs);

/// Convenience: build_grid + solve + centre sampling.
FieldSolution solve_cross_section(CrossSection const& xs, double resolution,
                                  SolverOptions const& opts = {},
                                  double drive_voltage = 1.0);

/// C = (C / length) * electrode_length.
double electrode_capacitance(FieldSolution const& sol, double electrode_length);

/// Debug dump: one row per cell centre with x_m, y_m, phi_v, ex_v_per_m,
/// ey_v_per_m.
void write_field_csv(std::ostream& out, FieldSolution const& sol);

/// Residual of the discretised operator at every free node, scaled so a
/// converged solution returns values of order the solver tolerance.
std::vector<double> node_flux_imbalance(FieldSolution const& sol);

/// Net flux (C/m) leaving the node set bounded by node indices
/// [i0, i1] x [j0, j1].
double enclosed_charge(FieldSolution const& sol, int i0, int i1, int j0, int j1);

}  // namespace eotx::electrostatics
