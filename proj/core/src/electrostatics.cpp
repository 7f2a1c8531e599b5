// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/electrostatics.hpp"

#include "eotx/constants.hpp"
#include "eotx/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

namespace eotx::electrostatics {
namespace {

// Edge conductances of the node-centred finite-volume stencil, without eps0.
// The control volume around an x-edge is flanked by the cell below and the
// cell above; each contributes eps_x * (half its height) / dx.
struct Stencil
{
    int nx = 0;
    int ny = 0;
    std::vector<double> wx;  // edge (i,j)-(i+1,j) at j*nx + i
    std::vector<double> wy;  // edge (i,j)-(i,j+1) at j*nx + i
    std::vector<double> diag;

    explicit Stencil(Grid2D const& g) : nx(g.nx), ny(g.ny)
    {
        std::size_t const n = static_cast<std::size_t>(nx) * ny;
        wx.assign(n, 0.0);
        wy.assign(n, 0.0);
        diag.assign(n, 0.0);
        for (int j = 0; j < ny; ++j)
        {
            for (int i = 0; i + 1 < nx; ++i)
            {
                double w = 0.0;
                if (j > 0)
                    w += g.eps_x[g.cell(i, j - 1)] * 0.5 * g.dy[j - 1];
                if (j + 1 < ny)
                    w += g.eps_x[g.cell(i, j)] * 0.5 * g.dy[j];
                wx[j * nx + i] = w / g.dx[i];
            }
        }
        for (int j = 0; j + 1 < ny; ++j)
        {
            for (int i = 0; i < nx; ++i)
            {
                double w = 0.0;
                if (i > 0)
                    w += g.eps_y[g.cell(i - 1, j)] * 0.5 * g.dx[i - 1];
                if (i + 1 < nx)
                    w += g.eps_y[g.cell(i, j)] * 0.5 * g.dx[i];
                wy[j * nx + i] = w / g.dy[j];
            }
        }
        for (int j = 0; j < ny; ++j)
        {
            for (int i = 0; i < nx; ++i)
            {
                int const n = j * nx + i;
                double d = 0.0;
                if (i + 1 < nx)
                    d += wx[n];
                if (i > 0)
                    d += wx[n - 1];
                if (j + 1 < ny)
                    d += wy[n];
                if (j > 0)
                    d += wy[n - nx];
                diag[n] = d;
            }
        }
    }

    // out = A p over all nodes (graph Laplacian with edge weights).
    void apply(std::vector<double> const& p, std::vector<double>& out) const
    {
        for (int j = 0; j < ny; ++j)
        {
            int const row = j * nx;
            for (int i = 0; i < nx; ++i)
            {
                int const n = row + i;
                double s = diag[n] * p[n];
                if (i + 1 < nx)
                    s -= wx[n] * p[n + 1];
                if (i > 0)
                    s -= wx[n - 1] * p[n - 1];
                if (j + 1 < ny)
                    s -= wy[n] * p[n + nx];
                if (j > 0)
                    s -= wy[n - nx] * p[n - nx];
                out[n] = s;
            }
        }
    }
};

double dot(std::vector<double> const& a, std::vector<double> const& b)
{
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k] * b[k];
    return s;
}

// Modified incomplete Cholesky, MIC(0), of the free-node block in natural
// ordering. Couplings to Dirichlet nodes are dropped from the factor.
class MicPreconditioner
{
  public:
    MicPreconditioner(Stencil const& st, std::vector<std::uint8_t> const& fixed)
        : nx_(st.nx), ny_(st.ny), st_(st), fixed_(fixed), inv_sqrt_(fixed.size(), 0.0)
    {
        constexpr double tau = 0.97;
        constexpr double sigma = 0.25;
        for (int j = 0; j < ny_; ++j)
        {
            for (int i = 0; i < nx_; ++i)
            {
                int const n = j * nx_ + i;
                if (fixed_[n])
                    continue;
                double e = st_.diag[n];
                if (i > 0 && !fixed_[n - 1])
                {
                    double const a = st_.wx[n - 1] * inv_sqrt_[n - 1];
                    double const cross = (j + 1 < ny_ && !fixed_[n - 1 + nx_]) ? st_.wy[n - 1] : 0.0;
                    e -= a * a + tau * st_.wx[n - 1] * cross * inv_sqrt_[n - 1] * inv_sqrt_[n - 1];
                }
                if (j > 0 && !fixed_[n - nx_])
                {
                    double const a = st_.wy[n - nx_] * inv_sqrt_[n - nx_];
                    double const cross = (i + 1 < nx_ && !fixed_[n - nx_ + 1]) ? st_.wx[n - nx_] : 0.0;
                    e -= a * a + tau * st_.wy[n - nx_] * cross * inv_sqrt_[n - nx_] * inv_sqrt_[n - nx_];
                }
                if (e < sigma * st_.diag[n])
                    e = st_.diag[n];
                inv_sqrt_[n] = 1.0 / std::sqrt(e);
            }
        }
    }

    // z = M^{-1} r, with z zero on Dirichlet nodes.
    void apply(std::vector<double> const& r, std::vector<double>& z) const
    {
        // Forward: L q = r.
        for (int j = 0; j < ny_; ++j)
        {
            for (int i = 0; i < nx_; ++i)
            {
                int const n = j * nx_ + i;
                if (fixed_[n])
                {
                    z[n] = 0.0;
                    continue;
                }
                double t = r[n];
                if (i > 0)
                    t += st_.wx[n - 1] * inv_sqrt_[n - 1] * z[n - 1];
                if (j > 0)
                    t += st_.wy[n - nx_] * inv_sqrt_[n - nx_] * z[n - nx_];
                z[n] = t * inv_sqrt_[n];
            }
        }
        // Backward: L^T z = q.
        for (int j = ny_ - 1; j >= 0; --j)
        {
            for (int i = nx_ - 1; i >= 0; --i)
            {
                int const n = j * nx_ + i;
                if (fixed_[n])
                    continue;
                double t = z[n];
                if (i + 1 < nx_)
                    t += st_.wx[n] * inv_sqrt_[n] * z[n + 1];
                if (j + 1 < ny_)
                    t += st_.wy[n] * inv_sqrt_[n] * z[n + nx_];
                z[n] = t * inv_sqrt_[n];
            }
        }
    }

  private:
    int nx_;
    int ny_;
    Stencil const& st_;
    std::vector<std::uint8_t> const& fixed_;
    std::vector<double> inv_sqrt_;
};

// Interpolate cell-centred data at (x, y), clamping to the outermost centres.
double interpolate_cells(Grid2D const& g, std::vector<double> const& v, double x, double y)
{
    auto locate = [](std::vector<double> const& nodes, double q, int& k, double& t) {
        int const cells = static_cast<int>(nodes.size()) - 1;
        // Centres c_k = (nodes[k] + nodes[k+1]) / 2.
        auto centre = [&](int c) { return 0.5 * (nodes[c] + nodes[c + 1]); };
        if (q <= centre(0))
        {
            k = 0;
            t = 0.0;
            return;
        }
        if (q >= centre(cells - 1))
        {
            k = cells - 2;
            t = 1.0;
            return;
        }
        int lo = 0;
        int hi = cells - 1;
        while (hi - lo > 1)
        {
            int mid = (lo + hi) / 2;
            (centre(mid) <= q ? lo : hi) = mid;
        }
        k = lo;
        t = (q - centre(lo)) / (centre(lo + 1) - centre(lo));
    };
    int i = 0;
    int j = 0;
    double tx = 0.0;
    double ty = 0.0;
    locate(g.x, x, i, tx);
    locate(g.y, y, j, ty);
    double const v00 = v[g.cell(i, j)];
    double const v10 = v[g.cell(i + 1, j)];
    double const v01 = v[g.cell(i, j + 1)];
    double const v11 = v[g.cell(i + 1, j + 1)];
    return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 + tx * ty * v11;
}

}  // namespace

double FieldSolution::ex_at(double x, double y) const
{
    return interpolate_cells(grid, ex, x, y);
}

double FieldSolution::ey_at(double x, double y) const
{
    return interpolate_cells(grid, ey, x, y);
}

FieldSolution solve(Grid2D grid, SolverOptions const& opts)
{
    if (!(opts.tolerance > 0.0 && opts.tolerance <= 1e-2))
        throw InvalidArgument(fmt::format("solver tolerance must be in (0, 1e-2] (got {})", opts.tolerance));
    if (grid.nx < 3 || grid.ny < 3)
        throw InvalidArgument("grid needs at least 3x3 nodes");
    if (grid.eps_x.size() != static_cast<std::size_t>(grid.cell_count()))
        throw InvalidArgument("grid permittivities not assigned");

    Stencil const st(grid);
    std::size_t const n = static_cast<std::size_t>(grid.nx) * grid.ny;
    auto const& fixed = grid.dirichlet;

    // b = -A_fd phi_d on free nodes.
    std::vector<double> phi_d(n, 0.0);
    bool any_fixed = false;
    for (std::size_t k = 0; k < n; ++k)
    {
        if (fixed[k])
        {
            phi_d[k] = grid.fixed_value[k];
            any_fixed = true;
        }
    }
    if (!any_fixed)
        throw InvalidArgument("grid has no Dirichlet (electrode) nodes");

    std::vector<double> b(n, 0.0);
    st.apply(phi_d, b);
    for (std::size_t k = 0; k < n; ++k)
        b[k] = fixed[k] ? 0.0 : -b[k];

    std::vector<double> inv_diag;
    std::optional<MicPreconditioner> mic;
    if (opts.preconditioner == Preconditioner::Jacobi)
    {
        inv_diag.assign(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            inv_diag[k] = (fixed[k] || st.diag[k] == 0.0) ? 0.0 : 1.0 / st.diag[k];
    }
    else
    {
        mic.emplace(st, fixed);
    }
    auto precondition = [&](std::vector<double> const& in, std::vector<double>& out) {
        if (mic)
            mic->apply(in, out);
        else
            for (std::size_t k = 0; k < n; ++k)
                out[k] = inv_diag[k] * in[k];
    };

    // Preconditioned CG on the free nodes; Dirichlet entries of every work
    // vector stay zero.
    std::vector<double> x(n, 0.0);
    std::vector<double> r = b;
    std::vector<double> z(n);
    std::vector<double> p(n);
    std::vector<double> q(n);
    precondition(r, z);
    p = z;
    double rz = dot(r, z);
    double const bnorm = std::sqrt(dot(b, b));

    FieldSolution sol;
    double rel = bnorm > 0.0 ? std::sqrt(dot(r, r)) / bnorm : 0.0;
    sol.residual_history.push_back(rel);
    int it = 0;
    while (rel > opts.tolerance && it < opts.max_iterations)
    {
        st.apply(p, q);
        for (std::size_t k = 0; k < n; ++k)
        {
            if (fixed[k])
                q[k] = 0.0;
        }
        double const alpha = rz / dot(p, q);
        double rr = 0.0;
        for (std::size_t k = 0; k < n; ++k)
        {
            x[k] += alpha * p[k];
            r[k] -= alpha * q[k];
            rr += r[k] * r[k];
        }
        precondition(r, z);
        double const rz_new = dot(r, z);
        double const beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < n; ++k)
            p[k] = z[k] + beta * p[k];
        ++it;
        rel = std::sqrt(rr) / bnorm;
        sol.residual_history.push_back(rel);
    }

    // Recompute the true residual; the recurrence drifts slightly.
    std::vector<double> phi(n);
    for (std::size_t k = 0; k < n; ++k)
        phi[k] = fixed[k] ? phi_d[k] : x[k];
    st.apply(phi, q);
    double rr = 0.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        if (!fixed[k])
            rr += q[k] * q[k];
    }
    rel = bnorm > 0.0 ? std::sqrt(rr) / bnorm : 0.0;
    if (rel > opts.tolerance)
    {
        throw SolverFailure(
            fmt::format("field solve stalled at relative residual {:.3e} after {} iterations "
                        "(tolerance {:.1e})",
                        rel, it, opts.tolerance),
            std::move(sol.residual_history));
    }
    sol.residual = rel;
    sol.iterations = it;

    // Energy 1/2 sum_e w_e (dphi)^2 and drive-electrode charge sum (A phi).
    double energy = 0.0;
    for (int j = 0; j < grid.ny; ++j)
    {
        for (int i = 0; i < grid.nx; ++i)
        {
            int const k = j * grid.nx + i;
            if (i + 1 < grid.nx)
            {
                double const d = phi[k + 1] - phi[k];
                energy += st.wx[k] * d * d;
            }
            if (j + 1 < grid.ny)
            {
                double const d = phi[k + grid.nx] - phi[k];
                energy += st.wy[k] * d * d;
            }
        }
    }
    sol.energy_per_length = 0.5 * kVacuumPermittivity * energy;
    double charge = 0.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        if (grid.drive_node[k])
            charge += q[k];
    }
    sol.drive_charge_per_length = kVacuumPermittivity * charge;
    double const v = grid.drive_voltage;
    sol.capacitance_per_length = v != 0.0 ? 2.0 * sol.energy_per_length / (v * v) : 0.0;

    // Cell-centre field by central differences of the corner averages.
    std::size_t const cells = static_cast<std::size_t>(grid.cell_count());
    sol.ex.assign(cells, 0.0);
    sol.ey.assign(cells, 0.0);
    for (int j = 0; j + 1 < grid.ny; ++j)
    {
        for (int i = 0; i + 1 < grid.nx; ++i)
        {
            int const a = grid.node(i, j);
            int const b10 = grid.node(i + 1, j);
            int const b01 = grid.node(i, j + 1);
            int const b11 = grid.node(i + 1, j + 1);
            int const c = grid.cell(i, j);
            sol.ex[c] = -((phi[b10] + phi[b11]) - (phi[a] + phi[b01])) / (2.0 * grid.dx[i]);
            sol.ey[c] = -((phi[b01] + phi[b11]) - (phi[a] + phi[b10])) / (2.0 * grid.dy[j]);
        }
    }

    sol.potential = std::move(phi);
    sol.grid = std::move(grid);
    sol.e_mz_center = sol.ey_at(sol.grid.probe_x, sol.grid.probe_y);
    return sol;
}

double e_mz_at_center(FieldSolution const& sol, CrossSection const& xs)
{
    return sol.ey_at(0.0, 0.5 * xs.H);
}

FieldSolution solve_cross_section(CrossSection const& xs, double resolution,
                                  SolverOptions const& opts, double drive_voltage)
{
    FieldSolution sol = solve(build_grid(xs, resolution, drive_voltage), opts);
    sol.e_mz_center = e_mz_at_center(sol, xs);
    return sol;
}

double electrode_capacitance(FieldSolution const& sol, double electrode_length)
{
    if (electrode_length < 0.0)
        throw InvalidArgument("electrode length must be >= 0");
    return sol.capacitance_per_length * electrode_length;
}

void write_field_csv(std::ostream& out, FieldSolution const& sol)
{
    auto const& g = sol.grid;
    out << "x_m,y_m,phi_v,ex_v_per_m,ey_v_per_m\n";
    for (int j = 0; j + 1 < g.ny; ++j)
    {
        for (int i = 0; i + 1 < g.nx; ++i)
        {
            double const phi = 0.25 * (sol.potential[g.node(i, j)] + sol.potential[g.node(i + 1, j)] +
                                        sol.potential[g.node(i, j + 1)] +
                                        sol.potential[g.node(i + 1, j + 1)]);
            int const c = g.cell(i, j);
            out << fmt::format("{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                               0.5 * (g.x[i] + g.x[i + 1]), 0.5 * (g.y[j] + g.y[j + 1]), phi,
                               sol.ex[c], sol.ey[c]);
        }
    }
}

std::vector<double> node_flux_imbalance(FieldSolution const& sol)
{
    Stencil const st(sol.grid);
    std::vector<double> q(sol.potential.size());
    st.apply(sol.potential, q);
    double const scale = std::abs(sol.grid.drive_voltage);
    for (std::size_t k = 0; k < q.size(); ++k)
    {
        q[k] = (sol.grid.dirichlet[k] || st.diag[k] == 0.0) ? 0.0 : q[k] / (st.diag[k] * scale);
    }
    return q;
}

double enclosed_charge(FieldSolution const& sol, int i0, int i1, int j0, int j1)
{
    Stencil const st(sol.grid);
    std::vector<double> q(sol.potential.size());
    st.apply(sol.potential, q);
    double s = 0.0;
    for (int j = std::max(0, j0); j <= std::min(j1, sol.grid.ny - 1); ++j)
    {
        for (int i = std::max(0, i0); i <= std::min(i1, sol.grid.nx - 1); ++i)
            s += q[sol.grid.node(i, j)];
    }
    return kVacuumPermittivity * s;
}

}  // namespace eotx::electrostatics
