// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/constants.hpp"
#include "eotx/electrostatics.hpp"
#include "eotx/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace eotx::electrostatics {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Rect
{
    double x0, x1, y0, y1;
    bool contains(double x, double y) const
    {
        return x > x0 && x < x1 && y > y0 && y < y1;
    }
};

struct Electrode
{
    Rect rect;
    bool drive;
};

struct Layout
{
    Rect ridge;
    std::vector<Electrode> electrodes;
    std::vector<double> xbreaks;
    std::vector<double> ybreaks;
    Rect box;  // uniformly meshed device box
    double padding;
    std::vector<std::pair<std::string, double>> features;
    double substrate_top = -kInf;
};

// Solve beta / (exp(beta) - 1) = q for beta >= 0, 0 < q < 1.
double stretch_exponent(double q)
{
    double lo = 0.0;
    double hi = 1.0;
    auto f = [](double b) { return b / std::expm1(b); };
    while (f(hi) > q)
        hi *= 2.0;
    for (int it = 0; it < 200; ++it)
    {
        double mid = 0.5 * (lo + hi);
        (f(mid) > q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Cell boundaries for the padding interval [0, pad], first cell next to 0.
// Uses x = pad * expm1(beta xi) / expm1(beta) on a uniform xi grid so that
// doubling `cells` gives a nested refinement.
std::vector<double> stretched_offsets(double pad, int cells, double first_cell)
{
    std::vector<double> out(cells + 1);
    double const q = cells * first_cell / pad;
    if (q >= 1.0)
    {
        for (int k = 0; k <= cells; ++k)
            out[k] = pad * k / cells;
        return out;
    }
    double const beta = stretch_exponent(q);
    for (int k = 0; k <= cells; ++k)
        out[k] = pad * std::expm1(beta * k / cells) / std::expm1(beta);
    out[cells] = pad;
    return out;
}

std::vector<double> unique_sorted(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double b : v)
    {
        if (out.empty() || b - out.back() > 1e-12)
            out.push_back(b);
    }
    return out;
}

std::vector<double> build_axis(std::vector<double> breaks, double pad,
                               double cells_per_m, double stretch_length)
{
    breaks = unique_sorted(std::move(breaks));
    double const h = 1.0 / cells_per_m;
    int const pad_cells = std::max(2, static_cast<int>(std::lround(stretch_length * cells_per_m)));
    auto const offsets = stretched_offsets(pad, pad_cells, h);

    std::vector<double> axis;
    for (int k = pad_cells; k > 0; --k)
        axis.push_back(breaks.front() - offsets[k]);
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b)
    {
        double const len = breaks[b + 1] - breaks[b];
        int const n = std::max(1, static_cast<int>(std::lround(len * cells_per_m)));
        for (int k = 0; k < n; ++k)
            axis.push_back(breaks[b] + len * k / n);
    }
    axis.push_back(breaks.back());
    for (int k = 1; k <= pad_cells; ++k)
        axis.push_back(breaks.back() + offsets[k]);
    return axis;
}

Layout make_layout(CrossSection const& xs)
{
    Layout lay;
    double const t = xs.electrode_thickness;
    double const hw = 0.5 * xs.W;
    lay.ridge = {-hw, hw, 0.0, xs.H};

    double const dw = 0.5 * xs.effective_drive_width();
    double const top0 = xs.H + xs.S1;
    lay.electrodes.push_back({{-dw, dw, top0, top0 + t}, true});

    lay.features = {{"W", xs.W}, {"H", xs.H}, {"S1", xs.S1},
                    {"drive_width", xs.effective_drive_width()}};

    double x_half = std::max(hw, dw);
    double y_low = 0.0;
    lay.xbreaks = {-hw, hw, -dw, dw};
    lay.ybreaks = {0.0, xs.H, top0, top0 + t};

    if (xs.config == ElectrodeConfig::ParallelPlates)
    {
        double const gw = 0.5 * xs.effective_ground_width();
        double const bot1 = -xs.S2;
        lay.electrodes.push_back({{-gw, gw, bot1 - t, bot1}, false});
        lay.features.emplace_back("S2", xs.S2);
        lay.features.emplace_back("ground_width", xs.effective_ground_width());
        lay.xbreaks.insert(lay.xbreaks.end(), {-gw, gw});
        lay.ybreaks.insert(lay.ybreaks.end(), {bot1 - t, bot1});
        x_half = std::max(x_half, gw);
        y_low = bot1 - t;
    }
    else
    {
        double const inner = hw + xs.G;
        double const gtop = -xs.L_side;
        lay.electrodes.push_back({{inner, kInf, gtop - t, gtop}, false});
        lay.electrodes.push_back({{-kInf, -inner, gtop - t, gtop}, false});
        lay.features.emplace_back("G", xs.G);
        lay.features.emplace_back("L_side", xs.L_side);
        lay.xbreaks.insert(lay.xbreaks.end(), {-inner, inner});
        lay.ybreaks.insert(lay.ybreaks.end(), {gtop - t, gtop});
        x_half = std::max(x_half, inner);
        y_low = gtop - t;
    }
    double const y_high = top0 + t;

    if (xs.include_substrate)
    {
        lay.substrate_top = y_low - xs.substrate_offset;
        lay.ybreaks.push_back(lay.substrate_top);
        lay.features.emplace_back("substrate_offset", xs.substrate_offset);
        y_low = lay.substrate_top;
    }

    double const m = xs.device_margin;
    lay.box = {-x_half - m, x_half + m, y_low - m, y_high + m};
    lay.features.emplace_back("device_margin", m);
    lay.xbreaks.insert(lay.xbreaks.end(), {lay.box.x0, lay.box.x1});
    lay.ybreaks.insert(lay.ybreaks.end(), {lay.box.y0, lay.box.y1});

    double const largest = std::max(2.0 * x_half, y_high - y_low);
    lay.padding = xs.padding > 0.0 ? xs.padding : 5.0 * largest;
    return lay;
}

int count_cells(std::vector<double> const& axis, double a, double b)
{
    auto idx = [&](double v) {
        auto it = std::lower_bound(axis.begin(), axis.end(), v - 1e-12);
        return static_cast<int>(it - axis.begin());
    };
    return idx(b) - idx(a);
}

}  // namespace

void validate(CrossSection const& xs)
{
    auto positive = [](double v, char const* name) {
        if (!(v > 0.0))
            throw InvalidArgument(fmt::format("cross-section {} must be positive (got {})", name, v));
    };
    positive(xs.W, "W");
    positive(xs.H, "H");
    positive(xs.S1, "S1");
    positive(xs.S2, "S2");
    positive(xs.G, "G");
    positive(xs.L_side, "L_side");
    positive(xs.electrode_thickness, "electrode_thickness");
    positive(xs.device_margin, "device_margin");
    positive(xs.stretch_length, "stretch_length");
    if (xs.include_substrate)
        positive(xs.substrate_offset, "substrate_offset");
    for (auto [v, name] : {std::pair{xs.eps.ln_z, "ln_z"}, {xs.eps.ln_xy, "ln_xy"},
                           {xs.eps.sio2, "sio2"}, {xs.eps.si, "si"}})
    {
        if (!(v >= 1.0))
            throw InvalidArgument(fmt::format("relative permittivity {} must be >= 1 (got {})", name, v));
    }
}

int Grid2D::cells_between_x(double a, double b) const { return count_cells(x, a, b); }
int Grid2D::cells_between_y(double a, double b) const { return count_cells(y, a, b); }

void assign_permittivities(Grid2D& grid, Permittivities const& eps)
{
    auto const n = static_cast<std::size_t>(grid.cell_count());
    grid.eps_x.assign(n, 1.0);
    grid.eps_y.assign(n, 1.0);
    for (std::size_t c = 0; c < n; ++c)
    {
        switch (grid.region[c])
        {
            case Region::SiO2:
                grid.eps_x[c] = grid.eps_y[c] = eps.sio2;
                break;
            case Region::LN:
                grid.eps_x[c] = eps.ln_xy;
                grid.eps_y[c] = eps.ln_z;
                break;
            case Region::Si:
                grid.eps_x[c] = grid.eps_y[c] = eps.si;
                break;
            case Region::Electrode:
                break;
        }
    }
}

Grid2D make_rect_grid(double width, double height, int cells_x, int cells_y)
{
    if (cells_x < 2 || cells_y < 2 || !(width > 0.0) || !(height > 0.0))
        throw InvalidArgument("rectangular grid needs positive size and >= 2 cells per axis");
    Grid2D g;
    g.nx = cells_x + 1;
    g.ny = cells_y + 1;
    for (int i = 0; i < g.nx; ++i)
        g.x.push_back(width * i / cells_x);
    for (int j = 0; j < g.ny; ++j)
        g.y.push_back(height * j / cells_y);
    g.dx.assign(cells_x, width / cells_x);
    g.dy.assign(cells_y, height / cells_y);
    auto const nodes = static_cast<std::size_t>(g.nx) * g.ny;
    g.region.assign(static_cast<std::size_t>(g.cell_count()), Region::SiO2);
    g.dirichlet.assign(nodes, 0);
    g.fixed_value.assign(nodes, 0.0);
    g.drive_node.assign(nodes, 0);
    g.probe_x = 0.5 * width;
    g.probe_y = 0.5 * height;
    assign_permittivities(g, Permittivities{});
    return g;
}

Grid2D build_grid(CrossSection const& xs, double resolution, double drive_voltage)
{
    validate(xs);
    if (!(resolution > 0.0))
        throw InvalidArgument("mesh resolution must be positive");

    Layout const lay = make_layout(xs);
    for (auto const& [name, len] : lay.features)
    {
        double const cells = len * resolution / kMicron;
        if (cells < 3.0 - 1e-9)
            throw FeatureUnderResolvedError(name, cells);
    }

    double const cells_per_m = resolution / kMicron;
    Grid2D g;
    g.x = build_axis(lay.xbreaks, lay.padding, cells_per_m, xs.stretch_length);
    g.y = build_axis(lay.ybreaks, lay.padding, cells_per_m, xs.stretch_length);
    g.nx = static_cast<int>(g.x.size());
    g.ny = static_cast<int>(g.y.size());
    for (int i = 0; i + 1 < g.nx; ++i)
        g.dx.push_back(g.x[i + 1] - g.x[i]);
    for (int j = 0; j + 1 < g.ny; ++j)
        g.dy.push_back(g.y[j + 1] - g.y[j]);

    g.drive_voltage = drive_voltage;
    g.probe_x = 0.0;
    g.probe_y = 0.5 * xs.H;

    auto const nodes = static_cast<std::size_t>(g.nx) * g.ny;
    g.region.assign(static_cast<std::size_t>(g.cell_count()), Region::SiO2);
    g.dirichlet.assign(nodes, 0);
    g.fixed_value.assign(nodes, 0.0);
    g.drive_node.assign(nodes, 0);

    for (int j = 0; j + 1 < g.ny; ++j)
    {
        double const yc = 0.5 * (g.y[j] + g.y[j + 1]);
        for (int i = 0; i + 1 < g.nx; ++i)
        {
            double const xc = 0.5 * (g.x[i] + g.x[i + 1]);
            Region r = Region::SiO2;
            if (lay.ridge.contains(xc, yc))
                r = Region::LN;
            else if (yc < lay.substrate_top)
                r = Region::Si;
            for (auto const& e : lay.electrodes)
            {
                if (!e.rect.contains(xc, yc))
                    continue;
                r = Region::Electrode;
                for (int n : {g.node(i, j), g.node(i + 1, j), g.node(i, j + 1), g.node(i + 1, j + 1)})
                {
                    g.dirichlet[n] = 1;
                    g.fixed_value[n] = e.drive ? drive_voltage : 0.0;
                    g.drive_node[n] = e.drive ? 1 : 0;
                }
            }
            g.region[g.cell(i, j)] = r;
        }
    }
    assign_permittivities(g, xs.eps);
    return g;
}

}  // namespace eotx::electrostatics
