#ifndef ROUTER_FIGURES_HPP
#define ROUTER_FIGURES_HPP

#include <string>
#include <vector>

#include "router/params.hpp"

namespace router
{

enum class FigureKind
{
    EnergySweep,       // one sweep over the channel-a band
    MultiSeriesSweep,  // several sweeps stacked with a leading series column
    CouplingGrid,      // T_b - T_a at E = omega over a (g_a, g_b) grid
    BoundWavefunction  // B_j profile of the lowest bound state
};

struct FigureSeries
{
    std::string label;
    SystemParams params;
};

struct FigureSpec
{
    std::string id;
    FigureKind kind = FigureKind::EnergySweep;
    std::vector<FigureSeries> series;
};

const std::vector<FigureSpec> &figure_table();
const FigureSpec &figure_spec(const std::string &id); // throws UsageError

// Writes the figure's data table to csv_path (and a best-effort line chart to
// the same path with .svg substituted when with_svg is set). Sweep figures
// run 1001 energies across the channel-a band with the end points pulled in
// by 1e-6.
void reproduce_figure(const std::string &id, const std::string &csv_path, bool with_svg);

// 1001 points across (delta_a - 2 xi_a, delta_a + 2 xi_a), end points offset
// inward by 1e-6.
std::vector<double> figure_energy_grid(const SystemParams &p);

} // namespace router

#endif // ROUTER_FIGURES_HPP
