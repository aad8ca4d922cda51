#include "router/figures.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "router/bound_states.hpp"
#include "router/errors.hpp"
#include "router/scattering.hpp"
#include "router/svg.hpp"

namespace router
{

namespace
{

std::string format_full(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SystemParams fig2_params(double delta_b)
{
    SystemParams p;
    p.xi_a = p.xi_b = 1.0;
    p.delta_a = 0.0;
    p.delta_b = delta_b;
    p.g_a = p.g_b = 0.5;
    p.omega = 1.0;
    return p;
}

SystemParams fig3_params(double g_b, double omega)
{
    SystemParams p;
    p.xi_a = p.xi_b = 1.0;
    p.delta_a = p.delta_b = 0.0;
    p.g_a = 0.5;
    p.g_b = g_b;
    p.omega = omega;
    return p;
}

std::vector<FigureSpec> build_figure_table()
{
    std::vector<FigureSpec> figures;
    figures.push_back({"fig2a", FigureKind::EnergySweep, {{"", fig2_params(4.5)}}});
    figures.push_back({"fig2b", FigureKind::EnergySweep, {{"", fig2_params(0.0)}}});
    figures.push_back({"fig2c", FigureKind::EnergySweep, {{"", fig2_params(2.0)}}});
    figures.push_back({"fig3a",
                       FigureKind::MultiSeriesSweep,
                       {{"omega0", fig3_params(0.5, 0.0)}, {"gb0", fig3_params(0.0, 1.0)}}});
    figures.push_back({"fig3b",
                       FigureKind::MultiSeriesSweep,
                       {{"gb0.5", fig3_params(0.5, 1.2)}, {"gb0.8", fig3_params(0.8, 1.2)}}});
    figures.push_back({"fig3c",
                       FigureKind::MultiSeriesSweep,
                       {{"gb0.5", fig3_params(0.5, 1.2)}, {"gb0.2", fig3_params(0.2, 1.2)}}});
    // The panel-d drive strength is not spelled out; it reuses the 1.2 of the
    // neighbouring panels.
    figures.push_back({"fig3d", FigureKind::CouplingGrid, {{"", fig3_params(0.5, 1.2)}}});
    figures.push_back({"fig4b", FigureKind::BoundWavefunction, {{"", fig2_params(4.5)}}});
    return figures;
}

void write_sweep_svg(const std::string &path, const std::string &title,
                     const std::vector<std::pair<std::string, SweepTable>> &tables)
{
    std::vector<SvgSeries> series;
    for (const auto &[label, table] : tables)
    {
        const std::string prefix = label.empty() ? std::string() : label + " ";
        SvgSeries t_a{prefix + "T_a", {}, {}};
        SvgSeries r_a{prefix + "R_a", {}, {}};
        SvgSeries two_t_b{prefix + "2T_b", {}, {}};
        for (const SweepRow &row : table.rows)
        {
            t_a.x.push_back(row.energy);
            t_a.y.push_back(row.T_a);
            r_a.x.push_back(row.energy);
            r_a.y.push_back(row.R_a);
            two_t_b.x.push_back(row.energy);
            two_t_b.y.push_back(row.two_T_b);
        }
        series.push_back(std::move(t_a));
        series.push_back(std::move(r_a));
        series.push_back(std::move(two_t_b));
    }
    write_svg_chart(path, title, "E", series);
}

std::string svg_path_for(const std::string &csv_path)
{
    std::filesystem::path p(csv_path);
    p.replace_extension(".svg");
    return p.string();
}

std::ofstream open_output(const std::string &path)
{
    std::ofstream out(path);
    if (!out)
    {
        throw Error("cannot open output file: " + path);
    }
    return out;
}

} // namespace

const std::vector<FigureSpec> &figure_table()
{
    static const std::vector<FigureSpec> table = build_figure_table();
    return table;
}

const FigureSpec &figure_spec(const std::string &id)
{
    for (const FigureSpec &spec : figure_table())
    {
        if (spec.id == id)
        {
            return spec;
        }
    }
    throw UsageError("unknown figure id '" + id + "'");
}

std::vector<double> figure_energy_grid(const SystemParams &p)
{
    constexpr int kPoints = 1001;
    constexpr double kEdgeOffset = 1e-6;
    const double lo = p.delta_a - 2.0 * p.xi_a + kEdgeOffset;
    const double hi = p.delta_a + 2.0 * p.xi_a - kEdgeOffset;
    std::vector<double> grid(kPoints);
    for (int i = 0; i < kPoints; ++i)
    {
        grid[i] = lo + (hi - lo) * i / (kPoints - 1);
    }
    return grid;
}

void reproduce_figure(const std::string &id, const std::string &csv_path, bool with_svg)
{
    const FigureSpec &spec = figure_spec(id);
    switch (spec.kind)
    {
    case FigureKind::EnergySweep:
    {
        const SystemParams &p = spec.series.front().params;
        const SweepTable table = sweep(p, figure_energy_grid(p));
        auto out = open_output(csv_path);
        write_sweep_csv(out, table);
        if (with_svg)
        {
            write_sweep_svg(svg_path_for(csv_path), spec.id, {{"", table}});
        }
        break;
    }
    case FigureKind::MultiSeriesSweep:
    {
        std::vector<std::pair<std::string, SweepTable>> tables;
        for (const FigureSeries &series : spec.series)
        {
            tables.emplace_back(series.label, sweep(series.params, figure_energy_grid(series.params)));
        }
        auto out = open_output(csv_path);
        out << "series,E,T_a,R_a,T_b,two_T_b,conservation,regime,flags\n";
        for (const auto &[label, table] : tables)
        {
            for (const SweepRow &row : table.rows)
            {
                out << label << ',' << format_full(row.energy) << ',' << format_full(row.T_a)
                    << ',' << format_full(row.R_a) << ',' << format_full(row.T_b) << ','
                    << format_full(row.two_T_b) << ',' << format_full(row.conservation) << ','
                    << regime_name(row.regime) << ',' << row.flags << '\n';
            }
        }
        if (with_svg)
        {
            write_sweep_svg(svg_path_for(csv_path), spec.id, tables);
        }
        break;
    }
    case FigureKind::CouplingGrid:
    {
        // T_b - T_a at the dressed-state energy E = omega over the coupling
        // plane; the diagonal g_a = g_b vanishes identically.
        constexpr int kPoints = 39;
        constexpr double kLo = 0.05;
        constexpr double kHi = 1.0;
        SystemParams p = spec.series.front().params;
        auto out = open_output(csv_path);
        out << "g_a,g_b,T_a,T_b,T_b_minus_T_a\n";
        for (int i = 0; i < kPoints; ++i)
        {
            p.g_a = kLo + (kHi - kLo) * i / (kPoints - 1);
            for (int j = 0; j < kPoints; ++j)
            {
                p.g_b = kLo + (kHi - kLo) * j / (kPoints - 1);
                const ScatteringSolution sol = scatter(p, p.omega);
                out << format_full(p.g_a) << ',' << format_full(p.g_b) << ','
                    << format_full(sol.T_a) << ',' << format_full(sol.T_b) << ','
                    << format_full(sol.T_b - sol.T_a) << '\n';
            }
        }
        break;
    }
    case FigureKind::BoundWavefunction:
    {
        // Lowest n_b = 0 bound state of the decoupled b-side problem.
        constexpr int kJMax = 15;
        SystemParams p = spec.series.front().params;
        p.g_a = 0.0;
        const std::vector<BoundState> states = find_bound_states(p);
        const BoundState *lowest = nullptr;
        for (const BoundState &s : states)
        {
            if (s.parity == 0 && (lowest == nullptr || s.energy < lowest->energy))
            {
                lowest = &s;
            }
        }
        if (lowest == nullptr)
        {
            throw Error("no n_b = 0 bound state found for " + spec.id);
        }
        const auto wavefunction = bound_wavefunction(*lowest, kJMax);
        auto out = open_output(csv_path);
        write_wavefunction_csv(out, wavefunction);
        if (with_svg)
        {
            SvgSeries series{"B_j", {}, {}};
            for (const auto &[j, value] : wavefunction)
            {
                series.x.push_back(j);
                series.y.push_back(value);
            }
            write_svg_chart(svg_path_for(csv_path), spec.id, "j", {series});
        }
        break;
    }
    }
}

} // namespace router
