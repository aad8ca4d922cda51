#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "router/bound_states.hpp"
#include "router/errors.hpp"
#include "router/figures.hpp"
#include "router/lattice_oracle.hpp"
#include "router/modes.hpp"
#include "router/params.hpp"
#include "router/scattering.hpp"
#include "router/svg.hpp"
#include "router/validate.hpp"
#include "router/wavepacket.hpp"

namespace
{

std::string format_full(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(const std::complex<double> &z)
{
    return format_full(z.real()) + (z.imag() < 0 ? "" : "+") + format_full(z.imag()) + "i";
}

std::vector<double> parse_grid_spec(const std::string &spec)
{
    double lo = 0.0;
    double hi = 0.0;
    long count = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &count, &tail) != 3)
    {
        throw router::UsageError("grid spec must be min:max:count, got '" + spec + "'");
    }
    if (count < 2)
    {
        throw router::UsageError("grid needs at least 2 points");
    }
    if (!(lo < hi))
    {
        throw router::UsageError("grid requires min < max");
    }
    std::vector<double> grid(count);
    for (long i = 0; i < count; ++i)
    {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return grid;
}

std::ofstream open_output(const std::string &path)
{
    std::ofstream out(path);
    if (!out)
    {
        throw router::Error("cannot open output file: " + path);
    }
    return out;
}

const char *mode_kind_name(router::ModeKind kind)
{
    switch (kind)
    {
    case router::ModeKind::Propagating:
        return "propagating";
    case router::ModeKind::Evanescent:
        return "evanescent";
    case router::ModeKind::BandEdge:
        return "band_edge";
    }
    return "unknown";
}

void print_mode(std::ostream &out, const char *label, const router::ModeResolution &mode)
{
    out << label << " = " << mode_kind_name(mode.kind);
    if (mode.kind == router::ModeKind::Propagating)
    {
        out << " k=" << format_full(mode.k) << " v=" << format_full(mode.group_velocity);
    }
    else if (mode.kind == router::ModeKind::Evanescent)
    {
        out << " n=" << mode.parity << " kappa=" << format_full(mode.kappa);
    }
    else
    {
        out << " n=" << mode.parity;
    }
    out << "\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Single-photon router lab: scattering, bound states and wavepacket "
                 "transport for two coupled-resonator waveguides joined by a driven "
                 "three-level atom"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "flat key = value parameter file");
    double xi_a = 1.0, xi_b = 1.0, delta_a = 0.0, delta_b = 0.0, g_a = 0.0, g_b = 0.0,
           omega = 0.0;
    auto *opt_xi_a = app.add_option("--xi-a", xi_a, "hopping rate of waveguide a (energy unit)");
    auto *opt_xi_b = app.add_option("--xi-b", xi_b, "hopping rate of waveguide b");
    auto *opt_delta_a = app.add_option("--delta-a", delta_a, "detuning of waveguide a");
    auto *opt_delta_b = app.add_option("--delta-b", delta_b, "detuning of waveguide b");
    auto *opt_g_a = app.add_option("--g-a", g_a, "atom coupling to cavity a_0");
    auto *opt_g_b = app.add_option("--g-b", g_b, "atom coupling to cavity b_0");
    auto *opt_omega = app.add_option("--omega", omega, "classical Rabi frequency");

    auto *cmd_modes = app.add_subcommand("modes", "classify an energy in both channels");
    double energy = 0.0;
    std::string out_path;
    cmd_modes->add_option("--energy", energy, "photon energy")->required();
    cmd_modes->add_option("-o,--output", out_path, "CSV output path");

    auto *cmd_scatter = app.add_subcommand("scatter", "stationary amplitudes at one energy");
    cmd_scatter->add_option("--energy", energy, "photon energy")->required();
    cmd_scatter->add_option("-o,--output", out_path, "CSV output path");

    auto *cmd_sweep = app.add_subcommand("sweep", "transport coefficients over a grid");
    std::string grid_spec;
    bool with_svg = false;
    cmd_sweep->add_option("--grid", grid_spec, "energy grid min:max:count")->required();
    cmd_sweep->add_option("-o,--output", out_path, "CSV output path");
    cmd_sweep->add_flag("--svg", with_svg, "also write a line chart next to the CSV");

    auto *cmd_bound = app.add_subcommand("bound-states",
                                         "bound states of waveguide b plus the driven atom");
    double span = 0.0;
    double step = 1e-3;
    int wavefunction_index = -1;
    int j_max = 15;
    cmd_bound->add_option("--span", span, "search span beyond each band edge");
    cmd_bound->add_option("--step", step, "scan grid step");
    cmd_bound->add_option("--wavefunction", wavefunction_index,
                          "emit the j,B_j profile of the i-th state instead");
    cmd_bound->add_option("--j-max", j_max, "wavefunction window half-width");
    cmd_bound->add_option("-o,--output", out_path, "CSV output path");

    auto *cmd_packet = app.add_subcommand("wavepacket", "time-domain transport check");
    router::WavepacketConfig packet_cfg;
    packet_cfg.carrier_k = std::numbers::pi / 2.0;
    cmd_packet->add_option("--carrier-k", packet_cfg.carrier_k, "carrier wavenumber in (0, pi)");
    cmd_packet->add_option("--sigma", packet_cfg.sigma, "packet width in sites");
    cmd_packet->add_option("--half-length", packet_cfg.half_length, "chain half length L");
    cmd_packet->add_option("--center", packet_cfg.center, "launch site j0 < 0");
    cmd_packet->add_option("--dt", packet_cfg.dt, "time step (default: drift-targeted)");
    cmd_packet->add_option("--t-end", packet_cfg.t_end, "evolution time (default 0.8 L / v_g)");
    cmd_packet->add_option("--stride", packet_cfg.snapshot_stride, "steps between snapshots");
    cmd_packet->add_option("-o,--output", out_path, "time-series CSV output path");

    auto *cmd_reproduce = app.add_subcommand("reproduce", "write a published-panel data table");
    std::string figure_id;
    cmd_reproduce->add_option("figure", figure_id, "one of fig2a fig2b fig2c fig3a fig3b fig3c fig3d fig4b")
        ->required();
    cmd_reproduce->add_option("-o,--output", out_path, "CSV output path");
    cmd_reproduce->add_flag("--svg", with_svg, "also write a line chart next to the CSV");

    auto *cmd_validate = app.add_subcommand("validate", "randomized cross-checks against the lattice oracle");
    router::ValidationOptions validate_options;
    cmd_validate->add_option("--seed", validate_options.seed, "random seed");
    cmd_validate->add_option("--samples", validate_options.samples, "number of samples");
    cmd_validate->add_option("-o,--output", out_path, "per-sample CSV output path");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        router::SystemParams params;
        if (!config_path.empty())
        {
            params = router::load_params_file(config_path);
        }
        if (opt_xi_a->count() > 0)
        {
            params.xi_a = xi_a;
        }
        if (opt_xi_b->count() > 0)
        {
            params.xi_b = xi_b;
        }
        if (opt_delta_a->count() > 0)
        {
            params.delta_a = delta_a;
        }
        if (opt_delta_b->count() > 0)
        {
            params.delta_b = delta_b;
        }
        if (opt_g_a->count() > 0)
        {
            params.g_a = g_a;
        }
        if (opt_g_b->count() > 0)
        {
            params.g_b = g_b;
        }
        if (opt_omega->count() > 0)
        {
            params.omega = omega;
        }
        router::check_params(params);

        if (cmd_modes->parsed())
        {
            const auto mode_a = router::resolve_mode(router::Channel::A, energy, params);
            const auto mode_b = router::resolve_mode(router::Channel::B, energy, params);
            if (!out_path.empty())
            {
                auto out = open_output(out_path);
                out << "channel,kind,k_re,k_im,group_velocity\n";
                for (const auto &[name, mode] : {std::pair{"a", mode_a}, std::pair{"b", mode_b}})
                {
                    out << name << ',' << mode_kind_name(mode.kind) << ','
                        << format_full(mode.complex_wavenumber.real()) << ','
                        << format_full(mode.complex_wavenumber.imag()) << ','
                        << format_full(mode.group_velocity) << '\n';
                }
            }
            std::cout << "E = " << format_full(energy) << "\n";
            print_mode(std::cout, "mode_a", mode_a);
            print_mode(std::cout, "mode_b", mode_b);
        }
        else if (cmd_scatter->parsed())
        {
            const auto sol = router::scatter(params, energy);
            const auto check = router::conservation_check(sol, params);
            if (!out_path.empty())
            {
                auto out = open_output(out_path);
                out << "E,re_t_a,im_t_a,re_r_a,im_r_a,re_t_b,im_t_b,re_u_e,im_u_e,"
                       "re_u_f,im_u_f,T_a,R_a,T_b,conservation,regime\n";
                out << format_full(sol.energy) << ',' << format_full(sol.t_a.real()) << ','
                    << format_full(sol.t_a.imag()) << ',' << format_full(sol.r_a.real()) << ','
                    << format_full(sol.r_a.imag()) << ',' << format_full(sol.t_b.real()) << ','
                    << format_full(sol.t_b.imag()) << ',' << format_full(sol.u_e.real()) << ','
                    << format_full(sol.u_e.imag()) << ',' << format_full(sol.u_f.real()) << ','
                    << format_full(sol.u_f.imag()) << ',' << format_full(sol.T_a) << ','
                    << format_full(sol.R_a) << ',' << format_full(sol.T_b) << ','
                    << format_full(check.sum) << ',' << router::regime_name(sol.regime) << '\n';
            }
            std::cout << "E = " << format_full(sol.energy) << "\n";
            print_mode(std::cout, "mode_a", sol.mode_a);
            print_mode(std::cout, "mode_b", sol.mode_b);
            std::cout << "t_a = " << format_complex(sol.t_a) << "\n";
            std::cout << "r_a = " << format_complex(sol.r_a) << "\n";
            std::cout << "t_b = " << format_complex(sol.t_b) << "\n";
            std::cout << "u_e = " << format_complex(sol.u_e) << "\n";
            std::cout << "u_f = " << format_complex(sol.u_f) << "\n";
            std::cout << "T_a = " << format_full(sol.T_a) << "\n";
            std::cout << "R_a = " << format_full(sol.R_a) << "\n";
            std::cout << "T_b = " << format_full(sol.T_b) << "\n";
            std::cout << "regime = " << router::regime_name(sol.regime) << "\n";
            std::cout << "conservation = " << format_full(check.sum) << "\n";
            if (sol.regime == router::Regime::BOnlyClosed)
            {
                std::cout << "note: T_b is a localized amplitude, not a flux\n";
            }
        }
        else if (cmd_sweep->parsed())
        {
            const auto grid = parse_grid_spec(grid_spec);
            const auto table = router::sweep(params, grid);
            if (out_path.empty())
            {
                router::write_sweep_csv(std::cout, table);
            }
            else
            {
                auto out = open_output(out_path);
                router::write_sweep_csv(out, table);
                if (with_svg)
                {
                    std::vector<router::SvgSeries> series(3);
                    series[0].name = "T_a";
                    series[1].name = "R_a";
                    series[2].name = "2T_b";
                    for (const auto &row : table.rows)
                    {
                        series[0].x.push_back(row.energy);
                        series[0].y.push_back(row.T_a);
                        series[1].x.push_back(row.energy);
                        series[1].y.push_back(row.R_a);
                        series[2].x.push_back(row.energy);
                        series[2].y.push_back(row.two_T_b);
                    }
                    std::string svg_path = out_path;
                    const auto dot = svg_path.find_last_of('.');
                    svg_path = (dot == std::string::npos ? svg_path : svg_path.substr(0, dot)) + ".svg";
                    router::write_svg_chart(svg_path, "sweep", "E", series);
                }
            }
        }
        else if (cmd_bound->parsed())
        {
            const auto scan = router::scan_bound_states(params, span, step);
            for (const auto &warning : scan.warnings)
            {
                std::cerr << "warning: " << warning << "\n";
            }
            if (wavefunction_index >= 0)
            {
                if (wavefunction_index >= static_cast<int>(scan.states.size()))
                {
                    throw router::UsageError("wavefunction index out of range: found " +
                                             std::to_string(scan.states.size()) + " states");
                }
                const auto wavefunction =
                    router::bound_wavefunction(scan.states[wavefunction_index], j_max);
                if (out_path.empty())
                {
                    router::write_wavefunction_csv(std::cout, wavefunction);
                }
                else
                {
                    auto out = open_output(out_path);
                    router::write_wavefunction_csv(out, wavefunction);
                }
            }
            else if (out_path.empty())
            {
                router::write_bound_states_csv(std::cout, scan.states);
            }
            else
            {
                auto out = open_output(out_path);
                router::write_bound_states_csv(out, scan.states);
            }
        }
        else if (cmd_packet->parsed())
        {
            const auto record = router::evolve(params, packet_cfg);
            if (!out_path.empty())
            {
                auto out = open_output(out_path);
                router::write_transport_csv(out, record);
            }
            const auto split = router::stationary_split(params, packet_cfg);
            const double deviation = router::compare_stationary(record, params, packet_cfg);
            std::cout << "final_split P_R=" << format_full(record.final_reflected)
                      << " P_T=" << format_full(record.final_transmitted)
                      << " P_B=" << format_full(record.final_transferred) << "\n";
            std::cout << "stationary P_R=" << format_full(split.reflected)
                      << " P_T=" << format_full(split.transmitted)
                      << " P_B=" << format_full(split.transferred) << "\n";
            std::cout << "norm_drift = " << format_full(record.norm_drift) << "\n";
            std::cout << "max_deviation = " << format_full(deviation) << "\n";
        }
        else if (cmd_reproduce->parsed())
        {
            if (out_path.empty())
            {
                out_path = figure_id + ".csv";
            }
            router::reproduce_figure(figure_id, out_path, with_svg);
            std::cout << "wrote " << out_path << "\n";
        }
        else if (cmd_validate->parsed())
        {
            const auto report = router::run_validation(validate_options);
            if (!out_path.empty())
            {
                auto out = open_output(out_path);
                router::write_validation_csv(out, report);
            }
            router::write_validation_summary(std::cout, report);
        }
    }
    catch (const router::UsageError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const router::Error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
