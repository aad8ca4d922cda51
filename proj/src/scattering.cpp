#include "router/scattering.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "router/errors.hpp"

namespace router
{

namespace
{

constexpr std::complex<double> kImag{0.0, 1.0};

std::string format_full(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

EffectiveCouplings effective_potentials(const SystemParams &p, double energy,
                                        double pole_tol)
{
    const double eps = energy * energy - p.omega * p.omega;
    if (std::abs(eps) <= pole_tol)
    {
        throw PoleAtDressedState("effective potentials diverge at |E| = omega (E = " +
                                 format_full(energy) + ")");
    }
    EffectiveCouplings c;
    c.v_a = energy * p.g_a * p.g_a / eps;
    c.v_b = energy * p.g_b * p.g_b / eps;
    c.g_eff = p.omega * p.g_a * p.g_b / eps;
    return c;
}

std::string regime_name(Regime r)
{
    switch (r)
    {
    case Regime::BothOpen:
        return "both_open";
    case Regime::BOnlyClosed:
        return "b_closed";
    case Regime::AClosed:
        return "a_closed";
    }
    return "unknown";
}

namespace
{

void finish_solution(ScatteringSolution &sol)
{
    sol.r_a = sol.t_a - 1.0;
    sol.T_a = std::norm(sol.t_a);
    sol.R_a = std::norm(sol.r_a);
    sol.T_b = std::norm(sol.t_b);
    sol.regime = sol.mode_b.propagating() ? Regime::BothOpen : Regime::BOnlyClosed;
}

// Limit of the scattering amplitudes as E^2 - omega^2 -> 0, obtained by
// clearing the effective-potential denominators. With s_d = sin k_d
// (complex when channel b is closed) and
//   D1 = g_a^2 g_b^2 - 2 i E (xi_a s_a g_b^2 + xi_b s_b g_a^2)
// the amplitudes stay finite:
//   t_a = -2 i xi_a s_a E g_b^2 / D1
//   t_b =  2 i xi_a s_a omega g_a g_b / D1
//   u_e =  2 i xi_a s_a g_a (2 i E xi_b s_b - g_b^2) / D1
//   u_f = -4 xi_a xi_b s_a s_b g_a omega / D1
void solve_limit_path(const SystemParams &p, double energy, ScatteringSolution &sol)
{
    const double sa = std::sin(sol.mode_a.k);
    const std::complex<double> sb = mode_sine(sol.mode_b);

    if (p.g_b == 0.0)
    {
        // Channel b drops out and D1 collapses; the surviving limit is the
        // two-level one: total reflection with the photon stored on the atom.
        sol.t_a = 0.0;
        sol.t_b = 0.0;
        sol.u_e = -2.0 * kImag * p.xi_a * sa / p.g_a;
        sol.u_f = p.omega == 0.0
                      ? std::complex<double>{0.0, 0.0}
                      : -2.0 * kImag * (p.omega / energy) * p.xi_a * sa / p.g_a;
        finish_solution(sol);
        return;
    }

    const std::complex<double> d1 =
        p.g_a * p.g_a * p.g_b * p.g_b -
        2.0 * kImag * energy *
            (p.xi_a * sa * p.g_b * p.g_b + p.xi_b * sb * p.g_a * p.g_a);
    sol.t_a = -2.0 * kImag * p.xi_a * sa * energy * p.g_b * p.g_b / d1;
    sol.t_b = 2.0 * kImag * p.xi_a * sa * p.omega * p.g_a * p.g_b / d1;
    sol.u_e = 2.0 * kImag * p.xi_a * sa * p.g_a *
              (2.0 * kImag * energy * p.xi_b * sb - p.g_b * p.g_b) / d1;
    sol.u_f = -4.0 * p.xi_a * p.xi_b * sa * sb * p.g_a * p.omega / d1;
    finish_solution(sol);
}

void solve_generic_path(const SystemParams &p, double energy, const Tolerances &tol,
                        ScatteringSolution &sol)
{
    const EffectiveCouplings vg = effective_potentials(p, energy, tol.pole_tol);
    const double sa = std::sin(sol.mode_a.k);
    const std::complex<double> sb = mode_sine(sol.mode_b);

    const std::complex<double> xa = 2.0 * kImag * p.xi_a * sa - vg.v_a;
    const std::complex<double> xb = 2.0 * kImag * p.xi_b * sb - vg.v_b;
    const std::complex<double> denom = xa * xb - vg.g_eff * vg.g_eff;

    sol.t_a = 2.0 * kImag * p.xi_a * sa * xb / denom;
    sol.t_b = 2.0 * kImag * p.xi_a * sa * vg.g_eff / denom;

    // Atomic amplitudes recovered from the two atomic rows of the
    // Schroedinger equation with A_0 = t_a, B_0 = t_b.
    const double eps = energy * energy - p.omega * p.omega;
    sol.u_e = (energy * p.g_a * sol.t_a + p.omega * p.g_b * sol.t_b) / eps;
    sol.u_f = (p.omega * p.g_a * sol.t_a + energy * p.g_b * sol.t_b) / eps;
    finish_solution(sol);
}

} // namespace

ScatteringSolution scatter(const SystemParams &p, double energy, const Tolerances &tol)
{
    check_params(p);

    ScatteringSolution sol;
    sol.energy = energy;
    sol.mode_a = resolve_mode(Channel::A, energy, p, tol.edge_tol);
    sol.mode_b = resolve_mode(Channel::B, energy, p, tol.edge_tol);

    if (sol.mode_a.kind == ModeKind::BandEdge || sol.mode_b.kind == ModeKind::BandEdge)
    {
        throw BandEdgeDegenerate("E = " + format_full(energy) +
                                 " sits on a band edge (within edge_tol)");
    }
    if (!sol.mode_a.propagating())
    {
        throw IncidentChannelClosed("incident channel closed: E = " + format_full(energy) +
                                    " is outside the channel-a band");
    }

    if (p.g_a == 0.0)
    {
        // The incident photon never reaches the atom: free propagation.
        sol.t_a = 1.0;
        sol.t_b = 0.0;
        sol.u_e = 0.0;
        sol.u_f = 0.0;
        finish_solution(sol);
        return sol;
    }

    if (std::abs(energy * energy - p.omega * p.omega) <= tol.pole_tol)
    {
        solve_limit_path(p, energy, sol);
    }
    else
    {
        solve_generic_path(p, energy, tol, sol);
    }
    return sol;
}

ConservationCheck conservation_check(const ScatteringSolution &sol, const SystemParams &p)
{
    ConservationCheck check;
    check.regime = sol.regime;
    if (sol.regime == Regime::BothOpen)
    {
        const double weight = (p.xi_b * std::sin(sol.mode_b.k)) /
                              (p.xi_a * std::sin(sol.mode_a.k));
        check.sum = sol.T_a + sol.R_a + 2.0 * weight * sol.T_b;
    }
    else
    {
        check.sum = sol.T_a + sol.R_a;
    }
    return check;
}

namespace
{

void append_flag(std::string &flags, const char *name)
{
    if (!flags.empty())
    {
        flags += '+';
    }
    flags += name;
}

// Shift E past a band edge so that |(delta - E)/(2 xi)| clears edge_tol with
// a factor-2 margin. Ties (E exactly on the edge) move upward.
bool clear_band_edge(const SystemParams &p, Channel c, double &energy, double edge_tol)
{
    const double xi = hopping(p, c);
    const double delta = detuning(p, c);
    const double guard = 2.0 * xi * edge_tol;
    bool moved = false;
    for (const double edge : {delta - 2.0 * xi, delta + 2.0 * xi})
    {
        if (std::abs(energy - edge) <= guard)
        {
            const double side = energy >= edge ? 1.0 : -1.0;
            energy = edge + side * 2.0 * guard;
            moved = true;
        }
    }
    return moved;
}

bool clear_pole(const SystemParams &p, double &energy, double pole_tol)
{
    if (std::abs(energy * energy - p.omega * p.omega) > pole_tol)
    {
        return false;
    }
    // Keep the side of |omega| the point started on; ties move outward.
    const double outward = std::abs(energy) >= p.omega ? 1.0 : -1.0;
    double target = p.omega * p.omega + outward * 2.0 * pole_tol;
    if (target < 0.0)
    {
        target = p.omega * p.omega + 2.0 * pole_tol;
    }
    const double sign = energy > 0.0 ? 1.0 : (energy < 0.0 ? -1.0 : 1.0);
    energy = sign * std::sqrt(target);
    return true;
}

} // namespace

double admissible_energy(const SystemParams &p, double energy, const Tolerances &tol,
                         std::string &flags)
{
    bool edge_flag = false;
    bool pole_flag = false;
    for (int pass = 0; pass < 4; ++pass)
    {
        bool moved = clear_band_edge(p, Channel::A, energy, tol.edge_tol);
        moved |= clear_band_edge(p, Channel::B, energy, tol.edge_tol);
        edge_flag |= moved;
        const bool pole_moved = clear_pole(p, energy, tol.pole_tol);
        pole_flag |= pole_moved;
        if (!moved && !pole_moved)
        {
            break;
        }
    }
    if (edge_flag)
    {
        append_flag(flags, "edge_offset");
    }
    if (pole_flag)
    {
        append_flag(flags, "pole_offset");
    }
    return energy;
}

SweepTable sweep(const SystemParams &p, std::span<const double> grid, const Tolerances &tol)
{
    if (grid.empty())
    {
        throw EmptyGrid("sweep requires at least one grid point");
    }
    for (std::size_t i = 1; i < grid.size(); ++i)
    {
        if (!(grid[i] > grid[i - 1]))
        {
            throw UsageError("sweep grid must be strictly increasing");
        }
    }

    SweepTable table;
    table.rows.reserve(grid.size());
    for (const double requested : grid)
    {
        SweepRow row;
        const double energy = admissible_energy(p, requested, tol, row.flags);
        const ScatteringSolution sol = scatter(p, energy, tol);
        row.energy = energy;
        row.T_a = sol.T_a;
        row.R_a = sol.R_a;
        row.T_b = sol.T_b;
        row.two_T_b = 2.0 * sol.T_b;
        row.conservation = conservation_check(sol, p).sum;
        row.regime = sol.regime;
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_sweep_csv(std::ostream &out, const SweepTable &table)
{
    out << "E,T_a,R_a,T_b,two_T_b,conservation,regime,flags\n";
    for (const SweepRow &row : table.rows)
    {
        out << format_full(row.energy) << ',' << format_full(row.T_a) << ','
            << format_full(row.R_a) << ',' << format_full(row.T_b) << ','
            << format_full(row.two_T_b) << ',' << format_full(row.conservation) << ','
            << regime_name(row.regime) << ',' << row.flags << '\n';
    }
}

} // namespace router
