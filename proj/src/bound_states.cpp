#include "router/bound_states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "router/errors.hpp"
#include "router/modes.hpp"

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

double refine_root(const SystemParams &p, int parity, double lo, double hi,
                   double f_lo)
{
    // Plain bisection down to adjacent doubles: the residual has a square
    // root in it, so bracketing beats any polynomial machinery, and running
    // to machine precision keeps the residual small even where the root sits
    // on the steep flank next to a band edge.
    for (;;)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
        {
            break;
        }
        const double f_mid = bound_state_residual(p, mid, parity);
        if (f_mid == 0.0)
        {
            return mid;
        }
        if ((f_lo < 0.0) == (f_mid < 0.0))
        {
            lo = mid;
            f_lo = f_mid;
        }
        else
        {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Builds the normalized state at a converged root. Uses the root identity
// E^2 - omega^2 = -(-1)^n E g_b^2 / S (S the square-root factor) to express
// the atomic amplitudes without dividing by a near-zero E^2 - omega^2, which
// happens when g_b is small and the root hugs a dressed state.
BoundState make_state(const SystemParams &p, double energy, int parity, double edge_tol)
{
    BoundState state;
    state.energy = energy;
    state.parity = parity;
    state.residual = bound_state_residual(p, energy, parity);

    const ModeResolution mode = resolve_mode(Channel::B, energy, p, edge_tol);
    state.kappa = mode.kappa;

    if (p.g_b == 0.0)
    {
        // Decoupled dressed state: no photonic tail, |E| = omega exactly.
        state.amplitude_c = 0.0;
        state.u_f = 1.0 / std::sqrt(2.0);
        state.u_e = (energy >= 0.0 ? 1.0 : -1.0) * state.u_f;
        return state;
    }

    const double s = std::sqrt((energy - p.delta_b) * (energy - p.delta_b) -
                               4.0 * p.xi_b * p.xi_b);
    const double sign = parity == 0 ? 1.0 : -1.0;
    // u_f / C = -(-1)^n S / g_b, u_e = (omega / E) u_f
    const double uf_over_c = -sign * s / p.g_b;
    const double ue_over_c = energy != 0.0 ? (p.omega / energy) * uf_over_c : 0.0;
    const double norm_sq = 1.0 / std::tanh(state.kappa) + uf_over_c * uf_over_c +
                           ue_over_c * ue_over_c;
    state.amplitude_c = 1.0 / std::sqrt(norm_sq);
    state.u_f = uf_over_c * state.amplitude_c;
    state.u_e = ue_over_c * state.amplitude_c;
    return state;
}

} // namespace

double bound_state_residual(const SystemParams &p, double energy, int parity)
{
    const double gap = (energy - p.delta_b) * (energy - p.delta_b) -
                       4.0 * p.xi_b * p.xi_b;
    if (gap < 0.0)
    {
        throw InsideBand("E = " + format_full(energy) +
                         " lies inside the channel-b band");
    }
    const double sign = parity == 0 ? 1.0 : -1.0;
    return sign * (energy * energy - p.omega * p.omega) * std::sqrt(gap) +
           energy * p.g_b * p.g_b;
}

BoundStateScan scan_bound_states(const SystemParams &p, double search_span,
                                 double grid_step, double edge_tol)
{
    check_params(p);
    if (search_span <= 0.0)
    {
        search_span = 10.0 * std::max({p.xi_b, p.omega, std::abs(p.delta_b)});
    }
    if (grid_step <= 0.0)
    {
        throw InvalidParams("grid_step must be positive");
    }

    BoundStateScan scan;
    const double lower_edge = p.delta_b - 2.0 * p.xi_b;
    const double upper_edge = p.delta_b + 2.0 * p.xi_b;

    const auto scan_side = [&](int parity) {
        // March outward from the band edge so brackets are anchored on the
        // edge value, where the square-root factor vanishes and the residual
        // reduces to E g_b^2 (evaluated directly: the rounded edge can land
        // an ulp inside the band).
        const double edge = parity == 0 ? lower_edge : upper_edge;
        const double direction = parity == 0 ? -1.0 : 1.0;
        const int steps = static_cast<int>(std::ceil(search_span / grid_step));
        double e_prev = edge;
        double f_prev = edge * p.g_b * p.g_b;
        for (int i = 1; i <= steps; ++i)
        {
            const double e_next = edge + direction * i * grid_step;
            const double f_next = bound_state_residual(p, e_next, parity);
            if (f_prev == 0.0 || (f_prev < 0.0) != (f_next < 0.0))
            {
                const double lo = std::min(e_prev, e_next);
                const double hi = std::max(e_prev, e_next);
                const double f_lo = lo == e_prev ? f_prev : f_next;
                const double root = f_prev == 0.0
                                        ? e_prev
                                        : refine_root(p, parity, lo, hi, f_lo);
                if (std::abs(root - edge) <= 2.0 * p.xi_b * edge_tol)
                {
                    scan.warnings.push_back(
                        "discarded marginally bound root at E = " + format_full(root) +
                        " (within edge_tol of the band edge)");
                }
                else
                {
                    scan.states.push_back(make_state(p, root, parity, edge_tol));
                }
            }
            e_prev = e_next;
            f_prev = f_next;
        }
    };

    scan_side(0);
    scan_side(1);

    std::sort(scan.states.begin(), scan.states.end(),
              [](const BoundState &a, const BoundState &b) { return a.energy < b.energy; });
    // Deduplicate roots that neighbouring brackets both converged to.
    const auto duplicate = [](const BoundState &a, const BoundState &b) {
        return a.parity == b.parity && std::abs(a.energy - b.energy) < 1e-9;
    };
    scan.states.erase(std::unique(scan.states.begin(), scan.states.end(), duplicate),
                      scan.states.end());
    return scan;
}

std::vector<BoundState> find_bound_states(const SystemParams &p, double search_span,
                                          double grid_step)
{
    return scan_bound_states(p, search_span, grid_step).states;
}

std::vector<std::pair<int, double>> bound_wavefunction(const BoundState &state, int j_max)
{
    if (j_max < 1)
    {
        throw InvalidParams("bound_wavefunction requires j_max >= 1");
    }
    std::vector<std::pair<int, double>> values;
    values.reserve(2 * j_max + 1);
    for (int j = -j_max; j <= j_max; ++j)
    {
        const double alternation = state.parity == 1 && (j % 2 != 0) ? -1.0 : 1.0;
        values.emplace_back(j, state.amplitude_c * alternation *
                                   std::exp(-state.kappa * std::abs(j)));
    }
    return values;
}

std::vector<ZeroCheck> zero_correspondence(const SystemParams &p, const Tolerances &tol)
{
    SystemParams decoupled = p;
    decoupled.g_a = 0.0;
    const std::vector<BoundState> states = find_bound_states(decoupled);

    std::vector<ZeroCheck> checks;
    for (const BoundState &state : states)
    {
        const ModeResolution mode_a = resolve_mode(Channel::A, state.energy, p, tol.edge_tol);
        if (!mode_a.propagating())
        {
            continue; // only energies inside the channel-a band are testable
        }
        const ScatteringSolution sol = scatter(p, state.energy, tol);
        checks.push_back({state.energy, sol.T_a});
    }
    return checks;
}

void write_bound_states_csv(std::ostream &out, const std::vector<BoundState> &states)
{
    out << "n_b,E,kappa,C,u_e,u_f,residual\n";
    for (const BoundState &s : states)
    {
        out << s.parity << ',' << format_full(s.energy) << ',' << format_full(s.kappa)
            << ',' << format_full(s.amplitude_c) << ',' << format_full(s.u_e) << ','
            << format_full(s.u_f) << ',' << format_full(s.residual) << '\n';
    }
}

void write_wavefunction_csv(std::ostream &out,
                            const std::vector<std::pair<int, double>> &wavefunction)
{
    out << "j,B_j\n";
    for (const auto &[j, value] : wavefunction)
    {
        out << j << ',' << format_full(value) << '\n';
    }
}

} // namespace router
