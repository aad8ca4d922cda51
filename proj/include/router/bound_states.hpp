#ifndef ROUTER_BOUND_STATES_HPP
#define ROUTER_BOUND_STATES_HPP

#include <string>
#include <utility>
#include <vector>

#include "router/params.hpp"
#include "router/scattering.hpp"

namespace router
{

// Localized eigenstate of waveguide b plus the driven atom (g_a = 0), with
// photon amplitudes B_j = C exp(i n pi j - kappa |j|). Parity n = 0 states
// lie below the channel-b band, n = 1 states above it. Amplitudes are
// normalized to unit single-excitation norm:
// C^2 coth(kappa) + u_e^2 + u_f^2 = 1.
struct BoundState
{
    double energy = 0.0;
    int parity = 0;
    double kappa = 0.0;
    double amplitude_c = 0.0;
    double u_e = 0.0;
    double u_f = 0.0;
    double residual = 0.0;
};

// Self-consistency function whose roots are the bound-state energies:
// (-1)^n (E^2 - omega^2) sqrt((E - delta_b)^2 - 4 xi_b^2) + E g_b^2.
// Throws InsideBand when (E - delta_b)^2 < 4 xi_b^2.
double bound_state_residual(const SystemParams &p, double energy, int parity);

struct BoundStateScan
{
    std::vector<BoundState> states; // sorted by energy
    std::vector<std::string> warnings;
};

// Scans a uniform grid below the band (n=0) and above it (n=1), brackets
// every sign change, and refines each root by bisection to |dE| < 1e-12.
// Roots within edge_tol of a band edge are discarded with a warning.
// Defaults: search_span = 10 max(xi_b, omega, |delta_b|), grid_step = 1e-3.
BoundStateScan scan_bound_states(const SystemParams &p, double search_span = 0.0,
                                 double grid_step = 1e-3, double edge_tol = 1e-9);

std::vector<BoundState> find_bound_states(const SystemParams &p,
                                          double search_span = 0.0,
                                          double grid_step = 1e-3);

// B_j = C (-1)^{n j} exp(-kappa |j|) for j in [-j_max, j_max]. The norm left
// outside the window is below exp(-2 kappa j_max).
std::vector<std::pair<int, double>> bound_wavefunction(const BoundState &state,
                                                       int j_max);

struct ZeroCheck
{
    double energy = 0.0; // bound-state energy inside the channel-a band
    double T_a = 0.0;    // transmittance of the full system at that energy
};

// Transmission zeros of channel a sit exactly at the bound-state energies of
// the decoupled (g_a = 0) b-side problem; this evaluates T_a there for every
// bound state that falls strictly inside the channel-a band.
std::vector<ZeroCheck> zero_correspondence(const SystemParams &p,
                                           const Tolerances &tol = {});

void write_bound_states_csv(std::ostream &out, const std::vector<BoundState> &states);
void write_wavefunction_csv(std::ostream &out,
                            const std::vector<std::pair<int, double>> &wavefunction);

} // namespace router

#endif // ROUTER_BOUND_STATES_HPP
