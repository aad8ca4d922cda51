#ifndef ROUTER_SCATTERING_HPP
#define ROUTER_SCATTERING_HPP

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "router/modes.hpp"
#include "router/params.hpp"

namespace router
{

// Energy-dependent junction couplings obtained by eliminating the atomic
// amplitudes: V_d(E) = E g_d^2 / (E^2 - omega^2) acts as a delta potential in
// channel d and G(E) = omega g_a g_b / (E^2 - omega^2) couples the two j = 0
// cavities.
struct EffectiveCouplings
{
    double v_a = 0.0;
    double v_b = 0.0;
    double g_eff = 0.0;
};

// Throws PoleAtDressedState when |E^2 - omega^2| <= pole_tol; the caller must
// route such energies through the limit path of scatter().
EffectiveCouplings effective_potentials(const SystemParams &p, double energy,
                                        double pole_tol = 1e-8);

enum class Regime
{
    BothOpen,    // both channels propagating
    BOnlyClosed, // channel b evanescent, flux confined to channel a
    AClosed      // incident channel closed (never produced by scatter)
};

std::string regime_name(Regime r);

// Stationary scattering state for a wave incident from the left of channel a.
struct ScatteringSolution
{
    double energy = 0.0;
    std::complex<double> t_a;       // transmitted amplitude in channel a
    std::complex<double> r_a;       // reflected amplitude, r_a = t_a - 1
    std::complex<double> t_b;       // transfer amplitude (equal both ways)
    std::complex<double> u_e;       // amplitude on |e,0>
    std::complex<double> u_f;       // amplitude on |f,0>
    ModeResolution mode_a;
    ModeResolution mode_b;
    double T_a = 0.0; // |t_a|^2
    double R_a = 0.0; // |r_a|^2
    double T_b = 0.0; // |t_b|^2 (localized amplitude, not flux, when b closed)
    Regime regime = Regime::BothOpen;
};

// Closed-form amplitudes. Energies with |E^2 - omega^2| <= pole_tol take the
// analytic dressed-state limit; exact band edges are rejected.
ScatteringSolution scatter(const SystemParams &p, double energy,
                           const Tolerances &tol = {});

struct ConservationCheck
{
    double sum = 0.0; // velocity-weighted flux sum; equals 1 for exact inputs
    Regime regime = Regime::BothOpen;
};

// Both channels open: T_a + R_a + 2 (xi_b sin k_b)/(xi_a sin k_a) T_b.
// Channel b closed: T_a + R_a.
ConservationCheck conservation_check(const ScatteringSolution &sol,
                                     const SystemParams &p);

struct SweepRow
{
    double energy = 0.0; // energy actually evaluated (after any offset)
    double T_a = 0.0;
    double R_a = 0.0;
    double T_b = 0.0;
    double two_T_b = 0.0;
    double conservation = 0.0;
    Regime regime = Regime::BothOpen;
    std::string flags; // "", "edge_offset", "pole_offset", or both joined by '+'
};

struct SweepTable
{
    std::vector<SweepRow> rows;
};

// Grid points falling inside a pole or band-edge guard band are nudged to the
// nearest admissible energy and flagged. The grid must be strictly increasing
// and every point must keep channel a open.
SweepTable sweep(const SystemParams &p, std::span<const double> grid,
                 const Tolerances &tol = {});

// Header: E,T_a,R_a,T_b,two_T_b,conservation,regime,flags (17 significant
// digits per value).
void write_sweep_csv(std::ostream &out, const SweepTable &table);

// Shifts an energy out of the pole / band-edge guard bands; appends the flag
// names it applied. Used by sweep and the figure reproduction grids.
double admissible_energy(const SystemParams &p, double energy,
                         const Tolerances &tol, std::string &flags);

} // namespace router

#endif // ROUTER_SCATTERING_HPP
