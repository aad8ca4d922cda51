#ifndef ROUTER_MODES_HPP
#define ROUTER_MODES_HPP

#include <complex>

#include "router/params.hpp"

namespace router
{

enum class ModeKind
{
    Propagating,
    Evanescent,
    BandEdge
};

// Classification of an energy E against one channel's cosine band
// E = delta_d - 2 xi_d cos k. Inside the band the mode is a plane wave with
// k in (0, pi); outside it decays as exp(i n pi j - kappa |j|) with n = 0
// below the band and n = 1 above it. The complex wavenumber always has a
// non-negative imaginary part.
struct ModeResolution
{
    ModeKind kind = ModeKind::BandEdge;
    double k = 0.0;        // wavenumber in (0, pi); valid when propagating
    int parity = 0;        // n in {0, 1}; valid when evanescent or band edge
    double kappa = 0.0;    // decay rate; valid when evanescent
    double group_velocity = 0.0; // 2 xi_d sin k when propagating, else 0
    std::complex<double> complex_wavenumber{0.0, 0.0};

    bool propagating() const { return kind == ModeKind::Propagating; }
};

// E = delta_d - 2 xi_d cos k.
double dispersion_energy(Channel c, double k, const SystemParams &p);

ModeResolution resolve_mode(Channel c, double energy, const SystemParams &p,
                            double edge_tol = 1e-9);

// sin evaluated at the mode's complex wavenumber:
// sin k for a propagating mode, i (-1)^n sinh kappa for an evanescent one.
std::complex<double> mode_sine(const ModeResolution &mode);

} // namespace router

#endif // ROUTER_MODES_HPP
