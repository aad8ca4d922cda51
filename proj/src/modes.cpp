#include "router/modes.hpp"

#include <cmath>
#include <numbers>

namespace router
{

double dispersion_energy(Channel c, double k, const SystemParams &p)
{
    return detuning(p, c) - 2.0 * hopping(p, c) * std::cos(k);
}

ModeResolution resolve_mode(Channel c, double energy, const SystemParams &p,
                            double edge_tol)
{
    const double xi = hopping(p, c);
    const double delta = detuning(p, c);
    const double x = (delta - energy) / (2.0 * xi);

    ModeResolution mode;
    if (std::abs(x) < 1.0 - edge_tol)
    {
        mode.kind = ModeKind::Propagating;
        mode.k = std::acos(x); // branch in (0, pi): right-movers carry +k
        mode.group_velocity = 2.0 * xi * std::sin(mode.k);
        mode.complex_wavenumber = {mode.k, 0.0};
    }
    else if (std::abs(x) > 1.0 + edge_tol)
    {
        mode.kind = ModeKind::Evanescent;
        mode.parity = energy < delta ? 0 : 1; // below band: n=0, above: n=1
        mode.kappa = std::acosh(std::abs(x));
        mode.complex_wavenumber = {mode.parity * std::numbers::pi, mode.kappa};
    }
    else
    {
        mode.kind = ModeKind::BandEdge;
        mode.parity = energy < delta ? 0 : 1;
        mode.complex_wavenumber = {mode.parity * std::numbers::pi, 0.0};
    }
    return mode;
}

std::complex<double> mode_sine(const ModeResolution &mode)
{
    switch (mode.kind)
    {
    case ModeKind::Propagating:
        return {std::sin(mode.k), 0.0};
    case ModeKind::Evanescent:
        // sin(n pi + i kappa) = i (-1)^n sinh kappa
        return {0.0, (mode.parity == 0 ? 1.0 : -1.0) * std::sinh(mode.kappa)};
    case ModeKind::BandEdge:
        return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

} // namespace router
