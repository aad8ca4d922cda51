#ifndef ROUTER_PARAMS_HPP
#define ROUTER_PARAMS_HPP

#include <iosfwd>
#include <string>

namespace router
{

// Dimensionless system parameters, all in units of xi_a (kept explicit so the
// general formulas stay testable). Detunings are the rotating-frame
// primitives: delta_a = omega_a - omega_e, delta_b = omega_b - omega_f, with
// the classical drive resonant on |e> <-> |f>.
struct SystemParams
{
    double xi_a = 1.0;    // inter-cavity hopping, waveguide a (energy unit)
    double xi_b = 1.0;    // inter-cavity hopping, waveguide b
    double delta_a = 0.0; // cavity-atom detuning, waveguide a
    double delta_b = 0.0; // cavity-atom detuning, waveguide b
    double g_a = 0.0;     // atom coupling to cavity a_0
    double g_b = 0.0;     // atom coupling to cavity b_0
    double omega = 0.0;   // classical Rabi frequency

    bool operator==(const SystemParams &) const = default;
};

enum class Channel
{
    A,
    B
};

double hopping(const SystemParams &p, Channel c);
double detuning(const SystemParams &p, Channel c);
double coupling(const SystemParams &p, Channel c);

// Throws InvalidParams unless xi_a, xi_b > 0, couplings and omega >= 0, and
// every field is finite.
void check_params(const SystemParams &p);

// Numerical guard bands shared by every module.
struct Tolerances
{
    double edge_tol = 1e-9; // band-edge exclusion on |(delta_d - E)/(2 xi_d)|
    double pole_tol = 1e-8; // dressed-state pole exclusion on |E^2 - omega^2|
};

// Flat `key = value` text with keys xi_a, xi_b, delta_a, delta_b, g_a, g_b,
// omega. Unknown keys or malformed lines raise UsageError. Round-trips at
// full double precision.
SystemParams parse_params_text(std::istream &in);
SystemParams load_params_file(const std::string &path);
std::string format_params(const SystemParams &p);

} // namespace router

#endif // ROUTER_PARAMS_HPP
