#ifndef ROUTER_LATTICE_ORACLE_HPP
#define ROUTER_LATTICE_ORACLE_HPP

#include <Eigen/Dense>

#include "router/scattering.hpp"

namespace router
{

// Full single-excitation Schroedinger equation on finite chains
// j = -n_half .. n_half, with the atomic amplitudes kept as unknowns and the
// asymptotic plane-wave / evanescent forms imposed through two matching rows
// per chain end. The boundary coefficients are parametrized by their value at
// the outermost site so the matrix stays well scaled for closed channels.
//
// Unknown layout: A_{-N..N}, B_{-N..N}, U_e, U_f, then the four scaled
// boundary amplitudes (reflected, transmitted, transfer left/right).
struct LatticeSystem
{
    int n_half = 0;
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;

    int index_a(int j) const { return j + n_half; }
    int index_b(int j) const { return 2 * n_half + 1 + j + n_half; }
    int index_u_e() const { return 2 * (2 * n_half + 1); }
    int index_u_f() const { return index_u_e() + 1; }
    int index_reflected() const { return index_u_e() + 2; }
    int index_transmitted() const { return index_u_e() + 3; }
    int index_transfer_left() const { return index_u_e() + 4; }
    int index_transfer_right() const { return index_u_e() + 5; }
    int dimension() const { return 2 * (2 * n_half + 1) + 6; }
};

LatticeSystem build_lattice_system(const SystemParams &p, double energy, int n_half,
                                   const Tolerances &tol = {});

// Solves the lattice system and reads the scattering amplitudes off the
// junction sites (t_a = A_0, r_a = A_0 - 1, t_b = B_0), which stay well
// conditioned even when channel b is deeply evanescent. The result is
// independent of n_half to solver precision. Throws SingularSystem with a
// pivot-ratio condition estimate if elimination breaks down.
ScatteringSolution solve_lattice(const SystemParams &p, double energy, int n_half,
                                 const Tolerances &tol = {});

// Substitutes the lattice solution into the reduced junction equations
// (delta-potential form with V_d, G) for every interior site and returns the
// largest row residual. Requires |E^2 - omega^2| > pole_tol.
double verify_reduction(const SystemParams &p, double energy, int n_half,
                        const Tolerances &tol = {});

} // namespace router

#endif // ROUTER_LATTICE_ORACLE_HPP
