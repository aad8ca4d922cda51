#include "router/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <vector>

#include "router/errors.hpp"
#include "router/modes.hpp"
#include "router/scattering.hpp"

namespace router
{

namespace
{

constexpr int kGuardSites = 5; // junction guard excluded from the final split
constexpr int kWallSites = 2;  // outermost sites watched for contamination

std::string format_full(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// State layout: A_{-L..L}, B_{-L..L}, U_e, U_f.
struct Workspace
{
    int half_length;
    int index_a(int j) const { return j + half_length; }
    int index_b(int j) const { return 2 * half_length + 1 + j + half_length; }
    int index_u_e() const { return 2 * (2 * half_length + 1); }
    int index_u_f() const { return index_u_e() + 1; }
};

using State = std::vector<std::complex<double>>;

// out = -i H psi, hard walls beyond |j| = L.
void apply_rhs(const SystemParams &p, const Workspace &ws, const State &psi, State &out)
{
    const std::complex<double> minus_i{0.0, -1.0};
    const int l = ws.half_length;
    for (int j = -l; j <= l; ++j)
    {
        const int ia = ws.index_a(j);
        const int ib = ws.index_b(j);
        std::complex<double> ha = p.delta_a * psi[ia];
        std::complex<double> hb = p.delta_b * psi[ib];
        if (j > -l)
        {
            ha -= p.xi_a * psi[ia - 1];
            hb -= p.xi_b * psi[ib - 1];
        }
        if (j < l)
        {
            ha -= p.xi_a * psi[ia + 1];
            hb -= p.xi_b * psi[ib + 1];
        }
        if (j == 0)
        {
            ha += p.g_a * psi[ws.index_u_e()];
            hb += p.g_b * psi[ws.index_u_f()];
        }
        out[ia] = minus_i * ha;
        out[ib] = minus_i * hb;
    }
    out[ws.index_u_e()] =
        minus_i * (p.g_a * psi[ws.index_a(0)] + p.omega * psi[ws.index_u_f()]);
    out[ws.index_u_f()] =
        minus_i * (p.g_b * psi[ws.index_b(0)] + p.omega * psi[ws.index_u_e()]);
}

double energy_scale(const SystemParams &p)
{
    // Gershgorin bound on the spectral radius of H.
    return std::max({std::abs(p.delta_a) + 2.0 * p.xi_a + p.g_a,
                     std::abs(p.delta_b) + 2.0 * p.xi_b + p.g_b,
                     p.g_a + p.omega, p.g_b + p.omega});
}

// Nodes and weights of n-point Gauss-Legendre on [-1, 1], Newton-refined
// from the Chebyshev initial guesses.
void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights)
{
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15)
            {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

} // namespace

double default_time_step(const SystemParams &p, double t_end)
{
    const double scale = energy_scale(p);
    // RK4 loses ~ (E dt)^6 / 72 of the norm per step at eigenvalue E; keep
    // the worst-case accumulated loss below 1e-9.
    const double drift_target = 1e-9;
    const double dt_drift =
        std::pow(72.0 * drift_target / (t_end * std::pow(scale, 6.0)), 0.2);
    const double dt_cap =
        0.05 / std::max({p.xi_a, p.xi_b, p.omega, p.g_a, p.g_b});
    return std::min(dt_cap, dt_drift);
}

TransportRecord evolve(const SystemParams &p, WavepacketConfig cfg)
{
    check_params(p);
    const int l = cfg.half_length;
    if (l < 16)
    {
        throw InvalidParams("half_length too small");
    }
    if (cfg.center == 0)
    {
        cfg.center = -l / 2;
    }
    if (cfg.center >= 0)
    {
        throw InvalidParams("launch site must be in the left half of channel a");
    }
    if (!(cfg.sigma > 0.0))
    {
        throw InvalidParams("sigma must be positive");
    }
    if (std::abs(cfg.center) + 4.0 * cfg.sigma >= static_cast<double>(l))
    {
        throw InvalidParams("packet must start clear of the wall: |j0| + 4 sigma < L");
    }
    if (!(cfg.carrier_k > 0.0) || !(cfg.carrier_k < std::numbers::pi))
    {
        throw InvalidParams("carrier_k must lie in (0, pi)");
    }
    const double group_velocity = 2.0 * p.xi_a * std::sin(cfg.carrier_k);
    const double sigma_e = group_velocity / cfg.sigma;
    const double carrier_energy = dispersion_energy(Channel::A, cfg.carrier_k, p);
    const double band_lo = p.delta_a - 2.0 * p.xi_a;
    const double band_hi = p.delta_a + 2.0 * p.xi_a;
    if (carrier_energy - 3.0 * sigma_e <= band_lo ||
        carrier_energy + 3.0 * sigma_e >= band_hi)
    {
        throw InvalidParams("carrier energy must sit in-band with a 3 sigma_E margin");
    }

    if (cfg.t_end <= 0.0)
    {
        cfg.t_end = 0.8 * static_cast<double>(l) / group_velocity;
    }
    if (cfg.dt <= 0.0)
    {
        cfg.dt = default_time_step(p, cfg.t_end);
    }
    const double dt_cap = 0.05 / std::max({p.xi_a, p.xi_b, p.omega, p.g_a, p.g_b});
    cfg.dt = std::min(cfg.dt, dt_cap);
    const int steps = static_cast<int>(std::ceil(cfg.t_end / cfg.dt));
    if (cfg.snapshot_stride <= 0)
    {
        cfg.snapshot_stride = std::max(1, steps / 500);
    }

    Workspace ws{l};
    const int n = 2 * (2 * l + 1) + 2;
    State psi(n), k1(n), k2(n), k3(n), k4(n), scratch(n);

    // Gaussian amplitude exp(-(j-j0)^2 / (2 sigma^2)) e^{i k j}: its energy
    // density has 1/e half-width sigma_E = v_g / sigma.
    double norm = 0.0;
    for (int j = -l; j <= l; ++j)
    {
        const double d = j - cfg.center;
        const double envelope = std::exp(-d * d / (2.0 * cfg.sigma * cfg.sigma));
        psi[ws.index_a(j)] = std::polar(envelope, cfg.carrier_k * j);
        norm += envelope * envelope;
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto &amp : psi)
    {
        amp *= scale;
    }

    TransportRecord record;
    const auto snapshot = [&](double t) {
        double a_left = 0.0, a_right = 0.0, b_left = 0.0, b_right = 0.0;
        double wall = 0.0;
        for (int j = -l; j <= l; ++j)
        {
            const double pa = std::norm(psi[ws.index_a(j)]);
            const double pb = std::norm(psi[ws.index_b(j)]);
            (j < 0 ? a_left : a_right) += pa;
            (j < 0 ? b_left : b_right) += pb;
            if (std::abs(j) > l - kWallSites)
            {
                wall += pa + pb;
            }
        }
        const double atom =
            std::norm(psi[ws.index_u_e()]) + std::norm(psi[ws.index_u_f()]);
        record.times.push_back(t);
        record.p_a_left.push_back(a_left);
        record.p_a_right.push_back(a_right);
        record.p_b_left.push_back(b_left);
        record.p_b_right.push_back(b_right);
        record.p_atom.push_back(atom);

        const double total = a_left + a_right + b_left + b_right + atom;
        record.norm_drift = std::max(record.norm_drift, std::abs(total - 1.0));
        if (record.norm_drift > 1e-6)
        {
            throw NormDriftExceeded("norm drift " + format_full(record.norm_drift) +
                                    " exceeds 1e-6; reduce dt");
        }
        if (wall > 1e-6)
        {
            throw WallContamination("wall population " + format_full(wall) +
                                    " exceeds 1e-6 before t_end; enlarge the lattice");
        }
    };

    snapshot(0.0);
    double t = 0.0;
    for (int step = 1; step <= steps; ++step)
    {
        const double h = cfg.dt;
        apply_rhs(p, ws, psi, k1);
        for (int i = 0; i < n; ++i)
        {
            scratch[i] = psi[i] + 0.5 * h * k1[i];
        }
        apply_rhs(p, ws, scratch, k2);
        for (int i = 0; i < n; ++i)
        {
            scratch[i] = psi[i] + 0.5 * h * k2[i];
        }
        apply_rhs(p, ws, scratch, k3);
        for (int i = 0; i < n; ++i)
        {
            scratch[i] = psi[i] + h * k3[i];
        }
        apply_rhs(p, ws, scratch, k4);
        for (int i = 0; i < n; ++i)
        {
            psi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
        if (step % cfg.snapshot_stride == 0 || step == steps)
        {
            snapshot(t);
        }
    }

    for (int j = -l; j <= l; ++j)
    {
        const double pa = std::norm(psi[ws.index_a(j)]);
        const double pb = std::norm(psi[ws.index_b(j)]);
        if (j < -kGuardSites)
        {
            record.final_reflected += pa;
            record.final_transferred += pb;
        }
        else if (j > kGuardSites)
        {
            record.final_transmitted += pa;
            record.final_transferred += pb;
        }
    }
    return record;
}

StationarySplit stationary_split(const SystemParams &p, const WavepacketConfig &cfg,
                                 const Tolerances &tol)
{
    const double group_velocity = 2.0 * p.xi_a * std::sin(cfg.carrier_k);
    const double sigma_e = group_velocity / cfg.sigma;
    const double carrier_energy = dispersion_energy(Channel::A, cfg.carrier_k, p);

    // 96-point Gauss-Legendre on [E0 - 3 sigma_E, E0 + 3 sigma_E] of the
    // stationary coefficients against the packet's k-space density
    // exp(-sigma^2 (k(E) - k0)^2) with the 1/v(E) Jacobian.
    constexpr int kNodes = 96;
    std::vector<double> nodes;
    std::vector<double> gl_weights;
    gauss_legendre(kNodes, nodes, gl_weights);

    StationarySplit split;
    double weight_total = 0.0;
    for (int i = 0; i < kNodes; ++i)
    {
        const double energy = carrier_energy + 3.0 * sigma_e * nodes[i];
        const ModeResolution mode = resolve_mode(Channel::A, energy, p, tol.edge_tol);
        const double k = mode.k;
        const double dk = k - cfg.carrier_k;
        const double weight = gl_weights[i] *
                              std::exp(-cfg.sigma * cfg.sigma * dk * dk) /
                              mode.group_velocity;
        const ScatteringSolution sol = scatter(p, energy, tol);
        const ConservationCheck check = conservation_check(sol, p);
        split.transmitted += weight * sol.T_a;
        split.reflected += weight * sol.R_a;
        if (check.regime == Regime::BothOpen)
        {
            const double flux_weight = (p.xi_b * std::sin(sol.mode_b.k)) /
                                       (p.xi_a * std::sin(sol.mode_a.k));
            split.transferred += weight * 2.0 * flux_weight * sol.T_b;
        }
        weight_total += weight;
    }
    split.transmitted /= weight_total;
    split.reflected /= weight_total;
    split.transferred /= weight_total;
    return split;
}

double compare_stationary(const TransportRecord &record, const SystemParams &p,
                          const WavepacketConfig &cfg)
{
    const StationarySplit split = stationary_split(p, cfg);
    const double dev_r = std::abs(record.final_reflected - split.reflected);
    const double dev_t = std::abs(record.final_transmitted - split.transmitted);
    const double dev_b = std::abs(record.final_transferred - split.transferred);
    return std::max({dev_r, dev_t, dev_b});
}

void write_transport_csv(std::ostream &out, const TransportRecord &record)
{
    out << "t,p_a_left,p_a_right,p_b_left,p_b_right,p_atom\n";
    for (std::size_t i = 0; i < record.times.size(); ++i)
    {
        out << format_full(record.times[i]) << ',' << format_full(record.p_a_left[i])
            << ',' << format_full(record.p_a_right[i]) << ','
            << format_full(record.p_b_left[i]) << ',' << format_full(record.p_b_right[i])
            << ',' << format_full(record.p_atom[i]) << '\n';
    }
}

} // namespace router
