#include "router/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "router/bound_states.hpp"
#include "router/errors.hpp"
#include "router/lattice_oracle.hpp"
#include "router/modes.hpp"
#include "router/scattering.hpp"

namespace router
{

namespace
{

constexpr double kMargin = 1e-3; // pole / band-edge exclusion for the samples

std::string format_full(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Uniform deviate built directly from the engine output so reports are
// bit-identical across standard libraries.
double uniform(std::mt19937_64 &rng, double lo, double hi)
{
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::string fnv1a_hash(const std::string &text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : text)
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool admissible_sample(const SystemParams &p, double energy)
{
    for (const Channel c : {Channel::A, Channel::B})
    {
        const double xi = hopping(p, c);
        const double delta = detuning(p, c);
        if (std::abs(energy - (delta - 2.0 * xi)) < kMargin ||
            std::abs(energy - (delta + 2.0 * xi)) < kMargin)
        {
            return false;
        }
    }
    return std::abs(energy - p.omega) >= kMargin && std::abs(energy + p.omega) >= kMargin;
}

SystemParams draw_params(std::mt19937_64 &rng)
{
    SystemParams p;
    p.xi_a = 1.0;
    p.xi_b = uniform(rng, 0.5, 2.0);
    p.delta_a = uniform(rng, -0.5, 0.5);
    p.delta_b = uniform(rng, -3.0, 3.0);
    p.g_a = uniform(rng, 0.05, 0.8);
    p.g_b = uniform(rng, 0.05, 0.8);
    p.omega = uniform(rng, 0.0, 1.5);
    return p;
}

double draw_energy(std::mt19937_64 &rng, const SystemParams &p)
{
    for (int attempt = 0; attempt < 64; ++attempt)
    {
        const double energy =
            uniform(rng, p.delta_a - 2.0 * p.xi_a + kMargin, p.delta_a + 2.0 * p.xi_a - kMargin);
        if (admissible_sample(p, energy))
        {
            return energy;
        }
    }
    return p.delta_a; // band centre; admissible for almost all parameter draws
}

} // namespace

bool ValidationReport::all_pass() const
{
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult &s) { return s.pass; });
}

ValidationReport run_validation(const ValidationOptions &options)
{
    if (options.samples < 1)
    {
        throw InvalidParams("validation requires samples >= 1");
    }
    std::mt19937_64 rng(options.seed);
    ValidationReport report;
    report.rows.reserve(options.samples);

    double worst_amp = 0.0;
    double worst_reduction = 0.0;
    double worst_conservation = 0.0;
    for (int i = 0; i < options.samples; ++i)
    {
        const SystemParams p = draw_params(rng);
        const double energy = draw_energy(rng, p);

        const ScatteringSolution closed = scatter(p, energy);
        const ScatteringSolution lattice = solve_lattice(p, energy, options.n_half);

        ValidationRow row;
        row.params = p;
        row.energy = energy;
        row.param_hash = fnv1a_hash(format_params(p));
        row.max_amp_diff = std::max({std::abs(closed.t_a - lattice.t_a),
                                     std::abs(closed.r_a - lattice.r_a),
                                     std::abs(closed.t_b - lattice.t_b),
                                     std::abs(closed.u_e - lattice.u_e),
                                     std::abs(closed.u_f - lattice.u_f)});
        row.reduction_residual = verify_reduction(p, energy, options.n_half);
        row.conservation_err =
            std::max(std::abs(conservation_check(closed, p).sum - 1.0),
                     std::abs(conservation_check(lattice, p).sum - 1.0));
        worst_amp = std::max(worst_amp, row.max_amp_diff);
        worst_reduction = std::max(worst_reduction, row.reduction_residual);
        worst_conservation = std::max(worst_conservation, row.conservation_err);
        report.rows.push_back(std::move(row));
    }

    // Bound-state / transmission-zero correspondence on a tailored family
    // whose decoupled-b bound states land inside the channel-a band.
    double worst_zero = 0.0;
    int zero_checked = 0;
    const int zero_draws = std::max(1, options.samples / 10);
    for (int i = 0; i < zero_draws; ++i)
    {
        SystemParams p;
        p.xi_a = 1.0;
        p.xi_b = uniform(rng, 0.3, 0.8);
        p.delta_a = 0.0;
        p.delta_b = (rng() % 2 == 0 ? 1.0 : -1.0) * uniform(rng, 2.5, 4.0);
        p.g_a = uniform(rng, 0.2, 0.7);
        p.g_b = uniform(rng, 0.3, 0.7);
        p.omega = uniform(rng, 0.5, 1.2);
        for (const ZeroCheck &check : zero_correspondence(p))
        {
            const ModeResolution mode = resolve_mode(Channel::A, check.energy, p);
            if (!mode.propagating() || mode.group_velocity < 2.0 * p.xi_a * 0.03)
            {
                continue; // skip marginally open energies
            }
            worst_zero = std::max(worst_zero, check.T_a);
            ++zero_checked;
        }
    }

    report.suites.push_back({"oracle_equivalence", options.samples, worst_amp, 1e-10,
                             worst_amp < 1e-10});
    report.suites.push_back({"reduction_residual", options.samples, worst_reduction, 1e-10,
                             worst_reduction < 1e-10});
    report.suites.push_back({"flux_conservation", options.samples, worst_conservation, 1e-10,
                             worst_conservation < 1e-10});
    report.suites.push_back({"zero_correspondence", zero_checked, worst_zero, 1e-8,
                             worst_zero < 1e-8});
    return report;
}

void write_validation_csv(std::ostream &out, const ValidationReport &report)
{
    out << "E,param_hash,max_amp_diff,reduction_residual,conservation_err\n";
    for (const ValidationRow &row : report.rows)
    {
        out << format_full(row.energy) << ',' << row.param_hash << ','
            << format_full(row.max_amp_diff) << ',' << format_full(row.reduction_residual)
            << ',' << format_full(row.conservation_err) << '\n';
    }
}

void write_validation_summary(std::ostream &out, const ValidationReport &report)
{
    for (const SuiteResult &suite : report.suites)
    {
        out << (suite.pass ? "PASS" : "FAIL") << "  " << suite.name << "  checked="
            << suite.checked << "  worst=" << format_full(suite.worst)
            << "  tolerance=" << format_full(suite.tolerance) << "\n";
    }
}

} // namespace router
