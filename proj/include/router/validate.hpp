#ifndef ROUTER_VALIDATE_HPP
#define ROUTER_VALIDATE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "router/params.hpp"

namespace router
{

struct ValidationOptions
{
    std::uint64_t seed = 42;
    int samples = 200;
    int n_half = 24; // lattice size used by the oracle comparisons
};

struct ValidationRow
{
    SystemParams params;
    double energy = 0.0;
    std::string param_hash; // FNV-1a over the formatted parameter text
    double max_amp_diff = 0.0;
    double reduction_residual = 0.0;
    double conservation_err = 0.0;
};

struct SuiteResult
{
    std::string name;
    int checked = 0;
    double worst = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationReport
{
    std::vector<ValidationRow> rows;
    std::vector<SuiteResult> suites;
    bool all_pass() const;
};

// Randomized consistency suites: closed form vs lattice oracle, reduced-
// equation residual, flux conservation, and the bound-state / transmission-
// zero correspondence. Deterministic for a fixed seed.
ValidationReport run_validation(const ValidationOptions &options);

// Header: E,param_hash,max_amp_diff,reduction_residual,conservation_err.
void write_validation_csv(std::ostream &out, const ValidationReport &report);
void write_validation_summary(std::ostream &out, const ValidationReport &report);

} // namespace router

#endif // ROUTER_VALIDATE_HPP
