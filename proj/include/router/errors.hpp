#ifndef ROUTER_ERRORS_HPP
#define ROUTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace router
{

// Base class for all domain errors; the CLI maps these to exit code 1.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public Error
{
public:
    using Error::Error;
};

// |E^2 - Omega^2| <= pole_tol: the effective potentials diverge and the
// caller must use the dressed-state limit formulas instead.
class PoleAtDressedState : public Error
{
public:
    using Error::Error;
};

// Energy within edge_tol of a band edge (group velocity zero).
class BandEdgeDegenerate : public Error
{
public:
    using Error::Error;
};

// Incidence requested from a channel whose mode is not propagating.
class IncidentChannelClosed : public Error
{
public:
    using Error::Error;
};

// Bound-state residual requested for an energy inside the channel-b band.
class InsideBand : public Error
{
public:
    using Error::Error;
};

class SingularSystem : public Error
{
public:
    SingularSystem(const std::string &what, double condition_estimate)
        : Error(what), condition_estimate(condition_estimate)
    {
    }
    double condition_estimate = 0.0;
};

class EmptyGrid : public Error
{
public:
    using Error::Error;
};

class NormDriftExceeded : public Error
{
public:
    using Error::Error;
};

class WallContamination : public Error
{
public:
    using Error::Error;
};

// Bad command line / config file input; the CLI maps this to exit code 2.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace router

#endif // ROUTER_ERRORS_HPP
