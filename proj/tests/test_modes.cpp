#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "router/errors.hpp"
#include "router/modes.hpp"
#include "router/params.hpp"

using namespace router;

namespace
{

constexpr double kPi = std::numbers::pi;

double uniform(std::mt19937_64 &rng, double lo, double hi)
{
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SystemParams random_params(std::mt19937_64 &rng)
{
    SystemParams p;
    p.xi_a = 1.0;
    p.xi_b = uniform(rng, 0.4, 2.5);
    p.delta_a = uniform(rng, -1.0, 1.0);
    p.delta_b = uniform(rng, -3.0, 3.0);
    p.g_a = uniform(rng, 0.0, 1.0);
    p.g_b = uniform(rng, 0.0, 1.0);
    p.omega = uniform(rng, 0.0, 1.5);
    return p;
}

} // namespace

TEST_CASE("dispersion energy at reference points")
{
    SystemParams p;
    CHECK(dispersion_energy(Channel::A, kPi / 2.0, p) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(dispersion_energy(Channel::A, 2.0 * kPi / 3.0, p) == doctest::Approx(1.0).epsilon(1e-14));

    p.delta_b = 4.5;
    CHECK(dispersion_energy(Channel::B, 0.0, p) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("resolve_mode classifies band centre, gap and edge")
{
    SystemParams p;
    const ModeResolution centre = resolve_mode(Channel::A, 0.0, p);
    REQUIRE(centre.kind == ModeKind::Propagating);
    CHECK(centre.k == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(centre.group_velocity == doctest::Approx(2.0).epsilon(1e-15));

    p.delta_b = 4.5;
    const ModeResolution gap = resolve_mode(Channel::B, 0.0, p);
    REQUIRE(gap.kind == ModeKind::Evanescent);
    CHECK(gap.parity == 0);
    // acosh(2.25), refined independently
    CHECK(gap.kappa == doctest::Approx(1.4505745138225802).epsilon(1e-14));
    CHECK(std::cosh(gap.kappa) == doctest::Approx(2.25).epsilon(1e-14));
    CHECK(gap.group_velocity == 0.0);
    CHECK(gap.complex_wavenumber.imag() > 0.0);

    const ModeResolution edge = resolve_mode(Channel::A, 2.0, p);
    CHECK(edge.kind == ModeKind::BandEdge);
    CHECK(edge.parity == 1);
}

TEST_CASE("mode_sine follows the fixed evanescent convention")
{
    SystemParams p;
    p.delta_b = 4.5;
    const ModeResolution below = resolve_mode(Channel::B, 0.0, p);
    const std::complex<double> s_below = mode_sine(below);
    CHECK(s_below.real() == 0.0);
    CHECK(s_below.imag() == doctest::Approx(std::sinh(below.kappa)).epsilon(1e-15));

    const ModeResolution above = resolve_mode(Channel::B, 7.5, p);
    REQUIRE(above.kind == ModeKind::Evanescent);
    CHECK(above.parity == 1);
    const std::complex<double> s_above = mode_sine(above);
    CHECK(s_above.imag() == doctest::Approx(-std::sinh(above.kappa)).epsilon(1e-15));

    // agrees with the complex sine evaluated at n pi + i kappa
    for (const ModeResolution &mode : {below, above})
    {
        const std::complex<double> reference = std::sin(mode.complex_wavenumber);
        CHECK(std::abs(mode_sine(mode) - reference) < 1e-12);
    }
}

TEST_CASE("dispersion round-trips through resolve_mode")
{
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 400; ++i)
    {
        const SystemParams p = random_params(rng);
        const Channel c = (rng() % 2 == 0) ? Channel::A : Channel::B;
        const double xi = hopping(p, c);
        const double delta = detuning(p, c);

        const double in_band = uniform(rng, delta - 2.0 * xi + 1e-6, delta + 2.0 * xi - 1e-6);
        const ModeResolution mode = resolve_mode(c, in_band, p);
        REQUIRE(mode.kind == ModeKind::Propagating);
        CHECK(std::abs(dispersion_energy(c, mode.k, p) - in_band) < 1e-12);
        CHECK(mode.k > 0.0);
        CHECK(mode.k < kPi);
        CHECK(mode.group_velocity > 0.0);

        const double outside = delta + (rng() % 2 == 0 ? 1.0 : -1.0) * uniform(rng, 2.0 * xi + 1e-4, 8.0 * xi);
        const ModeResolution gap = resolve_mode(c, outside, p);
        REQUIRE(gap.kind == ModeKind::Evanescent);
        // complex cosine reproduces the energy: delta - 2 xi cos(n pi + i kappa) = E
        const std::complex<double> reproduced =
            delta - 2.0 * xi * std::cos(gap.complex_wavenumber);
        CHECK(std::abs(reproduced - std::complex<double>(outside, 0.0)) < 1e-11);
        CHECK((outside < delta ? 0 : 1) == gap.parity);
    }
}

TEST_CASE("resolve_mode is even about the channel centre up to the parity swap")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i)
    {
        const SystemParams p = random_params(rng);
        const double offset = uniform(rng, 1e-3, 4.0 * p.xi_b);
        const ModeResolution up = resolve_mode(Channel::B, p.delta_b + offset, p);
        const ModeResolution down = resolve_mode(Channel::B, p.delta_b - offset, p);
        REQUIRE(up.kind == down.kind);
        if (up.kind == ModeKind::Evanescent)
        {
            CHECK(up.kappa == doctest::Approx(down.kappa).epsilon(1e-14));
            CHECK(up.parity == 1 - down.parity);
        }
        else if (up.kind == ModeKind::Propagating)
        {
            CHECK(up.group_velocity == doctest::Approx(down.group_velocity).epsilon(1e-12));
            CHECK(up.k == doctest::Approx(kPi - down.k).epsilon(1e-12));
        }
    }
}

TEST_CASE("parameter text round-trips at full precision")
{
    SystemParams p;
    p.xi_b = 1.0 / 3.0;
    p.delta_a = -0.1234567890123456789;
    p.delta_b = 4.5;
    p.g_a = 0.5000000000000001;
    p.g_b = 1e-17;
    p.omega = 1.2;

    const std::string text = format_params(p);
    std::istringstream in(text);
    const SystemParams parsed = parse_params_text(in);
    CHECK(parsed == p);
    CHECK(format_params(parsed) == text);
}

TEST_CASE("parameter parsing rejects malformed input")
{
    std::istringstream bad_key("nu = 1.0\n");
    CHECK_THROWS_AS(parse_params_text(bad_key), UsageError);

    std::istringstream bad_value("g_a = fast\n");
    CHECK_THROWS_AS(parse_params_text(bad_value), UsageError);

    std::istringstream no_equals("g_a 0.5\n");
    CHECK_THROWS_AS(parse_params_text(no_equals), UsageError);

    std::istringstream with_comment("# comment\n g_b = 0.25 # inline\n\n");
    CHECK(parse_params_text(with_comment).g_b == 0.25);
}

TEST_CASE("parameter validation")
{
    SystemParams p;
    p.xi_b = 0.0;
    CHECK_THROWS_AS(check_params(p), InvalidParams);
    p.xi_b = 1.0;
    p.g_a = -0.1;
    CHECK_THROWS_AS(check_params(p), InvalidParams);
    p.g_a = 0.1;
    p.delta_b = std::nan("");
    CHECK_THROWS_AS(check_params(p), InvalidParams);
}
