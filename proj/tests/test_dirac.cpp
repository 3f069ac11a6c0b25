#include <doctest.h>

#include <cmath>
#include <numbers>

#include "klein/core.hpp"
#include "klein/dirac.hpp"
#include "klein/matcher.hpp"

using namespace klein;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("Dirac step examples")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    CHECK(dirac_step_solve(spec, 0.0).R == Approx(0.0).epsilon(1e-15));
    CHECK(dirac_step_solve(spec, 2.6).R < 1e-28);
    CHECK(dirac_step_solve(spec, 1.0).R == 1.0);

    const double beta = 0.9 / std::sqrt(1.61);
    const double expected = std::pow((beta - 1) / (beta + 1), 2);
    const auto klein = dirac_step_solve(spec, 3.0);
    CHECK(klein.R == Approx(expected).epsilon(1e-14));
    CHECK(klein.R == Approx(0.0289).epsilon(1e-2));
    CHECK(klein.R == Approx(solve_numeric(klein.profile, spec, Model::Dirac).R).epsilon(1e-12));
}

TEST_CASE("Dirac step gap edges are limit values")
{
    const auto spec = ParticleSpec::create(1.0, 3.0);
    for (double v0 : {2.0, 4.0}) {
        const auto sol = dirac_step_solve(spec, v0);
        CHECK(sol.R == 1.0);
        CHECK(sol.limit_value);
        CHECK_FALSE(sol.has_wavefunction());
        CHECK_THROWS_AS(dirac_wavefunction(sol, 0.5), InvalidInput);
    }
}

TEST_CASE("Dirac step complex amplitude matches the matcher in every range")
{
    const auto spec = ParticleSpec::create(1.0, 1.7);
    for (double v0 : {0.3, 0.9, 1.5, 2.2, 3.0, 7.0}) {
        const auto sol = dirac_step_solve(spec, v0);
        const auto num = solve_numeric(sol.profile, spec, Model::Dirac);
        CHECK(std::abs(sol.reflection - num.reflection) < 1e-12);
        CHECK(continuity_residual(sol) < 1e-12);
    }
}

TEST_CASE("Dirac step limit")
{
    CHECK(dirac_step_limit(ParticleSpec::create(1.0, 1.3)) == Approx(0.220286).epsilon(1e-4));
    CHECK(dirac_step_limit(ParticleSpec::create(1.0, 3.0)) == Approx(0.029437).epsilon(1e-4));
    CHECK(dirac_step_limit(ParticleSpec::create(0.0, 2.0)) == 0.0);
    for (double e : {1.3, 3.0}) {
        const auto spec = ParticleSpec::create(1.0, e);
        CHECK(std::abs(dirac_step_solve(spec, 1e6).R - dirac_step_limit(spec)) < 1e-5);
    }
}

TEST_CASE("Dirac barrier examples")
{
    const auto spec = ParticleSpec::create(1.0, 2.0);
    const double v0 = 0.4;
    const double p = kinematics(2.0, v0, 1.0).momentum;
    for (int n = 1; n <= 5; ++n) {
        CHECK(dirac_barrier_solve(spec, v0, n * pi / p).R < 1e-28);
    }
    for (double a : {0.01, 1.0, 5.0}) {
        CHECK(dirac_barrier_solve(spec, 1.0, a).R == 1.0);
        CHECK(dirac_barrier_solve(spec, 3.0, a).R == 1.0);
    }
    CHECK(dirac_barrier_solve(spec, 5.0, 1e-9).R < 1e-15);

    const auto s13 = ParticleSpec::create(1.0, 1.3);
    const double k = kinematics(1.3, 1.0, 1.0).momentum;
    CHECK(dirac_barrier_solve(s13, 1.0, 30.0 / k).R == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Dirac barrier agrees with the matcher off boundary points")
{
    for (double e : {1.1, 2.5}) {
        const auto spec = ParticleSpec::create(1.0, e);
        for (double v0 : {0.05, 0.5 * (e - 1.0), e - 0.5, e + 0.5, e + 1.7, 2.0 * e, 4.0 * e}) {
            for (double a : {0.2, 1.3, 6.0}) {
                const auto sol = dirac_barrier_solve(spec, v0, a);
                const auto num = solve_numeric(sol.profile, spec, Model::Dirac);
                CHECK(std::abs(sol.reflection - num.reflection) < 1e-11);
                CHECK(std::abs(*sol.transmission - *num.transmission) < 1e-11);
                CHECK(continuity_residual(sol) < 1e-12);
            }
        }
    }
}

TEST_CASE("Dirac barrier at V0 = E carries both one-sided values")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    const double a = std::atanh(0.5);
    const auto sol = dirac_barrier_solve(spec, 1.3, a);
    REQUIRE(sol.one_sided);
    CHECK(sol.limit_value);
    CHECK(sol.R == sol.one_sided->below);
    CHECK(sol.one_sided->below != Approx(sol.one_sided->above));

    const auto sides = dirac_barrier_endpoints(spec, a);
    const double z2 = 0.69;
    // coth(ka) = 2 written out
    const double below = std::pow(1.69, 2) / (std::pow(1 - z2, 2) + 16 * z2);
    const double above = 1.69 / (1 + 4 * z2);
    CHECK(sides.below == Approx(below).epsilon(1e-14));
    CHECK(sides.above == Approx(above).epsilon(1e-14));

    const auto massless = dirac_barrier_endpoints(ParticleSpec::create(0.0, 1.0), 1.0);
    CHECK(massless.below == 0.0);
    CHECK(massless.above == 0.0);
}

TEST_CASE("Dirac barrier limit")
{
    const auto s3 = ParticleSpec::create(1.0, 3.0);
    CHECK(dirac_barrier_limit(s3, pi / 2) == Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(dirac_barrier_limit(s3, pi / 4) == Approx(1.0 / 17.0).epsilon(1e-14));
    CHECK(dirac_barrier_limit(ParticleSpec::create(0.0, 3.0), 0.4) == 0.0);
    CHECK_THROWS_AS(dirac_barrier_limit(s3, 0.0), InvalidInput);
    CHECK_THROWS_AS(dirac_barrier_limit(s3, 2 * pi), InvalidInput);

    // A very high barrier whose phase is pi/4 mod pi approaches the limit.
    const double v0 = 1e6;
    const double p = kinematics(3.0, v0, 1.0).momentum;
    const double a = (1000 * pi + pi / 4) / p;
    CHECK(dirac_barrier_solve(s3, v0, a).R == Approx(1.0 / 17.0).epsilon(1e-4));

    for (double phase : {0.3, 1.0, 2.0, 2.9}) {
        CHECK(dirac_barrier_limit(s3, phase) <= 1.0 / 9.0 + 1e-15);
    }
}

TEST_CASE("Dirac wavefunction and current")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    const auto sol = dirac_step_solve(spec, 0.4);
    const auto left = dirac_wavefunction(sol, -1e-13);
    const auto right = dirac_wavefunction(sol, 1e-13);
    CHECK(std::abs(left.upper - right.upper) < 1e-11);
    CHECK(std::abs(left.lower - right.lower) < 1e-11);

    const double q = spec.incident_momentum();
    const SpinorValue incident{q, 0.3};
    CHECK(dirac_current(incident) > 0.0);

    // Flux is the same on both sides and equals T times the incident flux.
    const double inc = dirac_current(incident);
    CHECK(dirac_current(dirac_wavefunction(sol, -2.0)) / inc == Approx(sol.T).epsilon(1e-12));
    CHECK(dirac_current(dirac_wavefunction(sol, 3.0)) / inc == Approx(sol.T).epsilon(1e-12));
}

TEST_CASE("massless Dirac particle is always transmitted")
{
    const auto spec = ParticleSpec::create(0.0, 1.5);
    for (double v0 : {0.0, 0.7, 1.5, 3.0, 9.0}) {
        CHECK(dirac_step_solve(spec, v0).R < 1e-14);
        CHECK(dirac_barrier_solve(spec, v0, 2.0).R < 1e-14);
    }
}

TEST_CASE("no NaN one ulp away from the gap edges")
{
    for (double e : {1.3, 3.0, 1.05}) {
        const auto spec = ParticleSpec::create(1.0, e);
        for (double edge : {e - 1.0, e + 1.0, e}) {
            double v = edge;
            for (int i = 0; i < 4; ++i) {
                v = std::nextafter(v, 0.0);
            }
            for (int i = 0; i < 8; ++i, v = std::nextafter(v, 100.0)) {
                const double s = dirac_step_solve(spec, v).R;
                const double b = dirac_barrier_solve(spec, v, 0.8).R;
                CHECK((s >= 0.0 && s <= 1.0));
                CHECK((b >= 0.0 && b <= 1.0));
            }
        }
    }
}

TEST_CASE("thick gap barriers: R never rounds above 1, T keeps its size")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    for (double v0 : {0.7, 1.0, 1.6, 2.1}) {
        const double k = kinematics(1.3, v0, 1.0).momentum;
        double previous = 1.0;
        for (double ka = 5.0; ka <= 60.0; ka += 0.25) {
            const auto sol = dirac_barrier_solve(spec, v0, ka / k);
            CHECK(sol.R <= 1.0);
            CHECK(sol.T > 0.0);
            CHECK(sol.T < previous);
            previous = sol.T;
        }
        // T decays like e^{-2ka}.
        const double t20 = dirac_barrier_solve(spec, v0, 20.0 / k).T;
        const double t21 = dirac_barrier_solve(spec, v0, 21.0 / k).T;
        CHECK(t21 / t20 == Approx(std::exp(-2.0)).epsilon(1e-8));
    }
}
