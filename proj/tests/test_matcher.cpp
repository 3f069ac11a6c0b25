#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "klein/core.hpp"
#include "klein/dirac.hpp"
#include "klein/kleingordon.hpp"
#include "klein/matcher.hpp"

using namespace klein;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

// Both rows of the Dirac equation for a column c e^{kappa x}:
//   -i kappa c0 = (d + m) c1,  -i kappa c1 = (d - m) c0
double dirac_residual(const BasisFunction& w, double d, double m)
{
    const std::complex<double> i(0, 1);
    const auto& c = w.components;
    return std::max(std::abs(-i * w.exponent * c[0] - (d + m) * c[1]),
                    std::abs(-i * w.exponent * c[1] - (d - m) * c[0]));
}
}  // namespace

TEST_CASE("build_basis columns")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    const double q = spec.incident_momentum();

    const auto free = build_basis({-inf, 0.0, 0.0}, spec, Model::Dirac);
    CHECK(std::abs(free.waves[0].components[0] - q) < 1e-15);
    CHECK(std::abs(free.waves[0].components[1] - 0.3) < 1e-15);
    CHECK(free.waves[0].exponent == std::complex<double>(0, q));
    CHECK(dirac_residual(free.waves[0], 1.3, 1.0) < 1e-14);
    CHECK(dirac_residual(free.waves[1], 1.3, 1.0) < 1e-14);

    const auto klein = build_basis({0.0, inf, 3.0}, spec, Model::Dirac);
    const double p = klein.kinematics.momentum;
    CHECK(std::abs(klein.waves[0].components[0] - (-1.3 + 3.0 + 1.0)) < 1e-15);
    CHECK(std::abs(klein.waves[0].components[1] - p) < 1e-15);

    for (double v : {0.5, 1.3, 2.0}) {
        const auto gap = build_basis({0.0, 1.0, v}, spec, Model::Dirac);
        CHECK(gap.kinematics.wave == Wave::Evanescent);
        CHECK(dirac_residual(gap.waves[0], 1.3 - v, 1.0) < 1e-14);
        CHECK(dirac_residual(gap.waves[1], 1.3 - v, 1.0) < 1e-14);
    }

    const auto kg = build_basis({0.0, 2.0, 1.0}, spec, Model::KleinGordon);
    const double k = kg.kinematics.momentum;
    CHECK(kg.waves[0].exponent == std::complex<double>(k, 0));
    CHECK(kg.waves[1].exponent == std::complex<double>(-k, 0));
    CHECK(kg.waves[0].components[1] == std::complex<double>(k, 0));
}

TEST_CASE("assemble_system shape")
{
    const auto spec = ParticleSpec::create(1.0, 2.0);
    const auto sys = assemble_system(PotentialProfile::barrier(1.5, 0.5), spec, Model::Dirac);
    CHECK(sys.matrix.rows() == 4);
    CHECK(sys.matrix.cols() == 4);
    CHECK(sys.rhs.size() == 4);
    CHECK(sys.regions.size() == 3);
}

TEST_CASE("single region: nothing to reflect")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    const auto profile = PotentialProfile::piecewise({}, {0.0});
    for (Model model : {Model::Dirac, Model::KleinGordon}) {
        const auto sol = solve_numeric(profile, spec, model);
        CHECK(std::abs(sol.reflection) == 0.0);
        REQUIRE(sol.transmission);
        CHECK(std::abs(*sol.transmission - 1.0) < 1e-15);
        CHECK(sol.T == Approx(1.0));
    }
}

TEST_CASE("solve_numeric matches closed forms on a barrier grid")
{
    int compared = 0;
    for (int ie = 0; ie < 20; ++ie) {
        const double e = 1.02 + 0.25 * ie;
        const auto spec = ParticleSpec::create(1.0, e);
        for (int iv = 0; iv < 40; ++iv) {
            const double v0 = 0.01 + 4.0 * e * iv / 40.0;
            if (classify_regime(e, v0, 1.0).flagged()) {
                continue;
            }
            for (double a : {0.1, 0.6, 1.7, 4.0, 9.0}) {
                for (Model model : {Model::Dirac, Model::KleinGordon}) {
                    const auto closed = model == Model::Dirac ? dirac_barrier_solve(spec, v0, a)
                                                              : kg_barrier_solve(spec, v0, a);
                    const auto num = solve_numeric(closed.profile, spec, model);
                    CHECK(std::abs(closed.R - num.R) <= 1e-10 * closed.R + 1e-15);
                    ++compared;
                }
            }
        }
    }
    CHECK(compared > 7000);
}

TEST_CASE("wide gap barrier recovers the step")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    for (double v0 : {0.6, 1.0, 1.3, 1.9}) {
        const double k = kinematics(1.3, v0, 1.0).momentum;
        for (Model model : {Model::Dirac, Model::KleinGordon}) {
            const auto num = solve_numeric(PotentialProfile::barrier(v0, 10.0 / k), spec, model);
            CHECK(std::abs(num.R - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("gap edge makes the dense system singular")
{
    const auto spec = ParticleSpec::create(1.0, 3.0);
    CHECK_THROWS_AS(solve_numeric(PotentialProfile::barrier(2.0, 1.0), spec, Model::Dirac),
                    SingularSystem);
    CHECK_THROWS_AS(solve_numeric(PotentialProfile::barrier(4.0, 1.0), spec, Model::KleinGordon),
                    SingularSystem);
}

TEST_CASE("profile asymptotics are checked")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    // Incident region inside the gap.
    CHECK_THROWS_AS(solve_numeric(PotentialProfile::piecewise({0.0}, {0.5, 0.0}), spec, Model::Dirac),
                    InvalidInput);
}

TEST_CASE("transfer solve agrees with the dense solve")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double e = 1.05 + 5.0 * u(rng);
        const auto spec = ParticleSpec::create(1.0, e);
        const int regions = 2 + static_cast<int>(u(rng) * 8);
        std::vector<double> edges;
        std::vector<double> heights{0.0};
        double x = 0.0;
        for (int i = 1; i < regions; ++i) {
            edges.push_back(x);
            x += 0.05 + 2.0 * u(rng);
            heights.push_back(i + 1 == regions ? 0.0 : 4.0 * e * u(rng));
        }
        const auto profile = PotentialProfile::piecewise(edges, heights);
        for (Model model : {Model::Dirac, Model::KleinGordon}) {
            const auto a = solve_numeric(profile, spec, model);
            const auto b = transfer_matrix_solve(profile, spec, model);
            CHECK(std::abs(a.reflection - b.reflection) < 1e-10);
            CHECK(std::abs(a.R + a.T - 1.0) < 1e-10);
            CHECK(continuity_residual(b) < 1e-9);
        }
    }
}

TEST_CASE("transfer solve: three-region barrier and flat profiles")
{
    const auto spec = ParticleSpec::create(1.0, 2.0);
    const auto barrier = PotentialProfile::barrier(3.5, 1.1);
    CHECK(transfer_matrix_solve(barrier, spec, Model::Dirac).R
          == Approx(dirac_barrier_solve(spec, 3.5, 1.1).R).epsilon(1e-12));

    const auto flat = PotentialProfile::piecewise({0.0, 1.0, 2.5, 4.0}, {0.5, 0.5, 0.5, 0.5, 0.5});
    for (Model model : {Model::Dirac, Model::KleinGordon}) {
        CHECK(transfer_matrix_solve(flat, spec, model).R < 1e-28);
        CHECK(solve_numeric(flat, spec, model).R < 1e-28);
    }
}

TEST_CASE("double barrier at resonance is transparent")
{
    const auto spec = ParticleSpec::create(1.0, 1.8);
    for (double v0 : {0.3, 4.5}) {
        const double p = kinematics(1.8, v0, 1.0).momentum;
        const double a = pi / p;
        for (double gap : {0.4, 1.37, 5.0}) {
            const auto profile =
                PotentialProfile::piecewise({0.0, a, a + gap, 2 * a + gap}, {0.0, v0, 0.0, v0, 0.0});
            for (Model model : {Model::Dirac, Model::KleinGordon}) {
                CHECK(transfer_matrix_solve(profile, spec, model).R < 1e-20);
                CHECK(solve_numeric(profile, spec, model).R < 1e-20);
            }
        }
    }
}

TEST_CASE("thick gap barrier does not overflow")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    for (Model model : {Model::Dirac, Model::KleinGordon}) {
        const auto profile = PotentialProfile::barrier(1.1, 900.0);
        const auto dense = solve_numeric(profile, spec, model);
        const auto transfer = transfer_matrix_solve(profile, spec, model);
        CHECK(std::isfinite(dense.R));
        CHECK(dense.R == Approx(1.0).epsilon(1e-14));
        CHECK(transfer.R == Approx(1.0).epsilon(1e-14));
        CHECK(std::isfinite(std::abs(*transfer.transmission)));
    }
}

TEST_CASE("many regions: dense solve delegates and stays consistent")
{
    const auto spec = ParticleSpec::create(1.0, 2.0);
    std::vector<double> edges;
    std::vector<double> heights{0.0};
    for (int i = 0; i < 60; ++i) {
        edges.push_back(0.3 * i);
        heights.push_back(i % 2 ? 0.0 : 0.6);
    }
    heights.back() = 0.0;
    const auto profile = PotentialProfile::piecewise(edges, heights);
    const auto a = solve_numeric(profile, spec, Model::Dirac);
    const auto b = transfer_matrix_solve(profile, spec, Model::Dirac);
    CHECK(std::abs(a.reflection - b.reflection) < 1e-10);
    CHECK(a.R + a.T == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("continuity residual detects corrupted amplitudes")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    auto sol = dirac_barrier_solve(spec, 0.1, 1.0);
    CHECK(continuity_residual(sol) < 1e-12);
    sol.regions[0].amplitudes[1] += 0.1;
    CHECK(continuity_residual(sol) > 0.01);

    // KG: a change to psi' alone is caught too.
    auto kg = kg_barrier_solve(spec, 0.1, 1.0);
    CHECK(continuity_residual(kg) < 1e-12);
    kg.regions[1].basis[0].components[1] += 0.1;
    CHECK(continuity_residual(kg) > 1e-3);
}

TEST_CASE("region flux is constant within and across regions")
{
    const auto spec = ParticleSpec::create(1.0, 2.0);
    const auto profile = PotentialProfile::piecewise({0.0, 0.8, 1.5}, {0.0, 1.6, 5.0, 0.3});
    for (Model model : {Model::Dirac, Model::KleinGordon}) {
        const auto sol = solve_numeric(profile, spec, model);
        const double j0 = region_flux(sol, 0, -1.0);
        for (std::size_t i = 0; i < 4; ++i) {
            const double x[] = {-3.0, 0.4, 1.2, 7.0};
            CHECK(region_flux(sol, i, x[i]) == Approx(j0).epsilon(1e-10));
        }
    }
}
