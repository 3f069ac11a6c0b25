#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "klein/analysis.hpp"
#include "klein/dirac.hpp"
#include "klein/kleingordon.hpp"
#include "klein/matcher.hpp"
#include "ode_oracle.hpp"

using namespace klein;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("width rules")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    const auto rule = WidthRule::figure_convention();
    CHECK(1.0 / std::tanh(rule.gap_width(spec)) == Approx(2.0).epsilon(1e-14));
    const double q = spec.incident_momentum();
    CHECK(1.0 / std::tan(q * rule.propagating_width(spec)) == Approx(0.5).epsilon(1e-14));
    CHECK(rule.width_at(spec, 1.0) == rule.gap_width(spec));
    CHECK(rule.width_at(spec, 5.0) == rule.propagating_width(spec));
    CHECK(WidthRule::fixed(0.7).width_at(spec, 1.0) == 0.7);
    CHECK_THROWS_AS(WidthRule::fixed(-1.0), InvalidInput);
}

TEST_CASE("make_grid")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    const auto g = make_grid(spec, 0.0, 10.0, 11);
    CHECK(std::is_sorted(g.begin(), g.end()));
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 10.0);
    for (double x : {1.3 - 1.0, 1.3, 1.3 + 1.0, 2.0 * 1.3}) {
        CHECK(std::count(g.begin(), g.end(), x) == 1);
    }
    CHECK(make_grid(spec, 0.0, 10.0, 11, false).size() == 11);
    CHECK_THROWS_AS(make_grid(spec, 0.0, 10.0, 1), InvalidInput);
    CHECK_THROWS_AS(make_grid(spec, 2.0, 1.0, 5), InvalidInput);
}

TEST_CASE("sweep annotations and ordering")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    const auto grid = make_grid(spec, 0.0, 10.0, 201);
    const auto curve = sweep(Model::Dirac, Geometry::Step, spec, std::nullopt, grid);
    REQUIRE(curve.samples.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(curve.samples[i].v0 == grid[i]);
        CHECK(curve.samples[i].R >= 0.0);
        CHECK(curve.samples[i].R <= 1.0);
        if (grid[i] >= 0.3 && grid[i] <= 2.3) {
            CHECK(curve.samples[i].R == 1.0);
        }
    }
    CHECK(curve.annotations.gap.lower == Approx(0.3));
    CHECK(curve.annotations.gap.upper == Approx(2.3));
    REQUIRE(curve.annotations.alleys.size() == 1);
    CHECK(curve.annotations.alleys[0] == 2.6);

    // Barrier at V0 = E: two rows, lower then upper.
    const auto barrier = sweep(Model::Dirac, Geometry::Barrier, spec, WidthRule::figure_convention(), grid);
    CHECK(barrier.samples.size() == grid.size() + 1);
    REQUIRE(barrier.annotations.jump);
    const auto it = std::find_if(barrier.samples.begin(), barrier.samples.end(),
                                 [](const SweepSample& s) { return s.annotation == "jump-"; });
    REQUIRE(it != barrier.samples.end());
    CHECK((it + 1)->annotation == "jump+");
    CHECK(it->R == Approx(barrier.annotations.jump->below));
    CHECK((it + 1)->R == Approx(barrier.annotations.jump->above));
    CHECK(barrier.annotations.jump_magnitude > 0.1);
}

TEST_CASE("sweep is deterministic across thread counts")
{
    const auto spec = ParticleSpec::create(1.0, 3.0);
    const auto grid = make_grid(spec, 0.0, 10.0, 501);
    const auto one = sweep(Model::KleinGordon, Geometry::Barrier, spec, WidthRule::fixed(0.8), grid, 1);
    const auto many = sweep(Model::KleinGordon, Geometry::Barrier, spec, WidthRule::fixed(0.8), grid, 7);
    CHECK(to_csv(one) == to_csv(many));
}

TEST_CASE("massless sweep is all zeros")
{
    const auto spec = ParticleSpec::create(0.0, 1.0);
    const auto grid = make_grid(spec, 0.0, 5.0, 101);
    for (Geometry g : {Geometry::Step, Geometry::Barrier}) {
        const auto curve = sweep(Model::Dirac, g, spec, WidthRule::fixed(1.3), grid);
        CHECK(curve.annotations.all_transmitting);
        for (const auto& s : curve.samples) {
            CHECK(s.R < 1e-14);
        }
    }
}

TEST_CASE("total transmissions")
{
    const auto s3 = ParticleSpec::create(1.0, 3.0);
    const auto step = find_total_transmissions(Model::Dirac, Geometry::Step, s3, std::nullopt, 0.0, 10.0);
    REQUIRE(step.v0.size() == 1);
    CHECK(step.v0[0] == 6.0);
    CHECK_FALSE(step.all);

    const auto barrier = find_total_transmissions(Model::KleinGordon, Geometry::Barrier, s3, 1.5, 0.0, 30.0);
    CHECK(barrier.v0.size() > 3);
    for (double v0 : barrier.v0) {
        CHECK(kg_barrier_solve(s3, v0, 1.5).R < 1e-12);
    }

    const auto massless = find_total_transmissions(Model::Dirac, Geometry::Barrier,
                                                   ParticleSpec::create(0.0, 2.0), 1.0, 0.0, 10.0);
    CHECK(massless.all);
}

TEST_CASE("resonant widths")
{
    const auto spec = ParticleSpec::create(1.0, 2.0);
    const double p = kinematics(2.0, 0.5, 1.0).momentum;
    const auto widths = resonant_widths(Model::Dirac, spec, 0.5, 4);
    REQUIRE(widths.size() == 4);
    for (int n = 1; n <= 4; ++n) {
        CHECK(widths[n - 1] == Approx(n * pi / p).epsilon(1e-14));
    }
    CHECK_THROWS_AS(resonant_widths(Model::Dirac, spec, 2.0, 3), InvalidInput);
}

TEST_CASE("resonance amplitudes match the matcher")
{
    const auto spec = ParticleSpec::create(1.0, 2.0);
    const double q = spec.incident_momentum();
    for (double v0 : {0.5, 4.2}) {
        const double p = kinematics(2.0, v0, 1.0).momentum;
        for (int n = 1; n <= 3; ++n) {
            const double a = n * pi / p;
            const auto amp = resonance_amplitudes(spec, v0, a);
            const auto num = solve_numeric(PotentialProfile::barrier(v0, a), spec, Model::Dirac);
            CHECK(std::abs(amp.reflection) < 1e-14);
            CHECK(std::abs(amp.transmission) == Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(amp.transmission - *num.transmission) < 1e-10);
            CHECK(std::abs(amp.first - num.interior[0]) < 1e-10);
            CHECK(std::abs(amp.second - num.interior[1]) < 1e-10);
        }
        if (v0 > 3.0) {
            // At the alley the second amplitude vanishes.
            const double pa = kinematics(2.0, 4.0, 1.0).momentum;
            const auto alley = resonance_amplitudes(spec, 4.0, pi / pa);
            CHECK(std::abs(alley.first - q / 3.0) < 1e-14);
            CHECK(std::abs(alley.second) < 1e-14);
        }
    }
    CHECK_THROWS_AS(resonance_amplitudes(spec, 0.5, 1.0), InvalidInput);
}

TEST_CASE("jump gap")
{
    CHECK(jump_gap(ParticleSpec::create(0.0, 1.3), 1.0) == 0.0);
    const auto spec = ParticleSpec::create(1.0, 1.3);
    CHECK(jump_gap(spec, std::atanh(0.5)) > 0.1);
    CHECK(jump_gap(spec, 20.0) < 1e-8);
}

TEST_CASE("small mass bound")
{
    CHECK(small_mass_bound(ParticleSpec::create(0.0, 1.0)) == 0.0);
    CHECK(small_mass_bound(ParticleSpec::create(1.0, 100.0)) == Approx(1e-4).epsilon(1e-14));
    const auto s13 = ParticleSpec::create(1.0, 1.3);
    CHECK(small_mass_bound(s13) == Approx(0.5917).epsilon(1e-4));
    CHECK(dirac_step_limit(s13) < small_mass_bound(s13));

    const auto s100 = ParticleSpec::create(1.0, 100.0);
    for (int i = 1; i < 500; ++i) {
        const double v0 = 200.0 + (1e6 - 200.0) * i / 500.0;
        CHECK(dirac_step_solve(s100, v0).R < 1e-4);
        CHECK(dirac_barrier_solve(s100, v0, 0.37).R < 1e-4);
    }
}

TEST_CASE("massless phase integral: closed forms")
{
    const double e = 1.7;
    const double b = 0.6;
    const SmoothPotential linear{[b](double x) { return b * x; }, -2.0, 4.0};
    for (double x : {-2.0, 0.0, 1.0, 3.5}) {
        const auto r = massless_phase_solution(linear, e, 0.0, x);
        const auto expect = std::exp(std::complex<double>(0, e * x - 0.5 * b * x * x));
        CHECK(std::abs(r.upper - expect) < 1e-12);
        CHECK(std::abs(r.lower - expect) < 1e-12);
        const auto left = massless_phase_solution(linear, e, 0.0, x, 1.0, -1);
        CHECK(std::abs(left.upper - std::conj(expect)) < 1e-12);
        CHECK(std::abs(left.lower + std::conj(expect)) < 1e-12);
    }
    const SmoothPotential zero{[](double) { return 0.0; }, -5.0, 5.0};
    const auto plane = massless_phase_solution(zero, 2.0, 0.0, 3.0);
    CHECK(std::abs(plane.upper - std::exp(std::complex<double>(0, 6.0))) < 1e-13);

    CHECK_THROWS_AS(massless_phase_solution(linear, e, 0.0, 9.0), InvalidInput);
    CHECK_THROWS_AS(massless_phase_solution(linear, e, 0.0, 1.0, 1.0, 2), InvalidInput);
}

TEST_CASE("massless phase integral against the ODE oracle")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<double> c(6);
        for (auto& x : c) {
            x = u(rng);
        }
        auto v = [c](double x) {
            double s = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) {
                s = s * x + *it;
            }
            return s;
        };
        const SmoothPotential pot{v, -1.5, 1.5};
        const double e = 1.0 + 2.0 * std::abs(u(rng));
        const std::complex<double> phi_a(0.3, -0.8);
        for (int sign : {1, -1}) {
            for (double x : {-1.5, -0.2, 0.9, 1.5}) {
                const auto got = massless_phase_solution(pot, e, -0.7, x, phi_a, sign);
                const int steps = std::max(1, static_cast<int>(std::abs(x + 0.7) / 1e-4));
                const auto ref = integrate_massless(v, e, -0.7, x, {phi_a, static_cast<double>(sign) * phi_a}, steps);
                CHECK(std::abs(got.upper - ref[0]) < 1e-8);
                CHECK(std::abs(got.lower - ref[1]) < 1e-8);
                CHECK(std::abs(std::abs(got.upper) - std::abs(phi_a)) < 1e-12);
            }
        }
    }
}

TEST_CASE("CSV round trip")
{
    const auto spec = ParticleSpec::create(1.0, 1.3);
    const auto grid = make_grid(spec, 0.0, 10.0, 57);
    const auto curve = sweep(Model::Dirac, Geometry::Barrier, spec, WidthRule::figure_convention(), grid);
    const std::string text = to_csv(curve);
    CHECK(text.rfind("V0,R,regime,annotation\n", 0) == 0);
    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == curve.samples.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].v0 == curve.samples[i].v0);
        CHECK(std::abs(rows[i].R - curve.samples[i].R) <= 1e-15);
        CHECK(rows[i].regime == to_string(curve.samples[i].regime));
        CHECK(rows[i].annotation == curve.samples[i].annotation);
    }
    CHECK_THROWS_AS(parse_csv("x,y\n1,2\n"), InvalidInput);
    CHECK_THROWS_AS(write_csv(curve, "/nonexistent-dir/out.csv"), IoError);
}
