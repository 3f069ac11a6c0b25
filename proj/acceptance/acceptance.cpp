// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "klein/analysis.hpp"
#include "klein/core.hpp"
#include "klein/dirac.hpp"
#include "klein/kleingordon.hpp"
#include "klein/matcher.hpp"

using namespace klein;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof(buf), f, a);
    return buf;
}

// Every solved state with a wavefunction passes through here; criterion 12
// reports the worst deviation.
struct FluxAudit {
    std::size_t states = 0;
    double worst_flux = 0.0;
    double worst_sum = 0.0;
    std::mt19937_64 rng{7};

    void record(const ScatteringSolution& sol)
    {
        if (!sol.has_wavefunction()) {
            return;
        }
        ++states;
        worst_sum = std::max(worst_sum, std::abs(sol.R + sol.T - 1.0));
        const double inc = flux_of(sol.model, sol.regions[0].basis[0].at(0.0));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t i = 0; i < sol.regions.size(); ++i) {
            const auto& seg = sol.regions[i].segment;
            const double lo = std::isfinite(seg.left) ? seg.left : seg.right - 4.0;
            const double hi = std::isfinite(seg.right) ? seg.right : seg.left + 4.0;
            for (int k = 0; k < 2; ++k) {
                const double x = lo + (hi - lo) * u(rng);
                const double j = region_flux(sol, i, x) / inc;
                worst_flux = std::max(worst_flux, std::abs(j - sol.T));
            }
        }
    }
};

FluxAudit audit;

ScatteringSolution closed(Model model, Geometry geometry, const ParticleSpec& spec, double v0,
                          double a)
{
    ScatteringSolution sol = [&] {
        if (geometry == Geometry::Step) {
            return model == Model::Dirac ? dirac_step_solve(spec, v0) : kg_step_solve(spec, v0);
        }
        return model == Model::Dirac ? dirac_barrier_solve(spec, v0, a)
                                     : kg_barrier_solve(spec, v0, a);
    }();
    audit.record(sol);
    return sol;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * i / (n - 1);
    }
    return v;
}

//---------------------------------------------------------------------------//
Outcome boundedness()
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t n = 100000;
    std::size_t violations = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Model model = i % 2 ? Model::KleinGordon : Model::Dirac;
        const Geometry geometry = (i / 2) % 2 ? Geometry::Barrier : Geometry::Step;
        const double m = std::exp(std::log(0.1) + u(rng) * std::log(100.0));
        const double e = m * (1.0 + std::exp(std::log(1e-3) + u(rng) * std::log(1e4)));
        const double v0 = u(rng) * 5.0 * e;
        const double a = std::exp(std::log(0.01) + u(rng) * std::log(3000.0)) / m;
        const auto spec = ParticleSpec::create(m, e);
        const double R = closed(model, geometry, spec, v0, a).R;
        if (!(R >= 0.0 && R <= 1.0)) {
            ++violations;
        }
        worst = std::max(worst, R);
    }
    return {violations == 0,
            std::to_string(n) + " tuples, " + std::to_string(violations) + " violations, max R "
                + fmt("%.17g", worst)};
}

Outcome oracle_equivalence()
{
    const std::vector<double> widths{0.1, 0.5, 1.0, 2.5, 7.0};
    std::size_t compared = 0;
    std::size_t bad = 0;
    double worst = 0.0;
    for (double e : {1.05, 1.3, 2.0, 3.0, 10.0}) {
        const auto spec = ParticleSpec::create(1.0, e);
        for (double v0 : linspace(0.0, 4.0 * e, 200)) {
            if (classify_regime(e, v0, 1.0).flagged()) {
                continue;
            }
            for (Model model : {Model::Dirac, Model::KleinGordon}) {
                auto check = [&](const ScatteringSolution& sol) {
                    const double num = solve_numeric(sol.profile, spec, model).R;
                    const double diff = std::abs(sol.R - num);
                    const double scale = std::max(std::abs(sol.R), std::abs(num));
                    ++compared;
                    if (diff > 1e-10 * scale + 1e-15) {
                        ++bad;
                    }
                    if (scale > 1e-5) {
                        worst = std::max(worst, diff / scale);
                    }
                };
                check(closed(model, Geometry::Step, spec, v0, 0.0));
                for (double a : widths) {
                    check(closed(model, Geometry::Barrier, spec, v0, a));
                }
            }
        }
    }
    return {bad == 0, std::to_string(compared) + " comparisons, " + std::to_string(bad)
                          + " outside 1e-10, worst relative " + fmt("%.2e", worst)};
}

Outcome gap_platform()
{
    std::size_t bad = 0;
    for (double e : {1.3, 3.0}) {
        const auto spec = ParticleSpec::create(1.0, e);
        for (double v0 : linspace(e - 1.0, e + 1.0, 50)) {
            bad += closed(Model::Dirac, Geometry::Step, spec, v0, 0.0).R != 1.0;
            bad += closed(Model::KleinGordon, Geometry::Step, spec, v0, 0.0).R != 1.0;
        }
    }
    return {bad == 0, "200 step solves, " + std::to_string(bad) + " with R != 1"};
}

Outcome alley()
{
    double worst = 0.0;
    double worst_pq = 0.0;
    for (double e : {1.3, 3.0}) {
        const auto spec = ParticleSpec::create(1.0, e);
        const double q = spec.incident_momentum();
        worst_pq = std::max(worst_pq, std::abs(kinematics(e, 2.0 * e, 1.0).momentum - q) / q);
        for (Model model : {Model::Dirac, Model::KleinGordon}) {
            worst = std::max(worst, closed(model, Geometry::Step, spec, 2.0 * e, 0.0).R);
            for (int i = 1; i <= 10; ++i) {
                worst = std::max(worst, closed(model, Geometry::Barrier, spec, 2.0 * e, 0.37 * i).R);
            }
        }
    }
    return {worst < 1e-12 && worst_pq < 1e-14,
            "max R " + fmt("%.3g", worst) + ", |p - q|/q " + fmt("%.3g", worst_pq)};
}

Outcome asymptote(Model model)
{
    Outcome out;
    for (double e : {1.3, 3.0}) {
        const auto spec = ParticleSpec::create(1.0, e);
        const double R = closed(model, Geometry::Step, spec, 1e6, 0.0).R;
        if (model == Model::Dirac) {
            const double ref = dirac_step_limit(spec);
            out.pass = out.pass && std::abs(R - ref) < 1e-5;
            out.detail += "E=" + fmt("%g", e) + ": R " + fmt("%.6f", R) + " limit "
                          + fmt("%.6f", ref) + "; ";
        } else {
            out.pass = out.pass && R > 0.999;
            out.detail += "E=" + fmt("%g", e) + ": R " + fmt("%.7f", R) + "; ";
        }
    }
    return out;
}

Outcome resonances()
{
    double worst_zero = 0.0;
    double worst_peak = 0.0;
    std::size_t solves = 0;
    for (double e : {1.3, 3.0}) {
        const auto spec = ParticleSpec::create(1.0, e);
        const double q = spec.incident_momentum();
        // One height in each propagating range.
        for (double v0 : {0.5 * (e - 1.0), e + 2.5}) {
            const double p = kinematics(e, v0, 1.0).momentum;
            for (int n = 1; n <= 5; ++n) {
                for (Model model : {Model::Dirac, Model::KleinGordon}) {
                    worst_zero = std::max(worst_zero,
                                          closed(model, Geometry::Barrier, spec, v0, n * pi / p).R);
                    ++solves;
                }
                const double R = closed(Model::KleinGordon, Geometry::Barrier, spec, v0,
                                        (n + 0.5) * pi / p).R;
                const double ratio = (p * p - q * q) / (p * p + q * q);
                worst_peak = std::max(worst_peak, std::abs(R - ratio * ratio));
            }
        }
    }
    return {worst_zero < 1e-12 && worst_peak < 1e-12,
            std::to_string(solves) + " resonant solves, max R " + fmt("%.3g", worst_zero)
                + "; KG maxima deviation " + fmt("%.3g", worst_peak)};
}

Outcome exchange_symmetry()
{
    double worst = 0.0;
    for (double e : {1.3, 3.0}) {
        const auto spec = ParticleSpec::create(1.0, e);
        for (int i = 1; i <= 100; ++i) {
            const double v0 = (e - 1.0) * i / 101.0;
            for (Model model : {Model::Dirac, Model::KleinGordon}) {
                const double s1 = closed(model, Geometry::Step, spec, v0, 0.0).R;
                const double s2 = closed(model, Geometry::Step, spec, 2.0 * e - v0, 0.0).R;
                worst = std::max(worst, std::abs(s1 - s2));
                for (double a : {0.7, 2.3}) {
                    const double b1 = closed(model, Geometry::Barrier, spec, v0, a).R;
                    const double b2 = closed(model, Geometry::Barrier, spec, 2.0 * e - v0, a).R;
                    worst = std::max(worst, std::abs(b1 - b2));
                }
            }
        }
    }
    return {worst < 1e-12, "max |R(V0) - R(2E - V0)| " + fmt("%.3g", worst)};
}

Outcome massless()
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double e = 0.1 + 9.9 * u(rng);
        const double v0 = 4.0 * e * u(rng);
        const double a = 0.05 + 10.0 * u(rng);
        const auto spec = ParticleSpec::create(0.0, e);
        worst = std::max(worst, closed(Model::Dirac, Geometry::Step, spec, v0, 0.0).R);
        worst = std::max(worst, closed(Model::Dirac, Geometry::Barrier, spec, v0, a).R);

        const int regions = 3 + static_cast<int>(u(rng) * 6);
        std::vector<double> edges;
        std::vector<double> heights{0.0};
        double x = 0.0;
        for (int k = 1; k < regions; ++k) {
            edges.push_back(x);
            x += 0.05 + 3.0 * u(rng);
            heights.push_back(4.0 * e * u(rng));
        }
        const auto profile = PotentialProfile::piecewise(edges, heights);
        const auto sol = transfer_matrix_solve(profile, spec, Model::Dirac);
        audit.record(sol);
        worst = std::max(worst, sol.R);
    }
    return {worst < 1e-12, "1000 tuples (step, barrier, 3-8 region profile), max R "
                               + fmt("%.3g", worst)};
}

Outcome jump_behavior()
{
    Outcome out;
    for (double e : {1.3, 3.0}) {
        const auto spec = ParticleSpec::create(1.0, e);
        const double ka0 = std::atanh(0.5);
        const double start = jump_gap(spec, ka0);
        // ka from the coth = 2 width to 20 on a fine grid.
        double previous = start;
        double rise_at = -1.0;
        double peak = start;
        double peak_ka = ka0;
        const int steps = 4000;
        for (int i = 1; i <= steps; ++i) {
            const double ka = ka0 + (20.0 - ka0) * i / steps;
            const double j = jump_gap(spec, ka);
            if (j > previous && rise_at < 0.0) {
                rise_at = ka;
            }
            if (j > peak) {
                peak = j;
                peak_ka = ka;
            }
            previous = j;
        }
        const bool differs = start > 1e-6;
        const bool vanishes = previous < 1e-8;
        const bool monotone = rise_at < 0.0;
        out.pass = out.pass && differs && vanishes && monotone;
        out.detail += "E=" + fmt("%g", e) + ": jump " + fmt("%.4g", start) + " at coth=2";
        if (!monotone) {
            out.detail += ", rises from ka " + fmt("%.3f", rise_at) + " to peak "
                          + fmt("%.4g", peak) + " at ka " + fmt("%.3f", peak_ka);
        }
        out.detail += ", " + fmt("%.2e", previous) + " at ka=20; ";

        // Klein-Gordon: approach V0 = E from both sides.
        const double a = ka0;
        const double at = closed(Model::KleinGordon, Geometry::Barrier, spec, e, a).R;
        const double lo = closed(Model::KleinGordon, Geometry::Barrier, spec, std::nextafter(e, 0.0), a).R;
        const double hi = closed(Model::KleinGordon, Geometry::Barrier, spec, std::nextafter(e, 10.0), a).R;
        const double kg_gap = std::max(std::abs(at - lo), std::abs(at - hi));
        out.pass = out.pass && kg_gap < 1e-12;
        out.detail += "KG barrier at V0=E " + fmt("%.2g", kg_gap) + "; ";
    }
    return out;
}

// phi' = i (E - V) chi, chi' = i (E - V) phi, classical RK4.
std::array<cplx, 2> rk4(const std::function<double(double)>& v, double e, double x0, double x1,
                        std::array<cplx, 2> y, int steps)
{
    using namespace std::complex_literals;
    auto f = [&](double x, const std::array<cplx, 2>& s) {
        const cplx d = 1i * (e - v(x));
        return std::array<cplx, 2>{d * s[1], d * s[0]};
    };
    const double h = (x1 - x0) / steps;
    double x = x0;
    for (int i = 0; i < steps; ++i) {
        auto k1 = f(x, y);
        auto k2 = f(x + h / 2, {y[0] + h / 2 * k1[0], y[1] + h / 2 * k1[1]});
        auto k3 = f(x + h / 2, {y[0] + h / 2 * k2[0], y[1] + h / 2 * k2[1]});
        auto k4 = f(x + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
        for (int c = 0; c < 2; ++c) {
            y[c] += h / 6 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        x += h;
    }
    return y;
}

Outcome phase_integral()
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> coef(5);
    for (auto& c : coef) {
        c = u(rng);
    }
    const std::vector<std::pair<std::string, std::function<double(double)>>> potentials{
        {"linear", [](double x) { return 0.8 * x; }},
        {"polynomial", [coef](double x) {
             double s = 0.0;
             for (auto it = coef.rbegin(); it != coef.rend(); ++it) {
                 s = s * x + *it;
             }
             return s;
         }}};

    double worst = 0.0;
    double worst_amp = 0.0;
    const double e = 2.0;
    const double a = -1.0;
    for (const auto& [name, v] : potentials) {
        const SmoothPotential pot{v, -1.0, 3.0};
        for (int sign : {1, -1}) {
            for (double x : linspace(-1.0, 3.0, 9)) {
                const auto got = massless_phase_solution(pot, e, a, x, 1.0, sign);
                const int steps = std::max(1, static_cast<int>(std::abs(x - a) / 2e-4));
                const auto ref = rk4(v, e, a, x, {1.0, static_cast<double>(sign)}, steps);
                worst = std::max({worst, std::abs(got.upper - ref[0]), std::abs(got.lower - ref[1])});
                worst_amp = std::max(worst_amp, std::abs(std::abs(got.upper) - 1.0));
            }
        }
    }
    return {worst < 1e-8 && worst_amp < 1e-12,
            "max deviation from RK4 " + fmt("%.2e", worst) + ", amplitude drift "
                + fmt("%.2e", worst_amp)};
}

Outcome flux_conservation()
{
    return {audit.worst_flux < 1e-10 && audit.worst_sum < 1e-12,
            std::to_string(audit.states) + " states, max flux deviation "
                + fmt("%.2e", audit.worst_flux) + ", max |R + T - 1| "
                + fmt("%.2e", audit.worst_sum)};
}

Outcome small_mass()
{
    const auto spec = ParticleSpec::create(1.0, 100.0);
    const double bound = small_mass_bound(spec);
    double worst = 0.0;
    for (int i = 1; i < 2000; ++i) {
        const double v0 = 200.0 + (10000.0 - 200.0) * i / 2000.0;
        worst = std::max(worst, closed(Model::Dirac, Geometry::Step, spec, v0, 0.0).R);
        for (double a : {0.05, 0.3, 1.0, 4.0}) {
            worst = std::max(worst, closed(Model::Dirac, Geometry::Barrier, spec, v0, a).R);
        }
    }
    return {worst < bound, "max R " + fmt("%.3e", worst) + " vs bound " + fmt("%.1e", bound)};
}

}  // namespace

int main()
{
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries{
        {1, "boundedness", boundedness},
        {2, "oracle equivalence", oracle_equivalence},
        {3, "gap platform", gap_platform},
        {4, "transmission alley", alley},
        {5, "Dirac step asymptote", [] { return asymptote(Model::Dirac); }},
        {6, "Klein-Gordon step asymptote", [] { return asymptote(Model::KleinGordon); }},
        {7, "resonances and maxima", resonances},
        {8, "exchange symmetry", exchange_symmetry},
        {9, "massless transmission", massless},
        {10, "jump at V0 = E", jump_behavior},
        {11, "massless phase integral", phase_integral},
        {12, "flux conservation", flux_conservation},
        {13, "small-mass bound", small_mass},
    };

    int failed = 0;
    for (const auto& entry : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = entry.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d %s: %s(%.2fs)\n", o.pass ? "PASS" : "FAIL", entry.id, entry.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(entries.size()) - failed,
                entries.size());
    return failed == 0 ? 0 : 1;
}
