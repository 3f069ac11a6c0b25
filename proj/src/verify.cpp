#include "klein/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "klein/analysis.hpp"
#include "klein/dirac.hpp"
#include "klein/kleingordon.hpp"
#include "klein/matcher.hpp"

namespace klein {

namespace {

using namespace std::complex_literals;
constexpr double pi = std::numbers::pi;

struct Draw {
    Model model;
    Geometry geometry;
    double energy;
    double mass;
    double v0;
    double width;
};

std::string describe(const Draw& d)
{
    char buf[256];
    std::snprintf(buf, sizeof(buf), "model=%s geometry=%s E=%.17g m=%.17g V0=%.17g a=%.17g",
                  to_string(d.model), to_string(d.geometry), d.energy, d.mass, d.v0, d.width);
    return buf;
}

std::string describe(const PotentialProfile& p, const ParticleSpec& s, Model model)
{
    std::string out = std::string("model=") + to_string(model);
    char buf[96];
    std::snprintf(buf, sizeof(buf), " E=%.17g m=%.17g segments:", s.energy, s.mass_energy);
    out += buf;
    for (const auto& seg : p.segments()) {
        std::snprintf(buf, sizeof(buf), " (%.17g,%.17g]=%.17g", seg.left, seg.right, seg.height);
        out += buf;
    }
    return out;
}

class Suite {
  public:
    explicit Suite(const VerifyOptions& opt) : opt_(opt), rng_(opt.seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    double log_uniform(double lo, double hi)
    {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    Model model() { return integer(0, 1) ? Model::KleinGordon : Model::Dirac; }
    Geometry geometry() { return integer(0, 1) ? Geometry::Barrier : Geometry::Step; }

    Draw draw()
    {
        Draw d;
        d.model = model();
        d.geometry = geometry();
        d.mass = 1.0;
        d.energy = uniform(1.02, 10.0);
        d.v0 = uniform(0.0, 4.0 * d.energy);
        d.width = log_uniform(0.05, 20.0);
        return d;
    }

    // Solution with the closed forms (or the injected mutant).
    ScatteringSolution closed_form(const Draw& d) const
    {
        const auto spec = ParticleSpec::create(d.mass, d.energy);
        if (d.geometry == Geometry::Step) {
            return d.model == Model::Dirac ? dirac_step_solve(spec, d.v0) : kg_step_solve(spec, d.v0);
        }
        auto sol = d.model == Model::Dirac ? dirac_barrier_solve(spec, d.v0, d.width)
                                           : kg_barrier_solve(spec, d.v0, d.width);
        if (opt_.fault == "sign-flip" && d.model == Model::Dirac
            && classify_regime(d.energy, d.v0, d.mass).regime == Regime::PropagatingPositive) {
            const double z2 = (d.energy - d.mass) * (d.energy + d.mass);
            const double p = kinematics(d.energy, d.v0, d.mass).momentum;
            const double s = std::sin(p * d.width);
            const double c = std::cos(p * d.width);
            const cplx b = -d.v0 * d.mass * s
                           / ((z2 + d.energy * d.v0) * s + 1i * p * std::sqrt(z2) * c);
            sol.reflection = b;
            sol.R = std::norm(b);
            sol.T = 1.0 - sol.R;
        }
        return sol;
    }

    PotentialProfile random_profile(const ParticleSpec& spec, std::size_t regions)
    {
        std::vector<double> edges;
        std::vector<double> heights{0.0};
        double x = 0.0;
        for (std::size_t i = 1; i < regions; ++i) {
            edges.push_back(x);
            x += log_uniform(0.05, 3.0);
        }
        for (std::size_t i = 1; i + 1 < regions; ++i) {
            heights.push_back(uniform(0.0, 4.0 * spec.energy));
        }
        double last = uniform(0.0, 4.0 * spec.energy);
        if (std::abs(spec.energy - last) <= spec.mass_energy) {
            last = 0.0;
        }
        heights.push_back(last);
        return PotentialProfile::piecewise(edges, heights);
    }

    using Check = std::function<void(PropertyResult&)>;

    void run(const std::string& name, std::size_t reps, const Check& body)
    {
        PropertyResult r;
        r.name = name;
        for (std::size_t i = 0; i < reps; ++i) {
            body(r);
        }
        results_.push_back(r);
    }

    static void expect(PropertyResult& r, bool ok, const std::string& what)
    {
        ++r.checks;
        if (!ok) {
            if (r.failures == 0) {
                r.first_failure = what;
            }
            ++r.failures;
        }
    }

    // Runs body, turning exceptions into failures.
    template <class F>
    static void guarded(PropertyResult& r, const std::string& what, F&& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            expect(r, false, what + " threw: " + e.what());
        }
    }

    std::vector<PropertyResult> take() { return std::move(results_); }

    const VerifyOptions& opt_;

  private:
    std::mt19937_64 rng_;
    std::vector<PropertyResult> results_;
};

bool close_rel(double a, double b, double rel, double floor)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + floor;
}

}  // namespace

bool VerifyReport::passed() const
{
    for (const auto& p : properties) {
        if (!p.passed()) {
            return false;
        }
    }
    return !properties.empty();
}

std::vector<std::string> property_names()
{
    return {"boundedness",     "oracle-equivalence", "unitarity",      "transfer-equivalence",
            "exchange-symmetry", "gap-platform",     "alley",          "resonance",
            "flux-conservation", "continuity",       "massless",       "small-mass-bound"};
}

VerifyReport run_property_suite(const VerifyOptions& options)
{
    if (options.samples == 0) {
        throw InvalidInput("samples must be at least 1");
    }
    if (!options.fault.empty() && options.fault != "sign-flip") {
        throw InvalidInput("unknown fault: " + options.fault);
    }
    Suite s(options);
    const std::size_t n = options.samples;

    s.run("boundedness", n, [&](PropertyResult& r) {
        Draw d = s.draw();
        for (Model m : {Model::Dirac, Model::KleinGordon}) {
            for (Geometry g : {Geometry::Step, Geometry::Barrier}) {
                d.model = m;
                d.geometry = g;
                Suite::guarded(r, describe(d), [&] {
                    const double R = s.closed_form(d).R;
                    Suite::expect(r, R >= 0.0 && R <= 1.0, describe(d));
                });
            }
        }
    });

    s.run("oracle-equivalence", n, [&](PropertyResult& r) {
        const Draw d = s.draw();
        if (classify_regime(d.energy, d.v0, d.mass).flagged()) {
            return;
        }
        Suite::guarded(r, describe(d), [&] {
            const auto sol = s.closed_form(d);
            const auto num = solve_numeric(sol.profile, sol.particle, d.model);
            Suite::expect(r, close_rel(sol.R, num.R, 1e-10, 1e-15), describe(d));
        });
    });

    s.run("unitarity", n, [&](PropertyResult& r) {
        const Model model = s.model();
        const auto spec = ParticleSpec::create(1.0, s.uniform(1.02, 10.0));
        const auto profile = s.random_profile(spec, static_cast<std::size_t>(s.integer(2, 6)));
        Suite::guarded(r, describe(profile, spec, model), [&] {
            const auto sol = solve_numeric(profile, spec, model);
            Suite::expect(r, std::abs(sol.R + sol.T - 1.0) < 1e-10, describe(profile, spec, model));
        });
    });

    s.run("transfer-equivalence", n, [&](PropertyResult& r) {
        const Model model = s.model();
        const auto spec = ParticleSpec::create(1.0, s.uniform(1.02, 10.0));
        const auto profile = s.random_profile(spec, static_cast<std::size_t>(s.integer(2, 6)));
        Suite::guarded(r, describe(profile, spec, model), [&] {
            const auto a = solve_numeric(profile, spec, model);
            const auto b = transfer_matrix_solve(profile, spec, model);
            const bool ok = std::abs(a.R - b.R) < 1e-10 && std::abs(a.T - b.T) < 1e-10
                            && std::abs(a.reflection - b.reflection) < 1e-10;
            Suite::expect(r, ok, describe(profile, spec, model));
        });
    });

    s.run("exchange-symmetry", n, [&](PropertyResult& r) {
        Draw d = s.draw();
        d.v0 = s.uniform(0.0, d.energy - d.mass);
        if (d.v0 == 0.0) {
            return;
        }
        Draw mirror = d;
        mirror.v0 = 2.0 * d.energy - d.v0;
        Suite::guarded(r, describe(d), [&] {
            const double a = s.closed_form(d).R;
            const double b = s.closed_form(mirror).R;
            Suite::expect(r, std::abs(a - b) < 1e-12, describe(d));
        });
    });

    s.run("gap-platform", n, [&](PropertyResult& r) {
        const double e = s.uniform(1.02, 10.0);
        const double v0 = s.uniform(e - 1.0, e + 1.0);
        const auto spec = ParticleSpec::create(1.0, e);
        const Draw d{Model::Dirac, Geometry::Step, e, 1.0, v0, 0.0};
        Suite::guarded(r, describe(d), [&] {
            Suite::expect(r, dirac_step_solve(spec, v0).R == 1.0, describe(d));
            Suite::expect(r, kg_step_solve(spec, v0).R == 1.0, describe(d));
        });
    });

    s.run("alley", n, [&](PropertyResult& r) {
        Draw d = s.draw();
        d.v0 = 2.0 * d.energy;
        Suite::guarded(r, describe(d), [&] {
            Suite::expect(r, s.closed_form(d).R < 1e-12, describe(d));
        });
    });

    s.run("resonance", n, [&](PropertyResult& r) {
        Draw d = s.draw();
        d.geometry = Geometry::Barrier;
        const double gap = d.mass + s.uniform(0.05, 3.0 * d.energy);
        d.v0 = s.integer(0, 1) && d.energy - gap > 0.0 ? d.energy - gap : d.energy + gap;
        if (d.v0 < 0.0) {
            d.v0 = d.energy + gap;
        }
        const double p = kinematics(d.energy, d.v0, d.mass).momentum;
        d.width = s.integer(1, 5) * pi / p;
        Suite::guarded(r, describe(d), [&] {
            Suite::expect(r, s.closed_form(d).R < 1e-12, describe(d));
        });
    });

    s.run("flux-conservation", n, [&](PropertyResult& r) {
        const Draw d = s.draw();
        Suite::guarded(r, describe(d), [&] {
            const auto sol = s.closed_form(d);
            if (!sol.has_wavefunction()) {
                return;
            }
            const double inc = flux_of(d.model, sol.regions[0].basis[0].at(0.0));
            bool ok = std::abs(sol.R + sol.T - 1.0) < 1e-12;
            for (std::size_t i = 0; i < sol.regions.size(); ++i) {
                const auto& seg = sol.regions[i].segment;
                for (int k = 0; k < 3; ++k) {
                    const double lo = std::isfinite(seg.left) ? seg.left : seg.right - 5.0;
                    const double hi = std::isfinite(seg.right) ? seg.right : seg.left + 5.0;
                    const double x = s.uniform(lo, hi);
                    const double j = region_flux(sol, i, x) / inc;
                    ok = ok && std::abs(j - sol.T) < 1e-10;
                }
            }
            Suite::expect(r, ok, describe(d));
        });
    });

    s.run("continuity", n, [&](PropertyResult& r) {
        const Draw d = s.draw();
        Suite::guarded(r, describe(d), [&] {
            const auto sol = s.closed_form(d);
            if (!sol.has_wavefunction()) {
                return;
            }
            Suite::expect(r, continuity_residual(sol) < 1e-12, describe(d));
        });
    });

    s.run("massless", n, [&](PropertyResult& r) {
        const double e = s.log_uniform(0.1, 10.0);
        const auto spec = ParticleSpec::create(0.0, e);
        const double v0 = s.uniform(0.0, 4.0 * e);
        const double a = s.log_uniform(0.05, 20.0);
        const Draw d{Model::Dirac, Geometry::Barrier, e, 0.0, v0, a};
        Suite::guarded(r, describe(d), [&] {
            Suite::expect(r, dirac_step_solve(spec, v0).R < 1e-12, describe(d));
            Suite::expect(r, dirac_barrier_solve(spec, v0, a).R < 1e-12, describe(d));
            const auto profile = s.random_profile(spec, static_cast<std::size_t>(s.integer(3, 8)));
            Suite::expect(r, transfer_matrix_solve(profile, spec, Model::Dirac).R < 1e-12,
                          describe(profile, spec, Model::Dirac));
        });
    });

    s.run("small-mass-bound", n, [&](PropertyResult& r) {
        const double e = 100.0;
        const auto spec = ParticleSpec::create(1.0, e);
        const double bound = small_mass_bound(spec);
        const double v0 = s.uniform(2.0 * e, 100.0 * e);
        const double a = s.log_uniform(0.05, 20.0);
        const Draw d{Model::Dirac, Geometry::Barrier, e, 1.0, v0, a};
        if (v0 == 2.0 * e) {
            return;
        }
        Suite::guarded(r, describe(d), [&] {
            Suite::expect(r, dirac_step_solve(spec, v0).R < bound, describe(d));
            Suite::expect(r, dirac_barrier_solve(spec, v0, a).R < bound, describe(d));
        });
    });

    return {s.take()};
}

}  // namespace klein
