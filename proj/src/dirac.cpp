#include "klein/dirac.hpp"

#include <cmath>
#include <limits>

#include "detail/cramer.hpp"
#include "detail/fraction.hpp"
#include "klein/core.hpp"

namespace klein {

namespace {

using namespace std::complex_literals;

constexpr double eps = std::numeric_limits<double>::epsilon();

// Spinor columns of one region. Propagating pairs are (e^{+ipx}, e^{-ipx});
// evanescent pairs are (e^{+kx}, e^{-kx}).
std::array<BasisFunction, 2> spinor_columns(const ParticleSpec& spec,
                                            const Segment& seg,
                                            const RegimeClass& regime,
                                            const RegionKinematics& kin)
{
    const double m = spec.mass_energy;
    const double d = spec.energy - seg.height;
    const double p = kin.momentum;
    // Growing waves are referenced at the right edge; in a semi-infinite region
    // they never carry amplitude, so the left edge serves.
    const double right = std::isfinite(seg.right) ? seg.right : seg.left;
    const double left = std::isfinite(seg.left) ? seg.left : 0.0;

    switch (regime.regime) {
        case Regime::PropagatingPositive:
            return {BasisFunction{{p, d - m}, 1i * p, 0.0},
                    BasisFunction{{-p, d - m}, -1i * p, 0.0}};
        case Regime::PropagatingNegative:
            return {BasisFunction{{-d + m, p}, 1i * p, 0.0},
                    BasisFunction{{-d + m, -p}, -1i * p, 0.0}};
        case Regime::EvanescentBelowE:
            return {BasisFunction{{-1i * p, d - m}, p, right},
                    BasisFunction{{1i * p, d - m}, -p, left}};
        case Regime::EvanescentAboveE:
            return {BasisFunction{{d + m, -1i * p}, p, right},
                    BasisFunction{{d + m, 1i * p}, -p, left}};
    }
    return {};
}

RegionState make_region(const ParticleSpec& spec, const Segment& seg)
{
    RegionState state;
    state.segment = seg;
    state.regime = classify_regime(spec.energy, seg.height, spec.mass_energy);
    state.kinematics = kinematics(spec.energy, seg.height, spec.mass_energy);
    return state;
}

std::vector<RegionState> bare_regions(const ParticleSpec& spec,
                                      const PotentialProfile& profile)
{
    std::vector<RegionState> regions;
    for (const auto& seg : profile.segments()) {
        regions.push_back(make_region(spec, seg));
    }
    return regions;
}

void attach_columns(const ParticleSpec& spec, std::vector<RegionState>& regions)
{
    for (auto& r : regions) {
        r.basis = spinor_columns(spec, r.segment, r.regime, r.kinematics);
    }
}

void require_width(double width)
{
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw InvalidInput("barrier width must be positive and finite");
    }
}

void set_limit(ScatteringSolution& sol, cplx reflection, double r)
{
    sol.reflection = reflection;
    sol.R = r;
    sol.T = 1.0 - r;
    sol.limit_value = true;
}

}  // namespace

//---------------------------------------------------------------------------//
ScatteringSolution dirac_step_solve(const ParticleSpec& spec, double v0)
{
    validate(spec);
    ScatteringSolution sol{Model::Dirac, spec, PotentialProfile::step(v0)};
    sol.regions = bare_regions(spec, sol.profile);

    const double m = spec.mass_energy;
    const double e = spec.energy;
    const double q = spec.incident_momentum();
    const RegimeClass regime = sol.regions[1].regime;
    const double p = sol.regions[1].kinematics.momentum;

    if (m == 0.0 && regime.flagged()) {
        set_limit(sol, 0.0, 0.0);
        return sol;
    }
    if (regime.gap_edge()) {
        set_limit(sol, -1.0, 1.0);
        return sol;
    }

    cplx b;
    bool total = false;
    switch (regime.regime) {
        case Regime::PropagatingPositive: {
            // alpha = (1 + B) / (1 - B)
            const double alpha = (q / p) * (e - v0 - m) / (e - m);
            b = (alpha - 1.0) / (alpha + 1.0);
            break;
        }
        case Regime::PropagatingNegative: {
            // beta = (1 - B) / (1 + B)
            const double beta = std::sqrt((e - m) * (v0 - e + m) / ((e + m) * (v0 - e - m)));
            b = (1.0 - beta) / (1.0 + beta);
            break;
        }
        case Regime::EvanescentBelowE:
        case Regime::EvanescentAboveE: {
            // Same ratio on both sides of E for the decaying column.
            const cplx beta = -1i * std::sqrt((e - m) * (e - v0 + m) / ((e + m) * (v0 - e + m)));
            b = (1.0 - beta) / (1.0 + beta);
            total = true;
            break;
        }
    }

    attach_columns(spec, sol.regions);
    auto& outer = sol.regions[0];
    auto& inner = sol.regions[1];
    // Inside the gap the decaying column is the second one.
    const std::size_t carried = total ? 1 : 0;
    const cplx f = detail::step_transmitted(outer.basis[0], outer.basis[1], inner.basis[carried]);

    outer.amplitudes = {1.0, b};
    inner.amplitudes[carried] = f;
    sol.reflection = b;
    sol.interior = {f};
    sol.R = total ? 1.0 : std::norm(b);
    sol.T = 1.0 - sol.R;
    return sol;
}

double dirac_step_limit(const ParticleSpec& spec)
{
    validate(spec);
    const double ratio = spec.mass_energy / (spec.energy + spec.incident_momentum());
    return ratio * ratio;
}

//---------------------------------------------------------------------------//
namespace {

detail::Fraction dirac_barrier_fraction(const ParticleSpec& spec, double v0, double width)
{
    validate(spec);
    require_width(width);
    const double m = spec.mass_energy;
    const double e = spec.energy;
    const double z2 = (e - m) * (e + m);
    const double z = std::sqrt(z2);
    const RegimeClass regime = classify_regime(e, v0, m);
    const RegionKinematics kin = kinematics(e, v0, m);
    const double p = kin.momentum;

    if (m == 0.0) {
        return {0.0, 1.0, 1.0};
    }
    if (regime.gap_edge() || regime.boundary == BoundaryFlag::AtEnergy) {
        throw InvalidInput("barrier reflection requested at a boundary point");
    }

    switch (regime.regime) {
        case Regime::PropagatingPositive: {
            const double s = std::sin(p * width);
            const double c = std::cos(p * width);
            return {-v0 * m * s, (z2 - e * v0) * s + 1i * p * z * c, p * p * z2};
        }
        case Regime::PropagatingNegative: {
            const double s = std::sin(p * width);
            const double c = std::cos(p * width);
            return {(v0 - 2.0 * e) * m * s, (e * v0 - 2.0 * e * e + z2) * s + 1i * p * z * c,
                    p * p * z2};
        }
        case Regime::EvanescentBelowE:
        case Regime::EvanescentAboveE: {
            const double th = std::tanh(p * width);
            return {-v0 * m * th, (z2 - e * v0) * th + 1i * p * z,
                    p * p * z2 * detail::sech_squared(p * width)};
        }
    }
    return {0.0, 1.0, 1.0};
}

}  // namespace

cplx dirac_barrier_reflection(const ParticleSpec& spec, double v0, double width)
{
    return dirac_barrier_fraction(spec, v0, width).value();
}

OneSidedValues dirac_barrier_endpoints(const ParticleSpec& spec, double width)
{
    validate(spec);
    require_width(width);
    const double m = spec.mass_energy;
    if (m == 0.0) {
        return {0.0, 0.0, 0.0, 0.0};
    }
    const double e = spec.energy;
    const double z2 = (e - m) * (e + m);
    const double z = std::sqrt(z2);
    const double coth = 1.0 / std::tanh(m * width);

    const cplx below = -e * e / (m * m - z2 - 2i * m * z * coth);
    const cplx above = e / (m - 1i * z * coth);
    return {below, above, std::norm(below), std::norm(above)};
}

ScatteringSolution dirac_barrier_solve(const ParticleSpec& spec, double v0, double width)
{
    validate(spec);
    require_width(width);
    ScatteringSolution sol{Model::Dirac, spec, PotentialProfile::barrier(v0, width)};
    sol.regions = bare_regions(spec, sol.profile);
    const RegimeClass regime = sol.regions[1].regime;

    if (spec.mass_energy == 0.0 && regime.flagged()) {
        set_limit(sol, 0.0, 0.0);
        return sol;
    }
    if (regime.gap_edge()) {
        set_limit(sol, -1.0, 1.0);
        return sol;
    }
    if (regime.boundary == BoundaryFlag::AtEnergy) {
        const OneSidedValues sides = dirac_barrier_endpoints(spec, width);
        set_limit(sol, sides.below_reflection, sides.below);
        sol.one_sided = sides;
        return sol;
    }

    const auto frac = dirac_barrier_fraction(spec, v0, width);
    const cplx b = frac.value();
    attach_columns(spec, sol.regions);
    auto& first = sol.regions[0];
    auto& inner = sol.regions[1];
    auto& last = sol.regions[2];
    const auto amp = detail::barrier_amplitudes(first.basis[0], first.basis[1], inner.basis,
                                                last.basis[0], width, b);
    first.amplitudes = {1.0, b};
    inner.amplitudes = {amp.first, amp.second};
    last.amplitudes = {amp.transmitted, 0.0};

    sol.reflection = b;
    sol.interior = {amp.first, amp.second};
    sol.transmission = amp.transmitted;
    sol.R = frac.reflectivity();
    sol.T = frac.transmissivity();
    return sol;
}

double dirac_barrier_limit(const ParticleSpec& spec, double phase)
{
    validate(spec);
    const double s = std::sin(phase);
    const double c = std::cos(phase);
    if (!std::isfinite(phase) || std::abs(s) <= 4.0 * eps * std::max(1.0, std::abs(phase))) {
        throw InvalidInput("phase sits on a pole of cot");
    }
    const double m = spec.mass_energy;
    const double e = spec.energy;
    const double z2 = (e - m) * (e + m);
    return m * m * s * s / (e * e * s * s + z2 * c * c);
}

SpinorValue dirac_wavefunction(const ScatteringSolution& sol, double x)
{
    if (sol.model != Model::Dirac) {
        throw InvalidInput("not a Dirac solution");
    }
    const auto f = field_at(sol, x);
    return {f[0], f[1]};
}

double dirac_current(const SpinorValue& psi)
{
    return 2.0 * std::real(std::conj(psi.upper) * psi.lower);
}

}  // namespace klein
