#include "klein/kleingordon.hpp"

#include <cmath>

#include "detail/cramer.hpp"
#include "detail/fraction.hpp"
#include "klein/core.hpp"

namespace klein {

namespace {

using namespace std::complex_literals;

// (psi, psi') columns; same ordering and references as the Dirac module.
std::array<BasisFunction, 2> scalar_columns(const RegionState& r)
{
    const double p = r.kinematics.momentum;
    if (r.kinematics.wave == Wave::Propagating) {
        return {BasisFunction{{1.0, 1i * p}, 1i * p, 0.0},
                BasisFunction{{1.0, -1i * p}, -1i * p, 0.0}};
    }
    const double right = std::isfinite(r.segment.right) ? r.segment.right : r.segment.left;
    const double left = std::isfinite(r.segment.left) ? r.segment.left : 0.0;
    return {BasisFunction{{1.0, p}, p, right}, BasisFunction{{1.0, -p}, -p, left}};
}

std::vector<RegionState> regions_of(const ParticleSpec& spec, const PotentialProfile& profile)
{
    std::vector<RegionState> regions;
    for (const auto& seg : profile.segments()) {
        RegionState r;
        r.segment = seg;
        r.regime = classify_regime(spec.energy, seg.height, spec.mass_energy);
        r.kinematics = kinematics(spec.energy, seg.height, spec.mass_energy);
        regions.push_back(r);
    }
    return regions;
}

void attach(std::vector<RegionState>& regions)
{
    for (auto& r : regions) {
        r.basis = scalar_columns(r);
    }
}

// p = 0 at the gap edges; the exponential pair degenerates there.
bool degenerate(const RegionState& r)
{
    return r.kinematics.momentum == 0.0;
}

void require_width(double width)
{
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw InvalidInput("barrier width must be positive and finite");
    }
}

}  // namespace

Branch kg_branch(double energy, double potential, double /*mass_energy*/)
{
    return energy > potential ? Branch::Positive : Branch::Negative;
}

//---------------------------------------------------------------------------//
ScatteringSolution kg_step_solve(const ParticleSpec& spec, double v0)
{
    validate(spec);
    ScatteringSolution sol{Model::KleinGordon, spec, PotentialProfile::step(v0)};
    sol.regions = regions_of(spec, sol.profile);
    const double q = spec.incident_momentum();
    auto& inner = sol.regions[1];
    const double p = inner.kinematics.momentum;

    if (degenerate(inner)) {
        sol.reflection = 1.0;
        sol.R = 1.0;
        sol.T = 0.0;
        sol.limit_value = true;
        return sol;
    }

    const bool gap = inner.kinematics.wave == Wave::Evanescent;
    const cplx b = gap ? (q - 1i * p) / (q + 1i * p) : cplx((q - p) / (q + p));

    attach(sol.regions);
    auto& outer = sol.regions[0];
    const std::size_t carried = gap ? 1 : 0;
    const cplx f = detail::step_transmitted(outer.basis[0], outer.basis[1], inner.basis[carried]);
    outer.amplitudes = {1.0, b};
    inner.amplitudes[carried] = f;

    sol.reflection = b;
    sol.interior = {f};
    sol.R = gap ? 1.0 : std::norm(b);
    sol.T = 1.0 - sol.R;
    return sol;
}

//---------------------------------------------------------------------------//
namespace {

detail::Fraction kg_barrier_fraction(const ParticleSpec& spec, double v0, double width)
{
    validate(spec);
    require_width(width);
    const double q = spec.incident_momentum();
    const RegionKinematics kin = kinematics(spec.energy, v0, spec.mass_energy);
    const double p = kin.momentum;

    if (p == 0.0) {
        return {q * width, q * width + 2i, 4.0};
    }
    if (kin.wave == Wave::Propagating) {
        const double s = std::sin(p * width);
        const double c = std::cos(p * width);
        return {(q - p) * (q + p) * s, (p * p + q * q) * s + 2i * p * q * c, 4.0 * p * p * q * q};
    }
    const double th = std::tanh(p * width);
    return {(p * p + q * q) * th, (q - p) * (q + p) * th + 2i * p * q,
            4.0 * p * p * q * q * detail::sech_squared(p * width)};
}

}  // namespace

cplx kg_barrier_reflection(const ParticleSpec& spec, double v0, double width)
{
    return kg_barrier_fraction(spec, v0, width).value();
}

ScatteringSolution kg_barrier_solve(const ParticleSpec& spec, double v0, double width)
{
    validate(spec);
    require_width(width);
    ScatteringSolution sol{Model::KleinGordon, spec, PotentialProfile::barrier(v0, width)};
    sol.regions = regions_of(spec, sol.profile);
    const auto frac = kg_barrier_fraction(spec, v0, width);
    const cplx b = frac.value();

    if (degenerate(sol.regions[1])) {
        sol.reflection = b;
        sol.R = frac.reflectivity();
        sol.T = frac.transmissivity();
        sol.limit_value = true;
        return sol;
    }

    attach(sol.regions);
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

ScalarWaveValue kg_wavefunction(const ScatteringSolution& sol, double x)
{
    if (sol.model != Model::KleinGordon) {
        throw InvalidInput("not a Klein-Gordon solution");
    }
    const auto f = field_at(sol, x);
    return {f[0], f[1]};
}

double kg_current(const ScalarWaveValue& psi)
{
    return std::imag(std::conj(psi.value) * psi.derivative);
}

}  // namespace klein
