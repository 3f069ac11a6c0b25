#include "klein/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "klein/core.hpp"

namespace klein {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

const char* to_string(Model model)
{
    return model == Model::Dirac ? "dirac" : "kg";
}

const char* to_string(Geometry geometry)
{
    switch (geometry) {
        case Geometry::Step: return "step";
        case Geometry::Barrier: return "barrier";
        case Geometry::General: return "profile";
    }
    return "?";
}

const char* to_string(Regime regime)
{
    switch (regime) {
        case Regime::PropagatingPositive: return "propagating-positive";
        case Regime::EvanescentBelowE: return "evanescent-below-e";
        case Regime::EvanescentAboveE: return "evanescent-above-e";
        case Regime::PropagatingNegative: return "propagating-negative";
    }
    return "?";
}

const char* to_string(BoundaryFlag flag)
{
    switch (flag) {
        case BoundaryFlag::None: return "";
        case BoundaryFlag::LowerGapEdge: return "gap-lower";
        case BoundaryFlag::AtEnergy: return "at-energy";
        case BoundaryFlag::UpperGapEdge: return "gap-upper";
    }
    return "?";
}

//---------------------------------------------------------------------------//
ParticleSpec ParticleSpec::create(double mass_energy, double energy)
{
    ParticleSpec spec{mass_energy, energy};
    validate(spec);
    return spec;
}

double ParticleSpec::incident_momentum() const
{
    return std::sqrt((energy - mass_energy) * (energy + mass_energy));
}

void validate(const ParticleSpec& spec)
{
    if (!std::isfinite(spec.mass_energy) || !std::isfinite(spec.energy)) {
        throw InvalidInput("mass and energy must be finite");
    }
    if (spec.mass_energy < 0.0) {
        throw InvalidInput("mass energy must be non-negative");
    }
    if (!(spec.energy > spec.mass_energy)) {
        throw InvalidInput("incident energy inside gap (need E > mc^2)");
    }
}

//---------------------------------------------------------------------------//
PotentialProfile::PotentialProfile(std::vector<Segment> segments, Geometry geometry)
    : segments_(std::move(segments)), geometry_(geometry)
{
}

PotentialProfile PotentialProfile::step(double height)
{
    if (!std::isfinite(height)) {
        throw InvalidInput("step height must be finite");
    }
    return PotentialProfile({{-inf, 0.0, 0.0}, {0.0, inf, height}}, Geometry::Step);
}

PotentialProfile PotentialProfile::barrier(double height, double width)
{
    if (!std::isfinite(height)) {
        throw InvalidInput("barrier height must be finite");
    }
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw InvalidInput("barrier width must be positive and finite");
    }
    return PotentialProfile(
        {{-inf, 0.0, 0.0}, {0.0, width, height}, {width, inf, 0.0}},
        Geometry::Barrier);
}

PotentialProfile PotentialProfile::piecewise(std::vector<double> edges,
                                             std::vector<double> heights)
{
    if (heights.empty() || heights.size() != edges.size() + 1) {
        throw InvalidInput("profile needs one more height than interior edges");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!std::isfinite(edges[i])) {
            throw InvalidInput("profile edges must be finite");
        }
        if (i > 0 && !(edges[i] > edges[i - 1])) {
            throw InvalidInput("profile edges must be strictly increasing");
        }
    }
    for (double h : heights) {
        if (!std::isfinite(h)) {
            throw InvalidInput("profile heights must be finite");
        }
    }
    std::vector<Segment> segments;
    segments.reserve(heights.size());
    for (std::size_t i = 0; i < heights.size(); ++i) {
        double left = i == 0 ? -inf : edges[i - 1];
        double right = i == edges.size() ? inf : edges[i];
        segments.push_back({left, right, heights[i]});
    }
    return PotentialProfile(std::move(segments), Geometry::General);
}

std::vector<double> PotentialProfile::interfaces() const
{
    std::vector<double> result;
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        result.push_back(segments_[i].right);
    }
    return result;
}

std::size_t PotentialProfile::region_index(double x) const
{
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        if (x <= segments_[i].right) {
            return i;
        }
    }
    return segments_.size() - 1;
}

double PotentialProfile::height_at(double x) const
{
    return segments_[region_index(x)].height;
}

//---------------------------------------------------------------------------//
std::array<cplx, 2> BasisFunction::at(double x) const
{
    const cplx factor = std::exp(exponent * (x - reference));
    return {components[0] * factor, components[1] * factor};
}

std::array<cplx, 2> RegionState::field(double x) const
{
    std::array<cplx, 2> result{};
    for (std::size_t j = 0; j < 2; ++j) {
        if (amplitudes[j] == cplx{}) {
            continue;  // unused growing wave in a semi-infinite region
        }
        auto f = basis[j].at(x);
        result[0] += amplitudes[j] * f[0];
        result[1] += amplitudes[j] * f[1];
    }
    return result;
}

std::vector<RegionKinematics> ScatteringSolution::kinematics() const
{
    std::vector<RegionKinematics> result;
    result.reserve(regions.size());
    for (const auto& r : regions) {
        result.push_back(r.kinematics);
    }
    return result;
}

RegimeClass ScatteringSolution::interior_regime() const
{
    if (regions.size() < 2) {
        return regions.empty() ? RegimeClass{Regime::PropagatingPositive}
                               : regions.front().regime;
    }
    return regions[1].regime;
}

std::array<cplx, 2> field_in_region(const ScatteringSolution& sol,
                                    std::size_t region, double x)
{
    if (!sol.has_wavefunction()) {
        throw InvalidInput("solution carries a limit value only; no wavefunction");
    }
    return sol.regions.at(region).field(x);
}

std::array<cplx, 2> field_at(const ScatteringSolution& sol, double x)
{
    return field_in_region(sol, sol.profile.region_index(x), x);
}

double flux_of(Model model, const std::array<cplx, 2>& c)
{
    if (model == Model::Dirac) {
        return 2.0 * std::real(std::conj(c[0]) * c[1]);
    }
    return std::imag(std::conj(c[0]) * c[1]);
}

}  // namespace klein
