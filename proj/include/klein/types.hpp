#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace klein {

using cplx = std::complex<double>;

// Natural units throughout: hbar = c = 1. Energies share one scale (often mc^2),
// lengths are in hbar*c per that energy unit.

class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Raised when the interface conditions are degenerate (zero momentum at a gap edge).
class SingularSystem : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Model { Dirac, KleinGordon };
enum class Geometry { Step, Barrier, General };

const char* to_string(Model model);
const char* to_string(Geometry geometry);

//---------------------------------------------------------------------------//
/*!
 * Incident particle: rest energy mc^2 and total energy E.
 *
 * The incident region has zero potential unless a profile says otherwise; the
 * particle must propagate there, so E > mc^2 (E > 0 when massless).
 */
struct ParticleSpec {
    double mass_energy = 1.0;
    double energy = 0.0;

    // Throws InvalidInput with a one-line reason.
    static ParticleSpec create(double mass_energy, double energy);

    // q = sqrt(E^2 - m^2), the momentum in a zero-potential region.
    double incident_momentum() const;
};

void validate(const ParticleSpec& spec);

//---------------------------------------------------------------------------//
struct Segment {
    double left;   // -inf for the first segment
    double right;  // +inf for the last segment
    double height;
};

/*!
 * Ordered, contiguous piecewise-constant potential.
 *
 * Step: V = 0 for x <= 0, V0 for x > 0. Barrier: V0 on (0, a], zero elsewhere.
 * A point on an interface belongs to the segment on its left.
 */
class PotentialProfile {
  public:
    static PotentialProfile step(double height);
    static PotentialProfile barrier(double height, double width);
    // heights.size() == edges.size() + 1, edges strictly increasing.
    static PotentialProfile piecewise(std::vector<double> edges,
                                      std::vector<double> heights);

    const std::vector<Segment>& segments() const { return segments_; }
    Geometry geometry() const { return geometry_; }
    std::size_t region_count() const { return segments_.size(); }
    std::vector<double> interfaces() const;
    std::size_t region_index(double x) const;
    double height_at(double x) const;

  private:
    PotentialProfile(std::vector<Segment> segments, Geometry geometry);

    std::vector<Segment> segments_;
    Geometry geometry_;
};

//---------------------------------------------------------------------------//
enum class Regime {
    PropagatingPositive,  // V < E - m
    EvanescentBelowE,     // E - m < V <= E
    EvanescentAboveE,     // E < V < E + m
    PropagatingNegative,  // V >= E + m (Klein zone)
};

enum class BoundaryFlag { None, LowerGapEdge, AtEnergy, UpperGapEdge };

struct RegimeClass {
    Regime regime;
    BoundaryFlag boundary = BoundaryFlag::None;

    bool flagged() const { return boundary != BoundaryFlag::None; }
    bool gap_edge() const
    {
        return boundary == BoundaryFlag::LowerGapEdge ||
               boundary == BoundaryFlag::UpperGapEdge;
    }
};

const char* to_string(Regime regime);
const char* to_string(BoundaryFlag flag);

enum class Branch { Positive, Negative };
enum class Wave { Propagating, Evanescent };

//! Energy branch and either the propagating momentum p or decay constant k.
struct RegionKinematics {
    Branch branch;
    Wave wave;
    double momentum;  // p or k, always the principal non-negative root
};

//---------------------------------------------------------------------------//
//! One basis solution: components * exp(exponent * (x - reference)).
struct BasisFunction {
    std::array<cplx, 2> components;
    cplx exponent;
    double reference = 0.0;

    std::array<cplx, 2> at(double x) const;
};

/*!
 * Wave content of one region.
 *
 * Components are the spinor (upper, lower) for Dirac and (psi, dpsi/dx) for
 * Klein-Gordon, so interface matching is "both components continuous" in
 * either model. Propagating pairs are ordered (rightward, leftward) with
 * reference 0; evanescent pairs are (growing, decaying), referenced at the
 * right and left edge respectively so that neither overflows inside the region.
 */
struct RegionState {
    Segment segment;
    RegimeClass regime;
    RegionKinematics kinematics;
    std::array<BasisFunction, 2> basis;
    std::array<cplx, 2> amplitudes{};

    std::array<cplx, 2> field(double x) const;
};

struct OneSidedValues {
    cplx below_reflection;  // V0 -> E from below
    cplx above_reflection;  // V0 -> E from above
    double below;
    double above;
};

/*!
 * Result of a scattering solve.
 *
 * R = |B|^2 and T = 1 - R (closed forms) or the flux ratio (matcher). When
 * \c limit_value is set the coefficients come from a limit formula at a
 * boundary point and no wavefunction is attached.
 */
struct ScatteringSolution {
    ScatteringSolution(Model m, ParticleSpec spec, PotentialProfile prof)
        : model(m), particle(spec), profile(std::move(prof))
    {
    }

    Model model;
    ParticleSpec particle;
    PotentialProfile profile;

    cplx reflection{};               // B
    std::vector<cplx> interior;      // F (step) or F1, F2 per interior region
    std::optional<cplx> transmission;  // G, when the last region is not the step interior
    double R = 0.0;
    double T = 0.0;

    std::vector<RegionState> regions;
    bool limit_value = false;
    std::optional<OneSidedValues> one_sided;

    bool has_wavefunction() const { return !limit_value && !regions.empty(); }
    std::vector<RegionKinematics> kinematics() const;
    //! Regime of the region right of the first interface (step/barrier interior).
    RegimeClass interior_regime() const;
};

// Field components at x; throws InvalidInput when no wavefunction is attached.
std::array<cplx, 2> field_at(const ScatteringSolution& sol, double x);
std::array<cplx, 2> field_in_region(const ScatteringSolution& sol,
                                    std::size_t region, double x);

// Probability flux of a field value: 2 Re(u* l) for Dirac, Im(psi* psi') for KG.
double flux_of(Model model, const std::array<cplx, 2>& components);

}  // namespace klein
