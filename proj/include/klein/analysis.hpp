#pragma once

#include <functional>
#include <optional>
#include <string>

#include "klein/core.hpp"
#include "klein/types.hpp"

namespace klein {

//---------------------------------------------------------------------------//
/*!
 * Barrier width used along a V0 curve.
 *
 * FigureConvention holds two widths fixed per curve: coth(k a) = 2 with k = m
 * (the value at V0 = E) for V0 inside the gap, and cot(q a) = 1/2 with p = q
 * (the value at V0 = 0) outside it.
 */
struct WidthRule {
    enum class Kind { Fixed, FigureConvention };
    Kind kind = Kind::Fixed;
    double width = 1.0;

    static WidthRule fixed(double width);
    static WidthRule figure_convention();

    double gap_width(const ParticleSpec& spec) const;
    double propagating_width(const ParticleSpec& spec) const;
    double width_at(const ParticleSpec& spec, double v0) const;
    std::string describe() const;
};

//---------------------------------------------------------------------------//
struct SweepSample {
    double v0;
    double R;
    Regime regime;
    std::string annotation;  // alley, gap-lower, gap-upper, at-energy, jump-, jump+
};

struct SweepAnnotations {
    GapInterval gap;
    std::vector<double> alleys;
    std::vector<double> resonances;
    std::optional<OneSidedValues> jump;
    double jump_magnitude = 0.0;
    bool all_transmitting = false;  // massless Dirac
};

struct SweepCurve {
    Model model;
    Geometry geometry;
    ParticleSpec spec;
    std::optional<WidthRule> width;
    std::vector<SweepSample> samples;
    SweepAnnotations annotations;
};

//! Evenly spaced grid plus E - m, E, E + m and 2E when they fall in range.
std::vector<double> make_grid(const ParticleSpec& spec, double v0_min, double v0_max,
                              std::size_t count, bool extras = true);

/*!
 * R along a V0 grid, computed in parallel and assembled in grid order.
 *
 * Boundary points use their limit values. A Dirac barrier grid point at
 * V0 = E yields two samples, the lower and upper one-sided values.
 */
SweepCurve sweep(Model model, Geometry geometry, const ParticleSpec& spec,
                 std::optional<WidthRule> width, const std::vector<double>& grid,
                 unsigned threads = 0);

//! Single-point R with the same conventions as sweep (lower side at V0 = E).
double reflection_at(Model model, Geometry geometry, const ParticleSpec& spec,
                     std::optional<WidthRule> width, double v0);

//---------------------------------------------------------------------------//
struct TotalTransmissions {
    std::vector<double> v0;
    bool all = false;
};

/*!
 * V0 values in [v0_min, v0_max] with R = 0: the alley at 2E and, for a
 * barrier, the resonances p a = n pi. Every entry is re-solved and kept only
 * if R < 1e-12.
 */
TotalTransmissions find_total_transmissions(Model model, Geometry geometry,
                                            const ParticleSpec& spec,
                                            std::optional<double> width, double v0_min,
                                            double v0_max);

//! Widths a_n = n pi / p, n = 1..count, at fixed propagating V0 (verified).
std::vector<double> resonant_widths(Model model, const ParticleSpec& spec, double v0,
                                    int count);

struct ResonanceAmplitudes {
    cplx reflection;
    cplx transmission;
    cplx first;
    cplx second;
};

/*!
 * Dirac barrier amplitudes at p a = n pi, in propagating ranges:
 *   V0 < E - m: F1,2 = ((E - m)/(E - V0 - m) +- q/p) / 2
 *   V0 > E + m: F1,2 = (q/(V0 - E + m) +- (E - m)/p) / 2
 * B = 0 and G = (-1)^n exp(-iqa).
 */
ResonanceAmplitudes resonance_amplitudes(const ParticleSpec& spec, double v0, double width);

//! |R(E-) - R(E+)| of the Dirac barrier endpoint values.
double jump_gap(const ParticleSpec& spec, double width);

//! (m / E)^2.
double small_mass_bound(const ParticleSpec& spec);

//---------------------------------------------------------------------------//
struct SmoothPotential {
    std::function<double(double)> value;
    double x_min;
    double x_max;
};

struct MasslessPhase {
    cplx upper;     // phi(x)
    cplx lower;     // chi(x) = sign * phi(x)
    double integral;  // int_{a}^{x} V
    int panels;
};

/*!
 * Massless spinor in a smooth potential:
 *   phi(x) = phi(a) exp(i s (E (x - a) - int_a^x V)),  chi = s phi,  s = +-1.
 * The integral uses composite 8-point Gauss-Legendre, doubling panels until
 * the change is below 1e-10.
 */
MasslessPhase massless_phase_solution(const SmoothPotential& pot, double energy, double a_ref,
                                      double x, cplx phi_a = 1.0, int sign = 1);

//---------------------------------------------------------------------------//
// CSV: header V0,R,regime,annotation; 17 significant digits; \n endings.
std::string to_csv(const SweepCurve& curve);
void write_csv(const SweepCurve& curve, const std::string& path);

struct CsvRow {
    double v0;
    double R;
    std::string regime;
    std::string annotation;
};
std::vector<CsvRow> parse_csv(const std::string& text);

//! Thrown for file I/O failures.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace klein
