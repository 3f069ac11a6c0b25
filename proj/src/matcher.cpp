#include "klein/matcher.hpp"

#include <algorithm>
#include <cmath>

#include "klein/core.hpp"

namespace klein {

namespace {

using namespace std::complex_literals;

constexpr std::size_t dense_limit = 64;
constexpr double rcond_floor = 1e-14;

// Column of the Dirac equation for exp(kappa x). Either row of the equation
// fixes the ratio; take the one whose coefficient cannot vanish on this side.
std::array<cplx, 2> dirac_column(double d, double m, cplx kappa)
{
    if (d >= 0.0) {
        return {-1i * kappa, d - m};
    }
    return {d + m, -1i * kappa};
}

double finite_or(double x, double fallback)
{
    return std::isfinite(x) ? x : fallback;
}

void check_profile(const PotentialProfile& profile, const ParticleSpec& spec)
{
    validate(spec);
    const auto& segs = profile.segments();
    const double first = spec.energy - segs.front().height;
    if (!(first > spec.mass_energy)) {
        throw InvalidInput("incident region must be propagating (E - V > mc^2)");
    }
}

// Index of the column carrying the transmitted wave in the last region.
std::size_t outgoing_index(const RegionBasis& last)
{
    return last.kinematics.wave == Wave::Evanescent ? 1 : 0;
}

ScatteringSolution finish(const PotentialProfile& profile, const ParticleSpec& spec,
                          Model model, const std::vector<RegionBasis>& bases,
                          cplx reflection, const std::vector<std::array<cplx, 2>>& interior,
                          cplx transmitted)
{
    ScatteringSolution sol{model, spec, profile};
    sol.reflection = reflection;
    const std::size_t n = bases.size();
    for (std::size_t i = 0; i < n; ++i) {
        RegionState r;
        r.segment = bases[i].segment;
        r.regime = bases[i].regime;
        r.kinematics = bases[i].kinematics;
        r.basis = bases[i].waves;
        if (i == 0) {
            r.amplitudes = {1.0, reflection};
        } else if (i + 1 == n) {
            r.amplitudes[outgoing_index(bases[i])] = transmitted;
        } else {
            r.amplitudes = interior[i - 1];
            sol.interior.push_back(interior[i - 1][0]);
            sol.interior.push_back(interior[i - 1][1]);
        }
        sol.regions.push_back(r);
    }
    if (n == 2) {
        sol.interior = {transmitted};
    } else {
        sol.transmission = transmitted;
    }

    const double x0 = finite_or(bases.front().segment.right, 0.0);
    const double xn = finite_or(bases.back().segment.left, 0.0);
    const double incident = flux_of(model, bases.front().waves[0].at(x0));
    const double reflected = flux_of(model, bases.front().waves[1].at(x0));
    sol.R = std::norm(reflection) * (-reflected / incident);
    const auto& last = sol.regions.back();
    sol.T = n == 1 ? 1.0 : flux_of(model, last.field(xn)) / incident;
    return sol;
}

ScatteringSolution single_region(const PotentialProfile& profile, const ParticleSpec& spec,
                                 Model model, const std::vector<RegionBasis>& bases)
{
    return finish(profile, spec, model, bases, 0.0, {}, 1.0);
}

}  // namespace

//---------------------------------------------------------------------------//
RegionBasis build_basis(const Segment& region, const ParticleSpec& spec, Model model)
{
    const double e = spec.energy;
    const double m = spec.mass_energy;
    const double v = region.height;
    const double d = e - v;

    RegionBasis basis;
    basis.segment = region;
    basis.regime = classify_regime(e, v, m);
    basis.kinematics = kinematics(e, v, m);
    const double p = basis.kinematics.momentum;

    std::array<cplx, 2> kappa;
    std::array<double, 2> ref{0.0, 0.0};
    if (basis.kinematics.wave == Wave::Propagating) {
        kappa = {1i * p, -1i * p};
    } else {
        kappa = {p, -p};
        ref = {finite_or(region.right, finite_or(region.left, 0.0)),
               finite_or(region.left, 0.0)};
    }

    for (std::size_t j = 0; j < 2; ++j) {
        std::array<cplx, 2> col;
        if (model == Model::KleinGordon) {
            col = {1.0, kappa[j]};
        } else if (basis.kinematics.wave == Wave::Propagating && d < 0.0) {
            const double sign = j == 0 ? 1.0 : -1.0;
            col = {-d + m, sign * p};
        } else {
            col = dirac_column(d, m, kappa[j]);
        }
        basis.waves[j] = BasisFunction{col, kappa[j], ref[j]};
    }
    return basis;
}

//---------------------------------------------------------------------------//
InterfaceSystem assemble_system(const PotentialProfile& profile, const ParticleSpec& spec,
                                Model model)
{
    check_profile(profile, spec);
    InterfaceSystem sys;
    for (const auto& seg : profile.segments()) {
        sys.regions.push_back(build_basis(seg, spec, model));
        if (sys.regions.back().degenerate()) {
            throw SingularSystem("zero momentum in a region: interface conditions are degenerate");
        }
    }

    const std::size_t n = sys.regions.size();
    const std::size_t unknowns = n < 2 ? 0 : 2 * (n - 1);
    sys.matrix = Eigen::MatrixXcd::Zero(unknowns, unknowns);
    sys.rhs = Eigen::VectorXcd::Zero(unknowns);
    sys.column_scale = Eigen::VectorXd::Ones(unknowns);
    if (unknowns == 0) {
        return sys;
    }

    // Column of the first unknown belonging to region i.
    auto first_col = [&](std::size_t i) { return i == 0 ? 0 : 2 * i - 1; };

    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double x = sys.regions[j].segment.right;
        const std::size_t row = 2 * j;
        const auto& left = sys.regions[j];
        const auto& right = sys.regions[j + 1];

        // Left side, +: region j field.
        if (j == 0) {
            const auto inc = left.waves[0].at(x);
            const auto refl = left.waves[1].at(x);
            sys.rhs(row) -= inc[0];
            sys.rhs(row + 1) -= inc[1];
            sys.matrix(row, 0) += refl[0];
            sys.matrix(row + 1, 0) += refl[1];
        } else {
            for (std::size_t w = 0; w < 2; ++w) {
                const auto f = left.waves[w].at(x);
                sys.matrix(row, first_col(j) + w) += f[0];
                sys.matrix(row + 1, first_col(j) + w) += f[1];
            }
        }
        // Right side, -: region j + 1 field.
        if (j + 2 == n) {
            const auto f = right.waves[outgoing_index(right)].at(x);
            sys.matrix(row, unknowns - 1) -= f[0];
            sys.matrix(row + 1, unknowns - 1) -= f[1];
        } else {
            for (std::size_t w = 0; w < 2; ++w) {
                const auto f = right.waves[w].at(x);
                sys.matrix(row, first_col(j + 1) + w) -= f[0];
                sys.matrix(row + 1, first_col(j + 1) + w) -= f[1];
            }
        }
    }

    for (Eigen::Index c = 0; c < sys.matrix.cols(); ++c) {
        const double norm = sys.matrix.col(c).cwiseAbs().maxCoeff();
        if (norm > 0.0) {
            sys.column_scale(c) = norm;
            sys.matrix.col(c) /= norm;
        }
    }
    return sys;
}

ScatteringSolution solve_numeric(const PotentialProfile& profile, const ParticleSpec& spec,
                                 Model model)
{
    const std::size_t n = profile.region_count();
    if (n >= 2 && 2 * (n - 1) > dense_limit) {
        return transfer_matrix_solve(profile, spec, model);
    }
    InterfaceSystem sys = assemble_system(profile, spec, model);
    if (n == 1) {
        return single_region(profile, spec, model, sys.regions);
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);
    const double rcond = lu.rcond();
    if (!(rcond > rcond_floor)) {
        throw SingularSystem("interface system is singular (rcond "
                             + std::to_string(rcond) + ")");
    }
    Eigen::VectorXcd x = lu.solve(sys.rhs);
    for (Eigen::Index c = 0; c < x.size(); ++c) {
        x(c) /= sys.column_scale(c);
    }

    std::vector<std::array<cplx, 2>> interior;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        interior.push_back({x(2 * i - 1), x(2 * i)});
    }
    return finish(profile, spec, model, sys.regions, x(0), interior, x(x.size() - 1));
}

//---------------------------------------------------------------------------//
namespace {

using Vec2 = std::array<cplx, 2>;

cplx det(const Vec2& a, const Vec2& b)
{
    return a[0] * b[1] - a[1] * b[0];
}

double max_abs(const Vec2& v)
{
    return std::max(std::abs(v[0]), std::abs(v[1]));
}

// Field value at the left edge of a region given its value at the right edge,
// divided by exp(shift). Columns s1, s2 with exponents k1, k2 over width w.
Vec2 propagate_left(const RegionBasis& r, const Vec2& v, double w, double& shift)
{
    const Vec2& s1 = r.waves[0].components;
    const Vec2& s2 = r.waves[1].components;
    const cplx k1 = r.waves[0].exponent;
    const cplx k2 = r.waves[1].exponent;
    const cplx dd = det(s1, s2);
    // v = a1 s1 + a2 s2 at the right edge; at the left edge each picks up exp(-k w).
    const cplx a1 = det(v, s2) / dd;
    const cplx a2 = det(s1, v) / dd;
    // Pull out the largest growth factor so nothing overflows.
    const double grow = std::max(std::real(-k1 * w), std::real(-k2 * w));
    const cplx e1 = std::exp(-k1 * w - grow);
    const cplx e2 = std::exp(-k2 * w - grow);
    shift = grow;
    return {a1 * e1 * s1[0] + a2 * e2 * s2[0], a1 * e1 * s1[1] + a2 * e2 * s2[1]};
}

}  // namespace

ScatteringSolution transfer_matrix_solve(const PotentialProfile& profile,
                                         const ParticleSpec& spec, Model model)
{
    check_profile(profile, spec);
    std::vector<RegionBasis> bases;
    for (const auto& seg : profile.segments()) {
        bases.push_back(build_basis(seg, spec, model));
        if (bases.back().degenerate()) {
            throw SingularSystem("zero momentum in a region: interface conditions are degenerate");
        }
    }
    const std::size_t n = bases.size();
    if (n == 1) {
        return single_region(profile, spec, model, bases);
    }

    // Sweep right to left with unit outgoing amplitude. The true field is
    // G * exp(log_scale[i]) * value[i] at interface i.
    const std::size_t interfaces = n - 1;
    std::vector<Vec2> value(interfaces);
    std::vector<double> log_scale(interfaces);
    {
        const auto& last = bases.back();
        const double x = last.segment.left;
        Vec2 v = last.waves[outgoing_index(last)].at(x);
        const double norm = max_abs(v);
        value[interfaces - 1] = {v[0] / norm, v[1] / norm};
        log_scale[interfaces - 1] = std::log(norm);
        for (std::size_t i = interfaces - 1; i-- > 0;) {
            const auto& r = bases[i + 1];
            const double w = r.segment.right - r.segment.left;
            double shift = 0.0;
            Vec2 u = propagate_left(r, value[i + 1], w, shift);
            const double un = max_abs(u);
            if (!(un > 0.0) || !std::isfinite(un)) {
                throw SingularSystem("transfer sweep lost the field");
            }
            value[i] = {u[0] / un, u[1] / un};
            log_scale[i] = log_scale[i + 1] + shift + std::log(un);
        }
    }

    // Interface 0: u_in + B u_out = Gt * value[0], with G = Gt * exp(-log_scale[0]).
    const auto& first = bases.front();
    const double x0 = first.segment.right;
    const Vec2 u_in = first.waves[0].at(x0);
    const Vec2 u_out = first.waves[1].at(x0);
    const Vec2& w0 = value[0];
    const cplx dd = det(w0, u_out);
    if (!(std::abs(dd) > rcond_floor * max_abs(u_out))) {
        throw SingularSystem("transfer system is singular");
    }
    const cplx gt = det(u_in, u_out) / dd;
    const cplx b = det(u_in, w0) / dd;
    const double l0 = log_scale[0];

    // Interior amplitudes from the stored edge values.
    std::vector<std::array<cplx, 2>> interior;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto& r = bases[i];
        const Vec2& s1 = r.waves[0].components;
        const Vec2& s2 = r.waves[1].components;
        const cplx dd_r = det(s1, s2);
        const double left = r.segment.left;
        const double right = r.segment.right;
        // Right edge is interface i, left edge interface i - 1.
        const cplx c1 = gt * det(value[i], s2) / dd_r
                        * std::exp(cplx(log_scale[i] - l0) - r.waves[0].exponent * (right - r.waves[0].reference));
        const cplx c2 = gt * det(s1, value[i - 1]) / dd_r
                        * std::exp(cplx(log_scale[i - 1] - l0) - r.waves[1].exponent * (left - r.waves[1].reference));
        interior.push_back({c1, c2});
    }
    const cplx g = gt * std::exp(-l0);
    return finish(profile, spec, model, bases, b, interior, g);
}

//---------------------------------------------------------------------------//
double continuity_residual(const ScatteringSolution& sol)
{
    if (!sol.has_wavefunction()) {
        throw InvalidInput("solution carries a limit value only; no wavefunction");
    }
    const auto& regions = sol.regions;
    const auto& inc = regions.front().basis[0].components;
    const double scale = std::max(std::abs(inc[0]), std::abs(inc[1]));
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < regions.size(); ++j) {
        const double x = regions[j].segment.right;
        const auto a = regions[j].field(x);
        const auto b = regions[j + 1].field(x);
        worst = std::max({worst, std::abs(a[0] - b[0]), std::abs(a[1] - b[1])});
    }
    return worst / scale;
}

double region_flux(const ScatteringSolution& sol, std::size_t region, double x)
{
    return flux_of(sol.model, field_in_region(sol, region, x));
}

}  // namespace klein
