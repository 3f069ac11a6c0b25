#include "klein/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "klein/dirac.hpp"
#include "klein/kleingordon.hpp"

namespace klein {

namespace {

using namespace std::complex_literals;
constexpr double pi = std::numbers::pi;
constexpr double zero_tol = 1e-12;

double solve_r(Model model, Geometry geometry, const ParticleSpec& spec, double v0, double a)
{
    if (geometry == Geometry::Step) {
        return model == Model::Dirac ? dirac_step_solve(spec, v0).R : kg_step_solve(spec, v0).R;
    }
    if (geometry == Geometry::Barrier) {
        return model == Model::Dirac ? dirac_barrier_solve(spec, v0, a).R
                                     : kg_barrier_solve(spec, v0, a).R;
    }
    throw InvalidInput("sweeps support step and barrier geometries only");
}

std::string annotate(const ParticleSpec& spec, double v0, const RegimeClass& regime)
{
    switch (regime.boundary) {
        case BoundaryFlag::LowerGapEdge: return "gap-lower";
        case BoundaryFlag::UpperGapEdge: return "gap-upper";
        case BoundaryFlag::AtEnergy: return "at-energy";
        case BoundaryFlag::None: break;
    }
    return v0 == 2.0 * spec.energy ? "alley" : "";
}

double require_width(std::optional<WidthRule> width, Geometry geometry, const ParticleSpec& spec,
                     double v0)
{
    if (geometry != Geometry::Barrier) {
        return 0.0;
    }
    if (!width) {
        throw InvalidInput("barrier needs a width or width rule");
    }
    return width->width_at(spec, v0);
}

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> gl_nodes{
    -0.9602898564975362, -0.7966664774136267, -0.525532409916329, -0.18343464249564978,
    0.18343464249564978, 0.525532409916329,   0.7966664774136267, 0.9602898564975362};
constexpr std::array<double, 8> gl_weights{
    0.10122853629037669, 0.22238103445337434, 0.31370664587788705, 0.36268378337836177,
    0.36268378337836177, 0.31370664587788705, 0.22238103445337434, 0.10122853629037669};

double gauss_legendre(const std::function<double(double)>& f, double lo, double hi, int panels)
{
    const double h = (hi - lo) / panels;
    double sum = 0.0;
    for (int j = 0; j < panels; ++j) {
        const double mid = lo + (j + 0.5) * h;
        double part = 0.0;
        for (std::size_t i = 0; i < gl_nodes.size(); ++i) {
            part += gl_weights[i] * f(mid + 0.5 * h * gl_nodes[i]);
        }
        sum += 0.5 * h * part;
    }
    return sum;
}

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

//---------------------------------------------------------------------------//
WidthRule WidthRule::fixed(double width)
{
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw InvalidInput("barrier width must be positive and finite");
    }
    return {Kind::Fixed, width};
}

WidthRule WidthRule::figure_convention()
{
    return {Kind::FigureConvention, 0.0};
}

double WidthRule::gap_width(const ParticleSpec& spec) const
{
    if (kind == Kind::Fixed) {
        return width;
    }
    if (spec.mass_energy == 0.0) {
        return propagating_width(spec);
    }
    // coth(m a) = 2
    return std::atanh(0.5) / spec.mass_energy;
}

double WidthRule::propagating_width(const ParticleSpec& spec) const
{
    if (kind == Kind::Fixed) {
        return width;
    }
    // cot(q a) = 1/2
    return std::atan(2.0) / spec.incident_momentum();
}

double WidthRule::width_at(const ParticleSpec& spec, double v0) const
{
    const GapInterval gap = gap_interval(spec);
    return v0 >= gap.lower && v0 <= gap.upper ? gap_width(spec) : propagating_width(spec);
}

std::string WidthRule::describe() const
{
    if (kind == Kind::Fixed) {
        return "fixed a=" + format_double(width);
    }
    return "figure convention: coth(ka)=2 in the gap, cot(qa)=1/2 outside";
}

//---------------------------------------------------------------------------//
std::vector<double> make_grid(const ParticleSpec& spec, double v0_min, double v0_max,
                              std::size_t count, bool extras)
{
    if (count < 2) {
        throw InvalidInput("grid count must be at least 2");
    }
    if (!(v0_min < v0_max) || !std::isfinite(v0_min) || !std::isfinite(v0_max)) {
        throw InvalidInput("grid needs finite min < max");
    }
    std::vector<double> grid;
    grid.reserve(count + 4);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        grid.push_back(i + 1 == count ? v0_max : v0_min + t * (v0_max - v0_min));
    }
    if (extras) {
        const double e = spec.energy;
        const double m = spec.mass_energy;
        for (double v : {e - m, e, e + m, 2.0 * e}) {
            if (v >= v0_min && v <= v0_max) {
                grid.push_back(v);
            }
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

double reflection_at(Model model, Geometry geometry, const ParticleSpec& spec,
                     std::optional<WidthRule> width, double v0)
{
    validate(spec);
    return solve_r(model, geometry, spec, v0, require_width(width, geometry, spec, v0));
}

SweepCurve sweep(Model model, Geometry geometry, const ParticleSpec& spec,
                 std::optional<WidthRule> width, const std::vector<double>& grid,
                 unsigned threads)
{
    validate(spec);
    if (geometry == Geometry::General) {
        throw InvalidInput("sweeps support step and barrier geometries only");
    }
    if (geometry == Geometry::Barrier && !width) {
        throw InvalidInput("barrier needs a width or width rule");
    }
    if (grid.size() < 2) {
        throw InvalidInput("grid count must be at least 2");
    }

    const bool split_at_energy =
        model == Model::Dirac && geometry == Geometry::Barrier && spec.mass_energy > 0.0;

    std::vector<std::vector<SweepSample>> rows(grid.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double v0 = grid[i];
            const RegimeClass regime = classify_regime(spec.energy, v0, spec.mass_energy);
            const double a = require_width(width, geometry, spec, v0);
            if (split_at_energy && regime.boundary == BoundaryFlag::AtEnergy) {
                const OneSidedValues sides = dirac_barrier_endpoints(spec, a);
                rows[i] = {{v0, sides.below, Regime::EvanescentBelowE, "jump-"},
                           {v0, sides.above, Regime::EvanescentAboveE, "jump+"}};
                continue;
            }
            rows[i] = {{v0, solve_r(model, geometry, spec, v0, a), regime.regime,
                        annotate(spec, v0, regime)}};
        }
    };

    unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, grid.size()));
    if (n <= 1) {
        work(0, grid.size());
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(n);
        const std::size_t chunk = (grid.size() + n - 1) / n;
        for (unsigned t = 0; t < n; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(grid.size(), begin + chunk);
            pool.emplace_back([&, t, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    SweepCurve curve{model, geometry, spec, width, {}, {}};
    for (auto& r : rows) {
        for (auto& s : r) {
            curve.samples.push_back(std::move(s));
        }
    }

    auto& notes = curve.annotations;
    notes.gap = gap_interval(spec);
    std::optional<double> a;
    if (geometry == Geometry::Barrier) {
        a = width->propagating_width(spec);
    }
    const auto zeros =
        find_total_transmissions(model, geometry, spec, a, grid.front(), grid.back());
    notes.all_transmitting = zeros.all;
    for (double v : zeros.v0) {
        (v == 2.0 * spec.energy ? notes.alleys : notes.resonances).push_back(v);
    }
    if (split_at_energy && spec.energy >= grid.front() && spec.energy <= grid.back()) {
        const double ga = width->gap_width(spec);
        notes.jump = dirac_barrier_endpoints(spec, ga);
        notes.jump_magnitude = jump_gap(spec, ga);
    }
    return curve;
}

//---------------------------------------------------------------------------//
TotalTransmissions find_total_transmissions(Model model, Geometry geometry,
                                            const ParticleSpec& spec,
                                            std::optional<double> width, double v0_min,
                                            double v0_max)
{
    validate(spec);
    TotalTransmissions out;
    if (model == Model::Dirac && spec.mass_energy == 0.0) {
        out.all = true;
        return out;
    }
    if (geometry == Geometry::Barrier && !width) {
        throw InvalidInput("barrier needs a width");
    }
    const double a = width.value_or(0.0);
    auto keep = [&](double v0) {
        if (v0 < v0_min || v0 > v0_max) {
            return;
        }
        if (solve_r(model, geometry, spec, v0, a) < zero_tol) {
            out.v0.push_back(v0);
        }
    };

    const double e = spec.energy;
    const double m = spec.mass_energy;
    keep(2.0 * e);
    if (geometry == Geometry::Barrier) {
        const double reach = std::max(std::abs(v0_max - e), std::abs(e - v0_min));
        for (int n = 1;; ++n) {
            const double p = n * pi / a;
            const double d = std::hypot(m, p);
            if (d > reach) {
                break;
            }
            keep(e - d);
            keep(e + d);
        }
    }
    std::sort(out.v0.begin(), out.v0.end());
    out.v0.erase(std::unique(out.v0.begin(), out.v0.end()), out.v0.end());
    return out;
}

std::vector<double> resonant_widths(Model model, const ParticleSpec& spec, double v0, int count)
{
    validate(spec);
    const RegionKinematics kin = kinematics(spec.energy, v0, spec.mass_energy);
    if (kin.wave != Wave::Propagating || kin.momentum == 0.0) {
        throw InvalidInput("resonant widths need a propagating barrier (|E - V0| > mc^2)");
    }
    std::vector<double> widths;
    for (int n = 1; n <= count; ++n) {
        const double a = n * pi / kin.momentum;
        if (solve_r(model, Geometry::Barrier, spec, v0, a) < zero_tol) {
            widths.push_back(a);
        }
    }
    return widths;
}

ResonanceAmplitudes resonance_amplitudes(const ParticleSpec& spec, double v0, double width)
{
    validate(spec);
    if (!(width > 0.0)) {
        throw InvalidInput("barrier width must be positive and finite");
    }
    const double e = spec.energy;
    const double m = spec.mass_energy;
    const RegimeClass regime = classify_regime(e, v0, m);
    const RegionKinematics kin = kinematics(e, v0, m);
    if (regime.flagged() || kin.wave != Wave::Propagating) {
        throw InvalidInput("resonance needs a propagating barrier (|E - V0| > mc^2)");
    }
    const double p = kin.momentum;
    const double phase = p * width;
    const double n = std::round(phase / pi);
    if (n < 1.0 || std::abs(phase - n * pi) > 1e-8 * std::max(1.0, phase)) {
        throw InvalidInput("p a is not a multiple of pi");
    }
    const double q = spec.incident_momentum();
    const cplx g = (std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0) * std::exp(-1i * q * width);

    if (regime.regime == Regime::PropagatingPositive) {
        const double u = (e - m) / (e - v0 - m);
        return {0.0, g, 0.5 * (u + q / p), 0.5 * (u - q / p)};
    }
    const double u = q / (v0 - e + m);
    return {0.0, g, 0.5 * (u + (e - m) / p), 0.5 * (u - (e - m) / p)};
}

double jump_gap(const ParticleSpec& spec, double width)
{
    validate(spec);
    if (spec.mass_energy == 0.0) {
        return 0.0;
    }
    const OneSidedValues sides = dirac_barrier_endpoints(spec, width);
    return std::abs(sides.below - sides.above);
}

double small_mass_bound(const ParticleSpec& spec)
{
    validate(spec);
    const double r = spec.mass_energy / spec.energy;
    return r * r;
}

//---------------------------------------------------------------------------//
MasslessPhase massless_phase_solution(const SmoothPotential& pot, double energy, double a_ref,
                                      double x, cplx phi_a, int sign)
{
    if (!pot.value) {
        throw InvalidInput("potential has no values");
    }
    if (!(energy > 0.0)) {
        throw InvalidInput("incident energy inside gap (need E > mc^2)");
    }
    if (sign != 1 && sign != -1) {
        throw InvalidInput("sign must be +1 or -1");
    }
    for (double t : {a_ref, x}) {
        if (!(t >= pot.x_min && t <= pot.x_max)) {
            throw InvalidInput("evaluation point outside the potential's domain");
        }
    }

    int panels = 1;
    double integral = gauss_legendre(pot.value, a_ref, x, panels);
    for (;;) {
        const double finer = gauss_legendre(pot.value, a_ref, x, 2 * panels);
        panels *= 2;
        const bool done = std::abs(finer - integral) < 1e-10;
        integral = finer;
        if (done) {
            break;
        }
        if (panels > (1 << 22)) {
            throw InvalidInput("phase integral did not converge; potential not smooth");
        }
    }
    if (!std::isfinite(integral)) {
        throw InvalidInput("potential is not finite on the interval");
    }

    const double theta = sign * (energy * (x - a_ref) - integral);
    const cplx phi = phi_a * cplx(std::cos(theta), std::sin(theta));
    return {phi, static_cast<double>(sign) * phi, integral, panels};
}

//---------------------------------------------------------------------------//
std::string to_csv(const SweepCurve& curve)
{
    std::string out = "V0,R,regime,annotation\n";
    for (const auto& s : curve.samples) {
        out += format_double(s.v0);
        out += ',';
        out += format_double(s.R);
        out += ',';
        out += to_string(s.regime);
        out += ',';
        out += s.annotation;
        out += '\n';
    }
    return out;
}

void write_csv(const SweepCurve& curve, const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open " + path + " for writing");
    }
    f << to_csv(curve);
    f.close();
    if (!f) {
        throw IoError("failed writing " + path);
    }
}

std::vector<CsvRow> parse_csv(const std::string& text)
{
    std::vector<CsvRow> rows;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "V0,R,regime,annotation") {
        throw InvalidInput("not a sweep CSV (bad header)");
    }
    auto number = [](const std::string& s) {
        double v = 0.0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
            throw InvalidInput("bad number in CSV: " + s);
        }
        return v;
    };
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (line.back() == ',') {
            cells.emplace_back();
        }
        if (cells.size() != 4) {
            throw InvalidInput("CSV row needs 4 fields: " + line);
        }
        rows.push_back({number(cells[0]), number(cells[1]), cells[2], cells[3]});
    }
    return rows;
}

}  // namespace klein
