#include "klein/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "klein/analysis.hpp"
#include "klein/dirac.hpp"
#include "klein/kleingordon.hpp"
#include "klein/matcher.hpp"
#include "klein/verify.hpp"

namespace klein {

namespace {

struct RunConfig {
    std::string model = "dirac";
    std::string geometry = "step";
    std::optional<double> energy;
    std::optional<double> mass;
    std::optional<double> v0;
    std::string v0_range;
    std::string width;
    std::string units = "mc2";
    std::string out;
    std::uint64_t seed = 42;
    std::size_t samples = 1000;
    std::vector<int> figs;
    std::string fault;
    unsigned threads = 0;
};

struct Grid {
    double min;
    double max;
    std::size_t count;
};

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Model parse_model(const std::string& s)
{
    return s == "kg" ? Model::KleinGordon : Model::Dirac;
}

ParticleSpec particle(const RunConfig& cfg)
{
    if (!cfg.energy) {
        throw InvalidInput("--energy is required");
    }
    double m = 1.0;
    if (cfg.units == "mc2") {
        if (cfg.mass && *cfg.mass == 0.0) {
            throw InvalidInput("unit mode raw is mandatory when m = 0 (use --units raw)");
        }
        if (cfg.mass && *cfg.mass != 1.0) {
            throw InvalidInput("energies are in units of mc^2, so --mass must be 1 (use --units raw)");
        }
    } else {
        m = cfg.mass.value_or(1.0);
    }
    return ParticleSpec::create(m, *cfg.energy);
}

Grid parse_range(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != 3) {
        throw InvalidInput("--v0-range needs min:max:count");
    }
    Grid g{};
    try {
        std::size_t used = 0;
        g.min = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("min");
        g.max = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("max");
        const long long c = std::stoll(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("count");
        if (c < 2) {
            throw InvalidInput("grid count must be at least 2");
        }
        g.count = static_cast<std::size_t>(c);
    } catch (const InvalidInput&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidInput("--v0-range needs numeric min:max:count");
    }
    if (!(g.min < g.max)) {
        throw InvalidInput("--v0-range needs min < max");
    }
    return g;
}

std::optional<WidthRule> width_rule(const RunConfig& cfg, Geometry geometry)
{
    if (geometry != Geometry::Barrier) {
        return std::nullopt;
    }
    if (cfg.width.empty()) {
        throw InvalidInput("barrier geometry needs --width (a number or 'figure')");
    }
    if (cfg.width == "figure") {
        return WidthRule::figure_convention();
    }
    try {
        std::size_t used = 0;
        const double a = std::stod(cfg.width, &used);
        if (used != cfg.width.size()) {
            throw std::invalid_argument("width");
        }
        return WidthRule::fixed(a);
    } catch (const InvalidInput&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidInput("--width must be a number or 'figure'");
    }
}

PotentialProfile read_profile(const std::string& path)
{
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot read profile file " + path);
    }
    std::vector<double> edges;
    std::vector<double> heights;
    std::string line;
    bool closed = false;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string edge;
        double height = 0.0;
        if (!(ls >> edge)) {
            continue;
        }
        if (closed) {
            throw InvalidInput("profile file: lines after the 'inf' line");
        }
        if (!(ls >> height)) {
            throw InvalidInput("profile file: expected '<right_edge> <height>'");
        }
        heights.push_back(height);
        if (edge == "inf") {
            closed = true;
        } else {
            try {
                edges.push_back(std::stod(edge));
            } catch (const std::exception&) {
                throw InvalidInput("profile file: bad edge '" + edge + "'");
            }
        }
    }
    if (!closed) {
        throw InvalidInput("profile file: last line must be 'inf <height>'");
    }
    return PotentialProfile::piecewise(edges, heights);
}

void print_solution(const ScatteringSolution& sol, std::ostream& out)
{
    out << "model: " << to_string(sol.model) << '\n';
    out << "geometry: " << to_string(sol.profile.geometry()) << '\n';
    out << "E: " << num(sol.particle.energy) << '\n';
    out << "m: " << num(sol.particle.mass_energy) << '\n';
    out << "B: " << num(sol.reflection.real()) << ' ' << num(sol.reflection.imag()) << '\n';
    out << "R: " << num(sol.R) << '\n';
    out << "T: " << num(sol.T) << '\n';
    if (sol.profile.region_count() > 1) {
        const RegimeClass regime = sol.interior_regime();
        out << "regime: " << to_string(regime.regime);
        if (regime.flagged()) {
            out << " (" << to_string(regime.boundary) << ')';
        }
        out << '\n';
    }
    if (sol.limit_value) {
        out << "limit value: no wavefunction at this boundary point\n";
    }
    if (sol.one_sided) {
        out << "one-sided R: below " << num(sol.one_sided->below) << " above "
            << num(sol.one_sided->above) << " jump "
            << num(std::abs(sol.one_sided->below - sol.one_sided->above)) << '\n';
    }
    const auto& segs = sol.profile.segments();
    const auto kin = sol.kinematics();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        out << "region " << i << ": (" << num(segs[i].left) << ", " << num(segs[i].right)
            << "] V=" << num(segs[i].height)
            << " branch=" << (kin[i].branch == Branch::Positive ? "positive" : "negative")
            << (kin[i].wave == Wave::Propagating ? " p=" : " k=") << num(kin[i].momentum)
            << '\n';
    }
}

Geometry geometry_of(const std::string& g)
{
    if (g == "step") return Geometry::Step;
    if (g == "barrier") return Geometry::Barrier;
    return Geometry::General;
}

int cmd_scatter(const RunConfig& cfg, std::ostream& out)
{
    const ParticleSpec spec = particle(cfg);
    const Model model = parse_model(cfg.model);
    const Geometry geometry = geometry_of(cfg.geometry);
    if (geometry == Geometry::General) {
        const auto profile = read_profile(cfg.geometry);
        print_solution(solve_numeric(profile, spec, model), out);
        return exit_ok;
    }
    if (!cfg.v0) {
        throw InvalidInput("--v0 is required for step and barrier geometries");
    }
    if (geometry == Geometry::Step) {
        print_solution(model == Model::Dirac ? dirac_step_solve(spec, *cfg.v0)
                                             : kg_step_solve(spec, *cfg.v0),
                       out);
        return exit_ok;
    }
    const double a = width_rule(cfg, geometry)->width_at(spec, *cfg.v0);
    out << "width: " << num(a) << '\n';
    print_solution(model == Model::Dirac ? dirac_barrier_solve(spec, *cfg.v0, a)
                                         : kg_barrier_solve(spec, *cfg.v0, a),
                   out);
    return exit_ok;
}

void emit(const SweepCurve& curve, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << to_csv(curve);
        return;
    }
    write_csv(curve, path);
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out)
{
    const Geometry geometry = geometry_of(cfg.geometry);
    if (geometry == Geometry::General) {
        throw InvalidInput("sweep supports step and barrier geometries");
    }
    if (cfg.v0_range.empty()) {
        throw InvalidInput("--v0-range min:max:count is required");
    }
    const Grid g = parse_range(cfg.v0_range);
    const ParticleSpec spec = particle(cfg);
    const auto width = width_rule(cfg, geometry);
    const auto grid = make_grid(spec, g.min, g.max, g.count);
    const auto curve = sweep(parse_model(cfg.model), geometry, spec, width, grid, cfg.threads);
    emit(curve, cfg.out, out);
    if (!cfg.out.empty()) {
        out << "wrote " << curve.samples.size() << " rows to " << cfg.out << '\n';
    }
    return exit_ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    VerifyOptions opt;
    opt.seed = cfg.seed;
    opt.samples = cfg.samples;
    opt.fault = cfg.fault;
    const VerifyReport report = run_property_suite(opt);
    for (const auto& p : report.properties) {
        out << (p.passed() ? "PASS " : "FAIL ") << p.name << " (" << p.checks << " checks, "
            << p.failures << " failures)\n";
        if (!p.passed() && !p.first_failure.empty()) {
            out << "  reproduce: " << p.first_failure << '\n';
        }
    }
    out << (report.passed() ? "all properties pass\n" : "property failures\n");
    return report.passed() ? exit_ok : exit_property_failure;
}

std::string feature_line(const SweepCurve& c)
{
    std::string line = "gap=[" + num(c.annotations.gap.lower) + ", "
                       + num(c.annotations.gap.upper) + "]";
    for (double a : c.annotations.alleys) {
        line += " alley=" + num(a);
    }
    if (!c.annotations.resonances.empty()) {
        line += " resonances=" + std::to_string(c.annotations.resonances.size());
    }
    if (c.annotations.jump) {
        line += " jump=" + num(c.annotations.jump_magnitude);
    }
    line += " R(last)=" + num(c.samples.back().R);
    return line;
}

int cmd_figures(const RunConfig& cfg, std::ostream& out)
{
    std::vector<int> figs = cfg.figs.empty() ? std::vector<int>{2, 3, 5, 6} : cfg.figs;
    const std::string dir = cfg.out.empty() ? "." : cfg.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir);
    }
    for (int fig : figs) {
        const Model model = fig == 2 || fig == 5 ? Model::Dirac : Model::KleinGordon;
        const Geometry geometry = fig <= 3 ? Geometry::Step : Geometry::Barrier;
        std::optional<WidthRule> width;
        if (geometry == Geometry::Barrier) {
            width = WidthRule::figure_convention();
        }
        for (double e : {1.3, 3.0}) {
            const auto spec = ParticleSpec::create(1.0, e);
            const auto grid = make_grid(spec, 0.0, 10.0, 1001);
            const auto curve = sweep(model, geometry, spec, width, grid, cfg.threads);
            char name[64];
            std::snprintf(name, sizeof(name), "fig%d_E%g.csv", fig, e);
            const auto path = (std::filesystem::path(dir) / name).string();
            write_csv(curve, path);
            out << path << ": " << feature_line(curve) << '\n';
        }
    }
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Relativistic 1-D scattering: Dirac and Klein-Gordon on steps, barriers and "
                 "piecewise profiles"};
    app.name("klein");
    app.set_config("--config", "", "key=value file; command-line flags override it");
    app.fallthrough();
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--model", cfg.model, "dirac or kg")->check(CLI::IsMember({"dirac", "kg"}));
    app.add_option("--geometry", cfg.geometry, "step, barrier or a profile file");
    app.add_option("--energy", cfg.energy, "total energy E");
    app.add_option("--mass", cfg.mass, "rest energy mc^2 (raw units)");
    app.add_option("--v0", cfg.v0, "step or barrier height");
    app.add_option("--v0-range", cfg.v0_range, "sweep grid min:max:count");
    app.add_option("--width", cfg.width, "barrier width, or 'figure' for the figure convention");
    app.add_option("--units", cfg.units, "mc2 (energies in mc^2) or raw")
        ->check(CLI::IsMember({"mc2", "raw"}));
    app.add_option("--out", cfg.out, "output file (sweep) or directory (figures)");
    app.add_option("--seed", cfg.seed, "verify: RNG seed");
    app.add_option("--samples", cfg.samples, "verify: random draws per property");
    app.add_option("--fig", cfg.figs, "figures: 2, 3, 5 or 6 (default all)")
        ->check(CLI::IsMember({2, 3, 5, 6}));
    app.add_option("--threads", cfg.threads, "sweep worker threads (0 = hardware)");
    app.add_option("--inject-fault", cfg.fault, "verify test mode: sign-flip")
        ->group("");

    auto* scatter = app.add_subcommand("scatter", "solve one configuration");
    auto* sweep_cmd = app.add_subcommand("sweep", "R over a V0 grid, written as CSV");
    auto* verify = app.add_subcommand("verify", "randomized property suite");
    auto* figures = app.add_subcommand("figures", "regenerate the figure curves as CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid_input;
    }

    try {
        if (*scatter) return cmd_scatter(cfg, out);
        if (*sweep_cmd) return cmd_sweep(cfg, out);
        if (*verify) return cmd_verify(cfg, out);
        if (*figures) return cmd_figures(cfg, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const SingularSystem& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io_failure;
    }
    return exit_invalid_input;
}

}  // namespace klein
