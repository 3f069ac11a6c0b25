#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "klein/analysis.hpp"
#include "klein/core.hpp"
#include "klein/dirac.hpp"
#include "klein/kleingordon.hpp"
#include "klein/matcher.hpp"
#include "klein/verify.hpp"

namespace py = pybind11;
using namespace klein;

namespace {

PotentialProfile profile_from(std::vector<double> edges, std::vector<double> heights)
{
    return PotentialProfile::piecewise(std::move(edges), std::move(heights));
}

std::optional<WidthRule> rule_from(const py::object& width)
{
    if (width.is_none()) {
        return std::nullopt;
    }
    if (py::isinstance<py::str>(width)) {
        if (width.cast<std::string>() != "figure") {
            throw InvalidInput("width must be a number or 'figure'");
        }
        return WidthRule::figure_convention();
    }
    return WidthRule::fixed(width.cast<double>());
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Dirac and Klein-Gordon scattering on piecewise-constant potentials";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<SingularSystem>(m, "SingularSystem", PyExc_ArithmeticError);

    py::enum_<Model>(m, "Model")
        .value("Dirac", Model::Dirac)
        .value("KleinGordon", Model::KleinGordon);
    py::enum_<Geometry>(m, "Geometry")
        .value("Step", Geometry::Step)
        .value("Barrier", Geometry::Barrier)
        .value("General", Geometry::General);

    py::class_<ParticleSpec>(m, "ParticleSpec")
        .def(py::init(&ParticleSpec::create), py::arg("mass_energy"), py::arg("energy"))
        .def_readonly("mass_energy", &ParticleSpec::mass_energy)
        .def_readonly("energy", &ParticleSpec::energy)
        .def("incident_momentum", &ParticleSpec::incident_momentum);

    py::class_<ScatteringSolution>(m, "ScatteringSolution")
        .def_property_readonly("model", [](const ScatteringSolution& s) { return s.model; })
        .def_readonly("reflection", &ScatteringSolution::reflection)
        .def_readonly("interior", &ScatteringSolution::interior)
        .def_readonly("transmission", &ScatteringSolution::transmission)
        .def_readonly("R", &ScatteringSolution::R)
        .def_readonly("T", &ScatteringSolution::T)
        .def_readonly("limit_value", &ScatteringSolution::limit_value)
        .def_property_readonly("one_sided",
                               [](const ScatteringSolution& s) -> py::object {
                                   if (!s.one_sided) return py::none();
                                   return py::make_tuple(s.one_sided->below, s.one_sided->above);
                               })
        .def_property_readonly("regime",
                               [](const ScatteringSolution& s) {
                                   return std::string(to_string(s.interior_regime().regime));
                               })
        .def("field", [](const ScatteringSolution& s, double x) { return field_at(s, x); })
        .def("region_flux", &region_flux);

    m.def("classify_regime", [](double e, double v, double mass) {
        const auto r = classify_regime(e, v, mass);
        return py::make_tuple(to_string(r.regime), to_string(r.boundary));
    });
    m.def("kinematics", [](double e, double v, double mass) {
        const auto k = kinematics(e, v, mass);
        return py::make_tuple(k.branch == Branch::Positive ? "positive" : "negative",
                              k.wave == Wave::Propagating ? "propagating" : "evanescent",
                              k.momentum);
    });

    m.def("dirac_step_solve", &dirac_step_solve, py::arg("spec"), py::arg("v0"));
    m.def("dirac_step_limit", &dirac_step_limit, py::arg("spec"));
    m.def("dirac_barrier_solve", &dirac_barrier_solve, py::arg("spec"), py::arg("v0"),
          py::arg("width"));
    m.def("dirac_barrier_limit", &dirac_barrier_limit, py::arg("spec"), py::arg("phase"));
    m.def("kg_step_solve", &kg_step_solve, py::arg("spec"), py::arg("v0"));
    m.def("kg_barrier_solve", &kg_barrier_solve, py::arg("spec"), py::arg("v0"),
          py::arg("width"));

    m.def("solve_numeric",
          [](std::vector<double> edges, std::vector<double> heights, const ParticleSpec& spec,
             Model model) { return solve_numeric(profile_from(edges, heights), spec, model); },
          py::arg("edges"), py::arg("heights"), py::arg("spec"), py::arg("model"));
    m.def("transfer_matrix_solve",
          [](std::vector<double> edges, std::vector<double> heights, const ParticleSpec& spec,
             Model model) {
              return transfer_matrix_solve(profile_from(edges, heights), spec, model);
          },
          py::arg("edges"), py::arg("heights"), py::arg("spec"), py::arg("model"));
    m.def("continuity_residual", &continuity_residual);

    m.def("sweep",
          [](Model model, Geometry geometry, const ParticleSpec& spec, py::object width,
             double v0_min, double v0_max, std::size_t count) {
              const auto grid = make_grid(spec, v0_min, v0_max, count);
              const auto curve = sweep(model, geometry, spec, rule_from(width), grid);
              py::list rows;
              for (const auto& s : curve.samples) {
                  rows.append(py::make_tuple(s.v0, s.R, to_string(s.regime), s.annotation));
              }
              py::dict notes;
              notes["gap"] = py::make_tuple(curve.annotations.gap.lower, curve.annotations.gap.upper);
              notes["alleys"] = curve.annotations.alleys;
              notes["resonances"] = curve.annotations.resonances;
              notes["jump"] = curve.annotations.jump_magnitude;
              notes["all_transmitting"] = curve.annotations.all_transmitting;
              return py::make_tuple(rows, notes);
          },
          py::arg("model"), py::arg("geometry"), py::arg("spec"), py::arg("width") = py::none(),
          py::arg("v0_min"), py::arg("v0_max"), py::arg("count"));
    m.def("find_total_transmissions",
          [](Model model, Geometry geometry, const ParticleSpec& spec, std::optional<double> width,
             double v0_min, double v0_max) {
              const auto t = find_total_transmissions(model, geometry, spec, width, v0_min, v0_max);
              return py::make_tuple(t.v0, t.all);
          });
    m.def("jump_gap", &jump_gap, py::arg("spec"), py::arg("width"));
    m.def("small_mass_bound", &small_mass_bound, py::arg("spec"));
    m.def("massless_phase_solution",
          [](std::function<double(double)> v, double x_min, double x_max, double energy,
             double a_ref, double x, int sign) {
              const auto r = massless_phase_solution({v, x_min, x_max}, energy, a_ref, x, 1.0, sign);
              return py::make_tuple(r.upper, r.lower);
          },
          py::arg("potential"), py::arg("x_min"), py::arg("x_max"), py::arg("energy"),
          py::arg("a_ref"), py::arg("x"), py::arg("sign") = 1);
    m.def("run_property_suite", [](std::uint64_t seed, std::size_t samples) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.samples = samples;
        py::dict out;
        for (const auto& p : run_property_suite(opt).properties) {
            out[py::str(p.name)] = p.passed();
        }
        return out;
    });
}
