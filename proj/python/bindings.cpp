#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "willmore/catenoid_sphere.hpp"
#include "willmore/cli.hpp"
#include "willmore/errors.hpp"
#include "willmore/flow.hpp"
#include "willmore/homotopy.hpp"
#include "willmore/profile_io.hpp"

namespace py = pybind11;
using namespace willmore;

namespace {

ProfileCurve curve_from(const std::vector<double>& r, const std::vector<double>& h, bool closed_start, bool closed_end) {
    if (r.size() != h.size()) throw ParameterError("r and h differ in length");
    std::vector<double> s(r.size(), 0.0);
    for (std::size_t i = 1; i < s.size(); ++i) s[i] = s[i - 1] + std::hypot(r[i] - r[i - 1], h[i] - h[i - 1]);
    return ProfileCurve(std::move(s), r, h, {closed_start, closed_end});
}

py::dict energy_dict(const EnergyBreakdown& e) {
    py::dict d;
    d["W"] = e.total.value;
    d["error"] = e.total.error;
    d["cap"] = e.cap.value;
    d["glue"] = e.glue.value;
    d["neck"] = e.neck.value;
    d["other"] = e.other.value;
    return d;
}

py::tuple samples(const ProfileCurve& c) { return py::make_tuple(c.s(), c.r(), c.h()); }

AttachmentConfig attachment(const std::string& lower, const std::string& upper, double lambda, double delta,
                            double R) {
    AttachmentConfig c;
    c.lower = parse_catsph_kind(lower);
    c.upper = parse_catsph_kind(upper);
    c.lambda = lambda;
    c.delta = delta;
    c.R_lower = c.R_upper = R > 0 ? R : lambda;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_RuntimeError);

    m.def("read_profile", [](const std::string& path) { return samples(read_profile_file(path).curve); });
    m.def("builtin_curve", [](const std::string& name) { return samples(builtin_curve(name)); });
    m.def("builtin_curve_names", &builtin_curve_names);

    m.def("energy", [](const std::string& path) { return energy_dict(willmore_energy(read_profile_file(path).curve)); },
          py::arg("path"));
    m.def("energy_of", [](const std::vector<double>& r, const std::vector<double>& h, bool closed) {
              return energy_dict(willmore_energy(curve_from(r, h, closed, closed)));
          },
          py::arg("r"), py::arg("h"), py::arg("closed") = true);
    m.def("turning_number", [](const std::string& path) { return tangent_lift(read_profile_file(path).curve).tau; });
    m.def("multiplicity", [](const std::string& path) { return tuple_point_multiplicity(read_profile_file(path).curve); });

    m.def("catsph_energy", [](double lambda, double R, double delta, const std::string& kind) {
              const auto e = catsph_energy({lambda, R, delta, parse_catsph_kind(kind)});
              auto d = energy_dict(e.parts);
              d["cap_closed_form"] = e.cap_closed_form;
              return d;
          },
          py::arg("lambda_"), py::arg("R"), py::arg("delta"), py::arg("kind") = "beta");
    m.def("sweep_csv", [](const std::string& kind, const std::vector<double>& lambdas, const std::vector<double>& deltas) {
              return sweep_csv(catsph_sweep(parse_catsph_kind(kind), lambdas, deltas));
          },
          py::arg("kind"), py::arg("lambdas"), py::arg("deltas") = std::vector<double>{0.1});
    m.def("model_energy", [](const std::string& lower, const std::string& upper, double lambda, double delta, double R) {
              return energy_dict(model_energy(attachment(lower, upper, lambda, delta, R)));
          },
          py::arg("lower"), py::arg("upper"), py::arg("lambda_") = 20.0, py::arg("delta") = 0.1, py::arg("R") = 0.0);
    m.def("model_curve", [](const std::string& lower, const std::string& upper, double lambda, double delta, double R) {
              return samples(assemble_model(attachment(lower, upper, lambda, delta, R)));
          },
          py::arg("lower"), py::arg("upper"), py::arg("lambda_") = 20.0, py::arg("delta") = 0.1, py::arg("R") = 0.0);

    m.def("shrinking_trace", [](double start, double end, double delta, int steps) {
              const auto t = shrinking_trace(start, end, delta, steps);
              py::dict d;
              d["t"] = t.t;
              d["lambda"] = t.lambda_t;
              d["W"] = t.W;
              d["monotone"] = t.monotone;
              d["epsilon"] = t.epsilon;
              return d;
          },
          py::arg("lambda_start"), py::arg("lambda_end"), py::arg("delta"), py::arg("steps"));

    m.def("flow", [](const std::vector<double>& r, const std::vector<double>& h, int steps, int nodes,
                     const std::string& metric) {
              FlowControls c;
              c.max_steps = steps;
              c.nodes = nodes;
              if (metric != "sobolev" && metric != "l2") throw ParameterError("metric must be sobolev or l2");
              c.metric = metric == "l2" ? FlowMetric::l2 : FlowMetric::sobolev;
              Trajectory tr;
              {
                  py::gil_scoped_release nogil;
                  tr = flow_run(curve_from(r, h, true, true), c);
              }
              py::dict d;
              d["termination"] = to_string(tr.termination);
              std::vector<double> t, W, rmin;
              for (const auto& rec : tr.records) {
                  t.push_back(rec.t);
                  W.push_back(rec.W);
                  rmin.push_back(rec.r_min);
              }
              d["t"] = t;
              d["W"] = W;
              d["r_min"] = rmin;
              d["tau"] = tr.final_state.tau;
              d["profile"] = samples(tr.final_state.profile);
              d["neck_residual"] = tr.final_neck.residual;
              return d;
          },
          py::arg("r"), py::arg("h"), py::arg("steps") = 1000, py::arg("nodes") = 0, py::arg("metric") = "sobolev");

    m.def("run_cli", [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code;
              {
                  py::gil_scoped_release nogil;
                  code = run_cli(args, out, err);
              }
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"));
}
