// Copyright (c) 2026, The aapot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <vector>

#include "aapot/cubature.hpp"
#include "aapot/densities.hpp"
#include "aapot/error.hpp"
#include "aapot/genfun.hpp"
#include "aapot/geometry.hpp"
#include "aapot/kernels.hpp"
#include "aapot/params.hpp"
#include "aapot/quadrature.hpp"
#include "aapot/specfun.hpp"

namespace py = pybind11;
using namespace aapot;

namespace {

// Owns the domain and density so an evaluator can outlive the Python objects
// it was built from.
class Evaluator {
public:
    Evaluator(double a, double b, const std::string& density, const RunParams& params,
              const QuadratureRule& rule, int threads, bool use_cache)
        : dom_(std::make_unique<EllipseDomain>(a, b)),
          density_(make_density(density, *dom_, params.lambda2)) {
        EvalOptions opts;
        opts.threads = threads;
        opts.use_interior_cache = use_cache;
        ev_ = std::make_unique<CubatureEvaluator>(*dom_, *density_, params, rule, opts);
    }

    PotentialResult at_grid(std::int64_t i, std::int64_t j) { return ev_->at_grid({i, j}); }
    PotentialResult at_point(double x1, double x2) const { return ev_->at_point({x1, x2}); }
    PotentialResult at(double x1, double x2) {
        try {
            return ev_->at_grid(grid_index_of({x1, x2}, ev_->params().h));
        } catch (const ConfigError&) {
            return ev_->at_point({x1, x2});
        }
    }
    std::size_t interior_nodes() const { return ev_->nodes().interior_count(); }
    std::size_t strip_nodes() const { return ev_->nodes().strip.size(); }

private:
    std::unique_ptr<EllipseDomain> dom_;
    std::unique_ptr<Density> density_;
    std::unique_ptr<CubatureEvaluator> ev_;
};

py::dict result_dict(const PotentialResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["exact"] = r.exact ? py::cast(*r.exact) : py::none();
    d["abs_error"] = r.abs_error ? py::cast(*r.abs_error) : py::none();
    d["rel_error"] = r.rel_error ? py::cast(*r.rel_error) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_aapot, m) {
    m.doc() = "Volume potentials of -Delta + lambda^2 by boundary-corrected Gaussian cubature";

    auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    (void)config_error;

    py::class_<RunParams>(m, "RunParams")
        .def(py::init([](double h, double D, int M, double r, double lambda2) {
                 RunParams p;
                 p.h = h;
                 p.D = D;
                 p.M = M;
                 p.r = r;
                 p.lambda2 = lambda2;
                 p.validate();
                 return p;
             }),
             py::arg("h") = 1.0 / 128.0, py::arg("D") = 3.0, py::arg("M") = 3, py::arg("r") = 6.0,
             py::arg("lambda2") = 1.0)
        .def_readwrite("h", &RunParams::h)
        .def_readwrite("D", &RunParams::D)
        .def_readwrite("M", &RunParams::M)
        .def_readwrite("r", &RunParams::r)
        .def_readwrite("lambda2", &RunParams::lambda2)
        .def("validate", &RunParams::validate)
        .def("__repr__", [](const RunParams& p) {
            return py::str("RunParams(h={}, D={}, M={}, r={}, lambda2={})").format(p.h, p.D, p.M, p.r, p.lambda2);
        });

    py::class_<QuadratureRule>(m, "QuadratureRule")
        .def(py::init([](double alpha, double beta, double tau, int s_min, int s_max) {
                 QuadratureRule q{alpha, beta, tau, s_min, s_max};
                 q.validate();
                 return q;
             }),
             py::arg("alpha") = 4.0, py::arg("beta") = 2.0, py::arg("tau") = 0.01, py::arg("s_min") = -80,
             py::arg("s_max") = 100)
        .def_readonly("alpha", &QuadratureRule::alpha)
        .def_readonly("beta", &QuadratureRule::beta)
        .def_readonly("tau", &QuadratureRule::tau)
        .def_readonly("s_min", &QuadratureRule::s_min)
        .def_readonly("s_max", &QuadratureRule::s_max)
        .def_static("coarse", &QuadratureRule::coarse)
        .def_static("fine", &QuadratureRule::fine)
        .def("refined", &QuadratureRule::refined);

    py::class_<Evaluator>(m, "Evaluator")
        .def(py::init<double, double, const std::string&, const RunParams&, const QuadratureRule&, int, bool>(),
             py::arg("a"), py::arg("b"), py::arg("density"), py::arg("params"),
             py::arg("rule") = QuadratureRule::coarse(), py::arg("threads") = 1, py::arg("use_cache") = true,
             py::call_guard<py::gil_scoped_release>())
        .def("at_grid", [](Evaluator& e, std::int64_t i, std::int64_t j) {
            PotentialResult r;
            {
                py::gil_scoped_release release;
                r = e.at_grid(i, j);
            }
            return result_dict(r);
        })
        .def("at_point", [](const Evaluator& e, double x1, double x2) {
            PotentialResult r;
            {
                py::gil_scoped_release release;
                r = e.at_point(x1, x2);
            }
            return result_dict(r);
        })
        .def("__call__", [](Evaluator& e, double x1, double x2) {
            PotentialResult r;
            {
                py::gil_scoped_release release;
                r = e.at(x1, x2);
            }
            return result_dict(r);
        })
        .def_property_readonly("interior_nodes", &Evaluator::interior_nodes)
        .def_property_readonly("strip_nodes", &Evaluator::strip_nodes);

    m.def(
        "convergence",
        [](double a, double b, const std::string& density, const std::vector<std::pair<double, double>>& points,
           const std::vector<double>& h_list, const RunParams& base, const QuadratureRule& rule,
           const std::string& reference, int order, int threads) {
            const EllipseDomain dom(a, b);
            const auto dens = make_density(density, dom, base.lambda2);
            std::vector<Point2> pts;
            for (const auto& [x1, x2] : points) pts.push_back({x1, x2});
            ConvergenceOptions opts;
            if (reference == "exact") opts.reference = Reference::exact;
            else if (reference == "finest") opts.reference = Reference::finest;
            else if (reference == "richardson") opts.reference = Reference::richardson;
            else throw ConfigError("reference must be 'exact', 'finest' or 'richardson'");
            opts.richardson_order = order;
            opts.eval.threads = threads;
            ConvergenceTable t;
            {
                py::gil_scoped_release release;
                t = convergence_study(dom, *dens, pts, h_list, base, rule, opts);
            }
            py::list rows;
            for (const auto& row : t.rows) {
                py::dict d;
                d["h"] = row.h;
                d["point"] = row.point;
                d["x"] = py::make_tuple(row.x[0], row.x[1]);
                d["value"] = row.value;
                d["reference"] = row.reference;
                d["error"] = row.error;
                d["relative"] = row.relative;
                d["rate"] = row.rate ? py::cast(*row.rate) : py::none();
                rows.append(d);
            }
            py::list observed;
            for (const auto& q : t.observed_order) observed.append(q ? py::cast(*q) : py::none());
            py::dict out;
            out["rows"] = rows;
            out["observed_order"] = observed;
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("density"), py::arg("points"), py::arg("h_list"), py::arg("params"),
        py::arg("rule") = QuadratureRule::fine(), py::arg("reference") = "exact", py::arg("order") = 2,
        py::arg("threads") = 1);

    m.def("a_coeff", &a_coeff, py::arg("M"), py::arg("n"), py::arg("ksq"), py::arg("params"), py::arg("rule"));
    m.def(
        "b_scaled",
        [](int M, double tangential_sq, double normal, double a, double lam2h2D, const QuadratureRule& rule) {
            return coeff::b_scaled(M, 2, {tangential_sq, normal}, a, lam2h2D, DeNodes(rule));
        },
        py::arg("M"), py::arg("tangential_sq"), py::arg("normal"), py::arg("a"), py::arg("lam2h2D"),
        py::arg("rule") = QuadratureRule::coarse());

    m.def(
        "project_to_ellipse",
        [](double a, double b, double x1, double x2) {
            const Point2 p = project_to_ellipse(EllipseDomain(a, b), {x1, x2});
            return py::make_tuple(p[0], p[1]);
        },
        py::arg("a"), py::arg("b"), py::arg("x1"), py::arg("x2"));

    m.def("hermite", &specfun::hermite, py::arg("k"), py::arg("x"));
    m.def("laguerre", &specfun::laguerre, py::arg("k"), py::arg("gamma"), py::arg("y"));
    m.def(
        "eta",
        [](int M, std::vector<double> x) { return genfun::eta_2m({M, static_cast<int>(x.size())}, x); },
        py::arg("M"), py::arg("x"));
    m.def(
        "moment_defect",
        [](int M, std::vector<int> alpha) { return genfun::moment_defect({M, static_cast<int>(alpha.size())}, alpha); },
        py::arg("M"), py::arg("alpha"));
    m.def("p_poly", &kernels::p_poly, py::arg("M"), py::arg("n"), py::arg("x_normsq"), py::arg("t"));
    m.def("phi_k", &kernels::phi_k_closed, py::arg("k"), py::arg("x"), py::arg("t"), py::arg("p"));
}
