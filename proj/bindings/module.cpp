#include "csvortex/config.hpp"
#include "csvortex/critical.hpp"
#include "csvortex/diagnostics.hpp"
#include "csvortex/graph_io.hpp"
#include "csvortex/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace csvortex;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Solver for the generalized self-dual Chern-Simons system on finite graphs";

    py::class_<WeightedGraph>(m, "WeightedGraph")
        .def(py::init<std::vector<std::pair<std::string, double>>,
                      const std::vector<std::tuple<std::string, std::string, double>>&>(),
             py::arg("vertices"), py::arg("edges"),
             "Build a graph from (id, mu) vertices and (id1, id2, weight) edges.")
        .def("__len__", &WeightedGraph::size)
        .def_property_readonly("ids", &WeightedGraph::ids)
        .def("index_of", &WeightedGraph::index_of, py::arg("id"))
        .def("mu", &WeightedGraph::mu, py::arg("vertex"))
        .def_property_readonly("total_volume", &WeightedGraph::total_volume)
        .def("is_same", &WeightedGraph::is, py::arg("other"));

    m.def("load_graph", &csvortex::load_graph, py::arg("path"),
          "Load a graph from the v/e text format.");
    m.def(
        "parse_graph",
        [](const std::string& text, const std::string& name) {
            std::istringstream in(text);
            return parse_graph(in, name);
        },
        py::arg("text"), py::arg("name") = "<string>");

    py::class_<VertexField>(m, "VertexField")
        .def(py::init<const WeightedGraph&>(), py::arg("graph"))
        .def(py::init<const WeightedGraph&, const std::vector<double>&>(), py::arg("graph"),
             py::arg("values"))
        .def("__len__", &VertexField::size)
        .def("__getitem__",
             [](const VertexField& f, std::size_t i) {
                 if (i >= f.size()) {
                     throw py::index_error();
                 }
                 return f[i];
             })
        .def_property_readonly("values", &VertexField::to_vector)
        .def_property_readonly("graph", &VertexField::graph);

    m.def("laplacian", &csvortex::laplacian, py::arg("graph"), py::arg("u"),
          "mu-Laplacian of a vertex field.");
    m.def("gamma", &csvortex::gamma, py::arg("graph"), py::arg("u"), py::arg("v"),
          "Edge-difference bilinear form; gamma(u, u) is the squared gradient.");
    m.def("integrate", &csvortex::integrate, py::arg("graph"), py::arg("f"));
    m.def("sobolev_norm", &csvortex::sobolev_norm, py::arg("graph"), py::arg("u"));
    m.def("mean", &csvortex::mean, py::arg("graph"), py::arg("u"));
    m.def("split", &csvortex::split, py::arg("graph"), py::arg("u"),
          "Mean/fluctuation decomposition.");

    py::enum_<PotentialKind>(m, "PotentialKind")
        .value("constant_one", PotentialKind::constant_one)
        .value("polynomial", PotentialKind::polynomial)
        .value("tabulated", PotentialKind::tabulated);

    py::class_<PotentialModel>(m, "PotentialModel")
        .def_static("constant_one", &PotentialModel::constant_one)
        .def_static("polynomial", &PotentialModel::polynomial, py::arg("coeffs"))
        .def_static("tabulated", &PotentialModel::tabulated, py::arg("grid"),
                    py::arg("values"))
        .def_property_readonly("kind", &PotentialModel::kind)
        .def("value", &PotentialModel::value, py::arg("t"))
        .def_property_readonly("value_at_one", &PotentialModel::value_at_one)
        .def("primitive", &PotentialModel::primitive, py::arg("t"))
        .def("primitive_quadrature", &PotentialModel::primitive_quadrature, py::arg("t"));

    py::class_<NonlinearityModel>(m, "NonlinearityModel")
        .def(py::init<PotentialModel, PotentialModel>(), py::arg("G"), py::arg("H"))
        .def_static("classical", &NonlinearityModel::classical)
        .def_readonly("G", &NonlinearityModel::G)
        .def_readonly("H", &NonlinearityModel::H);

    py::class_<VortexSet>(m, "VortexSet")
        .def_static("from_ids", &VortexSet::from_ids, py::arg("graph"), py::arg("species1"),
                    py::arg("species2"))
        .def_readonly("species1", &VortexSet::species1)
        .def_readonly("species2", &VortexSet::species2)
        .def_readonly("n1", &VortexSet::n1)
        .def_readonly("n2", &VortexSet::n2);

    m.def("dirac_field", &csvortex::dirac_field, py::arg("graph"), py::arg("vortices"),
          "Discrete Dirac data with unit integral per vortex.");

    py::class_<BackgroundPair>(m, "BackgroundPair")
        .def_readonly("u0", &BackgroundPair::u0)
        .def_readonly("v0", &BackgroundPair::v0)
        .def_readonly("n1", &BackgroundPair::n1)
        .def_readonly("n2", &BackgroundPair::n2)
        .def_readonly("total_volume", &BackgroundPair::total_volume);

    m.def("compute_background", &csvortex::compute_background, py::arg("graph"), py::arg("vortices"),
          "Mean-zero background pair absorbing the Dirac masses.");

    py::class_<SolverParams>(m, "SolverParams")
        .def(py::init<>())
        .def_readwrite("lambda_", &SolverParams::lambda)
        .def_readwrite("k_margin", &SolverParams::k_margin)
        .def_readwrite("tol_step", &SolverParams::tol_step)
        .def_readwrite("tol_residual", &SolverParams::tol_residual)
        .def_readwrite("max_iter", &SolverParams::max_iter)
        .def_readwrite("divergence_floor", &SolverParams::divergence_floor);

    py::class_<SolutionPair>(m, "SolutionPair")
        .def_readonly("u", &SolutionPair::u)
        .def_readonly("v", &SolutionPair::v)
        .def_readonly("u_prime", &SolutionPair::u_prime)
        .def_readonly("v_prime", &SolutionPair::v_prime)
        .def_readonly("lambda_", &SolutionPair::lambda)
        .def_readonly("iterations", &SolutionPair::iterations)
        .def_readonly("residual_u", &SolutionPair::residual_u)
        .def_readonly("residual_v", &SolutionPair::residual_v);

    py::enum_<IterationOutcome::Status>(m, "Status")
        .value("converged", IterationOutcome::Status::converged)
        .value("diverged", IterationOutcome::Status::diverged)
        .value("iteration_budget_exceeded",
               IterationOutcome::Status::iteration_budget_exceeded);

    py::class_<IterationOutcome>(m, "IterationOutcome")
        .def_readonly("status", &IterationOutcome::status)
        .def_readonly("solution", &IterationOutcome::solution)
        .def_readonly("iterations", &IterationOutcome::iterations)
        .def_readonly("mean_u", &IterationOutcome::mean_u)
        .def_readonly("mean_v", &IterationOutcome::mean_v)
        .def_readonly("last_step", &IterationOutcome::last_step)
        .def("converged", &IterationOutcome::converged);

    m.def("solve_maximal", &csvortex::solve_maximal, py::arg("graph"), py::arg("background"),
          py::arg("nonlinearity"), py::arg("params"),
          "Monotone iteration from (-u0, -v0); returns the maximal solution, a "
          "divergence certificate, or budget exhaustion.");
    m.def("system_residual", &csvortex::system_residual, py::arg("graph"), py::arg("background"),
          py::arg("nonlinearity"), py::arg("lambda_"), py::arg("u"), py::arg("v"));

    py::class_<LowerSolutionReport>(m, "LowerSolutionReport")
        .def_readonly("is_lower_solution", &LowerSolutionReport::is_lower_solution)
        .def_readonly("min_slack", &LowerSolutionReport::min_slack);

    m.def("check_lower_solution", &csvortex::check_lower_solution, py::arg("graph"),
          py::arg("background"), py::arg("nonlinearity"), py::arg("lambda_"),
          py::arg("u_minus"), py::arg("v_minus"));

    py::class_<ConstantLowerSolution>(m, "ConstantLowerSolution")
        .def_readonly("c1", &ConstantLowerSolution::c1)
        .def_readonly("c2", &ConstantLowerSolution::c2)
        .def_readonly("min_lambda", &ConstantLowerSolution::min_lambda);

    m.def("constant_lower_solution", &csvortex::constant_lower_solution, py::arg("graph"),
          py::arg("background"), py::arg("nonlinearity"));

    m.def("analytic_lower_bound",
          py::overload_cast<const WeightedGraph&, const VortexSet&,
                            const NonlinearityModel&>(&csvortex::analytic_lower_bound),
          py::arg("graph"), py::arg("vortices"), py::arg("nonlinearity"),
          "4*pi*max(N1,N2) / (G(1) H(1) |V|).");

    py::class_<ProbeRecord>(m, "ProbeRecord")
        .def_readonly("lambda_", &ProbeRecord::lambda)
        .def_readonly("status", &ProbeRecord::status)
        .def_readonly("iterations", &ProbeRecord::iterations);

    py::class_<CriticalResult>(m, "CriticalResult")
        .def_readonly("lambda_lo", &CriticalResult::lambda_lo)
        .def_readonly("lambda_hi", &CriticalResult::lambda_hi)
        .def_readonly("lo_probed", &CriticalResult::lo_probed)
        .def_readonly("analytic_bound", &CriticalResult::analytic_bound)
        .def_readonly("solution_at_hi", &CriticalResult::solution_at_hi)
        .def_readonly("probes", &CriticalResult::probes)
        .def("width", &CriticalResult::width);

    m.def("find_critical", &csvortex::find_critical, py::arg("graph"), py::arg("background"),
          py::arg("nonlinearity"), py::arg("bisect_tol"), py::arg("params"),
          "Bisect the critical coupling over the existence dichotomy.");

    py::class_<ContinuationPoint>(m, "ContinuationPoint")
        .def_readonly("lambda_", &ContinuationPoint::lambda)
        .def_readonly("sobolev_u", &ContinuationPoint::sobolev_u)
        .def_readonly("sobolev_v", &ContinuationPoint::sobolev_v);

    py::class_<ContinuationReport>(m, "ContinuationReport")
        .def_readonly("epsilons", &ContinuationReport::epsilons)
        .def_readonly("trace", &ContinuationReport::trace)
        .def_readonly("solutions", &ContinuationReport::solutions)
        .def_readonly("step_dist_u", &ContinuationReport::step_dist_u)
        .def_readonly("step_dist_v", &ContinuationReport::step_dist_v)
        .def_readonly("final_residual_u", &ContinuationReport::final_residual_u)
        .def_readonly("final_residual_v", &ContinuationReport::final_residual_v)
        .def_readonly("domination_ok", &ContinuationReport::domination_ok)
        .def_readonly("min_domination_gap", &ContinuationReport::min_domination_gap);

    m.def("near_critical_solution", &csvortex::near_critical_solution, py::arg("graph"),
          py::arg("background"), py::arg("nonlinearity"), py::arg("result"),
          py::arg("epsilons"), py::arg("params"));

    py::class_<IntegralIdentities>(m, "IntegralIdentities")
        .def_readonly("lhs1", &IntegralIdentities::lhs1)
        .def_readonly("lhs2", &IntegralIdentities::lhs2)
        .def_readonly("defect1", &IntegralIdentities::defect1)
        .def_readonly("defect2", &IntegralIdentities::defect2);

    m.def("check_integral_identities",
          py::overload_cast<const WeightedGraph&, const BackgroundPair&,
                            const NonlinearityModel&, const SolutionPair&>(
              &csvortex::check_integral_identities),
          py::arg("graph"), py::arg("background"), py::arg("nonlinearity"), py::arg("sol"));

    py::class_<MonotonicityCheck>(m, "MonotonicityCheck")
        .def_readonly("strictly_increasing", &MonotonicityCheck::strictly_increasing)
        .def_readonly("min_gap", &MonotonicityCheck::min_gap);

    m.def("check_lambda_monotonicity", &csvortex::check_lambda_monotonicity, py::arg("solutions"));

    py::class_<SpeciesNorms>(m, "SpeciesNorms")
        .def_readonly("mean", &SpeciesNorms::mean)
        .def_readonly("fluct_grad_norm", &SpeciesNorms::fluct_grad_norm)
        .def_readonly("sobolev", &SpeciesNorms::sobolev)
        .def_readonly("energy_lhs", &SpeciesNorms::energy_lhs)
        .def_readonly("energy_rhs", &SpeciesNorms::energy_rhs)
        .def_readonly("energy_defect", &SpeciesNorms::energy_defect);

    py::class_<AprioriNorms>(m, "AprioriNorms")
        .def_readonly("u", &AprioriNorms::u)
        .def_readonly("v", &AprioriNorms::v);

    m.def("apriori_norms", &csvortex::apriori_norms, py::arg("graph"), py::arg("background"),
          py::arg("nonlinearity"), py::arg("sol"));

    py::class_<DiagnosticReport>(m, "DiagnosticReport")
        .def_readonly("identity_defect_1", &DiagnosticReport::identity_defect_1)
        .def_readonly("identity_defect_2", &DiagnosticReport::identity_defect_2)
        .def_readonly("sign_margin_u", &DiagnosticReport::sign_margin_u)
        .def_readonly("sign_margin_v", &DiagnosticReport::sign_margin_v)
        .def_readonly("mean_u", &DiagnosticReport::mean_u)
        .def_readonly("mean_v", &DiagnosticReport::mean_v)
        .def_readonly("fluct_grad_u", &DiagnosticReport::fluct_grad_u)
        .def_readonly("fluct_grad_v", &DiagnosticReport::fluct_grad_v)
        .def_readonly("sobolev_u", &DiagnosticReport::sobolev_u)
        .def_readonly("sobolev_v", &DiagnosticReport::sobolev_v)
        .def_readonly("energy_defect_u", &DiagnosticReport::energy_defect_u)
        .def_readonly("energy_defect_v", &DiagnosticReport::energy_defect_v)
        .def_readonly("residual_u", &DiagnosticReport::residual_u)
        .def_readonly("residual_v", &DiagnosticReport::residual_v)
        .def_readonly("pass_", &DiagnosticReport::pass)
        .def("__bool__", [](const DiagnosticReport& r) { return r.pass; });

    m.def("build_report", &csvortex::build_report, py::arg("graph"), py::arg("background"),
          py::arg("nonlinearity"), py::arg("sol"), py::arg("tol_residual") = 1e-10);
}
