#include "csvortex/config.hpp"
#include "csvortex/critical.hpp"
#include "csvortex/diagnostics.hpp"
#include "csvortex/graph_io.hpp"
#include "csvortex/solution_io.hpp"
#include "csvortex/solver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace csvortex;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerifyFailed = 2;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + out_path + "'");
    }
    out << text;
}

struct CommonArgs {
    std::string graph_path;
    std::string config_path;
    std::string out_path;
    std::optional<double> lambda;
    std::optional<double> lambda_min;
    std::optional<double> lambda_max;
    std::optional<int> steps;
    std::optional<double> bisect_tol;
    std::optional<double> divergence_floor;
    std::optional<int> max_iter;
};

struct Instance {
    WeightedGraph graph;
    RunConfig config;
    VortexSet vortices;
    BackgroundPair background;
};

Instance load_instance(const CommonArgs& args) {
    WeightedGraph graph = load_graph(args.graph_path);
    RunConfig config = RunConfig::load(args.config_path);
    VortexSet vortices =
        VortexSet::from_ids(graph, config.vortices_species1, config.vortices_species2);
    BackgroundPair background = compute_background(graph, vortices);
    if (args.divergence_floor) {
        config.params.divergence_floor = *args.divergence_floor;
    }
    if (args.max_iter) {
        config.params.max_iter = *args.max_iter;
    }
    return Instance{std::move(graph), std::move(config), std::move(vortices),
                    std::move(background)};
}

nlohmann::ordered_json outcome_to_json(const IterationOutcome& outcome, double lambda) {
    nlohmann::ordered_json doc;
    doc["lambda"] = lambda;
    doc["outcome"] = to_string(outcome.status);
    doc["iterations"] = outcome.iterations;
    doc["mean_u"] = outcome.mean_u;
    doc["mean_v"] = outcome.mean_v;
    if (outcome.status == IterationOutcome::Status::iteration_budget_exceeded) {
        doc["last_step"] = outcome.last_step;
        doc["residual_u"] = outcome.residual_u;
        doc["residual_v"] = outcome.residual_v;
    }
    return doc;
}

int cmd_solve(const CommonArgs& args) {
    Instance inst = load_instance(args);
    SolverParams params = inst.config.params;
    if (args.lambda) {
        params.lambda = *args.lambda;
    } else if (inst.config.lambda) {
        params.lambda = *inst.config.lambda;
    } else {
        throw std::runtime_error("solve needs --lambda or a `lambda` config key");
    }

    const IterationOutcome outcome =
        solve_maximal(inst.graph, inst.background, inst.config.nonlinearity, params);

    nlohmann::ordered_json doc;
    if (outcome.converged()) {
        const DiagnosticReport report =
            build_report(inst.graph, inst.background, inst.config.nonlinearity,
                         *outcome.solution, params.tol_residual);
        doc = solution_to_json(inst.graph, *outcome.solution, report);
    } else {
        doc = outcome_to_json(outcome, params.lambda);
    }
    write_output(dump_json(doc), args.out_path);

    switch (outcome.status) {
        case IterationOutcome::Status::converged:
            return kExitOk;
        case IterationOutcome::Status::diverged:
            return kExitDiverged;
        case IterationOutcome::Status::iteration_budget_exceeded:
            return kExitBudget;
    }
    return kExitInputError;
}

int cmd_find_critical(const CommonArgs& args) {
    Instance inst = load_instance(args);
    const double bisect_tol = args.bisect_tol.value_or(inst.config.bisect_tol);

    const CriticalResult result = find_critical(inst.graph, inst.background,
                                                inst.config.nonlinearity, bisect_tol,
                                                inst.config.params);
    if (result.lambda_hi < result.analytic_bound - bisect_tol) {
        throw std::runtime_error("bracket fell below the analytic bound");
    }

    std::vector<double> epsilons = inst.config.epsilons;
    if (epsilons.empty()) {
        epsilons = {0.1 * result.analytic_bound, 0.01 * result.analytic_bound,
                    0.001 * result.analytic_bound};
    }
    const ContinuationReport continuation =
        near_critical_solution(inst.graph, inst.background, inst.config.nonlinearity,
                               result, epsilons, inst.config.params);

    nlohmann::ordered_json doc;
    doc["analytic_bound"] = result.analytic_bound;
    doc["bisect_tol"] = bisect_tol;
    doc["lambda_lo"] = result.lambda_lo;
    doc["lambda_hi"] = result.lambda_hi;
    doc["width"] = result.width();
    doc["lo_probed"] = result.lo_probed;
    doc["probes"] = nlohmann::ordered_json::array();
    for (const ProbeRecord& probe : result.probes) {
        nlohmann::ordered_json p;
        p["lambda"] = probe.lambda;
        p["outcome"] = to_string(probe.status);
        p["iterations"] = probe.iterations;
        doc["probes"].push_back(std::move(p));
    }
    const DiagnosticReport report =
        build_report(inst.graph, inst.background, inst.config.nonlinearity,
                     result.solution_at_hi, inst.config.params.tol_residual);
    doc["solution_at_hi"] = solution_to_json(inst.graph, result.solution_at_hi, report);

    nlohmann::ordered_json cont;
    cont["epsilons"] = continuation.epsilons;
    cont["trace"] = nlohmann::ordered_json::array();
    for (const ContinuationPoint& point : continuation.trace) {
        nlohmann::ordered_json t;
        t["lambda"] = point.lambda;
        t["sobolev_u"] = point.sobolev_u;
        t["sobolev_v"] = point.sobolev_v;
        cont["trace"].push_back(std::move(t));
    }
    cont["dist_u"] = continuation.step_dist_u;
    cont["dist_v"] = continuation.step_dist_v;
    cont["final_residual_u"] = continuation.final_residual_u;
    cont["final_residual_v"] = continuation.final_residual_v;
    cont["domination_ok"] = continuation.domination_ok;
    cont["min_domination_gap"] = continuation.min_domination_gap;
    doc["continuation"] = std::move(cont);

    write_output(dump_json(doc), args.out_path);
    return kExitOk;
}

int cmd_scan(const CommonArgs& args) {
    Instance inst = load_instance(args);
    const std::optional<double> lambda_min =
        args.lambda_min ? args.lambda_min : inst.config.lambda_min;
    const std::optional<double> lambda_max =
        args.lambda_max ? args.lambda_max : inst.config.lambda_max;
    const std::optional<int> steps = args.steps ? args.steps : inst.config.lambda_steps;
    if (!lambda_min || !lambda_max || !steps) {
        throw std::runtime_error(
            "scan needs --lambda-min, --lambda-max and --steps (or config keys)");
    }
    if (*steps < 0) {
        throw std::runtime_error("steps must be nonnegative");
    }

    std::vector<double> lambdas;
    if (*steps > 0 && *lambda_min <= *lambda_max) {
        if (*steps == 1) {
            lambdas.push_back(*lambda_min);
        } else {
            const double h = (*lambda_max - *lambda_min) / (*steps - 1);
            for (int i = 0; i < *steps; ++i) {
                lambdas.push_back(*lambda_min + h * i);
            }
        }
    }

    std::string csv =
        "lambda,outcome,mean_u,mean_v,sobolev_u,sobolev_v,identity_defect_1,"
        "identity_defect_2,iterations\n";
    for (const double lambda : lambdas) {
        SolverParams params = inst.config.params;
        params.lambda = lambda;
        const IterationOutcome outcome =
            solve_maximal(inst.graph, inst.background, inst.config.nonlinearity, params);
        csv += fmt(lambda);
        csv += ',';
        csv += to_string(outcome.status);
        if (outcome.converged()) {
            const DiagnosticReport report =
                build_report(inst.graph, inst.background, inst.config.nonlinearity,
                             *outcome.solution, params.tol_residual);
            csv += ',' + fmt(report.mean_u) + ',' + fmt(report.mean_v);
            csv += ',' + fmt(report.sobolev_u) + ',' + fmt(report.sobolev_v);
            csv += ',' + fmt(report.identity_defect_1) + ',' + fmt(report.identity_defect_2);
        } else {
            csv += ",,,,,,";
        }
        csv += ',' + std::to_string(outcome.iterations) + '\n';
    }
    write_output(csv, args.out_path);
    return kExitOk;
}

int cmd_verify(const CommonArgs& args, const std::string& solution_path) {
    Instance inst = load_instance(args);
    const StoredSolution stored = load_solution(solution_path);

    if (stored.vertices != inst.graph.ids()) {
        throw std::runtime_error(
            "solution/graph binding error: vertex lists do not match");
    }
    const VertexField u(inst.graph, stored.u);
    const VertexField v(inst.graph, stored.v);
    const double tol_residual = inst.config.params.tol_residual;

    bool pass = true;
    const auto judge = [&pass](const char* name, double value, double tol) {
        const bool ok = value <= tol;
        pass = pass && ok;
        std::cout << name << " " << fmt(value) << " (tol " << fmt(tol) << ") "
                  << (ok ? "ok" : "FAIL") << "\n";
    };

    try {
        const auto [ru, rv] =
            system_residual(inst.graph, inst.background, inst.config.nonlinearity,
                            stored.lambda, u, v);
        judge("residual_u", ru, tol_residual);
        judge("residual_v", rv, tol_residual);
    } catch (const std::runtime_error& err) {
        // fields outside the admissible envelope cannot solve the system
        pass = false;
        std::cout << "residuals FAIL (" << err.what() << ")\n";
    }

    const IntegralIdentities identities = check_integral_identities(
        inst.graph, inst.background, inst.config.nonlinearity, stored.lambda, u, v);
    judge("identity_defect_1", identities.defect1, kIdentityTol);
    judge("identity_defect_2", identities.defect2, kIdentityTol);

    const double margin_u = (inst.background.u0.values() + u.values()).maxCoeff();
    const double margin_v = (inst.background.v0.values() + v.values()).maxCoeff();
    const bool signs_ok = margin_u < 0.0 && margin_v < 0.0;
    pass = pass && signs_ok;
    std::cout << "sign_margins " << fmt(margin_u) << " " << fmt(margin_v) << " "
              << (signs_ok ? "ok" : "FAIL") << "\n";

    if (stored.u_prime) {
        const Eigen::Map<const Eigen::VectorXd> up(stored.u_prime->data(),
                                                   static_cast<Eigen::Index>(
                                                       stored.u_prime->size()));
        const double dev =
            (up - (inst.background.u0.values() + u.values())).cwiseAbs().maxCoeff();
        judge("u_prime_consistency", dev, 1e-9);
    }
    if (stored.v_prime) {
        const Eigen::Map<const Eigen::VectorXd> vp(stored.v_prime->data(),
                                                   static_cast<Eigen::Index>(
                                                       stored.v_prime->size()));
        const double dev =
            (vp - (inst.background.v0.values() + v.values())).cwiseAbs().maxCoeff();
        judge("v_prime_consistency", dev, 1e-9);
    }

    std::cout << (pass ? "verify: pass" : "verify: FAIL") << "\n";
    return pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for the generalized self-dual Chern-Simons system on finite graphs"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string solution_path;

    const auto add_common = [&args](CLI::App* cmd) {
        cmd->add_option("--graph", args.graph_path, "graph file (v/e text format)")
            ->required();
        cmd->add_option("--config", args.config_path, "run configuration file")->required();
        cmd->add_option("--out", args.out_path, "output file (default: stdout)");
        cmd->add_option("--divergence-floor", args.divergence_floor,
                        "override solver.divergence_floor");
        cmd->add_option("--max-iter", args.max_iter, "override solver.max_iter");
    };

    CLI::App* solve = app.add_subcommand("solve", "compute the maximal solution at one λ");
    add_common(solve);
    solve->add_option("--lambda", args.lambda, "coupling constant λ");

    CLI::App* critical =
        app.add_subcommand("find-critical", "bisect the critical coupling λ_c");
    add_common(critical);
    critical->add_option("--bisect-tol", args.bisect_tol, "bracket width target");

    CLI::App* scan = app.add_subcommand("scan", "sweep λ and emit a CSV table");
    add_common(scan);
    scan->add_option("--lambda-min", args.lambda_min, "first λ");
    scan->add_option("--lambda-max", args.lambda_max, "last λ");
    scan->add_option("--steps", args.steps, "number of λ samples");

    CLI::App* verify =
        app.add_subcommand("verify", "re-verify a stored solution from scratch");
    verify->add_option("solution", solution_path, "solution JSON file")->required();
    verify->add_option("--graph", args.graph_path, "graph file")->required();
    verify->add_option("--config", args.config_path, "run configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        // --help and friends exit 0; anything else is an input error.
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(args);
        }
        if (critical->parsed()) {
            return cmd_find_critical(args);
        }
        if (scan->parsed()) {
            return cmd_scan(args);
        }
        if (verify->parsed()) {
            return cmd_verify(args, solution_path);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
