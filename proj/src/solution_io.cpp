#include "csvortex/solution_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace csvortex {

namespace {

using nlohmann::ordered_json;

void dump_value(const ordered_json& value, std::string& out) {
    switch (value.type()) {
        case nlohmann::detail::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, item] : value.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                out += ordered_json(key).dump();
                out += ':';
                dump_value(item, out);
            }
            out += '}';
            return;
        }
        case nlohmann::detail::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (i > 0) {
                    out += ',';
                }
                dump_value(value[i], out);
            }
            out += ']';
            return;
        }
        case nlohmann::detail::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", value.get<double>());
            out += buf;
            return;
        }
        default:
            out += value.dump();
            return;
    }
}

std::vector<double> field_values(const VertexField& f) { return f.to_vector(); }

}  // namespace

std::string dump_json(const ordered_json& value) {
    std::string out;
    dump_value(value, out);
    out += '\n';
    return out;
}

ordered_json diagnostics_to_json(const DiagnosticReport& report) {
    ordered_json d;
    d["identity_defect_1"] = report.identity_defect_1;
    d["identity_defect_2"] = report.identity_defect_2;
    d["sign_margin_u"] = report.sign_margin_u;
    d["sign_margin_v"] = report.sign_margin_v;
    d["mean_u"] = report.mean_u;
    d["mean_v"] = report.mean_v;
    d["fluct_grad_u"] = report.fluct_grad_u;
    d["fluct_grad_v"] = report.fluct_grad_v;
    d["sobolev_u"] = report.sobolev_u;
    d["sobolev_v"] = report.sobolev_v;
    d["energy_defect_u"] = report.energy_defect_u;
    d["energy_defect_v"] = report.energy_defect_v;
    d["residual_u"] = report.residual_u;
    d["residual_v"] = report.residual_v;
    d["pass"] = report.pass;
    return d;
}

ordered_json solution_to_json(const WeightedGraph& g, const SolutionPair& sol,
                              const DiagnosticReport& diagnostics) {
    ordered_json doc;
    doc["lambda"] = sol.lambda;
    doc["outcome"] = "converged";
    doc["iterations"] = sol.iterations;
    doc["residual_u"] = sol.residual_u;
    doc["residual_v"] = sol.residual_v;
    doc["vertices"] = g.ids();
    doc["u"] = field_values(sol.u);
    doc["v"] = field_values(sol.v);
    doc["u_prime"] = field_values(sol.u_prime);
    doc["v_prime"] = field_values(sol.v_prime);
    doc["diagnostics"] = diagnostics_to_json(diagnostics);
    return doc;
}

namespace {

std::vector<double> require_numbers(const nlohmann::json& doc, const char* key,
                                    std::size_t expected) {
    if (!doc.contains(key) || !doc[key].is_array()) {
        throw std::runtime_error(std::string("solution document missing array '") + key +
                                 "'");
    }
    std::vector<double> out;
    out.reserve(doc[key].size());
    for (const auto& item : doc[key]) {
        if (!item.is_number()) {
            throw std::runtime_error(std::string("non-numeric entry in '") + key + "'");
        }
        out.push_back(item.get<double>());
    }
    if (out.size() != expected) {
        throw std::runtime_error(std::string("array '") + key +
                                 "' does not match the vertex count");
    }
    return out;
}

}  // namespace

StoredSolution read_solution(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw std::runtime_error("solution document must be a JSON object");
    }
    if (doc.contains("outcome") && doc["outcome"] != "converged") {
        throw std::runtime_error("solution document outcome is not 'converged'");
    }
    if (!doc.contains("lambda") || !doc["lambda"].is_number()) {
        throw std::runtime_error("solution document missing numeric 'lambda'");
    }
    if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
        throw std::runtime_error("solution document missing array 'vertices'");
    }
    StoredSolution out;
    out.lambda = doc["lambda"].get<double>();
    for (const auto& id : doc["vertices"]) {
        if (!id.is_string()) {
            throw std::runtime_error("non-string entry in 'vertices'");
        }
        out.vertices.push_back(id.get<std::string>());
    }
    out.u = require_numbers(doc, "u", out.vertices.size());
    out.v = require_numbers(doc, "v", out.vertices.size());
    if (doc.contains("u_prime")) {
        out.u_prime = require_numbers(doc, "u_prime", out.vertices.size());
    }
    if (doc.contains("v_prime")) {
        out.v_prime = require_numbers(doc, "v_prime", out.vertices.size());
    }
    return out;
}

StoredSolution load_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open solution file '" + path + "'");
    }
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        throw std::runtime_error("solution file '" + path + "' is not valid JSON");
    }
    return read_solution(doc);
}

}  // namespace csvortex
