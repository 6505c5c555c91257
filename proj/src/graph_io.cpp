#include "csvortex/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace csvortex {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream stream(line);
    std::string tok;
    while (stream >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

double parse_positive(const std::string& source, std::size_t line, const std::string& tok,
                      const char* what) {
    double value = 0.0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(source, line, std::string("invalid ") + what + " '" + tok + "'");
    }
    if (!(value > 0.0)) {
        throw ParseError(source, line, std::string(what) + " must be positive, got '" + tok + "'");
    }
    return value;
}

}  // namespace

WeightedGraph parse_graph(std::istream& in, const std::string& source_name) {
    std::vector<std::pair<std::string, double>> vertices;
    std::vector<std::tuple<std::string, std::string, double>> edges;
    std::vector<std::size_t> edge_lines;
    std::map<std::string, std::size_t> vertex_lines;
    std::set<std::pair<std::string, std::string>> edge_keys;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = tokenize(line);
        if (tokens.empty() || tokens.front().front() == '#') {
            continue;
        }
        if (tokens[0] == "v") {
            if (tokens.size() != 3) {
                throw ParseError(source_name, lineno, "expected 'v <id> <mu>'");
            }
            if (!vertex_lines.emplace(tokens[1], lineno).second) {
                throw ParseError(source_name, lineno, "duplicate vertex id '" + tokens[1] + "'");
            }
            vertices.emplace_back(tokens[1],
                                  parse_positive(source_name, lineno, tokens[2], "measure"));
        } else if (tokens[0] == "e") {
            if (tokens.size() != 4) {
                throw ParseError(source_name, lineno, "expected 'e <id1> <id2> <weight>'");
            }
            if (tokens[1] == tokens[2]) {
                throw ParseError(source_name, lineno, "self-loop at vertex '" + tokens[1] + "'");
            }
            auto key = std::minmax(tokens[1], tokens[2]);
            if (!edge_keys.insert(key).second) {
                throw ParseError(source_name, lineno,
                                 "duplicate edge " + tokens[1] + "-" + tokens[2]);
            }
            edges.emplace_back(tokens[1], tokens[2],
                               parse_positive(source_name, lineno, tokens[3], "weight"));
            edge_lines.push_back(lineno);
        } else {
            throw ParseError(source_name, lineno,
                             "unknown record '" + tokens[0] + "' (expected 'v' or 'e')");
        }
    }
    if (vertices.empty()) {
        throw ParseError(source_name, lineno == 0 ? 1 : lineno, "no vertices declared");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (const auto* id : {&std::get<0>(edges[i]), &std::get<1>(edges[i])}) {
            if (vertex_lines.count(*id) == 0) {
                throw ParseError(source_name, edge_lines[i],
                                 "edge references unknown vertex '" + *id + "'");
            }
        }
    }
    // Remaining checks (connectedness) have no single offending line; the
    // constructor reports them as std::invalid_argument.
    return WeightedGraph(std::move(vertices), edges);
}

WeightedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file '" + path + "'");
    }
    return parse_graph(in, path);
}

}  // namespace csvortex
