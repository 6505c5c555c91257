#pragma once

#include "csvortex/graph.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace csvortex {

/// Input error carrying the source name and 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Graph text format, one record per line:
///   v <id> <mu>          vertex with positive measure
///   e <id1> <id2> <w>    undirected edge with positive weight
/// Lines beginning with `#` and blank lines are ignored. Duplicate edges are
/// an error, not merged.
WeightedGraph parse_graph(std::istream& in, const std::string& source_name);
WeightedGraph load_graph(const std::string& path);

}  // namespace csvortex
