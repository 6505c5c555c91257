#include "csvortex/config.hpp"

#include "csvortex/graph_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace csvortex {

namespace {

using nlohmann::json;

struct Entry {
    json value;
    std::size_t line;
    bool used = false;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

json parse_value(const std::string& text) {
    json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (!parsed.is_discarded()) {
        return parsed;
    }
    return json(text);  // bare word, e.g. `polynomial`
}

class Entries {
public:
    Entries(std::istream& in, std::string source) : source_(std::move(source)) {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string stripped = trim(line);
            if (stripped.empty() || stripped.front() == '#') {
                continue;
            }
            const auto eq = stripped.find('=');
            if (eq == std::string::npos) {
                throw ParseError(source_, lineno, "expected `key = value`");
            }
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty() || value.empty()) {
                throw ParseError(source_, lineno, "expected `key = value`");
            }
            if (entries_.count(key) != 0) {
                throw ParseError(source_, lineno, "duplicate key '" + key + "'");
            }
            entries_.emplace(key, Entry{parse_value(value), lineno});
        }
    }

    bool has(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            return false;
        }
        it->second.used = true;
        return true;
    }

    const json& at(const std::string& key) { return entries_.at(key).value; }

    template <typename T>
    T get(const std::string& key, const char* expected) {
        const Entry& entry = entries_.at(key);
        try {
            return entry.value.get<T>();
        } catch (const json::exception&) {
            throw ParseError(source_, entry.line,
                             "key '" + key + "' expects " + expected);
        }
    }

    [[noreturn]] void fail(const std::string& key, const std::string& message) {
        throw ParseError(source_, entries_.at(key).line, "key '" + key + "': " + message);
    }

    void reject_unused() const {
        for (const auto& [key, entry] : entries_) {
            if (!entry.used) {
                throw ParseError(source_, entry.line, "unknown key '" + key + "'");
            }
        }
    }

private:
    std::string source_;
    std::map<std::string, Entry> entries_;
};

PotentialModel parse_potential(Entries& entries, const std::string& prefix) {
    const std::string kind_key = prefix + ".kind";
    if (!entries.has(kind_key)) {
        throw std::runtime_error("config is missing required key '" + kind_key + "'");
    }
    const auto kind = entries.get<std::string>(kind_key, "a string");
    try {
        if (kind == "constant_one") {
            return PotentialModel::constant_one();
        }
        if (kind == "polynomial") {
            const std::string coeffs_key = prefix + ".coeffs";
            if (!entries.has(coeffs_key)) {
                throw std::runtime_error("polynomial kind needs '" + coeffs_key + "'");
            }
            return PotentialModel::polynomial(
                entries.get<std::vector<double>>(coeffs_key, "an array of numbers"));
        }
        if (kind == "tabulated") {
            const std::string grid_key = prefix + ".grid";
            const std::string values_key = prefix + ".values";
            if (!entries.has(grid_key) || !entries.has(values_key)) {
                throw std::runtime_error("tabulated kind needs '" + grid_key + "' and '" +
                                         values_key + "'");
            }
            return PotentialModel::tabulated(
                entries.get<std::vector<double>>(grid_key, "an array of numbers"),
                entries.get<std::vector<double>>(values_key, "an array of numbers"));
        }
    } catch (const std::invalid_argument& err) {
        entries.fail(kind_key, err.what());
    }
    entries.fail(kind_key, "unknown kind '" + kind +
                               "' (expected constant_one, polynomial, or tabulated)");
}

std::vector<std::pair<std::string, int>> parse_vortices(Entries& entries,
                                                        const std::string& key) {
    if (!entries.has(key)) {
        throw std::runtime_error("config is missing required key '" + key + "'");
    }
    const json& value = entries.at(key);
    std::vector<std::pair<std::string, int>> out;
    if (!value.is_array()) {
        entries.fail(key, "expects an array of [\"vertex\", multiplicity] pairs");
    }
    for (const json& item : value) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
            !item[1].is_number_integer()) {
            entries.fail(key, "expects an array of [\"vertex\", multiplicity] pairs");
        }
        out.emplace_back(item[0].get<std::string>(), item[1].get<int>());
    }
    return out;
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in, const std::string& source_name) {
    Entries entries(in, source_name);
    RunConfig config;

    config.nonlinearity.G = parse_potential(entries, "G");
    config.nonlinearity.H = parse_potential(entries, "H");
    config.vortices_species1 = parse_vortices(entries, "vortices.species1");
    config.vortices_species2 = parse_vortices(entries, "vortices.species2");

    if (entries.has("solver.k_margin")) {
        config.params.k_margin = entries.get<double>("solver.k_margin", "a number");
    }
    if (entries.has("solver.tol_step")) {
        config.params.tol_step = entries.get<double>("solver.tol_step", "a number");
    }
    if (entries.has("solver.tol_residual")) {
        config.params.tol_residual = entries.get<double>("solver.tol_residual", "a number");
    }
    if (entries.has("solver.max_iter")) {
        config.params.max_iter = entries.get<int>("solver.max_iter", "an integer");
    }
    if (entries.has("solver.divergence_floor")) {
        config.params.divergence_floor =
            entries.get<double>("solver.divergence_floor", "a number");
    }

    if (entries.has("lambda")) {
        config.lambda = entries.get<double>("lambda", "a number");
    }
    if (entries.has("lambda.min")) {
        config.lambda_min = entries.get<double>("lambda.min", "a number");
    }
    if (entries.has("lambda.max")) {
        config.lambda_max = entries.get<double>("lambda.max", "a number");
    }
    if (entries.has("lambda.steps")) {
        config.lambda_steps = entries.get<int>("lambda.steps", "an integer");
    }
    if (entries.has("bisect.tol")) {
        config.bisect_tol = entries.get<double>("bisect.tol", "a number");
    }
    if (entries.has("continuation.epsilons")) {
        config.epsilons =
            entries.get<std::vector<double>>("continuation.epsilons", "an array of numbers");
    }

    entries.reject_unused();
    return config;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file '" + path + "'");
    }
    return parse(in, path);
}

}  // namespace csvortex
