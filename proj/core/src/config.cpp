#include "isodg/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace isodg {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& field, int line, const std::string& message) {
    throw ConfigParseError("field \"" + field + "\" (line " + std::to_string(line) +
                           "): " + message);
}

int parse_int(const std::string& field, const Entry& entry) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(entry.value, &pos);
        if (pos != entry.value.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        fail(field, entry.line, "expected an integer, got \"" + entry.value + "\"");
    }
}

double parse_double(const std::string& field, const Entry& entry) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(entry.value, &pos);
        if (pos != entry.value.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        fail(field, entry.line, "expected a number, got \"" + entry.value + "\"");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::string normalized = value;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::vector<std::string> items;
    std::string item;
    while (in >> item) items.push_back(item);
    return items;
}

} // namespace

StudyConfig parse_study_config(std::istream& in) {
    std::map<std::string, Entry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') fail("section", lineno, "unterminated section header");
            continue; // sections organize the file; keys are global
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail(text, lineno, "expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) fail("(empty)", lineno, "missing key before '='");
        if (value.empty()) fail(key, lineno, "missing value");
        entries[key] = Entry{value, lineno};
    }

    static const std::map<std::string, int> known = {
        {"problem", 0},   {"k", 0},          {"levels", 0},         {"mesh_files", 0},
        {"geometry_kind", 0}, {"quadrature", 0}, {"solver", 0},     {"tolerance", 0},
        {"restart", 0},   {"max_iterations", 0}, {"threads", 0}};
    for (const auto& [key, entry] : entries) {
        if (!known.count(key)) fail(key, entry.line, "unknown key");
    }

    StudyConfig config;

    const auto required = [&](const char* field) -> const Entry& {
        const auto it = entries.find(field);
        if (it == entries.end()) {
            throw ConfigParseError(std::string("field \"") + field + "\": missing");
        }
        return it->second;
    };

    {
        const Entry& entry = required("problem");
        if (entry.value == "disc2d") config.problem = ProblemId::Disc2d;
        else if (entry.value == "ball3d") config.problem = ProblemId::Ball3d;
        else if (entry.value == "square2d") config.problem = ProblemId::Square2d;
        else if (entry.value == "polyhedron3d") config.problem = ProblemId::Polyhedron3d;
        else fail("problem", entry.line, "unknown problem \"" + entry.value + "\"");
    }

    {
        const Entry& entry = required("k");
        config.degree = parse_int("k", entry);
        if (config.degree < 1) fail("k", entry.line, "degree must be at least 1");
    }

    const bool has_levels = entries.count("levels") != 0;
    const bool has_files = entries.count("mesh_files") != 0;
    if (has_levels == has_files) {
        const int line_hint = has_levels ? entries.at("levels").line : 0;
        fail("levels", line_hint, has_levels ? "give either levels or mesh_files, not both"
                                             : "one of levels or mesh_files is required");
    }
    if (has_levels) {
        const Entry& entry = entries.at("levels");
        const std::vector<std::string> items = split_list(entry.value);
        if (items.size() == 1) {
            // A single value is a level count: run levels 0 .. n-1.
            const int count = parse_int("levels", Entry{items[0], entry.line});
            if (count < 2) fail("levels", entry.line, "need at least 2 levels");
            for (int l = 0; l < count; ++l) config.levels.push_back(l);
        } else {
            for (const std::string& item : items) {
                const int level = parse_int("levels", Entry{item, entry.line});
                if (level < 0) fail("levels", entry.line, "levels must be nonnegative");
                config.levels.push_back(level);
            }
        }
    } else {
        const Entry& entry = entries.at("mesh_files");
        config.mesh_files = split_list(entry.value);
        if (config.mesh_files.size() < 2) fail("mesh_files", entry.line, "need at least 2 meshes");
    }

    if (const auto it = entries.find("geometry_kind"); it != entries.end()) {
        if (it->second.value == "curved") config.geometry = GeometryKind::Curved;
        else if (it->second.value == "straight") config.geometry = GeometryKind::Straight;
        else fail("geometry_kind", it->second.line, "expected curved or straight");
    }
    if (const auto it = entries.find("quadrature"); it != entries.end()) {
        config.quadrature_override = parse_int("quadrature", it->second);
        if (config.quadrature_override < 0) {
            fail("quadrature", it->second.line, "exactness must be nonnegative");
        }
    }
    if (const auto it = entries.find("solver"); it != entries.end()) {
        if (it->second.value == "direct") config.solver.method = SolverConfig::Method::DirectLU;
        else if (it->second.value == "gmres") config.solver.method = SolverConfig::Method::Gmres;
        else fail("solver", it->second.line, "expected direct or gmres");
    }
    if (const auto it = entries.find("tolerance"); it != entries.end()) {
        config.solver.tolerance = parse_double("tolerance", it->second);
        if (config.solver.tolerance <= 0.0) {
            fail("tolerance", it->second.line, "tolerance must be positive");
        }
    }
    if (const auto it = entries.find("restart"); it != entries.end()) {
        config.solver.restart = parse_int("restart", it->second);
        if (config.solver.restart < 1) fail("restart", it->second.line, "restart must be >= 1");
    }
    if (const auto it = entries.find("max_iterations"); it != entries.end()) {
        config.solver.max_iterations = parse_int("max_iterations", it->second);
    }
    if (const auto it = entries.find("threads"); it != entries.end()) {
        config.threads = parse_int("threads", it->second);
        if (config.threads < 1) fail("threads", it->second.line, "threads must be >= 1");
    }

    return config;
}

StudyConfig parse_study_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_study_config(in);
}

} // namespace isodg
