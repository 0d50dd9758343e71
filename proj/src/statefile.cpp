#include "workex/statefile.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "workex/errors.hpp"

namespace workex {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& token, const std::string& key) {
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
        throw ParseError("state file: bad number '" + token + "' for key " + key);
    }
    return value;
}

std::vector<double> parse_list(const std::string& value, const std::string& key) {
    std::vector<double> numbers;
    std::string token;
    for (char c : value + ",") {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!token.empty()) {
                numbers.push_back(parse_double(token, key));
                token.clear();
            }
        } else {
            token += c;
        }
    }
    return numbers;
}

}  // namespace

StateSpec parse_state_spec(std::istream& in) {
    StateSpec spec;
    bool saw_probs = false;
    bool saw_energies = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "state file line " << line_no << ": expected key = value";
            throw ParseError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "probs") {
            spec.probs = parse_list(value, key);
            saw_probs = true;
        } else if (key == "energies") {
            spec.energies = parse_list(value, key);
            saw_energies = true;
        } else if (key == "beta") {
            spec.beta = parse_double(value, key);
        } else if (key == "base_quantum") {
            spec.base_quantum = parse_double(value, key);
        } else {
            throw ParseError("state file: unknown key '" + key + "'");
        }
    }
    if (!saw_probs || !saw_energies) {
        throw ParseError("state file: both 'probs' and 'energies' are required");
    }
    return spec;
}

StateSpec load_state_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file: " + path);
    return parse_state_spec(in);
}

}  // namespace workex
