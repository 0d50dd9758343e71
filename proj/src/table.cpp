#include "workex/table.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "workex/errors.hpp"

namespace workex {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw Error("Table: row width does not match header");
    }
    rows.push_back(std::move(row));
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ParseError("unknown output format: " + name);
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string render_cell(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string json_cell(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return "null"; }
        std::string operator()(double v) const {
            if (!std::isfinite(v)) return "null";
            return format_number(v);
        }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const {
            return "\"" + json_escape(v) + "\"";
        }
    };
    return std::visit(Visitor{}, cell);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << csv_escape(table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << csv_escape(render_cell(row[c]));
        }
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    out << "[\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << "  {";
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out << ", ";
            out << '"' << json_escape(table.columns[c])
                << "\": " << json_cell(table.rows[r][c]);
        }
        out << (r + 1 < table.rows.size() ? "},\n" : "}\n");
    }
    out << "]\n";
}

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::csv) {
        write_csv(table, out);
    } else {
        write_json(table, out);
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

Table parse_csv(std::istream& in) {
    Table table;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("parse_csv: empty input");
    table.columns = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != table.columns.size()) {
            throw ParseError("parse_csv: ragged row");
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const std::string& f : fields) row.emplace_back(f);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace workex
