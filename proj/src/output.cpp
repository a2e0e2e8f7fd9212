#include "qcoeff/output.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace qcoeff {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (const char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void emit_human(const OutputRecord& record, std::ostream& out) {
    for (const auto& [key, value] : record.meta) {
        out << "# " << key << "=" << value << "\n";
    }
    std::vector<std::size_t> widths(record.columns.size());
    for (std::size_t i = 0; i < record.columns.size(); ++i) widths[i] = record.columns[i].size();
    for (const auto& row : record.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }
    const auto print_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << row[i];
            if (i + 1 < row.size()) out << std::string(widths[i] - row[i].size() + 2, ' ');
        }
        out << "\n";
    };
    if (!record.columns.empty()) print_row(record.columns);
    for (const auto& row : record.rows) print_row(row);
    for (const auto& line : record.footer) out << line << "\n";
}

void emit_csv(const OutputRecord& record, std::ostream& out) {
    for (const auto& [key, value] : record.meta) {
        out << "# " << key << "=" << value << "\n";
    }
    const auto print_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ",";
            out << csv_field(row[i]);
        }
        out << "\n";
    };
    if (!record.columns.empty()) print_row(record.columns);
    for (const auto& row : record.rows) print_row(row);
}

void emit_jsonl(const OutputRecord& record, std::ostream& out) {
    ordered_json meta = ordered_json::object();
    for (const auto& [key, value] : record.meta) meta[key] = value;
    out << ordered_json{{"meta", meta}}.dump() << "\n";
    for (const auto& row : record.rows) {
        ordered_json line = ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < record.columns.size(); ++i) {
            line[record.columns[i]] = row[i];
        }
        out << line.dump() << "\n";
    }
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
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

ParsedDump parse_csv(const std::string& text) {
    ParsedDump dump;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const std::string entry = line.substr(2);
            const std::size_t eq = entry.find('=');
            if (eq == std::string::npos) throw ParseError("malformed metadata line: " + line);
            dump.meta.emplace_back(entry.substr(0, eq), entry.substr(eq + 1));
            continue;
        }
        if (!header_seen) {
            dump.columns = split_csv_row(line);
            header_seen = true;
            continue;
        }
        auto row = split_csv_row(line);
        if (row.size() != dump.columns.size()) {
            throw ParseError("csv row has " + std::to_string(row.size()) + " fields, expected " +
                             std::to_string(dump.columns.size()));
        }
        dump.rows.push_back(std::move(row));
    }
    return dump;
}

ParsedDump parse_jsonl(const std::string& text) {
    ParsedDump dump;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ordered_json parsed;
        try {
            parsed = ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("malformed jsonl line: " + std::string(e.what()));
        }
        if (parsed.contains("meta")) {
            for (const auto& [key, value] : parsed["meta"].items()) {
                dump.meta.emplace_back(key, value.get<std::string>());
            }
            continue;
        }
        if (dump.columns.empty()) {
            for (const auto& [key, value] : parsed.items()) {
                (void)value;
                dump.columns.push_back(key);
            }
        }
        std::vector<std::string> row;
        row.reserve(dump.columns.size());
        for (const auto& column : dump.columns) {
            if (!parsed.contains(column)) throw ParseError("jsonl row missing field " + column);
            row.push_back(parsed[column].get<std::string>());
        }
        dump.rows.push_back(std::move(row));
    }
    return dump;
}

} // namespace

Format parse_format(const std::string& text) {
    if (text == "human") return Format::human;
    if (text == "csv") return Format::csv;
    if (text == "jsonl") return Format::jsonl;
    throw ParseError("unknown format '" + text + "' (expected human, csv or jsonl)");
}

void OutputRecord::emit(std::ostream& out, Format format) const {
    switch (format) {
        case Format::human: emit_human(*this, out); break;
        case Format::csv: emit_csv(*this, out); break;
        case Format::jsonl: emit_jsonl(*this, out); break;
    }
}

ParsedDump parse_dump(const std::string& text, Format format) {
    switch (format) {
        case Format::csv: return parse_csv(text);
        case Format::jsonl: return parse_jsonl(text);
        case Format::human: break;
    }
    throw ParseError("only csv and jsonl dumps are machine-parseable");
}

std::vector<Rat> coefficients_from_dump(const ParsedDump& dump) {
    if (dump.columns.size() != 2 || dump.columns[0] != "n") {
        throw ParseError("expected a two-column (n, value) dump");
    }
    std::vector<Rat> coefficients(dump.rows.size());
    std::vector<bool> seen(dump.rows.size(), false);
    for (const auto& row : dump.rows) {
        std::size_t index = 0;
        try {
            index = static_cast<std::size_t>(std::stoull(row[0]));
        } catch (const std::exception&) {
            throw ParseError("bad coefficient index '" + row[0] + "'");
        }
        if (index >= coefficients.size() || seen[index]) {
            throw ParseError("coefficient indices must run 0..N without repeats");
        }
        coefficients[index] = parse_rational(row[1]);
        seen[index] = true;
    }
    return coefficients;
}

} // namespace qcoeff
