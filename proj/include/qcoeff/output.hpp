#ifndef QCOEFF_OUTPUT_HPP
#define QCOEFF_OUTPUT_HPP

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qcoeff/arith.hpp"

namespace qcoeff {

enum class Format { human, csv, jsonl };

/// Parses "human", "csv" or "jsonl". Throws ParseError otherwise.
Format parse_format(const std::string& text);

/// A command result: ordered metadata, a column header and string rows.
/// csv and jsonl renderings are deterministic byte-for-byte; footer lines
/// appear in human output only (their content is mirrored in the metadata).
struct OutputRecord {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> footer;

    void add_meta(std::string key, std::string value) {
        meta.emplace_back(std::move(key), std::move(value));
    }

    void emit(std::ostream& out, Format format) const;
};

/// A dump read back from csv or jsonl text.
struct ParsedDump {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// Parses text produced by OutputRecord::emit (csv or jsonl; human is a
/// display format and is not machine-parsed).
ParsedDump parse_dump(const std::string& text, Format format);

/// Recovers a coefficient table from a parsed dump whose rows are
/// (n, value): indices must run 0..K without gaps. Values are parsed as
/// exact rationals.
std::vector<Rat> coefficients_from_dump(const ParsedDump& dump);

} // namespace qcoeff

#endif
