#pragma once

// Locale-independent text helpers shared by the file parsers and writers.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace accelppa::text {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

// Shortest representation that parses back to the identical double.
std::string format_double(double v);

// Strict whole-field parses; throw ParseError tagged with source:line.
std::int64_t parse_int(std::string_view field, const std::string& source, std::size_t line);
double parse_double(std::string_view field, const std::string& source, std::size_t line);

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line = 0;
    std::string section;  // most recent "[name]" header, empty if none
};

// Reads `key = value` lines. '#' starts a comment, blank lines are skipped,
// `[section]` lines set the section of subsequent pairs.
std::vector<KeyValue> parse_key_values(std::string_view content, const std::string& source);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::string lower(std::string_view s);

}  // namespace accelppa::text
