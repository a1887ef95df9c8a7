#pragma once

// Small text helpers shared by the CSV readers and writers.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rhea::io {

// Shortest round-trip decimal form.
[[nodiscard]] std::string format_double(double x);

// Splits one CSV line on commas (no quoting), trimming surrounding blanks.
[[nodiscard]] std::vector<std::string> split_csv_line(std::string_view line);

// Reads one line, dropping a trailing '\r'. Returns false at end of input.
bool read_line(std::istream& in, std::string& line);

// Throw DomainError with `what` if the text is not a complete number.
[[nodiscard]] long long parse_int(std::string_view text, const std::string& what);
[[nodiscard]] double parse_double(std::string_view text, const std::string& what);

}  // namespace rhea::io
