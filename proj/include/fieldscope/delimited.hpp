#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fieldscope::delimited {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

// RFC 4180 style: fields containing the separator, quotes or newlines are
// quoted and inner quotes doubled.
std::string join_csv(const std::vector<std::string>& fields, char sep = ',');
std::vector<std::string> split_csv(std::string_view line, char sep = ',');

// Splits on runs of any character in `separators`; no quoting.
std::vector<std::string_view> split_any(std::string_view line, std::string_view separators);

std::string_view trim(std::string_view s);

// True for blank lines and lines whose first non-blank character is '#'.
bool is_comment_or_blank(std::string_view line);

// getline that also strips a trailing '\r'.
bool read_line(std::istream& in, std::string& line);

}  // namespace fieldscope::delimited
