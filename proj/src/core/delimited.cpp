#include "fieldscope/delimited.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>

#include "fieldscope/error.hpp"

namespace fieldscope::delimited {

std::string format_double(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (text == "NA" || text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCategory::parse, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

long long parse_integer(std::string_view text) {
  text = trim(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCategory::parse, "not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::string join_csv(const std::vector<std::string>& fields, char sep) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out += sep;
    const auto& f = fields[k];
    if (f.find_first_of(std::string{sep, '"', '\n', '\r'}) == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  return out;
}

std::vector<std::string> split_csv(std::string_view line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == sep) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) fail(ErrorCategory::parse, "unterminated quote in: " + std::string(line));
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<std::string_view> split_any(std::string_view line, std::string_view separators) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    k = line.find_first_not_of(separators, k);
    if (k == std::string_view::npos) break;
    std::size_t end = line.find_first_of(separators, k);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(k, end - k));
    k = end;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool is_comment_or_blank(std::string_view line) {
  auto t = trim(line);
  return t.empty() || t.front() == '#';
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace fieldscope::delimited
