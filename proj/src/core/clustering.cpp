#include "fieldscope/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>

#include "fieldscope/delimited.hpp"
#include "fieldscope/error.hpp"

namespace fieldscope {

Dendrogram upgma(const DissimilarityMatrix& matrix) {
  if (matrix.has_errors()) {
    std::string what = "cannot cluster a matrix with flagged cells:";
    for (const auto& [cell, reason] : matrix.errors()) {
      what += " (" + matrix.labels()[cell.first] + "," + matrix.labels()[cell.second] + ")";
    }
    fail(ErrorCategory::degenerate, what);
  }
  const std::size_t n = matrix.size();
  Dendrogram d;
  d.leaves = matrix.labels();
  if (n < 2) return d;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(matrix(i, j))) fail(ErrorCategory::invalid_argument, "matrix holds a non-finite value");
    }
  }

  // Linkage sums between clusters: the group average of A and B is
  // sum(A,B) / (|A| |B|), and sum(A+B, K) = sum(A, K) + sum(B, K).
  const std::size_t cap = 2 * n - 1;
  std::vector<double> sum(cap * cap, 0.0);
  std::vector<std::size_t> size(cap, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sum[i * cap + j] = matrix(i, j);
  }
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});

  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0;
    std::size_t bb = 0;
    for (std::size_t x = 0; x < active.size(); ++x) {
      const std::size_t a = active[x];
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const std::size_t b = active[y];
        const double avg = sum[a * cap + b] / static_cast<double>(size[a] * size[b]);
        if (avg < best) {
          best = avg;
          ba = a;
          bb = b;
        }
      }
    }
    const std::size_t id = n + step;
    size[id] = size[ba] + size[bb];
    active.erase(std::remove_if(active.begin(), active.end(), [&](std::size_t c) { return c == ba || c == bb; }),
                 active.end());
    for (std::size_t k : active) {
      const double s = sum[ba * cap + k] + sum[bb * cap + k];
      sum[id * cap + k] = s;
      sum[k * cap + id] = s;
    }
    active.push_back(id);
    if (best < previous) d.monotone = false;
    previous = best;
    d.merges.push_back({ba, bb, best, id, size[id]});
  }
  return d;
}

double cut_threshold(const Dendrogram& d, double percentile, CutRule rule) {
  if (!(percentile >= 0.0 && percentile <= 1.0)) {
    fail(ErrorCategory::invalid_argument, "cut percentile must lie in [0, 1]");
  }
  if (d.merges.empty()) return 0.0;
  std::vector<double> h;
  h.reserve(d.merges.size());
  for (const auto& m : d.merges) h.push_back(m.height);
  std::sort(h.begin(), h.end());
  if (rule == CutRule::fraction_of_max) return percentile * h.back();
  const auto m = static_cast<double>(h.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile * m));
  rank = std::clamp<std::size_t>(rank, 1, h.size());
  return h[rank - 1];
}

std::vector<std::size_t> cut_at_percentile(const Dendrogram& d, double percentile, CutRule rule) {
  const double threshold = cut_threshold(d, percentile, rule);
  const std::size_t n = d.leaves.size();
  auto applies = [&](double h) {
    if (percentile <= 0.0) return false;
    if (rule == CutRule::nearest_rank) return percentile >= 1.0 || h < threshold;
    return h <= threshold;
  };

  std::vector<std::size_t> parent(n + d.merges.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // A node joins its children only if every merge below it qualifies.
  std::vector<double> subtree_max(n + d.merges.size(), -std::numeric_limits<double>::infinity());
  for (const auto& m : d.merges) {
    subtree_max[m.id] = std::max({m.height, subtree_max[m.a], subtree_max[m.b]});
    if (applies(subtree_max[m.id])) {
      parent[find(m.a)] = m.id;
      parent[find(m.b)] = m.id;
    }
  }
  std::vector<std::size_t> out(n);
  std::map<std::size_t, std::size_t> numbering;
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    auto [it, fresh] = numbering.emplace(find(leaf), numbering.size());
    out[leaf] = it->second;
  }
  return out;
}

namespace {

bool needs_quotes(std::string_view label) {
  if (label.empty()) return true;
  return label.find_first_of(" \t\n()[]':;,_") != std::string_view::npos;
}

std::string quote_label(std::string_view label) {
  if (!needs_quotes(label)) return std::string(label);
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

void validate(const Dendrogram& d) {
  const std::size_t n = d.leaves.size();
  if (n > 0 && d.merges.size() != n - 1) fail(ErrorCategory::parse, "dendrogram needs exactly N-1 merges");
  std::vector<char> used(n + d.merges.size(), 0);
  for (std::size_t k = 0; k < d.merges.size(); ++k) {
    const auto& m = d.merges[k];
    if (m.id != n + k || m.a >= m.id || m.b >= m.id || m.a == m.b || used[m.a] || used[m.b]) {
      fail(ErrorCategory::parse, "invalid merge sequence at merge " + std::to_string(k));
    }
    used[m.a] = used[m.b] = 1;
  }
}

bool is_monotone(const Dendrogram& d) {
  for (std::size_t k = 1; k < d.merges.size(); ++k) {
    if (d.merges[k].height < d.merges[k - 1].height) return false;
  }
  return true;
}

}  // namespace

std::string to_newick(const Dendrogram& d) {
  const std::size_t n = d.leaves.size();
  if (n == 0) return ";";
  auto height_of = [&](std::size_t id) { return id < n ? 0.0 : d.merges[id - n].height; };
  std::string out;
  std::function<void(std::size_t, std::optional<double>)> emit = [&](std::size_t id, std::optional<double> parent_h) {
    if (id < n) {
      out += quote_label(d.leaves[id]);
    } else {
      const auto& m = d.merges[id - n];
      out += '(';
      emit(m.a, m.height);
      out += ',';
      emit(m.b, m.height);
      out += ')';
    }
    if (parent_h) out += ':' + delimited::format_double(*parent_h - height_of(id));
    out += "[&&NHX:id=" + std::to_string(id);
    if (id >= n) out += ":h=" + delimited::format_double(height_of(id));
    out += ']';
  };
  emit(n + d.merges.size() - 1, std::nullopt);
  return out + ";";
}

namespace {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : s_(text) {}

  Dendrogram parse() {
    skip_space();
    node();
    skip_space();
    expect(';');
    skip_space();
    if (pos_ != s_.size()) error("trailing characters");

    const std::size_t n = leaves_.size();
    Dendrogram d;
    d.leaves.resize(n);
    for (auto& [id, label] : leaves_) {
      if (id >= n) error("leaf id " + std::to_string(id) + " out of range");
      d.leaves[id] = label;
    }
    for (auto& [id, m] : merges_) {
      if (id != n + d.merges.size()) error("internal ids are not consecutive");
      d.merges.push_back(m);
    }
    validate(d);
    d.monotone = is_monotone(d);
    return d;
  }

 private:
  struct Parsed {
    std::size_t id;
    std::size_t size;
  };

  Parsed node() {
    skip_space();
    if (peek() == '(') {
      ++pos_;
      Parsed a = node();
      expect(',');
      Parsed b = node();
      expect(')');
      skip_space();
      if (peek() != ':' && peek() != '[') label();
      skip_branch();
      auto [id, h] = annotation(true);
      if (merges_.count(id) || leaves_.count(id)) error("duplicate id " + std::to_string(id));
      Merge m{a.id, b.id, *h, id, a.size + b.size};
      merges_[id] = m;
      return {id, m.size};
    }
    std::string name = label();
    skip_branch();
    auto [id, h] = annotation(false);
    if (leaves_.count(id) || merges_.count(id)) error("duplicate id " + std::to_string(id));
    leaves_[id] = std::move(name);
    return {id, 1};
  }

  std::string label() {
    skip_space();
    std::string out;
    if (peek() == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= s_.size()) error("unterminated quoted label");
        char c = s_[pos_++];
        if (c == '\'') {
          if (peek() == '\'') {
            out += '\'';
            ++pos_;
            continue;
          }
          break;
        }
        out += c;
      }
      return out;
    }
    while (pos_ < s_.size() && std::string_view("():;,[] \t\n").find(s_[pos_]) == std::string_view::npos) out += s_[pos_++];
    return out;
  }

  void skip_branch() {
    skip_space();
    if (peek() != ':') return;
    ++pos_;
    while (pos_ < s_.size() && std::string_view("[(),;").find(s_[pos_]) == std::string_view::npos) ++pos_;
  }

  std::pair<std::size_t, std::optional<double>> annotation(bool internal) {
    skip_space();
    const std::string_view open = "[&&NHX";
    if (s_.substr(pos_, open.size()) != open) error("missing NHX annotation");
    pos_ += open.size();
    auto close = s_.find(']', pos_);
    if (close == std::string_view::npos) error("unterminated NHX annotation");
    std::string_view body = s_.substr(pos_, close - pos_);
    pos_ = close + 1;
    std::optional<std::size_t> id;
    std::optional<double> h;
    for (auto item : delimited::split_any(body, ":")) {
      auto eq = item.find('=');
      if (eq == std::string_view::npos) continue;
      auto key = item.substr(0, eq);
      auto value = item.substr(eq + 1);
      if (key == "id") id = static_cast<std::size_t>(delimited::parse_integer(value));
      if (key == "h") h = delimited::parse_double(value);
    }
    if (!id) error("NHX annotation lacks id");
    if (internal && !h) error("internal node lacks h");
    return {*id, h};
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCategory::parse, "newick: " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::map<std::size_t, std::string> leaves_;
  std::map<std::size_t, Merge> merges_;
};

}  // namespace

Dendrogram parse_newick(std::string_view text) {
  auto trimmed = delimited::trim(text);
  if (trimmed == ";") return {};
  return NewickParser(trimmed).parse();
}

void write_merge_table(std::ostream& out, const Dendrogram& d) {
  out << "# leaves: " << delimited::join_csv(d.leaves) << '\n';
  out << "a,b,height,size\n";
  for (const auto& m : d.merges) {
    out << m.a << ',' << m.b << ',' << delimited::format_double(m.height) << ',' << m.size << '\n';
  }
}

Dendrogram read_merge_table(std::istream& in) {
  Dendrogram d;
  std::string line;
  bool have_leaves = false;
  const std::string marker = "# leaves:";
  while (delimited::read_line(in, line)) {
    if (line.rfind(marker, 0) == 0) {
      auto rest = delimited::trim(std::string_view(line).substr(marker.size()));
      d.leaves = rest.empty() ? std::vector<std::string>{} : delimited::split_csv(rest);
      have_leaves = true;
      continue;
    }
    if (delimited::is_comment_or_blank(line) || line == "a,b,height,size") continue;
    if (!have_leaves) fail(ErrorCategory::parse, "merge table lacks the '# leaves:' header");
    auto cells = delimited::split_csv(line);
    if (cells.size() != 4) fail(ErrorCategory::parse, "merge row needs a,b,height,size: " + line);
    Merge m;
    m.a = static_cast<std::size_t>(delimited::parse_integer(cells[0]));
    m.b = static_cast<std::size_t>(delimited::parse_integer(cells[1]));
    m.height = delimited::parse_double(cells[2]);
    m.size = static_cast<std::size_t>(delimited::parse_integer(cells[3]));
    m.id = d.leaves.size() + d.merges.size();
    d.merges.push_back(m);
  }
  if (!have_leaves) fail(ErrorCategory::parse, "merge table lacks the '# leaves:' header");
  validate(d);
  std::vector<std::size_t> sizes(d.leaves.size() + d.merges.size(), 1);
  for (const auto& m : d.merges) {
    sizes[m.id] = sizes[m.a] + sizes[m.b];
    if (sizes[m.id] != m.size) fail(ErrorCategory::parse, "merge size disagrees with its children");
  }
  d.monotone = is_monotone(d);
  return d;
}

}  // namespace fieldscope
