#include "fieldscope/citation_metric.hpp"

#include <istream>
#include <optional>
#include <ostream>

#include "fieldscope/delimited.hpp"
#include "fieldscope/error.hpp"

namespace fieldscope {

CitationGraph::CitationGraph(std::vector<std::string> labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {}

std::uint64_t CitationGraph::out_total(std::size_t field) const {
  std::uint64_t s = 0;
  for (std::size_t t = 0; t < size(); ++t) s += at(field, t);
  return s;
}

std::uint64_t CitationGraph::in_total(std::size_t field) const {
  std::uint64_t s = 0;
  for (std::size_t t = 0; t < size(); ++t) s += at(t, field);
  return s;
}

CitationGraph aggregate(std::span<const CitationEdge> edges,
                        const std::unordered_map<std::string, std::size_t>& article_field,
                        std::vector<std::string> labels, AggregateCounters* counters) {
  CitationGraph g(std::move(labels));
  AggregateCounters local;
  for (const auto& e : edges) {
    ++local.edges;
    auto a = article_field.find(e.citing);
    auto b = article_field.find(e.cited);
    if (a == article_field.end() || b == article_field.end()) {
      ++local.unmapped;
      continue;
    }
    if (a->second >= g.size() || b->second >= g.size()) {
      fail(ErrorCategory::invalid_argument, "article maps to a field index outside the label list");
    }
    g.add(a->second, b->second);
    ++local.counted;
  }
  if (counters) *counters = local;
  return g;
}

namespace {

double directed_term(std::uint64_t row, std::uint64_t col, std::uint64_t c, std::size_t from, std::size_t to) {
  const std::uint64_t denom = row + col - c;
  if (denom == 0) throw DegenerateCitationTerm(from, to);
  return static_cast<double>(row + col - 2 * c) / static_cast<double>(denom);
}

}  // namespace

CitationDissimilarity::CitationDissimilarity(const CitationGraph& graph)
    : graph_(&graph), out_(graph.size()), in_(graph.size()) {
  for (std::size_t i = 0; i < graph.size(); ++i) {
    out_[i] = graph.out_total(i);
    in_[i] = graph.in_total(i);
  }
}

double CitationDissimilarity::operator()(std::size_t i, std::size_t j) const {
  if (i >= out_.size() || j >= out_.size()) fail(ErrorCategory::invalid_argument, "field index out of range");
  if (i == j) return 0.0;
  const double ij = directed_term(out_[i], in_[j], graph_->at(i, j), i, j);
  const double ji = directed_term(out_[j], in_[i], graph_->at(j, i), j, i);
  return 0.5 * (ij + ji);
}

double d_cite(const CitationGraph& graph, std::size_t i, std::size_t j) {
  if (i >= graph.size() || j >= graph.size()) fail(ErrorCategory::invalid_argument, "field index out of range");
  if (i == j) return 0.0;
  const double ij = directed_term(graph.out_total(i), graph.in_total(j), graph.at(i, j), i, j);
  const double ji = directed_term(graph.out_total(j), graph.in_total(i), graph.at(j, i), j, i);
  return 0.5 * (ij + ji);
}

DissimilarityMatrix d_cite_matrix(const CitationGraph& graph, Execution exec) {
  DissimilarityMatrix m(graph.labels());
  m.metadata()["measure"] = "d_cite";
  const CitationDissimilarity dist(graph);
  const std::size_t n = graph.size();
  std::vector<double> values(n * n, 0.0);
  std::vector<std::optional<std::string>> failures(n * n);
  auto row = [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      try {
        values[i * n + j] = dist(i, j);
      } catch (const DegenerateCitationTerm& e) {
        failures[i * n + j] = std::string("degenerate: ") + e.what();
      }
    }
  };
  const auto rows = static_cast<std::ptrdiff_t>(n);
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic, 4) num_threads(worker_count())
    for (std::ptrdiff_t i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i, 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (failures[i * n + j]) {
        m.set_error(i, j, *failures[i * n + j]);
      } else {
        m.set(i, j, values[i * n + j]);
      }
    }
  }
  return m;
}

void write_graph(std::ostream& out, const CitationGraph& graph) {
  out << "# fields: " << delimited::join_csv(graph.labels()) << '\n';
  out << "field_i,field_j,count\n";
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (std::size_t j = 0; j < graph.size(); ++j) {
      if (graph.at(i, j) == 0) continue;
      out << delimited::join_csv({graph.labels()[i], graph.labels()[j]}) << ',' << graph.at(i, j) << '\n';
    }
  }
}

CitationGraph read_graph(std::istream& in) {
  std::string line;
  std::optional<CitationGraph> graph;
  std::unordered_map<std::string, std::size_t> index;
  const std::string marker = "# fields:";
  while (delimited::read_line(in, line)) {
    if (!graph) {
      if (line.rfind(marker, 0) != 0) continue;
      auto labels = delimited::split_csv(delimited::trim(std::string_view(line).substr(marker.size())));
      for (std::size_t k = 0; k < labels.size(); ++k) {
        if (!index.emplace(labels[k], k).second) fail(ErrorCategory::duplicate_id, "graph repeats field '" + labels[k] + "'");
      }
      graph.emplace(std::move(labels));
      continue;
    }
    if (delimited::is_comment_or_blank(line) || line == "field_i,field_j,count") continue;
    auto cells = delimited::split_csv(line);
    if (cells.size() != 3) fail(ErrorCategory::parse, "graph row needs field_i,field_j,count: " + line);
    auto a = index.find(cells[0]);
    auto b = index.find(cells[1]);
    if (a == index.end() || b == index.end()) fail(ErrorCategory::unknown_label, "graph row names an unlisted field: " + line);
    long long c = delimited::parse_integer(cells[2]);
    if (c < 0) fail(ErrorCategory::parse, "negative citation count: " + line);
    graph->add(a->second, b->second, static_cast<std::uint64_t>(c));
  }
  if (!graph) fail(ErrorCategory::parse, "graph file lacks the '# fields:' header");
  return std::move(*graph);
}

}  // namespace fieldscope
