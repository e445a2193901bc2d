#include "fieldscope/dissimilarity_matrix.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "fieldscope/delimited.hpp"
#include "fieldscope/error.hpp"
#include "json.hpp"

namespace fieldscope {

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), 0.0) {}

std::optional<std::size_t> DissimilarityMatrix::index_of(std::string_view label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] == label) return k;
  }
  return std::nullopt;
}

void DissimilarityMatrix::set(std::size_t i, std::size_t j, double value) {
  values_[i * size() + j] = value;
  values_[j * size() + i] = value;
  error_reasons_.erase({std::min(i, j), std::max(i, j)});
}

void DissimilarityMatrix::set_error(std::size_t i, std::size_t j, std::string reason) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  values_[i * size() + j] = nan;
  values_[j * size() + i] = nan;
  error_reasons_[{std::min(i, j), std::max(i, j)}] = std::move(reason);
}

bool DissimilarityMatrix::is_error(std::size_t i, std::size_t j) const {
  return error_reasons_.count({std::min(i, j), std::max(i, j)}) != 0;
}

std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::string>>
DissimilarityMatrix::errors() const {
  return {error_reasons_.begin(), error_reasons_.end()};
}

bool DissimilarityMatrix::same_values(const DissimilarityMatrix& other) const {
  if (labels_ != other.labels_) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (is_error(i, j) != other.is_error(i, j)) return false;
      if (!is_error(i, j) && (*this)(i, j) != other(i, j)) return false;
    }
  }
  return true;
}

void write_matrix_csv(std::ostream& out, const DissimilarityMatrix& m) {
  std::vector<std::string> row{"field"};
  row.insert(row.end(), m.labels().begin(), m.labels().end());
  out << delimited::join_csv(row) << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    row.assign(1, m.labels()[i]);
    for (std::size_t j = 0; j < m.size(); ++j) {
      row.push_back(m.is_error(i, j) ? "NA" : delimited::format_double(m(i, j)));
    }
    out << delimited::join_csv(row) << '\n';
  }
}

DissimilarityMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  while (delimited::read_line(in, line) && delimited::is_comment_or_blank(line)) {
  }
  if (line.empty()) fail(ErrorCategory::parse, "matrix file is empty");
  auto header = delimited::split_csv(line);
  std::vector<std::string> labels(header.begin() + 1, header.end());
  DissimilarityMatrix m(labels);
  std::size_t i = 0;
  while (delimited::read_line(in, line)) {
    if (delimited::is_comment_or_blank(line)) continue;
    auto cells = delimited::split_csv(line);
    if (i >= labels.size() || cells.size() != labels.size() + 1 || cells[0] != labels[i]) {
      fail(ErrorCategory::parse, "matrix row " + std::to_string(i + 1) + " does not match header");
    }
    for (std::size_t j = 0; j < labels.size(); ++j) {
      double v = delimited::parse_double(cells[j + 1]);
      if (j < i) {
        bool stored_nan = m.is_error(j, i);
        if (stored_nan != std::isnan(v) || (!stored_nan && m(j, i) != v)) {
          fail(ErrorCategory::parse, "matrix is not symmetric at (" + labels[i] + ", " +
                                         labels[j] + ")");
        }
        continue;
      }
      if (std::isnan(v)) {
        m.set_error(i, j, "NA in input");
      } else {
        m.set(i, j, v);
      }
    }
    ++i;
  }
  if (i != labels.size()) fail(ErrorCategory::parse, "matrix has missing rows");
  return m;
}

std::string matrix_sidecar_json(const DissimilarityMatrix& m) {
  nlohmann::ordered_json j;
  j["labels"] = m.labels();
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.metadata()) meta[k] = v;
  j["metadata"] = meta;
  nlohmann::ordered_json errs = nlohmann::ordered_json::array();
  for (const auto& [cell, reason] : m.errors()) {
    errs.push_back({{"i", m.labels()[cell.first]}, {"j", m.labels()[cell.second]}, {"reason", reason}});
  }
  j["errors"] = errs;
  return j.dump(2) + "\n";
}

}  // namespace fieldscope
