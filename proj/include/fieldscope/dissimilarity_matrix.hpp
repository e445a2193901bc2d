#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fieldscope {

// Symmetric labeled matrix of D(i,j). Cells may be flagged as errors (the
// measure is undefined for that pair); flagged cells hold NaN.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;
  explicit DissimilarityMatrix(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }

  // Sets (i,j) and (j,i) to the same value.
  void set(std::size_t i, std::size_t j, double value);
  void set_error(std::size_t i, std::size_t j, std::string reason);

  bool is_error(std::size_t i, std::size_t j) const;
  // Unordered pairs i<j whose cell is flagged, with the reason.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::string>> errors() const;
  bool has_errors() const noexcept { return !error_reasons_.empty(); }

  // Free-form provenance: measure, alpha, V, window, parameters.
  std::map<std::string, std::string>& metadata() noexcept { return metadata_; }
  const std::map<std::string, std::string>& metadata() const noexcept { return metadata_; }

  // Exact equality of labels, values (NaN cells compared by flag) and flags.
  bool same_values(const DissimilarityMatrix& other) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
  std::map<std::pair<std::size_t, std::size_t>, std::string> error_reasons_;
  std::map<std::string, std::string> metadata_;
};

// Full square matrix; first row and first column hold labels, the corner
// cell is "field". Error cells are written as NA.
void write_matrix_csv(std::ostream& out, const DissimilarityMatrix& m);
DissimilarityMatrix read_matrix_csv(std::istream& in);

// JSON sidecar: metadata plus the list of error cells.
std::string matrix_sidecar_json(const DissimilarityMatrix& m);

}  // namespace fieldscope
