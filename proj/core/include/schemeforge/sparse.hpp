#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace schemeforge {

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Compressed-row matrix with sorted column indices and no duplicate entries.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Duplicate (row, col) pairs are summed. Throws InvalidArgument on
  /// out-of-range indices.
  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t nnz() const noexcept { return values_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  [[nodiscard]] const std::vector<std::size_t>& col_idx() const noexcept { return col_idx_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

  /// Stored entry or 0 when (r, c) is structurally zero.
  [[nodiscard]] double at(std::size_t r, std::size_t c) const;

  /// y = alpha * A x + beta * y. Row-parallel. Throws SizeMismatch.
  void multiply(std::span<const double> x, std::span<double> y, double alpha = 1.0,
                double beta = 0.0) const;

  [[nodiscard]] std::size_t owned_bytes() const noexcept;

  /// `row,col,value` header plus one row per stored entry.
  [[nodiscard]] std::string triplet_csv() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

}  // namespace schemeforge
