#include "schemeforge/sparse.hpp"

#include <algorithm>
#include <sstream>

#include "schemeforge/errors.hpp"
#include "schemeforge/parallel.hpp"

namespace schemeforge {

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                   std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols)
      throw Error(ErrorCode::InvalidArgument, "triplet index out of range");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.assign(rows + 1, 0);
  for (std::size_t k = 0; k < entries.size();) {
    const std::size_t r = entries[k].row;
    const std::size_t c = entries[k].col;
    double sum = 0.0;
    for (; k < entries.size() && entries[k].row == r && entries[k].col == c; ++k)
      sum += entries[k].value;
    m.col_idx_.push_back(c);
    m.values_.push_back(sum);
    ++m.row_ptr_[r + 1];
  }
  for (std::size_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  m.col_idx_.shrink_to_fit();
  m.values_.shrink_to_fit();
  return m;
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw Error(ErrorCode::InvalidArgument, "index out of range");
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y, double alpha,
                         double beta) const {
  if (x.size() != cols_ || y.size() != rows_)
    throw Error(ErrorCode::SizeMismatch, "CSR multiply operand sizes do not match");
  const std::size_t* rp = row_ptr_.data();
  const std::size_t* ci = col_idx_.data();
  const double* v = values_.data();
  parallel_for(0, rows_, [&](std::size_t r) {
    double acc = 0.0;
    for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) acc += v[k] * x[ci[k]];
    y[r] = alpha * acc + (beta == 0.0 ? 0.0 : beta * y[r]);
  });
}

std::size_t CsrMatrix::owned_bytes() const noexcept {
  return row_ptr_.capacity() * sizeof(std::size_t) + col_idx_.capacity() * sizeof(std::size_t) +
         values_.capacity() * sizeof(double);
}

std::string CsrMatrix::triplet_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "row,col,value\n";
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      os << r << ',' << col_idx_[k] << ',' << values_[k] << '\n';
  return os.str();
}

}  // namespace schemeforge
