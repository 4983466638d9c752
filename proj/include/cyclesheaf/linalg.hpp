#pragma once

#include "cyclesheaf/common.hpp"

#include <utility>

namespace cyclesheaf {

/// Dense integer matrix, row-major.
class IntMatrix {
public:
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Int> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination with row pivoting.
/// Every intermediate division is exact.
inline std::size_t rank(IntMatrix m) {
  using detail::checked_mul;
  using detail::checked_sub;
  std::size_t rank = 0;
  Int prev_pivot = 1;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot_row = rank;
    while (pivot_row < m.rows() && m(pivot_row, col) == 0) ++pivot_row;
    if (pivot_row == m.rows()) continue;
    if (pivot_row != rank)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot_row, c), m(rank, c));
    Int pivot = m(rank, col);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      Int factor = m(r, col);
      for (std::size_t c = col + 1; c < m.cols(); ++c)
        m(r, c) = checked_sub(checked_mul(pivot, m(r, c)), checked_mul(factor, m(rank, c))) / prev_pivot;
      m(r, col) = 0;
    }
    // Columns skipped without a pivot leave stale entries to the left; they
    // are never read again.
    prev_pivot = pivot;
    ++rank;
  }
  return rank;
}

} // namespace cyclesheaf
