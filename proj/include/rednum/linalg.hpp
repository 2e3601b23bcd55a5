#ifndef REDNUM_LINALG_HPP
#define REDNUM_LINALG_HPP

#include "rednum/field.hpp"

#include <cstddef>
#include <vector>

namespace rednum {

/// Row-major dense matrix over a prime field.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Coeff& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<Coeff>& row);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Coeff> data_;
};

/// Reduced row echelon form: nonzero rows only, pivot entries equal to one,
/// pivot columns otherwise zero.
struct RowEchelon {
  DenseMatrix rows;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
  /// Coordinates of v in the row basis, or false when v is outside the span.
  bool coordinates(const PrimeField& field, const std::vector<Coeff>& v, std::vector<Coeff>& out) const;
};

RowEchelon row_echelon(const PrimeField& field, DenseMatrix m);
std::size_t rank(const PrimeField& field, DenseMatrix m);

}  // namespace rednum

#endif  // REDNUM_LINALG_HPP
