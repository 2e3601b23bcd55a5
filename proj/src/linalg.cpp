#include "rednum/linalg.hpp"

#include <stdexcept>

namespace rednum {

void DenseMatrix::append_row(const std::vector<Coeff>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

RowEchelon row_echelon(const PrimeField& field, DenseMatrix m) {
  RowEchelon out;
  std::size_t r = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(piv, k), m(r, k));
    }
    Coeff inv = field.inv(m(r, c));
    for (std::size_t k = c; k < cols; ++k) m(r, k) = field.mul(m(r, k), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Coeff f = field.neg(m(i, c));
      for (std::size_t k = c; k < cols; ++k) {
        if (m(r, k) != 0) m(i, k) = field.add(m(i, k), field.mul(f, m(r, k)));
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rows = DenseMatrix(r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < cols; ++k) out.rows(i, k) = m(i, k);
  }
  return out;
}

std::size_t rank(const PrimeField& field, DenseMatrix m) { return row_echelon(field, std::move(m)).rank(); }

bool RowEchelon::coordinates(const PrimeField& field, const std::vector<Coeff>& v,
                             std::vector<Coeff>& out) const {
  out.assign(pivots.size(), 0);
  std::vector<Coeff> residual = v;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Coeff c = residual[pivots[i]];
    out[i] = c;
    if (c == 0) continue;
    Coeff nc = field.neg(c);
    for (std::size_t k = 0; k < rows.cols(); ++k) {
      if (rows(i, k) != 0) residual[k] = field.add(residual[k], field.mul(nc, rows(i, k)));
    }
  }
  for (Coeff x : residual) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace rednum
