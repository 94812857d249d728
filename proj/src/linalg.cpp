#include "sdyn/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace sdyn::linalg {

void Matrix::append_row(const std::vector<FieldElem>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<FieldElem> Matrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

namespace {

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void normalize_row(Matrix& m, std::size_t r, std::size_t pivot_col) {
  FieldElem inv = m(r, pivot_col).inverse();
  for (std::size_t c = pivot_col; c < m.cols(); ++c)
    if (!m(r, c).is_zero()) m(r, c) *= inv;
}

void eliminate_row(Matrix& m, std::size_t target, std::size_t pivot_row, std::size_t pivot_col) {
  if (m(target, pivot_col).is_zero()) return;
  FieldElem f = m(target, pivot_col);
  for (std::size_t c = pivot_col; c < m.cols(); ++c)
    if (!m(pivot_row, c).is_zero()) m(target, c) -= f * m(pivot_row, c);
}

std::size_t find_pivot(const Matrix& m, std::size_t from_row, std::size_t col) {
  for (std::size_t r = from_row; r < m.rows(); ++r)
    if (!m(r, col).is_zero()) return r;
  return m.rows();
}

} // namespace

Echelon rref_serial(Matrix m) {
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = find_pivot(m, row, col);
    if (p == m.rows()) continue;
    swap_rows(m, row, p);
    normalize_row(m, row, col);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != row) eliminate_row(m, r, row, col);
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

Echelon rref(Matrix m) {
  Echelon out;
  std::size_t row = 0;
  const auto nrows = static_cast<std::ptrdiff_t>(m.rows());
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = find_pivot(m, row, col);
    if (p == m.rows()) continue;
    swap_rows(m, row, p);
    normalize_row(m, row, col);
    // Rows are independent once the pivot row is fixed.
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < nrows; ++r)
      if (static_cast<std::size_t>(r) != row) eliminate_row(m, static_cast<std::size_t>(r), row, col);
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

std::vector<std::vector<FieldElem>> kernel(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<FieldElem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElem> v(m.cols());
    v[free] = FieldElem(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return canonical_span(basis, m.cols());
}

std::vector<std::vector<FieldElem>> canonical_span(const std::vector<std::vector<FieldElem>>& vectors,
                                                   std::size_t dim) {
  if (vectors.empty()) return {};
  Matrix a(0, dim);
  for (const auto& v : vectors) a.append_row(v);
  Echelon e = rref(std::move(a));
  std::vector<std::vector<FieldElem>> out;
  for (std::size_t i = 0; i < e.rank(); ++i) out.push_back(e.reduced.row(i));
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank(); }

} // namespace sdyn::linalg
