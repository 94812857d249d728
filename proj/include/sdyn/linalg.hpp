#pragma once

// Dense exact linear algebra over the coefficient field.
//
// rref() eliminates the rows below and above each pivot in parallel with
// OpenMP; rref_serial() is the straightforward reference used by the tests
// and the benchmark. Both produce the identical reduced row echelon form.

#include "sdyn/field.hpp"

#include <cstddef>
#include <vector>

namespace sdyn::linalg {

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const FieldElem& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<FieldElem>& row);
  std::vector<FieldElem> row(std::size_t r) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> data_;
};

struct Echelon {
  Matrix reduced;                   // nonzero rows first, pivots equal to 1
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank() const { return pivots.size(); }
};

Echelon rref(Matrix m);
Echelon rref_serial(Matrix m);

// Basis of {v : m v = 0}, returned as rows in reduced row echelon form.
std::vector<std::vector<FieldElem>> kernel(const Matrix& m);

// Reduced row echelon basis of the span of the given vectors.
std::vector<std::vector<FieldElem>> canonical_span(const std::vector<std::vector<FieldElem>>& vectors,
                                                   std::size_t dim);

std::size_t rank(const Matrix& m);

} // namespace sdyn::linalg
