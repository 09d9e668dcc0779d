#pragma once

// Sparse matrices of Scalars with a Z2 parity vector on rows and columns.
// Storage is column-major; each column keeps (row, value) pairs sorted by row.

#include <vector>

#include "sl21/scalar.hpp"

namespace sl21 {

class GradedMatrix {
 public:
  GradedMatrix() = default;
  GradedMatrix(std::vector<int> row_parity, std::vector<int> col_parity);

  static GradedMatrix identity(const std::vector<int>& parity);
  static GradedMatrix zero(std::vector<int> row_parity, std::vector<int> col_parity);

  int rows() const { return static_cast<int>(row_parity_.size()); }
  int cols() const { return static_cast<int>(col_parity_.size()); }
  const std::vector<int>& row_parity() const { return row_parity_; }
  const std::vector<int>& col_parity() const { return col_parity_; }
  const std::vector<std::pair<int, Scalar>>& column(int j) const { return cols_[j]; }

  void set(int r, int c, const Scalar& v);
  Scalar at(int r, int c) const;
  std::size_t nnz() const;

  GradedMatrix operator*(const GradedMatrix& o) const;
  GradedMatrix operator+(const GradedMatrix& o) const;
  GradedMatrix operator-(const GradedMatrix& o) const;
  GradedMatrix operator-() const;
  GradedMatrix scaled(const Scalar& s) const;

  bool is_zero() const;
  bool equals(const GradedMatrix& o) const;  // entrywise cross-mult
  bool operator==(const GradedMatrix& o) const { return equals(o); }
  bool is_identity() const;
  // true iff M = s * Id; on success stores s
  bool scalar_multiple_of_identity(Scalar* out) const;

  // parity of the matrix as a homogeneous map (0 for the zero matrix);
  // throws std::domain_error when inhomogeneous
  int op_parity() const;

  std::vector<std::vector<Rational>> eval(const std::map<GenId, Rational>& point) const;

  std::string dump() const;  // "(r,c) = <scalar>" per nonzero entry

 private:
  std::vector<int> row_parity_, col_parity_;
  std::vector<std::vector<std::pair<int, Scalar>>> cols_;
};

// Koszul rule: entry ((i1,i2),(j1,j2)) = (-1)^{p(B) p_col_A(j1)} A[i1,j1] B[i2,j2]
GradedMatrix super_kron(const GradedMatrix& A, const GradedMatrix& B);

// signed flip V (x) W -> W (x) V, sign (-1)^{p(v) p(w)}
GradedMatrix super_flip(const std::vector<int>& pA, const std::vector<int>& pB);

std::vector<int> parity_concat(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace sl21
