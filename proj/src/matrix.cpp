#include "sl21/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace sl21 {

GradedMatrix::GradedMatrix(std::vector<int> row_parity, std::vector<int> col_parity)
    : row_parity_(std::move(row_parity)),
      col_parity_(std::move(col_parity)),
      cols_(col_parity_.size()) {}

GradedMatrix GradedMatrix::identity(const std::vector<int>& parity) {
  GradedMatrix m(parity, parity);
  for (int i = 0; i < m.cols(); ++i) m.cols_[i].emplace_back(i, Scalar(1));
  return m;
}

GradedMatrix GradedMatrix::zero(std::vector<int> row_parity, std::vector<int> col_parity) {
  return GradedMatrix(std::move(row_parity), std::move(col_parity));
}

void GradedMatrix::set(int r, int c, const Scalar& v) {
  auto& col = cols_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& a, int b) { return a.first < b; });
  if (it != col.end() && it->first == r) {
    if (v.is_zero()) {
      col.erase(it);
    } else {
      it->second = v;
    }
  } else if (!v.is_zero()) {
    col.insert(it, {r, v});
  }
}

Scalar GradedMatrix::at(int r, int c) const {
  const auto& col = cols_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& a, int b) { return a.first < b; });
  if (it != col.end() && it->first == r) return it->second;
  return Scalar();
}

std::size_t GradedMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& col : cols_) n += col.size();
  return n;
}

GradedMatrix GradedMatrix::operator*(const GradedMatrix& o) const {
  if (cols() != o.rows()) throw std::domain_error("matrix product dimension mismatch");
  GradedMatrix r(row_parity_, o.col_parity_);
  std::vector<Scalar> acc(rows());
  std::vector<char> used(rows(), 0);
  std::vector<int> touched;
  for (int j = 0; j < o.cols(); ++j) {
    touched.clear();
    for (const auto& [k, b] : o.cols_[j]) {
      for (const auto& [i, a] : cols_[k]) {
        if (!used[i]) {
          used[i] = 1;
          touched.push_back(i);
        }
        acc[i] += a * b;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int i : touched) {
      if (!acc[i].is_zero()) r.cols_[j].emplace_back(i, acc[i]);
      acc[i] = Scalar();
      used[i] = 0;
    }
  }
  return r;
}

GradedMatrix GradedMatrix::operator+(const GradedMatrix& o) const {
  if (rows() != o.rows() || cols() != o.cols()) throw std::domain_error("matrix sum mismatch");
  GradedMatrix r(row_parity_, col_parity_);
  for (int j = 0; j < cols(); ++j) {
    const auto& a = cols_[j];
    const auto& b = o.cols_[j];
    std::size_t i = 0, k = 0;
    while (i < a.size() || k < b.size()) {
      int ra = i < a.size() ? a[i].first : rows();
      int rb = k < b.size() ? b[k].first : rows();
      if (ra < rb) {
        r.cols_[j].push_back(a[i++]);
      } else if (rb < ra) {
        r.cols_[j].push_back(b[k++]);
      } else {
        Scalar v = a[i].second + b[k].second;
        if (!v.is_zero()) r.cols_[j].emplace_back(ra, v);
        ++i;
        ++k;
      }
    }
  }
  return r;
}

GradedMatrix GradedMatrix::operator-(const GradedMatrix& o) const { return *this + (-o); }

GradedMatrix GradedMatrix::operator-() const {
  GradedMatrix r = *this;
  for (auto& col : r.cols_)
    for (auto& [i, v] : col) v = -v;
  return r;
}

GradedMatrix GradedMatrix::scaled(const Scalar& s) const {
  if (s.is_zero()) return zero(row_parity_, col_parity_);
  GradedMatrix r = *this;
  for (auto& col : r.cols_)
    for (auto& [i, v] : col) v *= s;
  return r;
}

bool GradedMatrix::is_zero() const {
  for (const auto& col : cols_)
    if (!col.empty()) return false;
  return true;
}

bool GradedMatrix::equals(const GradedMatrix& o) const {
  if (rows() != o.rows() || cols() != o.cols()) return false;
  for (int j = 0; j < cols(); ++j) {
    const auto& a = cols_[j];
    const auto& b = o.cols_[j];
    std::size_t i = 0, k = 0;
    while (i < a.size() || k < b.size()) {
      int ra = i < a.size() ? a[i].first : rows();
      int rb = k < b.size() ? b[k].first : rows();
      if (ra < rb) {
        if (!a[i++].second.is_zero()) return false;
      } else if (rb < ra) {
        if (!b[k++].second.is_zero()) return false;
      } else {
        if (a[i].second != b[k].second) return false;
        ++i;
        ++k;
      }
    }
  }
  return true;
}

bool GradedMatrix::is_identity() const {
  Scalar s;
  return scalar_multiple_of_identity(&s) && s.is_one();
}

bool GradedMatrix::scalar_multiple_of_identity(Scalar* out) const {
  if (rows() != cols()) return false;
  Scalar diag = at(0, 0);
  for (int j = 0; j < cols(); ++j) {
    for (const auto& [i, v] : cols_[j]) {
      if (i != j) {
        if (!v.is_zero()) return false;
      } else if (v != diag) {
        return false;
      }
    }
    if (!diag.is_zero() && (cols_[j].empty() || at(j, j).is_zero())) return false;
  }
  if (out) *out = diag;
  return true;
}

int GradedMatrix::op_parity() const {
  int p = -1;
  for (int j = 0; j < cols(); ++j) {
    for (const auto& [i, v] : cols_[j]) {
      int d = (row_parity_[i] + col_parity_[j]) & 1;
      if (p == -1) {
        p = d;
      } else if (p != d) {
        throw std::domain_error("parity-inhomogeneous matrix");
      }
    }
  }
  return p == -1 ? 0 : p;
}

std::vector<std::vector<Rational>> GradedMatrix::eval(
    const std::map<GenId, Rational>& point) const {
  std::vector<std::vector<Rational>> m(rows(), std::vector<Rational>(cols(), Rational(0)));
  for (int j = 0; j < cols(); ++j)
    for (const auto& [i, v] : cols_[j]) m[i][j] = v.eval(point);
  return m;
}

std::string GradedMatrix::dump() const {
  std::ostringstream os;
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) {
      Scalar v = at(i, j);
      if (!v.is_zero()) os << '(' << i << ',' << j << ") = " << v.str() << '\n';
    }
  return os.str();
}

GradedMatrix super_kron(const GradedMatrix& A, const GradedMatrix& B) {
  int pB = B.op_parity();
  GradedMatrix r(parity_concat(A.row_parity(), B.row_parity()),
                 parity_concat(A.col_parity(), B.col_parity()));
  int nBo = B.rows(), nBi = B.cols();
  for (int j1 = 0; j1 < A.cols(); ++j1) {
    int sgn = (pB && A.col_parity()[j1]) ? -1 : 1;
    for (int j2 = 0; j2 < nBi; ++j2) {
      int jc = j1 * nBi + j2;
      for (const auto& [i1, a] : A.column(j1)) {
        Scalar sa = (sgn < 0) ? -a : a;
        for (const auto& [i2, b] : B.column(j2)) {
          r.set(i1 * nBo + i2, jc, sa * b);
        }
      }
    }
  }
  return r;
}

GradedMatrix super_flip(const std::vector<int>& pA, const std::vector<int>& pB) {
  GradedMatrix r(parity_concat(pB, pA), parity_concat(pA, pB));
  int nA = static_cast<int>(pA.size()), nB = static_cast<int>(pB.size());
  for (int i = 0; i < nA; ++i)
    for (int j = 0; j < nB; ++j)
      r.set(j * nA + i, i * nB + j, Scalar((pA[i] && pB[j]) ? -1 : 1));
  return r;
}

std::vector<int> parity_concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r;
  r.reserve(a.size() * b.size());
  for (int pa : a)
    for (int pb : b) r.push_back((pa + pb) & 1);
  return r;
}

}  // namespace sl21
