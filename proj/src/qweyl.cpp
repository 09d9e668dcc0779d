#include "sl21/qweyl.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sl21 {

// --- QWeylOp -----------------------------------------------------------------

QWeylOp QWeylOp::constant(int rank, const Scalar& c) {
  QWeylOp r(rank);
  QWeylKey k{std::vector<int>(rank, 0), std::vector<int>(rank, 0)};
  r.add_term(k, c);
  return r;
}

QWeylOp QWeylOp::M(int rank, int i, int e) {
  if (i < 1 || i > rank) throw std::invalid_argument("M direction out of range");
  QWeylOp r(rank);
  QWeylKey k{std::vector<int>(rank, 0), std::vector<int>(rank, 0)};
  k.mdeg[i - 1] = e;
  r.add_term(k, Scalar(1));
  return r;
}

QWeylOp QWeylOp::L(int rank, int i, int e) {
  if (i < 1 || i > rank) throw std::invalid_argument("L direction out of range");
  if (e < 0) throw std::invalid_argument("negative L power");
  QWeylOp r(rank);
  QWeylKey k{std::vector<int>(rank, 0), std::vector<int>(rank, 0)};
  k.ldeg[i - 1] = e;
  r.add_term(k, Scalar(1));
  return r;
}

void QWeylOp::add_term(const QWeylKey& k, const Scalar& c) {
  if (static_cast<int>(k.mdeg.size()) != rank_ ||
      static_cast<int>(k.ldeg.size()) != rank_)
    throw std::invalid_argument("term rank mismatch");
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

QWeylOp QWeylOp::operator+(const QWeylOp& o) const {
  if (rank_ != o.rank_) throw std::invalid_argument("rank mismatch");
  QWeylOp r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, c);
  return r;
}

QWeylOp QWeylOp::operator-(const QWeylOp& o) const { return *this + (-o); }

QWeylOp QWeylOp::operator-() const {
  QWeylOp r(rank_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

QWeylOp QWeylOp::scaled(const Scalar& c) const {
  QWeylOp r(rank_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

QWeylOp QWeylOp::operator*(const QWeylOp& o) const {
  if (rank_ != o.rank_) throw std::invalid_argument("rank mismatch");
  QWeylOp r(rank_);
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      // (M^b L^a)(M^d L^c) = q^{a.d} M^{b+d} L^{a+c}
      long cross = 0;
      QWeylKey k{std::vector<int>(rank_), std::vector<int>(rank_)};
      for (int i = 0; i < rank_; ++i) {
        cross += static_cast<long>(ka.ldeg[i]) * kb.mdeg[i];
        k.mdeg[i] = ka.mdeg[i] + kb.mdeg[i];
        k.ldeg[i] = ka.ldeg[i] + kb.ldeg[i];
      }
      r.add_term(k, ca * cb * qpower(AffineExp{cross, 0, 1}));
    }
  }
  return r;
}

int QWeylOp::order(int j) const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.ldeg[j - 1]);
  return d;
}

std::pair<int, int> QWeylOp::m_range(int j) const {
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    int e = k.mdeg[j - 1];
    if (first) { lo = hi = e; first = false; }
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  return {lo, hi};
}

std::string QWeylOp::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.str() << ")";
    for (int i = 0; i < rank_; ++i)
      if (k.mdeg[i] != 0) out << " * M" << (i + 1) << "^" << k.mdeg[i];
    for (int i = 0; i < rank_; ++i)
      if (k.ldeg[i] != 0) out << " * L" << (i + 1) << "^" << k.ldeg[i];
  }
  return out.str();
}

std::string op_text(const QWeylOp& op) {
  std::ostringstream out;
  out << "rank " << op.rank() << "\n";
  for (const auto& [k, c] : op.terms()) {
    out << "term";
    for (int m : k.mdeg) out << " " << m;
    for (int l : k.ldeg) out << " " << l;
    out << " " << c.str() << "\n";
  }
  return out.str();
}

QWeylOp parse_op_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int rank = -1;
  std::optional<QWeylOp> op;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "rank") {
      if (rank >= 0) throw std::invalid_argument("duplicate rank line");
      if (!(ls >> rank) || rank < 1)
        throw std::invalid_argument("bad rank line: " + line);
      op.emplace(rank);
    } else if (tag == "term") {
      if (rank < 0) throw std::invalid_argument("term before rank line");
      QWeylKey k{std::vector<int>(rank), std::vector<int>(rank)};
      for (int i = 0; i < rank; ++i)
        if (!(ls >> k.mdeg[i])) throw std::invalid_argument("bad term line: " + line);
      for (int i = 0; i < rank; ++i)
        if (!(ls >> k.ldeg[i]) || k.ldeg[i] < 0)
          throw std::invalid_argument("bad term line: " + line);
      std::string rest;
      std::getline(ls, rest);
      op->add_term(k, Scalar::parse(rest));
    } else {
      throw std::invalid_argument("unknown operator line: " + line);
    }
  }
  if (!op) throw std::invalid_argument("operator text has no rank line");
  return *op;
}

QWeylOp specialize_colors(const QWeylOp& op, const std::map<int, long>& a2) {
  QWeylOp r(op.rank());
  for (const auto& [k, c] : op.terms()) r.add_term(k, specialize_colors(c, a2));
  return r;
}

// --- tables ------------------------------------------------------------------

long Box::volume() const {
  long v = 1;
  for (int i = 0; i < rank(); ++i) v *= side(i);
  return v;
}

FunctionTable::FunctionTable(Box window, std::vector<int> cont_vars)
    : window_(std::move(window)), cont_vars_(std::move(cont_vars)) {
  if (window_.lo.size() != window_.hi.size())
    throw std::invalid_argument("box rank mismatch");
  for (int i = 0; i < window_.rank(); ++i)
    if (window_.lo[i] > window_.hi[i])
      throw std::invalid_argument("empty box side");
  values_.resize(window_.volume());
}

long FunctionTable::flat(const std::vector<long>& pt) const {
  if (static_cast<int>(pt.size()) != window_.rank())
    throw std::invalid_argument("point rank mismatch");
  long idx = 0;
  for (int i = 0; i < window_.rank(); ++i) {
    if (pt[i] < window_.lo[i] || pt[i] > window_.hi[i])
      throw std::out_of_range("point outside window");
    idx = idx * window_.side(i) + (pt[i] - window_.lo[i]);
  }
  return idx;
}

const Scalar& FunctionTable::at(const std::vector<long>& pt) const {
  return values_[flat(pt)];
}

void FunctionTable::set(const std::vector<long>& pt, Scalar v) {
  values_[flat(pt)] = std::move(v);
}

bool FunctionTable::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

std::string FunctionTable::csv() const {
  std::ostringstream out;
  const int r = window_.rank();
  std::vector<long> pt = window_.lo;
  for (;;) {
    for (int i = 0; i < r; ++i) out << pt[i] << ",";
    out << at(pt).str() << "\n";
    int i = r - 1;
    while (i >= 0 && pt[i] == window_.hi[i]) { pt[i] = window_.lo[i]; --i; }
    if (i < 0) break;
    ++pt[i];
  }
  return out.str();
}

// --- action ------------------------------------------------------------------

FunctionTable apply(const QWeylOp& op, const FunctionTable& f) {
  if (op.rank() != f.rank()) throw std::invalid_argument("rank mismatch");
  const int rd = f.discrete_rank();
  const int rc = static_cast<int>(f.cont_vars().size());

  Box out = f.window();
  for (int j = 1; j <= rd; ++j) {
    out.hi[j - 1] -= op.order(j);
    if (out.lo[j - 1] > out.hi[j - 1])
      throw std::invalid_argument("window too small for operator order");
  }

  FunctionTable g(out, f.cont_vars());
  std::vector<long> pt = out.lo;
  for (;;) {
    Scalar acc;
    for (const auto& [k, c] : op.terms()) {
      std::vector<long> src = pt;
      for (int i = 0; i < rd; ++i) src[i] += k.ldeg[i];
      Scalar v = f.at(src);
      for (int i = 0; i < rc; ++i)
        for (int rep = 0; rep < k.ldeg[rd + i]; ++rep)
          v = shift_var(f.cont_vars()[i], v);
      Scalar coeff = c;
      long qexp = 0;
      for (int i = 0; i < rd; ++i) qexp += static_cast<long>(k.mdeg[i]) * pt[i];
      if (qexp != 0) coeff *= qpower(AffineExp{qexp, 0, 1});
      for (int i = 0; i < rc; ++i)
        if (k.mdeg[rd + i] != 0)
          coeff *= Scalar::generator(gen_x(f.cont_vars()[i]), k.mdeg[rd + i]);
      acc += coeff * v;
    }
    g.set(pt, acc);
    int i = rd - 1;
    while (i >= 0 && pt[i] == out.hi[i]) { pt[i] = out.lo[i]; --i; }
    if (i < 0) break;
    ++pt[i];
  }
  return g;
}

bool annihilates(const QWeylOp& op, const FunctionTable& f) {
  return apply(op, f).is_zero();
}

// --- builtins ----------------------------------------------------------------

namespace {

Scalar qgen(long e) { return qpower(AffineExp{e, 0, 1}); }

Scalar pochhammer_value(long n1, long n2) {
  if (n2 < 0) throw std::domain_error("pochhammer length must be nonnegative");
  Scalar p(1);
  for (long i = 0; i < n2; ++i) p *= Scalar(1) - qgen(n1 + i);
  return p;
}

std::map<std::string, Builtin> make_builtins() {
  std::map<std::string, Builtin> lib;

  {
    Builtin b;
    b.rank = 2;
    b.value = [](const std::vector<long>& n) {
      return pochhammer_value(n[0], n[1]);
    };
    QWeylOp one = QWeylOp::one(2);
    QWeylOp M1 = QWeylOp::M(2, 1), M2 = QWeylOp::M(2, 2);
    QWeylOp L1 = QWeylOp::L(2, 1), L2 = QWeylOp::L(2, 2);
    b.annihilators = {(one - M1) * L1 - one + M1 * M2, L2 + M1 * M2 - one};
    lib.emplace("pochhammer", std::move(b));
  }
  {
    Builtin b;
    b.rank = 2;
    b.value = [](const std::vector<long>& n) {
      Scalar p = pochhammer_value(n[0], n[1]);
      if (p.is_zero()) throw std::domain_error("pochhammer vanishes; shrink window");
      return p.inverse();
    };
    QWeylOp one = QWeylOp::one(2);
    QWeylOp M1 = QWeylOp::M(2, 1), M2 = QWeylOp::M(2, 2);
    QWeylOp L1 = QWeylOp::L(2, 1), L2 = QWeylOp::L(2, 2);
    // mirrors the direct Pochhammer relation: (1 - q^{n1+n2}) g(n1+1, n2)
    // equals (1 - q^{n1}) g(n1, n2)
    b.annihilators = {(one - M1 * M2) * L1 - one + M1, (one - M1 * M2) * L2 - one};
    lib.emplace("inv_pochhammer", std::move(b));
  }
  {
    Builtin b;
    b.rank = 3;
    b.value = [](const std::vector<long>& n) {
      return Scalar(n[0] <= n[2] && n[2] <= n[1] ? 1 : 0);
    };
    QWeylOp one = QWeylOp::one(3);
    QWeylOp M1 = QWeylOp::M(3, 1), M2 = QWeylOp::M(3, 2), M3 = QWeylOp::M(3, 3);
    QWeylOp L1 = QWeylOp::L(3, 1), L2 = QWeylOp::L(3, 2), L3 = QWeylOp::L(3, 3);
    b.annihilators = {
        (M3 - M1) * (L1 - one),
        (M3 - M2.scaled(qgen(1))) * (L2 - one),
        // the n3-step enters the interval at n3+1 = n1 and leaves at n3 = n2,
        // so the vanishing factors are pinned at q^{n1-1} and q^{n2}
        (M3 - M2) * (M3 - M1.scaled(qgen(-1))) * (L3 - one)};
    lib.emplace("indicator", std::move(b));
  }
  {
    Builtin b;
    b.rank = 1;
    b.value = [](const std::vector<long>& n) {
      Scalar br = qbracket(n[0]);
      if (br.is_zero()) throw std::domain_error("1/{0} undefined; shrink window");
      return br.inverse();
    };
    // {n+1} f(n+1) = {n} f(n) = 1
    QWeylOp M = QWeylOp::M(1, 1), Minv = QWeylOp::M(1, 1, -1);
    QWeylOp L = QWeylOp::L(1, 1);
    b.annihilators = {(M.scaled(qgen(1)) - Minv.scaled(qgen(-1))) * L - (M - Minv)};
    lib.emplace("inv_qnum", std::move(b));
  }
  {
    Builtin b;
    b.rank = 1;
    b.value = [](const std::vector<long>& n) { return qgen(n[0] * n[0]); };
    b.annihilators = {QWeylOp::L(1, 1) - QWeylOp::M(1, 1, 2).scaled(qgen(1))};
    lib.emplace("qsquare", std::move(b));
  }
  return lib;
}

}  // namespace

const Builtin& builtin(const std::string& name) {
  static const std::map<std::string, Builtin> lib = make_builtins();
  auto it = lib.find(name);
  if (it == lib.end()) throw std::invalid_argument("unknown builtin: " + name);
  return it->second;
}

FunctionTable tabulate(const Builtin& b, const Box& window) {
  if (window.rank() != b.rank) throw std::invalid_argument("window rank mismatch");
  FunctionTable f(window);
  std::vector<long> pt = window.lo;
  for (;;) {
    f.set(pt, b.value(pt));
    int i = window.rank() - 1;
    while (i >= 0 && pt[i] == window.hi[i]) { pt[i] = window.lo[i]; --i; }
    if (i < 0) break;
    ++pt[i];
  }
  return f;
}

// --- nullspace over the scalar field -------------------------------------------

namespace {

// rational reduced row echelon form; returns a nullspace basis over Q
std::vector<std::vector<Rational>> rat_nullspace(
    std::vector<std::vector<Rational>> A, int ncols) {
  const int m = static_cast<int>(A.size());
  std::vector<int> pivot_col, pivot_row;
  int r = 0;
  for (int col = 0; col < ncols && r < m; ++col) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (A[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(A[r], A[piv]);
    Rational inv = 1 / A[r][col];
    for (int c = col; c < ncols; ++c) A[r][c] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || A[i][col] == 0) continue;
      Rational f = A[i][col];
      for (int c = col; c < ncols; ++c) A[i][c] -= f * A[r][c];
    }
    pivot_col.push_back(col);
    pivot_row.push_back(r);
    ++r;
  }
  std::vector<char> is_pivot(ncols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (int fc = 0; fc < ncols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[fc] = 1;
    for (int p = 0; p < r; ++p) v[pivot_col[p]] = -A[pivot_row[p]][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

// fraction-free determinant of a square LaurentPoly matrix
LaurentPoly bareiss_det(std::vector<std::vector<LaurentPoly>> A) {
  const int n = static_cast<int>(A.size());
  if (n == 0) return LaurentPoly::one();
  LaurentPoly prev = LaurentPoly::one();
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!A[i][k].is_zero()) { piv = i; break; }
      if (piv < 0) return LaurentPoly::zero();
      std::swap(A[k], A[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int c = k + 1; c < n; ++c)
        A[i][c] = (A[k][k] * A[i][c] - A[i][k] * A[k][c]).divexact(prev);
      A[i][k] = LaurentPoly::zero();
    }
    prev = A[k][k];
  }
  return sign > 0 ? A[n - 1][n - 1] : -A[n - 1][n - 1];
}

// clear denominators of a row of Scalars (few distinct denominators)
std::vector<LaurentPoly> clear_row(const std::vector<Scalar>& row) {
  const int n = static_cast<int>(row.size());
  std::vector<LaurentPoly> dens;
  std::vector<int> den_of(n);
  for (int c = 0; c < n; ++c) {
    int found = -1;
    for (std::size_t d = 0; d < dens.size(); ++d)
      if (dens[d] == row[c].den()) { found = static_cast<int>(d); break; }
    if (found < 0) {
      found = static_cast<int>(dens.size());
      dens.push_back(row[c].den());
    }
    den_of[c] = found;
  }
  std::vector<LaurentPoly> cof(dens.size(), LaurentPoly::one());
  for (std::size_t d = 0; d < dens.size(); ++d)
    for (std::size_t o = 0; o < dens.size(); ++o)
      if (o != d) cof[d] = cof[d] * dens[o];
  std::vector<LaurentPoly> out(n);
  for (int c = 0; c < n; ++c) out[c] = row[c].num() * cof[den_of[c]];
  return out;
}

// Nullspace of a matrix over the scalar field.  A full symbolic elimination
// compounds bracket products badly, so the kernel support is probed first
// at a random rational point; the support-restricted subsystem is then
// solved exactly by fraction-free Cramer minors and the result reduced by
// its polynomial gcd.  Every candidate is re-verified by the caller.
std::vector<std::vector<Scalar>> nullspace(
    const std::vector<std::vector<Scalar>>& rows, int ncols, unsigned seed) {
  const int m = static_cast<int>(rows.size());

  // every generator appearing anywhere in the system
  std::vector<GenId> gens{kGenQ};
  for (const auto& row : rows)
    for (const Scalar& s : row)
      for (const LaurentPoly* p : {&s.num(), &s.den()})
        for (const auto& [mono, c] : p->terms())
          for (const auto& [g, e] : mono.exps)
            if (std::find(gens.begin(), gens.end(), g) == gens.end())
              gens.push_back(g);

  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num_d(2, 97), den_d(1, 7);
  std::vector<std::vector<Rational>> R;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::map<GenId, Rational> point;
    for (GenId g : gens)
      point[g] = Rational(num_d(rng), den_d(rng));
    try {
      R.assign(m, {});
      for (int i = 0; i < m; ++i) {
        R[i].reserve(ncols);
        for (int c = 0; c < ncols; ++c) R[i].push_back(rows[i][c].eval(point));
      }
      break;
    } catch (const EvalDenominatorZero&) {
      R.clear();
    }
  }
  if (R.empty()) return {};

  std::vector<std::vector<Scalar>> basis;
  for (const auto& kv : rat_nullspace(R, ncols)) {
    std::vector<int> supp;
    for (int c = 0; c < ncols; ++c)
      if (kv[c] != 0) supp.push_back(c);
    const int k = static_cast<int>(supp.size());
    if (k == 0) continue;

    // pick k-1 rows that are independent on the support columns, taking the
    // lowest-degree (earliest) rows first
    std::vector<std::vector<Rational>> sub;
    std::vector<int> chosen;
    for (int i = 0; i < m && static_cast<int>(chosen.size()) < k - 1; ++i) {
      std::vector<std::vector<Rational>> trial = sub;
      trial.emplace_back();
      for (int c : supp) trial.back().push_back(R[i][c]);
      if (static_cast<int>(rat_nullspace(trial, k).size()) == k - static_cast<int>(trial.size())) {
        sub = std::move(trial);
        chosen.push_back(i);
      }
    }
    if (static_cast<int>(chosen.size()) != k - 1) continue;

    // symbolic subsystem and its Cramer-minor kernel vector
    std::vector<std::vector<LaurentPoly>> S(k - 1);
    for (int i = 0; i < k - 1; ++i) {
      std::vector<Scalar> r;
      r.reserve(k);
      for (int c : supp) r.push_back(rows[chosen[i]][c]);
      S[i] = clear_row(r);
    }
    std::vector<LaurentPoly> v(k);
    int sign = 1;
    for (int skip = 0; skip < k; ++skip, sign = -sign) {
      std::vector<std::vector<LaurentPoly>> minor(k - 1);
      for (int i = 0; i < k - 1; ++i)
        for (int c = 0; c < k; ++c)
          if (c != skip) minor[i].push_back(S[i][c]);
      v[skip] = bareiss_det(std::move(minor));
      if (sign < 0) v[skip] = -v[skip];
    }
    LaurentPoly g;
    for (const auto& p : v)
      if (!p.is_zero()) g = g.is_zero() ? p : poly_gcd(g, p);
    if (g.is_zero()) continue;  // degenerate specialization
    std::vector<Scalar> sv(ncols);
    for (int i = 0; i < k; ++i) sv[supp[i]] = Scalar(v[i].divexact(g));
    basis.push_back(std::move(sv));
  }
  return basis;
}

}  // namespace

// --- guessing ------------------------------------------------------------------

std::vector<QWeylOp> guess_recurrence(const FunctionTable& f, int j, int d,
                                      int e, unsigned seed) {
  if (j < 1 || j > f.discrete_rank())
    throw std::invalid_argument("guess direction must be discrete");
  if (d < 0 || e < 0) throw std::invalid_argument("negative ansatz bounds");
  const Box& w = f.window();
  const int rd = f.discrete_rank();
  const int ncols = (d + 1) * (2 * e + 1);

  std::vector<std::vector<Scalar>> rows;
  std::vector<long> pt = w.lo;
  for (;;) {
    if (pt[j - 1] + d <= w.hi[j - 1]) {
      // scale the row by 1/f(pt): the kernel is unchanged and the entries
      // become small reduced ratios instead of full table values
      const Scalar& base = f.at(pt);
      Scalar inv_base = base.is_zero() ? Scalar(1) : base.inverse();
      std::vector<Scalar> row;
      row.reserve(ncols);
      for (int s = 0; s <= d; ++s) {
        std::vector<long> src = pt;
        src[j - 1] += s;
        Scalar ratio = (f.at(src) * inv_base).reduce_full();
        for (int t = -e; t <= e; ++t)
          row.push_back(qpower(AffineExp{t * pt[j - 1], 0, 1}) * ratio);
      }
      rows.push_back(std::move(row));
    }
    int i = rd - 1;
    while (i >= 0 && pt[i] == w.hi[i]) { pt[i] = w.lo[i]; --i; }
    if (i < 0) break;
    ++pt[i];
  }
  if (rows.empty()) throw std::invalid_argument("window too small for order");

  std::vector<QWeylOp> out;
  for (const auto& v : nullspace(rows, ncols, seed)) {
    QWeylOp op(f.rank());
    int idx = 0;
    for (int s = 0; s <= d; ++s)
      for (int t = -e; t <= e; ++t, ++idx) {
        if (v[idx].is_zero()) continue;
        QWeylKey k{std::vector<int>(f.rank(), 0), std::vector<int>(f.rank(), 0)};
        k.mdeg[j - 1] = t;
        k.ldeg[j - 1] = s;
        op.add_term(k, v[idx]);
      }
    // self-check: never hand back a non-annihilating operator
    if (!op.is_zero() && annihilates(op, f)) out.push_back(std::move(op));
  }
  return out;
}

std::optional<QWeylOp> guess_minimal(const FunctionTable& f, int j, int max_d,
                                     int max_e, unsigned seed) {
  const Box& w = f.window();
  long other = 1;
  for (int i = 0; i < f.discrete_rank(); ++i)
    if (i != j - 1) other *= w.side(i);

  for (int pass = 0; pass < 2; ++pass) {
    for (int d = 1; d <= max_d; ++d) {
      long rows = (w.side(j - 1) - d) * other;
      if (rows <= 0) break;
      for (int e = 0; e <= max_e; ++e) {
        long unknowns = static_cast<long>(d + 1) * (2 * e + 1);
        bool determined = rows >= unknowns;
        if (pass == 0 && !determined) break;
        if (pass == 1 && determined) continue;  // already tried
        auto ops = guess_recurrence(f, j, d, e, seed);
        if (!ops.empty()) {
          // prefer the sparsest member of the basis
          std::size_t best = 0;
          for (std::size_t i = 1; i < ops.size(); ++i)
            if (ops[i].terms().size() < ops[best].terms().size()) best = i;
          return ops[best];
        }
      }
    }
  }
  return std::nullopt;
}

// --- certification ---------------------------------------------------------------

namespace {

// true when every term's L-part lives only in direction j
bool single_direction(const QWeylOp& op, int j) {
  for (const auto& [k, c] : op.terms())
    for (std::size_t i = 0; i < k.ldeg.size(); ++i)
      if (k.ldeg[i] != 0 && static_cast<int>(i) != j - 1) return false;
  return true;
}

// Lemma shape p(M) L_j^d + q(M): exactly the L-levels 0 and d, both nonzero
bool lemma_shape(const QWeylOp& op, int j, int* d_out) {
  int d = op.order(j);
  if (d < 1) return false;
  bool has_top = false, has_bot = false;
  for (const auto& [k, c] : op.terms()) {
    int s = k.ldeg[j - 1];
    if (s == 0) has_bot = true;
    else if (s == d) has_top = true;
    else return false;
  }
  if (!(has_top && has_bot)) return false;
  *d_out = d;
  return true;
}

}  // namespace

Certificate certify(const FunctionTable& f, const std::vector<QWeylOp>& ops,
                    const FunctionTable* held_out) {
  Certificate cert;
  const int r = f.rank();
  cert.direction_op.assign(r, QWeylOp::zero(r));
  cert.order.assign(r, 0);

  for (int j = 1; j <= r; ++j) {
    bool covered = false;
    std::string last_reason = "direction " + std::to_string(j) + " uncovered";
    for (const auto& op : ops) {
      if (op.rank() != r || op.is_zero()) continue;
      if (!single_direction(op, j)) continue;
      int d = 0;
      if (!lemma_shape(op, j, &d)) {
        // a rank-1 module needs only one nontrivial relation
        d = op.order(j);
        if (!(r == 1 && d >= 1)) {
          last_reason = "operator for direction " + std::to_string(j) +
                        " is not of the shape p(M) L^d + q(M)";
          continue;
        }
      }
      if (!annihilates(op, f)) {
        last_reason = "operator for direction " + std::to_string(j) +
                      " fails on the table";
        continue;
      }
      if (held_out && !annihilates(op, *held_out)) {
        last_reason = "operator for direction " + std::to_string(j) +
                      " fails on the held-out window";
        continue;
      }
      cert.direction_op[j - 1] = op;
      cert.order[j - 1] = d;
      covered = true;
      break;
    }
    if (!covered) {
      cert.ok = false;
      cert.reason = last_reason;
      return cert;
    }
  }
  cert.ok = true;
  return cert;
}

}  // namespace sl21
