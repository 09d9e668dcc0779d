#pragma once

// q-Weyl algebra operators acting on tabulated functions, annihilator
// verification, recurrence guessing, and holonomy certificates.
//
// Operators are stored in normal form with all M's left of all L's;
// the commutation rule is L_i M_j = q^{delta_ij} M_j L_i.  A table has
// some discrete directions (tabulated on an integer box) and optionally
// some continuous ones, which stay symbolic inside the Scalar values:
// there M_i multiplies by x_i and L_i acts by the shift endomorphism.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sl21/scalar.hpp"

namespace sl21 {

// --- operators ---------------------------------------------------------------

struct QWeylKey {
  std::vector<int> mdeg;  // Laurent exponents of the M's
  std::vector<int> ldeg;  // nonnegative exponents of the L's
  bool operator<(const QWeylKey& o) const {
    if (mdeg != o.mdeg) return mdeg < o.mdeg;
    return ldeg < o.ldeg;
  }
  bool operator==(const QWeylKey& o) const {
    return mdeg == o.mdeg && ldeg == o.ldeg;
  }
};

class QWeylOp {
 public:
  explicit QWeylOp(int rank) : rank_(rank) {}

  static QWeylOp zero(int rank) { return QWeylOp(rank); }
  static QWeylOp constant(int rank, const Scalar& c);
  static QWeylOp one(int rank) { return constant(rank, Scalar(1)); }
  static QWeylOp M(int rank, int i, int e = 1);  // directions are 1-based
  static QWeylOp L(int rank, int i, int e = 1);

  int rank() const { return rank_; }
  const std::map<QWeylKey, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const QWeylKey& k, const Scalar& c);

  QWeylOp operator+(const QWeylOp& o) const;
  QWeylOp operator-(const QWeylOp& o) const;
  QWeylOp operator*(const QWeylOp& o) const;
  QWeylOp operator-() const;
  QWeylOp scaled(const Scalar& c) const;

  // largest L-exponent in direction j (1-based); 0 for the zero operator
  int order(int j) const;
  // M-Laurent degree range in direction j over all terms
  std::pair<int, int> m_range(int j) const;

  std::string str() const;

 private:
  int rank_;
  std::map<QWeylKey, Scalar> terms_;  // no zero coefficients stored
};

// Plain-text round trip for operators: a "rank <r>" header line followed by
// one "term <m_1 .. m_r> <l_1 .. l_r> <scalar>" line per term, where the
// scalar is the canonical "num ; den" text and runs to the end of the line.
// Blank lines and lines starting with '#' are ignored on input.
std::string op_text(const QWeylOp& op);
QWeylOp parse_op_text(const std::string& text);

// specialize_colors applied to every coefficient
QWeylOp specialize_colors(const QWeylOp& op, const std::map<int, long>& a2);

// --- tables ------------------------------------------------------------------

struct Box {
  std::vector<long> lo, hi;  // inclusive; lo[i] <= hi[i]
  int rank() const { return static_cast<int>(lo.size()); }
  long side(int i) const { return hi[i] - lo[i] + 1; }
  long volume() const;
};

// Tabulated function on a box of discrete points; cont_vars lists the
// scalar-variable indices of continuous directions, which follow the
// discrete ones in the operator direction order.
class FunctionTable {
 public:
  FunctionTable(Box window, std::vector<int> cont_vars = {});

  int rank() const { return window_.rank() + static_cast<int>(cont_vars_.size()); }
  int discrete_rank() const { return window_.rank(); }
  const Box& window() const { return window_; }
  const std::vector<int>& cont_vars() const { return cont_vars_; }

  const Scalar& at(const std::vector<long>& pt) const;
  void set(const std::vector<long>& pt, Scalar v);
  bool is_zero() const;

  std::string csv() const;  // one line per point: coords..., canonical scalar

 private:
  long flat(const std::vector<long>& pt) const;
  Box window_;
  std::vector<int> cont_vars_;
  std::vector<Scalar> values_;
};

// window shrinks in each discrete direction by the operator's order there
FunctionTable apply(const QWeylOp& op, const FunctionTable& f);
bool annihilates(const QWeylOp& op, const FunctionTable& f);

// --- builtin function library -------------------------------------------------

struct Builtin {
  int rank;
  std::function<Scalar(const std::vector<long>&)> value;
  std::vector<QWeylOp> annihilators;
};

// names: pochhammer, inv_pochhammer, indicator, inv_qnum, qsquare
const Builtin& builtin(const std::string& name);
FunctionTable tabulate(const Builtin& b, const Box& window);

// --- guessing and certification ------------------------------------------------

// Ansatz sum_{s=0..d, t=-e..e} c_{s,t} M_j^t L_j^s over the scalar field.
// The kernel support is probed at a seeded random rational point, the
// support-restricted subsystem is solved exactly by fraction-free (Bareiss)
// elimination after clearing denominators, and every returned operator is
// re-verified symbolically on the full window.
std::vector<QWeylOp> guess_recurrence(const FunctionTable& f, int j, int d,
                                      int e, unsigned seed = 1);

// Scans (d, e) in increasing order up to the bounds and returns the first
// nonempty verified basis, preferring determined systems (enough rows).
std::optional<QWeylOp> guess_minimal(const FunctionTable& f, int j, int max_d,
                                     int max_e, unsigned seed = 1);

struct Certificate {
  bool ok = false;
  std::string reason;                // set when refused
  std::vector<QWeylOp> direction_op; // one per direction when ok
  std::vector<int> order;            // its L-order in that direction
};

// Checks that every direction j is covered by an operator involving only
// L_j.  Operators must have the two-level shape p(M) L_j^d + q(M) with
// nonzero p, q; for a rank-1 table any nontrivial single-direction
// annihilator of positive order is accepted, since one nontrivial relation
// suffices there.  All operators are re-verified on f and, when given, on
// the held-out table.
Certificate certify(const FunctionTable& f, const std::vector<QWeylOp>& ops,
                    const FunctionTable* held_out = nullptr);

}  // namespace sl21
