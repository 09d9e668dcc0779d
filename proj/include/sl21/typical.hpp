#pragma once

// The typical U_h(sl(2|1))-module V(a1,a2) of dimension 4*a1+4, with a2 kept
// symbolic as the variable x_{var}.  Basis blocks in flat order:
//   (0,0)  k = 0..a1      offset 0
//   (-1,1) k = 0..a1-1    offset a1+1
//   (1,0)  k = 0..a1+1    offset 2a1+1
//   (0,1)  k = 0..a1      offset 3a1+3
// Blocks (0,0),(0,1) are even, (-1,1),(1,0) odd.

#include <string>
#include <vector>

#include "sl21/matrix.hpp"

namespace sl21 {

struct TypicalColor {
  int a1 = 0;
  int var = 1;  // its a2 is the formal variable x_{var}
  bool operator==(const TypicalColor& o) const { return a1 == o.a1 && var == o.var; }
};

struct BasisIndex {
  int eps1 = 0, eps2 = 0;
  int k = 0;
};

enum class Gen { h1, E1, F1, E2, F2 };

Scalar chebyshev_P(int n);  // P_{-1} = 0, P_0 = 1, P_n = (q+q^{-1})P_{n-1} - P_{n-2}

class TypicalModule {
 public:
  explicit TypicalModule(TypicalColor color);

  const TypicalColor& color() const { return color_; }
  int dim() const { return 4 * color_.a1 + 4; }
  const std::vector<int>& parity() const { return parity_; }
  const std::vector<BasisIndex>& basis() const { return basis_; }
  int flat(int eps1, int eps2, int k) const;

  long h1_weight(int l) const;   // integer
  long h2_offset(int l) const;   // h2-weight = a2 + offset

  GradedMatrix act(Gen g) const;       // h2 excluded: use q_pow_h2
  GradedMatrix q_pow_h1(int c) const;  // diagonal q^{c h1}
  GradedMatrix q_pow_h2(int c) const;  // diagonal q^{c (a2+offset)} = q^{c off} x^c

  // action of g on the dual module in the dual basis (signed transpose via S)
  GradedMatrix dual_act(Gen g) const;
  GradedMatrix dual_q_pow_h1(int c) const;
  GradedMatrix dual_q_pow_h2(int c) const;

 private:
  TypicalColor color_;
  std::vector<BasisIndex> basis_;
  std::vector<int> parity_;
};

struct RelationReport {
  std::vector<std::pair<std::string, bool>> results;
  bool all_pass = true;
  std::string first_failure;
};

RelationReport verify_relations(TypicalColor color);

}  // namespace sl21
