#pragma once

// Braid-closure links, the cut (1,1)-tangle construction, and slice-by-slice
// evaluation through the ribbon data.
//
// Closure convention: the braid occupies positions 1..n; the closure arc of
// position i joins top i to bottom i.  Cutting the arc at position p leaves
// free ends at bottom p and top p.  Arcs left of p are routed around the
// left (coev_l cup, ev_r cap, dual strand on the left); arcs right of p are
// routed around the right (coev_r cup, ev_l cap).  The register peaks at
// 2n-1 factors.

#include <map>
#include <string>
#include <vector>

#include "sl21/ribbon.hpp"

namespace sl21 {

struct BraidWord {
  int n = 1;                 // strand count
  std::vector<int> letters;  // +i for sigma_i, -i for its inverse, 1 <= i < n
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// grammar: "<n>: s<i> S<i> ..." with S<i> the inverse letter
BraidWord parse_braid(const std::string& text);

// cycles of the closure permutation, each sorted, ordered by smallest position
std::vector<std::vector<int>> components(const BraidWord& braid);

struct ColoredLink {
  BraidWord braid;
  std::vector<TypicalColor> colors;  // one per component
};

struct TensorFactor {
  TypicalColor color;
  bool dual = false;
};

struct Slice {
  enum Kind { CoevR, CoevL, EvR, EvL, Crossing, CrossingInv };
  Kind kind;
  int slot;            // leftmost register factor the event touches
  TypicalColor color;  // arc color for caps/cups; unused for crossings
};

struct SlicedTangle {
  TypicalColor boundary;
  std::vector<Slice> slices;
};

// cut_position < 0 selects the leftmost position of the cut component
SlicedTangle close_and_cut(const ColoredLink& link, int cut_component,
                           int cut_position = -1);

// caches braiding matrices and duality maps per color (pair)
class RibbonCache {
 public:
  const TypicalModule& module(TypicalColor c);
  const GradedMatrix& braid_pos(TypicalColor a, TypicalColor b);
  const GradedMatrix& braid_neg(TypicalColor a, TypicalColor b);  // inverse crossing a(x)b -> b(x)a
  const DualityMaps& duality(TypicalColor c);

 private:
  std::map<std::pair<int, int>, TypicalModule> modules_;
  std::map<std::tuple<int, int, int, int, int>, GradedMatrix> crossings_;
  std::map<std::pair<int, int>, DualityMaps> dualities_;
};

// endomorphism of V(boundary); if columns is nonempty only those columns of
// the identity are propagated (rows of the result stay complete)
GradedMatrix evaluate(const SlicedTangle& tangle, RibbonCache& cache,
                      const std::vector<int>& columns = {});

// M must be a scalar multiple of the identity; returns that scalar
Scalar scalar_of_endo(const GradedMatrix& M);

struct InvariantResult {
  Scalar bracket;            // <T>
  Scalar mod_dim;            // d of the cut color
  Scalar fprime;             // d * <T>, the framed invariant
  Scalar normalized;         // fprime * prod_c twist_c^{-w_c}
  long writhe = 0;           // total signed crossing count
  std::vector<long> self_writhe;  // per component
};

// full_check: propagate all columns and verify the endomorphism is scalar;
// otherwise only columns {0, probe} are computed and checked
InvariantResult invariant(const ColoredLink& link, int cut_component,
                          RibbonCache& cache, bool full_check = true,
                          int cut_position = -1, int probe_column = -1);

}  // namespace sl21
