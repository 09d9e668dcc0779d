#include <doctest.h>

#include "sl21/diagram.hpp"

using namespace sl21;

TEST_CASE("braid parsing") {
  BraidWord w = parse_braid("2: s1 s1 s1");
  CHECK(w.n == 2);
  CHECK(w.letters == std::vector<int>{1, 1, 1});
  BraidWord f8 = parse_braid("3: s1 S2 s1 S2");
  CHECK(f8.letters == std::vector<int>{1, -2, 1, -2});
  CHECK(parse_braid("1:").letters.empty());
  CHECK_THROWS_AS(parse_braid("2: s3"), ParseError);
  CHECK_THROWS_AS(parse_braid("2: x1"), ParseError);
  CHECK_THROWS_AS(parse_braid("s1 s2"), ParseError);
  CHECK_THROWS_AS(parse_braid("0:"), ParseError);
}

TEST_CASE("closure components") {
  CHECK(components(parse_braid("2: s1 s1 s1")).size() == 1);
  CHECK(components(parse_braid("2: s1 s1")).size() == 2);
  CHECK(components(parse_braid("1:")).size() == 1);
  CHECK(components(parse_braid("3: s1 s2")).size() == 1);
  auto c = components(parse_braid("3: s1"));
  CHECK(c.size() == 2);
  CHECK(c[0] == std::vector<int>{1, 2});
  CHECK(c[1] == std::vector<int>{3});
}

TEST_CASE("unknot gives the modified dimension") {
  RibbonCache cache;
  for (int a1 = 0; a1 <= 4; ++a1) {
    ColoredLink unknot{parse_braid("1:"), {{a1, 1}}};
    InvariantResult r = invariant(unknot, 0, cache);
    CHECK(r.bracket.is_one());
    CHECK(r.fprime == modified_dim({a1, 1}));
  }
}

TEST_CASE("positive kink evaluates to the twist") {
  RibbonCache cache;
  for (int a1 = 0; a1 <= 2; ++a1) {
    ColoredLink kink{parse_braid("2: s1"), {{a1, 1}}};
    InvariantResult r = invariant(kink, 0, cache);
    CHECK(r.bracket == twist_scalar({a1, 1}));
    CHECK(r.fprime == twist_scalar({a1, 1}) * modified_dim({a1, 1}));
    CHECK(r.writhe == 1);
    CHECK(r.self_writhe[0] == 1);
    // framing normalization divides the kink back to d
    CHECK(r.normalized == modified_dim({a1, 1}));
  }
}

TEST_CASE("negative kink is the inverse twist") {
  RibbonCache cache;
  ColoredLink kink{parse_braid("2: S1"), {{1, 1}}};
  InvariantResult r = invariant(kink, 0, cache);
  CHECK(r.bracket == twist_scalar({1, 1}).inverse());
  CHECK(r.normalized == modified_dim({1, 1}));
}

TEST_CASE("split unlink vanishes") {
  RibbonCache cache;
  // sigma1 sigma1^-1 closes to a 2-component unlink; the split circle
  // contributes its quantum dimension, which is 0
  ColoredLink unlink{parse_braid("2: s1 S1"), {{0, 1}, {1, 2}}};
  InvariantResult r = invariant(unlink, 0, cache);
  CHECK(r.fprime.is_zero());
}

TEST_CASE("R2 insertion does not change the invariant") {
  RibbonCache cache;
  ColoredLink trefoil{parse_braid("2: s1 s1 s1"), {{0, 1}}};
  ColoredLink padded{parse_braid("2: s1 S1 s1 s1 s1"), {{0, 1}}};
  InvariantResult a = invariant(trefoil, 0, cache);
  InvariantResult b = invariant(padded, 0, cache);
  CHECK(a.fprime == b.fprime);
}

TEST_CASE("cut position independence") {
  RibbonCache cache;
  ColoredLink trefoil{parse_braid("2: s1 s1 s1"), {{1, 1}}};
  InvariantResult a = invariant(trefoil, 0, cache, true, 1);
  InvariantResult b = invariant(trefoil, 0, cache, true, 2);
  CHECK(a.fprime == b.fprime);
}

TEST_CASE("cut component independence on the Hopf link") {
  RibbonCache cache;
  ColoredLink hopf{parse_braid("2: s1 s1"), {{0, 1}, {1, 2}}};
  InvariantResult a = invariant(hopf, 0, cache);
  InvariantResult b = invariant(hopf, 1, cache);
  CHECK(a.fprime == b.fprime);
}

TEST_CASE("Markov stabilization (framing-normalized)") {
  RibbonCache cache;
  ColoredLink b2{parse_braid("2: s1 s1 s1"), {{0, 1}}};
  ColoredLink b3{parse_braid("3: s1 s1 s1 s2"), {{0, 1}}};
  InvariantResult a = invariant(b2, 0, cache);
  InvariantResult b = invariant(b3, 0, cache);
  CHECK(a.normalized == b.normalized);
  // negative stabilization too
  ColoredLink b3m{parse_braid("3: s1 s1 s1 S2"), {{0, 1}}};
  InvariantResult c = invariant(b3m, 0, cache);
  CHECK(a.normalized == c.normalized);
}

TEST_CASE("probe-column evaluation agrees with the full check") {
  RibbonCache cache;
  ColoredLink trefoil{parse_braid("2: s1 s1 s1"), {{1, 1}}};
  InvariantResult full = invariant(trefoil, 0, cache, true);
  InvariantResult fast = invariant(trefoil, 0, cache, false);
  CHECK(full.fprime == fast.fprime);
}
