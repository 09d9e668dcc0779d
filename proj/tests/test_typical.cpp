#include <doctest.h>

#include "sl21/typical.hpp"

using namespace sl21;

TEST_CASE("basis layout and parities") {
  TypicalModule V({2, 1});
  CHECK(V.dim() == 12);
  CHECK(V.flat(0, 0, 0) == 0);
  CHECK(V.flat(-1, 1, 0) == 3);
  CHECK(V.flat(1, 0, 0) == 5);
  CHECK(V.flat(0, 1, 0) == 9);
  CHECK(V.parity()[0] == 0);
  CHECK(V.parity()[V.flat(-1, 1, 0)] == 1);
  CHECK(V.parity()[V.flat(1, 0, 1)] == 1);
  CHECK(V.parity()[V.flat(0, 1, 2)] == 0);

  TypicalModule W({0, 1});
  CHECK(W.dim() == 4);
  // a1=0: block (-1,1) is empty
  CHECK(W.flat(1, 0, 0) == 1);
}

TEST_CASE("weights") {
  TypicalModule V({1, 1});
  // h1 on F1^k v_{-1,1} -> a1-2k-1
  CHECK(V.h1_weight(V.flat(-1, 1, 0)) == 0);
  // h2 on F1^k v_{0,1} -> a2+k+1
  CHECK(V.h2_offset(V.flat(0, 1, 1)) == 2);
  CHECK(V.h1_weight(0) == 1);
  CHECK(V.h2_offset(0) == 0);

  TypicalModule W({0, 1});
  CHECK(W.h1_weight(0) == 0);
  CHECK(W.h1_weight(1) == 1);
  CHECK(W.h1_weight(2) == -1);
  CHECK(W.h1_weight(3) == 0);
}

TEST_CASE("chebyshev polynomials") {
  Scalar q = Scalar::generator(kGenQ);
  Scalar qi = Scalar::generator(kGenQ, -1);
  CHECK(chebyshev_P(-1).is_zero());
  CHECK(chebyshev_P(0).is_one());
  CHECK(chebyshev_P(1) == q + qi);
  CHECK(chebyshev_P(2) == q * q + Scalar(1) + qi * qi);
  // P_n = [n+1] in disguise
  for (int n = 0; n <= 5; ++n) CHECK(chebyshev_P(n) == qint(n + 1));
}

TEST_CASE("generator actions: spot values") {
  TypicalModule V({1, 1});
  GradedMatrix E1 = V.act(Gen::E1);
  GradedMatrix E2 = V.act(Gen::E2);
  GradedMatrix F2 = V.act(Gen::F2);

  // E1 v00 = 0, E2 v00 = 0
  CHECK(E1.column(0).empty());
  CHECK(E2.column(0).empty());
  // a1=1, k=1: E1 F1 v00 = [1][1] v00 = v00
  CHECK(E1.at(0, V.flat(0, 0, 1)).is_one());
  // E2 v10 = [a2] v00
  CHECK(E2.at(0, V.flat(1, 0, 0)) == qint(AffineExp{0, 1, 1}));
  // F2 v00 = v10
  CHECK(F2.at(V.flat(1, 0, 0), 0).is_one());
  // F2 F1 v00 = v-11 + [a1]/[a1+1] F1 v10
  CHECK(F2.at(V.flat(-1, 1, 0), V.flat(0, 0, 1)).is_one());
  CHECK(F2.at(V.flat(1, 0, 1), V.flat(0, 0, 1)) == qint(1) / qint(2));
  // F2 annihilates the (0,1) block
  for (int k = 0; k <= 1; ++k) CHECK(F2.column(V.flat(0, 1, k)).empty());

  // a1=0: F1 has exactly one nonzero entry
  TypicalModule W({0, 1});
  CHECK(W.act(Gen::F1).nnz() == 1);
}

TEST_CASE("parity homogeneity") {
  for (int a1 = 0; a1 <= 2; ++a1) {
    TypicalModule V({a1, 1});
    CHECK(V.act(Gen::E1).op_parity() == 0);
    CHECK(V.act(Gen::F1).op_parity() == 0);
    CHECK(V.act(Gen::h1).op_parity() == 0);
    CHECK(V.act(Gen::E2).op_parity() == 1);
    CHECK(V.act(Gen::F2).op_parity() == 1);
  }
}

TEST_CASE("defining relations hold for a1 = 0..3") {
  for (int a1 = 0; a1 <= 3; ++a1) {
    RelationReport rep = verify_relations({a1, 1});
    INFO("a1 = ", a1, " first failure: ", rep.first_failure);
    CHECK(rep.all_pass);
    CHECK(rep.results.size() >= 16);
  }
}

TEST_CASE("dual module") {
  TypicalModule V({1, 1});
  GradedMatrix dh1 = V.dual_act(Gen::h1);
  // dual h1 eigenvalue on f_l is minus the weight of w_l
  for (int l = 0; l < V.dim(); ++l) CHECK(dh1.at(l, l) == Scalar(-V.h1_weight(l)));
  // dual E2 squares to zero
  GradedMatrix dE2 = V.dual_act(Gen::E2);
  CHECK((dE2 * dE2).is_zero());
  // the dual is a genuine module, so [E1,F1] = (q^h1 - q^-h1)/(q - q^-1)
  // holds verbatim in the dual matrices
  GradedMatrix dE1 = V.dual_act(Gen::E1), dF1 = V.dual_act(Gen::F1);
  GradedMatrix dH1 = (V.dual_q_pow_h1(1) - V.dual_q_pow_h1(-1)).scaled(qbracket(1).inverse());
  CHECK((dE1 * dF1 - dF1 * dE1).equals(dH1));
}

TEST_CASE("highest weight vector") {
  for (int a1 = 0; a1 <= 2; ++a1) {
    TypicalModule V({a1, 1});
    CHECK(V.act(Gen::E1).column(0).empty());
    CHECK(V.act(Gen::E2).column(0).empty());
    CHECK(V.act(Gen::h1).at(0, 0) == Scalar(a1));
    CHECK(V.h2_offset(0) == 0);
  }
}
