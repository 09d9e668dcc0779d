#include "sl21/typical.hpp"

namespace sl21 {

Scalar chebyshev_P(int n) {
  if (n <= -1) return Scalar();
  Scalar pm1;       // P_{-1}
  Scalar p(1);      // P_0
  Scalar rec = Scalar::generator(kGenQ) + Scalar::generator(kGenQ, -1);
  for (int i = 0; i < n; ++i) {
    Scalar nxt = rec * p - pm1;
    pm1 = p;
    p = nxt;
  }
  return p;
}

namespace {

int block_parity(int eps1, int /*eps2*/) {
  // (0,0),(0,1) even; (-1,1),(1,0) odd
  return eps1 != 0 ? 1 : 0;
}

int block_len(int a1, int eps1, int eps2) {
  if (eps1 == 0 && eps2 == 0) return a1 + 1;
  if (eps1 == -1 && eps2 == 1) return a1;
  if (eps1 == 1 && eps2 == 0) return a1 + 2;
  return a1 + 1;  // (0,1)
}

}  // namespace

TypicalModule::TypicalModule(TypicalColor color) : color_(color) {
  if (color.a1 < 0) throw std::invalid_argument("a1 must be nonnegative");
  const int blocks[4][2] = {{0, 0}, {-1, 1}, {1, 0}, {0, 1}};
  for (const auto& b : blocks) {
    int len = block_len(color.a1, b[0], b[1]);
    for (int k = 0; k < len; ++k) {
      basis_.push_back({b[0], b[1], k});
      parity_.push_back(block_parity(b[0], b[1]));
    }
  }
}

int TypicalModule::flat(int eps1, int eps2, int k) const {
  int a1 = color_.a1;
  int off;
  if (eps1 == 0 && eps2 == 0) {
    off = 0;
  } else if (eps1 == -1 && eps2 == 1) {
    off = a1 + 1;
  } else if (eps1 == 1 && eps2 == 0) {
    off = 2 * a1 + 1;
  } else if (eps1 == 0 && eps2 == 1) {
    off = 3 * a1 + 3;
  } else {
    throw std::invalid_argument("bad block");
  }
  if (k < 0 || k >= block_len(a1, eps1, eps2)) throw std::out_of_range("bad k");
  return off + k;
}

long TypicalModule::h1_weight(int l) const {
  const BasisIndex& b = basis_[l];
  long base = color_.a1 - 2L * b.k;
  if (b.eps1 == -1) return base - 1;
  if (b.eps1 == 1) return base + 1;
  return base;
}

long TypicalModule::h2_offset(int l) const {
  const BasisIndex& b = basis_[l];
  return b.k + (b.eps2 == 1 ? 1 : 0);
}

GradedMatrix TypicalModule::q_pow_h1(int c) const {
  GradedMatrix m(parity_, parity_);
  for (int l = 0; l < dim(); ++l)
    m.set(l, l, Scalar::generator(kGenQ, static_cast<int>(c * h1_weight(l))));
  return m;
}

GradedMatrix TypicalModule::q_pow_h2(int c) const {
  GradedMatrix m(parity_, parity_);
  for (int l = 0; l < dim(); ++l) {
    Monomial mono = Monomial::gen(kGenQ, static_cast<int>(c * h2_offset(l))) *
                    Monomial::gen(gen_x(color_.var), c);
    m.set(l, l, Scalar(LaurentPoly::term(mono, 1)));
  }
  return m;
}

GradedMatrix TypicalModule::act(Gen g) const {
  const int a1 = color_.a1;
  const int var = color_.var;
  GradedMatrix m(parity_, parity_);
  auto qa2 = [&](long c0, int c1) { return qint(AffineExp{c0, c1, var}); };
  const Scalar r = (a1 == 0) ? Scalar() : qint(a1) / qint(a1 + 1);  // [a1]/[a1+1]

  switch (g) {
    case Gen::h1:
      for (int l = 0; l < dim(); ++l) m.set(l, l, Scalar(h1_weight(l)));
      break;

    case Gen::E1:
      for (int l = 0; l < dim(); ++l) {
        const BasisIndex& b = basis_[l];
        if (b.k < 1) continue;
        long top = a1 + (b.eps1 == -1 ? -1 : b.eps1 == 1 ? 1 : 0);
        m.set(flat(b.eps1, b.eps2, b.k - 1), l, qint(b.k) * qint(top + 1 - b.k));
      }
      break;

    case Gen::F1:
      for (int l = 0; l < dim(); ++l) {
        const BasisIndex& b = basis_[l];
        if (b.k + 1 < block_len(a1, b.eps1, b.eps2))
          m.set(flat(b.eps1, b.eps2, b.k + 1), l, Scalar(1));
      }
      break;

    case Gen::F2:
      for (int l = 0; l < dim(); ++l) {
        const BasisIndex& b = basis_[l];
        int k = b.k;
        if (b.eps1 == 0 && b.eps2 == 0) {
          if (k - 1 >= 0 && k - 1 <= a1 - 1)
            m.set(flat(-1, 1, k - 1), l, chebyshev_P(k - 1));
          Scalar c10 = (k == 0) ? Scalar(1) : chebyshev_P(k - 1) * r - chebyshev_P(k - 2);
          m.set(flat(1, 0, k), l, c10);
        } else if (b.eps1 == -1) {
          m.set(flat(0, 1, k), l, chebyshev_P(k - 1) - r * chebyshev_P(k));
        } else if (b.eps1 == 1) {
          if (k >= 1) m.set(flat(0, 1, k - 1), l, chebyshev_P(k - 1));
        }
        // (0,1) block annihilated
      }
      break;

    case Gen::E2:
      for (int l = 0; l < dim(); ++l) {
        const BasisIndex& b = basis_[l];
        int k = b.k;
        if (b.eps1 == -1) {
          m.set(flat(0, 0, k + 1), l, qa2(1, 1) - qa2(0, 1) * r);
        } else if (b.eps1 == 1) {
          if (k <= a1) m.set(flat(0, 0, k), l, qa2(0, 1));
        } else if (b.eps2 == 1) {
          if (k <= a1 - 1) m.set(flat(-1, 1, k), l, -qa2(0, 1));
          m.set(flat(1, 0, k + 1), l, qa2(1, 1) - r * qa2(0, 1));
        }
        // (0,0) block annihilated
      }
      break;
  }
  return m;
}

namespace {

int gen_parity(Gen g) { return (g == Gen::E2 || g == Gen::F2) ? 1 : 0; }

// dual action: column l, row k gets (-1)^{p(g) p(l)} * S(g)[l][k]
GradedMatrix signed_transpose(const GradedMatrix& S, int gp, const std::vector<int>& parity) {
  GradedMatrix r(parity, parity);
  for (int c = 0; c < S.cols(); ++c)
    for (const auto& [row, v] : S.column(c)) {
      Scalar val = (gp && parity[row]) ? -v : v;
      r.set(c, row, val);
    }
  return r;
}

}  // namespace

GradedMatrix TypicalModule::dual_act(Gen g) const {
  GradedMatrix S;
  switch (g) {
    case Gen::h1:
      S = -act(Gen::h1);
      break;
    case Gen::E1:
      S = -(q_pow_h1(1) * act(Gen::E1));
      break;
    case Gen::E2:
      S = -(q_pow_h2(1) * act(Gen::E2));
      break;
    case Gen::F1:
      S = -(act(Gen::F1) * q_pow_h1(-1));
      break;
    case Gen::F2:
      S = -(act(Gen::F2) * q_pow_h2(-1));
      break;
  }
  return signed_transpose(S, gen_parity(g), parity_);
}

GradedMatrix TypicalModule::dual_q_pow_h1(int c) const {
  return signed_transpose(q_pow_h1(-c), 0, parity_);
}

GradedMatrix TypicalModule::dual_q_pow_h2(int c) const {
  return signed_transpose(q_pow_h2(-c), 0, parity_);
}

RelationReport verify_relations(TypicalColor color) {
  TypicalModule V(color);
  RelationReport rep;
  auto record = [&](const std::string& name, bool ok) {
    rep.results.emplace_back(name, ok);
    if (!ok && rep.all_pass) {
      rep.all_pass = false;
      rep.first_failure = name;
    }
  };

  GradedMatrix h1 = V.act(Gen::h1);
  GradedMatrix E1 = V.act(Gen::E1), F1 = V.act(Gen::F1);
  GradedMatrix E2 = V.act(Gen::E2), F2 = V.act(Gen::F2);
  // a2*Id commutes with everything, so the integer offset diagonal stands in
  // for h2 inside commutators
  GradedMatrix h2off(V.parity(), V.parity());
  for (int l = 0; l < V.dim(); ++l) h2off.set(l, l, Scalar(V.h2_offset(l)));

  auto comm = [](const GradedMatrix& A, const GradedMatrix& B) { return A * B - B * A; };
  auto anti = [](const GradedMatrix& A, const GradedMatrix& B) { return A * B + B * A; };

  record("[h1,E1] = 2E1", comm(h1, E1).equals(E1.scaled(Scalar(2))));
  record("[h1,F1] = -2F1", comm(h1, F1).equals(F1.scaled(Scalar(-2))));
  record("[h1,E2] = -E2", comm(h1, E2).equals(-E2));
  record("[h1,F2] = F2", comm(h1, F2).equals(F2));
  record("[h2,E1] = -E1", comm(h2off, E1).equals(-E1));
  record("[h2,F1] = F1", comm(h2off, F1).equals(F1));
  record("[h2,E2] = 0", comm(h2off, E2).is_zero());
  record("[h2,F2] = 0", comm(h2off, F2).is_zero());

  Scalar br1 = qbracket(1);
  GradedMatrix H1 = (V.q_pow_h1(1) - V.q_pow_h1(-1)).scaled(br1.inverse());
  GradedMatrix H2 = (V.q_pow_h2(1) - V.q_pow_h2(-1)).scaled(br1.inverse());
  record("[E1,F1] = (q^h1 - q^-h1)/(q - q^-1)", comm(E1, F1).equals(H1));
  record("[E2,F2] = (q^h2 - q^-h2)/(q - q^-1)", anti(E2, F2).equals(H2));
  record("[E1,F2] = 0", comm(E1, F2).is_zero());
  record("[E2,F1] = 0", comm(E2, F1).is_zero());
  record("E2^2 = 0", (E2 * E2).is_zero());
  record("F2^2 = 0", (F2 * F2).is_zero());

  Scalar qq = Scalar::generator(kGenQ) + Scalar::generator(kGenQ, -1);
  auto serre = [&](const GradedMatrix& X, const GradedMatrix& Y) {
    return (X * X * Y - (X * Y * X).scaled(qq) + Y * X * X).is_zero();
  };
  record("E1^2 E2 - (q+q^-1) E1 E2 E1 + E2 E1^2 = 0", serre(E1, E2));
  record("F1^2 F2 - (q+q^-1) F1 F2 F1 + F2 F1^2 = 0", serre(F1, F2));

  return rep;
}

}  // namespace sl21
