#include "sl21/ribbon.hpp"

#include <algorithm>

namespace sl21 {

GradedMatrix eprime(const TypicalModule& V) {
  GradedMatrix E1 = V.act(Gen::E1), E2 = V.act(Gen::E2);
  return E1 * E2 - (E2 * E1).scaled(Scalar::generator(kGenQ, -1));
}

GradedMatrix fprime(const TypicalModule& V) {
  GradedMatrix F1 = V.act(Gen::F1), F2 = V.act(Gen::F2);
  return F2 * F1 - (F1 * F2).scaled(Scalar::generator(kGenQ));
}

GradedMatrix k_matrix(const TypicalModule& A, const TypicalModule& B) {
  std::vector<int> p = parity_concat(A.parity(), B.parity());
  GradedMatrix K(p, p);
  int nB = B.dim();
  for (int i = 0; i < A.dim(); ++i) {
    long l1 = A.h1_weight(i), sA = A.h2_offset(i);
    for (int j = 0; j < nB; ++j) {
      long m1 = B.h1_weight(j), sB = B.h2_offset(j);
      // exponent -l1*m2 - l2*m1 - 2*l2*m2 with l2 = a2+sA, m2 = b2+sB
      long qe = -l1 * sB - sA * m1 - 2 * sA * sB;
      Monomial m = Monomial::gen(kGenQ, static_cast<int>(qe)) *
                   Monomial::gen(gen_x(B.color().var), static_cast<int>(-l1 - 2 * sA)) *
                   Monomial::gen(gen_x(A.color().var), static_cast<int>(-m1 - 2 * sB)) *
                   Monomial::gen(gen_z(A.color().var, B.color().var), -2);
      K.set(i * nB + j, i * nB + j, Scalar(LaurentPoly::term(m, 1)));
    }
  }
  return K;
}

GradedMatrix qexp_factor(const GradedMatrix& X, int base_exp, const Scalar& coeff, int cap) {
  GradedMatrix acc = GradedMatrix::identity(X.row_parity());
  GradedMatrix power = acc;
  Scalar cpow(1);
  for (int n = 1;; ++n) {
    if (n > cap) throw std::runtime_error("qexp_factor: nilpotency bound exceeded");
    power = power * X;
    if (power.is_zero()) break;
    cpow *= coeff;
    acc = acc + power.scaled(cpow / qfactorial_paren(n, base_exp));
  }
  return acc;
}

RibbonPair r_pair(const TypicalModule& A, const TypicalModule& B) {
  GradedMatrix k11 = super_kron(A.act(Gen::E1), B.act(Gen::F1));
  GradedMatrix kpp = super_kron(eprime(A), fprime(B));
  GradedMatrix k22 = super_kron(A.act(Gen::E2), B.act(Gen::F2));
  Scalar br1 = qbracket(1);
  int cap = 4 * (std::max(A.color().a1, B.color().a1) + 2);

  GradedMatrix K = k_matrix(A, B);
  GradedMatrix Kinv(K.row_parity(), K.col_parity());
  for (int j = 0; j < K.cols(); ++j) Kinv.set(j, j, K.at(j, j).inverse());

  RibbonPair out;
  out.R = qexp_factor(k11, -2, br1, cap) * qexp_factor(kpp, -2, -br1, cap) *
          qexp_factor(k22, -2, -br1, cap) * K;
  out.Rinv = Kinv * qexp_factor(k22, 2, br1, cap) * qexp_factor(kpp, 2, br1, cap) *
             qexp_factor(k11, 2, -br1, cap);
  return out;
}

GradedMatrix braiding(const TypicalModule& A, const TypicalModule& B) {
  return super_flip(A.parity(), B.parity()) * r_pair(A, B).R;
}

GradedMatrix braiding_inv(const TypicalModule& A, const TypicalModule& B) {
  return r_pair(A, B).Rinv * super_flip(B.parity(), A.parity());
}

DualityMaps duality_maps(const TypicalModule& V) {
  int n = V.dim();
  const std::vector<int>& p = V.parity();
  std::vector<int> pp = parity_concat(p, p);
  std::vector<int> triv{0};
  GradedMatrix qh2p = V.q_pow_h2(2), qh2m = V.q_pow_h2(-2);

  DualityMaps d{GradedMatrix(pp, triv), GradedMatrix(triv, pp), GradedMatrix(pp, triv),
                GradedMatrix(triv, pp)};
  for (int i = 0; i < n; ++i) {
    int ii = i * n + i;
    d.coev_r.set(ii, 0, Scalar(1));
    d.ev_r.set(0, ii, Scalar(1));
    Scalar sgn(p[i] ? -1 : 1);
    d.coev_l.set(ii, 0, sgn * qh2p.at(i, i));
    d.ev_l.set(0, ii, sgn * qh2m.at(i, i));
  }
  return d;
}

Scalar twist_scalar(TypicalColor c) {
  // q^{-2 a2 (a1+a2+1)} = x^{-2(a1+1)} z^{-2}
  Monomial m = Monomial::gen(gen_x(c.var), -2 * (c.a1 + 1)) * Monomial::gen(gen_z(c.var, c.var), -2);
  return Scalar(LaurentPoly::term(m, 1));
}

Scalar modified_dim(TypicalColor c) {
  Scalar num = qbracket(c.a1 + 1);
  Scalar den = qbracket(1) * qbracket(AffineExp{0, 1, c.var}) *
               qbracket(AffineExp{c.a1 + 1, 1, c.var});
  return num / den;
}

Scalar qdim(const TypicalModule& V) {
  DualityMaps d = duality_maps(V);
  return (d.ev_l * d.coev_r).at(0, 0);
}

GradedMatrix coproduct(const TypicalModule& A, const TypicalModule& B, Gen g) {
  GradedMatrix IA = GradedMatrix::identity(A.parity());
  GradedMatrix IB = GradedMatrix::identity(B.parity());
  switch (g) {
    case Gen::h1:
      return super_kron(A.act(Gen::h1), IB) + super_kron(IA, B.act(Gen::h1));
    case Gen::E1:
      return super_kron(A.act(Gen::E1), IB) + super_kron(A.q_pow_h1(-1), B.act(Gen::E1));
    case Gen::E2:
      return super_kron(A.act(Gen::E2), IB) + super_kron(A.q_pow_h2(-1), B.act(Gen::E2));
    case Gen::F1:
      return super_kron(A.act(Gen::F1), B.q_pow_h1(1)) + super_kron(IA, B.act(Gen::F1));
    case Gen::F2:
      return super_kron(A.act(Gen::F2), B.q_pow_h2(1)) + super_kron(IA, B.act(Gen::F2));
  }
  throw std::logic_error("unreachable");
}

GradedMatrix coproduct_qh(const TypicalModule& A, const TypicalModule& B, int which, int c) {
  // q^{c h_i} is group-like
  if (which == 1) return super_kron(A.q_pow_h1(c), B.q_pow_h1(c));
  return super_kron(A.q_pow_h2(c), B.q_pow_h2(c));
}

}  // namespace sl21
