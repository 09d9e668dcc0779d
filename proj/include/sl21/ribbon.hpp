#pragma once

// Ribbon data on typical modules: E'/F', the K factor, the q-exponential
// factors of the R-matrix, R and its inverse, braiding, the four duality
// maps, twist, quantum dimension and modified dimension.

#include "sl21/typical.hpp"

namespace sl21 {

GradedMatrix eprime(const TypicalModule& V);  // E1 E2 - q^{-1} E2 E1
GradedMatrix fprime(const TypicalModule& V);  // F2 F1 - q F1 F2

// diagonal factor q^{-h1(x)h2 - h2(x)h1 - 2 h2(x)h2} on V (x) W
GradedMatrix k_matrix(const TypicalModule& A, const TypicalModule& B);

// sum_n coeff^n X^n / (n)_{q^{base_exp}}!  truncated when X^n vanishes
GradedMatrix qexp_factor(const GradedMatrix& X, int base_exp, const Scalar& coeff, int cap);

struct RibbonPair {
  GradedMatrix R, Rinv;  // endomorphisms of V (x) W
};
RibbonPair r_pair(const TypicalModule& A, const TypicalModule& B);

// c_{V,W} = tau . R : V (x) W -> W (x) V, and its inverse
GradedMatrix braiding(const TypicalModule& A, const TypicalModule& B);
GradedMatrix braiding_inv(const TypicalModule& A, const TypicalModule& B);

struct DualityMaps {
  GradedMatrix coev_r;  // 1 -> V (x) V*
  GradedMatrix ev_r;    // V* (x) V -> 1
  GradedMatrix coev_l;  // 1 -> V* (x) V
  GradedMatrix ev_l;    // V (x) V* -> 1
};
DualityMaps duality_maps(const TypicalModule& V);

Scalar twist_scalar(TypicalColor c);    // q^{-2 a2 (a1 + a2 + 1)}
Scalar modified_dim(TypicalColor c);    // {a1+1} / ({1}{a2}{a2+a1+1})
Scalar qdim(const TypicalModule& V);    // ev_l . coev_r (vanishes on typicals)

// coproduct of a generator acting on V (x) W; g must not be h1
GradedMatrix coproduct(const TypicalModule& A, const TypicalModule& B, Gen g);
GradedMatrix coproduct_qh(const TypicalModule& A, const TypicalModule& B, int which, int c);

}  // namespace sl21
