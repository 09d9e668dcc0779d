#pragma once

// Exact coefficient arithmetic for the field of fractions of the Laurent
// ring Q[q^±1, x_i^±1, z_ij^±1].  x_i stands for the formal exponential
// q^{a2,i} and z_ij for q^{a2,i * a2,j}; all exponents are integers in the
// unit q = e^{h/2}.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sl21 {

using Rational = mpq_class;

// --- generators -----------------------------------------------------------

// Packed id: q sorts first, then x_1 < x_2 < ..., then z_11 < z_12 < ...
using GenId = std::uint32_t;

constexpr GenId kGenQ = 0;

GenId gen_x(int i);
GenId gen_z(int i, int j);  // symmetric; stored with i <= j
bool gen_is_q(GenId g);
bool gen_is_x(GenId g);
bool gen_is_z(GenId g);
int gen_index1(GenId g);    // i of x_i or z_ij
int gen_index2(GenId g);    // j of z_ij
std::string gen_name(GenId g);

// --- monomials -------------------------------------------------------------

struct Monomial {
  // sorted by GenId, exponents nonzero
  std::vector<std::pair<GenId, int>> exps;

  static Monomial one() { return {}; }
  static Monomial gen(GenId g, int e);

  bool is_one() const { return exps.empty(); }
  int exponent(GenId g) const;
  long total_degree() const;

  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  Monomial pow(int e) const;
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// graded lexicographic; q < x1 < x2 < ... < z11 < z12 < ...
int mono_cmp(const Monomial& a, const Monomial& b);

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return mono_cmp(a, b) < 0;
  }
};

// --- Laurent polynomials ----------------------------------------------------

class LaurentPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonoLess>;

  LaurentPoly() = default;
  static LaurentPoly zero() { return {}; }
  static LaurentPoly one() { return constant(1); }
  static LaurentPoly constant(Rational c);
  static LaurentPoly term(Monomial m, Rational c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly mono_times(const Monomial& m) const;

  // largest term under mono_cmp; poly must be nonzero
  const std::pair<const Monomial, Rational>& leading() const;
  // gcd of the term monomials (componentwise min exponent, 0 for absent gens)
  Monomial content() const;

  // exact division; throws std::domain_error when not divisible
  LaurentPoly divexact(const LaurentPoly& b) const;

  Rational eval(const std::map<GenId, Rational>& point) const;

  std::string str() const;
  static LaurentPoly parse(const std::string& text);

 private:
  TermMap terms_;
};

// --- scalars (fractions) ----------------------------------------------------

struct EvalDenominatorZero : std::runtime_error {
  EvalDenominatorZero() : std::runtime_error("denominator vanishes at point; resample") {}
};

// num/den with den nonzero and normalized: leading coefficient 1, monomial
// content moved into num.  Equality is by cross-multiplication; no gcd.
class Scalar {
 public:
  Scalar() : num_(), den_(LaurentPoly::one()) {}
  Scalar(long v) : Scalar(Rational(v)) {}           // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v);                        // NOLINT(google-explicit-constructor)
  explicit Scalar(LaurentPoly p) : num_(std::move(p)), den_(LaurentPoly::one()) {}
  Scalar(LaurentPoly num, LaurentPoly den);

  static Scalar generator(GenId g, int e = 1);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar inverse() const;
  Scalar pow(int e) const;

  bool equals(const Scalar& o) const;  // a*d == c*b
  bool operator==(const Scalar& o) const { return equals(o); }
  bool operator!=(const Scalar& o) const { return !equals(o); }

  Rational eval(const std::map<GenId, Rational>& point) const;

  // divides num and den by their full polynomial gcd; costlier than the
  // default normalization, meant for algorithms whose fractions compound
  Scalar& reduce_full();

  std::string str() const;                       // "num ; den"
  static Scalar parse(const std::string& text);

 private:
  void normalize();
  void reduce_q_gcd();
  LaurentPoly num_, den_;
};

// gcd up to units (monomial factors are units in the Laurent ring); the
// result is content-free with leading coefficient 1.  Primitive PRS in the
// variable of smallest degree, recursing down to dense univariate gcd.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

// --- q-combinatorics ---------------------------------------------------------

// affine exponent c0 + c1 * a2_{var}; q^e = q^{c0} x_var^{c1}
struct AffineExp {
  long c0 = 0;
  int c1 = 0;
  int var = 1;
};

Scalar qpower(const AffineExp& e);
Scalar qbracket(const AffineExp& e);  // {e} = q^e - q^{-e}
Scalar qint(const AffineExp& e);      // [e] = {e}/{1}
inline Scalar qbracket(long n) { return qbracket(AffineExp{n, 0, 1}); }
inline Scalar qint(long n) { return qint(AffineExp{n, 0, 1}); }

Scalar qpochhammer(const Scalar& x, int k);       // (x;q)_k
Scalar qfactorial_paren(int n, int base_exp = 1); // (n)_{q^base_exp}!

// ring endomorphism realizing L_i on the continuous variables:
// x_i -> q x_i,  z_ii -> q x_i^2 z_ii,  z_ij -> x_j z_ij (j != i)
Scalar shift_var(int i, const Scalar& s);
LaurentPoly shift_var(int i, const LaurentPoly& p);

// specialize the continuous colors to integers: x_i -> q^{a2[i]} and
// z_ij -> q^{a2[i] * a2[j]} for every i, j listed in the map; generators
// whose index is not listed stay formal.  Throws std::domain_error when a
// scalar's denominator collapses to zero under the specialization.
LaurentPoly specialize_colors(const LaurentPoly& p, const std::map<int, long>& a2);
Scalar specialize_colors(const Scalar& s, const std::map<int, long>& a2);

}  // namespace sl21
