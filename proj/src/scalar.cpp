#include "sl21/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sl21 {

namespace {
constexpr GenId kXBase = 0x01000000u;
constexpr GenId kZBase = 0x02000000u;
}  // namespace

GenId gen_x(int i) {
  if (i < 1 || i > 255) throw std::invalid_argument("x index out of range");
  return kXBase | static_cast<GenId>(i);
}

GenId gen_z(int i, int j) {
  if (i < 1 || j < 1 || i > 255 || j > 255) throw std::invalid_argument("z index out of range");
  if (i > j) std::swap(i, j);
  return kZBase | (static_cast<GenId>(i) << 8) | static_cast<GenId>(j);
}

bool gen_is_q(GenId g) { return g == kGenQ; }
bool gen_is_x(GenId g) { return (g & 0xFF000000u) == kXBase; }
bool gen_is_z(GenId g) { return (g & 0xFF000000u) == kZBase; }

int gen_index1(GenId g) {
  if (gen_is_x(g)) return static_cast<int>(g & 0xFFu);
  if (gen_is_z(g)) return static_cast<int>((g >> 8) & 0xFFu);
  throw std::invalid_argument("generator has no index");
}

int gen_index2(GenId g) {
  if (gen_is_z(g)) return static_cast<int>(g & 0xFFu);
  throw std::invalid_argument("generator has no second index");
}

std::string gen_name(GenId g) {
  if (gen_is_q(g)) return "q";
  std::ostringstream os;
  if (gen_is_x(g)) {
    os << 'x' << gen_index1(g);
  } else {
    os << 'z' << gen_index1(g) << gen_index2(g);
  }
  return os.str();
}

// --- Monomial ----------------------------------------------------------------

Monomial Monomial::gen(GenId g, int e) {
  Monomial m;
  if (e != 0) m.exps.emplace_back(g, e);
  return m;
}

int Monomial::exponent(GenId g) const {
  for (const auto& [id, e] : exps)
    if (id == g) return e;
  return 0;
}

long Monomial::total_degree() const {
  long d = 0;
  for (const auto& [id, e] : exps) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.exps.reserve(exps.size() + o.exps.size());
  std::size_t i = 0, j = 0;
  while (i < exps.size() && j < o.exps.size()) {
    if (exps[i].first < o.exps[j].first) {
      r.exps.push_back(exps[i++]);
    } else if (exps[i].first > o.exps[j].first) {
      r.exps.push_back(o.exps[j++]);
    } else {
      int e = exps[i].second + o.exps[j].second;
      if (e != 0) r.exps.emplace_back(exps[i].first, e);
      ++i;
      ++j;
    }
  }
  while (i < exps.size()) r.exps.push_back(exps[i++]);
  while (j < o.exps.size()) r.exps.push_back(o.exps[j++]);
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto& [id, e] : r.exps) e = -e;
  return r;
}

Monomial Monomial::pow(int e) const {
  Monomial r;
  if (e == 0) return r;
  r = *this;
  for (auto& [id, ex] : r.exps) ex *= e;
  return r;
}

int mono_cmp(const Monomial& a, const Monomial& b) {
  long da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  // lex on the merged generator sequence; absent exponent counts as 0
  std::size_t i = 0, j = 0;
  while (i < a.exps.size() || j < b.exps.size()) {
    GenId ga = i < a.exps.size() ? a.exps[i].first : ~GenId(0);
    GenId gb = j < b.exps.size() ? b.exps[j].first : ~GenId(0);
    GenId g = std::min(ga, gb);
    int ea = (ga == g) ? a.exps[i++].second : 0;
    int eb = (gb == g) ? b.exps[j++].second : 0;
    if (ea != eb) return ea > eb ? 1 : -1;
  }
  return 0;
}

// --- LaurentPoly --------------------------------------------------------------

LaurentPoly LaurentPoly::constant(Rational c) {
  LaurentPoly p;
  if (c != 0) p.terms_.emplace(Monomial::one(), std::move(c));
  return p;
}

LaurentPoly LaurentPoly::term(Monomial m, Rational c) {
  LaurentPoly p;
  if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
  return p;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

void LaurentPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  LaurentPoly r = *this;
  for (auto& [m, cc] : r.terms_) cc *= c;
  return r;
}

LaurentPoly LaurentPoly::mono_times(const Monomial& m) const {
  LaurentPoly r;
  for (const auto& [mm, c] : terms_) r.terms_.emplace(mm * m, c);
  return r;
}

const std::pair<const Monomial, Rational>& LaurentPoly::leading() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

Monomial LaurentPoly::content() const {
  std::map<GenId, int> mins;
  bool first = true;
  std::vector<GenId> seen;
  for (const auto& [m, c] : terms_) {
    for (const auto& [g, e] : m.exps) {
      auto it = mins.find(g);
      if (it == mins.end()) {
        // absent in earlier terms means exponent 0 there
        mins.emplace(g, first ? e : std::min(e, 0));
      } else {
        it->second = std::min(it->second, e);
      }
    }
    for (auto& [g, mn] : mins)
      if (m.exponent(g) == 0) mn = std::min(mn, 0);
    first = false;
  }
  Monomial r;
  for (const auto& [g, e] : mins)
    if (e != 0) r.exps.emplace_back(g, e);
  return r;
}

LaurentPoly LaurentPoly::divexact(const LaurentPoly& b) const {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  LaurentPoly rem = *this;
  LaurentPoly quot;
  const auto& [lbm, lbc] = b.leading();
  Monomial lbm_inv = lbm.inverse();
  long guard = 0;
  while (!rem.is_zero()) {
    if (++guard > 2000000) throw std::domain_error("divexact: not divisible");
    const auto& [lam, lac] = rem.leading();
    Monomial qm = lam * lbm_inv;
    Rational qc = lac / lbc;
    quot.add_term(qm, qc);
    rem -= b.mono_times(qm).scaled(qc);
  }
  return quot;
}

Rational LaurentPoly::eval(const std::map<GenId, Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (const auto& [g, e] : m.exps) {
      auto it = point.find(g);
      if (it == point.end()) throw std::invalid_argument("eval: no value for " + gen_name(g));
      if (it->second == 0) throw std::invalid_argument("eval: zero value for " + gen_name(g));
      Rational base = it->second;
      int n = e;
      if (n < 0) {
        base = 1 / base;
        n = -n;
      }
      for (int k = 0; k < n; ++k) v *= base;
    }
    total += v;
  }
  return total;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool firstTerm = true;
  for (const auto& [m, c] : terms_) {
    if (!firstTerm) os << " + ";
    firstTerm = false;
    os << c.get_str();
    for (const auto& [g, e] : m.exps) os << " * " << gen_name(g) << '^' << e;
  }
  return os.str();
}

namespace {

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t nxt = s.find(sep, pos);
    if (nxt == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, nxt - pos));
    pos = nxt + sep.size();
  }
  return out;
}

GenId parse_gen(const std::string& name) {
  if (name == "q") return kGenQ;
  if (name.size() >= 2 && name[0] == 'x') return gen_x(std::stoi(name.substr(1)));
  if (name.size() == 3 && name[0] == 'z') return gen_z(name[1] - '0', name[2] - '0');
  throw std::invalid_argument("bad generator name: " + name);
}

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& text) {
  LaurentPoly p;
  std::string body = strip(text);
  if (body.empty() || body == "0") return p;
  for (const std::string& raw : split_on(body, " + ")) {
    std::string termtext = strip(raw);
    if (termtext.empty()) throw std::invalid_argument("empty term in polynomial text");
    std::vector<std::string> factors = split_on(termtext, "*");
    Rational coeff(strip(factors[0]));
    coeff.canonicalize();
    Monomial m;
    for (std::size_t i = 1; i < factors.size(); ++i) {
      std::string f = strip(factors[i]);
      std::size_t caret = f.find('^');
      if (caret == std::string::npos) throw std::invalid_argument("missing ^ in factor: " + f);
      GenId g = parse_gen(strip(f.substr(0, caret)));
      int e = std::stoi(strip(f.substr(caret + 1)));
      m = m * Monomial::gen(g, e);
    }
    p.add_term(m, coeff);
  }
  return p;
}

// --- Scalar --------------------------------------------------------------------

Scalar::Scalar(const Rational& v) : num_(LaurentPoly::constant(v)), den_(LaurentPoly::one()) {}

Scalar::Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

Scalar Scalar::generator(GenId g, int e) {
  return Scalar(LaurentPoly::term(Monomial::gen(g, e), 1));
}

namespace {

// dense univariate polynomials in q, c[0] the constant term, trailing zeros trimmed
using UniPoly = std::vector<Rational>;

void uni_trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// p must involve only q; returns coefficients after factoring out q^{min exp}
bool poly_to_uni(const LaurentPoly& p, UniPoly* out, int* shift) {
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (m.exps.size() > 1 || (m.exps.size() == 1 && m.exps[0].first != kGenQ)) return false;
    int e = m.exps.empty() ? 0 : m.exps[0].second;
    lo = first ? e : std::min(lo, e);
    hi = first ? e : std::max(hi, e);
    first = false;
  }
  out->assign(hi - lo + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    int e = m.exps.empty() ? 0 : m.exps[0].second;
    (*out)[e - lo] = c;
  }
  *shift = lo;
  return true;
}

void uni_make_monic(UniPoly& p) {
  if (p.empty() || p.back() == 1) return;
  Rational inv = 1 / p.back();
  for (Rational& c : p) c *= inv;
}

UniPoly uni_rem(UniPoly a, const UniPoly& b) {
  // b monic
  while (a.size() >= b.size()) {
    Rational f = a.back();
    std::size_t off = a.size() - b.size();
    if (f != 0)
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    uni_trim(a);
  }
  return a;
}

// integer primitive form: clear denominators, divide by integer content
using ZPoly = std::vector<mpz_class>;

ZPoly uni_primitive_z(const UniPoly& p) {
  mpz_class lcm = 1;
  for (const Rational& c : p)
    if (c != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly z(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational c = p[i] * lcm;
    z[i] = c.get_num();
  }
  mpz_class content = 0;
  for (const mpz_class& c : z)
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (content > 1)
    for (mpz_class& c : z) c /= content;
  return z;
}

void zpoly_trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void zpoly_make_primitive(ZPoly& p) {
  mpz_class content = 0;
  for (const mpz_class& c : p)
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (content > 1)
    for (mpz_class& c : p) c /= content;
}

// primitive PRS keeps the integer coefficients from exploding, unlike a
// monic remainder sequence over the rationals
UniPoly uni_gcd(UniPoly a0, UniPoly b0) {
  uni_trim(a0);
  uni_trim(b0);
  if (a0.empty() || b0.empty()) {
    UniPoly r = a0.empty() ? std::move(b0) : std::move(a0);
    uni_make_monic(r);
    return r;
  }
  ZPoly a = uni_primitive_z(a0), b = uni_primitive_z(b0);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // pseudo-remainder of a by b
    ZPoly r = a;
    const mpz_class& lb = b.back();
    while (r.size() >= b.size()) {
      mpz_class lr = r.back();
      std::size_t off = r.size() - b.size();
      for (mpz_class& c : r) c *= lb;
      for (std::size_t i = 0; i < b.size(); ++i) r[off + i] -= b[i] * lr;
      zpoly_trim(r);
    }
    zpoly_make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  UniPoly g(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) g[i] = Rational(a[i]);
  uni_make_monic(g);
  return g;
}

UniPoly uni_divexact(const UniPoly& a, const UniPoly& g) {
  // g monic, divides a
  UniPoly q(a.size() - g.size() + 1, Rational(0));
  UniPoly r = a;
  for (std::size_t i = q.size(); i-- > 0;) {
    Rational f = r[i + g.size() - 1];
    q[i] = f;
    if (f != 0)
      for (std::size_t k = 0; k < g.size(); ++k) r[i + k] -= f * g[k];
  }
  return q;
}

}  // namespace

void Scalar::normalize() {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPoly::one();
    return;
  }
  if (den_.is_one()) return;
  Monomial c = den_.content();
  if (!c.is_one()) {
    Monomial ci = c.inverse();
    den_ = den_.mono_times(ci);
    num_ = num_.mono_times(ci);
  }
  if (den_.term_count() > 1) reduce_q_gcd();
  const Rational lead = den_.leading().second;
  if (lead != 1) {
    Rational inv = 1 / lead;
    den_ = den_.scaled(inv);
    num_ = num_.scaled(inv);
  }
}

// denominators arising from the q-bracket formulas are univariate in q, so a
// univariate gcd keeps the fractions from compounding
void Scalar::reduce_q_gcd() {
  UniPoly dpoly;
  int dshift = 0;
  if (!poly_to_uni(den_, &dpoly, &dshift)) return;

  // group the numerator by the q-free part of each monomial
  std::map<Monomial, std::map<int, Rational>, MonoLess> groups;
  for (const auto& [m, coef] : num_.terms()) {
    Monomial rest;
    int qe = 0;
    for (const auto& [g, e] : m.exps) {
      if (g == kGenQ) {
        qe = e;
      } else {
        rest.exps.emplace_back(g, e);
      }
    }
    groups[rest][qe] = coef;
  }

  UniPoly g = dpoly;
  uni_make_monic(g);
  std::vector<std::pair<int, UniPoly>> unis;  // (min q-exp, coeffs) per group
  unis.reserve(groups.size());
  for (const auto& [rest, qcoeffs] : groups) {
    int lo = qcoeffs.begin()->first;
    int hi = qcoeffs.rbegin()->first;
    UniPoly u(hi - lo + 1, Rational(0));
    for (const auto& [e, coef] : qcoeffs) u[e - lo] = coef;
    unis.emplace_back(lo, u);
    g = uni_gcd(std::move(g), u);
    if (g.size() <= 1) return;
  }

  LaurentPoly newnum, newden;
  UniPoly dq = uni_divexact(dpoly, g);
  for (std::size_t i = 0; i < dq.size(); ++i)
    if (dq[i] != 0)
      newden.add_term(Monomial::gen(kGenQ, dshift + static_cast<int>(i)), dq[i]);
  std::size_t gi = 0;
  for (const auto& [rest, qcoeffs] : groups) {
    const auto& [lo, u] = unis[gi++];
    UniPoly nq = uni_divexact(u, g);
    for (std::size_t i = 0; i < nq.size(); ++i)
      if (nq[i] != 0)
        newnum.add_term(rest * Monomial::gen(kGenQ, lo + static_cast<int>(i)), nq[i]);
  }
  num_ = std::move(newnum);
  den_ = std::move(newden);

  Monomial c = den_.content();
  if (!c.is_one()) {
    Monomial ci = c.inverse();
    den_ = den_.mono_times(ci);
    num_ = num_.mono_times(ci);
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  if (den_ == o.den_) return Scalar(num_ - o.num_, den_);
  return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (num_.is_zero() || o.num_.is_zero()) return Scalar();
  return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.num_.is_zero()) throw std::domain_error("division by zero scalar");
  if (num_.is_zero()) return Scalar();
  return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero scalar");
  return Scalar(den_, num_);
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool Scalar::equals(const Scalar& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

Rational Scalar::eval(const std::map<GenId, Rational>& point) const {
  Rational d = den_.eval(point);
  if (d == 0) throw EvalDenominatorZero();
  return num_.eval(point) / d;
}

std::string Scalar::str() const { return num_.str() + " ; " + den_.str(); }

Scalar Scalar::parse(const std::string& text) {
  std::vector<std::string> parts = split_on(text, ";");
  if (parts.size() == 1) return Scalar(LaurentPoly::parse(parts[0]));
  if (parts.size() != 2) throw std::invalid_argument("scalar text needs one ';'");
  return Scalar(LaurentPoly::parse(parts[0]), LaurentPoly::parse(parts[1]));
}

// --- q-combinatorics -------------------------------------------------------------

Scalar qpower(const AffineExp& e) {
  Monomial m = Monomial::gen(kGenQ, static_cast<int>(e.c0));
  if (e.c1 != 0) m = m * Monomial::gen(gen_x(e.var), e.c1);
  return Scalar(LaurentPoly::term(m, 1));
}

Scalar qbracket(const AffineExp& e) {
  AffineExp neg{-e.c0, -e.c1, e.var};
  return qpower(e) - qpower(neg);
}

Scalar qint(const AffineExp& e) { return qbracket(e) / qbracket(1); }

Scalar qpochhammer(const Scalar& x, int k) {
  if (k < 0) throw std::invalid_argument("qpochhammer: negative length");
  Scalar r(1);
  for (int j = 0; j < k; ++j) r *= Scalar(1) - x * qpower(AffineExp{j, 0, 1});
  return r;
}

Scalar qfactorial_paren(int n, int base_exp) {
  if (n < 0) throw std::invalid_argument("qfactorial: negative n");
  Scalar r(1);
  Scalar one(1);
  Scalar denom = one - qpower(AffineExp{base_exp, 0, 1});
  for (int k = 1; k <= n; ++k) {
    r *= (one - qpower(AffineExp{static_cast<long>(base_exp) * k, 0, 1})) / denom;
  }
  return r;
}

LaurentPoly shift_var(int i, const LaurentPoly& p) {
  LaurentPoly r;
  for (const auto& [m, c] : p.terms()) {
    Monomial out = m;
    int dq = 0;
    std::map<GenId, int> dx;
    for (const auto& [g, e] : m.exps) {
      if (gen_is_x(g)) {
        if (gen_index1(g) == i) dq += e;
      } else if (gen_is_z(g)) {
        int a = gen_index1(g), b = gen_index2(g);
        if (a == i && b == i) {
          dq += e;
          dx[gen_x(i)] += 2 * e;
        } else if (a == i) {
          dx[gen_x(b)] += e;
        } else if (b == i) {
          dx[gen_x(a)] += e;
        }
      }
    }
    if (dq != 0) out = out * Monomial::gen(kGenQ, dq);
    for (const auto& [g, e] : dx)
      if (e != 0) out = out * Monomial::gen(g, e);
    r.add_term(out, c);
  }
  return r;
}

// --- multivariate gcd ---------------------------------------------------------

namespace {

// dense univariate view in an arbitrary generator; assumes exponents >= 0
bool poly_to_uni_var(const LaurentPoly& p, GenId v, UniPoly* out) {
  int hi = 0;
  for (const auto& [m, c] : p.terms()) {
    if (m.exps.size() > 1 || (m.exps.size() == 1 && m.exps[0].first != v))
      return false;
    int e = m.exps.empty() ? 0 : m.exps[0].second;
    if (e < 0) return false;
    hi = std::max(hi, e);
  }
  out->assign(hi + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    int e = m.exps.empty() ? 0 : m.exps[0].second;
    (*out)[e] = c;
  }
  return true;
}

LaurentPoly uni_to_poly_var(const UniPoly& u, GenId v) {
  LaurentPoly p;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) p.add_term(Monomial::gen(v, static_cast<int>(i)), u[i]);
  return p;
}

int poly_deg_in(const LaurentPoly& p, GenId v) {
  int d = 0;
  for (const auto& [m, c] : p.terms()) d = std::max(d, m.exponent(v));
  return d;
}

// coefficient of v^k with the v-power stripped
LaurentPoly coeff_of(const LaurentPoly& p, GenId v, int k) {
  LaurentPoly r;
  for (const auto& [m, c] : p.terms()) {
    if (m.exponent(v) != k) continue;
    Monomial m2;
    for (const auto& [g, e] : m.exps)
      if (g != v) m2.exps.emplace_back(g, e);
    r.add_term(m2, c);
  }
  return r;
}

LaurentPoly scale_leading_one(LaurentPoly p) {
  if (p.is_zero()) return p;
  const Rational lead = p.leading().second;
  if (lead == 1) return p;
  return p.scaled(1 / lead);
}

// coefficient vector by v-degree, index 0 the constant coefficient
std::vector<LaurentPoly> to_coeffs(const LaurentPoly& p, GenId v) {
  std::vector<LaurentPoly> c(poly_deg_in(p, v) + 1);
  for (const auto& [m, coef] : p.terms()) {
    Monomial m2;
    int k = 0;
    for (const auto& [g, e] : m.exps) {
      if (g == v) k = e;
      else m2.exps.emplace_back(g, e);
    }
    c[k].add_term(m2, coef);
  }
  return c;
}

LaurentPoly from_coeffs(const std::vector<LaurentPoly>& c, GenId v) {
  LaurentPoly p;
  for (std::size_t k = 0; k < c.size(); ++k)
    p += c[k].mono_times(Monomial::gen(v, static_cast<int>(k)));
  return p;
}

void vec_trim(std::vector<LaurentPoly>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a0, const LaurentPoly& b0) {
  if (a0.is_zero()) return scale_leading_one(b0.mono_times(b0.is_zero() ? Monomial::one() : b0.content().inverse()));
  if (b0.is_zero()) return scale_leading_one(a0.mono_times(a0.content().inverse()));

  LaurentPoly a = a0.mono_times(a0.content().inverse());
  LaurentPoly b = b0.mono_times(b0.content().inverse());

  std::vector<GenId> vars;
  for (const LaurentPoly* p : {&a, &b})
    for (const auto& [m, c] : p->terms())
      for (const auto& [g, e] : m.exps)
        if (std::find(vars.begin(), vars.end(), g) == vars.end())
          vars.push_back(g);
  if (vars.empty()) return LaurentPoly::one();

  if (vars.size() == 1) {
    UniPoly ua, ub;
    if (poly_to_uni_var(a, vars[0], &ua) && poly_to_uni_var(b, vars[0], &ub))
      return uni_to_poly_var(uni_gcd(std::move(ua), std::move(ub)), vars[0]);
  }

  // main variable: smallest degree keeps the pseudo-remainder loop short
  GenId v = vars[0];
  int best = std::max(poly_deg_in(a, v), poly_deg_in(b, v));
  for (std::size_t i = 1; i < vars.size(); ++i) {
    int d = std::max(poly_deg_in(a, vars[i]), poly_deg_in(b, vars[i]));
    if (d < best) { best = d; v = vars[i]; }
  }

  auto content_v = [&](const std::vector<LaurentPoly>& c) {
    LaurentPoly g;
    for (const auto& e : c)
      if (!e.is_zero()) {
        g = g.is_zero() ? e : poly_gcd(g, e);
        if (g.is_one()) break;
      }
    return scale_leading_one(g.mono_times(g.content().inverse()));
  };

  std::vector<LaurentPoly> A = to_coeffs(a, v), B = to_coeffs(b, v);
  LaurentPoly ca = content_v(A), cb = content_v(B);
  LaurentPoly cg = poly_gcd(ca, cb);
  if (!ca.is_one())
    for (auto& e : A) if (!e.is_zero()) e = e.divexact(ca);
  if (!cb.is_one())
    for (auto& e : B) if (!e.is_zero()) e = e.divexact(cb);

  if (A.size() < B.size()) std::swap(A, B);
  for (;;) {
    // primitive PRS step: pseudo-remainder of A by B, then strip content
    std::vector<LaurentPoly> R = A;
    vec_trim(R);
    const LaurentPoly& lb = B.back();
    while (R.size() >= B.size()) {
      LaurentPoly lr = R.back();
      std::size_t off = R.size() - B.size();
      for (auto& e : R) if (!e.is_zero()) e = e * lb;
      for (std::size_t i = 0; i < B.size(); ++i) R[off + i] -= B[i] * lr;
      vec_trim(R);
    }
    if (R.empty()) {
      LaurentPoly g = from_coeffs(B, v);
      return scale_leading_one(cg * g);
    }
    LaurentPoly cr = content_v(R);
    if (!cr.is_one())
      for (auto& e : R) if (!e.is_zero()) e = e.divexact(cr);
    // re-normalize the monomial and rational scale of the whole remainder
    LaurentPoly flat = from_coeffs(R, v);
    flat = scale_leading_one(flat.mono_times(flat.content().inverse()));
    A = std::move(B);
    B = to_coeffs(flat, v);
    if (B.size() == 1) return cg;  // coprime apart from the content gcd
  }
}

Scalar& Scalar::reduce_full() {
  if (num_.is_zero() || den_.is_one()) return *this;
  LaurentPoly g = poly_gcd(num_, den_);
  if (!g.is_one() && g.term_count() > 1) {
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
    normalize();
  }
  return *this;
}

Scalar shift_var(int i, const Scalar& s) {
  return Scalar(shift_var(i, s.num()), shift_var(i, s.den()));
}

LaurentPoly specialize_colors(const LaurentPoly& p, const std::map<int, long>& a2) {
  LaurentPoly r;
  for (const auto& [m, c] : p.terms()) {
    long dq = 0;
    Monomial out = Monomial::one();
    for (const auto& [g, e] : m.exps) {
      if (gen_is_x(g)) {
        auto it = a2.find(gen_index1(g));
        if (it != a2.end()) { dq += it->second * e; continue; }
      } else if (gen_is_z(g)) {
        auto it = a2.find(gen_index1(g));
        auto jt = a2.find(gen_index2(g));
        if (it != a2.end() && jt != a2.end()) {
          dq += it->second * jt->second * e;
          continue;
        }
      }
      out = out * Monomial::gen(g, e);
    }
    r.add_term(out * Monomial::gen(kGenQ, static_cast<int>(dq)), c);
  }
  return r;
}

Scalar specialize_colors(const Scalar& s, const std::map<int, long>& a2) {
  LaurentPoly den = specialize_colors(s.den(), a2);
  if (den.is_zero())
    throw std::domain_error("denominator vanishes under color specialization");
  return Scalar(specialize_colors(s.num(), a2), den);
}

}  // namespace sl21
