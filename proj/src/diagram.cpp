#include "sl21/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace sl21 {

BraidWord parse_braid(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("missing ':' after strand count");
  BraidWord w;
  try {
    std::size_t used = 0;
    w.n = std::stoi(text.substr(0, colon), &used);
    while (used < colon)
      if (!std::isspace(static_cast<unsigned char>(text[used++])))
        throw ParseError("bad strand count");
  } catch (const std::exception&) {
    throw ParseError("bad strand count: '" + text.substr(0, colon) + "'");
  }
  if (w.n < 1) throw ParseError("strand count must be >= 1");
  std::istringstream is(text.substr(colon + 1));
  std::string tok;
  int pos = 0;
  while (is >> tok) {
    ++pos;
    if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'S'))
      throw ParseError("unknown token '" + tok + "' at letter " + std::to_string(pos));
    int idx;
    try {
      idx = std::stoi(tok.substr(1));
    } catch (const std::exception&) {
      throw ParseError("bad index in '" + tok + "' at letter " + std::to_string(pos));
    }
    if (idx < 1 || idx >= w.n)
      throw ParseError("index out of range in '" + tok + "' at letter " + std::to_string(pos));
    w.letters.push_back(tok[0] == 's' ? idx : -idx);
  }
  return w;
}

namespace {

// final position of the strand starting at each bottom position (1-based)
std::vector<int> closure_permutation(const BraidWord& braid) {
  std::vector<int> pos(braid.n + 1), strand_at(braid.n + 1);
  for (int b = 1; b <= braid.n; ++b) pos[b] = strand_at[b] = b;
  for (int letter : braid.letters) {
    int j = letter > 0 ? letter : -letter;
    int b1 = strand_at[j], b2 = strand_at[j + 1];
    std::swap(pos[b1], pos[b2]);
    std::swap(strand_at[j], strand_at[j + 1]);
  }
  return pos;
}

}  // namespace

std::vector<std::vector<int>> components(const BraidWord& braid) {
  std::vector<int> pi = closure_permutation(braid);
  std::vector<bool> seen(braid.n + 1, false);
  std::vector<std::vector<int>> comps;
  for (int b = 1; b <= braid.n; ++b) {
    if (seen[b]) continue;
    std::vector<int> cyc;
    int c = b;
    while (!seen[c]) {
      seen[c] = true;
      cyc.push_back(c);
      c = pi[c];
    }
    std::sort(cyc.begin(), cyc.end());
    comps.push_back(std::move(cyc));
  }
  return comps;
}

SlicedTangle close_and_cut(const ColoredLink& link, int cut_component, int cut_position) {
  auto comps = components(link.braid);
  if (cut_component < 0 || cut_component >= static_cast<int>(comps.size()))
    throw std::invalid_argument("no such component");
  if (comps.size() != link.colors.size())
    throw std::invalid_argument("coloring does not match component count");
  const auto& cyc = comps[cut_component];
  int p = cut_position < 0 ? cyc.front() : cut_position;
  if (std::find(cyc.begin(), cyc.end(), p) == cyc.end())
    throw std::invalid_argument("cut position not on the cut component");

  std::vector<int> comp_of(link.braid.n + 1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int b : comps[c]) comp_of[b] = static_cast<int>(c);
  auto color_of = [&](int position) { return link.colors[comp_of[position]]; };

  SlicedTangle t;
  t.boundary = color_of(p);
  int n = link.braid.n;
  // right-routed arcs, outermost (position p+1) first
  for (int i = p + 1; i <= n; ++i)
    t.slices.push_back({Slice::CoevR, i - p, color_of(i)});
  // left-routed arcs, outermost (position p-1) first
  for (int i = p - 1; i >= 1; --i)
    t.slices.push_back({Slice::CoevL, p - 1 - i, color_of(i)});
  // braid letters, position j lives at register slot p+j-2
  for (int letter : link.braid.letters) {
    int j = letter > 0 ? letter : -letter;
    t.slices.push_back({letter > 0 ? Slice::Crossing : Slice::CrossingInv, p + j - 2, {}});
  }
  // caps: left arcs innermost (1) first, then right arcs innermost (n) first
  for (int i = 1; i <= p - 1; ++i)
    t.slices.push_back({Slice::EvR, p - i - 1, color_of(i)});
  for (int i = n; i >= p + 1; --i)
    t.slices.push_back({Slice::EvL, i - p, color_of(i)});
  return t;
}

const TypicalModule& RibbonCache::module(TypicalColor c) {
  auto key = std::make_pair(c.a1, c.var);
  auto it = modules_.find(key);
  if (it == modules_.end()) it = modules_.emplace(key, TypicalModule(c)).first;
  return it->second;
}

const GradedMatrix& RibbonCache::braid_pos(TypicalColor a, TypicalColor b) {
  auto key = std::make_tuple(a.a1, a.var, b.a1, b.var, +1);
  auto it = crossings_.find(key);
  if (it == crossings_.end())
    it = crossings_.emplace(key, braiding(module(a), module(b))).first;
  return it->second;
}

const GradedMatrix& RibbonCache::braid_neg(TypicalColor a, TypicalColor b) {
  auto key = std::make_tuple(a.a1, a.var, b.a1, b.var, -1);
  auto it = crossings_.find(key);
  if (it == crossings_.end())
    it = crossings_.emplace(key, braiding_inv(module(b), module(a))).first;
  return it->second;
}

const DualityMaps& RibbonCache::duality(TypicalColor c) {
  auto key = std::make_pair(c.a1, c.var);
  auto it = dualities_.find(key);
  if (it == dualities_.end()) it = dualities_.emplace(key, duality_maps(module(c))).first;
  return it->second;
}

namespace {

using StateCol = std::map<long, Scalar>;

struct EventSpec {
  const GradedMatrix* matrix;
  int consumed;  // input factors
  std::vector<TensorFactor> produced;
};

long factor_dim(const TensorFactor& f) { return 4L * f.color.a1 + 4; }

void apply_event(std::vector<StateCol>& state, std::vector<TensorFactor>& factors, int slot,
                 const EventSpec& ev) {
  if (slot < 0 || slot + ev.consumed > static_cast<int>(factors.size()))
    throw std::logic_error("slice event out of register range");
  long left = 1, mid_in = 1, right = 1;
  for (int i = 0; i < slot; ++i) left *= factor_dim(factors[i]);
  for (int i = slot; i < slot + ev.consumed; ++i) mid_in *= factor_dim(factors[i]);
  for (int i = slot + ev.consumed; i < static_cast<int>(factors.size()); ++i)
    right *= factor_dim(factors[i]);
  const GradedMatrix& M = *ev.matrix;
  if (M.cols() != mid_in) throw std::logic_error("event matrix does not match register");
  long mid_out = M.rows();

  for (StateCol& col : state) {
    StateCol out;
    for (const auto& [r, v] : col) {
      long l = r / (mid_in * right);
      long rem = r % (mid_in * right);
      long m = rem / right;
      long rr = rem % right;
      for (const auto& [m2, val] : M.column(static_cast<int>(m))) {
        long key = l * (mid_out * right) + m2 * right + rr;
        auto [it, fresh] = out.try_emplace(key, Scalar());
        it->second += v * val;
      }
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    col = std::move(out);
  }
  factors.erase(factors.begin() + slot, factors.begin() + slot + ev.consumed);
  factors.insert(factors.begin() + slot, ev.produced.begin(), ev.produced.end());
}

}  // namespace

GradedMatrix evaluate(const SlicedTangle& tangle, RibbonCache& cache,
                      const std::vector<int>& columns) {
  const TypicalModule& V = cache.module(tangle.boundary);
  int m = V.dim();
  std::vector<int> tracked = columns;
  if (tracked.empty())
    for (int j = 0; j < m; ++j) tracked.push_back(j);

  std::vector<TensorFactor> factors{{tangle.boundary, false}};
  std::vector<StateCol> state(tracked.size());
  for (std::size_t j = 0; j < tracked.size(); ++j) state[j][tracked[j]] = Scalar(1);

  for (const Slice& s : tangle.slices) {
    EventSpec ev;
    switch (s.kind) {
      case Slice::CoevR:
        ev = {&cache.duality(s.color).coev_r, 0,
              {{s.color, false}, {s.color, true}}};
        break;
      case Slice::CoevL:
        ev = {&cache.duality(s.color).coev_l, 0,
              {{s.color, true}, {s.color, false}}};
        break;
      case Slice::EvR: {
        if (!factors[s.slot].dual || factors[s.slot + 1].dual)
          throw std::logic_error("ev_r expects V* (x) V");
        ev = {&cache.duality(s.color).ev_r, 2, {}};
        break;
      }
      case Slice::EvL: {
        if (factors[s.slot].dual || !factors[s.slot + 1].dual)
          throw std::logic_error("ev_l expects V (x) V*");
        ev = {&cache.duality(s.color).ev_l, 2, {}};
        break;
      }
      case Slice::Crossing: {
        TypicalColor a = factors[s.slot].color, b = factors[s.slot + 1].color;
        if (factors[s.slot].dual || factors[s.slot + 1].dual)
          throw std::logic_error("crossings act on upward strands only");
        ev = {&cache.braid_pos(a, b), 2, {{b, false}, {a, false}}};
        break;
      }
      case Slice::CrossingInv: {
        TypicalColor a = factors[s.slot].color, b = factors[s.slot + 1].color;
        if (factors[s.slot].dual || factors[s.slot + 1].dual)
          throw std::logic_error("crossings act on upward strands only");
        ev = {&cache.braid_neg(a, b), 2, {{b, false}, {a, false}}};
        break;
      }
    }
    apply_event(state, factors, s.slot, ev);
  }
  if (factors.size() != 1 || factors[0].dual || !(factors[0].color == tangle.boundary))
    throw std::logic_error("tangle does not close to the boundary color");

  GradedMatrix out(V.parity(), V.parity());
  for (std::size_t j = 0; j < tracked.size(); ++j)
    for (const auto& [r, v] : state[j]) out.set(static_cast<int>(r), tracked[j], v);
  return out;
}

Scalar scalar_of_endo(const GradedMatrix& M) {
  Scalar s;
  if (!M.scalar_multiple_of_identity(&s))
    throw std::runtime_error("tangle endomorphism is not a scalar multiple of the identity");
  return s;
}

InvariantResult invariant(const ColoredLink& link, int cut_component, RibbonCache& cache,
                          bool full_check, int cut_position, int probe_column) {
  auto comps = components(link.braid);
  std::vector<int> comp_of(link.braid.n + 1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int b : comps[c]) comp_of[b] = static_cast<int>(c);

  InvariantResult res;
  res.self_writhe.assign(comps.size(), 0);
  {
    std::vector<int> strand_at(link.braid.n + 1);
    for (int b = 1; b <= link.braid.n; ++b) strand_at[b] = b;
    for (int letter : link.braid.letters) {
      int j = letter > 0 ? letter : -letter;
      int sign = letter > 0 ? 1 : -1;
      res.writhe += sign;
      if (comp_of[strand_at[j]] == comp_of[strand_at[j + 1]])
        res.self_writhe[comp_of[strand_at[j]]] += sign;
      std::swap(strand_at[j], strand_at[j + 1]);
    }
  }

  SlicedTangle tangle = close_and_cut(link, cut_component, cut_position);
  int dim = 4 * tangle.boundary.a1 + 4;
  if (full_check) {
    res.bracket = scalar_of_endo(evaluate(tangle, cache));
  } else {
    int probe = probe_column;
    if (probe <= 0 || probe >= dim) probe = dim / 2;
    GradedMatrix M = evaluate(tangle, cache, {0, probe});
    Scalar diag = M.at(0, 0);
    for (int j : {0, probe})
      for (const auto& [i, v] : M.column(j)) {
        if (i != j) throw std::runtime_error("probe column has off-diagonal entry");
        if (v != diag) throw std::runtime_error("probe diagonal entries disagree");
      }
    res.bracket = diag;
  }

  res.mod_dim = modified_dim(link.colors[cut_component]);
  res.fprime = res.mod_dim * res.bracket;
  res.normalized = res.fprime;
  for (std::size_t c = 0; c < comps.size(); ++c)
    res.normalized *= twist_scalar(link.colors[c]).pow(static_cast<int>(-res.self_writhe[c]));
  return res;
}

}  // namespace sl21
