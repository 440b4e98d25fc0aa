#include "cosupp/groebner.hpp"
#include <set>

#include <algorithm>
#include <sstream>

namespace cosupp {

namespace {
thread_local StepBudget g_budget;
}

StepBudget& step_budget() { return g_budget; }

void reset_step_budget(long steps) { g_budget.remaining = steps; }

void StepBudget::spend(long n) {
  remaining -= n;
  if (remaining < 0)
    throw resource_limit_error("reduction step budget exhausted");
}

Poly poly_normal_form(const Poly& f, const std::vector<Poly>& basis,
                      const MonomialOrder& order) {
  for (const auto& g : basis) {
    require_same_ring(f, g);
    if (g.is_zero()) throw error("zero divisor polynomial in basis");
  }
  if (basis.empty()) return f;

  std::vector<std::pair<Monomial, Rat>> lts;
  lts.reserve(basis.size());
  for (const auto& g : basis) lts.push_back(g.leading_term(order));

  Poly h = f;
  Poly r = Poly::zero(f.ring());
  while (!h.is_zero()) {
    step_budget().spend();
    auto [m, c] = h.leading_term(order);
    bool reduced = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      if (monomial_divides(lts[i].first, m)) {
        Monomial q = monomial_quotient(m, lts[i].first);
        h = h - basis[i].times_term(q, c / lts[i].second);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      r.add_term(m, c);
      h.add_term(m, -c);
    }
  }
  return r;
}

namespace {

Poly s_poly(const Poly& f, const Poly& g, const MonomialOrder& order) {
  auto [mf, cf] = f.leading_term(order);
  auto [mg, cg] = g.leading_term(order);
  Monomial l = monomial_lcm(mf, mg);
  return f.times_term(monomial_quotient(l, mf), Rat(1) / cf) -
         g.times_term(monomial_quotient(l, mg), Rat(1) / cg);
}

bool coprime_lts(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

std::vector<Poly> reduced_basis(std::vector<Poly> basis,
                                const MonomialOrder& order) {
  // Drop elements whose leading term is divisible by another's, then fully
  // reduce each against the rest and make monic.
  std::vector<Poly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero()) continue;
    auto lti = basis[i].leading_term(order).first;
    bool redundant = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j || basis[j].is_zero()) continue;
      auto ltj = basis[j].leading_term(order).first;
      if (monomial_divides(ltj, lti) && (ltj != lti || j < i)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Poly> out;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> rest;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) rest.push_back(minimal[j]);
    Poly r = rest.empty() ? minimal[i]
                          : poly_normal_form(minimal[i], rest, order);
    if (!r.is_zero()) out.push_back(r.monic(order));
  }
  std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) {
    return order.compare(a.leading_term(order).first,
                         b.leading_term(order).first) < 0;
  });
  return out;
}

std::vector<Poly> buchberger_basis(const RingRef& ring,
                                   const std::vector<Poly>& gens,
                                   const MonomialOrder& order) {
  std::vector<Poly> basis;
  for (const auto& g : gens)
    if (!g.is_zero()) basis.push_back(g);
  if (basis.empty()) return {};

  std::vector<Monomial> lts;
  for (const auto& f : basis) lts.push_back(f.leading_term(order).first);

  // Normal selection strategy: process pairs by ascending lcm.
  struct Pair {
    Monomial lcm;
    size_t i, j;
  };
  auto later = [&order](const Pair& a, const Pair& b) {
    return order.compare(a.lcm, b.lcm) > 0;
  };
  std::vector<Pair> queue;
  std::set<std::pair<size_t, size_t>> pending;

  auto push_pair = [&](size_t i, size_t j) {
    queue.push_back({monomial_lcm(lts[i], lts[j]), i, j});
    std::push_heap(queue.begin(), queue.end(), later);
    pending.emplace(i, j);
  };

  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) push_pair(i, j);

  while (!queue.empty()) {
    step_budget().spend();
    std::pop_heap(queue.begin(), queue.end(), later);
    Pair top = std::move(queue.back());
    queue.pop_back();
    size_t i = top.i, j = top.j;
    pending.erase({i, j});

    if (coprime_lts(lts[i], lts[j])) continue;  // product criterion

    // Chain criterion: skip when some k has LT dividing the lcm and both
    // pairs with k were already handled.
    bool chained = false;
    for (size_t k = 0; k < basis.size() && !chained; ++k) {
      if (k == i || k == j) continue;
      if (!monomial_divides(lts[k], top.lcm)) continue;
      auto done = [&](size_t a, size_t b) {
        if (a > b) std::swap(a, b);
        return pending.find({a, b}) == pending.end();
      };
      if (done(i, k) && done(j, k)) chained = true;
    }
    if (chained) continue;

    Poly s = poly_normal_form(s_poly(basis[i], basis[j], order), basis, order);
    if (s.is_zero()) continue;
    basis.push_back(s);
    lts.push_back(s.leading_term(order).first);
    for (size_t k = 0; k + 1 < basis.size(); ++k)
      push_pair(k, basis.size() - 1);
  }
  return reduced_basis(std::move(basis), order);
}

}  // namespace

Ideal::Ideal(RingRef ring, std::vector<Poly> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)) {
  for (const auto& g : gens_) {
    if (!(g.ring() == ring_ || *g.ring() == *ring_))
      throw error("generator outside ambient ring");
  }
}

const std::vector<Poly>& Ideal::groebner_basis(
    const MonomialOrder& order) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto key = order.key();
  auto it = cache_->bases.find(key);
  if (it != cache_->bases.end()) return it->second;
  auto basis = buchberger_basis(ring_, gens_, order);
  if (!cache_->unit.has_value()) {
    cache_->unit = basis.size() == 1 && basis[0].is_constant() &&
                   !basis[0].is_zero();
  }
  return cache_->bases.emplace(key, std::move(basis)).first->second;
}

bool Ideal::is_zero() const {
  for (const auto& g : gens_)
    if (!g.is_zero()) return false;
  return true;
}

Tri Ideal::is_unit() const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->unit.has_value()) return Tri::of(*cache_->unit);
  }
  return Tri::unknown("no Groebner basis computed yet");
}

bool Ideal::contains(const Poly& f, const MonomialOrder& order) const {
  if (f.is_zero()) return true;
  Poly g = f.ring() == ring_ || *f.ring() == *ring_ ? f : f.mapped_to(ring_);
  return poly_normal_form(g, groebner_basis(order), order).is_zero();
}

bool Ideal::contains(const Ideal& other) const {
  for (const auto& g : other.gens_)
    if (!contains(g)) return false;
  return true;
}

bool Ideal::equals(const Ideal& other) const {
  return contains(other) && other.contains(*this);
}

std::string Ideal::str() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& g : groebner_basis()) {
    if (!first) os << ", ";
    first = false;
    os << g.str();
  }
  if (first) os << "0";
  os << ")";
  return os.str();
}

Ideal buchberger(RingRef ring, std::vector<Poly> gens,
                 const MonomialOrder& order) {
  Ideal ideal(std::move(ring), std::move(gens));
  ideal.groebner_basis(order);
  return ideal;
}

namespace {

// Embed the generators of two ideals in an extended ring with a fresh
// auxiliary variable prepended.
RingRef extend_with_aux(const RingRef& ring, const std::string& aux) {
  std::vector<std::string> vars;
  vars.push_back(aux);
  vars.insert(vars.end(), ring->vars.begin(), ring->vars.end());
  return make_ring(ring->characteristic, vars);
}

std::string fresh_aux(const RingRef& ring) {
  std::string aux = "@t";
  while (ring->var_index(aux) >= 0) aux += "@";
  return aux;
}

}  // namespace

Ideal ideal_arith(IdealOp op, const Ideal& a, const Ideal& b) {
  if (!(*a.ring() == *b.ring())) throw error("ambient ring mismatch");
  switch (op) {
    case IdealOp::Sum: {
      std::vector<Poly> gens = a.gens();
      gens.insert(gens.end(), b.gens().begin(), b.gens().end());
      return Ideal(a.ring(), std::move(gens));
    }
    case IdealOp::Product: {
      std::vector<Poly> gens;
      for (const auto& f : a.gens())
        for (const auto& g : b.gens()) gens.push_back(f * g);
      return Ideal(a.ring(), std::move(gens));
    }
    case IdealOp::Intersection: {
      // eliminate t from t*I + (1-t)*J
      std::string aux = fresh_aux(a.ring());
      RingRef ext = extend_with_aux(a.ring(), aux);
      Poly t = Poly::variable(ext, aux);
      Poly one_minus_t = Poly::constant(ext, 1) - t;
      std::vector<Poly> gens;
      for (const auto& f : a.gens()) gens.push_back(t * f.mapped_to(ext));
      for (const auto& g : b.gens())
        gens.push_back(one_minus_t * g.mapped_to(ext));
      Ideal big(ext, std::move(gens));
      Ideal elim = eliminate(big, {aux});
      std::vector<Poly> back;
      for (const auto& g : elim.gens()) back.push_back(g.mapped_to(a.ring()));
      return Ideal(a.ring(), std::move(back));
    }
  }
  throw error("unreachable");
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop_vars) {
  if (drop_vars.empty()) return ideal;
  const RingRef& ring = ideal.ring();
  std::vector<int> dropped;
  std::vector<char> mask(ring->vars.size(), 0);
  for (const auto& v : drop_vars) {
    int i = ring->var_index(v);
    if (i < 0) throw error("eliminate: unknown variable " + v);
    dropped.push_back(i);
    mask[static_cast<size_t>(i)] = 1;
  }
  MonomialOrder order =
      MonomialOrder::elimination(ring->vars.size(), dropped);
  std::vector<std::string> kept;
  for (size_t i = 0; i < ring->vars.size(); ++i)
    if (!mask[i]) kept.push_back(ring->vars[i]);
  RingRef sub = make_ring(ring->characteristic, kept);
  std::vector<Poly> gens;
  for (const auto& g : ideal.groebner_basis(order)) {
    if (g.avoids_vars(mask)) gens.push_back(g.mapped_to(sub));
  }
  return Ideal(sub, std::move(gens));
}

int krull_dim(const Ideal& ideal) {
  const RingRef& ring = ideal.ring();
  const auto& gb = ideal.groebner_basis();
  if (gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero())
    throw error("empty spectrum: unit ideal has no Krull dimension");
  size_t n = ring->vars.size();
  std::vector<Monomial> lts;
  MonomialOrder order = MonomialOrder::grevlex();
  for (const auto& g : gb) lts.push_back(g.leading_term(order).first);

  // A variable subset S is independent iff no leading monomial is supported
  // entirely inside S; dim = max |S| over independent subsets.
  int best = 0;
  for (unsigned long sub = 0; sub < (1ul << n); ++sub) {
    int size = __builtin_popcountl(sub);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& m : lts) {
      bool inside = true;
      for (size_t i = 0; i < n && inside; ++i)
        if (m[i] > 0 && !(sub >> i & 1)) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

bool radical_member(const Poly& f, const Ideal& ideal) {
  if (f.is_zero()) return true;
  std::string aux = fresh_aux(ideal.ring());
  RingRef ext = extend_with_aux(ideal.ring(), aux);
  std::vector<Poly> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.mapped_to(ext));
  gens.push_back(Poly::constant(ext, 1) -
                 Poly::variable(ext, aux) * f.mapped_to(ext));
  Ideal ext_ideal(ext, std::move(gens));
  return ext_ideal.contains(Poly::constant(ext, 1));
}

Poly determinant(const std::vector<std::vector<Poly>>& mat) {
  size_t n = mat.size();
  if (n == 0) throw error("determinant of empty matrix");
  if (n == 1) return mat[0][0];
  RingRef ring = mat[0][0].ring();
  Poly det = Poly::zero(ring);
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(mat[r][c]);
      minor.push_back(std::move(row));
    }
    Poly cof = mat[0][j] * determinant(minor);
    det = (j % 2 == 0) ? det + cof : det - cof;
  }
  return det;
}

Ideal fitting0(RingRef ring, const std::vector<std::vector<Poly>>& pres) {
  size_t n = pres.size();
  if (n == 0) return Ideal(ring, {Poly::constant(ring, 1)});
  size_t m = pres[0].size();
  for (const auto& row : pres)
    if (row.size() != m) throw error("ragged presentation matrix");
  if (m < n) return Ideal(ring, {});

  // all n x n minors over column choices
  std::vector<Poly> gens;
  std::vector<size_t> cols(n);
  for (size_t i = 0; i < n; ++i) cols[i] = i;
  while (true) {
    std::vector<std::vector<Poly>> sq;
    for (size_t r = 0; r < n; ++r) {
      std::vector<Poly> row;
      for (size_t c : cols) row.push_back(pres[r][c]);
      sq.push_back(std::move(row));
    }
    Poly d = determinant(sq);
    if (!d.is_zero()) gens.push_back(d);
    // next combination
    size_t i = n;
    while (i > 0) {
      --i;
      if (cols[i] != i + m - n) {
        ++cols[i];
        for (size_t j = i + 1; j < n; ++j) cols[j] = cols[j - 1] + 1;
        break;
      }
      if (i == 0) return Ideal(ring, std::move(gens));
    }
  }
}

}  // namespace cosupp
