#include "cosupp/cf.hpp"

#include <sstream>

namespace cosupp {

std::string CardTag::str() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Finite: return std::to_string(n);
    case Kind::CountablyInfinite: return "omega";
    case Kind::Symbolic: return name;
  }
  return "?";
}

CardTag card_add(const CardTag& a, const CardTag& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kind == CardTag::Kind::CountablyInfinite ||
      b.kind == CardTag::Kind::CountablyInfinite)
    return CardTag::countable();
  if (a.kind == CardTag::Kind::Finite && b.kind == CardTag::Kind::Finite)
    return CardTag::finite(a.n + b.n);
  return CardTag::symbolic(a.str() + "+" + b.str());
}

std::string CFModule::repr() const {
  if (components.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < components.size(); ++i) {
    os << (i ? " x " : "") << "T" << components[i].prime.repr() << "^("
       << components[i].card.str() << ")";
  }
  return os.str();
}

CFModule cf_make_module(RingDescPtr ring,
                        std::vector<CFModule::Component> components) {
  CFModule t;
  t.ring = normalize(ring);
  for (auto& c : components) {
    if (c.card.is_zero()) continue;  // zero pieces are pruned
    if (c.prime.status == PrimeStatus::Refuted)
      throw error("refuted prime in a cotorsion flat module: " +
                  c.prime.repr());
    for (const auto& prev : t.components)
      if (prime_equal(t.ring, prev.prime, c.prime))
        throw error("duplicate component prime: " + c.prime.repr());
    t.components.push_back(std::move(c));
  }
  return t;
}

const char* diff_tag_str(DiffTag t) {
  switch (t) {
    case DiffTag::Zero: return "zero";
    case DiffTag::NonzeroModP: return "nonzero-mod-p";
    case DiffTag::ZeroModP_Nonzero: return "zero-mod-p";
    default: return "unknown";
  }
}

CFComplex cf_make_complex(RingDescPtr ring, int lo,
                          std::vector<CFModule> modules, bool bounded_left,
                          Tri semiflat) {
  CFComplex b;
  b.ring = normalize(ring);
  b.lo = lo;
  b.hi = lo + static_cast<int>(modules.size()) - 1;
  b.bounded_left = bounded_left;
  b.semiflat = semiflat;
  for (size_t i = 0; i < modules.size(); ++i) {
    if (modules[i].ring->repr() != b.ring->repr())
      throw error("complex module over a different ring");
    if (!modules[i].is_zero_module())
      b.modules.emplace(lo + static_cast<int>(i), std::move(modules[i]));
  }
  return b;
}

namespace {

const CFModule* module_at(const CFComplex& b, int degree) {
  auto it = b.modules.find(degree);
  return it == b.modules.end() ? nullptr : &it->second;
}

bool has_component(const CFModule& m, const RingDescPtr& ring,
                   const PrimeId& p) {
  for (const auto& c : m.components)
    if (prime_equal(ring, c.prime, p)) return true;
  return false;
}

}  // namespace

void cf_set_diff(CFComplex& b, int degree, const PrimeId& from,
                 const PrimeId& to, DiffTag tag) {
  const CFModule* src = module_at(b, degree);
  const CFModule* dst = module_at(b, degree + 1);
  if (!src || !has_component(*src, b.ring, from))
    throw error("no source component " + from.repr() + " in degree " +
                std::to_string(degree));
  if (!dst || !has_component(*dst, b.ring, to))
    throw error("no target component " + to.repr() + " in degree " +
                std::to_string(degree + 1));
  bool up = prime_contains(b.ring, to, from.gens);
  bool dn = prime_contains(b.ring, from, to.gens);
  if (!up && !dn && tag != DiffTag::Zero)
    throw error("incomparable component primes force a zero entry: " +
                from.repr() + " -> " + to.repr());
  for (auto& e : b.diffs) {
    if (e.degree == degree && prime_equal(b.ring, e.from, from) &&
        prime_equal(b.ring, e.to, to)) {
      e.tag = tag;
      return;
    }
  }
  b.diffs.push_back({degree, from, to, tag});
}

DiffTag cf_diff_tag(const CFComplex& b, int degree, const PrimeId& from,
                    const PrimeId& to) {
  for (const auto& e : b.diffs)
    if (e.degree == degree && prime_equal(b.ring, e.from, from) &&
        prime_equal(b.ring, e.to, to))
      return e.tag;
  return DiffTag::Zero;
}

namespace {

CFModule filter_components(const CFModule& t, const PrimeId& p,
                           bool keep_containing_p) {
  CFModule out;
  out.ring = t.ring;
  RingDescPtr ring = t.ring;
  for (const auto& c : t.components) {
    bool keep;
    try {
      keep = keep_containing_p ? prime_contains(ring, c.prime, p.gens)
                               : prime_contains(ring, p, c.prime.gens);
    } catch (const unknown_error& e) {
      throw unknown_error(std::string("undecidable containment between ") +
                          c.prime.repr() + " and " + p.repr() + ": " +
                          e.what());
    }
    if (keep) out.components.push_back(c);
  }
  return out;
}

}  // namespace

CFModule cf_completion(const CFModule& t, const PrimeId& p) {
  if (normalize(p.ring)->repr() != t.ring->repr())
    throw error("completion prime lives in a different ring");
  return filter_components(t, p, /*keep_containing_p=*/true);
}

CFModule cf_colocalize(const CFModule& t, const PrimeId& p) {
  if (normalize(p.ring)->repr() != t.ring->repr())
    throw error("colocalization prime lives in a different ring");
  return filter_components(t, p, /*keep_containing_p=*/false);
}

CFModule cf_basechange(
    const CFModule& t, const RingMap& f,
    const std::optional<std::vector<std::vector<PrimeId>>>& fibers) {
  if (t.ring->repr() != f.source->repr())
    throw error("base change expects a module over the map's source");
  if (!fibers && f.kind != RingMap::Kind::QuotientProjection)
    throw unknown_error(
        "fibers of a general finite map must be supplied by the caller");
  if (fibers && fibers->size() != t.components.size())
    throw error("one fiber list per component expected");
  CFModule out;
  out.ring = f.target;
  for (size_t i = 0; i < t.components.size(); ++i) {
    const auto& c = t.components[i];
    std::vector<PrimeId> w =
        fibers ? (*fibers)[i] : fiber_primes(f, c.prime);
    for (const auto& q : w) {
      bool merged = false;
      for (auto& prev : out.components) {
        if (prime_equal(out.ring, prev.prime, q)) {
          prev.card = card_add(prev.card, c.card);
          merged = true;
          break;
        }
      }
      if (!merged) out.components.push_back({q, c.card});
    }
  }
  return out;
}

Tri cf_is_minimal(const CFComplex& b) {
  Tri verdict = Tri::yes();
  for (const auto& [deg, src] : b.modules) {
    const CFModule* dst = module_at(b, deg + 1);
    if (!dst) continue;
    for (const auto& cs : src.components) {
      if (!has_component(*dst, b.ring, cs.prime)) continue;
      DiffTag tag = cf_diff_tag(b, deg, cs.prime, cs.prime);
      if (tag == DiffTag::NonzeroModP) return Tri::no();
      if (tag == DiffTag::Unknown)
        verdict = Tri::unknown("diagonal entry at " + cs.prime.repr() +
                               " in degree " + std::to_string(deg) +
                               " has unknown reduction");
    }
  }
  return verdict;
}

CFPrimesResult cf_primes(const CFComplex& b) {
  Tri minimal = cf_is_minimal(b);
  if (minimal.is_false()) throw error("detection requires minimality");
  CFPrimesResult out;
  for (const auto& [deg, m] : b.modules) {
    for (const auto& c : m.components) {
      bool seen = false;
      for (const auto& p : out.primes)
        seen = seen || prime_equal(b.ring, p, c.prime);
      if (!seen) out.primes.push_back(c.prime);
    }
  }
  if (minimal.is_unknown()) {
    out.equals_cosupport = Tri::unknown(minimal.reason());
    out.hypothesis_log.push_back("minimality: unknown (" + minimal.reason() +
                                 ")");
    return out;
  }
  out.hypothesis_log.push_back("minimality: verified");
  if (!b.semiflat.is_true()) {
    out.equals_cosupport =
        Tri::unknown("semiflatness not asserted for the complex");
    out.hypothesis_log.push_back("semiflat: not asserted");
    return out;
  }
  out.hypothesis_log.push_back("semiflat: asserted");
  const AttrReport& attrs = infer_attrs(b.ring);
  bool finite_dim = attrs.dim_hi < kDimInfinite;
  if (b.bounded_left) {
    out.hypothesis_log.push_back("boundedness: bounded on the left");
    out.equals_cosupport = Tri::yes();
  } else if (finite_dim) {
    out.hypothesis_log.push_back(
        "boundedness: waived, ring has finite Krull dimension (<= " +
        std::to_string(attrs.dim_hi) + ")");
    out.equals_cosupport = Tri::yes();
  } else {
    out.equals_cosupport = Tri::unknown(
        "unbounded complex over a ring of unverified finite dimension");
    out.hypothesis_log.push_back("boundedness: unverifiable");
  }
  return out;
}

CFModule cf_prescribe(RingDescPtr ring, const std::vector<PrimeId>& w) {
  std::vector<CFModule::Component> comps;
  for (const auto& p : w) comps.push_back({p, CardTag::finite(1)});
  return cf_make_module(std::move(ring), std::move(comps));
}

}  // namespace cosupp
