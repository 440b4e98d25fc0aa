#include "cosupp/specset.hpp"

#include <algorithm>
#include <sstream>

namespace cosupp {

namespace {

void require_same_ambient(const SpecSet& s, const PrimeId& p) {
  if (s.ring->repr() != normalize(p.ring)->repr())
    throw error("ambient ring mismatch: " + s.ring->repr() + " vs " +
                p.ring->repr());
}

void require_same_ambient(const SpecSet& a, const SpecSet& b) {
  if (a.ring->repr() != b.ring->repr())
    throw error("ambient ring mismatch: " + a.ring->repr() + " vs " +
                b.ring->repr());
}

bool lists_prime(const RingDescPtr& ring, const std::vector<PrimeId>& list,
                 const PrimeId& p) {
  for (const auto& q : list)
    if (prime_equal(ring, p, q)) return true;
  return false;
}

}  // namespace

std::string SpecSet::repr() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Full: os << "Spec"; break;
    case Kind::Empty: os << "{}"; break;
    case Kind::ClosedV: {
      os << "V(";
      const auto& gs = ideal.gens();
      for (size_t i = 0; i < gs.size(); ++i)
        os << (i ? "," : "") << gs[i].str();
      os << ")";
      break;
    }
    case Kind::FiniteSet: {
      os << "{";
      for (size_t i = 0; i < primes.size(); ++i)
        os << (i ? ", " : "") << primes[i].repr();
      os << "}";
      break;
    }
    case Kind::DownSet:
      os << "down" << down->repr();
      break;
    case Kind::Pullback:
      os << "pullback[" << map->repr() << "](" << inner->repr() << ")";
      break;
    case Kind::Intersect: {
      for (size_t i = 0; i < parts.size(); ++i)
        os << (i ? " ∩ " : "") << parts[i].repr();
      break;
    }
    case Kind::Partial: {
      os << "partial{yes: ";
      for (size_t i = 0; i < primes.size(); ++i)
        os << (i ? ", " : "") << primes[i].repr();
      os << "; no: ";
      for (size_t i = 0; i < no_primes.size(); ++i)
        os << (i ? ", " : "") << no_primes[i].repr();
      for (const auto& n : family_notes) os << "; " << n;
      os << "}";
      break;
    }
  }
  return os.str();
}

SpecSet specset_full(RingDescPtr ring) {
  SpecSet s;
  s.kind = SpecSet::Kind::Full;
  s.ring = normalize(ring);
  return s;
}

SpecSet specset_empty(RingDescPtr ring) {
  SpecSet s;
  s.kind = SpecSet::Kind::Empty;
  s.ring = normalize(ring);
  return s;
}

SpecSet specset_closed(RingDescPtr ring, std::vector<Poly> gens) {
  SpecSet s;
  s.kind = SpecSet::Kind::ClosedV;
  s.ring = normalize(ring);
  RingModel m = model_of(s.ring);
  if (m.present) {
    Ideal raw = m.ideal_with(gens);
    // store the reduced basis so structurally equal sets print identically
    s.ideal = Ideal(m.poly, raw.groebner_basis());
  } else {
    throw unknown_error("closed sets need a computable ambient ring");
  }
  return s;
}

SpecSet specset_finite(RingDescPtr ring, std::vector<PrimeId> primes) {
  SpecSet s;
  s.kind = SpecSet::Kind::FiniteSet;
  s.ring = normalize(ring);
  for (auto& p : primes) {
    if (p.status == PrimeStatus::Refuted)
      throw error("refuted prime in a finite spec-set");
    if (!lists_prime(s.ring, s.primes, p)) s.primes.push_back(std::move(p));
  }
  if (s.primes.empty()) s.kind = SpecSet::Kind::Empty;
  return s;
}

SpecSet specset_down(PrimeId p) {
  SpecSet s;
  s.kind = SpecSet::Kind::DownSet;
  s.ring = normalize(p.ring);
  s.down = std::move(p);
  return s;
}

SpecSet specset_opaque_pullback(RingMap f, SpecSet inner) {
  SpecSet s;
  s.kind = SpecSet::Kind::Pullback;
  s.ring = f.source;
  s.map = std::make_shared<RingMap>(std::move(f));
  s.inner = std::make_shared<SpecSet>(std::move(inner));
  return s;
}

SpecSet specset_partial(RingDescPtr ring, std::vector<PrimeId> yes,
                        std::vector<PrimeId> no,
                        std::vector<std::string> notes,
                        std::string not_closed_certificate) {
  SpecSet s;
  s.kind = SpecSet::Kind::Partial;
  s.ring = normalize(ring);
  s.primes = std::move(yes);
  s.no_primes = std::move(no);
  for (const auto& p : s.primes)
    if (lists_prime(s.ring, s.no_primes, p))
      throw error("prime listed as both member and non-member: " + p.repr());
  s.family_notes = std::move(notes);
  s.not_closed_certificate = std::move(not_closed_certificate);
  return s;
}

Tri specset_member(const SpecSet& s, const PrimeId& p) {
  require_same_ambient(s, p);
  switch (s.kind) {
    case SpecSet::Kind::Full:
      return Tri::yes();
    case SpecSet::Kind::Empty:
      return Tri::no();
    case SpecSet::Kind::ClosedV:
      try {
        return Tri::of(prime_contains(s.ring, p, s.ideal.gens()));
      } catch (const unknown_error& e) {
        return Tri::unknown(e.what());
      }
    case SpecSet::Kind::FiniteSet:
      try {
        return Tri::of(lists_prime(s.ring, s.primes, p));
      } catch (const unknown_error& e) {
        return Tri::unknown(e.what());
      }
    case SpecSet::Kind::DownSet:
      try {
        PrimeId top = *s.down;
        return Tri::of(prime_contains(s.ring, top, p.gens));
      } catch (const unknown_error& e) {
        return Tri::unknown(e.what());
      }
    case SpecSet::Kind::Pullback: {
      if (s.map->kind != RingMap::Kind::QuotientProjection)
        return Tri::unknown("membership through a general map pullback");
      try {
        auto fibers = fiber_primes(*s.map, p);
        if (fibers.empty()) return Tri::no();
        return specset_member(*s.inner, fibers.front());
      } catch (const unknown_error& e) {
        return Tri::unknown(e.what());
      }
    }
    case SpecSet::Kind::Intersect: {
      Tri acc = Tri::yes();
      for (const auto& part : s.parts) acc = acc && specset_member(part, p);
      return acc;
    }
    case SpecSet::Kind::Partial: {
      try {
        if (lists_prime(s.ring, s.primes, p)) return Tri::yes();
        if (lists_prime(s.ring, s.no_primes, p)) return Tri::no();
      } catch (const unknown_error& e) {
        return Tri::unknown(e.what());
      }
      std::string why = "prime not covered by the partial description";
      for (const auto& n : s.family_notes) why += "; " + n;
      return Tri::unknown(why);
    }
  }
  throw error("unreachable");
}

SpecSet specset_intersect(const SpecSet& a, const SpecSet& b) {
  require_same_ambient(a, b);
  if (a.kind == SpecSet::Kind::Full) return b;
  if (b.kind == SpecSet::Kind::Full) return a;
  if (a.kind == SpecSet::Kind::Empty || b.kind == SpecSet::Kind::Empty)
    return specset_empty(a.ring);
  if (a.kind == SpecSet::Kind::ClosedV && b.kind == SpecSet::Kind::ClosedV) {
    std::vector<Poly> gens = a.ideal.gens();
    const auto& bg = b.ideal.gens();
    gens.insert(gens.end(), bg.begin(), bg.end());
    return specset_closed(a.ring, std::move(gens));
  }
  auto filter_finite = [](const SpecSet& fin, const SpecSet& other) {
    std::vector<PrimeId> kept, undecided;
    for (const auto& p : fin.primes) {
      Tri in = specset_member(other, p);
      if (in.is_true())
        kept.push_back(p);
      else if (in.is_unknown())
        undecided.push_back(p);
    }
    SpecSet result = specset_finite(fin.ring, std::move(kept));
    if (undecided.empty()) return result;
    SpecSet residual;
    residual.kind = SpecSet::Kind::Intersect;
    residual.ring = fin.ring;
    residual.parts = {specset_finite(fin.ring, std::move(undecided)), other};
    if (result.kind == SpecSet::Kind::Empty) return residual;
    SpecSet joined;
    joined.kind = SpecSet::Kind::Intersect;
    joined.ring = fin.ring;
    joined.parts = {std::move(result), std::move(residual)};
    return joined;
  };
  if (a.kind == SpecSet::Kind::FiniteSet) return filter_finite(a, b);
  if (b.kind == SpecSet::Kind::FiniteSet) return filter_finite(b, a);
  SpecSet s;
  s.kind = SpecSet::Kind::Intersect;
  s.ring = a.ring;
  s.parts = {a, b};
  return s;
}

SpecSet specset_pullback(const RingMap& f, const SpecSet& s) {
  if (s.ring->repr() != f.target->repr())
    throw error("pullback expects a set over the map's target");
  if (f.kind != RingMap::Kind::QuotientProjection)
    return specset_opaque_pullback(f, s);
  switch (s.kind) {
    case SpecSet::Kind::Empty:
      return specset_empty(f.source);
    case SpecSet::Kind::Full:
      return specset_closed(f.source, f.kernel);
    case SpecSet::Kind::ClosedV: {
      std::vector<Poly> gens = f.kernel;
      RingModel src = model_of(f.source);
      for (const auto& g : s.ideal.gens())
        gens.push_back(g.mapped_to(src.poly));
      return specset_closed(f.source, std::move(gens));
    }
    case SpecSet::Kind::FiniteSet: {
      std::vector<PrimeId> contracted;
      for (const auto& q : s.primes)
        contracted.push_back(contract_prime(f, q));
      return specset_finite(f.source, std::move(contracted));
    }
    default:
      return specset_opaque_pullback(f, s);
  }
}

Closedness specset_is_closed(const SpecSet& s) {
  Closedness out;
  switch (s.kind) {
    case SpecSet::Kind::Full:
      out.value = Tri::yes();
      if (RingModel m = model_of(s.ring); m.present)
        out.witness = m.ideal_with({});
      return out;
    case SpecSet::Kind::Empty: {
      out.value = Tri::yes();
      if (RingModel m = model_of(s.ring); m.present)
        out.witness = m.ideal_with({Poly::constant(m.poly, 1)});
      return out;
    }
    case SpecSet::Kind::ClosedV:
      out.value = Tri::yes();
      out.witness = s.ideal;
      return out;
    case SpecSet::Kind::FiniteSet: {
      // a finite set of closed points is closed
      for (const auto& p : s.primes) {
        Tri mx = is_maximal(s.ring, p);
        if (!mx.is_true()) {
          out.value = Tri::unknown(
              "finite set contains a prime not certified maximal: " +
              p.repr());
          return out;
        }
      }
      out.value = Tri::yes();
      RingModel m = model_of(s.ring);
      if (m.present && !s.primes.empty()) {
        Ideal acc = m.ideal_with(s.primes.front().gens);
        for (size_t i = 1; i < s.primes.size(); ++i)
          acc = ideal_arith(IdealOp::Intersection, acc,
                            m.ideal_with(s.primes[i].gens));
        out.witness = acc;
      }
      return out;
    }
    case SpecSet::Kind::Partial:
      if (!s.not_closed_certificate.empty()) {
        out.value = Tri::no();
        out.certificate = s.not_closed_certificate;
        return out;
      }
      out.value = Tri::unknown("partial description without a certificate");
      return out;
    default:
      out.value = Tri::unknown("no closedness rule for this set shape");
      return out;
  }
}

}  // namespace cosupp
