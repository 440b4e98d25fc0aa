#include "cosupp/ring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace cosupp {

namespace {

RingDescPtr make_desc(RingDesc d) {
  return std::make_shared<const RingDesc>(std::move(d));
}

bool is_bare_variable(const Poly& f, size_t* var_out) {
  if (f.term_count() != 1) return false;
  const auto& [m, c] = *f.terms().begin();
  if (total_degree(m) != 1) return false;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 1) {
      *var_out = i;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string RingDesc::repr() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::BaseField:
      switch (field_kind) {
        case FieldKind::Rationals: os << "Q"; break;
        case FieldKind::PrimeField: os << "F(" << characteristic << ")"; break;
        case FieldKind::Abstract:
          os << "field(";
          switch (abstract_card) {
            case Cardinality::Finite: os << "finite"; break;
            case Cardinality::Countable: os << "countable"; break;
            case Cardinality::Uncountable: os << "uncountable"; break;
            default: os << "unknown";
          }
          os << ")";
          break;
      }
      break;
    case Kind::BaseZ: os << "Z"; break;
    case Kind::PolyExt: {
      os << base->repr() << "[";
      for (size_t i = 0; i < vars.size(); ++i)
        os << (i ? "," : "") << vars[i];
      os << "]";
      break;
    }
    case Kind::PowerSeriesExt: {
      os << base->repr() << "[[";
      for (size_t i = 0; i < vars.size(); ++i)
        os << (i ? "," : "") << vars[i];
      os << "]]";
      break;
    }
    case Kind::Quotient: {
      os << base->repr() << "/(";
      for (size_t i = 0; i < quotient_gens.size(); ++i)
        os << (i ? "," : "") << quotient_gens[i].str();
      os << ")";
      break;
    }
    case Kind::LocalizeAtPrime: {
      os << "localize(" << base->repr() << ",(";
      for (size_t i = 0; i < local_gens.size(); ++i)
        os << (i ? "," : "") << local_gens[i];
      os << "))";
      break;
    }
  }
  return os.str();
}

RingDescPtr ring_rationals() {
  RingDesc d;
  d.kind = RingDesc::Kind::BaseField;
  d.field_kind = RingDesc::FieldKind::Rationals;
  return make_desc(std::move(d));
}

RingDescPtr ring_prime_field(unsigned p) {
  if (p < 2) throw error("prime field characteristic must be >= 2");
  RingDesc d;
  d.kind = RingDesc::Kind::BaseField;
  d.field_kind = RingDesc::FieldKind::PrimeField;
  d.characteristic = p;
  return make_desc(std::move(d));
}

RingDescPtr ring_abstract_field(Cardinality card) {
  RingDesc d;
  d.kind = RingDesc::Kind::BaseField;
  d.field_kind = RingDesc::FieldKind::Abstract;
  d.abstract_card = card;
  return make_desc(std::move(d));
}

RingDescPtr ring_integers() {
  RingDesc d;
  d.kind = RingDesc::Kind::BaseZ;
  return make_desc(std::move(d));
}

RingDescPtr poly_ext(RingDescPtr base, std::vector<std::string> vars) {
  RingDesc d;
  d.kind = RingDesc::Kind::PolyExt;
  d.base = std::move(base);
  d.vars = std::move(vars);
  return make_desc(std::move(d));
}

RingDescPtr power_series_ext(RingDescPtr base, std::vector<std::string> vars) {
  RingDesc d;
  d.kind = RingDesc::Kind::PowerSeriesExt;
  d.base = std::move(base);
  d.vars = std::move(vars);
  return make_desc(std::move(d));
}

RingDescPtr quotient_ring(RingDescPtr base, std::vector<Poly> gens) {
  RingDesc d;
  d.kind = RingDesc::Kind::Quotient;
  d.base = std::move(base);
  d.quotient_gens = std::move(gens);
  return make_desc(std::move(d));
}

RingDescPtr localize_at(RingDescPtr base,
                        std::vector<std::string> prime_gens) {
  RingDesc d;
  d.kind = RingDesc::Kind::LocalizeAtPrime;
  d.base = std::move(base);
  d.local_gens = std::move(prime_gens);
  return make_desc(std::move(d));
}

namespace {

// Flattened view used during normalization: a root (base field / Z /
// localize), a stack of extension layers, and composed quotient relations.
struct Flat {
  RingDescPtr root;
  struct Layer {
    RingDesc::Kind kind;  // PolyExt or PowerSeriesExt
    std::vector<std::string> vars;
  };
  std::vector<Layer> layers;
  std::vector<Poly> relations;  // in the full-variable model ring
};

unsigned root_characteristic(const RingDescPtr& root) {
  if (root->kind == RingDesc::Kind::BaseField &&
      root->field_kind == RingDesc::FieldKind::PrimeField)
    return root->characteristic;
  return 0;
}

bool root_has_model(const RingDescPtr& root) {
  return root->kind == RingDesc::Kind::BaseField;
}

RingRef flat_poly_ring(const Flat& f) {
  std::vector<std::string> vars;
  for (const auto& layer : f.layers)
    vars.insert(vars.end(), layer.vars.begin(), layer.vars.end());
  return make_ring(root_characteristic(f.root), vars);
}

Flat flatten(const RingDescPtr& ring) {
  switch (ring->kind) {
    case RingDesc::Kind::BaseField:
    case RingDesc::Kind::BaseZ:
    case RingDesc::Kind::LocalizeAtPrime:
      return Flat{ring, {}, {}};
    case RingDesc::Kind::PolyExt:
    case RingDesc::Kind::PowerSeriesExt: {
      Flat f = flatten(ring->base);
      if (!ring->vars.empty()) {
        f.layers.push_back({ring->kind, ring->vars});
        if (!f.relations.empty()) {
          RingRef full = flat_poly_ring(f);
          for (auto& r : f.relations) r = r.mapped_to(full);
        }
      }
      return f;
    }
    case RingDesc::Kind::Quotient: {
      Flat f = flatten(ring->base);
      if (!root_has_model(f.root))
        throw unknown_error(
            "quotient over attribute-only base is not supported");
      RingRef full = flat_poly_ring(f);
      for (const auto& g : ring->quotient_gens) {
        Poly h = g.mapped_to(full);
        if (!h.is_zero()) f.relations.push_back(h);
      }
      return f;
    }
  }
  throw error("unreachable");
}

// Absorb bare-variable relations by dropping the variable and substituting
// zero elsewhere; then elide empty layers and merge adjacent same-kind ones.
void simplify(Flat& f) {
  bool changed = true;
  while (changed) {
    changed = false;
    RingRef full = flat_poly_ring(f);
    for (size_t gi = 0; gi < f.relations.size() && !changed; ++gi) {
      size_t var_idx = 0;
      if (!is_bare_variable(f.relations[gi], &var_idx)) continue;
      std::string name = full->vars[var_idx];
      // rebuild without this variable, substituting zero
      std::vector<std::string> kept_vars;
      for (size_t i = 0; i < full->vars.size(); ++i)
        if (i != var_idx) kept_vars.push_back(full->vars[i]);
      RingRef sub = make_ring(full->characteristic, kept_vars);
      std::vector<Poly> images;
      for (size_t i = 0; i < full->vars.size(); ++i) {
        images.push_back(i == var_idx
                             ? Poly::zero(sub)
                             : Poly::variable(sub, full->vars[i]));
      }
      std::vector<Poly> new_rel;
      for (size_t i = 0; i < f.relations.size(); ++i) {
        if (i == gi) continue;
        Poly h = f.relations[i].substituted(sub, images);
        if (!h.is_zero()) new_rel.push_back(h);
      }
      f.relations = std::move(new_rel);
      for (auto& layer : f.layers) {
        auto it = std::find(layer.vars.begin(), layer.vars.end(), name);
        if (it != layer.vars.end()) layer.vars.erase(it);
      }
      changed = true;
    }
  }
  std::vector<Flat::Layer> layers;
  for (auto& layer : f.layers) {
    if (layer.vars.empty()) continue;
    if (!layers.empty() && layers.back().kind == layer.kind) {
      layers.back().vars.insert(layers.back().vars.end(), layer.vars.begin(),
                                layer.vars.end());
    } else {
      layers.push_back(std::move(layer));
    }
  }
  f.layers = std::move(layers);
}

RingDescPtr rebuild(const Flat& f) {
  RingDescPtr r = f.root;
  if (r->kind == RingDesc::Kind::LocalizeAtPrime) {
    r = localize_at(normalize(r->base), r->local_gens);
  }
  for (const auto& layer : f.layers) {
    r = layer.kind == RingDesc::Kind::PolyExt
            ? poly_ext(r, layer.vars)
            : power_series_ext(r, layer.vars);
  }
  if (!f.relations.empty()) r = quotient_ring(r, f.relations);
  return r;
}

}  // namespace

RingDescPtr normalize(const RingDescPtr& ring) {
  Flat f = flatten(ring);
  if (root_has_model(f.root)) simplify(f);
  return rebuild(f);
}

std::vector<std::string> RingModel::ps_vars() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < poly->vars.size(); ++i)
    if (ps_mask[i]) out.push_back(poly->vars[i]);
  return out;
}

std::vector<std::string> RingModel::poly_vars() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < poly->vars.size(); ++i)
    if (!ps_mask[i]) out.push_back(poly->vars[i]);
  return out;
}

Ideal RingModel::ideal_with(const std::vector<Poly>& extra) const {
  if (!present) throw unknown_error("attribute-only ring has no model");
  std::vector<Poly> gens = relations;
  for (const auto& g : extra) gens.push_back(g.mapped_to(poly));
  return Ideal(poly, std::move(gens));
}

RingModel model_of(const RingDescPtr& ring) {
  RingModel m;
  Flat f = flatten(normalize(ring));
  if (!root_has_model(f.root)) return m;
  m.present = true;
  m.proxy_coeffs =
      f.root->field_kind == RingDesc::FieldKind::Abstract;
  m.poly = flat_poly_ring(f);
  m.relations = f.relations;
  m.ps_mask.assign(m.poly->vars.size(), 0);
  size_t idx = 0;
  for (const auto& layer : f.layers) {
    for (size_t i = 0; i < layer.vars.size(); ++i, ++idx)
      m.ps_mask[idx] = layer.kind == RingDesc::Kind::PowerSeriesExt;
  }
  return m;
}

Poly project_poly(const RingModel& src, const RingModel& dst, const Poly& f) {
  std::vector<Poly> images;
  for (const auto& v : src.poly->vars) {
    images.push_back(dst.poly->var_index(v) >= 0
                         ? Poly::variable(dst.poly, v)
                         : Poly::zero(dst.poly));
  }
  return f.mapped_to(src.poly).substituted(dst.poly, images);
}

PrimeId make_prime(RingDescPtr ring, std::vector<Poly> gens,
                   PrimeStatus status) {
  PrimeId p;
  p.ring = normalize(ring);
  RingModel m = model_of(p.ring);
  for (auto& g : gens) {
    if (!m.present) throw unknown_error("polynomial prime generators need a computable ring");
    Poly h = g.mapped_to(m.poly);
    if (!h.is_zero()) p.gens.push_back(std::move(h));
  }
  p.status = status;
  return p;
}

PrimeId zero_prime(RingDescPtr ring) {
  PrimeId p;
  p.ring = normalize(ring);
  p.status = PrimeStatus::Asserted;
  return p;
}

std::string PrimeId::repr() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& g : gens) {
    os << (first ? "" : ", ") << g.str();
    first = false;
  }
  for (const auto& g : sym_gens) {
    os << (first ? "" : ", ") << g;
    first = false;
  }
  if (first) os << "0";
  os << ")";
  return os.str();
}

bool AttrReport::complete_local(const RingModel& model) const {
  if (!is_local.is_true() || !model.present) return false;
  if (c_known.empty()) return maximal_ideal.empty();
  Ideal c = model.ideal_with(c_known);
  for (const auto& g : maximal_ideal)
    if (!c.contains(g.mapped_to(model.poly))) return false;
  return true;
}

namespace {

int sat_add(int a, int b) {
  return (a >= kDimInfinite || b >= kDimInfinite) ? kDimInfinite : a + b;
}

AttrReport compute_attrs(const RingDescPtr& ring);

AttrReport& memoized_attrs(const RingDescPtr& ring) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<AttrReport>> table;
  std::string key = ring->repr();
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(key);
  if (it != table.end()) return *it->second;
  // compute outside the table but under the lock; recursion re-enters via
  // compute_attrs directly, not via the memo, so no deadlock
  auto report = std::make_unique<AttrReport>(compute_attrs(ring));
  return *table.emplace(key, std::move(report)).first->second;
}

AttrReport base_field_attrs(const RingDescPtr& r) {
  AttrReport a;
  a.is_field = Tri::yes();
  a.is_domain = Tri::yes();
  a.is_local = Tri::yes();
  a.dim_lo = a.dim_hi = 0;
  a.c_exact = Tri::yes();
  switch (r->field_kind) {
    case RingDesc::FieldKind::Rationals:
    case RingDesc::FieldKind::PrimeField:
      a.countable = Tri::yes();
      break;
    case RingDesc::FieldKind::Abstract:
      switch (r->abstract_card) {
        case Cardinality::Finite:
        case Cardinality::Countable: a.countable = Tri::yes(); break;
        case Cardinality::Uncountable: a.countable = Tri::no(); break;
        default:
          a.countable = Tri::unknown("abstract field of unknown cardinality");
      }
      break;
  }
  return a;
}

AttrReport compute_attrs(const RingDescPtr& ring) {
  AttrReport a;
  RingModel model = model_of(ring);
  switch (ring->kind) {
    case RingDesc::Kind::BaseField:
      return base_field_attrs(ring);
    case RingDesc::Kind::BaseZ: {
      a.countable = Tri::yes();
      a.is_domain = Tri::yes();
      a.is_field = Tri::no();
      a.is_local = Tri::no();
      a.dim_lo = a.dim_hi = 1;
      a.c_exact = Tri::yes();
      return a;
    }
    case RingDesc::Kind::LocalizeAtPrime: {
      AttrReport b = compute_attrs(normalize(ring->base));
      a.countable = b.countable;  // fractions over a countable ring
      a.is_domain = b.is_domain;
      a.is_local = Tri::yes();
      a.is_field = ring->local_gens.empty() ? b.is_domain : Tri::no();
      if (ring->base->kind == RingDesc::Kind::BaseZ &&
          !ring->local_gens.empty()) {
        a.dim_lo = a.dim_hi = 1;  // nonzero prime of a 1-dim domain
      } else {
        a.dim_lo = 0;
        a.dim_hi = b.dim_hi;
      }
      a.c_exact = Tri::unknown("completeness of a localization not tracked");
      return a;
    }
    case RingDesc::Kind::PolyExt: {
      AttrReport b = compute_attrs(ring->base);
      a.countable = b.countable;
      a.is_domain = b.is_domain;
      a.is_field = Tri::no();
      a.is_local = Tri::no();
      a.dim_lo = sat_add(b.dim_lo, static_cast<int>(ring->vars.size()));
      a.dim_hi = sat_add(b.dim_hi, static_cast<int>(ring->vars.size()));
      // no positive completeness is claimed for a polynomial extension
      a.c_known.clear();
      bool base_is_field = ring->base->kind == RingDesc::Kind::BaseField;
      bool base_is_ps_over_field =
          ring->base->kind == RingDesc::Kind::PowerSeriesExt &&
          ring->base->base->kind == RingDesc::Kind::BaseField;
      if (base_is_field || base_is_ps_over_field)
        a.c_exact = Tri::yes();
      else
        a.c_exact = Tri::unknown(
            "no criterion for the exact completeness ideal of this "
            "polynomial extension");
      return a;
    }
    case RingDesc::Kind::PowerSeriesExt: {
      AttrReport b = compute_attrs(ring->base);
      a.countable = Tri::no();  // power series over a nonzero ring
      a.is_domain = b.is_domain;
      a.is_field = Tri::no();
      a.dim_lo = sat_add(b.dim_lo, static_cast<int>(ring->vars.size()));
      a.dim_hi = sat_add(b.dim_hi, static_cast<int>(ring->vars.size()));
      if (b.is_local.is_true() || b.is_field.is_true()) {
        a.is_local = Tri::yes();
        if (model.present) {
          for (const auto& g : b.maximal_ideal)
            a.maximal_ideal.push_back(g.mapped_to(model.poly));
          for (const auto& v : ring->vars)
            a.maximal_ideal.push_back(Poly::variable(model.poly, v));
        }
      } else {
        a.is_local = b.is_local;
      }
      if (model.present) {
        for (const auto& g : b.c_known)
          a.c_known.push_back(g.mapped_to(model.poly));
        for (const auto& v : ring->vars)
          a.c_known.push_back(Poly::variable(model.poly, v));
      }
      // exact when the quotient by the certified ideal is resolved below
      if (b.c_exact.is_true())
        a.c_exact = Tri::yes();
      else
        a.c_exact = b.c_exact;
      return a;
    }
    case RingDesc::Kind::Quotient: {
      AttrReport b = compute_attrs(ring->base);
      a.countable = b.countable.is_true()
                        ? Tri::yes()
                        : Tri::unknown(
                              "quotient of a non-countable ring may or may "
                              "not be countable");
      a.is_domain =
          Tri::unknown("primality of the quotient ideal not verified");
      a.is_local = b.is_local;
      if (model.present) {
        RingModel base_model = model_of(ring->base);
        for (const auto& g : b.maximal_ideal)
          a.maximal_ideal.push_back(project_poly(base_model, model, g));
        for (const auto& g : b.c_known) {
          Poly h = project_poly(base_model, model, g);
          if (!h.is_zero()) a.c_known.push_back(h);
        }
      }
      if (model.present) {
        bool has_ps = false;
        for (char c : model.ps_mask) has_ps |= c != 0;
        bool relations_in_augmentation = true;
        for (const auto& r : model.relations) {
          for (const auto& [m, c] : r.terms())
            if (total_degree(m) == 0) relations_in_augmentation = false;
        }
        if (!has_ps || relations_in_augmentation) {
          try {
            int d = krull_dim(Ideal(model.poly, model.relations));
            a.dim_lo = a.dim_hi = d;
          } catch (const error&) {
            a.dim_lo = 0;
            a.dim_hi = 0;  // unit ideal: zero ring; treat as dim 0
          }
        } else {
          a.dim_lo = 0;
          a.dim_hi = b.dim_hi;
        }
      } else {
        a.dim_lo = 0;
        a.dim_hi = b.dim_hi;
      }
      a.is_field = a.dim_exact() && a.dim_hi == 0 && a.is_domain.is_true()
                       ? Tri::yes()
                       : Tri::unknown("quotient field detection limited");
      a.c_exact = Tri::unknown("completeness ideal of a quotient not pinned");
      return a;
    }
  }
  throw error("unreachable");
}

}  // namespace

const AttrReport& infer_attrs(const RingDescPtr& ring) {
  return memoized_attrs(normalize(ring));
}

std::string RingMap::repr() const {
  std::ostringstream os;
  if (kind == Kind::QuotientProjection) {
    os << source->repr() << " ->> " << target->repr();
  } else {
    os << source->repr() << " -> " << target->repr();
  }
  return os.str();
}

RingMap quotient_projection(RingDescPtr source, std::vector<Poly> kernel) {
  RingMap f;
  f.kind = RingMap::Kind::QuotientProjection;
  f.source = normalize(source);
  f.kernel = std::move(kernel);
  f.target = normalize(quotient_ring(f.source, f.kernel));
  f.asserted_finite = true;  // quotient projections are finite
  return f;
}

RingMap finite_map(RingDescPtr source, RingDescPtr target,
                   std::vector<Poly> images, bool asserted_finite) {
  RingMap f;
  f.kind = RingMap::Kind::FiniteMap;
  f.source = normalize(source);
  f.target = normalize(target);
  f.images = std::move(images);
  f.asserted_finite = asserted_finite;
  return f;
}

std::optional<CoreReduction> computable_core(const RingDescPtr& ring) {
  RingDescPtr n = normalize(ring);
  if (n->kind != RingDesc::Kind::PowerSeriesExt) return std::nullopt;
  RingModel model = model_of(n);
  if (!model.present) return std::nullopt;
  std::vector<Poly> kernel;
  for (const auto& v : n->vars)
    kernel.push_back(Poly::variable(model.poly, v));
  CoreReduction red;
  red.core = normalize(n->base);
  red.projection.kind = RingMap::Kind::QuotientProjection;
  red.projection.source = n;
  red.projection.target = red.core;
  red.projection.kernel = kernel;
  red.projection.asserted_finite = true;
  return red;
}

PrimeId contract_prime(const RingMap& map, const PrimeId& q) {
  if (q.status == PrimeStatus::Refuted)
    throw error("refuted prime cannot be contracted");
  RingModel src = model_of(map.source);
  RingModel dst = model_of(map.target);
  if (!src.present || !dst.present)
    throw unknown_error("contraction requires computable rings");

  if (map.kind == RingMap::Kind::QuotientProjection) {
    PrimeId p;
    p.ring = map.source;
    for (const auto& k : map.kernel) {
      Poly h = k.mapped_to(src.poly);
      if (!h.is_zero()) p.gens.push_back(h);
    }
    for (const auto& g : q.gens) {
      // lift along variable names; quotient models drop variables only
      Poly h = g.mapped_to(src.poly);
      if (!h.is_zero()) p.gens.push_back(h);
    }
    // preimages of primes under surjections stay prime
    p.status = q.status == PrimeStatus::Verified ? PrimeStatus::Verified
                                                 : PrimeStatus::Asserted;
    return p;
  }

  // finite map by generator images: contract via graph-ideal elimination
  if (map.images.size() != src.poly->vars.size())
    throw error("finite map image arity mismatch");
  std::vector<std::string> joint_vars = src.poly->vars;
  for (const auto& v : dst.poly->vars) {
    if (std::find(joint_vars.begin(), joint_vars.end(), v) !=
        joint_vars.end())
      throw error("source and target variable names must be disjoint");
    joint_vars.push_back(v);
  }
  RingRef joint = make_ring(src.poly->characteristic, joint_vars);
  std::vector<Poly> gens;
  for (size_t i = 0; i < map.images.size(); ++i) {
    gens.push_back(Poly::variable(joint, src.poly->vars[i]) -
                   map.images[i].mapped_to(joint));
  }
  for (const auto& g : q.gens) gens.push_back(g.mapped_to(joint));
  for (const auto& r : dst.relations) gens.push_back(r.mapped_to(joint));
  Ideal graph(joint, std::move(gens));
  Ideal contracted = eliminate(graph, dst.poly->vars);
  PrimeId p;
  p.ring = map.source;
  for (const auto& g : contracted.gens()) {
    Poly h = g.mapped_to(src.poly);
    if (!h.is_zero()) p.gens.push_back(h);
  }
  p.status = PrimeStatus::Asserted;
  return p;
}

std::vector<PrimeId> fiber_primes(const RingMap& map, const PrimeId& p) {
  if (map.kind != RingMap::Kind::QuotientProjection)
    throw unknown_error(
        "fiber computation requires quotient map or caller-supplied fibers");
  RingModel src = model_of(map.source);
  RingModel dst = model_of(map.target);
  if (!src.present || !dst.present)
    throw unknown_error("fiber computation requires computable rings");
  Ideal p_ideal = src.ideal_with(p.gens);
  for (const auto& k : map.kernel) {
    if (!p_ideal.contains(k.mapped_to(src.poly))) return {};
  }
  PrimeId q;
  q.ring = map.target;
  for (const auto& g : p.gens) {
    Poly h = project_poly(src, dst, g);
    if (!h.is_zero()) q.gens.push_back(h);
  }
  q.status = p.status == PrimeStatus::Verified ? PrimeStatus::Verified
                                               : PrimeStatus::Asserted;
  return {q};
}

Tri check_prime(const PrimeId& p,
                const std::optional<std::pair<Poly, Poly>>& product_witness,
                bool irreducibility_certified) {
  RingModel model = model_of(p.ring);
  if (!model.present) {
    if (p.is_zero_ideal() && infer_attrs(p.ring).is_domain.is_true())
      return Tri::yes();
    return Tri::unknown("attribute-only ring: primality taken on assertion");
  }
  Ideal ideal = model.ideal_with(p.gens);
  if (ideal.contains(Poly::constant(model.poly, 1)))
    return Tri::no();  // unit ideal
  if (product_witness) {
    const auto& [f, g] = *product_witness;
    if (ideal.contains(f * g) && !ideal.contains(f) && !ideal.contains(g))
      return Tri::no();
  }
  const AttrReport& attrs = infer_attrs(p.ring);
  if (p.gens.empty() && attrs.is_domain.is_true()) return Tri::yes();
  // variables over a field base, no relations
  if (model.relations.empty()) {
    bool all_vars = !p.gens.empty();
    for (const auto& g : p.gens) {
      size_t idx;
      all_vars = all_vars && is_bare_variable(g, &idx);
    }
    if (all_vars) return Tri::yes();
  }
  if (p.gens.size() == 1 && irreducibility_certified &&
      attrs.is_domain.is_true())
    return Tri::yes();
  return Tri::unknown("no primality certificate; proceeding on assertion");
}

namespace {

Tri maximal_in_ps_poly_tower(const RingDescPtr& ring, const RingModel& model,
                             const PrimeId& p) {
  // shape: k[[t]][xs] with a single series variable and prime generated by
  // polynomials
  auto ps = model.ps_vars();
  if (ps.size() != 1 || !model.relations.empty())
    return Tri::unknown("maximality criterion needs a single series variable");
  const std::string& t = ps[0];

  Ideal p_ideal = model.ideal_with(p.gens);
  if (p_ideal.contains(Poly::variable(model.poly, t))) {
    // the series variable dies; the quotient is a polynomial-ring quotient
    try {
      return Tri::of(krull_dim(p_ideal) == 0);
    } catch (const error&) {
      return Tri::unknown("unit ideal is not a prime");
    }
  }
  std::vector<Poly> sum = p.gens;
  sum.push_back(Poly::variable(model.poly, t));
  Ideal p_plus_t = model.ideal_with(sum);
  if (!p_plus_t.contains(Poly::constant(model.poly, 1))) {
    // the series variable survives as a non-unit, so the quotient has a
    // proper nonzero ideal
    return Tri::no();
  }
  // the series variable becomes a unit; pass to the Laurent chart and test
  // whether the fiber over the punctured series line is finite
  std::vector<std::string> vars = model.poly->vars;
  std::string inv = "@u";
  while (std::find(vars.begin(), vars.end(), inv) != vars.end()) inv += "@";
  vars.push_back(inv);
  RingRef ext = make_ring(model.poly->characteristic, vars);
  std::vector<Poly> gens;
  for (const auto& g : p.gens) gens.push_back(g.mapped_to(ext));
  gens.push_back(Poly::variable(ext, inv) * Poly::variable(ext, t) -
                 Poly::constant(ext, 1));
  try {
    int d = krull_dim(Ideal(ext, std::move(gens)));
    if (d == 1 && p.status != PrimeStatus::Refuted) return Tri::yes();
    return Tri::no();
  } catch (const error&) {
    return Tri::unknown("prime meets no point of the punctured chart");
  }
}

}  // namespace

Tri is_maximal(const RingDescPtr& ring, const PrimeId& p) {
  if (p.status == PrimeStatus::Refuted)
    throw error("refuted prime in is_maximal");
  RingDescPtr n = normalize(ring);
  const AttrReport& attrs = infer_attrs(n);
  RingModel model = model_of(n);

  if (attrs.is_field.is_true())
    return Tri::of(p.is_zero_ideal());

  if (!model.present)
    return Tri::unknown("maximality needs element arithmetic");

  bool has_ps = false;
  for (char c : model.ps_mask) has_ps |= c != 0;

  if (!has_ps) {
    try {
      return Tri::of(krull_dim(model.ideal_with(p.gens)) == 0);
    } catch (const error&) {
      return Tri::unknown("unit ideal is not a prime");
    }
  }

  // completeness reduction: maximal ideals contain the completeness ideal
  if (!attrs.c_known.empty()) {
    if (!prime_contains(n, p, attrs.c_known)) return Tri::no();
    if (auto red = computable_core(n)) {
      RingModel dst = model_of(red->core);
      PrimeId image;
      image.ring = red->core;
      for (const auto& g : p.gens) {
        Poly h = project_poly(model, dst, g);
        if (!h.is_zero()) image.gens.push_back(h);
      }
      image.status = p.status;
      return is_maximal(red->core, image);
    }
    return Tri::unknown("no computable reduction for this complete ring");
  }

  return maximal_in_ps_poly_tower(n, model, p);
}

bool prime_contains(const RingDescPtr& ring, const PrimeId& p,
                    const std::vector<Poly>& gens) {
  RingModel model = model_of(normalize(ring));
  if (!model.present)
    throw unknown_error("containment needs element arithmetic");
  Ideal ideal = model.ideal_with(p.gens);
  for (const auto& g : gens)
    if (!ideal.contains(g.mapped_to(model.poly))) return false;
  return true;
}

bool prime_equal(const RingDescPtr& ring, const PrimeId& a,
                 const PrimeId& b) {
  return prime_contains(ring, a, b.gens) && prime_contains(ring, b, a.gens);
}

}  // namespace cosupp
