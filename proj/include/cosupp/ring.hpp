#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cosupp/groebner.hpp"
#include "cosupp/poly.hpp"
#include "cosupp/tri.hpp"

namespace cosupp {

enum class Cardinality { Finite, Countable, Uncountable, Unknown };

struct RingDesc;
using RingDescPtr = std::shared_ptr<const RingDesc>;

/// AST of ring constructions.  Values are immutable; `normalize` produces
/// the canonical form used for memoization and structural rules.
struct RingDesc {
  enum class Kind {
    BaseField,
    BaseZ,  // attribute-only integers
    PolyExt,
    PowerSeriesExt,
    Quotient,
    LocalizeAtPrime,  // attribute-only
  };
  enum class FieldKind { Rationals, PrimeField, Abstract };

  Kind kind = Kind::BaseField;

  // BaseField payload
  FieldKind field_kind = FieldKind::Rationals;
  unsigned characteristic = 0;
  Cardinality abstract_card = Cardinality::Unknown;

  // extensions
  RingDescPtr base;
  std::vector<std::string> vars;        // PolyExt / PowerSeriesExt
  std::vector<Poly> quotient_gens;      // Quotient, in the base's model ring
  std::vector<std::string> local_gens;  // LocalizeAtPrime (symbolic)

  std::string repr() const;
};

RingDescPtr ring_rationals();
RingDescPtr ring_prime_field(unsigned p);
RingDescPtr ring_abstract_field(Cardinality card);
RingDescPtr ring_integers();
RingDescPtr poly_ext(RingDescPtr base, std::vector<std::string> vars);
RingDescPtr power_series_ext(RingDescPtr base, std::vector<std::string> vars);
RingDescPtr quotient_ring(RingDescPtr base, std::vector<Poly> gens);
RingDescPtr localize_at(RingDescPtr base, std::vector<std::string> prime_gens);

/// Canonical form: nested quotients composed, bare-variable quotient
/// generators absorbed by dropping the variable, adjacent same-kind
/// extensions merged, empty extensions elided.
RingDescPtr normalize(const RingDescPtr& ring);

/// Element-level view of a described ring: a polynomial ring in all
/// adjoined variables plus quotient relations.  Power-series adjunction is
/// tracked by a mask; abstract-field coefficients are proxied over the
/// rationals for ideal arithmetic (attributes keep the true cardinality).
struct RingModel {
  bool present = false;
  bool proxy_coeffs = false;
  RingRef poly;
  std::vector<Poly> relations;
  std::vector<char> ps_mask;  // per variable: adjoined as power series

  std::vector<std::string> ps_vars() const;
  std::vector<std::string> poly_vars() const;
  /// Ideal of relations + extra generators in the model ring.
  Ideal ideal_with(const std::vector<Poly>& extra) const;
};

RingModel model_of(const RingDescPtr& ring);

/// Transport a polynomial between models whose variable lists are related
/// by dropping variables (dropped variables map to zero).
Poly project_poly(const RingModel& src, const RingModel& dst, const Poly& f);

enum class PrimeStatus { Asserted, Verified, Refuted };

inline const char* status_str(PrimeStatus s) {
  switch (s) {
    case PrimeStatus::Asserted: return "asserted";
    case PrimeStatus::Verified: return "verified";
    default: return "refuted";
  }
}

/// A prime ideal handle: generators plus an assertion/verification status.
struct PrimeId {
  RingDescPtr ring;
  std::vector<Poly> gens;              // model coordinates
  std::vector<std::string> sym_gens;   // attribute-only rings
  PrimeStatus status = PrimeStatus::Asserted;
  std::optional<int> height_hint;

  bool is_zero_ideal() const { return gens.empty() && sym_gens.empty(); }
  std::string repr() const;
};

PrimeId make_prime(RingDescPtr ring, std::vector<Poly> gens,
                   PrimeStatus status = PrimeStatus::Asserted);
PrimeId zero_prime(RingDescPtr ring);

constexpr int kDimInfinite = 1 << 20;

/// Inferred ring attributes.
struct AttrReport {
  Tri countable = Tri::unknown("not inferred");
  int dim_lo = 0, dim_hi = kDimInfinite;
  Tri is_domain = Tri::unknown("not inferred");
  Tri is_field = Tri::unknown("not inferred");
  Tri is_local = Tri::unknown("not inferred");
  std::vector<Poly> maximal_ideal;  // model coords, valid when is_local
  std::vector<Poly> c_known;        // completeness ideal lower bound
  Tri c_exact = Tri::unknown("not inferred");

  bool dim_exact() const { return dim_lo == dim_hi; }
  bool c_known_zero() const { return c_known.empty(); }
  /// local with maximal ideal inside the certified completeness ideal
  bool complete_local(const RingModel& model) const;
};

const AttrReport& infer_attrs(const RingDescPtr& ring);

/// Ring maps: quotient projections (surjective by construction) and finite
/// maps given by generator images with an explicit finiteness assertion.
struct RingMap {
  enum class Kind { QuotientProjection, FiniteMap };
  Kind kind = Kind::QuotientProjection;
  RingDescPtr source, target;
  std::vector<Poly> kernel;  // quotient: generators in the source model
  std::vector<Poly> images;  // finite map: image of each source variable
  bool asserted_finite = false;

  std::string repr() const;
};

RingMap quotient_projection(RingDescPtr source, std::vector<Poly> kernel);
RingMap finite_map(RingDescPtr source, RingDescPtr target,
                   std::vector<Poly> images, bool asserted_finite);

/// The completeness reduction: when c_known != 0 and the quotient by it is
/// tractable, cosupport queries transfer to the quotient ring.
struct CoreReduction {
  RingDescPtr core;
  RingMap projection;
};
std::optional<CoreReduction> computable_core(const RingDescPtr& ring);

PrimeId contract_prime(const RingMap& map, const PrimeId& q);
std::vector<PrimeId> fiber_primes(const RingMap& map, const PrimeId& p);

/// Engine-side primality screening; full primality testing is out of scope,
/// so unknown results proceed on the caller's assertion.
Tri check_prime(const PrimeId& p,
                const std::optional<std::pair<Poly, Poly>>& product_witness =
                    std::nullopt,
                bool irreducibility_certified = false);

Tri is_maximal(const RingDescPtr& ring, const PrimeId& p);

/// Containment p >= (each of gens), modulo the ring's relations.
bool prime_contains(const RingDescPtr& ring, const PrimeId& p,
                    const std::vector<Poly>& gens);

/// Ideal equality of two primes of the same ring.
bool prime_equal(const RingDescPtr& ring, const PrimeId& a, const PrimeId& b);

}  // namespace cosupp
