#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cosupp/ring.hpp"

namespace cosupp {

/// Symbolic subsets of Spec(R): the output vocabulary for support and
/// cosupport queries.  Membership is three-valued.
struct SpecSet {
  enum class Kind {
    Full,
    Empty,
    ClosedV,    // V(I)
    FiniteSet,  // explicit list of primes
    DownSet,    // all primes contained in a fixed prime
    Pullback,   // preimage along a ring map, kept opaque
    Intersect,
    Partial,  // decided yes/no lists plus notes about symbolic families
  };

  Kind kind = Kind::Empty;
  RingDescPtr ring;

  Ideal ideal;                   // ClosedV: reduced-GB generators
  std::vector<PrimeId> primes;   // FiniteSet / Partial yes-list
  std::optional<PrimeId> down;   // DownSet
  std::shared_ptr<RingMap> map;  // Pullback
  std::shared_ptr<SpecSet> inner;
  std::vector<SpecSet> parts;  // Intersect

  std::vector<PrimeId> no_primes;  // Partial no-list
  std::vector<std::string> family_notes;
  std::string not_closed_certificate;  // nonempty: witnessed non-closedness

  std::string repr() const;
};

SpecSet specset_full(RingDescPtr ring);
SpecSet specset_empty(RingDescPtr ring);
SpecSet specset_closed(RingDescPtr ring, std::vector<Poly> gens);
SpecSet specset_finite(RingDescPtr ring, std::vector<PrimeId> primes);
SpecSet specset_down(PrimeId p);
SpecSet specset_opaque_pullback(RingMap f, SpecSet inner);
SpecSet specset_partial(RingDescPtr ring, std::vector<PrimeId> yes,
                        std::vector<PrimeId> no,
                        std::vector<std::string> notes = {},
                        std::string not_closed_certificate = "");

Tri specset_member(const SpecSet& s, const PrimeId& p);
SpecSet specset_intersect(const SpecSet& a, const SpecSet& b);
SpecSet specset_pullback(const RingMap& f, const SpecSet& s);

struct Closedness {
  Tri value = Tri::unknown("not evaluated");
  std::optional<Ideal> witness;  // defining ideal when closed and computable
  std::string certificate;       // non-closedness certificate when false
};

Closedness specset_is_closed(const SpecSet& s);

}  // namespace cosupp
