#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosupp/ring.hpp"

namespace cosupp {

/// Index-set sizes for product components.  Only the distinctions the
/// decomposition theory consumes: empty / finite / countable / named.
struct CardTag {
  enum class Kind { Zero, Finite, CountablyInfinite, Symbolic };
  Kind kind = Kind::Zero;
  long n = 0;        // Finite
  std::string name;  // Symbolic

  static CardTag zero() { return {}; }
  static CardTag finite(long n) { return {Kind::Finite, n, ""}; }
  static CardTag countable() { return {Kind::CountablyInfinite, 0, ""}; }
  static CardTag symbolic(std::string name) {
    return {Kind::Symbolic, 0, std::move(name)};
  }

  bool is_zero() const { return kind == Kind::Zero; }
  std::string str() const;
  bool operator==(const CardTag& o) const {
    return kind == o.kind && n == o.n && name == o.name;
  }
};

CardTag card_add(const CardTag& a, const CardTag& b);

/// A cotorsion flat module in decomposed form: a finite product of
/// completed free local pieces, one per listed prime.
struct CFModule {
  RingDescPtr ring;
  struct Component {
    PrimeId prime;
    CardTag card;
  };
  std::vector<Component> components;

  bool is_zero_module() const { return components.empty(); }
  std::string repr() const;
};

CFModule cf_make_module(RingDescPtr ring,
                        std::vector<CFModule::Component> components);

enum class DiffTag { Zero, NonzeroModP, ZeroModP_Nonzero, Unknown };

const char* diff_tag_str(DiffTag t);

/// A complex of cotorsion flat modules with symbolic differential data.
/// Differential entries are tags per component pair; unset entries are Zero.
struct CFComplex {
  RingDescPtr ring;
  int lo = 0, hi = 0;
  bool bounded_left = true;
  Tri semiflat = Tri::unknown("semiflatness not asserted");
  std::map<int, CFModule> modules;  // absent degree: zero module

  struct DiffEntry {
    int degree;     // map from degree to degree + 1
    PrimeId from;   // component prime at `degree`
    PrimeId to;     // component prime at `degree + 1`
    DiffTag tag;
  };
  std::vector<DiffEntry> diffs;
};

CFComplex cf_make_complex(RingDescPtr ring, int lo,
                          std::vector<CFModule> modules, bool bounded_left,
                          Tri semiflat);

/// Records a differential tag; incomparable prime pairs admit only Zero.
void cf_set_diff(CFComplex& b, int degree, const PrimeId& from,
                 const PrimeId& to, DiffTag tag);

DiffTag cf_diff_tag(const CFComplex& b, int degree, const PrimeId& from,
                    const PrimeId& to);

/// Completion filter: keeps components at primes containing p.
CFModule cf_completion(const CFModule& t, const PrimeId& p);

/// Colocalization filter: keeps components at primes contained in p.
CFModule cf_colocalize(const CFModule& t, const PrimeId& p);

/// Base change along a surjection: components survive on their fibers,
/// duplicate primes merge with cardinal addition.
CFModule cf_basechange(
    const CFModule& t, const RingMap& f,
    const std::optional<std::vector<std::vector<PrimeId>>>& fibers =
        std::nullopt);

/// Minimality: each same-prime differential entry dies after reduction.
Tri cf_is_minimal(const CFComplex& b);

struct CFPrimesResult {
  std::vector<PrimeId> primes;
  Tri equals_cosupport = Tri::unknown("hypotheses not checked");
  std::vector<std::string> hypothesis_log;
};

/// Primes with a nonzero component in some degree, flagged as the cosupport
/// of the represented complex when the detection hypotheses check out.
CFPrimesResult cf_primes(const CFComplex& b);

/// A single module whose one-degree complex has exactly the given primes.
CFModule cf_prescribe(RingDescPtr ring, const std::vector<PrimeId>& w);

}  // namespace cosupp
