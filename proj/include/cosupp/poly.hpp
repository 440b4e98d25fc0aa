#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cosupp/error.hpp"

namespace cosupp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exponent vector; length always equals the ambient variable count.
using Monomial = std::vector<unsigned>;

inline unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

/// Ambient polynomial ring: a coefficient field (rationals when
/// characteristic == 0, else F_p) and an ordered variable list.
struct PolyRing {
  unsigned characteristic = 0;
  std::vector<std::string> vars;

  bool operator==(const PolyRing& o) const {
    return characteristic == o.characteristic && vars == o.vars;
  }

  int var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return static_cast<int>(i);
    return -1;
  }
};

using RingRef = std::shared_ptr<const PolyRing>;

inline RingRef make_ring(unsigned characteristic,
                         std::vector<std::string> vars) {
  auto r = std::make_shared<PolyRing>();
  r->characteristic = characteristic;
  r->vars = std::move(vars);
  return r;
}

/// Monomial order: lex, grevlex, or a two-block elimination order where the
/// variables flagged in `first_block` are compared first (each block by the
/// base kind).
struct MonomialOrder {
  enum class Kind { Lex, Grevlex };

  Kind kind = Kind::Grevlex;
  std::vector<char> first_block;  // empty: no block structure

  static MonomialOrder lex() { return {Kind::Lex, {}}; }
  static MonomialOrder grevlex() { return {Kind::Grevlex, {}}; }
  static MonomialOrder elimination(size_t nvars,
                                   const std::vector<int>& eliminated) {
    MonomialOrder o{Kind::Grevlex, std::vector<char>(nvars, 0)};
    for (int i : eliminated) o.first_block[static_cast<size_t>(i)] = 1;
    return o;
  }

  /// Returns <0, 0, >0 as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;

  std::string key() const;
};

/// Sparse multivariate polynomial.  Terms map exponent vectors to nonzero
/// coefficients; prime-field coefficients are kept in [0, p).
class Poly {
 public:
  // Canonical storage order is positionwise-lex-descending; leading terms
  // for a given MonomialOrder are located by scan.
  using TermMap = std::map<Monomial, Rat, std::greater<Monomial>>;

  Poly() = default;
  explicit Poly(RingRef ring) : ring_(std::move(ring)) {}

  static Poly zero(RingRef ring) { return Poly(std::move(ring)); }
  static Poly constant(RingRef ring, const Rat& c);
  static Poly variable(RingRef ring, const std::string& name);
  static Poly term(RingRef ring, Monomial m, const Rat& c);

  const RingRef& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  size_t term_count() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rat& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const {
    return terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(const Rat& c) const;
  /// Multiply by c * x^m.
  Poly times_term(const Monomial& m, const Rat& c) const;

  /// Leading term with respect to the given order; poly must be nonzero.
  std::pair<Monomial, Rat> leading_term(const MonomialOrder& order) const;

  /// Makes the leading coefficient 1.
  Poly monic(const MonomialOrder& order) const;

  /// True when every variable flagged in `mask` has exponent 0 throughout.
  bool avoids_vars(const std::vector<char>& mask) const;

  /// Transport into another ring by variable name; variables absent from the
  /// target must not occur.  Characteristic must match.
  Poly mapped_to(const RingRef& target) const;

  /// Substitute polynomials for variables (evaluation homomorphism).
  Poly substituted(const RingRef& target,
                   const std::vector<Poly>& images) const;

  std::string str() const;

 private:
  Rat normalize_coeff(const Rat& c) const;

  RingRef ring_;
  TermMap terms_;
};

bool same_ring(const Poly& a, const Poly& b);
void require_same_ring(const Poly& a, const Poly& b);

/// Divisibility of monomials: every exponent of a <= the one in b.
inline bool monomial_divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Monomial monomial_quotient(const Monomial& b, const Monomial& a) {
  Monomial q(b.size());
  for (size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
  return q;
}

inline Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
  Monomial l(a.size());
  for (size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

/// Parses "x^2*y + 3", "1 - x*t^2", "2/3*x", ... in the given ring.
Poly parse_poly(const RingRef& ring, const std::string& text);

}  // namespace cosupp
