#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "cosupp/poly.hpp"
#include "cosupp/tri.hpp"

namespace cosupp {

/// Global reduction-step budget for a single top-level computation.
/// Exceeding it raises resource_limit_error instead of spinning.
struct StepBudget {
  long remaining = 100000;
  void spend(long n = 1);
};

StepBudget& step_budget();
void reset_step_budget(long steps = 100000);

/// Remainder of f on division by G; no term of the result is divisible by
/// any leading term of G.  Returns f itself when G is empty.
Poly poly_normal_form(const Poly& f, const std::vector<Poly>& basis,
                      const MonomialOrder& order);

/// An ideal of a polynomial ring with per-order cached reduced Groebner
/// bases.  Values are immutable; the cache populates once per order.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingRef ring, std::vector<Poly> gens);

  const RingRef& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }

  /// Reduced Groebner basis (monic, auto-reduced, sorted by leading term).
  const std::vector<Poly>& groebner_basis(
      const MonomialOrder& order = MonomialOrder::grevlex()) const;

  bool is_zero() const;
  Tri is_unit() const;  // unknown until a basis has been computed
  bool contains(const Poly& f,
                const MonomialOrder& order = MonomialOrder::grevlex()) const;
  bool contains(const Ideal& other) const;
  bool equals(const Ideal& other) const;

  std::string str() const;

 private:
  RingRef ring_;
  std::vector<Poly> gens_;

  struct Cache {
    std::mutex mu;
    std::map<std::string, std::vector<Poly>> bases;
    std::optional<bool> unit;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

Ideal buchberger(RingRef ring, std::vector<Poly> gens,
                 const MonomialOrder& order = MonomialOrder::grevlex());

enum class IdealOp { Sum, Product, Intersection };
Ideal ideal_arith(IdealOp op, const Ideal& a, const Ideal& b);

/// I ∩ k[remaining vars]; the result lives in the subring without the
/// dropped variables.
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop_vars);

/// Krull dimension of (ambient ring)/I via independent variable sets modulo
/// the leading-term ideal.  The unit ideal has empty spectrum and errors.
int krull_dim(const Ideal& ideal);

bool radical_member(const Poly& f, const Ideal& ideal);

/// Ideal of maximal minors of an n x m presentation matrix (rows index
/// generators).  m < n gives the zero ideal; n == 0 the unit ideal.
Ideal fitting0(RingRef ring, const std::vector<std::vector<Poly>>& pres);

Poly determinant(const std::vector<std::vector<Poly>>& mat);

}  // namespace cosupp
