#pragma once

// Test-only oracles, kept independent of the implementation paths they
// check.

#include <vector>

#include "cosupp/groebner.hpp"
#include "cosupp/poly.hpp"

namespace cosupp::testing {

// Fixpoint term rewriting: repeatedly replace *any* term divisible by a
// leading term of the basis, scanning terms in storage order rather than by
// the monomial order.  On a Groebner basis the normal form is unique, so
// zero-ness agrees with the engine's division route while exercising a
// different reduction strategy.
inline Poly rewrite_normal_form(const Poly& f, const std::vector<Poly>& basis,
                                const MonomialOrder& order) {
  std::vector<std::pair<Monomial, Rat>> lts;
  for (const auto& g : basis) lts.push_back(g.leading_term(order));
  Poly h = f;
  bool changed = true;
  long fuel = 200000;
  while (changed) {
    changed = false;
    for (const auto& [m, c] : h.terms()) {
      for (size_t i = 0; i < basis.size(); ++i) {
        if (monomial_divides(lts[i].first, m)) {
          h = h - basis[i].times_term(monomial_quotient(m, lts[i].first),
                                      c / lts[i].second);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
    if (--fuel < 0) throw error("oracle rewrite diverged");
  }
  return h;
}

inline bool oracle_member(const Poly& f, const Ideal& ideal,
                          const MonomialOrder& order) {
  return rewrite_normal_form(f, ideal.groebner_basis(order), order).is_zero();
}

}  // namespace cosupp::testing
