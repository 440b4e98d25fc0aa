#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cosupp/specset.hpp"

namespace cosupp {

/// One derivation step.  `rule_id` and `paper_anchor` strings are a stable
/// public contract; the catalog lives in docs/rules.md.
struct TraceStep {
  std::string rule_id;
  std::string paper_anchor;
  std::vector<std::string> premises;
  bool conjecture = false;
};

struct Membership {
  Tri verdict = Tri::unknown("not evaluated");
  std::vector<TraceStep> trace;
  std::vector<std::string> assumptions;
  std::vector<std::string> frontier;  // failed rules when unknown
  bool from_cache = false;
};

struct EngineOptions {
  bool assume_gruson_jensen = false;
  int max_reduction_depth = 32;
};

/// Is p in the cosupport of R (as a module over itself)?  Saturating rule
/// application with memoization on the canonical (ring, prime) pair.
Membership cosupp_member(const RingDescPtr& ring, const PrimeId& p,
                         const EngineOptions& opts = {});

/// Membership along a finite map f: R -> S for a prime q of S, decided by
/// contraction to R.
Membership cosupp_member_along(const RingMap& f, const PrimeId& q,
                               const EngineOptions& opts = {});

/// Re-derives the verdict from scratch (memo bypassed) and checks that the
/// same rules fire in the same order with the same outcome.
bool replay_membership(const RingDescPtr& ring, const PrimeId& p,
                       const EngineOptions& opts, const Membership& m);

void clear_engine_memo();

struct DescribeAux {
  std::vector<PrimeId> battery;  // probe primes for partial descriptions
  std::string not_closed_certificate;
};

struct DescribeResult {
  SpecSet set;
  Tri exact = Tri::unknown("not evaluated");
  std::vector<TraceStep> trace;
  std::vector<std::string> assumptions;
};

DescribeResult cosupp_describe(const RingDescPtr& ring,
                               const EngineOptions& opts = {},
                               const DescribeAux& aux = {});

/// Rows index module generators; a presentation of coker.
using Presentation = std::vector<std::vector<Poly>>;

SpecSet supp_module(const RingDescPtr& ring, const Presentation& pres);

SpecSet cosupp_module(const RingDescPtr& ring, const Presentation& pres,
                      const EngineOptions& opts = {},
                      bool assert_perfect = false);

SpecSet cosupp_tensor(const RingDescPtr& ring, const Presentation& x_pres,
                      const SpecSet& y_cosupp,
                      const EngineOptions& opts = {},
                      bool hypothesis_asserted = false);

SpecSet cosupp_kappa(const RingDescPtr& ring, const PrimeId& p);

SpecSet cosupp_injective(const RingDescPtr& ring, const PrimeId& p);

struct CrResult {
  Tri value = Tri::unknown("not evaluated");
  std::optional<PrimeId> witness;  // verdict-no prime inside V(c) when false
  std::vector<std::string> notes;
};

CrResult cr_criterion(const RingDescPtr& ring, const EngineOptions& opts = {},
                      const std::vector<PrimeId>& battery = {});

struct NotClosedCert {
  bool ok = false;
  std::string failure_step;  // names the failed check when !ok
  std::string description;
  int samples = 0;
  std::vector<std::string> checks;
};

/// Certifies non-closedness of the cosupport via an infinite family of
/// cosupport maximal ideals with shrinking intersection plus one excluded
/// prime.  The limit-is-zero step is paper-justified, not machine-checked.
NotClosedCert notclosed_witness(const RingDescPtr& ring,
                                const std::function<PrimeId(int)>& family,
                                const std::string& family_desc, int n_samples,
                                const PrimeId& no_prime,
                                const EngineOptions& opts = {});

}  // namespace cosupp
