#include "cosupp/engine.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace cosupp {

namespace {

std::string prime_key(const RingDescPtr& ring, const PrimeId& p) {
  RingModel m = model_of(ring);
  std::ostringstream os;
  if (m.present) {
    Ideal canonical = m.ideal_with(p.gens);
    for (const auto& g : canonical.groebner_basis()) os << g.str() << ";";
  } else {
    for (const auto& g : p.sym_gens) os << g << ";";
  }
  return os.str();
}

std::string memo_key(const RingDescPtr& ring, const PrimeId& p,
                     const EngineOptions& opts) {
  return ring->repr() + "|" + prime_key(ring, p) + "|" +
         (opts.assume_gruson_jensen ? "gj" : "-");
}

std::mutex memo_mu;
std::map<std::string, Membership>& memo_table() {
  static std::map<std::string, Membership> table;
  return table;
}

void note_assumptions(const PrimeId& p, Membership& m) {
  if (p.status == PrimeStatus::Asserted && !p.is_zero_ideal())
    m.assumptions.push_back("primality of " + p.repr() + " asserted");
}

TraceStep step(std::string rule, std::string anchor,
               std::vector<std::string> premises, bool conjecture = false) {
  return TraceStep{std::move(rule), std::move(anchor), std::move(premises),
                   conjecture};
}

/// Decides "R is not complete local" per the engine's convention: locality
/// unknown means abstain; a certified local ring is complete exactly when
/// its maximal ideal lies inside the certified completeness ideal.
Tri not_complete_local(const AttrReport& attrs, const RingModel& model) {
  if (attrs.is_local.is_unknown())
    return Tri::unknown("locality undecided: " + attrs.is_local.reason());
  if (attrs.is_local.is_false()) return Tri::yes();
  if (model.present) return Tri::of(!attrs.complete_local(model));
  // attribute-only local ring: complete only when the maximal ideal is zero
  return Tri::yes();
}

bool is_field_poly2(const RingDescPtr& ring) {
  return ring->kind == RingDesc::Kind::PolyExt && ring->vars.size() == 2 &&
         ring->base->kind == RingDesc::Kind::BaseField;
}

bool finite_type_domain_over_field(const RingDescPtr& ring,
                                   const AttrReport& attrs,
                                   bool domain_asserted) {
  if (ring->kind != RingDesc::Kind::PolyExt &&
      !(ring->kind == RingDesc::Kind::Quotient &&
        ring->base->kind == RingDesc::Kind::PolyExt))
    return false;
  const RingDescPtr& poly = ring->kind == RingDesc::Kind::PolyExt
                                ? ring
                                : ring->base;
  if (poly->base->kind != RingDesc::Kind::BaseField) return false;
  return attrs.is_domain.is_true() || domain_asserted;
}

/// Full-cosupport rules for the whole ring; a hit answers yes for every
/// prime.  Returns the fired step, or collects frontier notes.
std::optional<TraceStep> ring_full_cosupport(
    const RingDescPtr& ring, const AttrReport& attrs, const RingModel& model,
    const EngineOptions& opts, bool domain_asserted,
    std::vector<std::string>* frontier, std::vector<std::string>* assumptions) {
  if (attrs.countable.is_true())
    return step("RULE-COUNTABLE", "Theorem 4.5(1)",
                {ring->repr() + " is countable"});
  if (frontier)
    frontier->push_back("RULE-COUNTABLE: countability of " + ring->repr() +
                        " is " + attrs.countable.str());

  Tri ncl = not_complete_local(attrs, model);
  bool domain = attrs.is_domain.is_true() || domain_asserted;
  if (domain && attrs.dim_exact() && attrs.dim_lo == 1 && ncl.is_true()) {
    if (domain_asserted && !attrs.is_domain.is_true() && assumptions)
      assumptions->push_back("domain property of " + ring->repr() +
                             " rests on an asserted prime");
    return step("RULE-DIM1", "Theorem 4.5(2)",
                {ring->repr() + " is a 1-dimensional domain",
                 "not complete local"});
  }
  if (frontier) {
    if (!domain)
      frontier->push_back("RULE-DIM1: domain property undecided");
    else if (!attrs.dim_exact() || attrs.dim_lo != 1)
      frontier->push_back("RULE-DIM1: dimension is not certified 1");
    else
      frontier->push_back(std::string("RULE-DIM1: completeness status: ") +
                          ncl.str() +
                          (ncl.is_unknown() ? " (" + ncl.reason() + ")" : ""));
  }

  if (is_field_poly2(ring))
    return step("RULE-KXY", "Theorem 4.5(3)",
                {ring->repr() + " is a polynomial ring in two variables "
                                "over a field"});
  if (frontier)
    frontier->push_back(
        "RULE-KXY: ring is not a two-variable polynomial ring over a field");

  if (finite_type_domain_over_field(ring, attrs, domain_asserted)) {
    if (opts.assume_gruson_jensen) {
      if (assumptions)
        assumptions->push_back(
            "Gruson-Jensen conjecture assumed (engine flag)");
      return TraceStep{"RULE-GJ", "Equation (16)",
                       {ring->repr() +
                        " is a finite-type domain over a field"},
                       /*conjecture=*/true};
    }
    if (frontier)
      frontier->push_back(
          "RULE-GJ: would apply to this finite-type domain, but the "
          "conjecture flag is off");
  }
  return std::nullopt;
}

Membership member_impl(const RingDescPtr& ring, const PrimeId& p,
                       const EngineOptions& opts, int depth, bool use_memo);

Membership member_recurse(const RingDescPtr& ring, const PrimeId& p,
                          const EngineOptions& opts, int depth,
                          bool use_memo) {
  return member_impl(normalize(ring), p, opts, depth, use_memo);
}

Membership zero_prime_verdict(const RingDescPtr& ring,
                              const EngineOptions& opts, int depth,
                              bool use_memo, bool domain_asserted,
                              std::vector<std::string> carried_assumptions) {
  Membership m;
  m.assumptions = std::move(carried_assumptions);
  const AttrReport& attrs = infer_attrs(ring);
  RingModel model = model_of(ring);

  if (attrs.is_field.is_true()) {
    m.verdict = Tri::yes();
    m.trace.push_back(step("RULE-FIELD", "Remark 4.3.2",
                           {ring->repr() + " is a field; (0) is maximal"}));
    return m;
  }

  // refutations first
  Tri ncl = not_complete_local(attrs, model);
  if (ncl.is_false() && attrs.dim_lo >= 1) {
    m.verdict = Tri::no();
    m.trace.push_back(step(
        "RULE-COMPLOC", "Example 5.2",
        {ring->repr() + " is complete local of dimension >= 1",
         "(0) is not among its maximal ideals"}));
    return m;
  }
  if (!attrs.c_known.empty()) {
    std::ostringstream c;
    for (size_t i = 0; i < attrs.c_known.size(); ++i)
      c << (i ? "," : "") << attrs.c_known[i].str();
    m.verdict = Tri::no();
    m.trace.push_back(step("RULE-UPPER", "Inclusion (10)",
                           {"(0) does not contain the completeness ideal (" +
                            c.str() + ")"}));
    return m;
  }

  if (auto fired = ring_full_cosupport(ring, attrs, model, opts,
                                       domain_asserted, &m.frontier,
                                       &m.assumptions)) {
    m.verdict = Tri::yes();
    m.trace.push_back(*fired);
    m.frontier.clear();
    return m;
  }

  bool has_ps = false;
  for (char c : model.ps_mask) has_ps |= c != 0;
  if (has_ps)
    m.frontier.push_back(
        "open: whether only 0-complete rings fail to have full cosupport "
        "(Section 5 Question)");
  m.verdict = Tri::unknown("no rule decides (0) in " + ring->repr());
  (void)depth;
  (void)use_memo;
  return m;
}

Membership member_impl(const RingDescPtr& ring, const PrimeId& p,
                       const EngineOptions& opts, int depth, bool use_memo) {
  if (p.status == PrimeStatus::Refuted)
    throw error("refuted prime in cosupp_member: " + p.repr());
  if (depth > opts.max_reduction_depth) {
    Membership m;
    m.verdict = Tri::unknown("reduction depth exceeded (" +
                             std::to_string(opts.max_reduction_depth) + ")");
    return m;
  }

  std::string key = memo_key(ring, p, opts);
  if (use_memo) {
    std::lock_guard<std::mutex> lock(memo_mu);
    auto it = memo_table().find(key);
    if (it != memo_table().end()) {
      Membership hit = it->second;
      hit.from_cache = true;
      return hit;
    }
  }

  Membership m;
  note_assumptions(p, m);
  if (check_prime(p).is_false())
    throw error(p.repr() + " is not a prime ideal of " + ring->repr());

  if (p.is_zero_ideal()) {
    Membership z = zero_prime_verdict(ring, opts, depth, use_memo,
                                      /*domain_asserted=*/false,
                                      m.assumptions);
    if (use_memo) {
      std::lock_guard<std::mutex> lock(memo_mu);
      memo_table()[key] = z;
    }
    return z;
  }

  const AttrReport& attrs = infer_attrs(ring);
  RingModel model = model_of(ring);

  // RULE-UPPER: refute primes missing the certified completeness ideal
  bool above_c = true;
  if (!attrs.c_known.empty()) {
    above_c = prime_contains(ring, p, attrs.c_known);
    if (!above_c) {
      std::ostringstream c;
      for (size_t i = 0; i < attrs.c_known.size(); ++i)
        c << (i ? "," : "") << attrs.c_known[i].str();
      m.verdict = Tri::no();
      m.trace.push_back(step("RULE-UPPER", "Inclusion (10)",
                             {p.repr() + " does not contain the "
                                         "completeness ideal (" +
                              c.str() + ")"}));
      if (use_memo) {
        std::lock_guard<std::mutex> lock(memo_mu);
        memo_table()[key] = m;
      }
      return m;
    }
  }

  if (auto fired = ring_full_cosupport(ring, attrs, model, opts,
                                       /*domain_asserted=*/false, nullptr,
                                       &m.assumptions)) {
    m.verdict = Tri::yes();
    m.trace.push_back(*fired);
    if (use_memo) {
      std::lock_guard<std::mutex> lock(memo_mu);
      memo_table()[key] = m;
    }
    return m;
  }

  Tri mx = Tri::unknown("not evaluated");
  try {
    mx = is_maximal(ring, p);
  } catch (const unknown_error& e) {
    mx = Tri::unknown(e.what());
  }
  if (mx.is_true()) {
    // no-conflict assertion: maximal ideals always contain c_known
    if (!above_c)
      throw error("rule conflict: maximal ideal outside V(c)");
    m.verdict = Tri::yes();
    m.trace.push_back(step("RULE-MAX", "Remark 4.3.2",
                           {p.repr() + " is a maximal ideal of " +
                            ring->repr()}));
    if (use_memo) {
      std::lock_guard<std::mutex> lock(memo_mu);
      memo_table()[key] = m;
    }
    return m;
  }

  // transfer through the completeness quotient when the ring is complete
  // along a computable layer
  if (!attrs.c_known.empty()) {
    if (auto red = computable_core(ring)) {
      RingModel dst = model_of(red->core);
      PrimeId image;
      image.ring = red->core;
      for (const auto& g : p.gens) {
        Poly h = project_poly(model, dst, g);
        if (!h.is_zero()) image.gens.push_back(h);
      }
      image.status = p.status;
      Membership sub = member_recurse(red->core, image, opts, depth + 1,
                                      use_memo);
      m.verdict = sub.verdict;
      m.trace.push_back(step("RULE-COMPLETE-IDEAL", "Proposition 5.2",
                             {ring->repr() + " is complete along (" +
                              red->core->repr() +
                              " kernel); query transfers to " +
                              image.repr() + " in " + red->core->repr()}));
      m.trace.insert(m.trace.end(), sub.trace.begin(), sub.trace.end());
      m.assumptions.insert(m.assumptions.end(), sub.assumptions.begin(),
                           sub.assumptions.end());
      m.frontier = sub.frontier;
      if (use_memo) {
        std::lock_guard<std::mutex> lock(memo_mu);
        memo_table()[key] = m;
      }
      return m;
    }
  }

  // REDUCE-QUOT: pass to the quotient domain and ask about its zero ideal
  RingDescPtr quot;
  try {
    quot = normalize(quotient_ring(ring, p.gens));
  } catch (const unknown_error& e) {
    m.verdict = Tri::unknown(std::string("cannot form the quotient: ") +
                             e.what());
    m.frontier.push_back(std::string("REDUCE-QUOT: ") + e.what());
    return m;
  }
  m.trace.push_back(step("REDUCE-QUOT", "Remark 4.3.1",
                         {"membership of " + p.repr() + " in cosupp " +
                          ring->repr() + " reduces to (0) in " +
                          quot->repr()}));
  Membership sub = zero_prime_verdict(quot, opts, depth + 1, use_memo,
                                      /*domain_asserted=*/true, {});
  m.verdict = sub.verdict;
  m.trace.insert(m.trace.end(), sub.trace.begin(), sub.trace.end());
  m.assumptions.insert(m.assumptions.end(), sub.assumptions.begin(),
                       sub.assumptions.end());
  m.frontier = sub.frontier;
  if (use_memo) {
    std::lock_guard<std::mutex> lock(memo_mu);
    memo_table()[key] = m;
  }
  return m;
}

}  // namespace

Membership cosupp_member(const RingDescPtr& ring, const PrimeId& p,
                         const EngineOptions& opts) {
  return member_impl(normalize(ring), p, opts, 0, /*use_memo=*/true);
}

Membership cosupp_member_along(const RingMap& f, const PrimeId& q,
                               const EngineOptions& opts) {
  if (!f.asserted_finite)
    throw error("cosupport transfer needs a finite map");
  PrimeId contracted = contract_prime(f, q);
  Membership sub = cosupp_member(f.source, contracted, opts);
  Membership m;
  m.verdict = sub.verdict;
  m.trace.push_back(step("RULE-FINITE-MAP", "Lemma 4.3",
                         {q.repr() + " in " + f.target->repr() +
                          " contracts to " + contracted.repr() + " in " +
                          f.source->repr()}));
  m.trace.insert(m.trace.end(), sub.trace.begin(), sub.trace.end());
  m.assumptions = sub.assumptions;
  if (f.kind == RingMap::Kind::FiniteMap)
    m.assumptions.push_back("finiteness of " + f.repr() + " asserted");
  m.frontier = sub.frontier;
  return m;
}

bool replay_membership(const RingDescPtr& ring, const PrimeId& p,
                       const EngineOptions& opts, const Membership& m) {
  Membership redo = member_impl(normalize(ring), p, opts, 0,
                                /*use_memo=*/false);
  if (redo.verdict.str() != m.verdict.str()) return false;
  if (redo.trace.size() != m.trace.size()) return false;
  for (size_t i = 0; i < m.trace.size(); ++i) {
    if (redo.trace[i].rule_id != m.trace[i].rule_id) return false;
    if (redo.trace[i].paper_anchor != m.trace[i].paper_anchor) return false;
    if (redo.trace[i].premises != m.trace[i].premises) return false;
  }
  return true;
}

void clear_engine_memo() {
  std::lock_guard<std::mutex> lock(memo_mu);
  memo_table().clear();
}

DescribeResult cosupp_describe(const RingDescPtr& ring,
                               const EngineOptions& opts,
                               const DescribeAux& aux) {
  RingDescPtr n = normalize(ring);
  DescribeResult out;
  const AttrReport& attrs = infer_attrs(n);
  RingModel model = model_of(n);

  if (attrs.is_field.is_true()) {
    out.set = specset_full(n);
    out.exact = Tri::yes();
    out.trace.push_back(step("RULE-FIELD", "Remark 4.3.2",
                             {n->repr() + " is a field"}));
    return out;
  }
  if (auto fired = ring_full_cosupport(n, attrs, model, opts,
                                       /*domain_asserted=*/false, nullptr,
                                       &out.assumptions)) {
    out.set = specset_full(n);
    out.exact = Tri::yes();
    out.trace.push_back(*fired);
    return out;
  }

  if (model.present && attrs.complete_local(model) && attrs.dim_lo >= 1) {
    PrimeId mx = make_prime(n, attrs.maximal_ideal, PrimeStatus::Verified);
    out.set = specset_finite(n, {mx});
    out.exact = Tri::yes();
    out.trace.push_back(step(
        "RULE-COMPLOC", "Example 5.2",
        {n->repr() + " is complete local; cosupport is its maximal ideal"}));
    return out;
  }

  if (!attrs.c_known.empty()) {
    if (auto red = computable_core(n)) {
      DescribeResult inner = cosupp_describe(red->core, opts, {});
      if (inner.set.kind == SpecSet::Kind::Full) {
        out.set = specset_closed(n, attrs.c_known);
        out.exact = attrs.c_exact;
        out.trace.push_back(step(
            "RULE-COMPLETE-IDEAL", "Proposition 5.2",
            {"cosupport transfers from " + red->core->repr(),
             "quotient by the completeness ideal has full cosupport"}));
        out.trace.insert(out.trace.end(), inner.trace.begin(),
                         inner.trace.end());
        out.assumptions.insert(out.assumptions.end(),
                               inner.assumptions.begin(),
                               inner.assumptions.end());
        return out;
      }
    }
  }

  // partial description from the probe battery plus the generic point
  std::vector<PrimeId> yes, no;
  std::vector<std::string> notes;
  std::vector<PrimeId> probes = aux.battery;
  probes.push_back(zero_prime(n));
  for (const auto& p : probes) {
    Membership verdict = cosupp_member(n, p, opts);
    if (verdict.verdict.is_true())
      yes.push_back(p);
    else if (verdict.verdict.is_false())
      no.push_back(p);
    else
      notes.push_back("undecided probe " + p.repr() + ": " +
                      verdict.verdict.reason());
  }
  out.set = specset_partial(n, std::move(yes), std::move(no),
                            std::move(notes), aux.not_closed_certificate);
  out.exact = Tri::unknown("partial description from probes only");
  out.trace.push_back(step("DESCRIBE-PARTIAL", "Section 5",
                           {"no structural rule resolves the cosupport of " +
                            n->repr() + "; probes recorded"}));
  return out;
}

SpecSet supp_module(const RingDescPtr& ring, const Presentation& pres) {
  RingDescPtr n = normalize(ring);
  RingModel model = model_of(n);
  if (!model.present)
    throw unknown_error("support needs a computable ring");
  Ideal fit = fitting0(model.poly, pres);
  if (fit.contains(Poly::constant(model.poly, 1))) return specset_empty(n);
  if (fit.is_zero()) return specset_full(n);
  return specset_closed(n, fit.gens());
}

SpecSet cosupp_module(const RingDescPtr& ring, const Presentation& pres,
                      const EngineOptions& opts, bool assert_perfect) {
  RingDescPtr n = normalize(ring);
  const AttrReport& attrs = infer_attrs(n);
  if (attrs.dim_hi >= kDimInfinite && !assert_perfect)
    throw unknown_error(
        "cosupport of a module needs finite Krull dimension or an asserted "
        "perfect complex (Corollary 4.2 hypotheses)");
  SpecSet supp = supp_module(n, pres);
  DescribeResult cos = cosupp_describe(n, opts, {});
  return specset_intersect(supp, cos.set);
}

SpecSet cosupp_tensor(const RingDescPtr& ring, const Presentation& x_pres,
                      const SpecSet& y_cosupp, const EngineOptions& opts,
                      bool hypothesis_asserted) {
  (void)opts;
  RingDescPtr n = normalize(ring);
  const AttrReport& attrs = infer_attrs(n);
  if (attrs.dim_hi >= kDimInfinite && !hypothesis_asserted)
    throw unknown_error(
        "tensor cosupport needs finite Krull dimension or an asserted "
        "hypothesis (Section 4 Proposition)");
  return specset_intersect(supp_module(n, x_pres), y_cosupp);
}

SpecSet cosupp_kappa(const RingDescPtr& ring, const PrimeId& p) {
  RingDescPtr n = normalize(ring);
  if (infer_attrs(n).dim_hi >= kDimInfinite)
    throw unknown_error(
        "residue-field cosupport needs finite Krull dimension");
  return specset_finite(n, {p});
}

SpecSet cosupp_injective(const RingDescPtr& ring, const PrimeId& p) {
  RingDescPtr n = normalize(ring);
  if (infer_attrs(n).dim_hi >= kDimInfinite)
    throw unknown_error(
        "injective-hull cosupport needs finite Krull dimension");
  PrimeId q = p;
  q.ring = n;
  return specset_down(q);
}

CrResult cr_criterion(const RingDescPtr& ring, const EngineOptions& opts,
                      const std::vector<PrimeId>& battery) {
  RingDescPtr n = normalize(ring);
  CrResult out;
  const AttrReport& attrs = infer_attrs(n);
  if (!attrs.c_exact.is_true()) {
    out.value = Tri::unknown("completeness ideal not certified exact: " +
                             attrs.c_exact.reason());
    return out;
  }
  RingDescPtr quotient;
  if (attrs.c_known.empty()) {
    quotient = n;
    out.notes.push_back("completeness ideal is zero; criterion asks "
                        "whether the ring itself has full cosupport");
  } else if (auto red = computable_core(n)) {
    quotient = red->core;
  } else {
    quotient = normalize(quotient_ring(n, attrs.c_known));
  }
  DescribeResult d = cosupp_describe(quotient, opts, {});
  if (d.set.kind == SpecSet::Kind::Full) {
    out.value = Tri::yes();
    out.notes.push_back("quotient by the completeness ideal has full "
                        "cosupport; cosupp R = V(c_R) (Proposition 4.4)");
    return out;
  }
  // look for a refuted prime inside V(c)
  for (const auto& p : battery) {
    bool above = true;
    if (!attrs.c_known.empty()) above = prime_contains(n, p, attrs.c_known);
    if (!above) continue;
    Membership verdict = cosupp_member(n, p, opts);
    if (verdict.verdict.is_false()) {
      out.value = Tri::no();
      out.witness = p;
      out.notes.push_back("prime " + p.repr() +
                          " lies in V(c_R) but not in the cosupport; the "
                          "inclusion is strict");
      return out;
    }
  }
  out.value = Tri::unknown(
      "quotient cosupport unresolved and no witness found in the battery");
  return out;
}

NotClosedCert notclosed_witness(const RingDescPtr& ring,
                                const std::function<PrimeId(int)>& family,
                                const std::string& family_desc, int n_samples,
                                const PrimeId& no_prime,
                                const EngineOptions& opts) {
  RingDescPtr n = normalize(ring);
  NotClosedCert cert;
  cert.description = family_desc;
  cert.samples = n_samples;
  RingModel model = model_of(n);
  if (!model.present) {
    cert.failure_step = "instantiation: ring has no computable model";
    return cert;
  }
  std::optional<Ideal> running;
  for (int i = 1; i <= n_samples; ++i) {
    PrimeId p = family(i);
    Tri mx = is_maximal(n, p);
    if (!mx.is_true()) {
      cert.failure_step = "maximality of member " + std::to_string(i) +
                          " (" + p.repr() + "): " + mx.str();
      return cert;
    }
    cert.checks.push_back("member " + std::to_string(i) + " " + p.repr() +
                          ": maximal");
    Membership verdict = cosupp_member(n, p, opts);
    if (!verdict.verdict.is_true()) {
      cert.failure_step = "cosupport membership of member " +
                          std::to_string(i) + ": " + verdict.verdict.str();
      return cert;
    }
    cert.checks.push_back("member " + std::to_string(i) +
                          ": in the cosupport");
    Ideal pi = model.ideal_with(p.gens);
    if (!running) {
      running = pi;
    } else {
      Ideal next = ideal_arith(IdealOp::Intersection, *running, pi);
      if (next.equals(*running)) {
        cert.failure_step = "strict decrease of the running intersection "
                            "fails at member " +
                            std::to_string(i);
        return cert;
      }
      running = next;
    }
  }
  cert.checks.push_back("running intersection strictly decreasing over " +
                        std::to_string(n_samples) + " samples");
  Membership excluded = cosupp_member(n, no_prime, opts);
  if (!excluded.verdict.is_false()) {
    cert.failure_step = "excluded prime " + no_prime.repr() +
                        " verdict: " + excluded.verdict.str();
    return cert;
  }
  cert.checks.push_back("excluded prime " + no_prime.repr() +
                        ": not in the cosupport");
  cert.checks.push_back(
      "ideal arithmetic performed in the polynomial subring of the model; "
      "the limit-is-zero step is paper-justified (Example 5.4), not "
      "machine-checked");
  cert.ok = true;
  return cert;
}

}  // namespace cosupp
