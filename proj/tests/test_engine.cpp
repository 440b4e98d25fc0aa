#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cosupp/engine.hpp"

using namespace cosupp;

namespace {

Poly P(const RingRef& r, const std::string& s) { return parse_poly(r, s); }

std::vector<std::string> rule_ids(const Membership& m) {
  std::vector<std::string> ids;
  for (const auto& s : m.trace) ids.push_back(s.rule_id);
  return ids;
}

RingDescPtr laurent_tower() {
  return poly_ext(power_series_ext(ring_prime_field(2), {"t"}), {"x"});
}

}  // namespace

TEST_CASE("membership rule selection") {
  SUBCASE("countable polynomial ring") {
    auto r = poly_ext(ring_rationals(), {"x", "y"});
    auto m = model_of(r);
    auto res = cosupp_member(r, make_prime(r, {P(m.poly, "x")}));
    CHECK(res.verdict.is_true());
    CHECK(rule_ids(res) == std::vector<std::string>{"RULE-COUNTABLE"});
    CHECK(res.trace[0].paper_anchor == "Theorem 4.5(1)");
  }
  SUBCASE("power series ring refutes primes under the maximal ideal") {
    auto r = power_series_ext(ring_rationals(), {"x", "y"});
    auto m = model_of(r);
    auto res = cosupp_member(r, make_prime(r, {P(m.poly, "x")}));
    CHECK(res.verdict.is_false());
    CHECK(rule_ids(res) == std::vector<std::string>{"RULE-UPPER"});
    auto yes = cosupp_member(r, make_prime(r, {P(m.poly, "x"),
                                               P(m.poly, "y")}));
    CHECK(yes.verdict.is_true());
    CHECK(rule_ids(yes) == std::vector<std::string>{"RULE-MAX"});
  }
  SUBCASE("polynomial variable over the complete base") {
    auto r = laurent_tower();
    auto m = model_of(r);
    auto res = cosupp_member(r, make_prime(r, {P(m.poly, "x")}));
    CHECK(res.verdict.is_false());
    CHECK(rule_ids(res) ==
          std::vector<std::string>{"REDUCE-QUOT", "RULE-COMPLOC"});
    CHECK(res.trace[0].paper_anchor == "Remark 4.3.1");
    CHECK(res.trace[1].paper_anchor == "Example 5.2");
  }
  SUBCASE("units minus x t^n are cosupport points") {
    auto r = laurent_tower();
    auto m = model_of(r);
    for (int n = 1; n <= 4; ++n) {
      auto p = make_prime(r, {P(m.poly, "1 - x*t^" + std::to_string(n))});
      auto res = cosupp_member(r, p);
      CHECK(res.verdict.is_true());
      CHECK(rule_ids(res) == std::vector<std::string>{"RULE-MAX"});
    }
  }
  SUBCASE("series over an uncountable field stays open at the generic point") {
    auto k = ring_abstract_field(Cardinality::Uncountable);
    auto r = poly_ext(power_series_ext(k, {"t"}), {"x"});
    auto res = cosupp_member(r, zero_prime(r));
    CHECK(res.verdict.is_unknown());
    bool cites_question = false;
    for (const auto& f : res.frontier)
      cites_question =
          cites_question || f.find("Section 5 Question") != std::string::npos;
    CHECK(cites_question);
  }
  SUBCASE("transfer through the completeness quotient") {
    auto r = power_series_ext(poly_ext(ring_rationals(), {"x"}), {"t"});
    auto m = model_of(r);
    auto res = cosupp_member(r, make_prime(r, {P(m.poly, "t")}));
    CHECK(res.verdict.is_true());
    auto ids = rule_ids(res);
    REQUIRE(!ids.empty());
    CHECK(ids[0] == "RULE-COMPLETE-IDEAL");
  }
  SUBCASE("memoization is observable") {
    clear_engine_memo();
    auto r = poly_ext(ring_rationals(), {"x", "y"});
    auto m = model_of(r);
    auto p = make_prime(r, {P(m.poly, "x")});
    CHECK(!cosupp_member(r, p).from_cache);
    CHECK(cosupp_member(r, p).from_cache);
    // an equal ideal with different generators hits the same entry
    auto p2 = make_prime(r, {P(m.poly, "2*x")});
    CHECK(cosupp_member(r, p2).from_cache);
  }
  SUBCASE("finite map transfer") {
    auto a = poly_ext(ring_rationals(), {"x"});
    auto b = poly_ext(ring_rationals(), {"t"});
    auto bm = model_of(b);
    auto f = finite_map(a, b, {P(bm.poly, "t^2")}, true);
    auto res = cosupp_member_along(f, make_prime(b, {P(bm.poly, "t")}));
    CHECK(res.verdict.is_true());
    CHECK(rule_ids(res)[0] == "RULE-FINITE-MAP");
    bool notes_finite = false;
    for (const auto& s : res.assumptions)
      notes_finite = notes_finite || s.find("finiteness") != std::string::npos;
    CHECK(notes_finite);
  }
}

TEST_CASE("soundness replay") {
  std::vector<std::pair<RingDescPtr, PrimeId>> battery;
  auto qxy = poly_ext(ring_rationals(), {"x", "y"});
  auto qm = model_of(qxy);
  battery.emplace_back(qxy, make_prime(qxy, {P(qm.poly, "x")}));
  auto ps = power_series_ext(ring_rationals(), {"x", "y"});
  auto pm = model_of(ps);
  battery.emplace_back(ps, make_prime(ps, {P(pm.poly, "x")}));
  battery.emplace_back(ps, make_prime(ps, {P(pm.poly, "x"), P(pm.poly, "y")}));
  auto lt = laurent_tower();
  auto lm = model_of(lt);
  battery.emplace_back(lt, make_prime(lt, {P(lm.poly, "x")}));
  battery.emplace_back(lt, make_prime(lt, {P(lm.poly, "1 - x*t")}));
  for (const auto& [r, p] : battery) {
    auto res = cosupp_member(r, p);
    if (res.verdict.decided()) {
      CHECK(!res.trace.empty());
      CHECK(replay_membership(r, p, {}, res));
    }
  }
}

TEST_CASE("cosupport descriptions") {
  SUBCASE("countable quotient curve") {
    auto base = poly_ext(ring_rationals(), {"x", "y"});
    auto m = model_of(base);
    auto r = quotient_ring(base, {P(m.poly, "y^2 - x^3")});
    auto d = cosupp_describe(r);
    CHECK(d.set.kind == SpecSet::Kind::Full);
    CHECK(d.exact.is_true());
  }
  SUBCASE("complete local ring") {
    auto r = power_series_ext(ring_rationals(), {"x", "y"});
    auto d = cosupp_describe(r);
    REQUIRE(d.set.kind == SpecSet::Kind::FiniteSet);
    REQUIRE(d.set.primes.size() == 1);
    auto m = model_of(r);
    CHECK(prime_equal(r, d.set.primes[0],
                      make_prime(r, {P(m.poly, "x"), P(m.poly, "y")})));
    CHECK(d.exact.is_true());
  }
  SUBCASE("series over polynomials, all coefficient fields") {
    std::vector<RingDescPtr> bases = {
        ring_rationals(), ring_prime_field(2),
        ring_abstract_field(Cardinality::Uncountable)};
    for (const auto& k : bases) {
      auto r = power_series_ext(poly_ext(k, {"x"}), {"t"});
      auto d = cosupp_describe(r);
      REQUIRE(d.set.kind == SpecSet::Kind::ClosedV);
      auto m = model_of(r);
      CHECK(d.set.ideal.equals(Ideal(m.poly, {P(m.poly, "t")})));
      CHECK(d.exact.is_true());
    }
  }
  SUBCASE("non-complete discrete valuation ring") {
    auto r = localize_at(ring_integers(), {"5"});
    CHECK(cosupp_describe(r).set.kind == SpecSet::Kind::Full);
  }
  SUBCASE("partial description with probes") {
    auto r = laurent_tower();
    auto m = model_of(r);
    DescribeAux aux;
    aux.battery = {make_prime(r, {P(m.poly, "1 - x*t")}),
                   make_prime(r, {P(m.poly, "x")})};
    aux.not_closed_certificate = "cofinal family certificate";
    auto d = cosupp_describe(r, {}, aux);
    REQUIRE(d.set.kind == SpecSet::Kind::Partial);
    CHECK(d.set.primes.size() == 1);
    CHECK(d.set.no_primes.size() == 1);
    CHECK(specset_is_closed(d.set).value.is_false());
  }
  SUBCASE("description and membership never conflict") {
    auto r = power_series_ext(ring_rationals(), {"x", "y"});
    auto m = model_of(r);
    auto d = cosupp_describe(r);
    std::vector<PrimeId> probes = {
        zero_prime(r), make_prime(r, {P(m.poly, "x")}),
        make_prime(r, {P(m.poly, "y")}),
        make_prime(r, {P(m.poly, "x"), P(m.poly, "y")}),
        make_prime(r, {P(m.poly, "x - y")})};
    for (const auto& p : probes) {
      Tri direct = cosupp_member(r, p).verdict;
      Tri via = specset_member(d.set, p);
      if (direct.decided() && via.decided())
        CHECK(direct.is_true() == via.is_true());
    }
  }
}

TEST_CASE("module-level operations") {
  auto r = poly_ext(ring_rationals(), {"x", "y"});
  auto m = model_of(r);
  SUBCASE("support via the Fitting ideal") {
    auto s = supp_module(r, {{P(m.poly, "x")}});
    REQUIRE(s.kind == SpecSet::Kind::ClosedV);
    CHECK(s.ideal.equals(Ideal(m.poly, {P(m.poly, "x")})));
    CHECK(supp_module(r, {std::vector<Poly>{}}).kind == SpecSet::Kind::Full);
    auto rot = supp_module(r, {{P(m.poly, "x"), P(m.poly, "y")},
                               {P(m.poly, "-y"), P(m.poly, "x")}});
    REQUIRE(rot.kind == SpecSet::Kind::ClosedV);
    CHECK(rot.ideal.equals(Ideal(m.poly, {P(m.poly, "x^2 + y^2")})));
  }
  SUBCASE("module cosupport over a full-cosupport ring") {
    auto s = cosupp_module(r, {{P(m.poly, "x")}});
    REQUIRE(s.kind == SpecSet::Kind::ClosedV);
    CHECK(s.ideal.equals(Ideal(m.poly, {P(m.poly, "x")})));
  }
  SUBCASE("module cosupport over the complete local ring") {
    auto ps = power_series_ext(ring_rationals(), {"x", "y"});
    auto pm = model_of(ps);
    auto s = cosupp_module(ps, {{P(pm.poly, "x")}});
    REQUIRE(s.kind == SpecSet::Kind::FiniteSet);
    REQUIRE(s.primes.size() == 1);
    CHECK(prime_equal(ps, s.primes[0],
                      make_prime(ps, {P(pm.poly, "x"), P(pm.poly, "y")})));
  }
  SUBCASE("zero module") {
    auto s = cosupp_module(r, {{P(m.poly, "1")}});
    CHECK(s.kind == SpecSet::Kind::Empty);
  }
  SUBCASE("tensor formula") {
    auto ps = power_series_ext(ring_rationals(), {"x", "y"});
    auto pm = model_of(ps);
    auto y_cos = cosupp_describe(ps).set;
    auto s = cosupp_tensor(ps, {{P(pm.poly, "x")}}, y_cos);
    REQUIRE(s.kind == SpecSet::Kind::FiniteSet);
    // free X leaves the description unchanged
    auto id = cosupp_tensor(ps, {std::vector<Poly>{}}, y_cos);
    CHECK(id.repr() == y_cos.repr());
    auto vy = specset_closed(r, {P(m.poly, "y")});
    auto meet = cosupp_tensor(r, {{P(m.poly, "x")}}, vy);
    REQUIRE(meet.kind == SpecSet::Kind::ClosedV);
    CHECK(meet.ideal.equals(Ideal(m.poly, {P(m.poly, "x"),
                                           P(m.poly, "y")})));
  }
  SUBCASE("residue fields and injective hulls") {
    auto px = make_prime(r, {P(m.poly, "x")});
    auto kappa = cosupp_kappa(r, px);
    REQUIRE(kappa.kind == SpecSet::Kind::FiniteSet);
    CHECK(kappa.primes.size() == 1);
    auto dn = cosupp_injective(r, px);
    CHECK(specset_member(dn, zero_prime(r)).is_true());
    CHECK(specset_member(dn, px).is_true());
    CHECK(specset_member(dn, make_prime(r, {P(m.poly, "y")})).is_false());
    CHECK(specset_member(dn, make_prime(r, {P(m.poly, "x"),
                                            P(m.poly, "y")})).is_false());
  }
}

TEST_CASE("completeness-ideal criterion") {
  SUBCASE("series over polynomials") {
    auto r = power_series_ext(poly_ext(ring_rationals(), {"x"}), {"t"});
    CHECK(cr_criterion(r).value.is_true());
  }
  SUBCASE("power series ring") {
    auto r = power_series_ext(ring_rationals(), {"x", "y"});
    CHECK(cr_criterion(r).value.is_true());
  }
  SUBCASE("strict containment with a witness") {
    auto r = laurent_tower();
    auto m = model_of(r);
    auto res = cr_criterion(r, {}, {make_prime(r, {P(m.poly, "x")})});
    CHECK(res.value.is_false());
    REQUIRE(res.witness.has_value());
    CHECK(prime_equal(r, *res.witness, make_prime(r, {P(m.poly, "x")})));
  }
}

TEST_CASE("non-closedness witness") {
  auto r = laurent_tower();
  auto m = model_of(r);
  auto family = [&](int n) {
    return make_prime(r, {P(m.poly, "1 - x*t^" + std::to_string(n))});
  };
  auto xp = make_prime(r, {P(m.poly, "x")});
  SUBCASE("the cofinal family certifies") {
    auto cert = notclosed_witness(r, family, "(1 - x*t^n)", 4, xp);
    CHECK(cert.ok);
    CHECK(cert.samples == 4);
    bool notes_limit = false;
    for (const auto& c : cert.checks)
      notes_limit = notes_limit || c.find("Example 5.4") != std::string::npos;
    CHECK(notes_limit);
  }
  SUBCASE("repeated members fail the strict-decrease check") {
    auto repeat = [&](int) { return family(1); };
    auto cert = notclosed_witness(r, repeat, "constant family", 3, xp);
    CHECK(!cert.ok);
    CHECK(cert.failure_step.find("strict decrease") != std::string::npos);
  }
  SUBCASE("a maximal excluded prime fails the final check") {
    auto mx = make_prime(r, {P(m.poly, "t"), P(m.poly, "x")});
    auto cert = notclosed_witness(r, family, "(1 - x*t^n)", 2, mx);
    CHECK(!cert.ok);
    CHECK(cert.failure_step.find("excluded prime") != std::string::npos);
  }
}

TEST_CASE("conjecture flag") {
  auto k = ring_abstract_field(Cardinality::Uncountable);
  auto r = poly_ext(k, {"x", "y", "z"});
  SUBCASE("off: three uncountable variables stay unknown") {
    CHECK(cosupp_member(r, zero_prime(r)).verdict.is_unknown());
  }
  SUBCASE("on: the step is marked as conjecture-derived") {
    EngineOptions opts;
    opts.assume_gruson_jensen = true;
    auto res = cosupp_member(r, zero_prime(r), opts);
    CHECK(res.verdict.is_true());
    REQUIRE(res.trace.size() == 1);
    CHECK(res.trace[0].rule_id == "RULE-GJ");
    CHECK(res.trace[0].conjecture);
    bool recorded = false;
    for (const auto& a : res.assumptions)
      recorded = recorded || a.find("Gruson-Jensen") != std::string::npos;
    CHECK(recorded);
  }
  SUBCASE("the flag never flips a refutation") {
    auto ps = power_series_ext(ring_rationals(), {"x", "y"});
    auto pm = model_of(ps);
    auto p = make_prime(ps, {P(pm.poly, "x")});
    EngineOptions opts;
    opts.assume_gruson_jensen = true;
    CHECK(cosupp_member(ps, p, opts).verdict.is_false());
  }
}

TEST_CASE("full-cosupport rings satisfy the support identity") {
  // where the description is Full, module cosupport equals module support
  auto r = poly_ext(ring_rationals(), {"x", "y"});
  auto m = model_of(r);
  REQUIRE(cosupp_describe(r).set.kind == SpecSet::Kind::Full);
  std::vector<Presentation> samples = {
      {{P(m.poly, "x")}},
      {{P(m.poly, "x"), P(m.poly, "y")}, {P(m.poly, "-y"), P(m.poly, "x")}},
      {{P(m.poly, "x*y")}},
  };
  std::vector<PrimeId> probes = {
      zero_prime(r), make_prime(r, {P(m.poly, "x")}),
      make_prime(r, {P(m.poly, "x"), P(m.poly, "y")}),
      make_prime(r, {P(m.poly, "y")})};
  for (const auto& pres : samples) {
    auto supp = supp_module(r, pres);
    auto cos = cosupp_module(r, pres);
    for (const auto& p : probes) {
      Tri a = specset_member(supp, p);
      Tri b = specset_member(cos, p);
      if (a.decided() && b.decided()) CHECK(a.is_true() == b.is_true());
    }
  }
}
