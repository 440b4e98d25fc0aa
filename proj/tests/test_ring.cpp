#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cosupp/ring.hpp"

using namespace cosupp;

namespace {

Poly P(const RingRef& r, const std::string& s) { return parse_poly(r, s); }

RingDescPtr cuspidal_cubic() {
  auto base = poly_ext(ring_rationals(), {"x", "y"});
  auto m = model_of(base);
  return quotient_ring(base, {P(m.poly, "y^2 - x^3")});
}

}  // namespace

TEST_CASE("normalization") {
  SUBCASE("idempotence") {
    std::vector<RingDescPtr> rings = {
        ring_rationals(),
        poly_ext(ring_rationals(), {"x", "y"}),
        power_series_ext(poly_ext(ring_prime_field(2), {"x"}), {"t"}),
        cuspidal_cubic(),
        localize_at(ring_integers(), {"5"}),
    };
    for (const auto& r : rings) {
      auto n = normalize(r);
      CHECK(normalize(n)->repr() == n->repr());
    }
  }
  SUBCASE("nested quotients compose") {
    auto r = cuspidal_cubic();
    auto m = model_of(r);
    auto rr = normalize(quotient_ring(r, {P(m.poly, "x")}));
    // killing x absorbs the variable and leaves y^2 = 0
    REQUIRE(rr->kind == RingDesc::Kind::Quotient);
    CHECK(rr->base->repr() == "Q[y]");
    REQUIRE(rr->quotient_gens.size() == 1);
    auto ry = make_ring(0, {"y"});
    CHECK(rr->quotient_gens[0].mapped_to(ry) == P(ry, "y^2"));
  }
  SUBCASE("bare-variable quotient drops the variable") {
    auto base = poly_ext(ring_rationals(), {"x", "y"});
    auto m = model_of(base);
    auto q = normalize(quotient_ring(base, {P(m.poly, "y")}));
    CHECK(q->repr() == "Q[x]");
  }
  SUBCASE("adjacent polynomial layers merge") {
    auto r = poly_ext(poly_ext(ring_rationals(), {"x"}), {"y"});
    CHECK(normalize(r)->repr() == "Q[x,y]");
  }
  SUBCASE("mixed tower keeps layer order") {
    auto r = power_series_ext(
        poly_ext(power_series_ext(ring_prime_field(2), {"t"}), {"x"}),
        {"s1", "s2"});
    CHECK(normalize(r)->repr() == "F(2)[[t]][x][[s1,s2]]");
  }
}

TEST_CASE("models") {
  auto r = power_series_ext(poly_ext(ring_rationals(), {"x"}), {"t"});
  auto m = model_of(r);
  REQUIRE(m.present);
  CHECK(m.poly->vars == std::vector<std::string>{"x", "t"});
  CHECK(m.ps_vars() == std::vector<std::string>{"t"});
  CHECK(m.poly_vars() == std::vector<std::string>{"x"});
  CHECK(m.relations.empty());
  SUBCASE("attribute-only rings have no model") {
    CHECK(!model_of(ring_integers()).present);
    CHECK(!model_of(localize_at(ring_integers(), {"5"})).present);
  }
  SUBCASE("abstract coefficients are proxied") {
    auto k = ring_abstract_field(Cardinality::Uncountable);
    auto km = model_of(poly_ext(k, {"x"}));
    REQUIRE(km.present);
    CHECK(km.proxy_coeffs);
    CHECK(km.poly->characteristic == 0);
  }
  SUBCASE("projection drops variables to zero") {
    auto dst = model_of(poly_ext(ring_rationals(), {"x"}));
    CHECK(project_poly(m, dst, P(m.poly, "x + t*x + 1")) ==
          P(dst.poly, "x + 1"));
  }
}

TEST_CASE("attribute inference") {
  SUBCASE("plane curve quotient") {
    const auto& a = infer_attrs(cuspidal_cubic());
    CHECK(a.countable.is_true());
    CHECK(a.dim_exact());
    CHECK(a.dim_lo == 1);
    CHECK(a.c_known_zero());
  }
  SUBCASE("series over a polynomial ring") {
    auto r = power_series_ext(poly_ext(ring_rationals(), {"x"}), {"t"});
    const auto& a = infer_attrs(r);
    CHECK(a.countable.is_false());
    CHECK(a.is_local.is_false());
    CHECK(a.dim_lo == 2);
    CHECK(a.dim_hi == 2);
    REQUIRE(a.c_known.size() == 1);
    auto m = model_of(r);
    CHECK(a.c_known[0] == P(m.poly, "t"));
    CHECK(a.c_exact.is_true());
    CHECK(!a.complete_local(m));
  }
  SUBCASE("formal power series ring is complete local") {
    auto r = power_series_ext(ring_rationals(), {"x", "y"});
    const auto& a = infer_attrs(r);
    auto m = model_of(r);
    CHECK(a.is_local.is_true());
    CHECK(a.maximal_ideal.size() == 2);
    CHECK(a.complete_local(m));
    CHECK(a.dim_lo == 2);
  }
  SUBCASE("polynomial ring over the series base is not complete") {
    auto r = poly_ext(power_series_ext(ring_rationals(), {"t"}), {"x"});
    const auto& a = infer_attrs(r);
    CHECK(a.c_known_zero());
    CHECK(a.c_exact.is_true());
    CHECK(a.is_local.is_false());
  }
  SUBCASE("integers and their localizations") {
    const auto& z = infer_attrs(ring_integers());
    CHECK(z.countable.is_true());
    CHECK(z.dim_lo == 1);
    CHECK(z.is_local.is_false());
    const auto& zp = infer_attrs(localize_at(ring_integers(), {"5"}));
    CHECK(zp.is_local.is_true());
    CHECK(zp.countable.is_true());
    CHECK(zp.dim_lo == 1);
    CHECK(zp.dim_hi == 1);
  }
  SUBCASE("abstract field cardinality survives the proxy") {
    auto k = ring_abstract_field(Cardinality::Uncountable);
    CHECK(infer_attrs(poly_ext(k, {"x", "y"})).countable.is_false());
    auto kc = ring_abstract_field(Cardinality::Countable);
    CHECK(infer_attrs(poly_ext(kc, {"x"})).countable.is_true());
    auto ku = ring_abstract_field(Cardinality::Unknown);
    CHECK(infer_attrs(ku).countable.is_unknown());
  }
  SUBCASE("memoized report is stable") {
    const auto& a = infer_attrs(cuspidal_cubic());
    const auto& b = infer_attrs(cuspidal_cubic());
    CHECK(&a == &b);
  }
}

TEST_CASE("computable core") {
  SUBCASE("series over polynomials strips the outer layer") {
    auto r = power_series_ext(poly_ext(ring_rationals(), {"x"}), {"t"});
    auto red = computable_core(r);
    REQUIRE(red.has_value());
    CHECK(red->core->repr() == "Q[x]");
    REQUIRE(red->projection.kernel.size() == 1);
    CHECK(red->projection.kernel[0] == P(model_of(r).poly, "t"));
  }
  SUBCASE("tall tower strips one layer at a time") {
    auto r = power_series_ext(
        poly_ext(power_series_ext(ring_prime_field(2), {"t"}), {"x"}),
        {"s1", "s2"});
    auto red = computable_core(r);
    REQUIRE(red.has_value());
    CHECK(red->core->repr() == "F(2)[[t]][x]");
    CHECK(red->projection.kernel.size() == 2);
  }
  SUBCASE("nothing to strip") {
    CHECK(!computable_core(poly_ext(ring_rationals(), {"x"})).has_value());
    CHECK(!computable_core(ring_rationals()).has_value());
  }
}

TEST_CASE("prime handles") {
  auto r = poly_ext(ring_rationals(), {"x", "y"});
  auto m = model_of(r);
  SUBCASE("construction and containment") {
    auto p = make_prime(r, {P(m.poly, "x")});
    CHECK(p.repr() == "(x)");
    CHECK(prime_contains(r, p, {P(m.poly, "x^2 + x*y")}));
    CHECK(!prime_contains(r, p, {P(m.poly, "y")}));
    CHECK(zero_prime(r).is_zero_ideal());
    CHECK(zero_prime(r).repr() == "(0)");
  }
  SUBCASE("equality is ideal equality") {
    auto a = make_prime(r, {P(m.poly, "x"), P(m.poly, "x + y")});
    auto b = make_prime(r, {P(m.poly, "y"), P(m.poly, "x")});
    CHECK(prime_equal(r, a, b));
    CHECK(!prime_equal(r, a, make_prime(r, {P(m.poly, "x")})));
  }
  SUBCASE("screening") {
    CHECK(check_prime(zero_prime(r)).is_true());
    CHECK(check_prime(make_prime(r, {P(m.poly, "x"), P(m.poly, "y")}))
              .is_true());
    CHECK(check_prime(make_prime(r, {P(m.poly, "x"), P(m.poly, "x + 1")}))
              .is_false());
    // (xy) with witness x * y
    auto xy = make_prime(r, {P(m.poly, "x*y")});
    CHECK(check_prime(xy, std::make_pair(P(m.poly, "x"), P(m.poly, "y")))
              .is_false());
    CHECK(check_prime(xy).is_unknown());
    auto principal = make_prime(r, {P(m.poly, "y^2 - x^3 - 1")});
    CHECK(check_prime(principal, std::nullopt, true).is_true());
  }
}

TEST_CASE("prime transfer along maps") {
  auto src = poly_ext(ring_rationals(), {"x", "y"});
  auto sm = model_of(src);
  SUBCASE("quotient contraction adds the kernel") {
    auto f = quotient_projection(src, {P(sm.poly, "y")});
    CHECK(f.target->repr() == "Q[x]");
    auto tm = model_of(f.target);
    auto q = make_prime(f.target, {P(tm.poly, "x")});
    auto p = contract_prime(f, q);
    CHECK(prime_equal(src, p,
                      make_prime(src, {P(sm.poly, "x"), P(sm.poly, "y")})));
  }
  SUBCASE("fibers exist only over primes containing the kernel") {
    auto f = quotient_projection(src, {P(sm.poly, "y")});
    auto over = make_prime(src, {P(sm.poly, "x"), P(sm.poly, "y")});
    auto fibers = fiber_primes(f, over);
    REQUIRE(fibers.size() == 1);
    auto tm = model_of(f.target);
    CHECK(prime_equal(f.target, fibers[0],
                      make_prime(f.target, {P(tm.poly, "x")})));
    CHECK(fiber_primes(f, make_prime(src, {P(sm.poly, "x")})).empty());
  }
  SUBCASE("finite map contraction via the graph ideal") {
    auto a = poly_ext(ring_rationals(), {"x"});
    auto b = poly_ext(ring_rationals(), {"t"});
    auto bm = model_of(b);
    auto f = finite_map(a, b, {P(bm.poly, "t^2")}, true);
    auto p = contract_prime(f, make_prime(b, {P(bm.poly, "t")}));
    auto am = model_of(a);
    CHECK(prime_equal(a, p, make_prime(a, {P(am.poly, "x")})));
    // contract of (t - 1) is (x - 1)
    auto q = contract_prime(f, make_prime(b, {P(bm.poly, "t - 1")}));
    CHECK(prime_equal(a, q, make_prime(a, {P(am.poly, "x - 1")})));
  }
}

TEST_CASE("maximality") {
  SUBCASE("affine case is a dimension count") {
    auto r = poly_ext(ring_rationals(), {"x", "y"});
    auto m = model_of(r);
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "x"), P(m.poly, "y")}))
              .is_true());
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "x")})).is_false());
    CHECK(is_maximal(r, zero_prime(r)).is_false());
  }
  SUBCASE("fields") {
    CHECK(is_maximal(ring_rationals(), zero_prime(ring_rationals()))
              .is_true());
  }
  SUBCASE("completeness reduction") {
    auto r = power_series_ext(poly_ext(ring_rationals(), {"x"}), {"t"});
    auto m = model_of(r);
    auto mx = make_prime(r, {P(m.poly, "t"), P(m.poly, "x - 1")});
    CHECK(is_maximal(r, mx).is_true());
    // (t) has the whole affine line above it
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "t")})).is_false());
    // maximal ideals all contain the completeness ideal
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "x - 1")})).is_false());
  }
  SUBCASE("series-then-polynomial tower") {
    auto r = poly_ext(power_series_ext(ring_prime_field(2), {"t"}), {"x"});
    auto m = model_of(r);
    // units minus x t^n generate maximal ideals
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "1 - x*t")})).is_true());
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "1 - x*t^3")})).is_true());
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "t"), P(m.poly, "x")}))
              .is_true());
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "x")})).is_false());
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "t")})).is_false());
    CHECK(is_maximal(r, zero_prime(r)).is_false());
  }
  SUBCASE("two polynomial variables over the series base") {
    auto r =
        poly_ext(power_series_ext(ring_prime_field(2), {"t"}), {"x", "y"});
    auto m = model_of(r);
    // the chart is two-dimensional, so the curve 1 = xt is not closed
    CHECK(is_maximal(r, make_prime(r, {P(m.poly, "1 - x*t")})).is_false());
  }
}
