#include "cosupp/dsl.hpp"

#include <json.hpp>

#include <iostream>
#include <sstream>

namespace cosupp {

namespace {

using json = nlohmann::ordered_json;

struct CfValue {
  bool is_complex = false;
  CFModule module;
  CFComplex complex;
};

struct Env {
  std::map<std::string, RingDescPtr> rings;
  std::map<std::string, PrimeId> primes;
  std::map<std::string, RingMap> maps;
  std::map<std::string, std::pair<std::string, Presentation>> modules;
  std::map<std::string, CfValue> cfs;

  RingDescPtr ring(const std::string& id) const {
    auto it = rings.find(id);
    if (it == rings.end()) throw error("undeclared ring '" + id + "'");
    return it->second;
  }
};

RingDescPtr resolve_ring(const RingExprAst& e, const Env& env) {
  switch (e.kind) {
    case RingExprAst::Kind::Base:
      if (e.base == "Q") return ring_rationals();
      if (e.base == "Z") return ring_integers();
      if (e.base == "F")
        return ring_prime_field(static_cast<unsigned>(e.characteristic));
      if (e.cardinality == "finite")
        return ring_abstract_field(Cardinality::Finite);
      if (e.cardinality == "countable")
        return ring_abstract_field(Cardinality::Countable);
      if (e.cardinality == "uncountable")
        return ring_abstract_field(Cardinality::Uncountable);
      return ring_abstract_field(Cardinality::Unknown);
    case RingExprAst::Kind::PolyVars:
      return poly_ext(resolve_ring(*e.inner, env), e.vars);
    case RingExprAst::Kind::PowerSeries:
      return power_series_ext(resolve_ring(*e.inner, env), e.vars);
    case RingExprAst::Kind::Quotient: {
      RingDescPtr base = resolve_ring(*e.inner, env);
      RingModel m = model_of(base);
      if (!m.present)
        throw error("quotient needs a computable base ring");
      std::vector<Poly> gens;
      for (const auto& s : e.polys) gens.push_back(parse_poly(m.poly, s));
      return quotient_ring(base, std::move(gens));
    }
    case RingExprAst::Kind::Localize: {
      RingDescPtr base = resolve_ring(*e.inner, env);
      return localize_at(base, {e.localize_prime});
    }
  }
  throw error("unreachable");
}

std::vector<Poly> parse_gens(const RingDescPtr& ring,
                             const std::vector<std::string>& polys) {
  RingModel m = model_of(ring);
  if (!m.present)
    throw error("polynomial data needs a computable ring");
  std::vector<Poly> out;
  for (const auto& s : polys) out.push_back(parse_poly(m.poly, s));
  return out;
}

PrimeId resolve_prime(const PrimeOpAst& p, const RingDescPtr& ring,
                      const Env& env) {
  if (p.is_id) {
    auto it = env.primes.find(p.id);
    if (it == env.primes.end())
      throw error("undeclared prime '" + p.id + "'");
    return it->second;
  }
  return make_prime(ring, parse_gens(ring, p.polys));
}

CFModule resolve_cf_module(const CfAst& a, const Env& env) {
  RingDescPtr ring = env.ring(a.ring_id);
  std::vector<CFModule::Component> comps;
  for (const auto& c : a.components) {
    CardTag card;
    if (c.card == "omega") {
      card = CardTag::countable();
    } else if (!c.card.empty() &&
               std::isdigit(static_cast<unsigned char>(c.card[0]))) {
      card = CardTag::finite(std::stol(c.card));
    } else {
      card = CardTag::symbolic(c.card);
    }
    comps.push_back({make_prime(ring, parse_gens(ring, c.polys)), card});
  }
  return cf_make_module(ring, std::move(comps));
}

CfValue resolve_cf(const CfAst& a, const Env& env) {
  CfValue v;
  if (a.kind == CfAst::Kind::Module) {
    v.module = resolve_cf_module(a, env);
    return v;
  }
  v.is_complex = true;
  RingDescPtr ring = env.ring(a.ring_id);
  std::vector<CFModule> mods;
  for (const auto& id : a.module_ids) {
    auto it = env.cfs.find(id);
    if (it == env.cfs.end() || it->second.is_complex)
      throw error("'" + id + "' is not a declared cf module");
    mods.push_back(it->second.module);
  }
  v.complex = cf_make_complex(
      ring, a.lo, std::move(mods), a.bounded_left,
      a.semiflat ? Tri::yes() : Tri::unknown("semiflatness not asserted"));
  for (const auto& d : a.diffs) {
    DiffTag tag = DiffTag::Zero;
    if (d.tag == "nonzero") tag = DiffTag::NonzeroModP;
    if (d.tag == "zeromodp") tag = DiffTag::ZeroModP_Nonzero;
    if (d.tag == "unknown") tag = DiffTag::Unknown;
    cf_set_diff(v.complex, d.degree,
                make_prime(ring, parse_gens(ring, d.from)),
                make_prime(ring, parse_gens(ring, d.to)), tag);
  }
  return v;
}

json specset_json(const SpecSet& s) {
  json j;
  switch (s.kind) {
    case SpecSet::Kind::Full: j["kind"] = "full"; break;
    case SpecSet::Kind::Empty: j["kind"] = "empty"; break;
    case SpecSet::Kind::ClosedV: {
      j["kind"] = "closed";
      json gens = json::array();
      for (const auto& g : s.ideal.gens()) gens.push_back(g.str());
      j["ideal"] = gens;
      break;
    }
    case SpecSet::Kind::FiniteSet: {
      j["kind"] = "finite";
      json ps = json::array();
      for (const auto& p : s.primes) ps.push_back(p.repr());
      j["primes"] = ps;
      break;
    }
    case SpecSet::Kind::DownSet:
      j["kind"] = "down";
      j["prime"] = s.down->repr();
      break;
    case SpecSet::Kind::Pullback:
      j["kind"] = "pullback";
      j["map"] = s.map->repr();
      j["inner"] = specset_json(*s.inner);
      break;
    case SpecSet::Kind::Intersect: {
      j["kind"] = "intersect";
      json parts = json::array();
      for (const auto& p : s.parts) parts.push_back(specset_json(p));
      j["parts"] = parts;
      break;
    }
    case SpecSet::Kind::Partial: {
      j["kind"] = "partial";
      json yes = json::array(), no = json::array();
      for (const auto& p : s.primes) yes.push_back(p.repr());
      for (const auto& p : s.no_primes) no.push_back(p.repr());
      j["yes"] = yes;
      j["no"] = no;
      if (!s.family_notes.empty()) j["notes"] = s.family_notes;
      if (!s.not_closed_certificate.empty())
        j["not_closed_certificate"] = s.not_closed_certificate;
      break;
    }
  }
  j["repr"] = s.repr();
  return j;
}

json trace_json(const std::vector<TraceStep>& trace,
                const std::vector<std::string>& assumptions) {
  json arr = json::array();
  for (const auto& s : trace) {
    json step;
    step["rule_id"] = s.rule_id;
    step["paper_anchor"] = s.paper_anchor;
    step["premises"] = s.premises;
    step["assumptions"] = assumptions;
    if (s.conjecture) step["conjecture"] = true;
    arr.push_back(step);
  }
  return arr;
}

std::string human_trace(const std::vector<TraceStep>& trace) {
  std::ostringstream os;
  for (const auto& s : trace) {
    os << "    " << s.rule_id << " [" << s.paper_anchor << "]";
    if (s.conjecture) os << " (conjecture)";
    for (const auto& p : s.premises) os << "\n      - " << p;
    os << "\n";
  }
  return os.str();
}

std::string query_repr(const QueryAst& q) {
  Program one;
  one.queries.push_back(q);
  std::string text = print_program(one);
  // strip "query " prefix and trailing ";\n"
  if (text.size() > 8) text = text.substr(6, text.size() - 8);
  return text;
}

MonomialOrder order_from(const RunOptions& opts) {
  return opts.order == "lex" ? MonomialOrder::lex()
                             : MonomialOrder::grevlex();
}

json run_query(const QueryAst& q, Env& env, const RunOptions& opts,
               std::ostream& human) {
  json j;
  j["query"] = query_repr(q);
  EngineOptions eng;
  eng.assume_gruson_jensen = opts.assume_gruson_jensen;

  auto finish_membership = [&](const Membership& m) {
    j["status"] = "ok";
    j["verdict"] = m.verdict.str();
    if (m.verdict.is_unknown()) j["frontier"] = m.frontier;
    if (!m.assumptions.empty()) j["assumptions"] = m.assumptions;
    j["trace"] = trace_json(m.trace, m.assumptions);
    human << j["query"].get<std::string>() << ": " << m.verdict.str()
          << "\n";
    if (opts.trace) human << human_trace(m.trace);
  };
  auto finish_set = [&](const SpecSet& s) {
    j["status"] = "ok";
    j["set"] = specset_json(s);
    human << j["query"].get<std::string>() << ": " << s.repr() << "\n";
  };

  const std::string& kw = q.keyword;
  if (kw == "cosupp_member") {
    auto ring = env.ring(q.ids[0]);
    finish_membership(cosupp_member(ring, resolve_prime(q.primes[0], ring,
                                                        env), eng));
  } else if (kw == "cosupp_describe") {
    auto ring = env.ring(q.ids[0]);
    DescribeAux aux;
    for (const auto& p : q.primes)
      aux.battery.push_back(resolve_prime(p, ring, env));
    auto d = cosupp_describe(ring, eng, aux);
    j["status"] = "ok";
    j["set"] = specset_json(d.set);
    j["exact"] = d.exact.str();
    if (!d.assumptions.empty()) j["assumptions"] = d.assumptions;
    j["trace"] = trace_json(d.trace, d.assumptions);
    human << j["query"].get<std::string>() << ": " << d.set.repr()
          << (d.exact.is_true() ? " (exact)" : "") << "\n";
    if (opts.trace) human << human_trace(d.trace);
  } else if (kw == "supp" || kw == "cosupp_module") {
    auto it = env.modules.find(q.ids[0]);
    if (it == env.modules.end())
      throw error("undeclared module '" + q.ids[0] + "'");
    auto ring = env.ring(it->second.first);
    finish_set(kw == "supp" ? supp_module(ring, it->second.second)
                            : cosupp_module(ring, it->second.second, eng));
  } else if (kw == "cosupp_tensor") {
    auto it = env.modules.find(q.ids[0]);
    if (it == env.modules.end())
      throw error("undeclared module '" + q.ids[0] + "'");
    auto xring = env.ring(it->second.first);
    auto yring = env.ring(q.ids[1]);
    if (normalize(xring)->repr() != normalize(yring)->repr())
      throw error("tensor operands live over different rings");
    auto ydesc = cosupp_describe(yring, eng, {});
    finish_set(cosupp_tensor(xring, it->second.second, ydesc.set, eng));
  } else if (kw == "cosupp_kappa" || kw == "cosupp_injective") {
    auto ring = env.ring(q.ids[0]);
    auto p = resolve_prime(q.primes[0], ring, env);
    finish_set(kw == "cosupp_kappa" ? cosupp_kappa(ring, p)
                                    : cosupp_injective(ring, p));
  } else if (kw == "cr_criterion") {
    auto ring = env.ring(q.ids[0]);
    std::vector<PrimeId> battery;
    for (const auto& p : q.primes)
      battery.push_back(resolve_prime(p, ring, env));
    auto res = cr_criterion(ring, eng, battery);
    j["status"] = "ok";
    j["verdict"] = res.value.str();
    if (res.witness) j["witness"] = res.witness->repr();
    if (!res.notes.empty()) j["notes"] = res.notes;
    human << j["query"].get<std::string>() << ": " << res.value.str();
    if (res.witness) human << " (witness " << res.witness->repr() << ")";
    human << "\n";
  } else if (kw == "notclosed") {
    auto ring = env.ring(q.ids[0]);
    RingModel m = model_of(ring);
    if (!m.present) throw error("notclosed needs a computable ring");
    std::string pattern = q.polys.empty() ? "" : q.polys[0];
    auto family = [&env, ring, m, pattern](int n) {
      std::string inst;
      // substitute the standalone exponent symbol n
      for (size_t i = 0; i < pattern.size(); ++i) {
        bool standalone =
            pattern[i] == 'n' &&
            (i == 0 || !std::isalnum(static_cast<unsigned char>(
                           pattern[i - 1]))) &&
            (i + 1 == pattern.size() ||
             !std::isalnum(static_cast<unsigned char>(pattern[i + 1])));
        if (standalone)
          inst += std::to_string(n);
        else
          inst += pattern[i];
      }
      return make_prime(ring, {parse_poly(m.poly, inst)});
    };
    auto no_prime = resolve_prime(q.primes[0], ring, env);
    auto cert = notclosed_witness(ring, family, pattern, q.number, no_prime,
                                  eng);
    j["status"] = "ok";
    j["certified"] = cert.ok;
    j["family"] = cert.description;
    j["samples"] = cert.samples;
    if (!cert.ok) j["failure"] = cert.failure_step;
    j["checks"] = cert.checks;
    human << j["query"].get<std::string>() << ": "
          << (cert.ok ? "certificate" : "failure (" + cert.failure_step + ")")
          << "\n";
  } else if (kw == "cf_lambda" || kw == "cf_colocalize") {
    auto it = env.cfs.find(q.ids[0]);
    if (it == env.cfs.end() || it->second.is_complex)
      throw error("'" + q.ids[0] + "' is not a declared cf module");
    auto ring = it->second.module.ring;
    auto p = resolve_prime(q.primes[0], ring, env);
    auto res = kw == "cf_lambda" ? cf_completion(it->second.module, p)
                                 : cf_colocalize(it->second.module, p);
    j["status"] = "ok";
    j["module"] = res.repr();
    human << j["query"].get<std::string>() << ": " << res.repr() << "\n";
  } else if (kw == "cf_basechange") {
    auto it = env.cfs.find(q.ids[0]);
    if (it == env.cfs.end() || it->second.is_complex)
      throw error("'" + q.ids[0] + "' is not a declared cf module");
    auto mit = env.maps.find(q.ids[1]);
    if (mit == env.maps.end())
      throw error("undeclared map '" + q.ids[1] + "'");
    auto res = cf_basechange(it->second.module, mit->second);
    j["status"] = "ok";
    j["module"] = res.repr();
    human << j["query"].get<std::string>() << ": " << res.repr() << "\n";
  } else if (kw == "cf_minimal") {
    auto it = env.cfs.find(q.ids[0]);
    if (it == env.cfs.end() || !it->second.is_complex)
      throw error("'" + q.ids[0] + "' is not a declared cf complex");
    Tri res = cf_is_minimal(it->second.complex);
    j["status"] = "ok";
    j["verdict"] = res.str();
    human << j["query"].get<std::string>() << ": " << res.str() << "\n";
  } else if (kw == "cf_primes") {
    auto it = env.cfs.find(q.ids[0]);
    if (it == env.cfs.end() || !it->second.is_complex)
      throw error("'" + q.ids[0] + "' is not a declared cf complex");
    auto res = cf_primes(it->second.complex);
    j["status"] = "ok";
    json ps = json::array();
    for (const auto& p : res.primes) ps.push_back(p.repr());
    j["primes"] = ps;
    j["equals_cosupport"] = res.equals_cosupport.str();
    j["hypotheses"] = res.hypothesis_log;
    human << j["query"].get<std::string>() << ": {";
    for (size_t i = 0; i < res.primes.size(); ++i)
      human << (i ? ", " : "") << res.primes[i].repr();
    human << "} equals_cosupport=" << res.equals_cosupport.str() << "\n";
  } else if (kw == "gb" || kw == "dim") {
    auto ring = env.ring(q.ids[0]);
    RingModel m = model_of(ring);
    if (!m.present) throw error("Groebner queries need a computable ring");
    Ideal ideal = m.ideal_with(parse_gens(ring, q.polys));
    if (kw == "gb") {
      json gens = json::array();
      std::ostringstream hs;
      for (const auto& g : ideal.groebner_basis(order_from(opts))) {
        gens.push_back(g.str());
        hs << (hs.tellp() > 0 ? ", " : "") << g.str();
      }
      j["status"] = "ok";
      j["basis"] = gens;
      human << j["query"].get<std::string>() << ": {" << hs.str() << "}\n";
    } else {
      int d = krull_dim(ideal);
      j["status"] = "ok";
      j["dim"] = d;
      human << j["query"].get<std::string>() << ": " << d << "\n";
    }
  } else {
    throw error("unknown query keyword '" + kw + "'");
  }
  return j;
}

void run_decl(const DeclAst& d, Env& env) {
  auto used = [&](const std::string& name) {
    return env.rings.count(name) || env.primes.count(name) ||
           env.maps.count(name) || env.modules.count(name) ||
           env.cfs.count(name);
  };
  if (used(d.name)) throw error("identifier '" + d.name + "' redeclared");
  switch (d.kind) {
    case DeclAst::Kind::Ring:
      env.rings.emplace(d.name, resolve_ring(d.ring, env));
      break;
    case DeclAst::Kind::Prime: {
      auto ring = env.ring(d.ring_id);
      env.primes.emplace(d.name,
                         make_prime(ring, parse_gens(ring, d.polys)));
      break;
    }
    case DeclAst::Kind::Map: {
      auto src = env.ring(d.source_id);
      auto dst = env.ring(d.target_id);
      RingModel sm = model_of(src), dm = model_of(dst);
      if (!sm.present || !dm.present)
        throw error("map declarations need computable rings");
      std::vector<Poly> images;
      for (const auto& s : d.polys) images.push_back(parse_poly(dm.poly, s));
      if (images.size() != sm.poly->vars.size())
        throw error("map must list one image per source variable");
      // recognize the canonical projection onto a quotient of the source:
      // each variable goes to itself or to zero
      bool identity_images = true;
      for (size_t i = 0; i < images.size(); ++i) {
        const std::string& v = sm.poly->vars[i];
        bool keeps = dm.poly->var_index(v) >= 0 &&
                     images[i] == Poly::variable(dm.poly, v);
        bool drops = dm.poly->var_index(v) < 0 && images[i].is_zero();
        identity_images = identity_images && (keeps || drops);
      }
      if (identity_images) {
        std::vector<Poly> kernel;
        for (const auto& v : sm.poly->vars)
          if (dm.poly->var_index(v) < 0)
            kernel.push_back(Poly::variable(sm.poly, v));
        for (const auto& rel : dm.relations)
          kernel.push_back(rel.mapped_to(sm.poly));
        RingMap f = quotient_projection(src, kernel);
        if (f.target->repr() == normalize(dst)->repr()) {
          env.maps.emplace(d.name, std::move(f));
          break;
        }
      }
      env.maps.emplace(d.name, finite_map(src, dst, std::move(images),
                                          /*asserted_finite=*/true));
      break;
    }
    case DeclAst::Kind::Module: {
      auto ring = env.ring(d.ring_id);
      RingModel m = model_of(ring);
      if (!m.present) throw error("module presentations need a computable ring");
      Presentation pres;
      for (const auto& row : d.matrix) {
        std::vector<Poly> prow;
        for (const auto& s : row) prow.push_back(parse_poly(m.poly, s));
        pres.push_back(std::move(prow));
      }
      env.modules.emplace(d.name, std::make_pair(d.ring_id, std::move(pres)));
      break;
    }
    case DeclAst::Kind::Cf:
      env.cfs.emplace(d.name, resolve_cf(d.cf, env));
      break;
  }
}

}  // namespace

Report run_program(const Program& p, const RunOptions& opts) {
  Report report;
  std::ostringstream human;
  json root;
  root["schema"] = "cosupp/1";
  json results = json::array();

  Env env;
  reset_step_budget(opts.max_steps);
  std::string decl_error;
  for (const auto& d : p.decls) {
    try {
      run_decl(d, env);
    } catch (const std::exception& e) {
      decl_error = e.what();
      report.had_errors = true;
      human << "declaration '" << d.name << "': error: " << e.what() << "\n";
      json j;
      j["declaration"] = d.name;
      j["status"] = "error";
      j["message"] = e.what();
      results.push_back(j);
      break;  // later declarations and queries likely depend on this one
    }
  }
  if (decl_error.empty()) {
    for (const auto& q : p.queries) {
      reset_step_budget(opts.max_steps);
      try {
        results.push_back(run_query(q, env, opts, human));
      } catch (const std::exception& e) {
        report.had_errors = true;
        json j;
        j["query"] = query_repr(q);
        j["status"] = "error";
        j["message"] = e.what();
        results.push_back(j);
        human << query_repr(q) << ": error: " << e.what() << "\n";
      }
    }
  }
  reset_step_budget();
  root["results"] = results;
  report.json_text = root.dump(2) + "\n";
  report.human_text = human.str();
  return report;
}

RingDescPtr ring_from_text(const std::string& expr) {
  Program p = parse_program("ring R = " + expr + ";");
  if (p.decls.size() != 1 || p.decls[0].kind != DeclAst::Kind::Ring)
    throw error("not a ring expression: " + expr);
  Env env;
  return resolve_ring(p.decls[0].ring, env);
}

PrimeId prime_from_text(const RingDescPtr& ring, const std::string& gens) {
  std::vector<std::string> pieces;
  std::string cur;
  int depth = 0;
  for (char ch : gens) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      pieces.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  pieces.push_back(cur);
  std::vector<Poly> polys;
  RingModel m = model_of(ring);
  for (auto& s : pieces) {
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) continue;
    size_t b = s.find_last_not_of(" \t\n");
    std::string t = s.substr(a, b - a + 1);
    if (t == "0") continue;
    if (!m.present) throw error("ring has no computable model");
    polys.push_back(parse_poly(m.poly, t));
  }
  if (polys.empty()) return zero_prime(ring);
  return make_prime(ring, std::move(polys));
}

int repl_loop(std::istream& in, std::ostream& out, const RunOptions& opts) {
  out << "cosupp repl; terminate statements with ';', exit with 'quit;'\n";
  std::string buffer, line;
  Env env;  // declarations persist across statements
  (void)env;
  std::string session;  // accumulated declarations re-run per statement
  while (true) {
    out << (buffer.empty() ? "> " : ". ") << std::flush;
    if (!std::getline(in, line)) break;
    buffer += line + "\n";
    if (buffer.find(';') == std::string::npos) continue;
    std::string stmt = buffer;
    buffer.clear();
    if (stmt.find("quit") != std::string::npos) break;
    try {
      Program p = parse_program(session + stmt);
      Report r = run_program(p, opts);
      // show only output lines the new statement produced
      Report prev = run_program(parse_program(session), opts);
      std::string fresh = r.human_text.substr(
          r.human_text.size() >= prev.human_text.size()
              ? prev.human_text.size()
              : 0);
      out << (fresh.empty() ? "ok\n" : fresh);
      if (!r.had_errors) session += stmt;
    } catch (const std::exception& e) {
      out << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace cosupp
