#include "cosupp/dsl.hpp"

#include <cctype>
#include <sstream>

namespace cosupp {

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Cursor(const std::string& t) : text(t) {}

  bool eof() const { return pos >= text.size(); }
  char peek() const { return eof() ? '\0' : text[pos]; }

  void bump() {
    if (eof()) return;
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {  // comment to end of line
        while (!eof() && peek() != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg,
                         const std::string& expected) const {
    throw parse_error(msg, line, col, expected);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c)
      fail(std::string("unexpected '") + (eof() ? std::string("<eof>")
                                                : std::string(1, peek())) +
               "'",
           std::string("'") + c + "'");
    bump();
  }

  bool accept(char c) {
    skip_ws();
    if (peek() != c) return false;
    bump();
    return true;
  }

  bool accept_word(const std::string& w) {
    skip_ws();
    size_t save_pos = pos;
    int save_line = line, save_col = col;
    for (char c : w) {
      if (peek() != c) {
        pos = save_pos;
        line = save_line;
        col = save_col;
        return false;
      }
      bump();
    }
    // must not continue as an identifier
    if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
      pos = save_pos;
      line = save_line;
      col = save_col;
      return false;
    }
    return true;
  }

  std::string ident() {
    skip_ws();
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
      fail("expected identifier", "identifier");
    std::string out;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
      out += peek();
      bump();
    }
    return out;
  }

  int integer() {
    skip_ws();
    bool neg = accept('-');
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected integer", "integer");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      bump();
    }
    return static_cast<int>(neg ? -v : v);
  }

  /// Raw polynomial text up to a top-level ',' or closing bracket.
  std::string poly_text() {
    skip_ws();
    std::string out;
    int depth = 0;
    while (!eof()) {
      char c = peek();
      if (depth == 0 && (c == ',' || c == ')' || c == ']' || c == ';' ||
                         c == '}' || c == ':'))
        break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      out += c;
      bump();
    }
    while (!out.empty() && std::isspace(static_cast<unsigned char>(
                               out.back())))
      out.pop_back();
    if (out.empty()) fail("expected polynomial", "polynomial");
    return out;
  }

  std::vector<std::string> poly_list(char close) {
    std::vector<std::string> out;
    skip_ws();
    if (peek() == close) return out;
    out.push_back(poly_text());
    while (accept(',')) out.push_back(poly_text());
    return out;
  }
};

std::vector<std::string> var_list(Cursor& c) {
  std::vector<std::string> vars;
  vars.push_back(c.ident());
  while (c.accept(',')) vars.push_back(c.ident());
  return vars;
}

RingExprAst ring_expr(Cursor& c);

RingExprAst ring_primary(Cursor& c) {
  RingExprAst e;
  c.skip_ws();
  if (c.accept_word("powerseries")) {
    e.kind = RingExprAst::Kind::PowerSeries;
    c.expect('(');
    e.inner = std::make_shared<RingExprAst>(ring_expr(c));
    c.expect(',');
    e.vars = var_list(c);
    c.expect(')');
    return e;
  }
  if (c.accept_word("localize")) {
    e.kind = RingExprAst::Kind::Localize;
    c.expect('(');
    e.inner = std::make_shared<RingExprAst>(ring_expr(c));
    c.expect(',');
    e.localize_prime = c.ident();
    c.expect(')');
    return e;
  }
  if (c.accept_word("field")) {
    e.base = "field";
    c.expect('(');
    e.cardinality = c.ident();
    if (e.cardinality != "finite" && e.cardinality != "countable" &&
        e.cardinality != "uncountable" && e.cardinality != "unknown")
      c.fail("bad cardinality '" + e.cardinality + "'",
             "finite|countable|uncountable|unknown");
    c.expect(')');
    return e;
  }
  if (c.accept_word("Q")) {
    e.base = "Q";
    return e;
  }
  if (c.accept_word("Z")) {
    e.base = "Z";
    return e;
  }
  if (c.accept_word("F")) {
    e.base = "F";
    c.expect('(');
    e.characteristic = c.integer();
    c.expect(')');
    return e;
  }
  c.fail("expected ring expression", "Q|Z|F(p)|field(card)|powerseries|localize");
}

RingExprAst ring_expr(Cursor& c) {
  RingExprAst e = ring_primary(c);
  for (;;) {
    if (c.accept('[')) {
      RingExprAst ext;
      ext.kind = RingExprAst::Kind::PolyVars;
      ext.inner = std::make_shared<RingExprAst>(std::move(e));
      ext.vars = var_list(c);
      c.expect(']');
      e = std::move(ext);
    } else if (c.accept('/')) {
      RingExprAst q;
      q.kind = RingExprAst::Kind::Quotient;
      q.inner = std::make_shared<RingExprAst>(std::move(e));
      c.expect('(');
      q.polys = c.poly_list(')');
      c.expect(')');
      e = std::move(q);
    } else {
      return e;
    }
  }
}

PrimeOpAst prime_operand(Cursor& c) {
  PrimeOpAst p;
  c.skip_ws();
  if (c.peek() == '(') {
    c.expect('(');
    p.polys = c.poly_list(')');
    c.expect(')');
    return p;
  }
  p.is_id = true;
  p.id = c.ident();
  return p;
}

CfAst cf_literal(Cursor& c) {
  CfAst a;
  if (c.accept_word("module")) {
    a.kind = CfAst::Kind::Module;
    c.expect('(');
    a.ring_id = c.ident();
    c.expect(',');
    c.expect('{');
    c.skip_ws();
    if (c.peek() != '}') {
      do {
        CfComponentAst comp;
        c.expect('(');
        comp.polys = c.poly_list(')');
        c.expect(')');
        c.expect(':');
        c.skip_ws();
        if (std::isdigit(static_cast<unsigned char>(c.peek())))
          comp.card = std::to_string(c.integer());
        else
          comp.card = c.ident();
        a.components.push_back(std::move(comp));
      } while (c.accept(','));
    }
    c.expect('}');
    c.expect(')');
    return a;
  }
  if (c.accept_word("complex")) {
    a.kind = CfAst::Kind::Complex;
    c.expect('(');
    a.ring_id = c.ident();
    c.expect(',');
    a.lo = c.integer();
    c.expect(',');
    c.expect('[');
    c.skip_ws();
    if (c.peek() != ']') {
      a.module_ids.push_back(c.ident());
      while (c.accept(',')) a.module_ids.push_back(c.ident());
    }
    c.expect(']');
    while (c.accept(',')) {
      if (c.accept_word("bounded")) {
        a.bounded_left = true;
      } else if (c.accept_word("unbounded")) {
        a.bounded_left = false;
      } else if (c.accept_word("semiflat")) {
        a.semiflat = true;
      } else if (c.accept_word("diff")) {
        CfDiffAst d;
        c.expect('(');
        d.degree = c.integer();
        c.expect(',');
        c.expect('(');
        d.from = c.poly_list(')');
        c.expect(')');
        c.expect(',');
        c.expect('(');
        d.to = c.poly_list(')');
        c.expect(')');
        c.expect(',');
        d.tag = c.ident();
        if (d.tag != "zero" && d.tag != "nonzero" && d.tag != "zeromodp" &&
            d.tag != "unknown")
          c.fail("bad differential tag '" + d.tag + "'",
                 "zero|nonzero|zeromodp|unknown");
        c.expect(')');
        a.diffs.push_back(std::move(d));
      } else {
        c.fail("bad complex attribute",
               "bounded|unbounded|semiflat|diff(...)");
      }
    }
    c.expect(')');
    return a;
  }
  c.fail("expected cf literal", "module(...)|complex(...)");
}

QueryAst query(Cursor& c) {
  QueryAst q;
  q.keyword = c.ident();
  auto need_id = [&] { q.ids.push_back(c.ident()); };
  auto need_prime = [&] { q.primes.push_back(prime_operand(c)); };

  if (q.keyword == "cosupp_member" || q.keyword == "cosupp_kappa" ||
      q.keyword == "cosupp_injective") {
    need_id();
    need_prime();
  } else if (q.keyword == "cosupp_describe" || q.keyword == "cr_criterion") {
    need_id();
    const char* more =
        q.keyword == "cosupp_describe" ? "probe" : "witness";
    if (c.accept_word(more)) {
      do {
        need_prime();
      } while (c.accept(','));
    }
  } else if (q.keyword == "supp" || q.keyword == "cosupp_module" ||
             q.keyword == "cf_minimal" || q.keyword == "cf_primes") {
    need_id();
  } else if (q.keyword == "cosupp_tensor" || q.keyword == "cf_basechange") {
    need_id();
    need_id();
  } else if (q.keyword == "cf_lambda" || q.keyword == "cf_colocalize") {
    need_id();
    need_prime();
  } else if (q.keyword == "notclosed") {
    need_id();
    if (!c.accept_word("family"))
      c.fail("expected 'family'", "family");
    c.expect('(');
    q.polys = c.poly_list(')');
    c.expect(')');
    q.number = c.integer();
    need_prime();
  } else if (q.keyword == "gb" || q.keyword == "dim") {
    need_id();
    c.expect('(');
    q.polys = c.poly_list(')');
    c.expect(')');
  } else {
    c.fail("unknown query '" + q.keyword + "'",
           "cosupp_member|cosupp_describe|supp|cosupp_module|cosupp_tensor|"
           "cosupp_kappa|cosupp_injective|cr_criterion|notclosed|cf_lambda|"
           "cf_colocalize|cf_basechange|cf_minimal|cf_primes|gb|dim");
  }
  return q;
}

DeclAst decl(Cursor& c, DeclAst::Kind kind) {
  DeclAst d;
  d.kind = kind;
  d.name = c.ident();
  switch (kind) {
    case DeclAst::Kind::Ring:
      c.expect('=');
      d.ring = ring_expr(c);
      break;
    case DeclAst::Kind::Prime:
      c.expect('=');
      c.expect('(');
      d.polys = c.poly_list(')');
      c.expect(')');
      if (!c.accept_word("in")) c.fail("expected 'in'", "in");
      d.ring_id = c.ident();
      break;
    case DeclAst::Kind::Map:
      c.expect(':');
      d.source_id = c.ident();
      c.expect('-');
      c.expect('>');
      d.target_id = c.ident();
      c.expect('=');
      c.expect('[');
      d.polys = c.poly_list(']');
      c.expect(']');
      break;
    case DeclAst::Kind::Module:
      c.expect('=');
      if (!c.accept_word("coker")) c.fail("expected 'coker'", "coker");
      d.ring_id = c.ident();
      c.expect('[');
      c.skip_ws();
      if (c.peek() != ']') {
        do {
          c.expect('[');
          d.matrix.push_back(c.poly_list(']'));
          c.expect(']');
        } while (c.accept(','));
      }
      c.expect(']');
      break;
    case DeclAst::Kind::Cf:
      c.expect('=');
      d.cf = cf_literal(c);
      break;
  }
  return d;
}

}  // namespace

Program parse_program(const std::string& text) {
  Program p;
  Cursor c(text);
  for (;;) {
    c.skip_ws();
    if (c.eof()) return p;
    if (c.accept_word("ring")) {
      p.decls.push_back(decl(c, DeclAst::Kind::Ring));
    } else if (c.accept_word("prime")) {
      p.decls.push_back(decl(c, DeclAst::Kind::Prime));
    } else if (c.accept_word("map")) {
      p.decls.push_back(decl(c, DeclAst::Kind::Map));
    } else if (c.accept_word("module")) {
      p.decls.push_back(decl(c, DeclAst::Kind::Module));
    } else if (c.accept_word("cf")) {
      p.decls.push_back(decl(c, DeclAst::Kind::Cf));
    } else if (c.accept_word("query")) {
      p.queries.push_back(query(c));
    } else {
      c.fail("expected declaration or query",
             "ring|prime|map|module|cf|query");
    }
    c.expect(';');
  }
}

namespace {

void print_ring(const RingExprAst& e, std::ostream& os) {
  switch (e.kind) {
    case RingExprAst::Kind::Base:
      if (e.base == "F")
        os << "F(" << e.characteristic << ")";
      else if (e.base == "field")
        os << "field(" << e.cardinality << ")";
      else
        os << e.base;
      break;
    case RingExprAst::Kind::PolyVars:
      print_ring(*e.inner, os);
      os << "[";
      for (size_t i = 0; i < e.vars.size(); ++i)
        os << (i ? "," : "") << e.vars[i];
      os << "]";
      break;
    case RingExprAst::Kind::PowerSeries:
      os << "powerseries(";
      print_ring(*e.inner, os);
      os << ",";
      for (size_t i = 0; i < e.vars.size(); ++i)
        os << (i ? "," : "") << e.vars[i];
      os << ")";
      break;
    case RingExprAst::Kind::Quotient:
      print_ring(*e.inner, os);
      os << "/(";
      for (size_t i = 0; i < e.polys.size(); ++i)
        os << (i ? "," : "") << e.polys[i];
      os << ")";
      break;
    case RingExprAst::Kind::Localize:
      os << "localize(";
      print_ring(*e.inner, os);
      os << "," << e.localize_prime << ")";
      break;
  }
}

void print_polys(const std::vector<std::string>& ps, std::ostream& os) {
  for (size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : "") << ps[i];
}

void print_prime_op(const PrimeOpAst& p, std::ostream& os) {
  if (p.is_id) {
    os << p.id;
  } else {
    os << "(";
    print_polys(p.polys, os);
    os << ")";
  }
}

}  // namespace

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& d : p.decls) {
    switch (d.kind) {
      case DeclAst::Kind::Ring:
        os << "ring " << d.name << " = ";
        print_ring(d.ring, os);
        break;
      case DeclAst::Kind::Prime:
        os << "prime " << d.name << " = (";
        print_polys(d.polys, os);
        os << ") in " << d.ring_id;
        break;
      case DeclAst::Kind::Map:
        os << "map " << d.name << " : " << d.source_id << " -> "
           << d.target_id << " = [";
        print_polys(d.polys, os);
        os << "]";
        break;
      case DeclAst::Kind::Module:
        os << "module " << d.name << " = coker " << d.ring_id << " [";
        for (size_t i = 0; i < d.matrix.size(); ++i) {
          os << (i ? ", " : "") << "[";
          print_polys(d.matrix[i], os);
          os << "]";
        }
        os << "]";
        break;
      case DeclAst::Kind::Cf:
        os << "cf " << d.name << " = ";
        if (d.cf.kind == CfAst::Kind::Module) {
          os << "module(" << d.cf.ring_id << ", {";
          for (size_t i = 0; i < d.cf.components.size(); ++i) {
            os << (i ? ", " : "") << "(";
            print_polys(d.cf.components[i].polys, os);
            os << "): " << d.cf.components[i].card;
          }
          os << "})";
        } else {
          os << "complex(" << d.cf.ring_id << ", " << d.cf.lo << ", [";
          for (size_t i = 0; i < d.cf.module_ids.size(); ++i)
            os << (i ? ", " : "") << d.cf.module_ids[i];
          os << "]";
          os << (d.cf.bounded_left ? ", bounded" : ", unbounded");
          if (d.cf.semiflat) os << ", semiflat";
          for (const auto& diff : d.cf.diffs) {
            os << ", diff(" << diff.degree << ", (";
            print_polys(diff.from, os);
            os << "), (";
            print_polys(diff.to, os);
            os << "), " << diff.tag << ")";
          }
          os << ")";
        }
        break;
    }
    os << ";\n";
  }
  for (const auto& q : p.queries) {
    os << "query " << q.keyword;
    size_t prime_idx = 0;
    if (q.keyword == "cosupp_member" || q.keyword == "cosupp_kappa" ||
        q.keyword == "cosupp_injective" || q.keyword == "cf_lambda" ||
        q.keyword == "cf_colocalize") {
      os << " " << q.ids[0] << " ";
      print_prime_op(q.primes[prime_idx], os);
    } else if (q.keyword == "cosupp_describe" ||
               q.keyword == "cr_criterion") {
      os << " " << q.ids[0];
      if (!q.primes.empty()) {
        os << (q.keyword == "cosupp_describe" ? " probe " : " witness ");
        for (size_t i = 0; i < q.primes.size(); ++i) {
          if (i) os << ", ";
          print_prime_op(q.primes[i], os);
        }
      }
    } else if (q.keyword == "notclosed") {
      os << " " << q.ids[0] << " family (";
      print_polys(q.polys, os);
      os << ") " << q.number << " ";
      print_prime_op(q.primes[0], os);
    } else if (q.keyword == "gb" || q.keyword == "dim") {
      os << " " << q.ids[0] << " (";
      print_polys(q.polys, os);
      os << ")";
    } else {
      for (const auto& id : q.ids) os << " " << id;
    }
    os << ";\n";
  }
  return os.str();
}

bool program_equal(const Program& a, const Program& b) {
  return print_program(a) == print_program(b);
}

}  // namespace cosupp
