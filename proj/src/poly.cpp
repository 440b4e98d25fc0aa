#include "cosupp/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cosupp {

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  auto cmp_plain = [this](const Monomial& x, const Monomial& y,
                          const std::vector<int>& idx) -> int {
    if (kind == Kind::Lex) {
      for (int i : idx) {
        if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
      }
      return 0;
    }
    // grevlex
    unsigned dx = 0, dy = 0;
    for (int i : idx) {
      dx += x[i];
      dy += y[i];
    }
    if (dx != dy) return dx < dy ? -1 : 1;
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
      if (x[*it] != y[*it]) return x[*it] > y[*it] ? -1 : 1;
    }
    return 0;
  };

  std::vector<int> first, rest;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!first_block.empty() && first_block[i])
      first.push_back(static_cast<int>(i));
    else
      rest.push_back(static_cast<int>(i));
  }
  if (!first.empty()) {
    int c = cmp_plain(a, b, first);
    if (c != 0) return c;
  }
  return cmp_plain(a, b, rest);
}

std::string MonomialOrder::key() const {
  std::string k = kind == Kind::Lex ? "lex" : "grevlex";
  if (!first_block.empty()) {
    k += ":";
    for (char c : first_block) k += c ? '1' : '0';
  }
  return k;
}

Rat Poly::normalize_coeff(const Rat& c) const {
  unsigned p = ring_->characteristic;
  if (p == 0) return c;
  // In F_p the denominator is inverted; value kept in [0, p).
  Int num = numerator(c) % p;
  Int den = denominator(c) % p;
  if (den == 0) throw error("division by p in F_p coefficient");
  // extended gcd inverse of den mod p
  Int t = 0, newt = 1, r = p, newr = den < 0 ? den + p : den;
  while (newr != 0) {
    Int q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (t < 0) t += p;
  Int v = (num % p) * t % p;
  if (v < 0) v += p;
  return Rat(v);
}

Poly Poly::constant(RingRef ring, const Rat& c) {
  Poly f(std::move(ring));
  f.add_term(Monomial(f.ring_->vars.size(), 0), c);
  return f;
}

Poly Poly::variable(RingRef ring, const std::string& name) {
  int i = ring->var_index(name);
  if (i < 0) throw error("unknown variable: " + name);
  Poly f(std::move(ring));
  Monomial m(f.ring_->vars.size(), 0);
  m[static_cast<size_t>(i)] = 1;
  f.add_term(m, 1);
  return f;
}

Poly Poly::term(RingRef ring, Monomial m, const Rat& c) {
  Poly f(std::move(ring));
  f.add_term(m, c);
  return f;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (m.size() != ring_->vars.size())
    throw error("exponent vector length mismatch");
  Rat v = normalize_coeff(c);
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (v != 0) terms_.emplace(m, v);
    return;
  }
  it->second = normalize_coeff(it->second + v);
  if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  require_same_ring(*this, o);
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(const Rat& c) const {
  Poly r(ring_);
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

Poly Poly::times_term(const Monomial& m, const Rat& c) const {
  Poly r(ring_);
  for (const auto& [mm, v] : terms_) {
    Monomial prod(mm.size());
    for (size_t i = 0; i < mm.size(); ++i) prod[i] = mm[i] + m[i];
    r.add_term(prod, v * c);
  }
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  require_same_ring(*this, o);
  Poly r(ring_);
  for (const auto& [m, c] : o.terms_) r = r + times_term(m, c);
  return r;
}

std::pair<Monomial, Rat> Poly::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw error("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
    if (order.compare(it->first, best->first) > 0) best = it;
  }
  return {best->first, best->second};
}

Poly Poly::monic(const MonomialOrder& order) const {
  if (is_zero()) return *this;
  auto [m, c] = leading_term(order);
  return scaled(Rat(1) / c);
}

bool Poly::avoids_vars(const std::vector<char>& mask) const {
  for (const auto& [m, c] : terms_) {
    for (size_t i = 0; i < m.size(); ++i)
      if (mask[i] && m[i] > 0) return false;
  }
  return true;
}

Poly Poly::mapped_to(const RingRef& target) const {
  if (target->characteristic != ring_->characteristic)
    throw error("characteristic mismatch in ring transport");
  Poly r(target);
  for (const auto& [m, c] : terms_) {
    Monomial mm(target->vars.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      int j = target->var_index(ring_->vars[i]);
      if (j < 0)
        throw error("variable " + ring_->vars[i] + " absent from target ring");
      mm[static_cast<size_t>(j)] = m[i];
    }
    r.add_term(mm, c);
  }
  return r;
}

Poly Poly::substituted(const RingRef& target,
                       const std::vector<Poly>& images) const {
  if (images.size() != ring_->vars.size())
    throw error("substitution arity mismatch");
  Poly r = Poly::zero(target);
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::constant(target, c);
    for (size_t i = 0; i < m.size(); ++i) {
      for (unsigned e = 0; e < m[i]; ++e) t = t * images[i];
    }
    r = r + t;
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat v = c;
    if (!first) {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) v = -v;
    } else if (v < 0 && ring_->characteristic == 0) {
      os << "-";
      v = -v;
    }
    first = false;
    bool has_var = total_degree(m) > 0;
    if (!has_var || v != 1) {
      os << v;
      if (has_var) os << "*";
    }
    bool firstv = true;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << ring_->vars[i];
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

bool same_ring(const Poly& a, const Poly& b) {
  return a.ring() == b.ring() || *a.ring() == *b.ring();
}

void require_same_ring(const Poly& a, const Poly& b) {
  if (!same_ring(a, b)) throw error("ambient ring mismatch");
}

namespace {

// Small recursive-descent parser for polynomial expressions.
class PolyParser {
 public:
  PolyParser(RingRef ring, const std::string& text)
      : ring_(std::move(ring)), text_(text) {}

  Poly parse() {
    Poly f = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw error("unexpected character in polynomial at offset " +
                  std::to_string(pos_) + ": '" + text_ + "'");
    return f;
  }

 private:
  Poly expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = get() == '-';
    Poly f = term();
    if (neg) f = -f;
    skip_ws();
    while (peek() == '+' || peek() == '-') {
      bool minus = get() == '-';
      Poly g = term();
      f = minus ? f - g : f + g;
      skip_ws();
    }
    return f;
  }

  Poly term() {
    Poly f = factor();
    skip_ws();
    while (peek() == '*' || implicit_mul()) {
      if (peek() == '*') get();
      f = f * factor();
      skip_ws();
    }
    return f;
  }

  bool implicit_mul() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  Poly factor() {
    skip_ws();
    Poly base = atom();
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      long e = integer();
      if (e < 0) throw error("negative exponent");
      Poly r = Poly::constant(ring_, 1);
      for (long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      get();
      Poly f = expr();
      skip_ws();
      if (get() != ')') throw error("expected ')' in polynomial");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num(number_str());
      skip_ws();
      if (peek() == '/') {
        size_t save = pos_;
        get();
        skip_ws();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          Int den(number_str());
          return Poly::constant(ring_, Rat(num, den));
        }
        pos_ = save;
      }
      return Poly::constant(ring_, Rat(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) ||
             peek() == '_')
        name += get();
      return Poly::variable(ring_, name);
    }
    throw error(std::string("unexpected character '") + c +
                "' in polynomial");
  }

  long integer() {
    std::string s = number_str();
    return std::stol(s);
  }

  std::string number_str() {
    std::string s;
    while (std::isdigit(static_cast<unsigned char>(peek()))) s += get();
    if (s.empty()) throw error("expected number in polynomial");
    return s;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

  RingRef ring_;
  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingRef& ring, const std::string& text) {
  return PolyParser(ring, text).parse();
}

}  // namespace cosupp
