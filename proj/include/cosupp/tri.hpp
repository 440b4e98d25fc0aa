#pragma once

#include <string>

namespace cosupp {

/// Three-valued truth.  `unknown` always carries the reason the question
/// could not be decided.
class Tri {
 public:
  enum class Value { False, True, Unknown };

  Tri() : value_(Value::Unknown), reason_("uninitialized") {}

  static Tri yes() { return Tri(Value::True, ""); }
  static Tri no() { return Tri(Value::False, ""); }
  static Tri unknown(std::string reason) {
    return Tri(Value::Unknown, std::move(reason));
  }
  static Tri of(bool b) { return b ? yes() : no(); }

  bool is_true() const { return value_ == Value::True; }
  bool is_false() const { return value_ == Value::False; }
  bool is_unknown() const { return value_ == Value::Unknown; }
  bool decided() const { return !is_unknown(); }

  const std::string& reason() const { return reason_; }

  /// Kleene conjunction.  False dominates; unknown otherwise propagates.
  friend Tri operator&&(const Tri& a, const Tri& b) {
    if (a.is_false() || b.is_false()) return no();
    if (a.is_true() && b.is_true()) return yes();
    return unknown(a.is_unknown() ? a.reason() : b.reason());
  }

  Tri negate() const {
    if (is_true()) return no();
    if (is_false()) return yes();
    return *this;
  }

  const char* str() const {
    switch (value_) {
      case Value::True: return "yes";
      case Value::False: return "no";
      default: return "unknown";
    }
  }

 private:
  Tri(Value v, std::string reason) : value_(v), reason_(std::move(reason)) {}

  Value value_;
  std::string reason_;
};

}  // namespace cosupp
