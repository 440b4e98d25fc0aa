#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cosupp/cf.hpp"
#include "cosupp/engine.hpp"

namespace cosupp {

/// Parse failure with source location and the token set that was expected.
class parse_error : public error {
 public:
  parse_error(const std::string& msg, int line, int col,
              std::string expected)
      : error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(col) +
              (expected.empty() ? "" : " (expected " + expected + ")")),
        line_(line),
        col_(col),
        expected_(std::move(expected)) {}
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_, col_;
  std::string expected_;
};

// Syntax-level AST.  Polynomials stay as source text until a ring context
// resolves them, which keeps printing trivial and round-trips exact.

struct RingExprAst {
  enum class Kind { Base, PolyVars, PowerSeries, Quotient, Localize };
  Kind kind = Kind::Base;
  std::string base;  // "Q" | "Z" | "F" | "field"
  int characteristic = 0;
  std::string cardinality;  // field(...) payload
  std::shared_ptr<RingExprAst> inner;
  std::vector<std::string> vars;
  std::vector<std::string> polys;  // quotient generators
  std::string localize_prime;      // identifier
};

struct CfComponentAst {
  std::vector<std::string> polys;  // prime generators
  std::string card;                // int | "omega" | symbol
};

struct CfDiffAst {
  int degree = 0;
  std::vector<std::string> from, to;
  std::string tag;  // zero | nonzero | zeromodp | unknown
};

struct CfAst {
  enum class Kind { Module, Complex };
  Kind kind = Kind::Module;
  std::string ring_id;
  std::vector<CfComponentAst> components;  // Module
  int lo = 0;                              // Complex
  std::vector<std::string> module_ids;
  bool bounded_left = true;
  bool semiflat = false;
  std::vector<CfDiffAst> diffs;
};

struct DeclAst {
  enum class Kind { Ring, Prime, Map, Module, Cf };
  Kind kind = Kind::Ring;
  std::string name;
  RingExprAst ring;                              // Ring
  std::vector<std::string> polys;                // Prime gens / Map images
  std::string ring_id;                           // Prime / Module
  std::string source_id, target_id;              // Map
  std::vector<std::vector<std::string>> matrix;  // Module
  CfAst cf;                                      // Cf
};

struct PrimeOpAst {
  bool is_id = false;
  std::string id;
  std::vector<std::string> polys;  // inline (g1, g2, ...)
};

struct QueryAst {
  std::string keyword;
  std::vector<std::string> ids;       // positional identifiers
  std::vector<PrimeOpAst> primes;     // positional prime operands
  std::vector<std::string> polys;     // gb/dim generators or family pattern
  int number = 0;                     // notclosed sample count
};

struct Program {
  std::vector<DeclAst> decls;
  std::vector<QueryAst> queries;
};

Program parse_program(const std::string& text);
std::string print_program(const Program& p);
bool program_equal(const Program& a, const Program& b);

struct RunOptions {
  bool json = false;
  bool trace = false;
  std::string order = "grevlex";  // gb/dim queries
  bool assume_gruson_jensen = false;
  long max_steps = 100000;
};

struct Report {
  std::string json_text;   // schema cosupp/1, byte-deterministic
  std::string human_text;  // plain per-query lines
  bool had_errors = false;
};

Report run_program(const Program& p, const RunOptions& opts);

/// Builds a ring from a standalone expression, e.g. "powerseries(Q[x], t)".
RingDescPtr ring_from_text(const std::string& expr);

/// Comma-separated prime generators in the ring's model coordinates;
/// "0" or an empty string gives the zero ideal.
PrimeId prime_from_text(const RingDescPtr& ring, const std::string& gens);

/// Line-oriented interactive loop over the same grammar; each complete
/// statement executes immediately.
int repl_loop(std::istream& in, std::ostream& out, const RunOptions& opts);

}  // namespace cosupp
