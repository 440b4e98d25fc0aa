#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cosupp/dsl.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw cosupp::error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cosupport calculator for commutative noetherian rings"};
  app.require_subcommand(1);

  cosupp::RunOptions opts;
  std::string file;

  auto add_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--json", opts.json, "emit the JSON report on stdout");
    cmd->add_flag("--trace", opts.trace, "print derivation traces");
    cmd->add_option("--order", opts.order, "monomial order for gb/dim")
        ->check(CLI::IsMember({"lex", "grevlex"}));
    cmd->add_flag("--assume-gruson-jensen", opts.assume_gruson_jensen,
                  "enable the conjecture-gated inference rule");
    cmd->add_option("--max-steps", opts.max_steps,
                    "reduction step budget per query");
  };

  CLI::App* run = app.add_subcommand("run", "execute a program file");
  run->add_option("file", file, "program file, or - for stdin")->required();
  add_flags(run);

  CLI::App* repl = app.add_subcommand("repl", "interactive session");
  add_flags(repl);

  CLI11_PARSE(app, argc, argv);

  try {
    if (repl->parsed()) return cosupp::repl_loop(std::cin, std::cout, opts);
    cosupp::Program p = cosupp::parse_program(read_input(file));
    cosupp::Report r = cosupp::run_program(p, opts);
    if (opts.json)
      std::cout << r.json_text;
    else
      std::cout << r.human_text;
    std::cerr << (r.had_errors ? "errors occurred\n" : "");
    return r.had_errors ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
