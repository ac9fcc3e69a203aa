#ifndef MGM_SCENARIO_HPP
#define MGM_SCENARIO_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mgm/theorems.hpp"

namespace mgm {

// Source position of a declaration. Positions do not take part in equality,
// so a reparsed printout compares equal to the original.
struct Location {
  int line = 0;
  int column = 0;
  bool operator==(const Location&) const { return true; }
};

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(Location where, const std::string& message);
  const Location& where() const { return where_; }
  const std::string& message() const { return message_; }

 private:
  Location where_;
  std::string message_;
};

// ring NAME = integers | rationals | field P | poly BASE [v, ...] [lex] | quotient BASE [f, ...]
struct RingDecl {
  std::string name;
  std::string kind;
  long modulus = 0;
  std::string base;
  std::vector<std::string> items;  // variables or ideal generators
  bool lex = false;
  Location loc;
  bool operator==(const RingDecl&) const = default;
};

// module NAME over RING [rows] | free N | quotient (f, ...)
struct ModuleDecl {
  std::string name;
  std::string ring;
  std::string kind;  // matrix, free, quotient
  std::vector<std::vector<std::string>> rows;
  std::size_t rank = 0;
  std::vector<std::string> gens;
  Location loc;
  bool operator==(const ModuleDecl&) const = default;
};

// indmodule NAME over RING prufer f | localize f | fractions | sum MODULE
struct IndModuleDecl {
  std::string name;
  std::string ring;
  std::string kind;
  std::string arg;
  Location loc;
  bool operator==(const IndModuleDecl&) const = default;
};

// context NAME over RING (f, ...)
struct ContextDecl {
  std::string name;
  std::string ring;
  std::vector<std::string> gens;
  Location loc;
  bool operator==(const ContextDecl&) const = default;
};

// diagonal NAME over RING
struct DiagonalDecl {
  std::string name;
  std::string ring;
  Location loc;
  bool operator==(const DiagonalDecl&) const = default;
};

// complex NAME = torsion CTX T MODULE | completion CTX J MODULE | resolution MODULE
struct ComplexDecl {
  std::string name;
  std::string kind;
  std::string context;
  std::size_t stage = 0;
  std::string source;  // module or complex
  Location loc;
  bool operator==(const ComplexDecl&) const = default;
};

using Declaration = std::variant<RingDecl, ModuleDecl, IndModuleDecl, ContextDecl, DiagonalDecl, ComplexDecl>;

// check KIND ARGS... [tor|com] [expect N] [bound N]
struct CheckDecl {
  std::string kind;
  std::vector<std::string> args;
  std::string side;
  std::optional<long> expect;
  std::optional<std::size_t> bound;
  Location loc;
  bool operator==(const CheckDecl&) const = default;
};

struct Scenario {
  std::optional<std::size_t> bound;
  std::vector<Declaration> decls;
  std::vector<CheckDecl> checks;
  bool operator==(const Scenario&) const = default;
};

// Validates names, arities, polynomials and matrix shapes; canonicalizes
// polynomial text. Throws ScenarioError with the offending position.
Scenario parse_scenario(const std::string& text);
std::string print_scenario(const Scenario& s);
// Declarations a check needs (transitively), in file order, followed by the
// check itself: a self-contained scenario.
std::string reproduction(const Scenario& s, std::size_t check_index);

struct CheckInfo {
  std::string kind;
  std::string usage;
  std::string summary;
};
const std::vector<CheckInfo>& check_catalogue();

// Named objects built from the declarations.
struct Workspace {
  std::map<std::string, Ring> rings;
  std::map<std::string, FpModule> modules;
  std::map<std::string, ModuleTower> ind_modules;
  std::map<std::string, AdicContext> contexts;
  std::map<std::string, DiagonalContext> diagonals;
  std::map<std::string, Complex> complexes;
};
Workspace instantiate(const Scenario& s);

// Runs one check; bound is the override (if any), else the check's own,
// else the scenario's, else the default.
TheoremInstance run_check(const Workspace& ws, const Scenario& s, std::size_t index,
                          std::optional<std::size_t> bound_override = std::nullopt);
std::size_t effective_bound(const Scenario& s, std::size_t index, std::optional<std::size_t> bound_override);

}  // namespace mgm

#endif  // MGM_SCENARIO_HPP
