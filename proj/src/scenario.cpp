#include "mgm/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace mgm {

namespace {

std::string where_text(const Location& at) {
  return std::to_string(at.line) + ":" + std::to_string(at.column);
}

const std::set<std::string> kReserved = {"tor", "com", "expect", "bound", "over", "check", "ring", "module",
                                         "indmodule", "context", "diagonal", "complex"};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// One logical line with a read position; columns are 1-based.
class Cursor {
 public:
  Cursor(std::string text, int line) : s_(std::move(text)), line_(line) {}

  Location here() const { return {line_, static_cast<int>(pos_) + 1}; }
  int line() const { return line_; }
  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word(const char* what) {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && word_char(s_[pos_])) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return s_.substr(start, pos_ - start);
  }
  std::string peek_word() {
    skip();
    std::size_t p = pos_;
    while (p < s_.size() && word_char(s_[p])) ++p;
    return s_.substr(pos_, p - pos_);
  }
  long integer(const char* what) {
    const Location at = here();
    std::string w = word(what);
    try {
      std::size_t used = 0;
      long v = std::stol(w, &used);
      if (used == w.size()) return v;
    } catch (const std::exception&) {
    }
    throw ScenarioError(at, std::string("expected ") + what + ", got '" + w + "'");
  }
  // Raw text up to the closing character on this line.
  std::string until(char close) {
    std::size_t end = s_.find(close, pos_);
    if (end == std::string::npos) fail(std::string("missing '") + close + "'");
    std::string out = s_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return out;
  }
  void finish() {
    if (!at_end()) fail("unexpected '" + s_.substr(pos_) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ScenarioError(here(), msg); }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string s_;
  int line_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> item_list(const std::string& text, const Location& at, const char* what) {
  if (trim(text).empty()) return {};
  std::vector<std::string> items = split(text, ',');
  for (const auto& i : items)
    if (i.empty()) throw ScenarioError(at, std::string("empty ") + what + " in list");
  return items;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string name_of(const Declaration& d) {
  return std::visit([](const auto& x) { return x.name; }, d);
}

// Builds the objects a scenario names, checking every reference; also
// rewrites polynomial text into canonical form.
class Builder {
 public:
  Workspace ws;

  void declare(const std::string& name, const std::string& kind, const Location& at) {
    if (kReserved.count(name)) throw ScenarioError(at, "'" + name + "' is a reserved word");
    if (kinds_.count(name)) throw ScenarioError(at, "'" + name + "' is already declared");
    kinds_[name] = kind;
  }

  void add(Declaration& d) {
    std::visit([this](auto& x) { build(x); }, d);
  }

  const std::string& kind_of(const std::string& name, const Location& at) const {
    auto it = kinds_.find(name);
    if (it == kinds_.end()) throw ScenarioError(at, "undeclared identifier '" + name + "'");
    return it->second;
  }

  void require(const std::string& name, std::initializer_list<const char*> allowed, const Location& at) const {
    const std::string& k = kind_of(name, at);
    for (const char* a : allowed)
      if (k == a) return;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : " or ") + a;
    throw ScenarioError(at, "'" + name + "' is a " + k + ", expected a " + list);
  }

  const Ring& ring(const std::string& name, const Location& at) const {
    require(name, {"ring"}, at);
    return ws.rings.at(name);
  }

  // Ring of a module, complex or ind-module.
  Ring ring_of(const std::string& name, const Location& at) const {
    const std::string& k = kind_of(name, at);
    if (k == "module") return ws.modules.at(name).ring();
    if (k == "complex") return ws.complexes.at(name).ring();
    if (k == "indmodule") return ws.ind_modules.at(name).level(1).ring();
    if (k == "context") return ws.contexts.at(name).ring();
    if (k == "diagonal") return ws.diagonals.at(name).a();
    return ws.rings.at(name);
  }

  Complex as_complex(const std::string& name, const Location& at) const {
    require(name, {"module", "complex"}, at);
    if (kind_of(name, at) == "module") return Complex::single(ws.modules.at(name));
    return ws.complexes.at(name);
  }

 private:
  static Poly parse_poly(const Ring& r, std::string& text, const Location& at) {
    try {
      Poly p = r.normalize(r.parse(text));
      text = r.format(p);
      return p;
    } catch (const std::exception& e) {
      throw ScenarioError(at, "bad polynomial '" + text + "': " + e.what());
    }
  }

  static std::vector<Poly> parse_polys(const Ring& r, std::vector<std::string>& texts, const Location& at) {
    std::vector<Poly> out;
    for (auto& t : texts) out.push_back(parse_poly(r, t, at));
    return out;
  }

  template <class F>
  static auto guarded(const Location& at, F f) {
    try {
      return f();
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScenarioError(at, e.what());
    }
  }

  void build(RingDecl& d) {
    Ring r;
    if (d.kind == "integers") {
      r = Ring::integers();
    } else if (d.kind == "rationals") {
      r = Ring::rationals();
    } else if (d.kind == "field") {
      r = guarded(d.loc, [&] { return Ring::prime_field(d.modulus); });
    } else if (d.kind == "poly") {
      const Ring& base = ring(d.base, d.loc);
      r = guarded(d.loc, [&] { return Ring::poly(base, d.items, d.lex ? MonomialOrder::Lex : MonomialOrder::GrevLex); });
    } else {
      const Ring& base = ring(d.base, d.loc);
      auto gens = parse_polys(base, d.items, d.loc);
      r = guarded(d.loc, [&] { return Ring::quotient(base, gens); });
    }
    declare(d.name, "ring", d.loc);
    ws.rings[d.name] = r;
  }

  void build(ModuleDecl& d) {
    const Ring& r = ring(d.ring, d.loc);
    FpModule m;
    if (d.kind == "free") {
      m = FpModule::free(r, d.rank);
    } else if (d.kind == "quotient") {
      m = FpModule::cyclic(r, parse_polys(r, d.gens, d.loc));
    } else {
      const std::size_t cols = d.rows.front().size();
      for (std::size_t i = 0; i < d.rows.size(); ++i)
        if (d.rows[i].size() != cols)
          throw ScenarioError(d.loc, "dimension mismatch: row " + std::to_string(i + 1) + " has " +
                                         std::to_string(d.rows[i].size()) + " entries, expected " + std::to_string(cols));
      Matrix p(r, d.rows.size(), cols);
      for (std::size_t i = 0; i < d.rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) p.set(i, j, parse_poly(r, d.rows[i][j], d.loc));
      m = FpModule(p);
    }
    declare(d.name, "module", d.loc);
    ws.modules[d.name] = m;
  }

  void build(IndModuleDecl& d) {
    const Ring& r = ring(d.ring, d.loc);
    ModuleTower t;
    if (d.kind == "prufer" || d.kind == "localize") {
      Poly a = parse_poly(r, d.arg, d.loc);
      t = guarded(d.loc, [&] { return d.kind == "prufer" ? prufer_module(r, a) : localization_module(r, a); });
    } else if (d.kind == "fractions") {
      t = guarded(d.loc, [&] { return fractions_module(r); });
    } else {
      require(d.arg, {"module"}, d.loc);
      const FpModule& m = ws.modules.at(d.arg);
      if (!(m.ring() == r)) throw ScenarioError(d.loc, "module '" + d.arg + "' is not over " + d.ring);
      t = countable_sum(m);
    }
    declare(d.name, "indmodule", d.loc);
    ws.ind_modules[d.name] = t;
  }

  void build(ContextDecl& d) {
    const Ring& r = ring(d.ring, d.loc);
    if (d.gens.empty()) throw ScenarioError(d.loc, "context needs at least one generator");
    auto gens = parse_polys(r, d.gens, d.loc);
    declare(d.name, "context", d.loc);
    ws.contexts[d.name] = AdicContext(r, gens);
  }

  void build(DiagonalDecl& d) {
    const Ring& r = ring(d.ring, d.loc);
    DiagonalContext dc = guarded(d.loc, [&] { return DiagonalContext(r); });
    declare(d.name, "diagonal", d.loc);
    ws.diagonals[d.name] = dc;
  }

  void build(ComplexDecl& d) {
    Complex c;
    if (d.kind == "resolution") {
      require(d.source, {"module"}, d.loc);
      c = guarded(d.loc, [&] { return free_resolution(ws.modules.at(d.source)).complex; });
    } else {
      require(d.context, {"context"}, d.loc);
      const AdicContext& ctx = ws.contexts.at(d.context);
      Complex src = as_complex(d.source, d.loc);
      if (!(src.ring() == ctx.ring())) throw ScenarioError(d.loc, "'" + d.source + "' is not over the ring of " + d.context);
      if (d.stage == 0) throw ScenarioError(d.loc, "stages are numbered from 1");
      if (d.kind == "torsion")
        c = tensor_complexes(ctx.dual_koszul(d.stage), src).with_provenance(kTorsionBuilt);
      else
        c = tensor_complexes(ctx.koszul(d.stage), src).with_provenance(kCompletionBuilt);
    }
    declare(d.name, "complex", d.loc);
    ws.complexes[d.name] = c;
  }

  std::map<std::string, std::string> kinds_;
};

// ------------------------------------------------------------ checks

struct CheckSignature {
  CheckInfo info;
  std::vector<std::vector<const char*>> args;  // allowed kinds per argument
  bool same_ring = true;
};

const std::vector<CheckSignature>& signatures() {
  static const std::vector<CheckSignature> s = {
      {{"wpr", "wpr CTX", "Koszul homology of the stages is pro-zero"}, {{"context"}}},
      {{"tensor_completion", "tensor_completion CTX P",
        "dual stage (x) P against dual stage (x) P/a^j P for a free complex P"},
       {{"context"}, {"module", "complex"}}},
      {{"torsion_of_completion", "torsion_of_completion CTX M",
        "torsion of the derived completion against the completed torsion"},
       {{"context"}, {"module", "complex"}}},
      {{"completion_of_torsion", "completion_of_torsion CTX M",
        "completion of the derived torsion against the derived completion"},
       {{"context"}, {"module", "complex"}}},
      {{"mgm", "mgm CTX M tor|com", "round trip through torsion and completion on a certified input"},
       {{"context"}, {"module", "complex"}}},
      {{"diagonal_torsion", "diagonal_torsion DIAG M N", "torsion of the diagonal restriction against torsion of M (x) N"},
       {{"diagonal"}, {"module"}, {"module"}}},
      {{"diagonal_fg", "diagonal_fg DIAG M N", "diagonal Koszul homology against Tor, finite length"},
       {{"diagonal"}, {"module"}, {"module"}}},
      {{"diagonal_completed", "diagonal_completed DIAG M N", "the same comparison after completion towers"},
       {{"diagonal"}, {"module"}, {"module"}}},
      {{"serre", "serre DIAG M N [expect K]", "intersection multiplicity by resolution and by the diagonal"},
       {{"diagonal"}, {"module"}, {"module"}}},
      {{"cofinite", "cofinite CTX M", "finite generation of Ext(A/a, M) against that of the derived completion"},
       {{"context"}, {"indmodule", "module"}}},
      {{"zero_comparison", "zero_comparison M", "compares M with itself through the zero map (fails unless M = 0)"},
       {{"module"}}},
  };
  return s;
}

const CheckSignature& signature_for(const std::string& kind, const Location& at) {
  for (const auto& s : signatures())
    if (s.info.kind == kind) return s;
  throw ScenarioError(at, "unknown check '" + kind + "'");
}

void validate_check(const Builder& b, const CheckDecl& c) {
  const CheckSignature& sig = signature_for(c.kind, c.loc);
  if (c.args.size() != sig.args.size())
    throw ScenarioError(c.loc, "check " + c.kind + " takes " + std::to_string(sig.args.size()) + " arguments (usage: " +
                                   sig.info.usage + ")");
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    const auto& allowed = sig.args[i];
    const std::string& k = b.kind_of(c.args[i], c.loc);
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) == allowed.end())
      throw ScenarioError(c.loc, "'" + c.args[i] + "' is a " + k + ", not usable as argument " + std::to_string(i + 1) +
                                     " of " + c.kind);
  }
  if (c.args.size() > 1) {
    Ring r = b.ring_of(c.args[0], c.loc);
    for (std::size_t i = 1; i < c.args.size(); ++i)
      if (!(b.ring_of(c.args[i], c.loc) == r))
        throw ScenarioError(c.loc, "'" + c.args[i] + "' does not live over the ring of '" + c.args[0] + "'");
  }
  if (c.kind == "mgm" && c.side.empty()) throw ScenarioError(c.loc, "mgm needs a side: tor or com");
  if (c.kind != "mgm" && !c.side.empty()) throw ScenarioError(c.loc, "only mgm takes a side");
  if (c.kind != "serre" && c.expect) throw ScenarioError(c.loc, "only serre takes expect");
}

// ------------------------------------------------------------ parsing

struct Line {
  std::string text;
  int number;
};

std::vector<Line> logical_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    out.push_back({raw, n});
  }
  return out;
}

std::string expect_over(Cursor& c) {
  if (c.word("'over'") != "over") c.fail("expected 'over'");
  return c.word("ring name");
}

RingDecl parse_ring(Cursor& c, const Location& at) {
  RingDecl d;
  d.loc = at;
  d.name = c.word("ring name");
  c.expect('=');
  d.kind = c.word("ring kind");
  if (d.kind == "field") {
    d.modulus = c.integer("prime");
  } else if (d.kind == "poly" || d.kind == "quotient") {
    d.base = c.word("base ring");
    c.expect('[');
    d.items = item_list(c.until(']'), at, d.kind == "poly" ? "variable" : "generator");
    if (d.items.empty()) c.fail(d.kind == "poly" ? "no variables" : "no generators");
    if (d.kind == "poly" && !c.at_end()) {
      const std::string order = c.word("monomial order");
      if (order == "lex")
        d.lex = true;
      else if (order != "grevlex")
        c.fail("unknown monomial order '" + order + "'");
    }
  } else if (d.kind != "integers" && d.kind != "rationals") {
    c.fail("unknown ring kind '" + d.kind + "'");
  }
  c.finish();
  return d;
}

ModuleDecl parse_module(Cursor& c, const Location& at, const std::vector<Line>& lines, std::size_t& next) {
  ModuleDecl d;
  d.loc = at;
  d.name = c.word("module name");
  d.ring = expect_over(c);
  if (c.peek('[')) {
    d.kind = "matrix";
    c.expect('[');
    if (c.at_end()) {
      // Row per line until a closing bracket.
      bool closed = false;
      while (next < lines.size()) {
        const Line& l = lines[next++];
        std::string t = trim(l.text);
        if (t.empty()) continue;
        if (t == "]") {
          closed = true;
          break;
        }
        d.rows.push_back(item_list(t, {l.number, 1}, "entry"));
      }
      if (!closed) throw ScenarioError(at, "matrix is missing its closing ']'");
    } else {
      for (const auto& row : split(c.until(']'), ';')) d.rows.push_back(item_list(row, at, "entry"));
      c.finish();
    }
    if (d.rows.empty() || d.rows.front().empty()) throw ScenarioError(at, "empty matrix; use 'free N'");
    return d;
  }
  d.kind = c.word("module kind");
  if (d.kind == "free") {
    long r = c.integer("rank");
    if (r < 0) c.fail("negative rank");
    d.rank = static_cast<std::size_t>(r);
  } else if (d.kind == "quotient") {
    c.expect('(');
    d.gens = item_list(c.until(')'), at, "generator");
  } else {
    c.fail("unknown module kind '" + d.kind + "'");
  }
  c.finish();
  return d;
}

IndModuleDecl parse_ind(Cursor& c, const Location& at) {
  IndModuleDecl d;
  d.loc = at;
  d.name = c.word("module name");
  d.ring = expect_over(c);
  d.kind = c.word("ind-module kind");
  if (d.kind == "prufer" || d.kind == "localize") {
    c.expect('(');
    d.arg = trim(c.until(')'));
    if (d.arg.empty()) c.fail("missing element");
  } else if (d.kind == "sum") {
    d.arg = c.word("module name");
  } else if (d.kind != "fractions") {
    c.fail("unknown ind-module kind '" + d.kind + "'");
  }
  c.finish();
  return d;
}

ContextDecl parse_context(Cursor& c, const Location& at) {
  ContextDecl d;
  d.loc = at;
  d.name = c.word("context name");
  d.ring = expect_over(c);
  c.expect('(');
  d.gens = item_list(c.until(')'), at, "generator");
  c.finish();
  return d;
}

DiagonalDecl parse_diagonal(Cursor& c, const Location& at) {
  DiagonalDecl d;
  d.loc = at;
  d.name = c.word("diagonal name");
  d.ring = expect_over(c);
  c.finish();
  return d;
}

ComplexDecl parse_complex(Cursor& c, const Location& at) {
  ComplexDecl d;
  d.loc = at;
  d.name = c.word("complex name");
  c.expect('=');
  d.kind = c.word("complex kind");
  if (d.kind == "torsion" || d.kind == "completion") {
    d.context = c.word("context name");
    long s = c.integer("stage");
    if (s < 1) c.fail("stages are numbered from 1");
    d.stage = static_cast<std::size_t>(s);
    d.source = c.word("module or complex name");
  } else if (d.kind == "resolution") {
    d.source = c.word("module name");
  } else {
    c.fail("unknown complex kind '" + d.kind + "'");
  }
  c.finish();
  return d;
}

std::size_t parse_bound(Cursor& c) {
  long b = c.integer("bound");
  if (b < 2) c.fail("bound must be at least 2");
  return static_cast<std::size_t>(b);
}

CheckDecl parse_check(Cursor& c, const Location& at) {
  CheckDecl d;
  d.loc = at;
  d.kind = c.word("check kind");
  while (!c.at_end()) {
    const std::string w = c.word("argument");
    if (w == "bound") {
      if (d.bound) c.fail("bound given twice");
      d.bound = parse_bound(c);
    } else if (w == "expect") {
      if (d.expect) c.fail("expect given twice");
      d.expect = c.integer("expected value");
    } else if (w == "tor" || w == "com") {
      if (!d.side.empty()) c.fail("side given twice");
      d.side = w;
    } else {
      d.args.push_back(w);
    }
  }
  return d;
}

// ------------------------------------------------------------ printing

std::string print_decl(const RingDecl& d) {
  std::string s = "ring " + d.name + " = " + d.kind;
  if (d.kind == "field") s += " " + std::to_string(d.modulus);
  if (d.kind == "poly" || d.kind == "quotient") s += " " + d.base + " [" + join(d.items, ", ") + "]";
  if (d.lex) s += " lex";
  return s + "\n";
}

std::string print_decl(const ModuleDecl& d) {
  std::string s = "module " + d.name + " over " + d.ring;
  if (d.kind == "free") return s + " free " + std::to_string(d.rank) + "\n";
  if (d.kind == "quotient") return s + " quotient (" + join(d.gens, ", ") + ")\n";
  s += " [\n";
  for (const auto& row : d.rows) s += "  " + join(row, ", ") + "\n";
  return s + "]\n";
}

std::string print_decl(const IndModuleDecl& d) {
  std::string s = "indmodule " + d.name + " over " + d.ring + " " + d.kind;
  if (d.kind == "prufer" || d.kind == "localize") s += " (" + d.arg + ")";
  if (d.kind == "sum") s += " " + d.arg;
  return s + "\n";
}

std::string print_decl(const ContextDecl& d) {
  return "context " + d.name + " over " + d.ring + " (" + join(d.gens, ", ") + ")\n";
}

std::string print_decl(const DiagonalDecl& d) { return "diagonal " + d.name + " over " + d.ring + "\n"; }

std::string print_decl(const ComplexDecl& d) {
  if (d.kind == "resolution") return "complex " + d.name + " = resolution " + d.source + "\n";
  return "complex " + d.name + " = " + d.kind + " " + d.context + " " + std::to_string(d.stage) + " " + d.source + "\n";
}

std::string print_check(const CheckDecl& c) {
  std::string s = "check " + c.kind;
  for (const auto& a : c.args) s += " " + a;
  if (!c.side.empty()) s += " " + c.side;
  if (c.expect) s += " expect " + std::to_string(*c.expect);
  if (c.bound) s += " bound " + std::to_string(*c.bound);
  return s + "\n";
}

std::vector<std::string> references(const Declaration& d) {
  return std::visit(
      [](const auto& x) -> std::vector<std::string> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, RingDecl>) {
          if (x.base.empty()) return {};
          return {x.base};
        } else if constexpr (std::is_same_v<T, IndModuleDecl>) {
          if (x.kind == "sum") return {x.ring, x.arg};
          return {x.ring};
        } else if constexpr (std::is_same_v<T, ComplexDecl>) {
          if (x.kind == "resolution") return {x.source};
          return {x.context, x.source};
        } else {
          return {x.ring};
        }
      },
      d);
}

}  // namespace

ScenarioError::ScenarioError(Location where, const std::string& message)
    : std::runtime_error("line " + where_text(where) + ": " + message), where_(where), message_(message) {}

Scenario parse_scenario(const std::string& text) {
  Scenario out;
  Builder b;
  const std::vector<Line> lines = logical_lines(text);
  std::size_t next = 0;
  while (next < lines.size()) {
    const Line& line = lines[next++];
    Cursor c(line.text, line.number);
    if (c.at_end()) continue;
    const Location at = c.here();
    const std::string key = c.word("keyword");
    if (key == "bound") {
      if (out.bound) c.fail("bound given twice");
      out.bound = parse_bound(c);
      c.finish();
      continue;
    }
    if (key == "check") {
      CheckDecl chk = parse_check(c, at);
      validate_check(b, chk);
      out.checks.push_back(std::move(chk));
      continue;
    }
    Declaration d;
    if (key == "ring")
      d = parse_ring(c, at);
    else if (key == "module")
      d = parse_module(c, at, lines, next);
    else if (key == "indmodule")
      d = parse_ind(c, at);
    else if (key == "context")
      d = parse_context(c, at);
    else if (key == "diagonal")
      d = parse_diagonal(c, at);
    else if (key == "complex")
      d = parse_complex(c, at);
    else
      throw ScenarioError(at, "unknown keyword '" + key + "'");
    b.add(d);
    out.decls.push_back(std::move(d));
  }
  return out;
}

std::string print_scenario(const Scenario& s) {
  std::string out;
  if (s.bound) out += "bound " + std::to_string(*s.bound) + "\n";
  for (const auto& d : s.decls) out += std::visit([](const auto& x) { return print_decl(x); }, d);
  for (const auto& c : s.checks) out += print_check(c);
  return out;
}

std::string reproduction(const Scenario& s, std::size_t index) {
  const CheckDecl& chk = s.checks.at(index);
  std::map<std::string, const Declaration*> by_name;
  for (const auto& d : s.decls) by_name[name_of(d)] = &d;
  std::set<std::string> needed;
  std::vector<std::string> todo = chk.args;
  while (!todo.empty()) {
    std::string n = todo.back();
    todo.pop_back();
    if (!needed.insert(n).second) continue;
    auto it = by_name.find(n);
    if (it == by_name.end()) continue;
    for (auto& r : references(*it->second)) todo.push_back(r);
  }
  std::string out;
  if (s.bound) out += "bound " + std::to_string(*s.bound) + "\n";
  for (const auto& d : s.decls)
    if (needed.count(name_of(d))) out += std::visit([](const auto& x) { return print_decl(x); }, d);
  return out + print_check(chk);
}

const std::vector<CheckInfo>& check_catalogue() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& s : signatures()) v.push_back(s.info);
    return v;
  }();
  return infos;
}

Workspace instantiate(const Scenario& s) {
  Builder b;
  for (Declaration d : s.decls) b.add(d);
  return std::move(b.ws);
}

std::size_t effective_bound(const Scenario& s, std::size_t index, std::optional<std::size_t> bound_override) {
  if (bound_override) return *bound_override;
  const CheckDecl& c = s.checks.at(index);
  if (c.bound) return *c.bound;
  if (s.bound) return *s.bound;
  return kDefaultBound;
}

TheoremInstance run_check(const Workspace& ws, const Scenario& s, std::size_t index,
                          std::optional<std::size_t> bound_override) {
  const CheckDecl& c = s.checks.at(index);
  const std::size_t bound = effective_bound(s, index, bound_override);
  auto complex_arg = [&](const std::string& name) {
    auto it = ws.complexes.find(name);
    if (it != ws.complexes.end()) return it->second;
    return Complex::single(ws.modules.at(name));
  };
  const auto& a = c.args;
  if (c.kind == "wpr") {
    const AdicContext& ctx = ws.contexts.at(a[0]);
    TheoremInstance t;
    t.id = "wpr";
    t.input = ctx.describe();
    t.bound = bound;
    t.verdict = wpr_check(ctx, bound);
    t.trace = t.verdict.witnesses;
    return t;
  }
  if (c.kind == "tensor_completion") return check_tensor_completion(ws.contexts.at(a[0]), complex_arg(a[1]), bound);
  if (c.kind == "torsion_of_completion")
    return check_torsion_of_completion(ws.contexts.at(a[0]), complex_arg(a[1]), bound);
  if (c.kind == "completion_of_torsion")
    return check_completion_of_torsion(ws.contexts.at(a[0]), complex_arg(a[1]), bound);
  if (c.kind == "mgm")
    return check_mgm(ws.contexts.at(a[0]), complex_arg(a[1]), c.side == "tor" ? MgmSide::Torsion : MgmSide::Completion,
                     bound);
  if (c.kind == "diagonal_torsion" || c.kind == "diagonal_fg" || c.kind == "diagonal_completed" || c.kind == "serre") {
    const DiagonalContext& d = ws.diagonals.at(a[0]);
    const FpModule& m = ws.modules.at(a[1]);
    const FpModule& n = ws.modules.at(a[2]);
    if (c.kind == "diagonal_torsion") return check_diagonal_torsion(d, m, n, bound);
    if (c.kind == "diagonal_fg") return check_diagonal_fg(d, m, n, bound);
    if (c.kind == "diagonal_completed") return check_diagonal_completed(d, m, n, bound);
    return check_serre(d, m, n, c.expect);
  }
  if (c.kind == "cofinite") {
    auto it = ws.ind_modules.find(a[1]);
    ModuleTower m = it != ws.ind_modules.end() ? it->second : constant_tower(ws.modules.at(a[1]), Direction::Ind);
    return check_cofinite(ws.contexts.at(a[0]), m, bound, a[1]);
  }
  if (c.kind == "zero_comparison") return check_zero_comparison(ws.modules.at(a[0]), bound);
  throw ScenarioError(c.loc, "unknown check '" + c.kind + "'");
}

}  // namespace mgm
