#include "mgm/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mgm/linalg.hpp"

namespace mgm {

// ---------------------------------------------------------------- monomials

bool Monomial::divides(const Monomial& other, std::size_t nvars) const {
  if (degree > other.degree) return false;
  for (std::size_t i = 0; i < nvars; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] + other.exp[i]);
  r.degree = degree + other.degree;
  return r;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(other.exp[i] - exp[i]);
  r.degree = other.degree - degree;
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b, std::size_t nvars) {
  Monomial r;
  for (std::size_t i = 0; i < nvars; ++i) {
    r.exp[i] = std::max(a.exp[i], b.exp[i]);
    r.degree += r.exp[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& other, std::size_t nvars) const {
  for (std::size_t i = 0; i < nvars; ++i)
    if (exp[i] != 0 && other.exp[i] != 0) return false;
  return true;
}

int PolyCtx::compare(const Monomial& a, const Monomial& b) const {
  if (order == MonomialOrder::Lex) {
    for (std::size_t i = 0; i < nvars; ++i)
      if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
    return 0;
  }
  if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
  for (std::size_t i = nvars; i-- > 0;)
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  return 0;
}

void PolyCtx::normalize(mpq_class& c) const {
  if (modulus == 0) return;
  mpz_class num = c.get_num();
  mpz_class den = c.get_den();
  num %= modulus;
  if (num < 0) num += modulus;
  if (den != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0)
      throw MathError("denominator not invertible modulo the characteristic");
    num = (num * inv) % modulus;
  }
  c = mpq_class(num);
}

mpq_class PolyCtx::inverse(const mpq_class& c) const {
  if (c == 0) throw MathError("division by zero");
  if (modulus == 0) return 1 / c;
  mpz_class inv;
  mpz_class num = c.get_num();
  mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), modulus.get_mpz_t());
  return mpq_class(inv);
}

// ---------------------------------------------------------------- polynomials

Poly Poly::constant(const mpq_class& c, const PolyCtx& ctx) {
  return monomial(Monomial{}, c, ctx);
}

Poly Poly::variable(std::size_t i, const PolyCtx& ctx) {
  Monomial m;
  m.exp[i] = 1;
  m.degree = 1;
  return monomial(m, 1, ctx);
}

Poly Poly::monomial(const Monomial& m, const mpq_class& c, const PolyCtx& ctx) {
  Poly p;
  mpq_class v = c;
  ctx.normalize(v);
  if (v != 0) p.terms_.push_back({m, v});
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree == 0); }

mpq_class Poly::constant_coef() const {
  if (!terms_.empty() && terms_.back().mono.degree == 0) return terms_.back().coef;
  return 0;
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree);
  return d;
}

bool Poly::operator==(const Poly& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == other.terms_[i].mono) || terms_[i].coef != other.terms_[i].coef) return false;
  return true;
}

namespace {

Poly merge(const Poly& a, const Poly& b, const mpq_class& bscale, const Monomial* bshift, const PolyCtx& ctx) {
  Poly r;
  auto& out = r.mutable_terms();
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  out.reserve(ta.size() + tb.size());
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size()) {
      out.push_back(ta[i++]);
      continue;
    }
    Monomial mb = bshift ? tb[j].mono * *bshift : tb[j].mono;
    if (i == ta.size()) {
      mpq_class c = tb[j++].coef * bscale;
      ctx.normalize(c);
      if (c != 0) out.push_back({mb, c});
      continue;
    }
    int cmp = ctx.compare(ta[i].mono, mb);
    if (cmp > 0) {
      out.push_back(ta[i++]);
    } else if (cmp < 0) {
      mpq_class c = tb[j++].coef * bscale;
      ctx.normalize(c);
      if (c != 0) out.push_back({mb, c});
    } else {
      mpq_class c = ta[i++].coef + tb[j++].coef * bscale;
      ctx.normalize(c);
      if (c != 0) out.push_back({mb, c});
    }
  }
  return r;
}

}  // namespace

Poly Poly::add(const Poly& a, const Poly& b, const PolyCtx& ctx) { return merge(a, b, 1, nullptr, ctx); }
Poly Poly::sub(const Poly& a, const Poly& b, const PolyCtx& ctx) { return merge(a, b, -1, nullptr, ctx); }
Poly Poly::neg(const Poly& a, const PolyCtx& ctx) { return merge(Poly{}, a, -1, nullptr, ctx); }

Poly Poly::scale(const Poly& a, const mpq_class& c, const Monomial& m, const PolyCtx& ctx) {
  return merge(Poly{}, a, c, &m, ctx);
}

Poly Poly::mul(const Poly& a, const Poly& b, const PolyCtx& ctx) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Term> all;
  all.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) all.push_back({s.mono * t.mono, s.coef * t.coef});
  return from_terms(std::move(all), ctx);
}

Poly Poly::from_terms(std::vector<Term> terms, const PolyCtx& ctx) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& x, const Term& y) { return ctx.compare(x.mono, y.mono) > 0; });
  Poly r;
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coef += t.coef;
    } else {
      if (!r.terms_.empty()) {
        ctx.normalize(r.terms_.back().coef);
        if (r.terms_.back().coef == 0) r.terms_.pop_back();
      }
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty()) {
    ctx.normalize(r.terms_.back().coef);
    if (r.terms_.back().coef == 0) r.terms_.pop_back();
  }
  return r;
}

// ---------------------------------------------------------------- rings

struct RingData {
  RingKind kind = RingKind::Integers;
  PolyCtx ctx;
  std::vector<std::string> vars;
  std::shared_ptr<const RingData> coefficients;  // PolyRing
  std::shared_ptr<const RingData> ambient;       // QuotientRing
  std::vector<Poly> ideal;                       // QuotientRing
};

Ring Ring::integers() {
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::Integers;
  d->ctx.integral = true;
  return Ring(d);
}

Ring Ring::rationals() {
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::Rationals;
  return Ring(d);
}

Ring Ring::prime_field(long p) {
  mpz_class m = p;
  if (p < 2 || mpz_probab_prime_p(m.get_mpz_t(), 30) == 0)
    throw MathError("prime field modulus " + std::to_string(p) + " is not prime");
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::PrimeField;
  d->ctx.modulus = m;
  return Ring(d);
}

Ring Ring::poly(const Ring& coefficients, std::vector<std::string> vars, MonomialOrder order) {
  if (!coefficients.is_field() || coefficients.kind() == RingKind::PolyRing)
    throw MathError("polynomial coefficients must be a prime field or the rationals");
  if (vars.empty()) throw MathError("polynomial ring needs at least one variable");
  if (vars.size() > kMaxVars) throw MathError("too many variables");
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::PolyRing;
  d->ctx = coefficients.ctx();
  d->ctx.nvars = vars.size();
  d->ctx.order = order;
  d->vars = std::move(vars);
  d->coefficients = coefficients.data_;
  return Ring(d);
}

Ring Ring::quotient(const Ring& ambient, const std::vector<Poly>& ideal_gens) {
  if (ambient.kind() != RingKind::PolyRing && ambient.kind() != RingKind::Integers)
    throw MathError("quotients are taken of polynomial rings or the integers");
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::QuotientRing;
  d->ctx = ambient.ctx();
  d->vars = ambient.variables();
  d->ambient = ambient.data_;
  if (ambient.kind() == RingKind::Integers) {
    mpz_class g = 0;
    for (const auto& p : ideal_gens) {
      mpz_class v = p.constant_coef().get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g == 0) throw MathError("quotient of the integers by the zero ideal");
    if (g != 1) d->ideal.push_back(Poly::constant(mpq_class(g), d->ctx));
    else d->ideal.push_back(Poly::constant(1, d->ctx));
  } else {
    d->ideal = groebner_basis(ambient, ideal_gens);
  }
  return Ring(d);
}

RingKind Ring::kind() const { return data_->kind; }

Ring Ring::base() const {
  if (data_->kind == RingKind::QuotientRing) return Ring(data_->ambient);
  return *this;
}

Ring Ring::coefficient_ring() const {
  switch (data_->kind) {
    case RingKind::PolyRing: return Ring(data_->coefficients);
    case RingKind::QuotientRing: return Ring(data_->ambient).coefficient_ring();
    default: return *this;
  }
}

const PolyCtx& Ring::ctx() const { return data_->ctx; }
const std::vector<std::string>& Ring::variables() const { return data_->vars; }
std::size_t Ring::nvars() const { return data_->ctx.nvars; }
const std::vector<Poly>& Ring::ideal() const { return data_->ideal; }

bool Ring::is_field() const {
  return data_->kind == RingKind::Rationals || data_->kind == RingKind::PrimeField;
}

Poly Ring::normalize(Poly p) const {
  if (data_->kind != RingKind::QuotientRing) return p;
  if (data_->ctx.integral) {
    mpz_class n = data_->ideal[0].constant_coef().get_num();
    mpz_class v = p.constant_coef().get_num();
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    return Poly::constant(mpq_class(v), data_->ctx);
  }
  return normal_form(base(), p, data_->ideal);
}

bool Ring::is_unit(const Poly& p) const {
  if (p.is_zero()) return false;
  if (data_->ctx.integral) {
    if (!p.is_constant()) return false;
    mpz_class v = p.constant_coef().get_num();
    if (data_->kind == RingKind::QuotientRing) {
      mpz_class g, n = data_->ideal[0].constant_coef().get_num();
      mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
      return g == 1;
    }
    return v == 1 || v == -1;
  }
  // Nonzero constants; other units of quotient rings are not detected.
  return p.is_constant();
}

Poly Ring::one() const { return normalize(Poly::constant(1, ctx())); }
Poly Ring::from_int(long v) const { return normalize(Poly::constant(mpq_class(v), ctx())); }

Poly Ring::var(std::size_t i) const {
  if (i >= nvars()) throw MathError("variable index out of range");
  return normalize(Poly::variable(i, ctx()));
}

Poly Ring::add(const Poly& a, const Poly& b) const { return normalize(Poly::add(a, b, ctx())); }
Poly Ring::sub(const Poly& a, const Poly& b) const { return normalize(Poly::sub(a, b, ctx())); }
Poly Ring::mul(const Poly& a, const Poly& b) const { return normalize(Poly::mul(a, b, ctx())); }
Poly Ring::neg(const Poly& a) const { return normalize(Poly::neg(a, ctx())); }

Poly Ring::pow(const Poly& a, unsigned e) const {
  Poly r = one();
  Poly b = a;
  while (e) {
    if (e & 1u) r = mul(r, b);
    e >>= 1u;
    if (e) b = mul(b, b);
  }
  return r;
}

bool Ring::operator==(const Ring& other) const {
  if (data_ == other.data_) return true;
  if (!data_ || !other.data_) return false;
  const auto& a = *data_;
  const auto& b = *other.data_;
  if (a.kind != b.kind || a.ctx.modulus != b.ctx.modulus || a.ctx.nvars != b.ctx.nvars ||
      a.ctx.order != b.ctx.order || a.vars != b.vars || a.ideal.size() != b.ideal.size())
    return false;
  for (std::size_t i = 0; i < a.ideal.size(); ++i)
    if (!(a.ideal[i] == b.ideal[i])) return false;
  if (a.kind == RingKind::QuotientRing) return Ring(a.ambient) == Ring(b.ambient);
  return true;
}

// ---------------------------------------------------------------- parsing

namespace {

class PolyParser {
 public:
  PolyParser(const Ring& ring, const std::string& text) : ring_(ring), s_(text) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw MathError("polynomial '" + s_ + "' at offset " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly acc;
    bool first = true;
    for (;;) {
      bool negate = false;
      if (eat('-')) negate = true;
      else if (!first && !eat('+')) break;
      else if (first) eat('+');
      Poly t = term();
      acc = negate ? ring_.sub(acc, t) : ring_.add(acc, t);
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }
  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = ring_.mul(acc, factor());
      } else if (eat('/')) {
        Poly d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        if (ring_.ctx().integral) fail("division in the integers");
        acc = ring_.mul(acc, Poly::constant(ring_.ctx().inverse(d.constant_coef()), ring_.ctx()));
      } else {
        break;
      }
    }
    return acc;
  }
  Poly factor() {
    Poly b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = ring_.pow(b, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return b;
  }
  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return ring_.neg(atom());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ring_.normalize(Poly::constant(mpq_class(mpz_class(s_.substr(start, pos_ - start))), ring_.ctx()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      const auto& vars = ring_.variables();
      auto it = std::find(vars.begin(), vars.end(), name);
      if (it == vars.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return ring_.var(static_cast<std::size_t>(it - vars.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Ring& ring_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Ring::parse(const std::string& text) const { return PolyParser(*this, text).run(); }

std::string Ring::format(const Poly& p) const {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    mpq_class c = t.coef;
    bool negative = c < 0 && ctx().modulus == 0;
    if (negative) c = -c;
    if (first) os << (negative ? "-" : "");
    else os << (negative ? " - " : " + ");
    first = false;
    bool unit_coef = (c == 1);
    if (!unit_coef || t.mono.degree == 0) {
      os << c.get_str();
      if (t.mono.degree != 0) os << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << variables()[i];
      if (t.mono.exp[i] > 1) os << "^" << t.mono.exp[i];
    }
  }
  return os.str();
}

std::string Ring::describe() const {
  switch (kind()) {
    case RingKind::Integers: return "ZZ";
    case RingKind::Rationals: return "QQ";
    case RingKind::PrimeField: return "GF(" + ctx().modulus.get_str() + ")";
    case RingKind::PolyRing: {
      std::string s = coefficient_ring().describe() + "[";
      for (std::size_t i = 0; i < nvars(); ++i) s += (i ? "," : "") + variables()[i];
      return s + "]";
    }
    case RingKind::QuotientRing: {
      Ring amb = base();
      std::string s = amb.describe() + "/(";
      for (std::size_t i = 0; i < ideal().size(); ++i) s += (i ? ", " : "") + amb.format(ideal()[i]);
      return s + ")";
    }
  }
  return "?";
}

// ---------------------------------------------------------------- matrices

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, ring.one());
  return m;
}

Matrix Matrix::from_ints(const Ring& ring, const std::vector<std::vector<long>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(ring, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw MathError("ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) m.set(r, c, ring.from_int(rows[r][c]));
  }
  return m;
}

Matrix Matrix::parse(const Ring& ring, const std::vector<std::vector<std::string>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(ring, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw MathError("ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) m.set(r, c, ring.parse(rows[r][c]));
  }
  return m;
}

std::vector<Poly> Matrix::column(std::size_t c) const {
  std::vector<Poly> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::from_columns(const Ring& ring, std::size_t rows, const std::vector<std::vector<Poly>>& cols) {
  Matrix m(ring, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw MathError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

Matrix Matrix::hcat(const Matrix& other) const {
  if (rows_ != other.rows_) throw MathError("hcat: row count mismatch");
  Matrix m(ring_, rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m.data_[r * m.cols_ + c] = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) m.data_[r * m.cols_ + cols_ + c] = other(r, c);
  }
  return m;
}

Matrix Matrix::vcat(const Matrix& other) const {
  if (cols_ != other.cols_) throw MathError("vcat: column count mismatch");
  Matrix m(ring_, rows_ + other.rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.data_[r * cols_ + c] = (*this)(r, c);
  for (std::size_t r = 0; r < other.rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.data_[(rows_ + r) * cols_ + c] = other(r, c);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.data_[c * rows_ + r] = (*this)(r, c);
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw MathError("matrix product: dimension mismatch");
  Matrix m(ring_, rows_, other.cols_);
  const PolyCtx& ctx = ring_.ctx();
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < other.cols_; ++c) {
      Poly acc;
      for (std::size_t k = 0; k < cols_; ++k) {
        const Poly& a = (*this)(r, k);
        const Poly& b = other(k, c);
        if (a.is_zero() || b.is_zero()) continue;
        acc = Poly::add(acc, Poly::mul(a, b, ctx), ctx);
      }
      m.set(r, c, std::move(acc));
    }
  }
  return m;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw MathError("matrix sum: dimension mismatch");
  Matrix m(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = ring_.add(data_[i], other.data_[i]);
  return m;
}

Matrix Matrix::scaled(const Poly& s) const {
  Matrix m(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = ring_.mul(data_[i], s);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix m(ring_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m.data_[r * nc + c] = (*this)(r0 + r, c0 + c);
  return m;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.ring_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Poly& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l) {
          const Poly& y = b(k, l);
          if (y.is_zero()) continue;
          m.data_[(i * b.rows_ + k) * m.cols_ + j * b.cols_ + l] = a.ring_.mul(x, y);
        }
    }
  return m;
}

Matrix Matrix::mapped(const Ring& target) const {
  Matrix m(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = target.normalize(data_[i]);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::string Matrix::format() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << ring_.format((*this)(r, c));
  }
  os << "]";
  return os.str();
}

}  // namespace mgm
