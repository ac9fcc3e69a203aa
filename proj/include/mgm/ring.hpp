#ifndef MGM_RING_HPP
#define MGM_RING_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace mgm {

// Thrown for malformed input or a mathematical precondition violation.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxVars = 12;

enum class MonomialOrder { Lex, GrevLex };

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t degree = 0;

  bool divides(const Monomial& other, std::size_t nvars) const;
  Monomial operator*(const Monomial& other) const;
  // Requires divides(other).
  Monomial quotient_of(const Monomial& other) const;
  static Monomial lcm(const Monomial& a, const Monomial& b, std::size_t nvars);
  bool coprime(const Monomial& other, std::size_t nvars) const;
  bool operator==(const Monomial& other) const = default;
};

// Coefficient domain and monomial order used by polynomial arithmetic.
// modulus == 0 means the rationals (or the integers when integral is set).
struct PolyCtx {
  std::size_t nvars = 0;
  MonomialOrder order = MonomialOrder::GrevLex;
  mpz_class modulus = 0;
  bool integral = false;

  // Returns <0, 0, >0.
  int compare(const Monomial& a, const Monomial& b) const;
  void normalize(mpq_class& c) const;
  mpq_class inverse(const mpq_class& c) const;
  bool is_field() const { return !integral; }
};

struct Term {
  Monomial mono;
  mpq_class coef;
};

// Sparse polynomial, terms sorted strictly descending in the context order,
// no zero coefficients.
class Poly {
 public:
  Poly() = default;
  static Poly constant(const mpq_class& c, const PolyCtx& ctx);
  static Poly variable(std::size_t i, const PolyCtx& ctx);
  static Poly monomial(const Monomial& m, const mpq_class& c, const PolyCtx& ctx);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Term>& mutable_terms() { return terms_; }
  const Term& lead() const { return terms_.front(); }
  mpq_class constant_coef() const;
  std::uint32_t total_degree() const;

  bool operator==(const Poly& other) const;

  static Poly add(const Poly& a, const Poly& b, const PolyCtx& ctx);
  static Poly sub(const Poly& a, const Poly& b, const PolyCtx& ctx);
  static Poly mul(const Poly& a, const Poly& b, const PolyCtx& ctx);
  static Poly scale(const Poly& a, const mpq_class& c, const Monomial& m, const PolyCtx& ctx);
  static Poly neg(const Poly& a, const PolyCtx& ctx);
  // Sorts and merges arbitrary terms.
  static Poly from_terms(std::vector<Term> terms, const PolyCtx& ctx);

 private:
  std::vector<Term> terms_;
};

enum class RingKind { Integers, PrimeField, Rationals, PolyRing, QuotientRing };

struct RingData;

// Shared immutable ring descriptor. Equality is identity of the descriptor
// or structural equality of its fields.
class Ring {
 public:
  Ring() = default;
  static Ring integers();
  static Ring rationals();
  static Ring prime_field(long p);
  static Ring poly(const Ring& coefficients, std::vector<std::string> vars,
                   MonomialOrder order = MonomialOrder::GrevLex);
  // Quotient of a polynomial ring or of the integers by an ideal.
  static Ring quotient(const Ring& ambient, const std::vector<Poly>& ideal_gens);

  RingKind kind() const;
  bool valid() const { return data_ != nullptr; }
  // Ring over which module computations run: the ambient ring for quotients.
  Ring base() const;
  // Coefficient field for polynomial rings, self for fields.
  Ring coefficient_ring() const;
  const PolyCtx& ctx() const;
  const std::vector<std::string>& variables() const;
  std::size_t nvars() const;
  // Defining ideal (reduced Gröbner basis / positive generator over the integers).
  const std::vector<Poly>& ideal() const;
  bool is_field() const;

  Poly normalize(Poly p) const;
  bool is_unit(const Poly& p) const;

  Poly zero() const { return {}; }
  Poly one() const;
  Poly from_int(long v) const;
  Poly var(std::size_t i) const;
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly pow(const Poly& a, unsigned e) const;

  Poly parse(const std::string& text) const;
  std::string format(const Poly& p) const;
  std::string describe() const;

  bool operator==(const Ring& other) const;

 private:
  explicit Ring(std::shared_ptr<const RingData> d) : data_(std::move(d)) {}
  std::shared_ptr<const RingData> data_;
};

// Element bound to its ring; arithmetic keeps canonical representatives.
class RingElement {
 public:
  RingElement() = default;
  RingElement(Ring ring, Poly value) : ring_(std::move(ring)), value_(ring_.normalize(std::move(value))) {}
  static RingElement parse(const Ring& ring, const std::string& text) { return {ring, ring.parse(text)}; }

  const Ring& ring() const { return ring_; }
  const Poly& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

  RingElement operator+(const RingElement& o) const { return {ring_, ring_.add(value_, o.value_)}; }
  RingElement operator-(const RingElement& o) const { return {ring_, ring_.sub(value_, o.value_)}; }
  RingElement operator*(const RingElement& o) const { return {ring_, ring_.mul(value_, o.value_)}; }
  RingElement operator-() const { return {ring_, ring_.neg(value_)}; }
  RingElement pow(unsigned e) const { return {ring_, ring_.pow(value_, e)}; }
  bool operator==(const RingElement& o) const { return value_ == o.value_; }
  std::string str() const { return ring_.format(value_); }

 private:
  Ring ring_;
  Poly value_;
};

// Dense matrix over a ring, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Ring ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(const Ring& ring, std::size_t n);
  static Matrix from_ints(const Ring& ring, const std::vector<std::vector<long>>& rows);
  static Matrix parse(const Ring& ring, const std::vector<std::vector<std::string>>& rows);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Poly v) { data_[r * cols_ + c] = ring_.normalize(std::move(v)); }
  RingElement at(std::size_t r, std::size_t c) const { return {ring_, (*this)(r, c)}; }

  std::vector<Poly> column(std::size_t c) const;
  static Matrix from_columns(const Ring& ring, std::size_t rows, const std::vector<std::vector<Poly>>& cols);
  Matrix hcat(const Matrix& other) const;
  Matrix vcat(const Matrix& other) const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix scaled(const Poly& s) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  // Kronecker product; index (i*b.rows + k, j*b.cols + l).
  static Matrix kron(const Matrix& a, const Matrix& b);
  Matrix mapped(const Ring& target) const;

  bool is_zero() const;
  bool operator==(const Matrix& other) const;
  // Rows in the scenario grammar, one row per line between brackets.
  std::string format() const;

 private:
  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

// Column vector over a base ring.
using Vec = std::vector<Poly>;

}  // namespace mgm

#endif  // MGM_RING_HPP
