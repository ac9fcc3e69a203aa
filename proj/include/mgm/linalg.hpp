#ifndef MGM_LINALG_HPP
#define MGM_LINALG_HPP

#include <memory>
#include <optional>
#include <vector>

#include "mgm/ring.hpp"

namespace mgm {

// Canonical basis of a submodule of R^ncomp, where R is the integers
// (Hermite normal form) or a polynomial ring over a field, possibly with
// zero variables (reduced module Gröbner basis, position-over-term with
// component 0 largest).
class EchelonBasis {
 public:
  EchelonBasis(const Ring& base, std::size_t ncomp, const std::vector<Vec>& gens);
  ~EchelonBasis();
  EchelonBasis(EchelonBasis&&) noexcept;
  EchelonBasis& operator=(EchelonBasis&&) noexcept;

  std::size_t ncomp() const;
  // Unique remainder; zero iff v lies in the submodule.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  std::vector<Vec> elements() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// The submodule spanned by the columns g_1..g_s of a matrix, with the
// cofactor bookkeeping needed for syzygies and lifts.
class LinearSystem {
 public:
  LinearSystem(const Ring& base, std::size_t rows, const std::vector<Vec>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  // Generators of { x : sum x_i g_i = 0 }.
  std::vector<Vec> syzygies() const;
  // Some x with sum x_i g_i = v, if v is in the span.
  std::optional<Vec> lift(const Vec& v) const;
  bool contains(const Vec& v) const;
  // Canonical remainder of v modulo the span.
  Vec reduce(const Vec& v) const;

 private:
  Ring base_;
  std::size_t rows_;
  std::size_t cols_;
  std::shared_ptr<EchelonBasis> augmented_;
};

struct SmithForm {
  std::vector<mpz_class> diagonal;  // length min(rows, cols); d1 | d2 | ...
  Matrix left;                      // unimodular, rows x rows
  Matrix right;                     // unimodular, cols x cols
};

// Smith normal form of an integer matrix: left * m * right is diagonal.
SmithForm smith_normal_form(const Matrix& m);

// Reduced Gröbner basis of the ideal generated by gens in a polynomial ring
// (or a field, treated as a ring in zero variables).
std::vector<Poly> groebner_basis(const Ring& ring, const std::vector<Poly>& gens);
std::vector<RingElement> groebner_basis(const std::vector<RingElement>& gens);

// Remainder of f modulo a Gröbner basis.
Poly normal_form(const Ring& ring, const Poly& f, const std::vector<Poly>& basis);
RingElement normal_form(const RingElement& f, const std::vector<RingElement>& basis);

// Columns generate the kernel of the map defined by m. Over a quotient ring
// the kernel is computed over the ambient ring with the defining ideal added.
Matrix syzygy_module(const Matrix& m);

// All degree-n products of gens, deduplicated.
std::vector<RingElement> ideal_power(const std::vector<RingElement>& gens, unsigned n);

// Vector helpers over a base ring.
Vec zero_vec(std::size_t n);
bool is_zero_vec(const Vec& v);
Vec unit_vec(const Ring& ring, std::size_t n, std::size_t i);
Vec mat_vec(const Matrix& m, const Vec& v);

}  // namespace mgm

#endif  // MGM_LINALG_HPP
