#ifndef MGM_MODULE_HPP
#define MGM_MODULE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mgm/linalg.hpp"
#include "mgm/ring.hpp"

namespace mgm {

// Finitely presented module: the cokernel of its presentation matrix.
// Rows index generators, columns are relations.
class FpModule {
 public:
  FpModule() = default;
  explicit FpModule(Matrix presentation);
  static FpModule free(const Ring& ring, std::size_t rank);
  static FpModule zero(const Ring& ring) { return free(ring, 0); }
  // A/(gens).
  static FpModule cyclic(const Ring& ring, const std::vector<Poly>& gens);

  const Ring& ring() const { return pres_.ring(); }
  std::size_t ngens() const { return pres_.rows(); }
  const Matrix& presentation() const { return pres_; }
  bool is_free_presentation() const { return pres_.cols() == 0 && ring().kind() != RingKind::QuotientRing; }

  // Relations over the base ring, including the defining ideal of a quotient.
  std::vector<Vec> base_relations() const;
  const EchelonBasis& relation_basis() const;
  // Canonical representative of the element with coordinates v.
  Vec reduce(const Vec& v) const;
  bool is_zero_element(const Vec& v) const { return is_zero_vec(reduce(v)); }
  bool is_zero() const;

  std::string format() const;

 private:
  struct Cache;
  Matrix pres_;
  std::shared_ptr<Cache> cache_;
};

class ModuleMap {
 public:
  ModuleMap() = default;
  // matrix is target.ngens x source.ngens; checked to respect relations.
  ModuleMap(FpModule source, FpModule target, Matrix matrix);
  static ModuleMap identity(const FpModule& m);
  static ModuleMap zero(const FpModule& source, const FpModule& target);
  // Skips the relation check; for maps valid by construction.
  static ModuleMap unchecked(FpModule source, FpModule target, Matrix matrix);

  const FpModule& source() const { return source_; }
  const FpModule& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }
  Vec apply(const Vec& v) const { return mat_vec(matrix_, v); }

 private:
  FpModule source_;
  FpModule target_;
  Matrix matrix_;
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap add(const ModuleMap& f, const ModuleMap& g);

// The submodule of the free module R^m generated by the columns of gens,
// modulo the columns of rels, with its own minimized presentation.
struct Subquotient {
  FpModule module;
  Matrix reps;  // m x ngens: representatives of the module generators
  std::shared_ptr<LinearSystem> system;
  Matrix raw_to_module;  // module.ngens x (#gens)
  std::size_t ngens_raw = 0;

  // Coordinates of an element of span(gens)+span(rels); throws if outside.
  Vec coordinates(const Vec& v) const;
};

Subquotient subquotient(const Ring& ring, std::size_t m, const std::vector<Vec>& gens, const std::vector<Vec>& rels);

struct PrunedModule {
  FpModule module;
  Matrix to;    // new.ngens x old.ngens
  Matrix from;  // old.ngens x new.ngens
};
// Eliminates generators killed by relations with unit coefficients.
PrunedModule prune(const FpModule& m);

struct KernelData {
  Subquotient sub;
  ModuleMap inclusion;
};
KernelData kernel(const ModuleMap& f);

struct CokernelData {
  FpModule module;
  ModuleMap projection;
};
CokernelData cokernel(const ModuleMap& f);

bool is_zero_map(const ModuleMap& f);
bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_isomorphism(const ModuleMap& f);
// Inverse of an isomorphism.
ModuleMap inverse(const ModuleMap& f);

FpModule tensor(const FpModule& m, const FpModule& n);
FpModule direct_sum(const FpModule& m, const FpModule& n);
FpModule power(const FpModule& m, std::size_t r);
// Hom(M, N) as the kernel of N^{gens M} -> N^{rels M}; coordinates are the
// images of the generators of M.
KernelData hom(const FpModule& m, const FpModule& n);

// Length as a module: sum of prime multiplicities over the integers,
// dimension over the coefficient field otherwise. nullopt means infinite.
std::optional<std::size_t> finite_length(const FpModule& m);
// Minimal number of generators (exact over the integers and fields; an
// upper bound after pruning otherwise).
std::size_t min_generators(const FpModule& m);
// Invariant factors over the integers: nonunit Smith diagonal entries, with
// 0 for each free summand, sorted by divisibility.
std::vector<mpz_class> abelian_invariants(const FpModule& m);

}  // namespace mgm

#endif  // MGM_MODULE_HPP
