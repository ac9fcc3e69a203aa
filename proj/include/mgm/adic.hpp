#ifndef MGM_ADIC_HPP
#define MGM_ADIC_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mgm/towers.hpp"

namespace mgm {

// A ring with a finite generating sequence a = (a_1..a_n) of an ideal.
// Stage complexes are cached.
class AdicContext {
 public:
  AdicContext() = default;
  AdicContext(Ring ring, std::vector<Poly> gens);

  const Ring& ring() const { return state_->ring; }
  const std::vector<Poly>& gens() const { return state_->gens; }
  std::size_t length() const { return state_->gens.size(); }
  std::string describe() const;

  // Generators of a^j.
  std::vector<Poly> ideal_power(unsigned j) const;

  // Kos(A; a^j) in degrees -n..0; transition Kos_{j+1} -> Kos_j is x a_i
  // on each factor's degree -1 term.
  Complex koszul(std::size_t j) const;
  ComplexMap koszul_transition(std::size_t j) const;
  // Dual stage: tensor of [A --a_i^t--> A] in degrees 0..n; transition
  // t -> t+1 is x a_i on each factor's degree 1 term.
  Complex dual_koszul(std::size_t t) const;
  ComplexMap dual_koszul_transition(std::size_t t) const;
  // Telescope truncated to delta_0..delta_j per generator, degrees 0..n,
  // with its comparison map to the dual stage j and the inclusion into
  // stage j+1.
  Complex telescope(std::size_t j) const;
  ComplexMap telescope_to_dual(std::size_t j) const;
  ComplexMap telescope_transition(std::size_t j) const;

  ComplexTower koszul_tower() const;
  ComplexTower dual_koszul_tower() const;

 private:
  struct State {
    Ring ring;
    std::vector<Poly> gens;
    std::mutex mu;
    std::map<unsigned, std::vector<Poly>> powers;
    std::map<std::size_t, Complex> koszul, dual, telescope;
  };
  std::shared_ptr<State> state_;
};

// Sends a polynomial ring to another ring by substituting variables, or
// projects onto a quotient, or maps the integers anywhere.
struct RingMap {
  Ring source;
  Ring target;
  std::vector<Poly> var_images;  // empty for maps out of Z or onto a quotient

  static RingMap identity(const Ring& r);
  // Variables of the source map to the same-named variables of the target.
  static RingMap by_names(const Ring& source, const Ring& target);
  static RingMap projection(const Ring& quotient);  // ambient -> quotient

  Poly apply(const Poly& p) const;
  Matrix apply(const Matrix& m) const;
};

Complex extend_scalars(const Complex& c, const RingMap& f);
FpModule extend_scalars(const FpModule& m, const RingMap& f);

struct BaseChange {
  AdicContext target;
  RingMap map;
  // Identity-matrix chain maps Kos(A;a^j) (x) B -> Kos(B; f(a)^j), checked.
  ComplexMap koszul_iso(const AdicContext& source, std::size_t j) const;
  ComplexMap telescope_iso(const AdicContext& source, std::size_t j) const;
};
BaseChange base_change(const AdicContext& ctx, const RingMap& f);

// M / (g_1..g_k) M, levelwise for complexes (same differentials).
FpModule quotient_by_ideal(const FpModule& m, const std::vector<Poly>& gens);
Complex quotient_by_ideal(const Complex& c, const std::vector<Poly>& gens);

// {M / a^n M} with the canonical surjections.
ModuleTower completion_tower(const FpModule& m, const AdicContext& ctx);
// {Hom(A/a^n, M)} with the maps induced by A/a^{n+1} -> A/a^n.
ModuleTower torsion_ind(const FpModule& m, const AdicContext& ctx);
// {Kos(A; a^j) (x) Mc} and {dual stage t (x) Mc}.
ComplexTower derived_completion(const Complex& mc, const AdicContext& ctx);
ComplexTower derived_torsion(const Complex& mc, const AdicContext& ctx);

// Ind-modules as inputs (e.g. Q, Z[1/p], the Pruefer group): levels of the
// outer tower are colimits over the inner index, evaluated at a fixed inner
// level once the inner system is ind-zero or has stabilized. Throws
// Inconclusive when neither happens within the inner bound.
ModuleTower completion_tower(const ModuleTower& ind, const AdicContext& ctx, std::size_t inner_bound);
ModuleTower derived_completion_cohomology(const ModuleTower& ind, const AdicContext& ctx, int degree,
                                          std::size_t inner_bound);

// Ind-modules used as inputs. Over a ring R with element a:
// R_a = {R, x a}, the Pruefer-type module {R/a^t, x a}; over the integers
// Q = {Z, x (t+1)}; and the countable sum {M^t, inclusions}.
ModuleTower localization_module(const Ring& r, const Poly& a);
ModuleTower prufer_module(const Ring& r, const Poly& a);
ModuleTower fractions_module(const Ring& z);
ModuleTower countable_sum(const FpModule& m);

// Unit M -> Kos_j (x) M (inclusion of the degree-0 block) and counit
// dual_t (x) M -> M (projection onto it); k must have rank 1 in degree 0.
ComplexMap degree_zero_inclusion(const Complex& k, const Complex& m);
ComplexMap degree_zero_projection(const Complex& k, const Complex& m);

// Pro-zero check of {H_{i}(Kos(A; a^j))} for 1 <= i <= n.
StabilizationReport wpr_check(const AdicContext& ctx, std::size_t bound = kDefaultBound);

struct PsiComparison {
  FpModule tensor_side;      // M (x) A/a^n
  FpModule quotient_side;    // M / a^n M
  ModuleMap map;
  bool isomorphism = false;
};
PsiComparison psi_comparison(const FpModule& m, const AdicContext& ctx, unsigned n);

}  // namespace mgm

#endif  // MGM_ADIC_HPP
