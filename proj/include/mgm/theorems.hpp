#ifndef MGM_THEOREMS_HPP
#define MGM_THEOREMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "mgm/adic.hpp"

namespace mgm {

// Thrown when an input does not meet a check's hypotheses.
class PreconditionError : public MathError {
 public:
  using MathError::MathError;
};

struct TheoremInstance {
  std::string id;
  std::string input;
  std::size_t bound = kDefaultBound;
  StabilizationReport verdict;
  std::vector<std::string> trace;
};

// Checks over a pair of indices (one pro, one ind) fix the outer index at
// 1..outer_levels(bound) and run the inner comparison to the full bound.
std::size_t outer_levels(std::size_t bound);

// Certificates: a complex counts as torsion (complete) when it carries that
// provenance label or when each cohomology module is killed by a^k, k <= bound.
inline const std::string kTorsionBuilt = "torsion-built";
inline const std::string kCompletionBuilt = "completion-built";
std::optional<std::size_t> annihilating_power(const FpModule& h, const AdicContext& ctx, std::size_t bound);
bool certified_torsion(const Complex& m, const AdicContext& ctx, std::size_t bound);
bool certified_complete(const Complex& m, const AdicContext& ctx, std::size_t bound);

// dual_t (x) P -> dual_t (x) P/a^j P, pro over j; P a bounded free complex.
TheoremInstance check_tensor_completion(const AdicContext& ctx, const Complex& p, std::size_t bound = kDefaultBound);
// dual_t (x) M -> dual_t (x) Kos_j (x) M through the unit, pro over j.
TheoremInstance check_torsion_of_completion(const AdicContext& ctx, const Complex& m,
                                            std::size_t bound = kDefaultBound);
// Kos_j (x) dual_t (x) M -> Kos_j (x) M through the counit, ind over t.
TheoremInstance check_completion_of_torsion(const AdicContext& ctx, const Complex& m,
                                            std::size_t bound = kDefaultBound);

enum class MgmSide { Torsion, Completion };
const char* mgm_side_name(MgmSide s);
// Torsion side: the counit dual_t (x) M -> M is an ind-isomorphism and the
// torsion-of-completion comparison holds on M. Completion side: the unit
// M -> Kos_j (x) M is a pro-isomorphism and completion-of-torsion holds.
// Throws PreconditionError without the matching certificate.
TheoremInstance check_mgm(const AdicContext& ctx, const Complex& m, MgmSide side, std::size_t bound = kDefaultBound);

// A = K[x_1..x_n] over a field and B = A (x)_K A = K[x, x'] with the
// diagonal sequence x_i - x'_i.
class DiagonalContext {
 public:
  DiagonalContext() = default;
  explicit DiagonalContext(const Ring& a);

  const Ring& a() const { return a_; }
  const Ring& b() const { return b_; }
  const RingMap& first() const { return first_; }
  const RingMap& second() const { return second_; }
  const std::vector<Poly>& delta() const { return delta_; }
  std::size_t n() const { return a_.nvars(); }
  AdicContext diagonal() const { return diag_; }
  // (x_1..x_n) in A; (x, x') in B; (x) and (x') in B.
  AdicContext augmentation() const { return aug_; }
  AdicContext envelope_ideal() const { return env_; }
  AdicContext left_ideal() const { return left_; }
  AdicContext right_ideal() const { return right_; }

  // M (x)_K N over B.
  FpModule box(const FpModule& m, const FpModule& n) const;
  // An A-module (complex) regarded as a B-module through B -> A.
  FpModule restrict(const FpModule& m) const;
  Complex restrict(const Complex& c) const;

 private:
  Ring a_, b_;
  RingMap first_, second_;
  std::vector<Poly> delta_;
  AdicContext diag_, aug_, env_, left_, right_;
};

// Diagonal route: Kos(B; Delta) (x) dual_t(B; x, x') (x) (F_M box F_N)
// compared with dual_t(A; x) (x) (F_M (x) N), ind over t.
TheoremInstance check_diagonal_torsion(const DiagonalContext& d, const FpModule& m, const FpModule& n,
                                       std::size_t bound = kDefaultBound);
// H_i(Kos(B; Delta) (x) (M box N)) against Tor_i^A(M, N) through the roof
// Kos (x) (M box N) <- Kos (x) (F_M box F_N) -> F_M (x)_A N; needs M (x) N of
// finite length.
TheoremInstance check_diagonal_fg(const DiagonalContext& d, const FpModule& m, const FpModule& n,
                                  std::size_t bound = kDefaultBound);
// The same comparison after completion towers in every degree.
TheoremInstance check_diagonal_completed(const DiagonalContext& d, const FpModule& m, const FpModule& n,
                                         std::size_t bound = kDefaultBound);

struct SerreResult {
  long chi = 0;
  std::vector<std::size_t> direct;    // length Tor_i^A(M, N), i = 0, 1, ...
  std::vector<std::size_t> diagonal;  // length H_i(Kos(B; Delta) (x) (M box N))
};
// Intersection multiplicity by both routes; throws on disagreement.
SerreResult serre_chi(const DiagonalContext& d, const FpModule& m, const FpModule& n);
TheoremInstance check_serre(const DiagonalContext& d, const FpModule& m, const FpModule& n,
                            std::optional<long> expect = std::nullopt);

enum class FgFlag { Yes, No, Unknown };
const char* fg_flag_name(FgFlag f);

struct CofiniteFlags {
  std::vector<int> degrees;        // cohomological degrees k - n of the completion
  std::vector<FgFlag> ext;         // Ext^k(A/a, M) for k = 0..n
  std::vector<FgFlag> completion;  // H^{k-n} of the derived completion tower
};
// M given as an ind-module (a constant tower for an ordinary module).
// Ext^k(A/a, M) is the colimit of Ext^k(A/a, M_t); the completion side is
// read off derived_completion_cohomology with inner bound 2 * bound.
CofiniteFlags cofinite_flags(const AdicContext& ctx, const ModuleTower& m, std::size_t bound = kDefaultBound);
TheoremInstance check_cofinite(const AdicContext& ctx, const ModuleTower& m, std::size_t bound = kDefaultBound,
                               const std::string& label = "");

// Compares the constant tower on M with itself through the zero map; fails
// whenever M is nonzero.
TheoremInstance check_zero_comparison(const FpModule& m, std::size_t bound = kDefaultBound);

}  // namespace mgm

#endif  // MGM_THEOREMS_HPP
