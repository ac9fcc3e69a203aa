#ifndef MGM_COMPLEX_HPP
#define MGM_COMPLEX_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mgm/module.hpp"

namespace mgm {

// Cohomology module H^i with the data needed to push cycles into it.
struct CohomologyData {
  Subquotient sub;  // cycles of C^i modulo boundaries
};

// Bounded cochain complex: C^lo -> ... -> C^hi, zero elsewhere.
class Complex {
 public:
  Complex() = default;
  // modules[k] sits in degree lo + k; diffs[k] maps degree lo+k to lo+k+1.
  Complex(const Ring& ring, int lo, std::vector<FpModule> modules, std::vector<Matrix> diffs, bool check = true);
  static Complex single(const FpModule& m, int degree = 0);

  const Ring& ring() const { return data_->ring; }
  int lo() const { return data_->lo; }
  int hi() const { return data_->lo + static_cast<int>(data_->modules.size()) - 1; }
  bool empty() const { return data_->modules.empty(); }
  FpModule module(int i) const;
  std::size_t rank(int i) const { return module(i).ngens(); }
  // d^i : C^i -> C^{i+1}.
  ModuleMap differential(int i) const;
  Matrix diff_matrix(int i) const;
  bool is_free() const;

  const CohomologyData& cohomology_data(int i) const;
  FpModule cohomology(int i) const { return cohomology_data(i).sub.module; }

  // C[k]^i = C^{i+k}, differential scaled by (-1)^k.
  Complex shifted(int k) const;

  // Free-form origin label, e.g. "torsion-built".
  const std::string& provenance() const { return provenance_; }
  Complex with_provenance(std::string p) const {
    Complex c = *this;
    c.provenance_ = std::move(p);
    return c;
  }

  std::string format() const;

 private:
  struct Data {
    Ring ring;
    int lo = 0;
    std::vector<FpModule> modules;
    std::vector<Matrix> diffs;
    mutable std::mutex mu;
    mutable std::map<int, std::shared_ptr<CohomologyData>> cache;
  };
  std::shared_ptr<Data> data_;
  std::string provenance_;
};

// Chain map of degree 0. Components outside the stored range are zero.
class ComplexMap {
 public:
  ComplexMap() = default;
  ComplexMap(Complex source, Complex target, std::map<int, Matrix> components, bool check = true);
  static ComplexMap identity(const Complex& c);

  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }
  // f^i as a module map C^i -> D^i.
  ModuleMap component(int i) const;
  Matrix matrix(int i) const;

 private:
  Complex source_;
  Complex target_;
  std::map<int, Matrix> comps_;
};

ComplexMap compose(const ComplexMap& g, const ComplexMap& f);  // g after f
// The same components between (equal) complexes given as other objects, so
// that cohomology caches are shared.
ComplexMap with_ends(const ComplexMap& f, const Complex& source, const Complex& target);

// H^i(f).
ModuleMap induced_map(const ComplexMap& f, int i);

// Total complex of C (x) D with the sign (-1)^p on 1 (x) d_D. The generator
// (a, b) of C^p (x) D^q has index a * rank(D^q) + b within its block, and
// blocks of a total degree are ordered by increasing p.
Complex tensor_complexes(const Complex& c, const Complex& d);
ComplexMap tensor_maps(const ComplexMap& f, const ComplexMap& g);
ComplexMap tensor_maps(const ComplexMap& f, const Complex& d);  // f (x) 1
ComplexMap tensor_maps(const Complex& c, const ComplexMap& g);  // 1 (x) g
// Offset of the block C^p (x) D^q inside total degree p + q.
std::size_t tensor_block_offset(const Complex& c, const Complex& d, int p, int q);

struct QuasiIsoReport {
  bool ok = true;
  std::vector<std::string> witnesses;  // one line per degree
  std::optional<int> failing_degree;
};
QuasiIsoReport quasi_iso_check(const ComplexMap& f);

// Alternating sum of lengths of cohomology, when all are finite.
std::optional<long> euler_characteristic(const Complex& c);

struct FreeResolution {
  Complex complex;  // F_k in degree -k
  ModuleMap augmentation;
  bool complete = false;  // the last syzygy module was zero
  std::size_t length() const { return static_cast<std::size_t>(-complex.lo()); }
};
// Free resolution of at most the given length (default: nvars + 2).
FreeResolution free_resolution(const FpModule& m, std::optional<std::size_t> max_length = std::nullopt);

// Tor_i(M, N) = H^{-i}(F (x) N) and Ext^i(M, N) = H^i(Hom(F, N)).
FpModule tor(std::size_t i, const FpModule& m, const FpModule& n);
FpModule ext(std::size_t i, const FpModule& m, const FpModule& n);
Complex hom_complex(const Complex& free_source, const FpModule& n);

}  // namespace mgm

#endif  // MGM_COMPLEX_HPP
