#include "mgm/complex.hpp"

#include <algorithm>
#include <sstream>

namespace mgm {

namespace {

void place(Matrix& big, std::size_t r0, std::size_t c0, const Matrix& small) {
  for (std::size_t r = 0; r < small.rows(); ++r)
    for (std::size_t c = 0; c < small.cols(); ++c)
      if (!small(r, c).is_zero()) big.set(r0 + r, c0 + c, small(r, c));
}

// Drops zero columns and columns lying in the span of the remaining ones.
Matrix minimize_columns(const Matrix& m) {
  const Ring& ring = m.ring();
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Vec v = m.column(c);
    if (!is_zero_vec(v)) cols.push_back(std::move(v));
  }
  std::vector<Vec> ideal_rels;
  if (ring.kind() == RingKind::QuotientRing)
    for (const auto& f : ring.ideal())
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Vec v(m.rows());
        v[r] = f;
        ideal_rels.push_back(std::move(v));
      }
  for (std::size_t c = cols.size(); c-- > 0;) {
    std::vector<Vec> others = ideal_rels;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != c) others.push_back(cols[k]);
    if (EchelonBasis(ring.base(), m.rows(), others).contains(cols[c])) cols.erase(cols.begin() + static_cast<long>(c));
  }
  return Matrix::from_columns(ring, m.rows(), cols);
}

}  // namespace

// ------------------------------------------------------------ Complex

Complex::Complex(const Ring& ring, int lo, std::vector<FpModule> modules, std::vector<Matrix> diffs, bool check)
    : data_(std::make_shared<Data>()) {
  if (modules.empty() ? !diffs.empty() : diffs.size() + 1 != modules.size())
    throw MathError("complex: need one differential between consecutive modules");
  data_->ring = ring;
  data_->lo = lo;
  data_->modules = std::move(modules);
  data_->diffs = std::move(diffs);
  for (std::size_t k = 0; k < data_->diffs.size(); ++k) {
    const Matrix& d = data_->diffs[k];
    if (d.rows() != data_->modules[k + 1].ngens() || d.cols() != data_->modules[k].ngens())
      throw MathError("complex: differential has the wrong shape in degree " + std::to_string(lo + static_cast<int>(k)));
  }
  if (!check) return;
  for (std::size_t k = 0; k < data_->diffs.size(); ++k) {
    ModuleMap(data_->modules[k], data_->modules[k + 1], data_->diffs[k]);
    if (k + 1 < data_->diffs.size()) {
      ModuleMap dd = ModuleMap::unchecked(data_->modules[k], data_->modules[k + 2], data_->diffs[k + 1] * data_->diffs[k]);
      if (!is_zero_map(dd))
        throw MathError("complex: d o d is nonzero at degree " + std::to_string(lo + static_cast<int>(k)));
    }
  }
}

Complex Complex::single(const FpModule& m, int degree) { return Complex(m.ring(), degree, {m}, {}, false); }

FpModule Complex::module(int i) const {
  if (i < lo() || i > hi()) return FpModule::zero(ring());
  return data_->modules[static_cast<std::size_t>(i - lo())];
}

Matrix Complex::diff_matrix(int i) const {
  if (i < lo() || i >= hi()) return Matrix(ring(), rank(i + 1), rank(i));
  return data_->diffs[static_cast<std::size_t>(i - lo())];
}

ModuleMap Complex::differential(int i) const { return ModuleMap::unchecked(module(i), module(i + 1), diff_matrix(i)); }

bool Complex::is_free() const {
  return std::all_of(data_->modules.begin(), data_->modules.end(), [](const FpModule& m) { return m.is_free_presentation(); });
}

const CohomologyData& Complex::cohomology_data(int i) const {
  {
    std::lock_guard<std::mutex> lock(data_->mu);
    auto it = data_->cache.find(i);
    if (it != data_->cache.end()) return *it->second;
  }
  const FpModule c = module(i);
  const FpModule next = module(i + 1);
  const std::size_t g = c.ngens();
  const Matrix d = diff_matrix(i);
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < d.cols(); ++k) cols.push_back(d.column(k));
  for (auto& r : next.base_relations()) cols.push_back(std::move(r));
  LinearSystem ls(ring().base(), next.ngens(), cols);
  std::vector<Vec> cycles;
  for (auto s : ls.syzygies()) {
    s.resize(g);
    for (auto& p : s) p = ring().normalize(std::move(p));
    if (is_zero_vec(s) || std::find(cycles.begin(), cycles.end(), s) != cycles.end()) continue;
    cycles.push_back(std::move(s));
  }
  std::vector<Vec> bounds;
  const Matrix dprev = diff_matrix(i - 1);
  for (std::size_t k = 0; k < dprev.cols(); ++k)
    if (!is_zero_vec(dprev.column(k))) bounds.push_back(dprev.column(k));
  for (auto& r : c.base_relations()) bounds.push_back(std::move(r));
  auto data = std::make_shared<CohomologyData>(CohomologyData{subquotient(ring(), g, cycles, bounds)});
  std::lock_guard<std::mutex> lock(data_->mu);
  auto [it, inserted] = data_->cache.emplace(i, std::move(data));
  return *it->second;
}

Complex Complex::shifted(int k) const {
  std::vector<Matrix> diffs = data_->diffs;
  if (k % 2 != 0)
    for (auto& d : diffs) d = d.scaled(ring().from_int(-1));
  Complex c(ring(), lo() - k, data_->modules, std::move(diffs), false);
  c.provenance_ = provenance_;
  return c;
}

std::string Complex::format() const {
  std::ostringstream os;
  for (int i = lo(); i <= hi(); ++i) {
    if (i > lo()) os << " -> ";
    os << "C^" << i << " = " << module(i).format();
  }
  return os.str();
}

// ------------------------------------------------------------ ComplexMap

ComplexMap::ComplexMap(Complex source, Complex target, std::map<int, Matrix> components, bool check)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
  for (const auto& [i, m] : comps_)
    if (m.rows() != target_.rank(i) || m.cols() != source_.rank(i))
      throw MathError("chain map: component has the wrong shape in degree " + std::to_string(i));
  if (!check) return;
  const int lo = std::min(source_.lo(), target_.lo()) - 1;
  const int hi = std::max(source_.hi(), target_.hi());
  for (int i = lo; i <= hi; ++i) {
    ModuleMap(source_.module(i), target_.module(i), matrix(i));
    Matrix lhs = target_.diff_matrix(i) * matrix(i);
    Matrix rhs = matrix(i + 1) * source_.diff_matrix(i);
    Matrix diff = lhs + rhs.scaled(target_.ring().from_int(-1));
    if (!is_zero_map(ModuleMap::unchecked(source_.module(i), target_.module(i + 1), diff)))
      throw MathError("chain map does not commute with differentials in degree " + std::to_string(i));
  }
}

ComplexMap ComplexMap::identity(const Complex& c) {
  std::map<int, Matrix> comps;
  for (int i = c.lo(); i <= c.hi(); ++i) comps.emplace(i, Matrix::identity(c.ring(), c.rank(i)));
  return ComplexMap(c, c, std::move(comps), false);
}

Matrix ComplexMap::matrix(int i) const {
  auto it = comps_.find(i);
  if (it != comps_.end()) return it->second;
  return Matrix(target_.ring(), target_.rank(i), source_.rank(i));
}

ModuleMap ComplexMap::component(int i) const {
  return ModuleMap::unchecked(source_.module(i), target_.module(i), matrix(i));
}

ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
  std::map<int, Matrix> comps;
  const int lo = f.source().lo(), hi = f.source().hi();
  for (int i = lo; i <= hi; ++i) comps.emplace(i, g.matrix(i) * f.matrix(i));
  return ComplexMap(f.source(), g.target(), std::move(comps), false);
}

ComplexMap with_ends(const ComplexMap& f, const Complex& source, const Complex& target) {
  std::map<int, Matrix> comps;
  for (int i = source.lo(); i <= source.hi(); ++i) comps.emplace(i, f.matrix(i));
  return ComplexMap(source, target, std::move(comps), false);
}

ModuleMap induced_map(const ComplexMap& f, int i) {
  const CohomologyData& hs = f.source().cohomology_data(i);
  const CohomologyData& ht = f.target().cohomology_data(i);
  const Matrix fi = f.matrix(i);
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < hs.sub.reps.cols(); ++k) cols.push_back(ht.sub.coordinates(mat_vec(fi, hs.sub.reps.column(k))));
  return ModuleMap::unchecked(hs.sub.module, ht.sub.module,
                              Matrix::from_columns(f.target().ring(), ht.sub.module.ngens(), cols));
}

// ------------------------------------------------------------ tensor products

std::size_t tensor_block_offset(const Complex& c, const Complex& d, int p, int q) {
  std::size_t off = 0;
  for (int pp = std::max(c.lo(), p + q - d.hi()); pp < p; ++pp) off += c.rank(pp) * d.rank(p + q - pp);
  return off;
}

Complex tensor_complexes(const Complex& c, const Complex& d) {
  const Ring& ring = c.ring();
  if (c.empty() || d.empty()) return Complex(ring, 0, {}, {}, false);
  const int lo = c.lo() + d.lo(), hi = c.hi() + d.hi();
  std::vector<FpModule> modules;
  std::vector<std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) {
    std::optional<FpModule> total;
    for (int p = std::max(c.lo(), n - d.hi()); p <= std::min(c.hi(), n - d.lo()); ++p) {
      FpModule t = tensor(c.module(p), d.module(n - p));
      total = total ? direct_sum(*total, t) : t;
    }
    modules.push_back(total ? *total : FpModule::zero(ring));
    ranks.push_back(modules.back().ngens());
  }
  std::vector<Matrix> diffs;
  const Poly minus = ring.from_int(-1);
  for (int n = lo; n < hi; ++n) {
    Matrix m(ring, ranks[static_cast<std::size_t>(n + 1 - lo)], ranks[static_cast<std::size_t>(n - lo)]);
    for (int p = std::max(c.lo(), n - d.hi()); p <= std::min(c.hi(), n - d.lo()); ++p) {
      const int q = n - p;
      const std::size_t src = tensor_block_offset(c, d, p, q);
      if (p + 1 <= c.hi()) {
        Matrix blk = Matrix::kron(c.diff_matrix(p), Matrix::identity(ring, d.rank(q)));
        place(m, tensor_block_offset(c, d, p + 1, q), src, blk);
      }
      if (q + 1 <= d.hi()) {
        Matrix blk = Matrix::kron(Matrix::identity(ring, c.rank(p)), d.diff_matrix(q));
        if (p % 2 != 0) blk = blk.scaled(minus);
        place(m, tensor_block_offset(c, d, p, q + 1), src, blk);
      }
    }
    diffs.push_back(std::move(m));
  }
  return Complex(ring, lo, std::move(modules), std::move(diffs), false);
}

ComplexMap tensor_maps(const ComplexMap& f, const ComplexMap& g) {
  const Complex& c = f.source();
  const Complex& d = g.source();
  const Complex& c2 = f.target();
  const Complex& d2 = g.target();
  Complex src = tensor_complexes(c, d);
  Complex tgt = tensor_complexes(c2, d2);
  std::map<int, Matrix> comps;
  if (src.empty() || tgt.empty()) return ComplexMap(src, tgt, {}, false);
  for (int n = src.lo(); n <= src.hi(); ++n) {
    Matrix m(src.ring(), tgt.rank(n), src.rank(n));
    for (int p = std::max(c.lo(), n - d.hi()); p <= std::min(c.hi(), n - d.lo()); ++p) {
      const int q = n - p;
      if (p < c2.lo() || p > c2.hi() || q < d2.lo() || q > d2.hi()) continue;
      place(m, tensor_block_offset(c2, d2, p, q), tensor_block_offset(c, d, p, q), Matrix::kron(f.matrix(p), g.matrix(q)));
    }
    comps.emplace(n, std::move(m));
  }
  return ComplexMap(src, tgt, std::move(comps), false);
}

ComplexMap tensor_maps(const ComplexMap& f, const Complex& d) { return tensor_maps(f, ComplexMap::identity(d)); }
ComplexMap tensor_maps(const Complex& c, const ComplexMap& g) { return tensor_maps(ComplexMap::identity(c), g); }

// ------------------------------------------------------------ comparisons

QuasiIsoReport quasi_iso_check(const ComplexMap& f) {
  QuasiIsoReport rep;
  const int lo = std::min(f.source().lo(), f.target().lo());
  const int hi = std::max(f.source().hi(), f.target().hi());
  for (int i = lo; i <= hi; ++i) {
    ModuleMap h = induced_map(f, i);
    bool iso = is_isomorphism(h);
    std::ostringstream os;
    os << "H^" << i << ": " << h.source().format() << " -> " << h.target().format() << (iso ? " iso" : " not iso");
    rep.witnesses.push_back(os.str());
    if (!iso && rep.ok) {
      rep.ok = false;
      rep.failing_degree = i;
    }
  }
  return rep;
}

std::optional<long> euler_characteristic(const Complex& c) {
  long chi = 0;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    auto len = finite_length(c.cohomology(i));
    if (!len) return std::nullopt;
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(*len);
  }
  return chi;
}

// ------------------------------------------------------------ resolutions

FreeResolution free_resolution(const FpModule& m, std::optional<std::size_t> max_length) {
  const Ring& ring = m.ring();
  const std::size_t limit = max_length ? *max_length : ring.nvars() + 2;
  std::vector<Matrix> ds;  // ds[k] : F_{k+1} -> F_k
  bool complete = false;
  Matrix cur = minimize_columns(m.presentation());
  for (;;) {
    if (cur.cols() == 0) {
      complete = true;
      break;
    }
    if (ds.size() == limit) break;
    ds.push_back(cur);
    cur = minimize_columns(syzygy_module(cur));
  }
  const std::size_t len = ds.size();
  std::vector<FpModule> modules;
  std::vector<Matrix> diffs;
  for (std::size_t k = len + 1; k-- > 0;) {
    std::size_t r = k == 0 ? m.ngens() : ds[k - 1].cols();
    modules.push_back(FpModule::free(ring, r));
    if (k > 0) diffs.push_back(ds[k - 1]);
  }
  FreeResolution res;
  res.complex = Complex(ring, -static_cast<int>(len), std::move(modules), std::move(diffs), false);
  res.augmentation = ModuleMap::unchecked(res.complex.module(0), m, Matrix::identity(ring, m.ngens()));
  res.complete = complete;
  return res;
}

namespace {

FreeResolution resolution_for_degree(const FpModule& m, std::size_t i) {
  FreeResolution res = free_resolution(m);
  if (res.complete || res.length() >= i + 1) return res;
  res = free_resolution(m, 2 * (m.ring().nvars() + 2) > i + 1 ? 2 * (m.ring().nvars() + 2) : i + 1);
  if (res.complete || res.length() >= i + 1) return res;
  throw MathError("free resolution too short for degree " + std::to_string(i) + "; increase length");
}

}  // namespace

FpModule tor(std::size_t i, const FpModule& m, const FpModule& n) {
  FreeResolution res = resolution_for_degree(m, i);
  return tensor_complexes(res.complex, Complex::single(n)).cohomology(-static_cast<int>(i));
}

Complex hom_complex(const Complex& f, const FpModule& n) {
  const Ring& ring = f.ring();
  const std::size_t g = n.ngens();
  std::vector<FpModule> modules;
  std::vector<Matrix> diffs;
  for (int k = -f.hi(); k <= -f.lo(); ++k) {
    modules.push_back(power(n, f.rank(-k)));
    if (k < -f.lo()) diffs.push_back(Matrix::kron(f.diff_matrix(-k - 1).transpose(), Matrix::identity(ring, g)));
  }
  return Complex(ring, -f.hi(), std::move(modules), std::move(diffs), false);
}

FpModule ext(std::size_t i, const FpModule& m, const FpModule& n) {
  FreeResolution res = resolution_for_degree(m, i);
  return hom_complex(res.complex, n).cohomology(static_cast<int>(i));
}

}  // namespace mgm
