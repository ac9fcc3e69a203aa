#include "mgm/module.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

namespace mgm {

namespace {

Poly unit_inverse(const Ring& ring, const Poly& u) {
  const PolyCtx& ctx = ring.ctx();
  mpq_class c = u.constant_coef();
  if (ctx.integral) {
    if (ring.kind() == RingKind::QuotientRing) {
      mpz_class n = ring.ideal()[0].constant_coef().get_num();
      mpz_class v = c.get_num(), inv;
      mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
      return ring.normalize(Poly::constant(mpq_class(inv), ctx));
    }
    return u;
  }
  return ring.normalize(Poly::constant(ctx.inverse(c), ctx));
}

// v -= s * w, entries normalized in ring.
void axpy(const Ring& ring, Vec& v, const Poly& s, const Vec& w) {
  if (s.is_zero()) return;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (w[k].is_zero()) continue;
    v[k] = ring.sub(v[k], ring.mul(s, w[k]));
  }
}

std::size_t nonzeros(const Vec& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Poly& p) { return !p.is_zero(); }));
}

std::vector<Vec> columns_of(const Matrix& m) {
  std::vector<Vec> out;
  out.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

std::size_t prime_multiplicity(mpz_class d) {
  if (d < 0) d = -d;
  std::size_t count = 0;
  for (mpz_class p = 2; p * p <= d; ++p)
    while (d % p == 0) {
      d /= p;
      ++count;
    }
  if (d > 1) ++count;
  return count;
}

}  // namespace

// ------------------------------------------------------------ FpModule

struct FpModule::Cache {
  std::once_flag once;
  std::unique_ptr<EchelonBasis> basis;
};

FpModule::FpModule(Matrix presentation) : pres_(std::move(presentation)), cache_(std::make_shared<Cache>()) {
  if (!pres_.ring().valid()) throw MathError("module over an invalid ring");
}

FpModule FpModule::free(const Ring& ring, std::size_t rank) { return FpModule(Matrix(ring, rank, 0)); }

FpModule FpModule::cyclic(const Ring& ring, const std::vector<Poly>& gens) {
  Matrix m(ring, 1, gens.size());
  for (std::size_t c = 0; c < gens.size(); ++c) m.set(0, c, gens[c]);
  return FpModule(m);
}

std::vector<Vec> FpModule::base_relations() const {
  std::vector<Vec> out = columns_of(pres_);
  if (ring().kind() == RingKind::QuotientRing)
    for (const auto& f : ring().ideal())
      for (std::size_t r = 0; r < ngens(); ++r) {
        Vec v(ngens());
        v[r] = f;
        out.push_back(std::move(v));
      }
  return out;
}

const EchelonBasis& FpModule::relation_basis() const {
  std::call_once(cache_->once,
                 [this] { cache_->basis = std::make_unique<EchelonBasis>(ring().base(), ngens(), base_relations()); });
  return *cache_->basis;
}

Vec FpModule::reduce(const Vec& v) const {
  if (v.size() != ngens()) throw MathError("element has wrong length");
  Vec r = relation_basis().reduce(v);
  for (auto& p : r) p = ring().normalize(std::move(p));
  return r;
}

bool FpModule::is_zero() const {
  for (std::size_t i = 0; i < ngens(); ++i)
    if (!relation_basis().contains(unit_vec(ring(), ngens(), i))) return false;
  return true;
}

std::string FpModule::format() const {
  if (pres_.cols() == 0) return "free " + std::to_string(ngens());
  return pres_.format();
}

// ------------------------------------------------------------ ModuleMap

ModuleMap::ModuleMap(FpModule source, FpModule target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!(matrix_.ring() == target_.ring()) || !(source_.ring() == target_.ring()))
    throw MathError("module map: ring mismatch");
  if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens())
    throw MathError("module map: matrix has the wrong shape");
  const Matrix& p = source_.presentation();
  for (std::size_t c = 0; c < p.cols(); ++c)
    if (!target_.is_zero_element(apply(p.column(c))))
      throw MathError("module map does not respect the relations of its source");
}

ModuleMap ModuleMap::unchecked(FpModule source, FpModule target, Matrix matrix) {
  ModuleMap f;
  if (matrix.rows() != target.ngens() || matrix.cols() != source.ngens())
    throw MathError("module map: matrix has the wrong shape");
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.matrix_ = std::move(matrix);
  return f;
}

ModuleMap ModuleMap::identity(const FpModule& m) {
  return unchecked(m, m, Matrix::identity(m.ring(), m.ngens()));
}

ModuleMap ModuleMap::zero(const FpModule& source, const FpModule& target) {
  return unchecked(source, target, Matrix(target.ring(), target.ngens(), source.ngens()));
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (f.target().ngens() != g.source().ngens()) throw MathError("compose: modules do not match");
  return ModuleMap::unchecked(f.source(), g.target(), g.matrix() * f.matrix());
}

ModuleMap add(const ModuleMap& f, const ModuleMap& g) {
  return ModuleMap::unchecked(f.source(), f.target(), f.matrix() + g.matrix());
}

// ------------------------------------------------------------ prune

PrunedModule prune(const FpModule& m) {
  const Ring& ring = m.ring();
  const std::size_t g = m.ngens();
  std::vector<Vec> cols = columns_of(m.presentation());
  std::vector<Vec> images(g);
  for (std::size_t j = 0; j < g; ++j) images[j] = unit_vec(ring, g, j);
  std::vector<bool> alive(g, true);

  for (;;) {
    std::size_t best_c = cols.size(), best_i = 0, best_nz = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::size_t nz = nonzeros(cols[c]);
      if (best_c != cols.size() && nz >= best_nz) continue;
      for (std::size_t i = 0; i < g; ++i)
        if (alive[i] && ring.is_unit(cols[c][i])) {
          best_c = c;
          best_i = i;
          best_nz = nz;
          break;
        }
    }
    if (best_c == cols.size()) break;
    Vec pivot = cols[best_c];
    Poly uinv = unit_inverse(ring, pivot[best_i]);
    cols.erase(cols.begin() + static_cast<long>(best_c));
    for (auto& c : cols)
      if (!c[best_i].is_zero()) axpy(ring, c, ring.mul(c[best_i], uinv), pivot);
    for (auto& t : images)
      if (!t[best_i].is_zero()) axpy(ring, t, ring.mul(t[best_i], uinv), pivot);
    alive[best_i] = false;
  }

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g; ++i)
    if (alive[i]) keep.push_back(i);
  auto restrict = [&](const Vec& v) {
    Vec out;
    out.reserve(keep.size());
    for (auto i : keep) out.push_back(v[i]);
    return out;
  };
  std::vector<Vec> rels;
  for (const auto& c : cols) {
    Vec r = restrict(c);
    if (is_zero_vec(r) || std::find(rels.begin(), rels.end(), r) != rels.end()) continue;
    rels.push_back(std::move(r));
  }
  PrunedModule out;
  out.module = FpModule(Matrix::from_columns(ring, keep.size(), rels));
  std::vector<Vec> to_cols;
  for (const auto& t : images) to_cols.push_back(restrict(t));
  out.to = Matrix::from_columns(ring, keep.size(), to_cols);
  out.from = Matrix(ring, g, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) out.from.set(keep[k], k, ring.one());
  return out;
}

// ------------------------------------------------------------ subquotients

Subquotient subquotient(const Ring& ring, std::size_t m, const std::vector<Vec>& gens, const std::vector<Vec>& rels) {
  const std::size_t k = gens.size();
  std::vector<Vec> all = gens;
  all.insert(all.end(), rels.begin(), rels.end());
  Subquotient out;
  out.ngens_raw = k;
  out.system = std::make_shared<LinearSystem>(ring.base(), m, all);
  std::vector<Vec> raw_rels;
  for (auto s : out.system->syzygies()) {
    s.resize(k);
    for (auto& p : s) p = ring.normalize(std::move(p));
    if (is_zero_vec(s) || std::find(raw_rels.begin(), raw_rels.end(), s) != raw_rels.end()) continue;
    raw_rels.push_back(std::move(s));
  }
  FpModule raw(Matrix::from_columns(ring, k, raw_rels));
  PrunedModule pruned = prune(raw);
  out.module = pruned.module;
  out.reps = Matrix::from_columns(ring, m, gens) * pruned.from;
  out.raw_to_module = pruned.to;
  return out;
}

Vec Subquotient::coordinates(const Vec& v) const {
  auto x = system->lift(v);
  if (!x) throw MathError("element is not in the subquotient");
  x->resize(ngens_raw);
  return mat_vec(raw_to_module, *x);
}

KernelData kernel(const ModuleMap& f) {
  const FpModule& src = f.source();
  const FpModule& tgt = f.target();
  const Ring& ring = src.ring();
  const std::size_t g = src.ngens();
  std::vector<Vec> cols = columns_of(f.matrix());
  for (auto& r : tgt.base_relations()) cols.push_back(std::move(r));
  LinearSystem ls(ring.base(), tgt.ngens(), cols);
  std::vector<Vec> gens;
  for (auto s : ls.syzygies()) {
    s.resize(g);
    for (auto& p : s) p = ring.normalize(std::move(p));
    if (is_zero_vec(s) || std::find(gens.begin(), gens.end(), s) != gens.end()) continue;
    gens.push_back(std::move(s));
  }
  KernelData out{subquotient(ring, g, gens, src.base_relations()), {}};
  out.inclusion = ModuleMap::unchecked(out.sub.module, src, out.sub.reps);
  return out;
}

CokernelData cokernel(const ModuleMap& f) {
  const FpModule& tgt = f.target();
  FpModule c(tgt.presentation().hcat(f.matrix()));
  return {c, ModuleMap::unchecked(tgt, c, Matrix::identity(tgt.ring(), tgt.ngens()))};
}

bool is_zero_map(const ModuleMap& f) {
  for (std::size_t c = 0; c < f.matrix().cols(); ++c)
    if (!f.target().is_zero_element(f.matrix().column(c))) return false;
  return true;
}

bool is_injective(const ModuleMap& f) { return kernel(f).sub.module.is_zero(); }

bool is_surjective(const ModuleMap& f) {
  const FpModule& tgt = f.target();
  std::vector<Vec> cols = columns_of(f.matrix());
  for (auto& r : tgt.base_relations()) cols.push_back(std::move(r));
  EchelonBasis span(tgt.ring().base(), tgt.ngens(), cols);
  for (std::size_t i = 0; i < tgt.ngens(); ++i)
    if (!span.contains(unit_vec(tgt.ring(), tgt.ngens(), i))) return false;
  return true;
}

bool is_isomorphism(const ModuleMap& f) { return is_surjective(f) && is_injective(f); }

ModuleMap inverse(const ModuleMap& f) {
  const FpModule& tgt = f.target();
  const Ring& ring = tgt.ring();
  const std::size_t g = f.source().ngens();
  std::vector<Vec> cols = columns_of(f.matrix());
  for (auto& r : tgt.base_relations()) cols.push_back(std::move(r));
  LinearSystem ls(ring.base(), tgt.ngens(), cols);
  std::vector<Vec> inv;
  for (std::size_t i = 0; i < tgt.ngens(); ++i) {
    auto x = ls.lift(unit_vec(ring, tgt.ngens(), i));
    if (!x) throw MathError("inverse: map is not surjective");
    x->resize(g);
    inv.push_back(std::move(*x));
  }
  return ModuleMap::unchecked(tgt, f.source(), Matrix::from_columns(ring, g, inv));
}

// ------------------------------------------------------------ constructions

FpModule tensor(const FpModule& m, const FpModule& n) {
  const Ring& ring = m.ring();
  Matrix a = Matrix::kron(m.presentation(), Matrix::identity(ring, n.ngens()));
  Matrix b = Matrix::kron(Matrix::identity(ring, m.ngens()), n.presentation());
  return FpModule(a.hcat(b));
}

FpModule direct_sum(const FpModule& m, const FpModule& n) {
  const Matrix& a = m.presentation();
  const Matrix& b = n.presentation();
  Matrix out(m.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a(r, c));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out.set(a.rows() + r, a.cols() + c, b(r, c));
  return FpModule(out);
}

FpModule power(const FpModule& m, std::size_t r) {
  return FpModule(Matrix::kron(Matrix::identity(m.ring(), r), m.presentation()));
}

KernelData hom(const FpModule& m, const FpModule& n) {
  const Ring& ring = m.ring();
  const Matrix& p = m.presentation();
  FpModule src = power(n, m.ngens());
  FpModule tgt = power(n, p.cols());
  Matrix d = Matrix::kron(p.transpose(), Matrix::identity(ring, n.ngens()));
  return kernel(ModuleMap::unchecked(src, tgt, d));
}

std::vector<mpz_class> abelian_invariants(const FpModule& m) {
  const Ring& ring = m.ring();
  if (!ring.ctx().integral) throw MathError("abelian invariants need a module over the integers");
  Matrix p = m.presentation().mapped(ring.base());
  if (ring.kind() == RingKind::QuotientRing)
    p = p.hcat(Matrix::identity(ring.base(), m.ngens()).scaled(ring.ideal()[0]));
  std::vector<mpz_class> out;
  std::size_t free_rank = m.ngens();
  if (p.cols() > 0 && p.rows() > 0) {
    SmithForm s = smith_normal_form(p);
    free_rank = m.ngens() - s.diagonal.size();
    for (const auto& d : s.diagonal) {
      mpz_class a = abs(d);
      if (a == 0)
        ++free_rank;
      else if (a != 1)
        out.push_back(a);
    }
  }
  for (std::size_t i = 0; i < free_rank; ++i) out.emplace_back(0);
  return out;
}

std::optional<std::size_t> finite_length(const FpModule& m) {
  const Ring& ring = m.ring();
  if (ring.ctx().integral) {
    std::size_t total = 0;
    for (const auto& d : abelian_invariants(m)) {
      if (d == 0) return std::nullopt;
      total += prime_multiplicity(d);
    }
    return total;
  }
  const std::size_t nv = ring.nvars();
  std::vector<std::vector<Monomial>> leads(m.ngens());
  for (const auto& e : m.relation_basis().elements()) {
    for (std::size_t c = 0; c < e.size(); ++c)
      if (!e[c].is_zero()) {
        leads[c].push_back(e[c].lead().mono);
        break;
      }
  }
  std::size_t total = 0;
  for (const auto& ls : leads) {
    std::vector<std::uint32_t> bound(nv, 0);
    for (std::size_t v = 0; v < nv; ++v)
      for (const auto& mono : ls) {
        if (mono.degree != mono.exp[v]) continue;
        if (bound[v] == 0 || mono.exp[v] < bound[v]) bound[v] = mono.exp[v];
      }
    bool constant_lead = std::any_of(ls.begin(), ls.end(), [](const Monomial& mono) { return mono.degree == 0; });
    if (constant_lead) continue;
    if (std::any_of(bound.begin(), bound.end(), [](std::uint32_t b) { return b == 0; })) return std::nullopt;
    Monomial cur;
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
      if (v == nv) {
        if (std::none_of(ls.begin(), ls.end(), [&](const Monomial& l) { return l.divides(cur, nv); })) ++total;
        return;
      }
      for (std::uint32_t e = 0; e < bound[v]; ++e) {
        cur.exp[v] = static_cast<std::uint16_t>(e);
        cur.degree += e;
        walk(v + 1);
        cur.degree -= e;
      }
      cur.exp[v] = 0;
    };
    walk(0);
  }
  return total;
}

std::size_t min_generators(const FpModule& m) {
  const Ring& ring = m.ring();
  if (ring.ctx().integral) return abelian_invariants(m).size();
  if (ring.nvars() == 0) return *finite_length(m);
  return prune(m).module.ngens();
}

}  // namespace mgm
