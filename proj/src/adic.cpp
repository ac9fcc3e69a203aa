#include "mgm/adic.hpp"

#include <algorithm>
#include <sstream>

namespace mgm {

namespace {

Complex two_term(const Ring& r, int lo, const Matrix& d) {
  return Complex(r, lo, {FpModule::free(r, d.cols()), FpModule::free(r, d.rows())}, {d}, false);
}

Matrix scalar(const Ring& r, const Poly& a) {
  Matrix m(r, 1, 1);
  m.set(0, 0, a);
  return m;
}

template <class PieceFn>
Complex tensor_pieces(std::size_t n, PieceFn piece) {
  Complex c = piece(0);
  for (std::size_t i = 1; i < n; ++i) c = tensor_complexes(c, piece(i));
  return c;
}

template <class PieceFn>
ComplexMap tensor_piece_maps(std::size_t n, PieceFn piece) {
  ComplexMap f = piece(0);
  for (std::size_t i = 1; i < n; ++i) f = tensor_maps(f, piece(i));
  return f;
}

Complex tel_piece(const Ring& r, const Poly& a, std::size_t j) {
  Matrix d(r, j + 1, j + 1);
  d.set(0, 0, r.one());
  for (std::size_t i = 1; i <= j; ++i) {
    d.set(i - 1, i, r.one());
    d.set(i, i, r.neg(a));
  }
  return two_term(r, 0, d);
}

void place(Matrix& big, std::size_t r0, std::size_t c0, const Matrix& small) {
  for (std::size_t r = 0; r < small.rows(); ++r)
    for (std::size_t c = 0; c < small.cols(); ++c) big.set(r0 + r, c0 + c, small(r, c));
}

}  // namespace

// ------------------------------------------------------------ AdicContext

AdicContext::AdicContext(Ring ring, std::vector<Poly> gens) : state_(std::make_shared<State>()) {
  if (gens.empty()) throw MathError("adic context needs at least one generator");
  state_->ring = std::move(ring);
  for (auto& g : gens) state_->gens.push_back(state_->ring.normalize(std::move(g)));
}

std::string AdicContext::describe() const {
  std::ostringstream os;
  os << ring().describe() << " (";
  for (std::size_t i = 0; i < gens().size(); ++i) os << (i ? ", " : "") << ring().format(gens()[i]);
  os << ")";
  return os.str();
}

std::vector<Poly> AdicContext::ideal_power(unsigned j) const {
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->powers.find(j);
    if (it != state_->powers.end()) return it->second;
  }
  std::vector<Poly> out;
  if (j == 0) {
    out.push_back(ring().one());
  } else {
    std::vector<RingElement> els;
    for (const auto& g : gens()) els.emplace_back(ring(), g);
    for (const auto& e : mgm::ideal_power(els, j)) out.push_back(e.value());
  }
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->powers.emplace(j, std::move(out)).first->second;
}

namespace {

template <class Build>
Complex cached(std::mutex& mu, std::map<std::size_t, Complex>& cache, std::size_t key, Build build) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Complex c = build();
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(c)).first->second;
}

}  // namespace

Complex AdicContext::koszul(std::size_t j) const {
  return cached(state_->mu, state_->koszul, j, [&] {
    return tensor_pieces(length(), [&](std::size_t i) {
      return two_term(ring(), -1, scalar(ring(), ring().pow(gens()[i], static_cast<unsigned>(j))));
    });
  });
}

ComplexMap AdicContext::koszul_transition(std::size_t j) const {
  ComplexMap f = tensor_piece_maps(length(), [&](std::size_t i) {
    const Poly& a = gens()[i];
    Complex src = two_term(ring(), -1, scalar(ring(), ring().pow(a, static_cast<unsigned>(j + 1))));
    Complex tgt = two_term(ring(), -1, scalar(ring(), ring().pow(a, static_cast<unsigned>(j))));
    return ComplexMap(src, tgt, {{-1, scalar(ring(), a)}, {0, Matrix::identity(ring(), 1)}}, false);
  });
  return with_ends(f, koszul(j + 1), koszul(j));
}

Complex AdicContext::dual_koszul(std::size_t t) const {
  return cached(state_->mu, state_->dual, t, [&] {
    return tensor_pieces(length(), [&](std::size_t i) {
      return two_term(ring(), 0, scalar(ring(), ring().pow(gens()[i], static_cast<unsigned>(t))));
    });
  });
}

ComplexMap AdicContext::dual_koszul_transition(std::size_t t) const {
  ComplexMap f = tensor_piece_maps(length(), [&](std::size_t i) {
    const Poly& a = gens()[i];
    Complex src = two_term(ring(), 0, scalar(ring(), ring().pow(a, static_cast<unsigned>(t))));
    Complex tgt = two_term(ring(), 0, scalar(ring(), ring().pow(a, static_cast<unsigned>(t + 1))));
    return ComplexMap(src, tgt, {{0, Matrix::identity(ring(), 1)}, {1, scalar(ring(), a)}}, false);
  });
  return with_ends(f, dual_koszul(t), dual_koszul(t + 1));
}

Complex AdicContext::telescope(std::size_t j) const {
  return cached(state_->mu, state_->telescope, j,
                [&] { return tensor_pieces(length(), [&](std::size_t i) { return tel_piece(ring(), gens()[i], j); }); });
}

ComplexMap AdicContext::telescope_to_dual(std::size_t j) const {
  ComplexMap f = tensor_piece_maps(length(), [&](std::size_t i) {
    const Poly& a = gens()[i];
    Matrix f0(ring(), 1, j + 1), f1(ring(), 1, j + 1);
    f0.set(0, 0, ring().one());
    for (std::size_t k = 0; k <= j; ++k) f1.set(0, k, ring().pow(a, static_cast<unsigned>(j - k)));
    Complex tgt = two_term(ring(), 0, scalar(ring(), ring().pow(a, static_cast<unsigned>(j))));
    return ComplexMap(tel_piece(ring(), a, j), tgt, {{0, f0}, {1, f1}}, false);
  });
  return with_ends(f, telescope(j), dual_koszul(j));
}

ComplexMap AdicContext::telescope_transition(std::size_t j) const {
  ComplexMap f = tensor_piece_maps(length(), [&](std::size_t i) {
    const Poly& a = gens()[i];
    Matrix inc(ring(), j + 2, j + 1);
    for (std::size_t k = 0; k <= j; ++k) inc.set(k, k, ring().one());
    return ComplexMap(tel_piece(ring(), a, j), tel_piece(ring(), a, j + 1), {{0, inc}, {1, inc}}, false);
  });
  return with_ends(f, telescope(j), telescope(j + 1));
}

ComplexTower AdicContext::koszul_tower() const {
  AdicContext self = *this;
  return ComplexTower(
      Direction::Pro, [self](std::size_t j) { return self.koszul(j); },
      [self](std::size_t j) { return self.koszul_transition(j); });
}

ComplexTower AdicContext::dual_koszul_tower() const {
  AdicContext self = *this;
  return ComplexTower(
      Direction::Ind, [self](std::size_t t) { return self.dual_koszul(t); },
      [self](std::size_t t) { return self.dual_koszul_transition(t); });
}

// ------------------------------------------------------------ base change

RingMap RingMap::identity(const Ring& r) { return {r, r, {}}; }

RingMap RingMap::by_names(const Ring& source, const Ring& target) {
  RingMap f{source, target, {}};
  const auto& tv = target.variables();
  for (const auto& v : source.variables()) {
    auto it = std::find(tv.begin(), tv.end(), v);
    if (it == tv.end()) throw MathError("ring map: variable " + v + " has no image in " + target.describe());
    f.var_images.push_back(target.var(static_cast<std::size_t>(it - tv.begin())));
  }
  if (source.coefficient_ring().kind() != RingKind::Integers &&
      !(source.coefficient_ring() == target.coefficient_ring()))
    throw MathError("ring map: cannot map coefficients of " + source.describe() + " into " + target.describe());
  return f;
}

RingMap RingMap::projection(const Ring& quotient) {
  if (quotient.kind() != RingKind::QuotientRing) throw MathError("ring map: projection needs a quotient ring");
  return {quotient.base(), quotient, {}};
}

Poly RingMap::apply(const Poly& p) const {
  if (var_images.empty()) {
    if (source.nvars() == 0) {
      // Constants only; coefficients move to the target's domain.
      if (p.is_zero()) return {};
      return target.normalize(Poly::constant(p.constant_coef(), target.ctx()));
    }
    if (!(source.base() == target.base())) throw MathError("ring map: inexpressible map");
    return target.normalize(p);
  }
  Poly out;
  for (const auto& t : p.terms()) {
    Poly term = target.normalize(Poly::constant(t.coef, target.ctx()));
    for (std::size_t v = 0; v < source.nvars(); ++v)
      if (t.mono.exp[v] > 0) term = target.mul(term, target.pow(var_images[v], t.mono.exp[v]));
    out = target.add(out, term);
  }
  return out;
}

Matrix RingMap::apply(const Matrix& m) const {
  Matrix out(target, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(r, c, apply(m(r, c)));
  return out;
}

FpModule extend_scalars(const FpModule& m, const RingMap& f) { return FpModule(f.apply(m.presentation())); }

Complex extend_scalars(const Complex& c, const RingMap& f) {
  std::vector<FpModule> mods;
  std::vector<Matrix> diffs;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    mods.push_back(extend_scalars(c.module(i), f));
    if (i < c.hi()) diffs.push_back(f.apply(c.diff_matrix(i)));
  }
  return Complex(f.target, c.lo(), std::move(mods), std::move(diffs), false);
}

namespace {

ComplexMap identity_between(const Complex& a, const Complex& b) {
  std::map<int, Matrix> comps;
  for (int i = a.lo(); i <= a.hi(); ++i) {
    if (a.rank(i) != b.rank(i)) throw MathError("base change: stage ranks differ in degree " + std::to_string(i));
    comps.emplace(i, Matrix::identity(b.ring(), b.rank(i)));
  }
  return ComplexMap(a, b, std::move(comps), true);
}

}  // namespace

ComplexMap BaseChange::koszul_iso(const AdicContext& source, std::size_t j) const {
  return identity_between(extend_scalars(source.koszul(j), map), target.koszul(j));
}

ComplexMap BaseChange::telescope_iso(const AdicContext& source, std::size_t j) const {
  return identity_between(extend_scalars(source.telescope(j), map), target.telescope(j));
}

BaseChange base_change(const AdicContext& ctx, const RingMap& f) {
  if (!(f.source == ctx.ring())) throw MathError("base change: map does not start at the context ring");
  std::vector<Poly> gens;
  for (const auto& g : ctx.gens()) gens.push_back(f.apply(g));
  return {AdicContext(f.target, gens), f};
}

// ------------------------------------------------------------ completion and torsion

FpModule quotient_by_ideal(const FpModule& m, const std::vector<Poly>& gens) {
  const Ring& r = m.ring();
  const std::size_t g = m.ngens();
  std::vector<Vec> cols;
  for (const auto& a : gens)
    for (std::size_t i = 0; i < g; ++i) {
      Vec v(g);
      v[i] = a;
      cols.push_back(std::move(v));
    }
  return FpModule(m.presentation().hcat(Matrix::from_columns(r, g, cols)));
}

Complex quotient_by_ideal(const Complex& c, const std::vector<Poly>& gens) {
  std::vector<FpModule> mods;
  std::vector<Matrix> diffs;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    mods.push_back(quotient_by_ideal(c.module(i), gens));
    if (i < c.hi()) diffs.push_back(c.diff_matrix(i));
  }
  return Complex(c.ring(), c.lo(), std::move(mods), std::move(diffs), false);
}

namespace {

FpModule quotient_by_power(const FpModule& m, const AdicContext& ctx, unsigned n) {
  return quotient_by_ideal(m, ctx.ideal_power(n));
}

}  // namespace

ModuleTower completion_tower(const FpModule& m, const AdicContext& ctx) {
  return linked_tower<FpModule, ModuleMap>(
      Direction::Pro, [m, ctx](std::size_t n) { return quotient_by_power(m, ctx, static_cast<unsigned>(n)); },
      [](std::size_t, const FpModule& from, const FpModule& to) {
        return ModuleMap::unchecked(from, to, Matrix::identity(from.ring(), from.ngens()));
      });
}

ModuleTower torsion_ind(const FpModule& m, const AdicContext& ctx) {
  auto hom_at = [m, ctx](std::size_t n) {
    return hom(FpModule::cyclic(ctx.ring(), ctx.ideal_power(static_cast<unsigned>(n))), m);
  };
  auto kd = std::make_shared<LazyTower<KernelData, int>>(Direction::Ind, hom_at, [](std::size_t) { return 0; });
  return ModuleTower(
      Direction::Ind, [kd](std::size_t n) { return kd->level(n).sub.module; },
      [kd](std::size_t n) {
        const KernelData from = kd->level(n);
        const KernelData to = kd->level(n + 1);
        std::vector<Vec> cols;
        for (std::size_t c = 0; c < from.sub.reps.cols(); ++c) cols.push_back(to.sub.coordinates(from.sub.reps.column(c)));
        return ModuleMap::unchecked(from.sub.module, to.sub.module,
                                    Matrix::from_columns(from.sub.module.ring(), to.sub.module.ngens(), cols));
      });
}

ComplexTower derived_completion(const Complex& mc, const AdicContext& ctx) {
  return linked_tower<Complex, ComplexMap>(
      Direction::Pro, [mc, ctx](std::size_t j) { return tensor_complexes(ctx.koszul(j), mc); },
      [mc, ctx](std::size_t j, const Complex& from, const Complex& to) {
        return with_ends(tensor_maps(ctx.koszul_transition(j), mc), from, to);
      });
}

ComplexTower derived_torsion(const Complex& mc, const AdicContext& ctx) {
  return linked_tower<Complex, ComplexMap>(
      Direction::Ind, [mc, ctx](std::size_t t) { return tensor_complexes(ctx.dual_koszul(t), mc); },
      [mc, ctx](std::size_t t, const Complex& from, const Complex& to) {
        return with_ends(tensor_maps(ctx.dual_koszul_transition(t), mc), from, to);
      });
}

namespace {

ColimValue require_colim(const ModuleTower& inner, std::size_t bound, const std::string& what) {
  auto v = colim_value(inner, bound);
  if (!v) throw Inconclusive(what + ": inner system neither vanishes nor stabilizes within level " + std::to_string(bound));
  return *v;
}

}  // namespace

ModuleTower completion_tower(const ModuleTower& ind, const AdicContext& ctx, std::size_t inner_bound) {
  if (ind.direction() != Direction::Ind) throw MathError("completion_tower: expected an ind-module");
  auto value = [ind, ctx, inner_bound](std::size_t n) {
    ModuleTower inner = linked_tower<FpModule, ModuleMap>(
        Direction::Ind, [ind, ctx, n](std::size_t t) { return quotient_by_power(ind.level(t), ctx, static_cast<unsigned>(n)); },
        [ind](std::size_t t, const FpModule& from, const FpModule& to) {
          return ModuleMap::unchecked(from, to, ind.transition(t).matrix());
        });
    ColimValue v = require_colim(inner, inner_bound, "completion level " + std::to_string(n));
    return v.zero ? FpModule::zero(ctx.ring()) : inner.level(inner_bound);
  };
  return linked_tower<FpModule, ModuleMap>(
      Direction::Pro, value, [](std::size_t, const FpModule& from, const FpModule& to) {
        if (from.ngens() == 0 || to.ngens() == 0) return ModuleMap::zero(from, to);
        return ModuleMap::unchecked(from, to, Matrix::identity(from.ring(), from.ngens()));
      });
}

ModuleTower derived_completion_cohomology(const ModuleTower& ind, const AdicContext& ctx, int degree,
                                          std::size_t inner_bound) {
  if (ind.direction() != Direction::Ind) throw MathError("derived completion: expected an ind-module");
  auto inner_at = [ind, ctx, degree](std::size_t j) {
    ComplexTower stages = linked_tower<Complex, ComplexMap>(
        Direction::Ind, [ind, ctx, j](std::size_t t) { return tensor_complexes(ctx.koszul(j), Complex::single(ind.level(t))); },
        [ind, ctx, j](std::size_t t, const Complex& from, const Complex& to) {
          ComplexMap m(Complex::single(ind.level(t)), Complex::single(ind.level(t + 1)), {{0, ind.transition(t).matrix()}}, false);
          return with_ends(tensor_maps(ctx.koszul(j), m), from, to);
        });
    return std::make_pair(stages, levelwise_cohomology(stages, degree));
  };
  auto cache = std::make_shared<LazyTower<std::pair<ComplexTower, ModuleTower>, int>>(
      Direction::Pro, inner_at, [](std::size_t) { return 0; });
  auto zero_at = [cache, inner_bound](std::size_t j) {
    return require_colim(cache->level(j).second, inner_bound, "completion stage " + std::to_string(j)).zero;
  };
  return ModuleTower(
      Direction::Pro,
      [cache, zero_at, inner_bound, ctx](std::size_t j) {
        return zero_at(j) ? FpModule::zero(ctx.ring()) : cache->level(j).second.level(inner_bound);
      },
      [cache, zero_at, inner_bound, ctx, ind, degree](std::size_t j) {
        const bool z_from = zero_at(j + 1), z_to = zero_at(j);
        const FpModule from = z_from ? FpModule::zero(ctx.ring()) : cache->level(j + 1).second.level(inner_bound);
        const FpModule to = z_to ? FpModule::zero(ctx.ring()) : cache->level(j).second.level(inner_bound);
        if (z_from || z_to) return ModuleMap::zero(from, to);
        const Complex top = Complex::single(ind.level(inner_bound));
        ComplexMap f = with_ends(tensor_maps(ctx.koszul_transition(j), top), cache->level(j + 1).first.level(inner_bound),
                                 cache->level(j).first.level(inner_bound));
        return induced_map(f, degree);
      });
}

// ------------------------------------------------------------ ind-modules

ModuleTower localization_module(const Ring& r, const Poly& a) {
  const FpModule m = FpModule::free(r, 1);
  const Matrix x = scalar(r, a);
  return make_ind_module([m](std::size_t) { return m; }, [m, x](std::size_t) { return ModuleMap(m, m, x); });
}

ModuleTower prufer_module(const Ring& r, const Poly& a) {
  const Matrix x = scalar(r, a);
  return linked_tower<FpModule, ModuleMap>(
      Direction::Ind, [r, a](std::size_t t) { return FpModule::cyclic(r, {r.pow(a, static_cast<unsigned>(t))}); },
      [x](std::size_t, const FpModule& from, const FpModule& to) { return ModuleMap(from, to, x); });
}

ModuleTower fractions_module(const Ring& z) {
  if (z.kind() != RingKind::Integers) throw MathError("fractions: expected the integers");
  const FpModule m = FpModule::free(z, 1);
  return make_ind_module([m](std::size_t) { return m; },
                         [m, z](std::size_t t) { return ModuleMap(m, m, scalar(z, z.from_int(static_cast<long>(t) + 1))); });
}

ModuleTower countable_sum(const FpModule& m) {
  return linked_tower<FpModule, ModuleMap>(
      Direction::Ind, [m](std::size_t t) { return power(m, t); },
      [](std::size_t, const FpModule& from, const FpModule& to) {
        Matrix inc(from.ring(), to.ngens(), from.ngens());
        for (std::size_t i = 0; i < from.ngens(); ++i) inc.set(i, i, from.ring().one());
        return ModuleMap(from, to, inc);
      });
}

// ------------------------------------------------------------ unit and counit

ComplexMap degree_zero_inclusion(const Complex& k, const Complex& m) {
  if (k.rank(0) != 1) throw MathError("unit map: stage must have rank 1 in degree 0");
  Complex t = tensor_complexes(k, m);
  std::map<int, Matrix> comps;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    Matrix f(m.ring(), t.rank(d), m.rank(d));
    place(f, tensor_block_offset(k, m, 0, d), 0, Matrix::identity(m.ring(), m.rank(d)));
    comps.emplace(d, std::move(f));
  }
  return ComplexMap(m, t, std::move(comps), false);
}

ComplexMap degree_zero_projection(const Complex& k, const Complex& m) {
  if (k.rank(0) != 1) throw MathError("counit map: stage must have rank 1 in degree 0");
  Complex t = tensor_complexes(k, m);
  std::map<int, Matrix> comps;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    Matrix f(m.ring(), m.rank(d), t.rank(d));
    place(f, 0, tensor_block_offset(k, m, 0, d), Matrix::identity(m.ring(), m.rank(d)));
    comps.emplace(d, std::move(f));
  }
  return ComplexMap(t, m, std::move(comps), false);
}

// ------------------------------------------------------------ WPR and psi

StabilizationReport wpr_check(const AdicContext& ctx, std::size_t bound) {
  ComplexTower kos = ctx.koszul_tower();
  std::vector<StabilizationReport> parts;
  for (std::size_t i = 1; i <= ctx.length(); ++i) {
    StabilizationReport r = pro_zero_check(levelwise_cohomology(kos, -static_cast<int>(i)), bound);
    for (auto& w : r.witnesses) w = "H_" + std::to_string(i) + " " + w;
    parts.push_back(std::move(r));
  }
  return combine(parts);
}

PsiComparison psi_comparison(const FpModule& m, const AdicContext& ctx, unsigned n) {
  if (n == 0) throw MathError("psi comparison needs n >= 1");
  PsiComparison out;
  out.tensor_side = tensor(m, FpModule::cyclic(ctx.ring(), ctx.ideal_power(n)));
  out.quotient_side = quotient_by_power(m, ctx, n);
  out.map = ModuleMap(out.tensor_side, out.quotient_side, Matrix::identity(m.ring(), m.ngens()));
  out.isomorphism = is_isomorphism(out.map);
  return out;
}

}  // namespace mgm
