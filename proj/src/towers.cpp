#include "mgm/towers.hpp"

#include <sstream>

namespace mgm {

ModuleTower make_pro_module(ModuleTower::LevelFn level, ModuleTower::TransitionFn transition) {
  return ModuleTower(Direction::Pro, std::move(level), std::move(transition));
}

ModuleTower make_ind_module(ModuleTower::LevelFn level, ModuleTower::TransitionFn transition) {
  return ModuleTower(Direction::Ind, std::move(level), std::move(transition));
}

ModuleTower constant_tower(const FpModule& m, Direction dir) {
  return ModuleTower(dir, [m](std::size_t) { return m; }, [m](std::size_t) { return ModuleMap::identity(m); });
}

ModuleMap composite(const ModuleTower& t, std::size_t j, std::size_t k) {
  if (k < j) throw MathError("composite: levels out of order");
  ModuleMap out = ModuleMap::identity(t.level(j));
  for (std::size_t m = j; m < k; ++m) {
    if (t.direction() == Direction::Pro)
      out = compose(out, t.transition(m));
    else
      out = compose(t.transition(m), out);
  }
  return out;
}

TowerMap identity_map(const ModuleTower& t) {
  return {t, t, [t](std::size_t n) { return ModuleMap::identity(t.level(n)); }};
}

TowerMap compose(const TowerMap& g, const TowerMap& f) {
  auto gc = g.component;
  auto fc = f.component;
  return {f.source, g.target, [gc, fc](std::size_t n) { return compose(gc(n), fc(n)); }};
}

bool is_natural(const TowerMap& f, std::size_t bound) {
  for (std::size_t n = 1; n < bound; ++n) {
    ModuleMap lhs, rhs;
    if (f.source.direction() == Direction::Pro) {
      lhs = compose(f.component(n), f.source.transition(n));
      rhs = compose(f.target.transition(n), f.component(n + 1));
    } else {
      lhs = compose(f.component(n + 1), f.source.transition(n));
      rhs = compose(f.target.transition(n), f.component(n));
    }
    Matrix diff = lhs.matrix() + rhs.matrix().scaled(lhs.target().ring().from_int(-1));
    if (!is_zero_map(ModuleMap::unchecked(lhs.source(), lhs.target(), diff))) return false;
  }
  return true;
}

ModuleTower kernel_tower(const TowerMap& f) {
  auto comp = f.component;
  auto kd = std::make_shared<LazyTower<KernelData, int>>(
      f.source.direction(), [comp](std::size_t n) { return kernel(comp(n)); }, [](std::size_t) { return 0; });
  ModuleTower src = f.source;
  return ModuleTower(
      src.direction(), [kd](std::size_t n) { return kd->level(n).sub.module; },
      [kd, src](std::size_t n) {
        const bool pro = src.direction() == Direction::Pro;
        const KernelData from = kd->level(pro ? n + 1 : n);
        const KernelData to = kd->level(pro ? n : n + 1);
        const Matrix t = src.transition(n).matrix();
        std::vector<Vec> cols;
        for (std::size_t c = 0; c < from.sub.reps.cols(); ++c)
          cols.push_back(to.sub.coordinates(mat_vec(t, from.sub.reps.column(c))));
        return ModuleMap::unchecked(from.sub.module, to.sub.module,
                                    Matrix::from_columns(src.level(n).ring(), to.sub.module.ngens(), cols));
      });
}

ModuleTower cokernel_tower(const TowerMap& f) {
  auto comp = f.component;
  ModuleTower tgt = f.target;
  auto level = [comp](std::size_t n) { return cokernel(comp(n)).module; };
  auto cok = std::make_shared<ModuleTower>(tgt.direction(), level, [](std::size_t) { return ModuleMap(); });
  return ModuleTower(
      tgt.direction(), [cok](std::size_t n) { return cok->level(n); },
      [cok, tgt](std::size_t n) {
        const bool pro = tgt.direction() == Direction::Pro;
        return ModuleMap::unchecked(cok->level(pro ? n + 1 : n), cok->level(pro ? n : n + 1),
                                    tgt.transition(n).matrix());
      });
}

ModuleTower reindex(const ModuleTower& t, std::function<std::size_t(std::size_t)> phi) {
  return ModuleTower(
      t.direction(), [t, phi](std::size_t n) { return t.level(phi(n)); },
      [t, phi](std::size_t n) { return composite(t, phi(n), phi(n + 1)); });
}

TowerMap reindex_comparison(const ModuleTower& t, std::function<std::size_t(std::size_t)> phi) {
  ModuleTower r = reindex(t, phi);
  auto comp = [t, phi](std::size_t n) { return composite(t, n, phi(n)); };
  if (t.direction() == Direction::Pro) return {r, t, comp};
  return {t, r, comp};
}

ModuleTower direct_sum(const ModuleTower& a, const ModuleTower& b) {
  return ModuleTower(
      a.direction(), [a, b](std::size_t n) { return direct_sum(a.level(n), b.level(n)); },
      [a, b](std::size_t n) {
        ModuleMap fa = a.transition(n), fb = b.transition(n);
        const Matrix& ma = fa.matrix();
        const Matrix& mb = fb.matrix();
        Matrix m(ma.ring(), ma.rows() + mb.rows(), ma.cols() + mb.cols());
        for (std::size_t r = 0; r < ma.rows(); ++r)
          for (std::size_t c = 0; c < ma.cols(); ++c) m.set(r, c, ma(r, c));
        for (std::size_t r = 0; r < mb.rows(); ++r)
          for (std::size_t c = 0; c < mb.cols(); ++c) m.set(ma.rows() + r, ma.cols() + c, mb(r, c));
        return ModuleMap::unchecked(direct_sum(fa.source(), fb.source()), direct_sum(fa.target(), fb.target()), m);
      });
}

ModuleTower levelwise_cohomology(const ComplexTower& t, int i) {
  return ModuleTower(
      t.direction(), [t, i](std::size_t n) { return t.level(n).cohomology(i); },
      [t, i](std::size_t n) { return induced_map(t.transition(n), i); });
}

TowerMap levelwise_cohomology(const ComplexTowerMap& f, int i) {
  auto comp = f.component;
  return {levelwise_cohomology(f.source, i), levelwise_cohomology(f.target, i),
          [comp, i](std::size_t n) { return induced_map(comp(n), i); }};
}

// ------------------------------------------------------------ verdicts

const char* status_name(Status s) {
  switch (s) {
    case Status::Stabilized: return "stabilized";
    case Status::Verified: return "verified";
    case Status::Failed: return "failed";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

StabilizationReport combine(const std::vector<StabilizationReport>& parts) {
  StabilizationReport out;
  out.status = Status::Verified;
  for (const auto& p : parts) {
    for (const auto& w : p.witnesses) out.witnesses.push_back(w);
    if (p.status == Status::Failed && out.status != Status::Failed) {
      out.status = Status::Failed;
      out.level = p.level;
    } else if (p.status == Status::Inconclusive && out.status == Status::Verified) {
      out.status = Status::Inconclusive;
      out.level = p.level;
    }
  }
  return out;
}

namespace {

StabilizationReport zero_check_impl(const ModuleTower& t, std::size_t bound, bool pro) {
  if (bound < 2) throw MathError("zero check needs bound >= 2");
  StabilizationReport rep;
  rep.status = Status::Verified;
  const std::size_t top = bound / 2;
  for (std::size_t j = 1; j <= top; ++j) {
    ModuleMap comp = ModuleMap::identity(t.level(j));
    std::optional<std::size_t> killed;
    for (std::size_t k = j; k <= bound; ++k) {
      if (k > j) comp = pro ? compose(comp, t.transition(k - 1)) : compose(t.transition(k - 1), comp);
      if (is_zero_map(comp)) {
        killed = k;
        break;
      }
    }
    std::ostringstream os;
    if (killed) {
      os << "level " << j << " killed " << (pro ? "from" : "at") << " level " << *killed;
    } else {
      os << "level " << j << " (" << describe_module(t.level(j)) << ") survives through level " << bound;
      if (rep.status == Status::Verified) {
        rep.status = Status::Inconclusive;
        rep.level = j;
      }
    }
    rep.witnesses.push_back(os.str());
  }
  return rep;
}

StabilizationReport iso_check_impl(const TowerMap& f, std::size_t bound) {
  StabilizationReport rep;
  rep.status = Status::Verified;
  const std::pair<const char*, ModuleTower> parts[] = {{"kernel", kernel_tower(f)}, {"cokernel", cokernel_tower(f)}};
  for (const auto& [name, tower] : parts) {
    StabilizationReport z = zero_check(tower, bound);
    for (const auto& w : z.witnesses) rep.witnesses.push_back(std::string(name) + ": " + w);
    if (z.passed()) continue;
    auto sv = stable_value(tower, bound);
    if (sv && !sv->module.is_zero()) {
      rep.witnesses.push_back(std::string(name) + " stabilizes from level " + std::to_string(sv->level) + " at " +
                              describe_module(sv->module));
      if (rep.status != Status::Failed) rep.level = sv->level;
      rep.status = Status::Failed;
    } else if (rep.status == Status::Verified) {
      rep.status = Status::Inconclusive;
      rep.level = z.level;
    }
  }
  return rep;
}

}  // namespace

StabilizationReport pro_zero_check(const ModuleTower& t, std::size_t bound) {
  if (t.direction() != Direction::Pro) throw MathError("pro_zero_check needs a pro tower");
  return zero_check_impl(t, bound, true);
}

StabilizationReport ind_zero_check(const ModuleTower& t, std::size_t bound) {
  if (t.direction() != Direction::Ind) throw MathError("ind_zero_check needs an ind tower");
  return zero_check_impl(t, bound, false);
}

StabilizationReport zero_check(const ModuleTower& t, std::size_t bound) {
  return zero_check_impl(t, bound, t.direction() == Direction::Pro);
}

StabilizationReport pro_iso_check(const TowerMap& f, std::size_t bound) {
  if (f.source.direction() != Direction::Pro || f.target.direction() != Direction::Pro)
    throw MathError("pro_iso_check needs pro towers");
  return iso_check_impl(f, bound);
}

StabilizationReport ind_iso_check(const TowerMap& f, std::size_t bound) {
  if (f.source.direction() != Direction::Ind || f.target.direction() != Direction::Ind)
    throw MathError("ind_iso_check needs ind towers");
  return iso_check_impl(f, bound);
}

StabilizationReport iso_check(const TowerMap& f, std::size_t bound) { return iso_check_impl(f, bound); }

std::optional<StableValue> stable_value(const ModuleTower& t, std::size_t bound) {
  if (bound < 2) throw MathError("stable_value needs bound >= 2");
  std::size_t n = bound;
  while (n > 1 && is_isomorphism(t.transition(n - 1))) --n;
  if (n == bound) return std::nullopt;
  return StableValue{t.level(n), n};
}

std::optional<ColimValue> colim_value(const ModuleTower& ind, std::size_t bound) {
  if (ind_zero_check(ind, bound).passed()) return ColimValue{true, 0};
  if (auto sv = stable_value(ind, bound)) return ColimValue{false, sv->level};
  return std::nullopt;
}

std::string describe_module(const FpModule& m) {
  if (m.is_zero()) return "0";
  const Ring& r = m.ring();
  std::ostringstream os;
  if (r.ctx().integral && r.kind() != RingKind::QuotientRing) {
    bool first = true;
    for (const auto& d : abelian_invariants(m)) {
      os << (first ? "" : " + ") << (d == 0 ? std::string("Z") : "Z/" + d.get_str());
      first = false;
    }
    return os.str();
  }
  if (auto len = finite_length(m)) os << "length " << *len << " ";
  os << "coker " << m.format();
  return os.str();
}

}  // namespace mgm
