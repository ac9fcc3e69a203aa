#ifndef MGM_TOWERS_HPP
#define MGM_TOWERS_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgm/complex.hpp"

namespace mgm {

inline constexpr std::size_t kDefaultBound = 8;

// A computation that cannot reach a verdict within its bound.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Direction { Pro, Ind };

// Tower indexed from 1. Pro towers carry maps X_{n+1} -> X_n, ind towers
// X_n -> X_{n+1}. Levels and transitions are evaluated lazily and memoized;
// concurrent evaluation of the same level is harmless.
template <class Obj, class Map>
class LazyTower {
 public:
  using LevelFn = std::function<Obj(std::size_t)>;
  using TransitionFn = std::function<Map(std::size_t)>;  // argument n: the map between levels n and n+1

  LazyTower() = default;
  LazyTower(Direction dir, LevelFn level, TransitionFn transition)
      : state_(std::make_shared<State>()) {
    state_->dir = dir;
    state_->level = std::move(level);
    state_->transition = std::move(transition);
  }

  Direction direction() const { return state_->dir; }
  bool valid() const { return state_ != nullptr; }

  Obj level(std::size_t n) const {
    if (n == 0) throw MathError("towers are indexed from 1");
    {
      std::lock_guard<std::mutex> lock(state_->mu);
      auto it = state_->levels.find(n);
      if (it != state_->levels.end()) return it->second;
    }
    Obj v = state_->level(n);
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->levels.emplace(n, std::move(v)).first->second;
  }

  Map transition(std::size_t n) const {
    if (n == 0) throw MathError("towers are indexed from 1");
    {
      std::lock_guard<std::mutex> lock(state_->mu);
      auto it = state_->maps.find(n);
      if (it != state_->maps.end()) return it->second;
    }
    Map v = state_->transition(n);
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->maps.emplace(n, std::move(v)).first->second;
  }

 private:
  struct State {
    Direction dir = Direction::Pro;
    LevelFn level;
    TransitionFn transition;
    std::mutex mu;
    std::map<std::size_t, Obj> levels;
    std::map<std::size_t, Map> maps;
  };
  std::shared_ptr<State> state_;
};

using ModuleTower = LazyTower<FpModule, ModuleMap>;
using ComplexTower = LazyTower<Complex, ComplexMap>;

// Tower whose transition rule receives the memoized end levels (from, to):
// levels n+1, n for pro towers and n, n+1 for ind towers.
template <class Obj, class Map>
LazyTower<Obj, Map> linked_tower(Direction dir, std::function<Obj(std::size_t)> level,
                                 std::function<Map(std::size_t, const Obj&, const Obj&)> transition) {
  auto levels = std::make_shared<LazyTower<Obj, int>>(dir, std::move(level), [](std::size_t) { return 0; });
  return LazyTower<Obj, Map>(
      dir, [levels](std::size_t n) { return levels->level(n); },
      [levels, dir, transition](std::size_t n) {
        const bool pro = dir == Direction::Pro;
        return transition(n, levels->level(pro ? n + 1 : n), levels->level(pro ? n : n + 1));
      });
}

ModuleTower make_pro_module(ModuleTower::LevelFn level, ModuleTower::TransitionFn transition);
ModuleTower make_ind_module(ModuleTower::LevelFn level, ModuleTower::TransitionFn transition);
// Constant tower with identity transitions.
ModuleTower constant_tower(const FpModule& m, Direction dir);

// Composite transition between levels j <= k: X_k -> X_j (pro) or X_j -> X_k (ind).
ModuleMap composite(const ModuleTower& t, std::size_t j, std::size_t k);

// Levelwise natural map f_n : S_n -> T_n commuting with transitions.
struct TowerMap {
  ModuleTower source;
  ModuleTower target;
  std::function<ModuleMap(std::size_t)> component;
};
struct ComplexTowerMap {
  ComplexTower source;
  ComplexTower target;
  std::function<ComplexMap(std::size_t)> component;
};

TowerMap identity_map(const ModuleTower& t);
TowerMap compose(const TowerMap& g, const TowerMap& f);
// Checks that f commutes with the transitions through level bound.
bool is_natural(const TowerMap& f, std::size_t bound);

ModuleTower kernel_tower(const TowerMap& f);
ModuleTower cokernel_tower(const TowerMap& f);

// Levels X_{phi(n)} with composite transitions; phi strictly increasing.
ModuleTower reindex(const ModuleTower& t, std::function<std::size_t(std::size_t)> phi);
// The natural map from reindex(t, phi) to t given by composite transitions
// (pro: X_{phi(n)} -> X_n, needs phi(n) >= n) and its ind counterpart
// from t to the reindexed tower.
TowerMap reindex_comparison(const ModuleTower& t, std::function<std::size_t(std::size_t)> phi);
ModuleTower direct_sum(const ModuleTower& a, const ModuleTower& b);

// H^i levelwise with induced transitions.
ModuleTower levelwise_cohomology(const ComplexTower& t, int i);
TowerMap levelwise_cohomology(const ComplexTowerMap& f, int i);

enum class Status { Stabilized, Verified, Failed, Inconclusive };
const char* status_name(Status s);

struct StabilizationReport {
  Status status = Status::Inconclusive;
  std::optional<std::size_t> level;  // stabilization or witness level
  std::vector<std::string> witnesses;

  bool passed() const { return status == Status::Verified || status == Status::Stabilized; }
};

// Worst of several verdicts: failed > inconclusive > verified.
StabilizationReport combine(const std::vector<StabilizationReport>& parts);

// Pro-zero to the bound: every level j <= bound/2 is killed by a composite
// from some level k <= bound. Never reports failure.
StabilizationReport pro_zero_check(const ModuleTower& t, std::size_t bound = kDefaultBound);
StabilizationReport ind_zero_check(const ModuleTower& t, std::size_t bound = kDefaultBound);
// Zero check in the tower's own direction.
StabilizationReport zero_check(const ModuleTower& t, std::size_t bound = kDefaultBound);

// Verified iff kernel and cokernel towers are zero to the bound; failed when
// one of them has stabilized at a nonzero module.
StabilizationReport pro_iso_check(const TowerMap& f, std::size_t bound = kDefaultBound);
StabilizationReport ind_iso_check(const TowerMap& f, std::size_t bound = kDefaultBound);
StabilizationReport iso_check(const TowerMap& f, std::size_t bound = kDefaultBound);

// The module at which transitions become isomorphisms from some level
// n <= bound - 1 through the bound.
struct StableValue {
  FpModule module;
  std::size_t level = 0;
};
std::optional<StableValue> stable_value(const ModuleTower& t, std::size_t bound = kDefaultBound);

// Colimit of an ind tower read off at the bound: zero when the tower is
// ind-zero, otherwise the level from which transitions are isomorphisms.
struct ColimValue {
  bool zero = false;
  std::size_t level = 0;
};
std::optional<ColimValue> colim_value(const ModuleTower& ind, std::size_t bound = kDefaultBound);

// Short description of a module for witnesses: invariant factors over the
// integers, lengths where finite, presentations otherwise.
std::string describe_module(const FpModule& m);

}  // namespace mgm

#endif  // MGM_TOWERS_HPP
