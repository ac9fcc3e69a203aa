#include "doctest.h"
#include "mgm/towers.hpp"

using namespace mgm;

namespace {

Ring zz() { return Ring::integers(); }

FpModule zmod(long n) { return FpModule(Matrix::from_ints(zz(), {{n}})); }

long ipow(long b, std::size_t e) {
  long r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<long> invariants(const FpModule& m) {
  std::vector<long> out;
  for (const auto& d : abelian_invariants(m)) out.push_back(d.get_si());
  return out;
}

ModuleMap scalar_map(const FpModule& s, const FpModule& t, long c) {
  return ModuleMap(s, t, Matrix::from_ints(zz(), {{c}}));
}

// {Z/p^(e*n)} with reduction maps.
ModuleTower reduction_tower(long p, std::size_t e) {
  return make_pro_module([p, e](std::size_t n) { return zmod(ipow(p, e * n)); },
                         [p, e](std::size_t n) { return scalar_map(zmod(ipow(p, e * (n + 1))), zmod(ipow(p, e * n)), 1); });
}

// {Z/p^(n+s)} with reduction maps.
ModuleTower shifted_tower(long p, std::size_t s) {
  return make_pro_module([p, s](std::size_t n) { return zmod(ipow(p, n + s)); },
                         [p, s](std::size_t n) { return scalar_map(zmod(ipow(p, n + 1 + s)), zmod(ipow(p, n + s)), 1); });
}

// {Z/p^n, x p}.
ModuleTower prufer_tower(long p) {
  return make_ind_module([p](std::size_t n) { return zmod(ipow(p, n)); },
                         [p](std::size_t n) { return scalar_map(zmod(ipow(p, n)), zmod(ipow(p, n + 1)), p); });
}

Complex two_term(const Ring& r, const Poly& a) {
  Matrix d(r, 1, 1);
  d.set(0, 0, a);
  return Complex(r, -1, {FpModule::free(r, 1), FpModule::free(r, 1)}, {d});
}

}  // namespace

TEST_CASE("pro-zero checks") {
  ModuleTower c = constant_tower(zmod(3), Direction::Pro);
  CHECK(pro_zero_check(c).status == Status::Inconclusive);
  ModuleTower z = make_pro_module([](std::size_t) { return zmod(5); },
                                  [](std::size_t) { return scalar_map(zmod(5), zmod(5), 0); });
  CHECK(pro_zero_check(z).status == Status::Verified);
  CHECK_THROWS_AS(pro_zero_check(c, 1), MathError);
}

TEST_CASE("Koszul homology tower over k[x]/(x^2) is pro-zero") {
  Ring a = Ring::poly(Ring::rationals(), {"x"});
  Ring q = Ring::quotient(a, {a.parse("x^2")});
  const Poly x = q.parse("x");
  ComplexTower kos(
      Direction::Pro, [q, x](std::size_t j) { return two_term(q, q.pow(x, static_cast<unsigned>(j))); },
      [q, x](std::size_t j) {
        Matrix xm(q, 1, 1);
        xm.set(0, 0, x);
        return ComplexMap(two_term(q, q.pow(x, static_cast<unsigned>(j + 1))), two_term(q, q.pow(x, static_cast<unsigned>(j))),
                          {{-1, xm}, {0, Matrix::identity(q, 1)}});
      });
  ModuleTower h1 = levelwise_cohomology(kos, -1);
  CHECK(finite_length(h1.level(1)) == 1u);
  CHECK(finite_length(h1.level(3)) == 2u);
  CHECK_FALSE(is_zero_map(h1.transition(1)));
  StabilizationReport rep = pro_zero_check(h1);
  CHECK(rep.status == Status::Verified);
  CHECK(rep.witnesses.size() == 4);
}

TEST_CASE("pro isomorphism checks") {
  for (long p : {2, 3}) {
    ModuleTower t = reduction_tower(p, 1);
    CHECK(pro_iso_check(identity_map(t), 2).status == Status::Verified);
    CHECK(pro_iso_check(identity_map(t)).status == Status::Verified);
    ModuleTower t2 = reduction_tower(p, 2);
    TowerMap f{t2, t, [t2, t](std::size_t n) { return scalar_map(t2.level(n), t.level(n), 1); }};
    CHECK(is_natural(f, 8));
    CHECK(pro_iso_check(f).status == Status::Verified);
  }
  ModuleTower c = constant_tower(zmod(4), Direction::Pro);
  TowerMap zero{c, c, [c](std::size_t n) { return ModuleMap::zero(c.level(n), c.level(n)); }};
  StabilizationReport rep = pro_iso_check(zero);
  CHECK(rep.status == Status::Failed);
  CHECK(rep.level == 1u);
}

TEST_CASE("ind isomorphism checks") {
  ModuleTower t = prufer_tower(2);
  CHECK(ind_iso_check(identity_map(t)).status == Status::Verified);
  TowerMap shift = reindex_comparison(t, [](std::size_t n) { return n + 1; });
  CHECK(is_natural(shift, 8));
  CHECK(ind_iso_check(shift).status == Status::Verified);
  ModuleTower c = constant_tower(zmod(3), Direction::Ind);
  ModuleTower z = constant_tower(FpModule::zero(zz()), Direction::Ind);
  TowerMap f{c, z, [c, z](std::size_t n) { return ModuleMap::zero(c.level(n), z.level(n)); }};
  CHECK(ind_iso_check(f).status == Status::Failed);
  CHECK(ind_zero_check(t).status == Status::Inconclusive);
}

TEST_CASE("levelwise cohomology of stage towers") {
  Ring r = zz();
  ComplexTower kos(
      Direction::Pro, [r](std::size_t j) { return two_term(r, r.from_int(ipow(3, j))); },
      [r](std::size_t j) {
        return ComplexMap(two_term(r, r.from_int(ipow(3, j + 1))), two_term(r, r.from_int(ipow(3, j))),
                          {{-1, Matrix::from_ints(r, {{3}})}, {0, Matrix::identity(r, 1)}});
      });
  ModuleTower h0 = levelwise_cohomology(kos, 0);
  for (std::size_t j = 1; j <= 4; ++j) CHECK(invariants(h0.level(j)) == std::vector<long>{ipow(3, j)});
  CHECK(is_surjective(h0.transition(2)));
  CHECK(pro_zero_check(levelwise_cohomology(kos, -1)).status == Status::Verified);
  CHECK(!stable_value(h0));

  // Dual stages [Z --p^t--> Z] in degrees 0, 1 with x p on degree 1.
  auto dual = [r](std::size_t t) {
    return Complex(r, 0, {FpModule::free(r, 1), FpModule::free(r, 1)}, {Matrix::from_ints(r, {{ipow(3, t)}})});
  };
  ComplexTower kv(Direction::Ind, dual, [r, dual](std::size_t t) {
    return ComplexMap(dual(t), dual(t + 1), {{0, Matrix::identity(r, 1)}, {1, Matrix::from_ints(r, {{3}})}});
  });
  ModuleTower h1 = levelwise_cohomology(kv, 1);
  ModuleTower pr = prufer_tower(3);
  TowerMap cmp{h1, pr, [h1, pr](std::size_t n) { return scalar_map(h1.level(n), pr.level(n), 1); }};
  CHECK(is_natural(cmp, 6));
  CHECK(ind_iso_check(cmp).status == Status::Verified);
  CHECK(ind_zero_check(levelwise_cohomology(kv, 0)).status == Status::Verified);
}

TEST_CASE("stable values") {
  auto sv = stable_value(constant_tower(zmod(6), Direction::Pro));
  REQUIRE(sv);
  CHECK(sv->level == 1);
  CHECK(invariants(sv->module) == std::vector<long>{6});
  CHECK(!stable_value(reduction_tower(2, 1)));
  // {Z/2^min(n,3)}: Mittag-Leffler, stable from level 3 and pro-isomorphic to its value.
  ModuleTower ml = make_pro_module(
      [](std::size_t n) { return zmod(ipow(2, std::min<std::size_t>(n, 3))); },
      [](std::size_t n) {
        return scalar_map(zmod(ipow(2, std::min<std::size_t>(n + 1, 3))), zmod(ipow(2, std::min<std::size_t>(n, 3))), 1);
      });
  sv = stable_value(ml);
  REQUIRE(sv);
  CHECK(sv->level == 3);
  ModuleTower c = constant_tower(sv->module, Direction::Pro);
  TowerMap f{c, ml, [c, ml](std::size_t n) { return scalar_map(c.level(n), ml.level(n), 1); }};
  CHECK(is_natural(f, 8));
  CHECK(pro_iso_check(f).status == Status::Verified);
}

TEST_CASE("tower invariants: reindexing, composition, sums") {
  for (long p : {2, 5}) {
    ModuleTower t = reduction_tower(p, 1);
    TowerMap dbl = reindex_comparison(t, [](std::size_t n) { return 2 * n; });
    CHECK(is_natural(dbl, 6));
    CHECK(pro_iso_check(dbl).status == Status::Verified);

    // Each map is an interleaving by one step; the composite needs two.
    ModuleTower t1 = shifted_tower(p, 1);
    ModuleTower t2 = shifted_tower(p, 2);
    TowerMap f{t2, t1, [t2, t1](std::size_t n) { return scalar_map(t2.level(n), t1.level(n), 1); }};
    TowerMap g{t1, t, [t1, t](std::size_t n) { return scalar_map(t1.level(n), t.level(n), 1); }};
    REQUIRE(pro_iso_check(f, 4).passed());
    REQUIRE(pro_iso_check(g, 4).passed());
    CHECK(pro_iso_check(compose(g, f), 8).passed());

    ModuleTower s = direct_sum(t, reduction_tower(p, 2));
    for (std::size_t n = 1; n <= 3; ++n)
      CHECK(invariants(s.level(n)) == std::vector<long>{ipow(p, n), ipow(p, 2 * n)});
    CHECK(pro_iso_check(identity_map(s)).passed());
  }
}

TEST_CASE("levelwise cohomology commutes with direct sums") {
  Ring r = zz();
  auto stage = [r](long a) {
    return ComplexTower(
        Direction::Pro, [r, a](std::size_t j) { return two_term(r, r.from_int(ipow(a, j))); },
        [r, a](std::size_t j) {
          return ComplexMap(two_term(r, r.from_int(ipow(a, j + 1))), two_term(r, r.from_int(ipow(a, j))),
                            {{-1, Matrix::from_ints(r, {{a}})}, {0, Matrix::identity(r, 1)}});
        });
  };
  ComplexTower a = stage(2), b = stage(3);
  ComplexTower sum(
      Direction::Pro,
      [a, b](std::size_t j) {
        Complex ca = a.level(j), cb = b.level(j);
        std::vector<FpModule> mods;
        std::vector<Matrix> ds;
        for (int i = -1; i <= 0; ++i) mods.push_back(direct_sum(ca.module(i), cb.module(i)));
        Matrix d(ca.ring(), 2, 2);
        d.set(0, 0, ca.diff_matrix(-1)(0, 0));
        d.set(1, 1, cb.diff_matrix(-1)(0, 0));
        ds.push_back(d);
        return Complex(ca.ring(), -1, mods, ds);
      },
      [](std::size_t) { return ComplexMap(); });
  ModuleTower hs = levelwise_cohomology(sum, 0);
  ModuleTower hsum = direct_sum(levelwise_cohomology(a, 0), levelwise_cohomology(b, 0));
  for (std::size_t j = 1; j <= 3; ++j) CHECK(invariants(hs.level(j)) == invariants(hsum.level(j)));
}
