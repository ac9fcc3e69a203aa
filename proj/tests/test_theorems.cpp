#include "doctest.h"
#include "mgm/theorems.hpp"

using namespace mgm;

namespace {

Ring zz() { return Ring::integers(); }
Ring qx() { return Ring::poly(Ring::rationals(), {"x"}); }
Ring qxy() { return Ring::poly(Ring::rationals(), {"x", "y"}); }

AdicContext ctx(const Ring& r, std::initializer_list<const char*> gens) {
  std::vector<Poly> ps;
  for (auto* g : gens) ps.push_back(r.parse(g));
  return AdicContext(r, ps);
}

FpModule cyc(const Ring& r, std::initializer_list<const char*> gens) {
  std::vector<Poly> ps;
  for (auto* g : gens) ps.push_back(r.parse(g));
  return FpModule::cyclic(r, ps);
}

Complex single(const FpModule& m) { return Complex::single(m); }
Complex unit_complex(const Ring& r) { return single(FpModule::free(r, 1)); }

bool verified(const TheoremInstance& t) { return t.verdict.status == Status::Verified; }

std::vector<long> invariants(const FpModule& m) {
  std::vector<long> out;
  for (const auto& d : abelian_invariants(m)) out.push_back(d.get_si());
  return out;
}

}  // namespace

TEST_CASE("tensor with the completion of a free complex") {
  for (long p : {2, 3}) {
    AdicContext c(zz(), {zz().from_int(p)});
    CHECK(verified(check_tensor_completion(c, unit_complex(zz()), 8)));
    // H^1 of the dual stage t on A is Z/p^t: the Pruefer system.
    for (std::size_t t = 1; t <= 3; ++t) {
      long pt = 1;
      for (std::size_t i = 0; i < t; ++i) pt *= p;
      CHECK(invariants(tensor_complexes(c.dual_koszul(t), unit_complex(zz())).cohomology(1)) == std::vector<long>{pt});
    }
  }
  // An acyclic two-term complex.
  Complex acyclic(zz(), -1, {FpModule::free(zz(), 1), FpModule::free(zz(), 1)}, {Matrix::from_ints(zz(), {{1}})});
  CHECK(verified(check_tensor_completion(ctx(zz(), {"5"}), acyclic, 8)));
  CHECK(verified(check_tensor_completion(ctx(qx(), {"x"}), unit_complex(qx()), 8)));
  CHECK(verified(check_tensor_completion(ctx(qxy(), {"x", "y"}), unit_complex(qxy()), 4)));
  CHECK_THROWS_AS(check_tensor_completion(ctx(zz(), {"2"}), single(cyc(zz(), {"4"})), 4), PreconditionError);
}

TEST_CASE("torsion of the completion") {
  AdicContext c = ctx(zz(), {"3"});
  TheoremInstance t = check_torsion_of_completion(c, unit_complex(zz()), 8);
  CHECK(verified(t));
  CHECK(t.id == "torsion-of-completion");
  CHECK(verified(check_torsion_of_completion(c, single(cyc(zz(), {"9"})), 8)));
  // 3 acts invertibly on Z/2: both sides vanish.
  CHECK(verified(check_torsion_of_completion(c, single(cyc(zz(), {"2"})), 8)));
  CHECK(verified(check_torsion_of_completion(ctx(qx(), {"x"}), single(cyc(qx(), {"x^2"})), 8)));
}

TEST_CASE("completion of the torsion") {
  AdicContext c = ctx(zz(), {"2"});
  CHECK(verified(check_completion_of_torsion(c, unit_complex(zz()), 8)));
  CHECK(verified(check_completion_of_torsion(c, single(cyc(zz(), {"8"})), 8)));
  CHECK(verified(check_completion_of_torsion(c, single(cyc(zz(), {"3"})), 8)));
  CHECK(verified(check_completion_of_torsion(ctx(qx(), {"x"}), single(cyc(qx(), {"x - 1"})), 8)));
}

TEST_CASE("round trips") {
  AdicContext c = ctx(zz(), {"2"});
  Complex tors = tensor_complexes(c.dual_koszul(2), unit_complex(zz())).with_provenance(kTorsionBuilt);
  CHECK(verified(check_mgm(c, tors, MgmSide::Torsion, 8)));
  Complex comp = tensor_complexes(c.koszul(2), unit_complex(zz())).with_provenance(kCompletionBuilt);
  CHECK(verified(check_mgm(c, comp, MgmSide::Completion, 8)));

  // Z/8 is torsion and complete by annihilation.
  Complex z8 = single(cyc(zz(), {"8"}));
  CHECK(certified_torsion(z8, c, 8));
  CHECK(annihilating_power(z8.cohomology(0), c, 8) == std::optional<std::size_t>(3));
  CHECK(verified(check_mgm(c, z8, MgmSide::Torsion, 8)));
  CHECK(verified(check_mgm(c, z8, MgmSide::Completion, 8)));

  Complex zero = single(FpModule::zero(zz()));
  CHECK(verified(check_mgm(c, zero, MgmSide::Torsion, 8)));
  CHECK(verified(check_mgm(c, zero, MgmSide::Completion, 8)));

  CHECK_THROWS_AS(check_mgm(c, unit_complex(zz()), MgmSide::Torsion, 8), PreconditionError);
  CHECK_THROWS_AS(check_mgm(c, unit_complex(zz()), MgmSide::Completion, 8), PreconditionError);

  // Over Q[x,y] at a smaller bound.
  AdicContext cxy = ctx(qxy(), {"x", "y"});
  Complex t2 = tensor_complexes(cxy.dual_koszul(2), unit_complex(qxy())).with_provenance(kTorsionBuilt);
  CHECK(verified(check_mgm(cxy, t2, MgmSide::Torsion, 4)));
}

TEST_CASE("round trips agree with their two halves") {
  for (const auto& c : {ctx(zz(), {"2"}), ctx(qx(), {"x"})}) {
    const Ring& r = c.ring();
    Complex tors = tensor_complexes(c.dual_koszul(2), unit_complex(r)).with_provenance(kTorsionBuilt);
    Complex comp = tensor_complexes(c.koszul(2), unit_complex(r)).with_provenance(kCompletionBuilt);
    CHECK(verified(check_torsion_of_completion(c, tors, 8)) == verified(check_mgm(c, tors, MgmSide::Torsion, 8)));
    CHECK(verified(check_completion_of_torsion(c, comp, 8)) == verified(check_mgm(c, comp, MgmSide::Completion, 8)));
  }
}

TEST_CASE("verdicts are stable when the bound grows") {
  for (const auto& c : {ctx(zz(), {"2"}), ctx(zz(), {"6"}), ctx(qx(), {"x"})}) {
    const Ring& r = c.ring();
    std::vector<Complex> inputs = {unit_complex(r), free_resolution(FpModule::cyclic(r, c.ideal_power(2))).complex,
                                   tensor_complexes(c.dual_koszul(2), unit_complex(r)).with_provenance(kTorsionBuilt),
                                   tensor_complexes(c.koszul(2), unit_complex(r)).with_provenance(kCompletionBuilt)};
    for (const auto& m : inputs) {
      for (std::size_t b : {4, 8}) {
        CHECK(verified(check_tensor_completion(c, m, b)));
        CHECK(verified(check_torsion_of_completion(c, m, b)));
        CHECK(verified(check_completion_of_torsion(c, m, b)));
      }
    }
  }
}

TEST_CASE("verdicts are deterministic") {
  AdicContext c = ctx(qx(), {"x"});
  TheoremInstance a = check_torsion_of_completion(c, single(cyc(qx(), {"x^3"})), 6);
  TheoremInstance b = check_torsion_of_completion(c, single(cyc(qx(), {"x^3"})), 6);
  CHECK(a.trace == b.trace);
  CHECK(a.verdict.witnesses == b.verdict.witnesses);
  CHECK(a.input == b.input);
}

TEST_CASE("intersection multiplicities") {
  DiagonalContext d(qxy());
  const Ring& a = d.a();
  CHECK(d.b().nvars() == 4);
  CHECK(serre_chi(d, cyc(a, {"y - x^2"}), cyc(a, {"y"})).chi == 2);
  CHECK(serre_chi(d, cyc(a, {"x"}), cyc(a, {"y"})).chi == 1);
  CHECK(serre_chi(d, cyc(a, {"x"}), cyc(a, {"x + y"})).chi == 1);
  // Length of A/(y - x^2, y) read off a Groebner basis.
  CHECK(finite_length(cyc(a, {"y - x^2", "y"})) == std::optional<std::size_t>(2));
  CHECK(verified(check_serre(d, cyc(a, {"y - x^2"}), cyc(a, {"y"}), 2)));
  CHECK(check_serre(d, cyc(a, {"y - x^2"}), cyc(a, {"y"}), 3).verdict.status == Status::Failed);
  CHECK_THROWS_AS(serre_chi(d, cyc(a, {"x"}), cyc(a, {"x"})), PreconditionError);

  const std::vector<std::vector<std::size_t>> binom = {{1, 1}, {1, 2, 1}, {1, 3, 3, 1}};
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    Ring r = Ring::poly(Ring::rationals(), names);
    std::vector<Poly> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back(r.var(i));
    SerreResult s = serre_chi(DiagonalContext(r), FpModule::cyclic(r, vars), FpModule::cyclic(r, vars));
    CHECK(s.direct == binom[n - 1]);
    CHECK(s.diagonal == binom[n - 1]);
    CHECK(s.chi == 0);
  }
}

TEST_CASE("diagonal comparison with Tor") {
  DiagonalContext d2(qxy());
  const Ring& a = d2.a();
  TheoremInstance t = check_diagonal_fg(d2, cyc(a, {"y - x^2"}), cyc(a, {"y"}));
  CHECK(verified(t));
  CHECK(t.verdict.witnesses.front() == "degree 0: diagonal length 2, Tor length 2");
  CHECK(verified(check_diagonal_fg(d2, cyc(a, {"x"}), cyc(a, {"y"}))));
  DiagonalContext d1(qx());
  TheoremInstance k = check_diagonal_fg(d1, cyc(d1.a(), {"x"}), cyc(d1.a(), {"x"}));
  CHECK(verified(k));
  CHECK(k.verdict.witnesses.at(1) == "degree 1: diagonal length 1, Tor length 1");
  CHECK_THROWS_AS(check_diagonal_fg(d2, FpModule::free(a, 1), cyc(a, {"x"})), PreconditionError);

  // Restriction through B -> A keeps lengths.
  CHECK(finite_length(d2.restrict(cyc(a, {"y - x^2", "y"}))) == std::optional<std::size_t>(2));
}

TEST_CASE("diagonal comparison after completion") {
  DiagonalContext d2(qxy());
  const Ring& a = d2.a();
  CHECK(verified(check_diagonal_completed(d2, cyc(a, {"y - x^2"}), cyc(a, {"y"}), 8)));
  DiagonalContext d1(qx());
  CHECK(verified(check_diagonal_completed(d1, cyc(d1.a(), {"x"}), cyc(d1.a(), {"x"}), 8)));
  CHECK(verified(check_diagonal_completed(d1, FpModule::zero(d1.a()), cyc(d1.a(), {"x"}), 8)));
}

TEST_CASE("diagonal torsion comparison") {
  DiagonalContext d1(qx());
  const Ring& a = d1.a();
  CHECK(verified(check_diagonal_torsion(d1, FpModule::free(a, 1), FpModule::free(a, 1), 8)));
  CHECK(verified(check_diagonal_torsion(d1, cyc(a, {"x"}), cyc(a, {"x"}), 8)));
  CHECK(verified(check_diagonal_torsion(d1, FpModule::zero(a), cyc(a, {"x"}), 8)));
  DiagonalContext d2(qxy());
  CHECK(verified(check_diagonal_torsion(d2, FpModule::free(d2.a(), 1), FpModule::free(d2.a(), 1), 4)));
  CHECK_THROWS_AS(DiagonalContext{zz()}, PreconditionError);
}

TEST_CASE("cofinite modules") {
  using F = FgFlag;
  for (long p : {2, 3, 5}) {
    AdicContext c(zz(), {zz().from_int(p)});
    const FpModule fp = FpModule::cyclic(zz(), {zz().from_int(p)});
    CofiniteFlags q = cofinite_flags(c, fractions_module(zz()), 8);
    CHECK(q.degrees == std::vector<int>{-1, 0});
    CHECK(q.ext == std::vector<F>{F::Yes, F::Yes});
    CHECK(q.completion == std::vector<F>{F::Yes, F::Yes});
    CofiniteFlags pr = cofinite_flags(c, prufer_module(zz(), zz().from_int(p)), 8);
    CHECK(pr.ext == std::vector<F>{F::Yes, F::Yes});
    CHECK(pr.completion == std::vector<F>{F::Yes, F::Yes});
    CofiniteFlags s = cofinite_flags(c, countable_sum(fp), 8);
    CHECK(s.ext == std::vector<F>{F::No, F::No});
    CHECK(s.completion == std::vector<F>{F::No, F::No});
    for (std::size_t b : {4, 8}) {
      CHECK(verified(check_cofinite(c, fractions_module(zz()), b)));
      CHECK(verified(check_cofinite(c, prufer_module(zz(), zz().from_int(p)), b)));
      CHECK(verified(check_cofinite(c, countable_sum(fp), b)));
    }
  }
  // Hom(Z/2, Z(2^inf)) is Z/2 at every level of the Pruefer system.
  AdicContext c2 = ctx(zz(), {"2"});
  ModuleTower pr = prufer_module(zz(), zz().from_int(2));
  for (std::size_t t = 1; t <= 4; ++t) CHECK(invariants(hom(cyc(zz(), {"2"}), pr.level(t)).sub.module) == std::vector<long>{2});
  CHECK(verified(check_cofinite(c2, constant_tower(FpModule::free(zz(), 1), Direction::Ind), 8, "Z")));
}

TEST_CASE("a deliberately false comparison") {
  TheoremInstance t = check_zero_comparison(cyc(zz(), {"4"}), 8);
  CHECK(t.verdict.status == Status::Failed);
  CHECK(!t.verdict.witnesses.empty());
  CHECK(verified(check_zero_comparison(FpModule::zero(zz()), 8)));
}
