#include "mgm/linalg.hpp"

#include <algorithm>
#include <map>

namespace mgm {

namespace {

// ------------------------------------------------------------ module vectors

struct MTerm {
  Monomial mono;
  std::uint32_t comp;
  mpq_class coef;
};

using ModVec = std::vector<MTerm>;

// Position over term: lower component index is larger.
int compare_terms(const PolyCtx& ctx, const MTerm& a, const MTerm& b) {
  if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
  return ctx.compare(a.mono, b.mono);
}

ModVec to_modvec(const Vec& v) {
  ModVec out;
  for (std::uint32_t c = 0; c < v.size(); ++c)
    for (const auto& t : v[c].terms()) out.push_back({t.mono, c, t.coef});
  return out;
}

Vec to_vec(const ModVec& v, std::size_t ncomp) {
  std::vector<std::vector<Term>> parts(ncomp);
  for (const auto& t : v) parts[t.comp].push_back({t.mono, t.coef});
  Vec out(ncomp);
  for (std::size_t c = 0; c < ncomp; ++c) out[c].mutable_terms() = std::move(parts[c]);
  return out;
}

// a[from..] - c * m * b
ModVec axpy(const ModVec& a, std::size_t from, const mpq_class& c, const Monomial& m, const ModVec& b,
            const PolyCtx& ctx) {
  ModVec out;
  out.reserve(a.size() - from + b.size());
  std::size_t i = from, j = 0;
  MTerm tb;
  while (i < a.size() || j < b.size()) {
    if (j < b.size()) {
      tb.mono = b[j].mono * m;
      tb.comp = b[j].comp;
    }
    int cmp = (j == b.size()) ? 1 : (i == a.size()) ? -1 : compare_terms(ctx, a[i], tb);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      mpq_class v = -c * b[j++].coef;
      ctx.normalize(v);
      if (v != 0) out.push_back({tb.mono, tb.comp, v});
    } else {
      mpq_class v = a[i++].coef - c * b[j++].coef;
      ctx.normalize(v);
      if (v != 0) out.push_back({tb.mono, tb.comp, v});
    }
  }
  return out;
}

void make_monic(ModVec& v, const PolyCtx& ctx) {
  if (v.empty() || v.front().coef == 1) return;
  mpq_class inv = ctx.inverse(v.front().coef);
  for (auto& t : v) {
    t.coef *= inv;
    ctx.normalize(t.coef);
  }
}

bool single_component(const ModVec& v) {
  return std::all_of(v.begin(), v.end(), [&](const MTerm& t) { return t.comp == v.front().comp; });
}

// ------------------------------------------------------------ Gröbner engine

class GroebnerEngine {
 public:
  GroebnerEngine(const PolyCtx& ctx, std::size_t ncomp) : ctx_(ctx), ncomp_(ncomp) {}

  void build(const std::vector<Vec>& gens) {
    std::vector<ModVec> input;
    for (const auto& g : gens) {
      ModVec v = to_modvec(g);
      if (!v.empty()) input.push_back(std::move(v));
    }
    // Smaller generators first gives shorter reductions.
    std::stable_sort(input.begin(), input.end(), [&](const ModVec& a, const ModVec& b) {
      return compare_terms(ctx_, a.front(), b.front()) < 0;
    });
    for (auto& v : input) {
      ModVec r = reduce(v, true);
      if (!r.empty()) add(std::move(r));
      drain();
    }
    drain();
    interreduce();
  }

  ModVec reduce(const ModVec& v, bool full) const {
    ModVec cur = v;
    ModVec rem;
    std::size_t pos = 0;
    while (pos < cur.size()) {
      const MTerm& lt = cur[pos];
      const ModVec* red = find_reducer(lt);
      if (!red) {
        if (!full) {
          rem.insert(rem.end(), cur.begin() + static_cast<long>(pos), cur.end());
          return rem;
        }
        rem.push_back(lt);
        ++pos;
        continue;
      }
      Monomial q = red->front().mono.quotient_of(lt.mono);
      mpq_class c = lt.coef;  // reducer is monic
      cur = axpy(cur, pos, c, q, *red, ctx_);
      pos = 0;
    }
    return rem;
  }

  const std::vector<ModVec>& basis() const { return basis_; }

 private:
  struct Pair {
    std::size_t i, j;
    std::uint32_t comp;
    Monomial lcm;
  };

  const ModVec* find_reducer(const MTerm& t) const {
    if (t.comp >= by_comp_.size()) return nullptr;
    for (std::size_t idx : by_comp_[t.comp]) {
      const auto& g = basis_[idx];
      if (g.front().mono.divides(t.mono, ctx_.nvars)) return &g;
    }
    return nullptr;
  }

  void add(ModVec h) {
    make_monic(h, ctx_);
    std::size_t k = basis_.size();
    const MTerm& lh = h.front();
    const std::size_t n = ctx_.nvars;
    // Chain criterion on queued pairs.
    std::erase_if(pairs_, [&](const Pair& p) {
      if (p.comp != lh.comp || !lh.mono.divides(p.lcm, n)) return false;
      Monomial li = Monomial::lcm(basis_[p.i].front().mono, lh.mono, n);
      Monomial lj = Monomial::lcm(basis_[p.j].front().mono, lh.mono, n);
      return !(li == p.lcm) && !(lj == p.lcm);
    });
    std::vector<Pair> fresh;
    std::vector<bool> product_ok;
    bool h_single = single_component(h);
    if (lh.comp < by_comp_.size()) {
      for (std::size_t i : by_comp_[lh.comp]) {
        const auto& g = basis_[i];
        fresh.push_back({i, k, lh.comp, Monomial::lcm(g.front().mono, lh.mono, n)});
        product_ok.push_back(h_single && single_component(g) && g.front().mono.coprime(lh.mono, n));
      }
    }
    std::vector<bool> keep(fresh.size(), true);
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      for (std::size_t b = 0; b < fresh.size() && keep[a]; ++b) {
        if (a == b || !keep[b]) continue;
        if (fresh[b].lcm.divides(fresh[a].lcm, n) && !(fresh[b].lcm == fresh[a].lcm)) keep[a] = false;
      }
    }
    // Among equal lcms keep one, or none if any satisfies the product criterion.
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      if (!keep[a]) continue;
      bool group_product = product_ok[a];
      for (std::size_t b = a + 1; b < fresh.size(); ++b) {
        if (keep[b] && fresh[b].lcm == fresh[a].lcm) {
          group_product = group_product || product_ok[b];
          keep[b] = false;
        }
      }
      if (group_product) keep[a] = false;
    }
    for (std::size_t a = 0; a < fresh.size(); ++a)
      if (keep[a]) pairs_.push_back(fresh[a]);

    if (by_comp_.size() <= lh.comp) by_comp_.resize(lh.comp + 1);
    by_comp_[lh.comp].push_back(k);
    basis_.push_back(std::move(h));
  }

  void drain() {
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.lcm.degree != b.lcm.degree) return a.lcm.degree < b.lcm.degree;
        int c = ctx_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return a.comp > b.comp;
      });
      Pair p = *best;
      pairs_.erase(best);
      const auto& f = basis_[p.i];
      const auto& g = basis_[p.j];
      Monomial mf = f.front().mono.quotient_of(p.lcm);
      Monomial mg = g.front().mono.quotient_of(p.lcm);
      ModVec s = axpy(ModVec{}, 0, -1, mf, f, ctx_);
      s = axpy(s, 0, 1, mg, g, ctx_);
      ModVec r = reduce(s, false);
      if (!r.empty()) {
        r = reduce(r, true);
        add(std::move(r));
      }
    }
  }

  void interreduce() {
    const std::size_t n = ctx_.nvars;
    std::vector<ModVec> minimal;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
        if (i == j) continue;
        const auto& li = basis_[i].front();
        const auto& lj = basis_[j].front();
        if (li.comp != lj.comp || !lj.mono.divides(li.mono, n)) continue;
        // Equal leads: keep the first.
        if (!(lj.mono == li.mono) || j < i) redundant = true;
      }
      if (!redundant) minimal.push_back(basis_[i]);
    }
    basis_ = std::move(minimal);
    rebuild_index();
    std::vector<ModVec> reduced;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      ModVec lead{basis_[i].front()};
      ModVec tail(basis_[i].begin() + 1, basis_[i].end());
      ModVec rt = reduce(tail, true);
      lead.insert(lead.end(), rt.begin(), rt.end());
      make_monic(lead, ctx_);
      reduced.push_back(std::move(lead));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const ModVec& a, const ModVec& b) { return compare_terms(ctx_, a.front(), b.front()) > 0; });
    basis_ = std::move(reduced);
    rebuild_index();
  }

  void rebuild_index() {
    by_comp_.assign(ncomp_, {});
    for (std::size_t i = 0; i < basis_.size(); ++i) by_comp_[basis_[i].front().comp].push_back(i);
  }

  PolyCtx ctx_;
  std::size_t ncomp_;
  std::vector<ModVec> basis_;
  std::vector<std::vector<std::size_t>> by_comp_;
  std::vector<Pair> pairs_;
};

// ------------------------------------------------------------ Hermite engine

using ZVec = std::vector<mpz_class>;

class HermiteEngine {
 public:
  explicit HermiteEngine(std::size_t ncomp) : ncomp_(ncomp) {}

  void build(const std::vector<Vec>& gens) {
    std::vector<ZVec> pool;
    for (const auto& g : gens) {
      ZVec z(ncomp_);
      bool nz = false;
      for (std::size_t c = 0; c < ncomp_; ++c) {
        z[c] = g[c].constant_coef().get_num();
        nz = nz || z[c] != 0;
      }
      if (nz) pool.push_back(std::move(z));
    }
    for (std::size_t c = 0; c < ncomp_ && !pool.empty(); ++c) {
      for (;;) {
        std::size_t best = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i) {
          if (pool[i][c] == 0) continue;
          if (best == pool.size() || abs(pool[i][c]) < abs(pool[best][c])) best = i;
        }
        if (best == pool.size()) break;
        bool done = true;
        for (std::size_t i = 0; i < pool.size(); ++i) {
          if (i == best || pool[i][c] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), pool[i][c].get_mpz_t(), pool[best][c].get_mpz_t());
          for (std::size_t k = c; k < ncomp_; ++k) pool[i][k] -= q * pool[best][k];
          if (pool[i][c] != 0) done = false;
        }
        if (done) {
          ZVec piv = std::move(pool[best]);
          pool.erase(pool.begin() + static_cast<long>(best));
          if (piv[c] < 0)
            for (auto& x : piv) x = -x;
          pivots_.push_back({c, std::move(piv)});
          break;
        }
      }
      std::erase_if(pool, [](const ZVec& z) { return std::all_of(z.begin(), z.end(), [](const mpz_class& x) { return x == 0; }); });
    }
    // Reduce entries above each pivot into [0, pivot).
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const auto& [c, pv] = pivots_[k];
      for (std::size_t i = 0; i < k; ++i) {
        auto& row = pivots_[i].second;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), row[c].get_mpz_t(), pv[c].get_mpz_t());
        if (q != 0)
          for (std::size_t t = 0; t < ncomp_; ++t) row[t] -= q * pv[t];
      }
    }
  }

  ZVec reduce(ZVec v) const {
    for (const auto& [c, pv] : pivots_) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), pv[c].get_mpz_t());
      if (q != 0)
        for (std::size_t t = 0; t < ncomp_; ++t) v[t] -= q * pv[t];
    }
    return v;
  }

  std::vector<ZVec> elements() const {
    std::vector<ZVec> out;
    for (const auto& p : pivots_) out.push_back(p.second);
    return out;
  }

 private:
  std::size_t ncomp_;
  std::vector<std::pair<std::size_t, ZVec>> pivots_;
};

}  // namespace

// ------------------------------------------------------------ EchelonBasis

struct EchelonBasis::Impl {
  PolyCtx ctx;
  std::size_t ncomp;
  bool integral;
  std::unique_ptr<GroebnerEngine> gb;
  std::unique_ptr<HermiteEngine> hnf;
};

EchelonBasis::EchelonBasis(const Ring& base, std::size_t ncomp, const std::vector<Vec>& gens)
    : impl_(std::make_unique<Impl>()) {
  if (base.kind() == RingKind::QuotientRing) throw MathError("echelon basis requires a base ring");
  impl_->ctx = base.ctx();
  impl_->ncomp = ncomp;
  impl_->integral = base.ctx().integral;
  for (const auto& g : gens)
    if (g.size() != ncomp) throw MathError("generator has wrong number of components");
  if (impl_->integral) {
    impl_->hnf = std::make_unique<HermiteEngine>(ncomp);
    impl_->hnf->build(gens);
  } else {
    impl_->gb = std::make_unique<GroebnerEngine>(impl_->ctx, ncomp);
    impl_->gb->build(gens);
  }
}

EchelonBasis::~EchelonBasis() = default;
EchelonBasis::EchelonBasis(EchelonBasis&&) noexcept = default;
EchelonBasis& EchelonBasis::operator=(EchelonBasis&&) noexcept = default;

std::size_t EchelonBasis::ncomp() const { return impl_->ncomp; }

Vec EchelonBasis::reduce(const Vec& v) const {
  if (v.size() != impl_->ncomp) throw MathError("vector has wrong number of components");
  if (impl_->integral) {
    ZVec z(impl_->ncomp);
    for (std::size_t c = 0; c < z.size(); ++c) z[c] = v[c].constant_coef().get_num();
    z = impl_->hnf->reduce(std::move(z));
    Vec out(z.size());
    for (std::size_t c = 0; c < z.size(); ++c) out[c] = Poly::constant(mpq_class(z[c]), impl_->ctx);
    return out;
  }
  return to_vec(impl_->gb->reduce(to_modvec(v), true), impl_->ncomp);
}

bool EchelonBasis::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

std::vector<Vec> EchelonBasis::elements() const {
  std::vector<Vec> out;
  if (impl_->integral) {
    for (const auto& z : impl_->hnf->elements()) {
      Vec v(z.size());
      for (std::size_t c = 0; c < z.size(); ++c) v[c] = Poly::constant(mpq_class(z[c]), impl_->ctx);
      out.push_back(std::move(v));
    }
  } else {
    for (const auto& m : impl_->gb->basis()) out.push_back(to_vec(m, impl_->ncomp));
  }
  return out;
}

// ------------------------------------------------------------ LinearSystem

LinearSystem::LinearSystem(const Ring& base, std::size_t rows, const std::vector<Vec>& columns)
    : base_(base), rows_(rows), cols_(columns.size()) {
  std::vector<Vec> aug;
  aug.reserve(cols_);
  const Poly one = Poly::constant(1, base.ctx());
  for (std::size_t k = 0; k < cols_; ++k) {
    if (columns[k].size() != rows) throw MathError("column has wrong length");
    Vec v(rows + cols_);
    std::copy(columns[k].begin(), columns[k].end(), v.begin());
    v[rows + k] = one;
    aug.push_back(std::move(v));
  }
  augmented_ = std::make_shared<EchelonBasis>(base, rows + cols_, aug);
}

std::vector<Vec> LinearSystem::syzygies() const {
  std::vector<Vec> out;
  for (const auto& e : augmented_->elements()) {
    if (!std::all_of(e.begin(), e.begin() + static_cast<long>(rows_), [](const Poly& p) { return p.is_zero(); }))
      continue;
    out.emplace_back(e.begin() + static_cast<long>(rows_), e.end());
  }
  return out;
}

std::optional<Vec> LinearSystem::lift(const Vec& v) const {
  Vec x(rows_ + cols_);
  std::copy(v.begin(), v.end(), x.begin());
  Vec r = augmented_->reduce(x);
  for (std::size_t i = 0; i < rows_; ++i)
    if (!r[i].is_zero()) return std::nullopt;
  Vec out(cols_);
  for (std::size_t k = 0; k < cols_; ++k) out[k] = Poly::neg(r[rows_ + k], base_.ctx());
  return out;
}

bool LinearSystem::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

Vec LinearSystem::reduce(const Vec& v) const {
  if (v.size() != rows_) throw MathError("vector has wrong length");
  Vec x(rows_ + cols_);
  std::copy(v.begin(), v.end(), x.begin());
  Vec r = augmented_->reduce(x);
  r.resize(rows_);
  return r;
}

// ------------------------------------------------------------ Smith form

SmithForm smith_normal_form(const Matrix& m) {
  if (m.ring().kind() != RingKind::Integers) throw MathError("Smith normal form requires an integer matrix");
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j).constant_coef().get_num();
  std::vector<std::vector<mpz_class>> L(R, std::vector<mpz_class>(R)), Rt(C, std::vector<mpz_class>(C));
  for (std::size_t i = 0; i < R; ++i) L[i][i] = 1;
  for (std::size_t i = 0; i < C; ++i) Rt[i][i] = 1;

  auto row_addmul = [&](std::size_t dst, std::size_t src, const mpz_class& q) {  // row dst -= q row src
    for (std::size_t j = 0; j < C; ++j) a[dst][j] -= q * a[src][j];
    for (std::size_t j = 0; j < R; ++j) L[dst][j] -= q * L[src][j];
  };
  auto col_addmul = [&](std::size_t dst, std::size_t src, const mpz_class& q) {  // col dst -= q col src
    for (std::size_t i = 0; i < R; ++i) a[i][dst] -= q * a[i][src];
    for (std::size_t i = 0; i < C; ++i) Rt[i][dst] -= q * Rt[i][src];
  };
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    std::swap(a[x], a[y]);
    std::swap(L[x], L[y]);
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : Rt) std::swap(row[x], row[y]);
  };

  const std::size_t n = std::min(R, C);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t bi = R, bj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (a[i][j] != 0 && (bi == R || abs(a[i][j]) < abs(a[bi][bj]))) bi = i, bj = j;
      if (bi == R) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        row_addmul(i, t, q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_addmul(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < R && divisible; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_addmul(t, i, -1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a[t][t] < 0) {
      for (std::size_t j = 0; j < C; ++j) a[t][j] = -a[t][j];
      for (std::size_t j = 0; j < R; ++j) L[t][j] = -L[t][j];
    }
  }

  SmithForm out{{}, Matrix(m.ring(), R, R), Matrix(m.ring(), C, C)};
  const PolyCtx& ctx = m.ring().ctx();
  for (std::size_t t = 0; t < n; ++t) out.diagonal.push_back(a[t][t]);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < R; ++j) out.left.set(i, j, Poly::constant(mpq_class(L[i][j]), ctx));
  for (std::size_t i = 0; i < C; ++i)
    for (std::size_t j = 0; j < C; ++j) out.right.set(i, j, Poly::constant(mpq_class(Rt[i][j]), ctx));
  return out;
}

// ------------------------------------------------------------ ideals

std::vector<Poly> groebner_basis(const Ring& ring, const std::vector<Poly>& gens) {
  if (ring.kind() != RingKind::PolyRing && !ring.is_field())
    throw MathError("Gröbner bases are computed in polynomial rings");
  std::vector<Vec> vs;
  for (const auto& g : gens) vs.push_back(Vec{g});
  EchelonBasis eb(ring, 1, vs);
  std::vector<Poly> out;
  for (const auto& e : eb.elements()) out.push_back(e[0]);
  return out;
}

std::vector<RingElement> groebner_basis(const std::vector<RingElement>& gens) {
  if (gens.empty()) return {};
  const Ring& ring = gens.front().ring();
  std::vector<Poly> ps;
  for (const auto& g : gens) {
    if (!(g.ring() == ring)) throw MathError("generators live in different rings");
    ps.push_back(g.value());
  }
  std::vector<RingElement> out;
  for (auto& p : groebner_basis(ring, ps)) out.emplace_back(ring, std::move(p));
  return out;
}

Poly normal_form(const Ring& ring, const Poly& f, const std::vector<Poly>& basis) {
  const PolyCtx& ctx = ring.ctx();
  if (ctx.integral) throw MathError("normal forms are computed over a field");
  Poly cur = f;
  std::vector<Term> rem;
  while (!cur.is_zero()) {
    const Term lt = cur.lead();
    const Poly* red = nullptr;
    for (const auto& g : basis)
      if (!g.is_zero() && g.lead().mono.divides(lt.mono, ctx.nvars)) {
        red = &g;
        break;
      }
    if (!red) {
      rem.push_back(lt);
      cur.mutable_terms().erase(cur.mutable_terms().begin());
      continue;
    }
    mpq_class c = lt.coef * ctx.inverse(red->lead().coef);
    ctx.normalize(c);
    cur = Poly::sub(cur, Poly::scale(*red, c, red->lead().mono.quotient_of(lt.mono), ctx), ctx);
  }
  Poly out;
  out.mutable_terms() = std::move(rem);
  return out;
}

RingElement normal_form(const RingElement& f, const std::vector<RingElement>& basis) {
  std::vector<Poly> ps;
  for (const auto& b : basis) {
    if (!(b.ring() == f.ring())) throw MathError("normal form: mismatched rings");
    ps.push_back(b.value());
  }
  return {f.ring(), normal_form(f.ring(), f.value(), ps)};
}

Matrix syzygy_module(const Matrix& m) {
  const Ring& ring = m.ring();
  Ring base = ring.base();
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  if (ring.kind() == RingKind::QuotientRing) {
    for (const auto& f : ring.ideal())
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Vec v(m.rows());
        v[r] = f;
        cols.push_back(std::move(v));
      }
  }
  LinearSystem ls(base, m.rows(), cols);
  std::vector<Vec> kept;
  for (auto& s : ls.syzygies()) {
    s.resize(m.cols());
    for (auto& p : s) p = ring.normalize(std::move(p));
    if (is_zero_vec(s)) continue;
    if (std::find(kept.begin(), kept.end(), s) != kept.end()) continue;
    kept.push_back(std::move(s));
  }
  return Matrix::from_columns(ring, m.cols(), kept);
}

std::vector<RingElement> ideal_power(const std::vector<RingElement>& gens, unsigned n) {
  if (n == 0) throw MathError("ideal_power: exponent must be at least 1");
  if (gens.empty()) return {};
  std::vector<RingElement> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    RingElement prod = gens[idx[0]];
    for (std::size_t k = 1; k < n; ++k) prod = prod * gens[idx[k]];
    if (!prod.is_zero() && std::find(out.begin(), out.end(), prod) == out.end()) out.push_back(prod);
    // Next non-decreasing index tuple.
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == gens.size() - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t t = k; t < n; ++t) idx[t] = idx[k - 1];
  }
  return out;
}

Vec zero_vec(std::size_t n) { return Vec(n); }

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

Vec unit_vec(const Ring& ring, std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = ring.one();
  return v;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
  if (v.size() != m.cols()) throw MathError("matrix-vector: dimension mismatch");
  const Ring& ring = m.ring();
  Vec out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Poly acc;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).is_zero() || v[c].is_zero()) continue;
      acc = Poly::add(acc, Poly::mul(m(r, c), v[c], ring.ctx()), ring.ctx());
    }
    out[r] = ring.normalize(std::move(acc));
  }
  return out;
}

}  // namespace mgm
