#include "tame/tamemod/functor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tamemod {

using injcat::InjWord;
using injcat::Perm;

namespace {

// right-multiplication bubble sort: v * s_{j1} * ... * s_{jk} = id, so the
// action of v is s_{jk*} o ... o s_{j1*}
std::vector<int> adjacent_word(const Perm& g) {
  std::vector<int> v = g.values, js;
  for (;;) {
    bool moved = false;
    for (size_t j = 0; j + 1 < v.size(); ++j)
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        js.push_back(int(j) + 1);
        moved = true;
      }
    if (!moved) break;
  }
  return js;
}

DenseMat block_diag(const DenseMat& a, const DenseMat& b) {
  DenseMat m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) m.at(a.rows() + r, a.cols() + c) = b.at(r, c);
  return m;
}

FgAbGroup group_sum(const FgAbGroup& a, const FgAbGroup& b) {
  return FgAbGroup(a.num_generators() + b.num_generators(),
                   block_diag(a.relations(), b.relations()));
}

// Direct sum of `copies` copies of g, relations block diagonal.
FgAbGroup copy_sum(const FgAbGroup& g, int copies) {
  const int gg = g.num_generators(), rr = g.relations().rows();
  DenseMat rels(copies * rr, copies * gg);
  for (int k = 0; k < copies; ++k)
    for (int r = 0; r < rr; ++r)
      for (int c = 0; c < gg; ++c) rels.at(k * rr + r, k * gg + c) = g.relations().at(r, c);
  return FgAbGroup(copies * gg, rels);
}

// Hom between copy sums: copy j of the source goes to copy dest[j] of the
// target through block[j].
GroupHom copy_hom(const FgAbGroup& source, const FgAbGroup& target, int src_block_size,
                  int tgt_block_size, const std::vector<int>& dest,
                  const std::vector<DenseMat>& block) {
  DenseMat m(target.num_generators(), source.num_generators());
  for (size_t j = 0; j < dest.size(); ++j)
    for (int r = 0; r < tgt_block_size; ++r)
      for (int c = 0; c < src_block_size; ++c)
        m.at(dest[j] * tgt_block_size + r, int(j) * src_block_size + c) = block[j].at(r, c);
  return GroupHom(source, target, m);
}

Perm perm_compose(const Perm& a, const Perm& b) { return injcat::compose(a, b); }

Perm perm_inverse(const Perm& p) {
  std::vector<int> v(p.values.size());
  for (int i = 1; i <= p.source(); ++i) v[p.at(i) - 1] = i;
  return Perm(std::move(v), p.codomain);
}

Perm adjacent_transposition(int m, int i) {
  Perm p = Perm::identity(m);
  std::swap(p.values[i - 1], p.values[i]);
  return p;
}

// Coset representative of S_m over 1 x S_{m-1}: sends 1 to j, the rest
// increasing.
Perm coset_rep(int m, int j) { return injcat::complete_to_perm(InjWord({j}, m)); }

// Strip a fixed first point: tau in S_m with tau(1) = 1 gives the S_{m-1}
// permutation of the remaining points.
Perm strip_first(const Perm& tau) {
  std::vector<int> v(tau.source() - 1);
  for (int i = 2; i <= tau.source(); ++i) v[i - 2] = tau.at(i) - 1;
  return Perm(std::move(v), tau.codomain - 1);
}

}  // namespace

ValidationReport TruncIFunctor::validate() const {
  auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
  if (int(levels.size()) != N + 1) return fail("levels: expected N+1 groups");
  if (int(stab.size()) != N) return fail("stab: expected N maps");

  for (int n = 0; n < N; ++n) {
    const GroupHom& io = iota(n);
    if (io.source().num_generators() != level(n).num_generators() ||
        io.target().num_generators() != level(n + 1).num_generators())
      return fail("stab shape mismatch at level " + std::to_string(n));
    if (!io.is_well_defined()) return fail("stab ill-defined at level " + std::to_string(n));
  }
  for (int n = 2; n <= N; ++n)
    for (int i = 1; i < n; ++i) {
      auto it = transpositions.find({n, i});
      if (it == transpositions.end())
        return fail("missing transposition s_" + std::to_string(i) + " at level " +
                    std::to_string(n));
      const GroupHom& si = it->second;
      if (si.source().num_generators() != level(n).num_generators() ||
          si.target().num_generators() != level(n).num_generators())
        return fail("transposition shape mismatch at level " + std::to_string(n));
      if (!si.is_well_defined())
        return fail("transposition s_" + std::to_string(i) + " ill-defined at level " +
                    std::to_string(n));
    }

  auto where = [](int n, int i, int j = -1) {
    std::ostringstream o;
    o << " at level " << n << " (s_" << i;
    if (j > 0) o << ", s_" << j;
    o << ")";
    return o.str();
  };
  for (int n = 2; n <= N; ++n)
    for (int i = 1; i < n; ++i) {
      const GroupHom& si = s(n, i);
      if (!si.compose(si).equals(GroupHom::identity(level(n))))
        return fail("involution fails" + where(n, i));
      for (int j = i + 1; j < n; ++j) {
        const GroupHom& sj = s(n, j);
        if (j == i + 1) {
          if (!si.compose(sj).compose(si).equals(sj.compose(si).compose(sj)))
            return fail("braid relation fails" + where(n, i, j));
        } else if (!si.compose(sj).equals(sj.compose(si))) {
          return fail("commutation fails" + where(n, i, j));
        }
      }
    }
  for (int n = 2; n < N; ++n)
    for (int i = 1; i < n; ++i)
      if (!iota(n).compose(s(n, i)).equals(s(n + 1, i).compose(iota(n))))
        return fail("equivariance of iota fails" + where(n, i));
  for (int n = 0; n + 2 <= N; ++n) {
    GroupHom twice = iota(n + 1).compose(iota(n));
    if (!s(n + 2, n + 1).compose(twice).equals(twice))
      return fail("added-coordinate relation fails at level " + std::to_string(n));
  }
  return {};
}

GroupHom TruncIFunctor::perm_action(int n, const Perm& g) const {
  if (g.source() != n || g.codomain != n)
    throw std::invalid_argument("perm_action: not a permutation of the level");
  auto key = std::make_pair(n, g.values);
  auto it = memo_->perm.find(key);
  if (it == memo_->perm.end()) {
    DenseMat m = DenseMat::identity(level(n).num_generators());
    for (int j : adjacent_word(g)) m = s(n, j).matrix() * m;
    it = memo_->perm.emplace(key, std::move(m)).first;
  }
  return GroupHom(level(n), level(n), it->second);
}

DenseMat TruncIFunctor::act_matrix(const InjWord& alpha) const {
  const int n = alpha.source(), m = alpha.codomain;
  if (m > N) throw std::out_of_range("act: codomain exceeds truncation");
  DenseMat mat = DenseMat::identity(level(n).num_generators());
  for (int l = n; l < m; ++l) mat = iota(l).matrix() * mat;
  return perm_action(m, injcat::complete_to_perm(alpha)).matrix() * mat;
}

GroupElement TruncIFunctor::act(const InjWord& alpha, const GroupElement& x) const {
  return GroupElement(level(alpha.codomain), act_matrix(alpha).apply(x.coeffs));
}

TruncIFunctor constant_functor(const FgAbGroup& a, int N, int grade) {
  TruncIFunctor f;
  f.N = N;
  f.grade = grade;
  f.levels.assign(N + 1, a);
  for (int n = 0; n < N; ++n) f.stab.push_back(GroupHom::identity(a));
  for (int n = 2; n <= N; ++n)
    for (int i = 1; i < n; ++i) f.transpositions.emplace(std::make_pair(n, i), GroupHom::identity(a));
  return f;
}

TruncIFunctor zero_functor(int N, int grade) {
  return constant_functor(FgAbGroup(0), N, grade);
}

TruncIFunctor direct_sum(const TruncIFunctor& f, const TruncIFunctor& g) {
  if (f.N != g.N) throw std::invalid_argument("direct_sum: truncation mismatch");
  TruncIFunctor h;
  h.N = f.N;
  h.grade = f.grade;
  for (int n = 0; n <= f.N; ++n) h.levels.push_back(group_sum(f.level(n), g.level(n)));
  for (int n = 0; n < f.N; ++n)
    h.stab.emplace_back(h.level(n), h.level(n + 1),
                        block_diag(f.iota(n).matrix(), g.iota(n).matrix()));
  for (int n = 2; n <= f.N; ++n)
    for (int i = 1; i < n; ++i)
      h.transpositions.emplace(
          std::make_pair(n, i),
          GroupHom(h.level(n), h.level(n), block_diag(f.s(n, i).matrix(), g.s(n, i).matrix())));
  return h;
}

TruncIFunctor truncate_above(const TruncIFunctor& f, int i) {
  if (i < 0 || i > f.N) throw std::invalid_argument("truncate_above: bad cutoff");
  TruncIFunctor h;
  h.N = f.N;
  h.grade = f.grade;
  const FgAbGroup trivial(0);
  for (int n = 0; n <= f.N; ++n) h.levels.push_back(n <= i ? f.level(n) : trivial);
  for (int n = 0; n < f.N; ++n) h.stab.push_back(GroupHom::zero(h.level(n), h.level(n + 1)));
  for (int n = 0; n < std::min(i, f.N); ++n)
    h.stab[n] = f.iota(n);
  for (int n = 2; n <= f.N; ++n)
    for (int i2 = 1; i2 < n; ++i2)
      h.transpositions.emplace(std::make_pair(n, i2),
                               n <= i ? f.s(n, i2) : GroupHom::identity(trivial));
  return h;
}

TruncIFunctor shift(const TruncIFunctor& f) {
  if (f.N < 1) throw std::invalid_argument("shift: truncation must be positive");
  TruncIFunctor h;
  h.N = f.N - 1;
  h.grade = f.grade;
  for (int n = 0; n <= h.N; ++n) h.levels.push_back(f.level(n + 1));
  for (int n = 0; n < h.N; ++n) h.stab.push_back(f.iota(n + 1));
  for (int n = 2; n <= h.N; ++n)
    for (int i = 1; i < n; ++i)
      h.transpositions.emplace(std::make_pair(n, i), f.s(n + 1, i + 1));
  return h;
}

TruncIFunctor induce(const TruncIFunctor& f) {
  TruncIFunctor h;
  h.N = f.N;
  h.grade = f.grade;
  h.levels.push_back(FgAbGroup(0));
  for (int m = 1; m <= f.N; ++m) h.levels.push_back(copy_sum(f.level(m - 1), m));

  // gamma * c_j = c_{gamma(j)} * (1 x sigma); copy j maps to copy gamma(j)
  // through sigma_* on F(m-1)
  auto decompose = [&](int m, int j, const Perm& gamma) {
    int j2 = gamma.at(j);
    Perm tau = perm_compose(perm_inverse(coset_rep(m, j2)), perm_compose(gamma, coset_rep(m, j)));
    return std::make_pair(j2 - 1, strip_first(tau));
  };

  for (int m = 2; m <= f.N; ++m)
    for (int i = 1; i < m; ++i) {
      Perm si = adjacent_transposition(m, i);
      std::vector<int> dest(m);
      std::vector<DenseMat> block;
      for (int j = 1; j <= m; ++j) {
        auto [j2, sigma] = decompose(m, j, si);
        dest[j - 1] = j2;
        block.push_back(f.perm_action(m - 1, sigma).matrix());
      }
      int bs = f.level(m - 1).num_generators();
      h.transpositions.emplace(std::make_pair(m, i),
                               copy_hom(h.level(m), h.level(m), bs, bs, dest, block));
    }

  h.stab.push_back(GroupHom::zero(h.level(0), h.level(1)));
  for (int m = 1; m < f.N; ++m) {
    // c_j x 1 in S_{m+1} equals c_j * (1 x sigma); copy j keeps its index
    std::vector<int> dest(m);
    std::vector<DenseMat> block;
    for (int j = 1; j <= m; ++j) {
      Perm cj_ext = injcat::complete_to_perm(InjWord(coset_rep(m, j).values, m + 1));
      Perm tau = perm_compose(perm_inverse(coset_rep(m + 1, j)), cj_ext);
      Perm sigma = strip_first(tau);
      dest[j - 1] = j - 1;
      block.push_back(f.perm_action(m, sigma).matrix() * f.iota(m - 1).matrix());
    }
    h.stab.emplace_back(copy_hom(h.level(m), h.level(m + 1), f.level(m - 1).num_generators(),
                                 f.level(m).num_generators(), dest, block));
  }
  return h;
}

KernelFunctor kernel_functor(const TruncIFunctor& f, const TruncIFunctor& g,
                             const std::vector<GroupHom>& maps) {
  if (f.N != g.N || int(maps.size()) != f.N + 1)
    throw std::invalid_argument("kernel_functor: need one map per level");
  KernelFunctor out;
  out.kernel.N = f.N;
  out.kernel.grade = f.grade;
  for (int n = 0; n <= f.N; ++n) {
    exactalg::KernelData kd = exactalg::hom_kernel(maps[n]);
    out.kernel.levels.push_back(kd.kernel);
    out.inclusion.push_back(kd.inclusion);
  }

  // transport h: F(n) -> F(m) to the kernels: solve inc_m y = h inc_n modulo
  // the relations of F(m); failure means h does not preserve the kernels
  auto restrict = [&](const GroupHom& h, int n, int m) {
    const DenseMat& inc_n = out.inclusion[n].matrix();
    const DenseMat& inc_m = out.inclusion[m].matrix();
    DenseMat rhs = h.matrix() * inc_n;
    DenseMat sys = inc_m.hstack(f.level(m).relations().transpose());
    exactalg::Snf snf = exactalg::smith_normal_form(sys);
    DenseMat k(inc_m.cols(), rhs.cols());
    for (int j = 0; j < rhs.cols(); ++j) {
      std::vector<Int> b(rhs.rows());
      for (int i = 0; i < rhs.rows(); ++i) b[i] = rhs.at(i, j);
      auto y = exactalg::solve(snf, b);
      if (!y) throw std::invalid_argument("kernel_functor: maps do not commute with structure");
      for (int i = 0; i < k.rows(); ++i) k.at(i, j) = (*y)[i];
    }
    return GroupHom(out.kernel.level(n), out.kernel.level(m), k);
  };

  for (int n = 0; n < f.N; ++n) out.kernel.stab.push_back(restrict(f.iota(n), n, n + 1));
  for (int n = 2; n <= f.N; ++n)
    for (int i = 1; i < n; ++i)
      out.kernel.transpositions.emplace(std::make_pair(n, i), restrict(f.s(n, i), n, n));
  return out;
}

ValidationReport SigmaModule::validate() const {
  auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
  if (int(transpositions.size()) != std::max(0, n - 1))
    return fail("expected n-1 transpositions");
  for (int i = 1; i < n; ++i) {
    const GroupHom& si = transpositions[i - 1];
    if (si.source().num_generators() != group.num_generators() ||
        si.target().num_generators() != group.num_generators() || !si.is_well_defined())
      return fail("s_" + std::to_string(i) + " ill-defined");
    if (!si.compose(si).equals(GroupHom::identity(group)))
      return fail("involution fails for s_" + std::to_string(i));
    for (int j = i + 1; j < n; ++j) {
      const GroupHom& sj = transpositions[j - 1];
      if (j == i + 1) {
        if (!si.compose(sj).compose(si).equals(sj.compose(si).compose(sj)))
          return fail("braid relation fails for s_" + std::to_string(i));
      } else if (!si.compose(sj).equals(sj.compose(si))) {
        return fail("commutation fails for s_" + std::to_string(i) + ", s_" + std::to_string(j));
      }
    }
  }
  return {};
}

GroupHom SigmaModule::action(const Perm& g, bool sign_twist) const {
  if (g.source() != n || g.codomain != n)
    throw std::invalid_argument("SigmaModule::action: wrong size");
  DenseMat m = DenseMat::identity(group.num_generators());
  for (int j : adjacent_word(g)) m = transpositions[j - 1].matrix() * m;
  if (sign_twist && injcat::sign(g) < 0)
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) m.at(r, c) = -m.at(r, c);
  return GroupHom(group, group, m);
}

TruncIFunctor tensor_sigma(const SigmaModule& b, int N, bool sign_twist, int grade) {
  ValidationReport rep = b.validate();
  if (!rep.ok) throw std::invalid_argument("tensor_sigma: " + rep.message);
  const int n = b.n;

  // orbit representatives of the free right S_n-action on I(n,m): increasing
  // words, listed lexicographically
  auto reps = [&](int m) {
    std::vector<std::vector<int>> out;
    for (const InjWord& w : injcat::enumerate_inj(n, m)) {
      if (!std::is_sorted(w.values.begin(), w.values.end())) continue;
      out.push_back(w.values);
    }
    return out;
  };
  auto rep_index = [](const std::vector<std::vector<int>>& rs, const std::vector<int>& v) {
    return int(std::lower_bound(rs.begin(), rs.end(), v) - rs.begin());
  };

  TruncIFunctor h;
  h.N = N;
  h.grade = grade;
  std::vector<std::vector<std::vector<int>>> level_reps;
  for (int m = 0; m <= N; ++m) {
    level_reps.push_back(reps(m));
    h.levels.push_back(copy_sum(b.group, int(level_reps[m].size())));
  }

  // postcomposition: gamma . (u tensor x) = u' tensor sigma . x where
  // gamma o u = u' o sigma with u' increasing
  auto move_copy = [&](int m, const std::vector<int>& u, const Perm& gamma) {
    std::vector<int> w(u.size());
    for (size_t t = 0; t < u.size(); ++t) w[t] = gamma.at(u[t]);
    std::vector<int> u2 = w;
    std::sort(u2.begin(), u2.end());
    std::vector<int> sv(u.size());
    for (size_t t = 0; t < u.size(); ++t)
      sv[t] = int(std::lower_bound(u2.begin(), u2.end(), w[t]) - u2.begin()) + 1;
    return std::make_pair(rep_index(level_reps[m], u2), Perm(std::move(sv), n));
  };

  for (int m = 2; m <= N; ++m)
    for (int i = 1; i < m; ++i) {
      Perm si = adjacent_transposition(m, i);
      const auto& rs = level_reps[m];
      std::vector<int> dest(rs.size());
      std::vector<DenseMat> block;
      for (size_t j = 0; j < rs.size(); ++j) {
        auto [j2, sigma] = move_copy(m, rs[j], si);
        dest[j] = j2;
        block.push_back(b.action(sigma, sign_twist).matrix());
      }
      int bs = b.group.num_generators();
      h.transpositions.emplace(std::make_pair(m, i),
                               copy_hom(h.level(m), h.level(m), bs, bs, dest, block));
    }
  for (int m = 0; m < N; ++m) {
    const auto& rs = level_reps[m];
    std::vector<int> dest(rs.size());
    std::vector<DenseMat> block(rs.size(), DenseMat::identity(b.group.num_generators()));
    for (size_t j = 0; j < rs.size(); ++j) dest[j] = rep_index(level_reps[m + 1], rs[j]);
    int bs = b.group.num_generators();
    h.stab.emplace_back(copy_hom(h.level(m), h.level(m + 1), bs, bs, dest, block));
  }
  return h;
}

DStage d_stage(const TruncIFunctor& f, int k) {
  if (k < 0 || k > f.N) throw std::out_of_range("d_stage: k exceeds truncation");
  DStage out;
  TruncIFunctor stage = f;
  for (int t = 0; t < k; ++t) stage = shift(stage);
  out.stage = stage;
  if (k >= 1) {
    for (int t = 0; t <= f.N - k; ++t) {
      int m = k - 1 + t;
      std::vector<int> dvals(m);
      for (int i = 0; i < m; ++i) dvals[i] = i + 2;
      InjWord dword(std::move(dvals), m + 1);
      out.transition.emplace_back(f.level(m), f.level(m + 1), f.act_matrix(dword));
    }
  }
  return out;
}

}  // namespace tamemod
