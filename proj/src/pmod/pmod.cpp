#include "tame/pmod/pmod.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pmod {

using injcat::enumerate_inj;
using injcat::Perm;
using tamemod::GroupElement;

namespace {

long long falling(int a, int b) {  // a! / (a-b)!
  long long r = 1;
  for (int i = a - b + 1; i <= a; ++i) r *= i;
  return b > a ? 0 : r;
}

WordSum normalized(WordSum s) {
  std::map<InjWord, Int> acc;
  for (auto& [c, w] : s) acc[w] += c;
  WordSum out;
  for (auto& [w, c] : acc)
    if (c != 0) out.emplace_back(c, w);
  return out;
}

}  // namespace

int p_basis_index(const InjWord& w) {
  const int n = w.source(), m = w.codomain;
  long long idx = 0;
  std::vector<char> used(m + 1, 0);
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int v = 1; v < w.values[i]; ++v)
      if (!used[v]) ++smaller;
    idx += smaller * falling(m - i - 1, n - i - 1);
    used[w.values[i]] = 1;
  }
  return int(idx);
}

TruncIFunctor p_functor(int n, int N, int grade) {
  TruncIFunctor f;
  f.N = N;
  f.grade = grade;
  std::vector<std::vector<InjWord>> basis;
  for (int m = 0; m <= N; ++m) {
    basis.push_back(enumerate_inj(n, m));
    f.levels.emplace_back(int(basis[m].size()));
  }
  for (int m = 2; m <= N; ++m)
    for (int i = 1; i < m; ++i) {
      DenseMat mat(int(basis[m].size()), int(basis[m].size()));
      for (const InjWord& w : basis[m]) {
        std::vector<int> v = w.values;
        for (int& x : v) {
          if (x == i) x = i + 1;
          else if (x == i + 1) x = i;
        }
        mat.at(p_basis_index(InjWord(v, m)), p_basis_index(w)) = 1;
      }
      f.transpositions.emplace(std::make_pair(m, i), GroupHom(f.level(m), f.level(m), mat));
    }
  for (int m = 0; m < N; ++m) {
    DenseMat mat(int(basis[m + 1].size()), int(basis[m].size()));
    for (const InjWord& w : basis[m]) mat.at(p_basis_index(InjWord(w.values, m + 1)), p_basis_index(w)) = 1;
    f.stab.emplace_back(f.level(m), f.level(m + 1), mat);
  }
  return f;
}

int PSum::total_rank(int m) const {
  long long r = 0;
  for (int n : summands) r += falling(m, n);
  return int(r);
}

PMap PMap::identity(const PSum& s) {
  PMap f;
  f.source = f.target = s;
  f.entries.assign(s.summands.size(), std::vector<WordSum>(s.summands.size()));
  for (size_t i = 0; i < s.summands.size(); ++i)
    f.entries[i][i] = {{Int(1), InjWord::identity(s.summands[i])}};
  return f;
}

PMap PMap::compose(const PMap& inner) const {
  if (inner.target.summands != source.summands)
    throw std::invalid_argument("PMap::compose: source/target mismatch");
  PMap out;
  out.source = inner.source;
  out.target = target;
  out.entries.assign(target.summands.size(), std::vector<WordSum>(inner.source.summands.size()));
  for (size_t i = 0; i < target.summands.size(); ++i)
    for (size_t k = 0; k < inner.source.summands.size(); ++k) {
      WordSum acc;
      for (size_t j = 0; j < source.summands.size(); ++j)
        for (const auto& [c, v] : inner.entries[j][k])
          for (const auto& [c2, v2] : entries[i][j])
            acc.emplace_back(c * c2, injcat::compose(v, v2));
      out.entries[i][k] = normalized(std::move(acc));
    }
  return out;
}

TruncIFunctor realize_psum(const PSum& s, int N) {
  TruncIFunctor f = tamemod::zero_functor(N);
  for (int n : s.summands) f = tamemod::direct_sum(f, p_functor(n, N));
  return f;
}

GroupHom evaluate_pmap(const PMap& f, int m) {
  std::vector<int> src_off(f.source.summands.size() + 1, 0);
  for (size_t j = 0; j < f.source.summands.size(); ++j)
    src_off[j + 1] = src_off[j] + int(falling(m, f.source.summands[j]));
  std::vector<int> tgt_off(f.target.summands.size() + 1, 0);
  for (size_t i = 0; i < f.target.summands.size(); ++i)
    tgt_off[i + 1] = tgt_off[i] + int(falling(m, f.target.summands[i]));

  DenseMat mat(tgt_off.back(), src_off.back());
  for (size_t j = 0; j < f.source.summands.size(); ++j)
    for (const InjWord& w : enumerate_inj(f.source.summands[j], m))
      for (size_t i = 0; i < f.target.summands.size(); ++i)
        for (const auto& [c, v] : f.entries[i][j]) {
          InjWord u = injcat::compose(w, v);
          mat.at(tgt_off[i] + p_basis_index(u), src_off[j] + p_basis_index(w)) += c;
        }
  return GroupHom(FgAbGroup(src_off.back()), FgAbGroup(tgt_off.back()), mat);
}

namespace {

// Try to rewrite e with a representative at a level <= l by taking iota
// preimages; returns the lowered element or nothing.
std::optional<ColimElement> lower_to(const ColimElement& e, int l) {
  ColimElement cur = e;
  while (cur.level > l) {
    const GroupHom& io = cur.parent->iota(cur.level - 1);
    DenseMat sys = io.matrix().hstack(cur.parent->level(cur.level).relations().transpose());
    auto x = exactalg::solve(sys, cur.value.coeffs);
    if (!x) return std::nullopt;
    std::vector<Int> down(io.source().num_generators());
    for (size_t i = 0; i < down.size(); ++i) down[i] = (*x)[i];
    cur = ColimElement(cur.parent, cur.level - 1, std::move(down));
  }
  return cur;
}

}  // namespace

PHomData hom_from_P(int n, const ColimElement& e) {
  if (!tamemod::filtration_le(e, n).holds)
    throw std::invalid_argument("hom_from_P: element has no verified filtration <= n");
  std::optional<ColimElement> low = lower_to(e, n);
  if (!low) throw std::invalid_argument("hom_from_P: no representative at level <= n");
  const int N = e.parent->N;
  PHomData out{n, *low, {}};
  for (int m = 0; m <= N; ++m) {
    auto words = enumerate_inj(n, m);
    DenseMat mat(e.parent->level(m).num_generators(), int(words.size()));
    for (const InjWord& w : words) {
      std::vector<int> prefix(w.values.begin(), w.values.begin() + low->level);
      GroupElement img = tamemod::m_act(InjWord(prefix, m), *low).value;
      for (size_t r = 0; r < img.coeffs.size(); ++r)
        mat.at(int(r), p_basis_index(w)) = img.coeffs[r];
    }
    out.maps.emplace_back(FgAbGroup(int(words.size())), e.parent->level(m), mat);
  }
  return out;
}

KappaData kappa(int n, int N) {
  if (1 + n > N) throw std::out_of_range("kappa: 1+n exceeds truncation");
  KappaData out;
  TruncIFunctor pn = p_functor(n, N);
  out.p = std::make_shared<TruncIFunctor>(p_functor(1 + n, N));
  out.induced = std::make_shared<TruncIFunctor>(tamemod::induce(pn));

  for (int m = 0; m <= N; ++m) {
    const int pr = out.p->level(m).num_generators();
    const int ir = out.induced->level(m).num_generators();
    DenseMat back(pr, ir), fwd(ir, pr);
    if (m >= 1) {
      const int block = int(falling(m - 1, n));  // rank of P_n at level m-1
      for (int j = 1; j <= m; ++j) {
        Perm cj = injcat::complete_to_perm(InjWord({j}, m));
        for (const InjWord& w : enumerate_inj(n, m - 1)) {
          // c_j tensor w corresponds to (c_j(1), c_j(w_1+1), ..., c_j(w_n+1))
          std::vector<int> u(1 + n);
          u[0] = j;
          for (int i = 0; i < n; ++i) u[1 + i] = cj.at(w.values[i] + 1);
          int prow = p_basis_index(InjWord(u, m));
          int icol = (j - 1) * block + p_basis_index(w);
          back.at(prow, icol) = 1;
          fwd.at(icol, prow) = 1;
        }
      }
    }
    out.backward.emplace_back(out.induced->level(m), out.p->level(m), back);
    out.forward.emplace_back(out.p->level(m), out.induced->level(m), fwd);
  }

  out.verified = true;
  for (int m = 0; m <= N && out.verified; ++m) {
    const GroupHom &f = out.forward[m], &b = out.backward[m];
    out.verified = f.is_well_defined() && b.is_well_defined() &&
                   f.compose(b).equals(GroupHom::identity(out.induced->level(m))) &&
                   b.compose(f).equals(GroupHom::identity(out.p->level(m))) &&
                   f.is_isomorphism();
  }
  // naturality: the bijection commutes with transpositions and stabilization
  for (int m = 2; m <= N && out.verified; ++m)
    for (int i = 1; i < m && out.verified; ++i)
      out.verified = out.forward[m]
                         .compose(out.p->s(m, i))
                         .equals(out.induced->s(m, i).compose(out.forward[m]));
  for (int m = 0; m < N && out.verified; ++m)
    out.verified = out.forward[m + 1]
                       .compose(out.p->iota(m))
                       .equals(out.induced->iota(m).compose(out.forward[m]));
  return out;
}

QuotientIn quotient_In(int n, int N) {
  if (n + 1 > N) throw std::out_of_range("quotient_In: 1+n exceeds truncation");
  QuotientIn out;
  out.projection.source = PSum{{1 + n}};
  out.projection.target = PSum{{n}};
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  out.projection.entries = {{WordSum{{Int(1), InjWord(v, 1 + n)}}}};
  for (int m = 0; m <= N; ++m) out.realized.push_back(evaluate_pmap(out.projection, m));
  return out;
}

void ProElement::check_compatible() const {
  auto by_values = [](const WordSum& s) {
    std::map<std::vector<int>, Int> acc;
    for (const auto& [c, w] : s) acc[w.values] += c;
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    return acc;
  };
  for (size_t k = 0; k + 1 < components.size(); ++k) {
    WordSum dropped;
    for (const auto& [c, w] : components[k + 1]) {
      if (w.source() != int(k) + 1)
        throw std::invalid_argument("pro-element: component " + std::to_string(k + 1) +
                                    " has wrong source size");
      std::vector<int> v(w.values.begin(), w.values.end() - 1);
      dropped.emplace_back(c, InjWord(v, w.codomain));
    }
    if (by_values(dropped) != by_values(components[k]))
      throw std::invalid_argument("pro-element: tower incompatible at stage " + std::to_string(k));
  }
  for (const auto& [c, w] : components.empty() ? WordSum{} : components[0])
    if (w.source() != 0) throw std::invalid_argument("pro-element: component 0 not in P_0");
}

ColimElement act_pro_element(const ProElement& a, int k, const ColimElement& e) {
  a.check_compatible();
  if (k < 0 || k >= int(a.components.size()))
    throw std::out_of_range("act_pro_element: no component at stage k");
  if (!tamemod::filtration_le(e, k).holds)
    throw std::invalid_argument("act_pro_element: element has no verified filtration <= k");
  std::optional<ColimElement> low = lower_to(e, k);
  if (!low) throw std::invalid_argument("act_pro_element: no representative at level <= k");
  const int N = e.parent->N;
  int top = low->level;
  for (const auto& [c, w] : a.components[k]) {
    if (w.codomain > N) throw std::out_of_range("act_pro_element: word exceeds truncation");
    top = std::max(top, w.codomain);
  }
  ColimElement acc(e.parent, top, std::vector<Int>(e.parent->level(top).num_generators()));
  for (const auto& [c, w] : a.components[k]) {
    std::vector<int> prefix(w.values.begin(), w.values.begin() + low->level);
    ColimElement term = tamemod::m_act(InjWord(prefix, w.codomain), *low).pushed_to(top);
    for (size_t i = 0; i < acc.value.coeffs.size(); ++i)
      acc.value.coeffs[i] += c * term.value.coeffs[i];
  }
  return acc;
}

TruncIFunctor builtin_functor(const std::string& name, int N) {
  if (name == "Z") return tamemod::constant_functor(FgAbGroup(1), N);
  if (name == "zero") return tamemod::zero_functor(N);
  auto args = [&](const std::string& prefix) -> std::optional<std::vector<int>> {
    if (name.rfind(prefix + "(", 0) != 0 || name.back() != ')') return std::nullopt;
    std::vector<int> out;
    std::string body = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    size_t pos = 0;
    while (pos <= body.size()) {
      size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
      out.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  if (auto a = args("P"); a && a->size() == 1) return p_functor((*a)[0], N);
  if (auto a = args("truncP"); a && a->size() == 2)
    return tamemod::truncate_above(p_functor((*a)[0], N), (*a)[1]);
  throw std::invalid_argument("unknown functor name: " + name);
}

}  // namespace pmod
