#include "tame/tamemod/colim.hpp"

#include <stdexcept>

namespace tamemod {

using injcat::InjWord;

ColimElement::ColimElement(FunctorPtr f, int lvl, GroupElement v)
    : parent(std::move(f)), level(lvl), value(std::move(v)) {
  if (!parent || level < 0 || level > parent->N)
    throw std::out_of_range("ColimElement: level outside truncation");
  if (int(value.coeffs.size()) != parent->level(level).num_generators())
    throw std::invalid_argument("ColimElement: coefficient count mismatch");
}

ColimElement::ColimElement(FunctorPtr f, int lvl, std::vector<Int> coeffs)
    : ColimElement(f, lvl, GroupElement(f ? f->level(lvl) : FgAbGroup(0), std::move(coeffs))) {}

ColimElement ColimElement::pushed_to(int m) const {
  if (m < level || m > parent->N) throw std::out_of_range("pushed_to: level out of range");
  GroupElement v = value;
  for (int l = level; l < m; ++l) v = parent->iota(l).apply(v);
  return ColimElement(parent, m, std::move(v));
}

bool ColimElement::is_zero_up_to_truncation() const {
  for (int m = level; m <= parent->N; ++m)
    if (pushed_to(m).value.is_zero()) return true;
  return false;
}

std::string EqVerdict::to_string() const {
  return equal ? "equal at level " + std::to_string(level)
               : "distinct up to level " + std::to_string(level);
}

EqVerdict eq_up_to(const ColimElement& a, const ColimElement& b) {
  if (a.parent.get() != b.parent.get())
    throw std::invalid_argument("eq_up_to: elements of different functors");
  const int N = a.parent->N;
  for (int m = std::max(a.level, b.level); m <= N; ++m)
    if (a.pushed_to(m).value == b.pushed_to(m).value) return {true, m};
  return {false, N};
}

ColimElement m_act(const InjWord& f_prefix, const ColimElement& e) {
  if (f_prefix.source() != e.level)
    throw std::invalid_argument("m_act: prefix does not start at the element's level");
  return ColimElement(e.parent, f_prefix.codomain, e.parent->act(f_prefix, e.value));
}

FiltrationVerdict filtration_le(const ColimElement& e, int k) {
  if (k < 0) throw std::invalid_argument("filtration_le: negative bound");
  const int N = e.parent->N;
  for (int m = e.level; m <= N; ++m) {
    ColimElement up = e.pushed_to(m);
    for (int j = k + 1; j < m; ++j) {
      GroupElement moved = e.parent->s(m, j).apply(up.value);
      if (!eq_up_to(ColimElement(e.parent, m, moved), up).equal)
        return {false, N, FiltrationWitness{m, j}};
    }
  }
  return {true, N, std::nullopt};
}

int exact_filtration(const ColimElement& e) {
  for (int k = 0; k < e.level; ++k)
    if (filtration_le(e, k).holds) return k;
  return e.level;
}

SemistableVerdict is_semistable_up_to(const FunctorPtr& f) {
  const int N = f->N;
  for (int n = 2; n <= N; ++n) {
    const int g = f->level(n).num_generators();
    for (int gi = 0; gi < g; ++gi)
      for (int i = 1; i < n; ++i) {
        std::vector<Int> coeffs(g);
        coeffs[gi] = 1;
        GroupElement e(f->level(n), coeffs);
        GroupElement diff = f->s(n, i).apply(e) - e;
        if (!ColimElement(f, n, diff).is_zero_up_to_truncation())
          return {false, N, SemistableWitness{n, gi, i}};
      }
  }
  return {true, N, std::nullopt};
}

DSurjectiveVerdict check_d_surjective_up_to(const FunctorPtr& f) {
  const int N = f->N;
  for (int n = 0; n < N; ++n) {
    const int g = f->level(n).num_generators();
    for (int gi = 0; gi < g; ++gi) {
      std::vector<Int> coeffs(g);
      coeffs[gi] = 1;
      ColimElement e(f, n, coeffs);
      if (e.value.is_zero()) continue;
      bool hit = false;
      for (int m = n + 1; m <= N && !hit; ++m) {
        std::vector<int> dvals(m - 1);
        for (int i = 0; i < m - 1; ++i) dvals[i] = i + 2;
        DenseMat d = f->act_matrix(InjWord(std::move(dvals), m));
        DenseMat sys = d.hstack(f->level(m).relations().transpose());
        hit = exactalg::solve(sys, e.pushed_to(m).value.coeffs).has_value();
      }
      if (!hit) return {false, N, e};
    }
  }
  return {true, N, std::nullopt};
}

}  // namespace tamemod
