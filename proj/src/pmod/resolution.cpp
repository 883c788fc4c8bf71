#include "tame/pmod/resolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmod {

using injcat::enumerate_inj;
using tamemod::GroupElement;

namespace {

// Columns spanning the subfunctor generated by `chosen` at level m: the whole
// I(l, m)-orbit of every generator.
DenseMat orbit_span(const TruncIFunctor& f, const std::vector<ColimElement>& chosen, int m) {
  std::vector<std::vector<Int>> cols;
  for (const ColimElement& x : chosen) {
    if (x.level > m) continue;
    for (const InjWord& a : enumerate_inj(x.level, m))
      cols.push_back(f.act_matrix(a).apply(x.value.coeffs));
  }
  DenseMat out(f.level(m).num_generators(), int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < cols[j].size(); ++i) out.at(int(i), int(j)) = cols[j][i];
  return out;
}

// Membership oracle for the span modulo relations; the Smith form is computed
// once and reused across queries until the span grows.
struct SpanChecker {
  exactalg::Snf snf;
  SpanChecker(const DenseMat& span, const DenseMat& relations)
      : snf(exactalg::smith_normal_form(span.hstack(relations.transpose()))) {}
  bool contains(const std::vector<Int>& x) const {
    return exactalg::solve(snf, x).has_value();
  }
};

// Exact filtration of an element of a realized P-sum: the largest value
// appearing in any basis word of its support.
int free_filtration(const PSum& s, int m, const std::vector<Int>& coeffs) {
  int f = 0, off = 0;
  for (int n : s.summands) {
    for (const InjWord& w : enumerate_inj(n, m)) {
      if (coeffs[off + p_basis_index(w)] != 0)
        for (int v : w.values) f = std::max(f, v);
      if (n == 0 && coeffs[off] != 0) f = std::max(f, 0);
    }
    off += int(enumerate_inj(n, m).size());
  }
  return f;
}

// Split a realized P-sum element into per-summand word sums, re-coded to the
// codomain `target_level` (every value must fit, which the filtration bound
// guarantees).
std::vector<WordSum> split_entries(const PSum& s, int m, const std::vector<Int>& coeffs,
                                   int target_level) {
  std::vector<WordSum> out;
  int off = 0;
  for (int n : s.summands) {
    WordSum entry;
    for (const InjWord& w : enumerate_inj(n, m)) {
      const Int& c = coeffs[off + p_basis_index(w)];
      if (c != 0) entry.emplace_back(c, InjWord(w.values, target_level));
    }
    out.push_back(std::move(entry));
    off += int(enumerate_inj(n, m).size());
  }
  return out;
}

}  // namespace

GroupHom PResolution::realize(int t, int m) const {
  if (t == 0) {
    DenseMat mat(target->level(m).num_generators(), 0);
    for (size_t j = 0; j < p0.summands.size(); ++j)
      mat = mat.hstack(hom_from_P(p0.summands[j], augmentation[j]).maps[m].matrix());
    return GroupHom(FgAbGroup(mat.cols()), target->level(m), mat);
  }
  return evaluate_pmap(maps[t - 1], m);
}

PResolution start_resolution(FunctorPtr target, int search_level) {
  PResolution r;
  r.target = target;
  r.search_level = search_level;
  const int N = target->N;
  std::vector<ColimElement> chosen;
  for (int m = 0; m <= N; ++m) {
    SpanChecker span(orbit_span(*target, chosen, m), target->level(m).relations());
    const int g = target->level(m).num_generators();
    for (int gi = 0; gi < g; ++gi) {
      std::vector<Int> coeffs(g);
      coeffs[gi] = 1;
      if (target->level(m).element_is_zero(coeffs)) continue;
      if (span.contains(coeffs)) continue;
      ColimElement e(target, m, coeffs);
      int f = tamemod::exact_filtration(e);
      if (f > search_level) {
        r.complete = false;
        if (r.note.empty())
          r.note = "generator at level " + std::to_string(m) + " has filtration " +
                   std::to_string(f) + " above the search bound";
        continue;
      }
      chosen.push_back(e);
      r.p0.summands.push_back(f);
      r.augmentation.push_back(e);
      span = SpanChecker(orbit_span(*target, chosen, m), target->level(m).relations());
    }
  }
  return r;
}

PResolution extend_resolution(PResolution r, int target_degree, int search_level) {
  const int N = r.target->N;
  r.search_level = std::max(r.search_level, search_level);
  while (r.length() < target_degree) {
    const int t = r.length();
    const PSum& prev = t == 0 ? r.p0 : r.maps.back().source;
    TruncIFunctor realization = realize_psum(prev, N);
    FunctorPtr realization_ptr = std::make_shared<TruncIFunctor>(realization);

    std::vector<ColimElement> chosen;
    PSum next;
    std::vector<std::vector<WordSum>> columns;  // per chosen generator
    for (int m = 0; m <= N; ++m) {
      exactalg::KernelData kd = exactalg::hom_kernel(r.realize(t, m));
      const DenseMat& inc = kd.inclusion.matrix();
      SpanChecker span(orbit_span(realization, chosen, m), realization.level(m).relations());
      for (int j = 0; j < inc.cols(); ++j) {
        std::vector<Int> x(inc.rows());
        for (int i = 0; i < inc.rows(); ++i) x[i] = inc.at(i, j);
        if (std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; })) continue;
        if (span.contains(x)) continue;
        int f = free_filtration(prev, m, x);
        if (f > search_level) {
          r.complete = false;
          if (r.note.empty())
            r.note = "kernel generator of map " + std::to_string(t) + " at level " +
                     std::to_string(m) + " has filtration " + std::to_string(f) +
                     " above the search bound";
          continue;
        }
        chosen.emplace_back(realization_ptr, m, x);
        next.summands.push_back(f);
        columns.push_back(split_entries(prev, m, x, f));
        span = SpanChecker(orbit_span(realization, chosen, m),
                           realization.level(m).relations());
      }
    }

    PMap step;
    step.source = next;
    step.target = prev;
    step.entries.assign(prev.summands.size(), std::vector<WordSum>(next.summands.size()));
    for (size_t j = 0; j < columns.size(); ++j)
      for (size_t i = 0; i < prev.summands.size(); ++i) step.entries[i][j] = columns[j][i];
    r.maps.push_back(std::move(step));
  }
  return r;
}

}  // namespace pmod
