#include "tame/exactalg/complex.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace exactalg {

namespace {

// Chain-level unit-pivot reduction of a free complex. Eliminating the pivot
// (r, c) of d_q replaces d_q by its Schur complement and simply deletes row c
// from d_{q+1} and column r from d_{q-1}; the result is homotopy equivalent.
struct ComplexReducer {
  int top;
  std::vector<int> dims;
  // per differential q = 1..top: column-major entries plus row occupancy
  std::vector<std::vector<std::unordered_map<int, Int>>> col;  // col[q][c]: row -> value
  std::vector<std::vector<std::unordered_set<int>>> rowcols;   // rowcols[q][r]: columns
  std::vector<std::vector<char>> alive;                        // alive[q][cell]
  std::deque<std::tuple<int, char, int>> work;                 // (q, 'r'|'c', index)

  explicit ComplexReducer(const FreeComplex& fc) : top(int(fc.dims.size()) - 1), dims(fc.dims) {
    col.resize(top + 1);
    rowcols.resize(top + 1);
    alive.resize(top + 1);
    for (int q = 0; q <= top; ++q) alive[q].assign(dims[q], 1);
    for (int q = 1; q <= top; ++q) {
      col[q].resize(dims[q]);
      rowcols[q].resize(dims[q - 1]);
      for (int c = 0; c < dims[q]; ++c)
        for (const auto& [r, v] : fc.diffs[q].column(c)) {
          auto it = col[q][c].find(r);
          if (it == col[q][c].end()) {
            col[q][c].emplace(r, v);
            rowcols[q][r].insert(c);
          } else if ((it->second += v) == 0) {
            col[q][c].erase(it);
            rowcols[q][r].erase(c);
          }
        }
      for (int c = 0; c < dims[q]; ++c) work.emplace_back(q, 'c', c);
      for (int r = 0; r < dims[q - 1]; ++r) work.emplace_back(q, 'r', r);
    }
  }

  void delete_cell(int q, int i) {
    alive[q][i] = 0;
    if (q >= 1) {  // i is a column of d_q
      for (const auto& [r, v] : col[q][i]) {
        rowcols[q][r].erase(i);
        if (rowcols[q][r].size() == 1) work.emplace_back(q, 'r', r);
      }
      col[q][i].clear();
    }
    if (q + 1 <= top) {  // i is a row of d_{q+1}
      for (int c : rowcols[q + 1][i]) {
        col[q + 1][c].erase(i);
        if (col[q + 1][c].size() == 1) work.emplace_back(q + 1, 'c', c);
      }
      rowcols[q + 1][i].clear();
    }
  }

  long long n_elims = 0, n_updates = 0;

  void eliminate(int q, int r, int c) {
    ++n_elims;
    const Int pv = col[q][c].at(r);  // +-1
    std::vector<int> js(rowcols[q][r].begin(), rowcols[q][r].end());
    std::vector<std::pair<int, Int>> pivot_col(col[q][c].begin(), col[q][c].end());
    for (int j : js) {
      if (j == c) continue;
      Int f = col[q][j].at(r) * pv;
      for (const auto& [x, v] : pivot_col) {
        if (x == r) continue;
        ++n_updates;
        auto it = col[q][j].find(x);
        if (it == col[q][j].end()) {
          col[q][j].emplace(x, -f * v);
          rowcols[q][x].insert(j);
        } else if ((it->second -= f * v) == 0) {
          col[q][j].erase(it);
          rowcols[q][x].erase(j);
          if (rowcols[q][x].size() == 1) work.emplace_back(q, 'r', x);
        }
      }
      if (col[q][j].size() == 1) work.emplace_back(q, 'c', j);
    }
    delete_cell(q - 1, r);
    delete_cell(q, c);
  }

  // Eliminate a singleton row or column with a unit entry; no fill at all.
  bool try_free(int q, char kind, int i) {
    if (kind == 'c') {
      if (!alive[q][i] || col[q][i].size() != 1) return false;
      const auto& [r, v] = *col[q][i].begin();
      if (v != 1 && v != -1) return false;
      eliminate(q, r, i);
      return true;
    }
    if (!alive[q - 1][i] || rowcols[q][i].size() != 1) return false;
    int c = *rowcols[q][i].begin();
    const Int& v = col[q][c].at(i);
    if (v != 1 && v != -1) return false;
    eliminate(q, i, c);
    return true;
  }

  void cascade() {
    while (!work.empty()) {
      auto [q, kind, i] = work.front();
      work.pop_front();
      try_free(q, kind, i);
    }
  }

  // Cheapest remaining unit pivot anywhere in the complex, by fill estimate.
  bool best_pivot(int& bq, int& br, int& bc) const {
    size_t best = size_t(-1);
    for (int q = 1; q <= top; ++q)
      for (int c = 0; c < dims[q]; ++c) {
        if (col[q][c].empty()) continue;
        size_t cn = col[q][c].size() - 1;
        if (cn >= best) continue;
        for (const auto& [r, v] : col[q][c]) {
          if (v != 1 && v != -1) continue;
          size_t cost = cn * (rowcols[q][r].size() - 1);
          if (cost < best) {
            best = cost;
            bq = q;
            br = r;
            bc = c;
          }
        }
      }
    return best != size_t(-1);
  }

  void run() {
    for (;;) {
      cascade();
      int q, r, c;
      if (!best_pivot(q, r, c)) break;
      eliminate(q, r, c);
    }
  }

  ReducedComplex result() const {
    ReducedComplex rc;
    rc.adim.assign(top + 1, 0);
    rc.alive = alive;
    for (int q = 0; q <= top; ++q)
      for (int i = 0; i < dims[q]; ++i)
        if (alive[q][i]) ++rc.adim[q];
    if (getenv("TAME_DEBUG_REDUCER")) {
      for (int q = 0; q <= top; ++q)
        fprintf(stderr, "deg %d: %d / %d alive\n", q, rc.adim[q], dims[q]);
      long long live = 0;
      for (int q = 1; q <= top; ++q)
        for (int c = 0; c < dims[q]; ++c) live += static_cast<long long>(col[q][c].size());
      fprintf(stderr, "reducer: %lld elims, %lld updates, %lld live entries\n", n_elims,
              n_updates, live);
    }
    rc.rank.assign(top + 1, 0);
    rc.torsion.resize(top + 1);
    for (int q = 1; q <= top; ++q) {
      // empty rows and columns carry no rank or torsion; densify the rest
      std::unordered_map<int, int> rmap, cmap;
      for (int c = 0; c < dims[q]; ++c) {
        if (col[q][c].empty()) continue;
        cmap.emplace(c, int(cmap.size()));
        for (const auto& [r, v] : col[q][c]) rmap.emplace(r, int(rmap.size()));
      }
      DenseMat m(int(rmap.size()), int(cmap.size()));
      for (const auto& [c, cc] : cmap)
        for (const auto& [r, v] : col[q][c]) m.at(rmap.at(r), cc) = v;
      std::vector<Int> inv = smith_invariants(std::move(m));
      rc.rank[q] = int(inv.size());
      for (const Int& d : inv)
        if (d > 1) rc.torsion[q].push_back(d);
    }
    return rc;
  }
};

}  // namespace

ReducedComplex reduce_complex(const FreeComplex& fc) {
  ComplexReducer red(fc);
  red.run();
  return red.result();
}

Decomposition FreeComplex::homology(int p) const {
  const int top = int(dims.size()) - 1;
  if (p < 0 || p > top) throw std::out_of_range("FreeComplex::homology degree");
  int rank_out = 0;
  if (p >= 1) rank_out = sparse_rank(diffs[p]);
  Decomposition dec;
  if (p < top) {
    SparseInvariants inv = sparse_invariants(diffs[p + 1]);
    dec.free_rank = dims[p] - rank_out - inv.rank;
    dec.torsion = inv.torsion();
  } else {
    dec.free_rank = dims[p] - rank_out;
  }
  return dec;
}

std::vector<Decomposition> FreeComplex::homology_range(int p_max) const {
  const int top = int(dims.size()) - 1;
  if (p_max < 0 || p_max > top) throw std::out_of_range("FreeComplex::homology_range degree");
  ReducedComplex rc = reduce_complex(*this);
  std::vector<Decomposition> out;
  for (int p = 0; p <= p_max; ++p) {
    Decomposition dec;
    dec.free_rank = rc.adim[p] - rc.rank[p] - (p < top ? rc.rank[p + 1] : 0);
    if (p < top) dec.torsion = rc.torsion[p + 1];
    out.push_back(std::move(dec));
  }
  return out;
}

ChainComplex::ChainComplex(std::vector<FgAbGroup> groups, std::vector<GroupHom> differentials)
    : groups_(std::move(groups)), diffs_(std::move(differentials)) {
  if (groups_.empty()) throw std::invalid_argument("ChainComplex: no groups");
  if (diffs_.size() + 1 != groups_.size())
    throw std::invalid_argument("ChainComplex: need one differential per adjacent pair");
}

void ChainComplex::validate() const {
  for (size_t i = 0; i < diffs_.size(); ++i) {
    if (diffs_[i].source().num_generators() != groups_[i + 1].num_generators() ||
        diffs_[i].target().num_generators() != groups_[i].num_generators())
      throw std::invalid_argument("ChainComplex: differential shape mismatch");
    if (!diffs_[i].is_well_defined())
      throw std::invalid_argument("ChainComplex: ill-defined differential");
  }
  for (size_t i = 0; i + 1 < diffs_.size(); ++i)
    if (!diffs_[i].compose(diffs_[i + 1]).is_zero_map())
      throw std::invalid_argument("ChainComplex: d o d != 0");
}

FreeComplex ChainComplex::free_replacement() const {
  const int top = top_degree();

  // Replace Z^{g}/R in each degree by the two-stage free complex built from a
  // basis of the relation lattice, with the induced and correcting lifts. The
  // result is a free complex with one extra top degree and the same homology.
  std::vector<DenseMat> rho(top + 1);   // g_p x l_p
  std::vector<Snf> rho_snf(top + 1);
  for (int p = 0; p <= top; ++p) {
    rho[p] = column_lattice_basis(groups_[p].relations().transpose());
    rho_snf[p] = smith_normal_form(rho[p]);
  }

  auto solve_cols = [](const Snf& snf, const DenseMat& rhs, const char* what) {
    DenseMat out(snf.s.cols(), rhs.cols());
    for (int j = 0; j < rhs.cols(); ++j) {
      std::vector<Int> b(rhs.rows());
      for (int i = 0; i < rhs.rows(); ++i) b[i] = rhs.at(i, j);
      auto x = solve(snf, b);
      if (!x) throw std::logic_error(what);
      for (int i = 0; i < out.rows(); ++i) out.at(i, j) = (*x)[i];
    }
    return out;
  };

  std::vector<DenseMat> lift_s(top + 1);  // S_p : l_{p-1} x l_p, p >= 1
  for (int p = 1; p <= top; ++p)
    lift_s[p] = solve_cols(rho_snf[p - 1], diffs_[p - 1].matrix() * rho[p],
                           "free_replacement: differential not well-defined");
  std::vector<DenseMat> lift_t(top + 1);  // T_p : l_{p-2} x g_p, p >= 2
  for (int p = 2; p <= top; ++p)
    lift_t[p] = solve_cols(rho_snf[p - 2], diffs_[p - 2].matrix() * diffs_[p - 1].matrix(),
                           "free_replacement: d o d nonzero modulo relations");

  FreeComplex fc;
  fc.dims.resize(top + 2);
  for (int p = 0; p <= top + 1; ++p) {
    int g = (p <= top) ? groups_[p].num_generators() : 0;
    int l = (p >= 1) ? rho[p - 1].cols() : 0;
    fc.dims[p] = g + l;
  }
  fc.diffs.resize(top + 2);
  for (int p = 1; p <= top + 1; ++p) {
    SparseMat m(fc.dims[p - 1], fc.dims[p]);
    const int gp = (p <= top) ? groups_[p].num_generators() : 0;
    const int g_out = (p - 1 <= top) ? groups_[p - 1].num_generators() : 0;
    if (p <= top) {
      const DenseMat& d = diffs_[p - 1].matrix();
      for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
          if (d.at(i, j) != 0) m.add(i, j, d.at(i, j));
      if (p >= 2) {
        const DenseMat& t = lift_t[p];
        for (int i = 0; i < t.rows(); ++i)
          for (int j = 0; j < t.cols(); ++j)
            if (t.at(i, j) != 0) m.add(g_out + i, j, -t.at(i, j));
      }
    }
    const DenseMat& r = rho[p - 1];
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j)
        if (r.at(i, j) != 0) m.add(i, gp + j, r.at(i, j));
    if (p >= 2) {
      const DenseMat& s = lift_s[p - 1];
      for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j)
          if (s.at(i, j) != 0) m.add(g_out + i, gp + j, -s.at(i, j));
    }
    fc.diffs[p] = std::move(m);
  }
  return fc;
}

Decomposition ChainComplex::homology_invariants(int p) const {
  if (p < 0 || p > top_degree()) throw std::out_of_range("ChainComplex::homology degree");
  return free_replacement().homology(p);
}

FgAbGroup ChainComplex::homology(int p) const {
  return FgAbGroup::from_decomposition(homology_invariants(p));
}

}  // namespace exactalg
