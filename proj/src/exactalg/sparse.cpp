#include "tame/exactalg/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace exactalg {

void SparseMat::add(int r, int c, const Int& v) {
  if (v == 0) return;
  if (c >= cols_ || r >= rows_) throw std::out_of_range("SparseMat::add");
  cols_data_[c].emplace_back(r, v);
}

size_t SparseMat::nnz() const {
  size_t n = 0;
  for (const auto& col : cols_data_) n += col.size();
  return n;
}

DenseMat SparseMat::to_dense() const {
  DenseMat m(rows_, cols_);
  for (int c = 0; c < int(cols_data_.size()); ++c)
    for (const auto& [r, v] : cols_data_[c]) m.at(r, c) += v;
  return m;
}

SparseMat SparseMat::from_dense(const DenseMat& d) {
  SparseMat m(d.rows(), d.cols());
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < d.cols(); ++c)
      if (d.at(r, c) != 0) m.add(r, c, d.at(r, c));
  return m;
}

SparseMat SparseMat::operator*(const SparseMat& o) const {
  if (cols_ != o.rows()) throw std::invalid_argument("SparseMat product shape");
  SparseMat p(rows_, o.cols());
  for (int c = 0; c < int(o.cols_data_.size()); ++c) {
    std::unordered_map<int, Int> acc;
    for (const auto& [k, v] : o.cols_data_[c]) {
      if (k >= int(cols_data_.size())) continue;
      for (const auto& [r, w] : cols_data_[k]) acc[r] += v * w;
    }
    for (auto& [r, v] : acc) p.add(r, c, v);
  }
  return p;
}

namespace {

struct Eliminator {
  int nrows, ncols;
  std::vector<std::unordered_map<int, Int>> row;  // row -> (col -> value)
  std::vector<std::unordered_set<int>> colrows;   // col -> rows with a nonzero
  std::vector<char> row_alive, col_alive;
  int unit_pivots = 0;

  explicit Eliminator(const SparseMat& m)
      : nrows(m.rows()),
        ncols(m.cols()),
        row(nrows),
        colrows(ncols),
        row_alive(nrows, 1),
        col_alive(ncols, 1) {
    for (int c = 0; c < ncols; ++c)
      for (const auto& [r, v] : m.column(c)) {
        auto it = row[r].find(c);
        if (it == row[r].end()) {
          row[r].emplace(c, v);
          colrows[c].insert(r);
        } else {
          it->second += v;
          if (it->second == 0) {
            row[r].erase(it);
            colrows[c].erase(r);
          }
        }
      }
  }

  void eliminate_unit(int pr, int pc) {
    const Int pv = row[pr][pc];  // +-1
    std::vector<int> victims(colrows[pc].begin(), colrows[pc].end());
    for (int r2 : victims) {
      if (r2 == pr) continue;
      Int factor = row[r2][pc] * pv;  // row[r2][pc] / pv
      for (const auto& [c2, x] : row[pr]) {
        auto it = row[r2].find(c2);
        if (it == row[r2].end()) {
          row[r2].emplace(c2, -factor * x);
          colrows[c2].insert(r2);
        } else {
          it->second -= factor * x;
          if (it->second == 0) {
            row[r2].erase(it);
            colrows[c2].erase(r2);
          }
        }
      }
    }
    // clearing the pivot row by column operations touches only the pivot row
    for (const auto& [c2, x] : row[pr]) colrows[c2].erase(pr);
    row[pr].clear();
    row_alive[pr] = 0;
    col_alive[pc] = 0;
    ++unit_pivots;
  }

  // Pick a +-1 pivot with a cheap Markowitz-style heuristic; -1 if none left.
  std::pair<int, int> find_unit_pivot() {
    int best_r = -1, best_c = -1;
    size_t best_cost = size_t(-1);
    for (int r = 0; r < nrows; ++r) {
      if (!row_alive[r] || row[r].empty()) continue;
      size_t rn = row[r].size() - 1;
      if (rn >= best_cost) continue;  // even the best column cannot beat this
      for (const auto& [c, v] : row[r]) {
        if (v != 1 && v != -1) continue;
        size_t cost = rn * (colrows[c].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_r = r;
          best_c = c;
          if (cost == 0) return {best_r, best_c};
        }
      }
    }
    return {best_r, best_c};
  }

  void run() {
    for (;;) {
      auto [r, c] = find_unit_pivot();
      if (r < 0) break;
      eliminate_unit(r, c);
    }
  }

  DenseMat remainder() const {
    std::vector<int> rmap, cmap(ncols, -1);
    for (int r = 0; r < nrows; ++r)
      if (row_alive[r] && !row[r].empty()) rmap.push_back(r);
    int cc = 0;
    for (int c = 0; c < ncols; ++c)
      if (col_alive[c] && !colrows[c].empty()) cmap[c] = cc++;
    DenseMat d(int(rmap.size()), cc);
    for (int i = 0; i < int(rmap.size()); ++i)
      for (const auto& [c, v] : row[rmap[i]])
        if (cmap[c] >= 0) d.at(i, cmap[c]) = v;
    return d;
  }
};

}  // namespace

SparseInvariants sparse_invariants(const SparseMat& m) {
  Eliminator e(m);
  e.run();
  DenseMat rest = e.remainder();
  Snf snf = smith_normal_form(rest);
  SparseInvariants out;
  out.rank = e.unit_pivots + snf.rank;
  out.invariants.assign(e.unit_pivots, Int(1));
  out.invariants.insert(out.invariants.end(), snf.invariants.begin(), snf.invariants.end());
  return out;
}

int sparse_rank(const SparseMat& m) { return sparse_invariants(m).rank; }

}  // namespace exactalg
