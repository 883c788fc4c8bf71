#pragma once

#include <utility>
#include <vector>

#include "tame/exactalg/dense.hpp"
#include "tame/ints.hpp"

namespace exactalg {

// Column-major sparse integer matrix. Bar complexes over the category I are
// huge but have only a handful of +-1 entries per column, so elimination with
// unit pivots does nearly all of the work without coefficient growth; whatever
// is left densifies into a small core for the dense Smith routine.
class SparseMat {
 public:
  SparseMat() : rows_(0) {}
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), cols_data_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void add(int r, int c, const Int& v);  // accumulate into entry (r, c)

  size_t nnz() const;
  DenseMat to_dense() const;
  static SparseMat from_dense(const DenseMat& m);
  SparseMat operator*(const SparseMat& o) const;

  const std::vector<std::pair<int, Int>>& column(int c) const { return cols_data_[c]; }

 private:
  friend struct Eliminator;
  int rows_, cols_ = 0;
  std::vector<std::vector<std::pair<int, Int>>> cols_data_;  // (row, value), unsorted
  void set_cols(int c) { cols_ = c; }
  friend SparseMat sparse_with_cols(int rows, int cols);
};

struct SparseInvariants {
  int rank = 0;
  std::vector<Int> invariants;  // all invariant factors, d1 | d2 | ...
  std::vector<Int> torsion() const {
    std::vector<Int> t;
    for (const Int& d : invariants)
      if (d > 1) t.push_back(d);
    return t;
  }
};

// Smith invariants (and rank) without transform matrices.
SparseInvariants sparse_invariants(const SparseMat& m);

int sparse_rank(const SparseMat& m);

}  // namespace exactalg
