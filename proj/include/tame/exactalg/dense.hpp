#pragma once

#include <cassert>
#include <initializer_list>
#include <optional>
#include <vector>

#include "tame/ints.hpp"

namespace exactalg {

// Row-major dense integer matrix. Zero-size dimensions are legal.
class DenseMat {
 public:
  DenseMat() : rows_(0), cols_(0) {}
  DenseMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  DenseMat(std::initializer_list<std::initializer_list<Int>> init);

  static DenseMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  bool operator==(const DenseMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero() const;
  DenseMat transpose() const;
  DenseMat operator*(const DenseMat& o) const;
  DenseMat operator+(const DenseMat& o) const;
  DenseMat operator-(const DenseMat& o) const;

  std::vector<Int> apply(const std::vector<Int>& v) const;  // matrix * column vector

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);

  // Stack o below this (same column count).
  DenseMat vstack(const DenseMat& o) const;
  // Put o to the right of this (same row count).
  DenseMat hstack(const DenseMat& o) const;
  DenseMat col(int j) const;

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

// U * A * V = S with S diagonal, d1 | d2 | ..., U, V unimodular.
// Uinv and Vinv are maintained alongside so lattice bases come out for free.
struct Snf {
  DenseMat s, u, v, uinv, vinv;
  int rank = 0;
  std::vector<Int> invariants;  // the nonzero diagonal entries, d1 | d2 | ...
};

Snf smith_normal_form(const DenseMat& a);

// Invariant factors only, without the transform matrices; the memory stays
// linear in the input, which matters for very wide reduction remainders.
std::vector<Int> smith_invariants(DenseMat a);

// Columns generate the kernel lattice {x : A x = 0}. Needs only V.
DenseMat kernel_basis(const DenseMat& a);
DenseMat kernel_basis(const Snf& snf);

// Columns form a basis of the lattice spanned by the columns of A.
DenseMat column_lattice_basis(const DenseMat& a);

// Solve A x = b over the integers; nullopt if unsolvable.
std::optional<std::vector<Int>> solve(const Snf& snf, const std::vector<Int>& b);
std::optional<std::vector<Int>> solve(const DenseMat& a, const std::vector<Int>& b);

// Membership of b in the column lattice of A.
bool in_column_lattice(const Snf& snf, const std::vector<Int>& b);

// Column lattices span the same subgroup of Z^rows.
bool same_column_lattice(const DenseMat& a, const DenseMat& b);

// |det| for a square matrix (product of Smith invariants).
Int abs_det(const DenseMat& a);

}  // namespace exactalg
