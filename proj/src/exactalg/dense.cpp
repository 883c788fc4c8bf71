#include "tame/exactalg/dense.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace exactalg {

DenseMat::DenseMat(std::initializer_list<std::initializer_list<Int>> init) {
  rows_ = int(init.size());
  cols_ = rows_ ? int(init.begin()->size()) : 0;
  a_.reserve(size_t(rows_) * cols_);
  for (const auto& row : init) {
    assert(int(row.size()) == cols_);
    for (const auto& x : row) a_.push_back(x);
  }
}

DenseMat DenseMat::identity(int n) {
  DenseMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool DenseMat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

DenseMat DenseMat::transpose() const {
  DenseMat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

DenseMat DenseMat::operator*(const DenseMat& o) const {
  assert(cols_ == o.rows_);
  DenseMat p(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const Int& x = at(r, k);
      if (x == 0) continue;
      for (int c = 0; c < o.cols_; ++c)
        if (o.at(k, c) != 0) p.at(r, c) += x * o.at(k, c);
    }
  return p;
}

DenseMat DenseMat::operator+(const DenseMat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  DenseMat p = *this;
  for (size_t i = 0; i < a_.size(); ++i) p.a_[i] += o.a_[i];
  return p;
}

DenseMat DenseMat::operator-(const DenseMat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  DenseMat p = *this;
  for (size_t i = 0; i < a_.size(); ++i) p.a_[i] -= o.a_[i];
  return p;
}

std::vector<Int> DenseMat::apply(const std::vector<Int>& v) const {
  assert(int(v.size()) == cols_);
  std::vector<Int> out(rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (at(r, c) != 0 && v[c] != 0) out[r] += at(r, c) * v[c];
  return out;
}

void DenseMat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void DenseMat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

DenseMat DenseMat::vstack(const DenseMat& o) const {
  assert(cols_ == o.cols_);
  DenseMat m(rows_ + o.rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
  for (int r = 0; r < o.rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(rows_ + r, c) = o.at(r, c);
  return m;
}

DenseMat DenseMat::hstack(const DenseMat& o) const {
  assert(rows_ == o.rows_);
  DenseMat m(rows_, cols_ + o.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
    for (int c = 0; c < o.cols_; ++c) m.at(r, cols_ + c) = o.at(r, c);
  }
  return m;
}

DenseMat DenseMat::col(int j) const {
  DenseMat m(rows_, 1);
  for (int r = 0; r < rows_; ++r) m.at(r, 0) = at(r, j);
  return m;
}

namespace {

// Elementary operations applied consistently to S and the four transforms.
struct SnfWork {
  DenseMat& s;
  DenseMat& u;
  DenseMat& v;
  DenseMat& uinv;
  DenseMat& vinv;

  void swap_rows(int i, int j) {
    if (i == j) return;
    s.swap_rows(i, j);
    u.swap_rows(i, j);
    uinv.swap_cols(i, j);
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    s.swap_cols(i, j);
    v.swap_cols(i, j);
    vinv.swap_rows(i, j);
  }
  // row i += q * row j
  void add_row(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < s.cols(); ++c) s.at(i, c) += q * s.at(j, c);
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) += q * u.at(j, c);
    for (int r = 0; r < uinv.rows(); ++r) uinv.at(r, j) -= q * uinv.at(r, i);
  }
  // col i += q * col j
  void add_col(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < s.rows(); ++r) s.at(r, i) += q * s.at(r, j);
    for (int r = 0; r < v.rows(); ++r) v.at(r, i) += q * v.at(r, j);
    for (int c = 0; c < vinv.cols(); ++c) vinv.at(j, c) -= q * vinv.at(i, c);
  }
  void negate_row(int i) {
    for (int c = 0; c < s.cols(); ++c) s.at(i, c) = -s.at(i, c);
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
    for (int r = 0; r < uinv.rows(); ++r) uinv.at(r, i) = -uinv.at(r, i);
  }
};

// quotient with symmetric remainder, |a - q*b| <= |b|/2; keeps entries small
Int rounddiv(const Int& a, const Int& b) {
  Int q = a / b, r = a - q * b;
  if (2 * abs(r) > abs(b)) q += ((r < 0) != (b < 0)) ? -1 : 1;
  return q;
}

}  // namespace

Snf smith_normal_form(const DenseMat& a) {
  const int r = a.rows(), c = a.cols();
  Snf out;
  out.s = a;
  out.u = DenseMat::identity(r);
  out.uinv = DenseMat::identity(r);
  out.v = DenseMat::identity(c);
  out.vinv = DenseMat::identity(c);
  SnfWork w{out.s, out.u, out.v, out.uinv, out.vinv};
  DenseMat& s = out.s;

  const int mn = std::min(r, c);
  int t = 0;
  while (t < mn) {
    bool empty = false;
    for (;;) {
      // pivot: nonzero entry of smallest magnitude in the trailing submatrix,
      // re-picked after every pass so remainders become the next pivot
      int pi = -1, pj = -1;
      for (int i = t; i < r; ++i)
        for (int j = t; j < c; ++j) {
          const Int& x = s.at(i, j);
          if (x == 0) continue;
          if (pi < 0 || abs(x) < abs(s.at(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        empty = true;
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (s.at(i, t) == 0) continue;
        w.add_row(i, t, -rounddiv(s.at(i, t), s.at(t, t)));
        if (s.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < c; ++j) {
        if (s.at(t, j) == 0) continue;
        w.add_col(j, t, -rounddiv(s.at(t, j), s.at(t, t)));
        if (s.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the whole trailing submatrix
      bool fixed = false;
      for (int i = t + 1; i < r && !fixed; ++i)
        for (int j = t + 1; j < c && !fixed; ++j)
          if (s.at(i, j) % s.at(t, t) != 0) {
            w.add_row(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (empty) break;
    if (s.at(t, t) < 0) w.negate_row(t);
    ++t;
  }
  out.rank = t;
  for (int i = 0; i < t; ++i) out.invariants.push_back(s.at(i, i));
  return out;
}

std::vector<Int> smith_invariants(DenseMat s) {
  const int r = s.rows(), c = s.cols();
  const int mn = std::min(r, c);
  std::vector<Int> inv;
  int t = 0;
  while (t < mn) {
    bool empty = false;
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = t; i < r; ++i)
        for (int j = t; j < c; ++j) {
          const Int& x = s.at(i, j);
          if (x == 0) continue;
          if (pi < 0 || abs(x) < abs(s.at(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        empty = true;
        break;
      }
      s.swap_rows(t, pi);
      s.swap_cols(t, pj);

      bool clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (s.at(i, t) == 0) continue;
        Int q = -rounddiv(s.at(i, t), s.at(t, t));
        for (int j = t; j < c; ++j) s.at(i, j) += q * s.at(t, j);
        if (s.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < c; ++j) {
        if (s.at(t, j) == 0) continue;
        Int q = -rounddiv(s.at(t, j), s.at(t, t));
        for (int i = t; i < r; ++i) s.at(i, j) += q * s.at(i, t);
        if (s.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool fixed = false;
      for (int i = t + 1; i < r && !fixed; ++i)
        for (int j = t + 1; j < c && !fixed; ++j)
          if (s.at(i, j) % s.at(t, t) != 0) {
            for (int jj = t; jj < c; ++jj) s.at(t, jj) += s.at(i, jj);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (empty) break;
    inv.push_back(abs(s.at(t, t)));
    ++t;
  }
  return inv;
}

DenseMat kernel_basis(const Snf& snf) {
  const int c = snf.s.cols();
  const int k = c - snf.rank;
  DenseMat ker(c, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < c; ++i) ker.at(i, j) = snf.v.at(i, snf.rank + j);
  return ker;
}

DenseMat kernel_basis(const DenseMat& a) { return kernel_basis(smith_normal_form(a)); }

DenseMat column_lattice_basis(const DenseMat& a) {
  Snf snf = smith_normal_form(a);
  // A V = Uinv S, so the nonzero columns of Uinv S span the column lattice.
  DenseMat b(a.rows(), snf.rank);
  for (int j = 0; j < snf.rank; ++j)
    for (int i = 0; i < a.rows(); ++i) b.at(i, j) = snf.uinv.at(i, j) * snf.s.at(j, j);
  return b;
}

std::optional<std::vector<Int>> solve(const Snf& snf, const std::vector<Int>& b) {
  const int r = snf.s.rows(), c = snf.s.cols();
  assert(int(b.size()) == r);
  std::vector<Int> ub = snf.u.apply(b);
  std::vector<Int> y(c);
  for (int i = 0; i < r; ++i) {
    if (i < snf.rank) {
      if (ub[i] % snf.s.at(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / snf.s.at(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.v.apply(y);
}

std::optional<std::vector<Int>> solve(const DenseMat& a, const std::vector<Int>& b) {
  return solve(smith_normal_form(a), b);
}

bool in_column_lattice(const Snf& snf, const std::vector<Int>& b) {
  return solve(snf, b).has_value();
}

bool same_column_lattice(const DenseMat& a, const DenseMat& b) {
  if (a.rows() != b.rows()) return false;
  Snf sa = smith_normal_form(a), sb = smith_normal_form(b);
  for (int j = 0; j < b.cols(); ++j) {
    std::vector<Int> col(b.rows());
    for (int i = 0; i < b.rows(); ++i) col[i] = b.at(i, j);
    if (!in_column_lattice(sa, col)) return false;
  }
  for (int j = 0; j < a.cols(); ++j) {
    std::vector<Int> col(a.rows());
    for (int i = 0; i < a.rows(); ++i) col[i] = a.at(i, j);
    if (!in_column_lattice(sb, col)) return false;
  }
  return true;
}

Int abs_det(const DenseMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("abs_det: matrix not square");
  Snf snf = smith_normal_form(a);
  if (snf.rank < a.rows()) return 0;
  Int d = 1;
  for (const Int& x : snf.invariants) d *= x;
  return d;
}

}  // namespace exactalg
