#include "tame/exactalg/group.hpp"

#include <sstream>
#include <stdexcept>

namespace exactalg {

std::string Decomposition::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    if (free_rank == 1)
      os << "Z";
    else
      os << "Z^" << free_rank;
    first = false;
  }
  for (const Int& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

struct FgAbGroup::Cache {
  Snf rel_t_snf;       // Smith form of relations^T: membership in the row span
  Decomposition dec;   // from the Smith form of the relation matrix itself
};

FgAbGroup::FgAbGroup(int num_generators, DenseMat relations)
    : gens_(num_generators), rels_(std::move(relations)) {
  if (rels_.cols() != gens_)
    throw std::invalid_argument("FgAbGroup: relation matrix must have one column per generator");
  auto cache = std::make_shared<Cache>();
  cache->rel_t_snf = smith_normal_form(rels_.transpose());
  Snf rel_snf = smith_normal_form(rels_);
  cache->dec.free_rank = gens_ - rel_snf.rank;
  for (const Int& d : rel_snf.invariants)
    if (d > 1) cache->dec.torsion.push_back(d);
  cache_ = std::move(cache);
}

FgAbGroup FgAbGroup::cyclic(const Int& n) {
  if (n == 0) return FgAbGroup(1);
  DenseMat rel(1, 1);
  rel.at(0, 0) = n;
  return FgAbGroup(1, rel);
}

FgAbGroup FgAbGroup::from_decomposition(const Decomposition& d) {
  int n = d.free_rank + int(d.torsion.size());
  DenseMat rel(int(d.torsion.size()), n);
  for (int i = 0; i < int(d.torsion.size()); ++i) rel.at(i, d.free_rank + i) = d.torsion[i];
  return FgAbGroup(n, rel);
}

const Decomposition& FgAbGroup::decompose() const { return cache_->dec; }

bool FgAbGroup::is_trivial() const { return decompose().is_trivial(); }

const Snf& FgAbGroup::rel_snf() const { return cache_->rel_t_snf; }

bool FgAbGroup::elements_equal(const std::vector<Int>& x, const std::vector<Int>& y) const {
  if (int(x.size()) != gens_ || int(y.size()) != gens_)
    throw std::invalid_argument("FgAbGroup::elements_equal: wrong coefficient length");
  std::vector<Int> diff(gens_);
  for (int i = 0; i < gens_; ++i) diff[i] = x[i] - y[i];
  return in_column_lattice(rel_snf(), diff);
}

bool FgAbGroup::element_is_zero(const std::vector<Int>& x) const {
  return elements_equal(x, std::vector<Int>(gens_));
}

bool FgAbGroup::element_killed_by(const std::vector<Int>& x, const Int& n) const {
  std::vector<Int> nx(gens_);
  for (int i = 0; i < gens_; ++i) nx[i] = n * x[i];
  return element_is_zero(nx);
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  GroupElement r = *this;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
  return r;
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  GroupElement r = *this;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= o.coeffs[i];
  return r;
}

GroupHom::GroupHom(FgAbGroup source, FgAbGroup target, DenseMat matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.cols() != source_.num_generators() || matrix_.rows() != target_.num_generators())
    throw std::invalid_argument("GroupHom: matrix shape does not match source/target");
}

GroupHom GroupHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return GroupHom(source, target, DenseMat(target.num_generators(), source.num_generators()));
}

GroupHom GroupHom::identity(const FgAbGroup& g) {
  return GroupHom(g, g, DenseMat::identity(g.num_generators()));
}

bool GroupHom::is_well_defined() const {
  const DenseMat& rs = source_.relations();
  for (int i = 0; i < rs.rows(); ++i) {
    std::vector<Int> rel(rs.cols());
    for (int j = 0; j < rs.cols(); ++j) rel[j] = rs.at(i, j);
    if (!target_.element_is_zero(matrix_.apply(rel))) return false;
  }
  return true;
}

GroupElement GroupHom::apply(const GroupElement& x) const {
  return GroupElement(target_, matrix_.apply(x.coeffs));
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
  return GroupHom(inner.source_, target_, matrix_ * inner.matrix_);
}

bool GroupHom::equals(const GroupHom& o) const {
  if (matrix_.rows() != o.matrix_.rows() || matrix_.cols() != o.matrix_.cols()) return false;
  for (int j = 0; j < matrix_.cols(); ++j) {
    std::vector<Int> a(matrix_.rows()), b(matrix_.rows());
    for (int i = 0; i < matrix_.rows(); ++i) {
      a[i] = matrix_.at(i, j);
      b[i] = o.matrix_.at(i, j);
    }
    if (!target_.elements_equal(a, b)) return false;
  }
  return true;
}

bool GroupHom::is_zero_map() const { return equals(zero(source_, target_)); }

bool GroupHom::is_isomorphism() const {
  return hom_kernel(*this).kernel.is_trivial() && hom_cokernel(*this).is_trivial();
}

KernelData hom_kernel(const GroupHom& f) {
  if (!f.is_well_defined()) throw std::invalid_argument("hom_kernel: ill-defined homomorphism");
  const DenseMat& a = f.matrix();
  const DenseMat rt_t = f.target().relations().transpose();
  const DenseMat rs_t = f.source().relations().transpose();
  const int s = a.cols();

  // {(x, y) : A x = Rt^T y}  ->  project to x
  DenseMat stacked = a.hstack(rt_t);
  for (int r = 0; r < stacked.rows(); ++r)
    for (int c = a.cols(); c < stacked.cols(); ++c) stacked.at(r, c) = -stacked.at(r, c);
  DenseMat ker = kernel_basis(stacked);
  DenseMat proj(s, ker.cols());
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < ker.cols(); ++j) proj.at(i, j) = ker.at(i, j);
  DenseMat kgen = column_lattice_basis(proj);

  // relations of the kernel: combinations of the kgen columns that die in the source
  DenseMat stacked2 = kgen.hstack(rs_t);
  for (int r = 0; r < stacked2.rows(); ++r)
    for (int c = kgen.cols(); c < stacked2.cols(); ++c) stacked2.at(r, c) = -stacked2.at(r, c);
  DenseMat ker2 = kernel_basis(stacked2);
  DenseMat rels(ker2.cols(), kgen.cols());
  for (int i = 0; i < ker2.cols(); ++i)
    for (int j = 0; j < kgen.cols(); ++j) rels.at(i, j) = ker2.at(j, i);

  FgAbGroup k(kgen.cols(), rels);
  return KernelData{k, GroupHom(k, f.source(), kgen)};
}

FgAbGroup hom_cokernel(const GroupHom& f) {
  return quotient_by_columns(f.target(), f.matrix());
}

FgAbGroup quotient_by_columns(const FgAbGroup& g, const DenseMat& extra_relation_cols) {
  return FgAbGroup(g.num_generators(), g.relations().vstack(extra_relation_cols.transpose()));
}

}  // namespace exactalg
