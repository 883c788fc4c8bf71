#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tame/exactalg/dense.hpp"
#include "tame/ints.hpp"

namespace exactalg {

// Free rank and torsion coefficients d1 | d2 | ..., each di >= 2.
struct Decomposition {
  int free_rank = 0;
  std::vector<Int> torsion;
  bool operator==(const Decomposition&) const = default;
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
};

// A finitely generated abelian group given by a presentation matrix:
// Z^{num_generators} modulo the row span of `relations`. Immutable after
// construction; the Smith form of the relations is computed once on demand.
class FgAbGroup {
 public:
  FgAbGroup() : FgAbGroup(0) {}
  explicit FgAbGroup(int num_generators)
      : FgAbGroup(num_generators, DenseMat(0, num_generators)) {}
  FgAbGroup(int num_generators, DenseMat relations);

  static FgAbGroup free_group(int rank) { return FgAbGroup(rank); }
  static FgAbGroup cyclic(const Int& n);  // Z/n, or Z when n = 0
  static FgAbGroup from_decomposition(const Decomposition& d);

  int num_generators() const { return gens_; }
  const DenseMat& relations() const { return rels_; }

  const Decomposition& decompose() const;
  bool is_trivial() const;

  // x == y in the group, i.e. x - y lies in the row span of the relations.
  bool elements_equal(const std::vector<Int>& x, const std::vector<Int>& y) const;
  bool element_is_zero(const std::vector<Int>& x) const;

  // Annihilator check: n * x == 0.
  bool element_killed_by(const std::vector<Int>& x, const Int& n) const;

 private:
  int gens_;
  DenseMat rels_;
  struct Cache;
  std::shared_ptr<Cache> cache_;  // write-once, shared across copies
  const Snf& rel_snf() const;     // Smith form of relations^T (column lattice view)
};

// An element of an ambient FgAbGroup, as a generator-coefficient vector.
struct GroupElement {
  FgAbGroup group;
  std::vector<Int> coeffs;

  GroupElement(FgAbGroup g, std::vector<Int> c) : group(std::move(g)), coeffs(std::move(c)) {}
  bool is_zero() const { return group.element_is_zero(coeffs); }
  bool operator==(const GroupElement& o) const {
    return group.elements_equal(coeffs, o.coeffs);
  }
  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
};

// Homomorphism given by a matrix on generators (columns = source generators).
class GroupHom {
 public:
  GroupHom(FgAbGroup source, FgAbGroup target, DenseMat matrix);

  static GroupHom zero(const FgAbGroup& source, const FgAbGroup& target);
  static GroupHom identity(const FgAbGroup& g);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const DenseMat& matrix() const { return matrix_; }

  // Every source relation must land in the row span of the target relations.
  bool is_well_defined() const;

  GroupElement apply(const GroupElement& x) const;
  GroupHom compose(const GroupHom& inner) const;  // this o inner

  bool equals(const GroupHom& o) const;  // equality modulo target relations
  bool is_zero_map() const;
  bool is_isomorphism() const;

 private:
  FgAbGroup source_, target_;
  DenseMat matrix_;
};

// Kernel of f: a finitely presented group K plus an injective inclusion into
// the source with image exactly {x : f(x) = 0}.
struct KernelData {
  FgAbGroup kernel;
  GroupHom inclusion;
};
KernelData hom_kernel(const GroupHom& f);

FgAbGroup hom_cokernel(const GroupHom& f);

// Z^k modulo both the target relations and the image; used for coinvariants.
FgAbGroup quotient_by_columns(const FgAbGroup& g, const DenseMat& extra_relation_cols);

}  // namespace exactalg
