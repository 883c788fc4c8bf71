#pragma once

#include <vector>

#include "tame/exactalg/group.hpp"
#include "tame/exactalg/sparse.hpp"

namespace exactalg {

// Bounded complex of free abelian groups, dims[p] = rank of the degree-p
// group, diffs[p] : Z^{dims[p]} -> Z^{dims[p-1]} for p = 1..D. With free chain
// groups the homology invariants need only ranks and the Smith invariants of
// the incoming differential.
struct FreeComplex {
  std::vector<int> dims;
  std::vector<SparseMat> diffs;  // index 1..dims.size()-1; diffs[0] unused

  Decomposition homology(int p) const;

  // All decompositions through p_max from one reduction of the whole complex:
  // a unit pivot in one differential is removed by chain-level elimination,
  // which Schur-complements only its own matrix while the degree above loses
  // a row and the degree below a column. Singleton pivots cascade with no
  // fill; the leftover densifies into small Smith computations.
  std::vector<Decomposition> homology_range(int p_max) const;
};

// Output of the chain-level reduction: which cells survive in each degree and
// the rank and torsion of each reduced differential. The eliminations never
// change the values of any differential above the one hosting the pivot, so a
// top differential that was too large to materialize can be supplied later,
// restricted to the surviving cells of the top degree.
struct ReducedComplex {
  std::vector<int> adim;                  // surviving cells per degree
  std::vector<std::vector<char>> alive;   // per degree, per original cell
  std::vector<int> rank;                  // rank of reduced d_q (index q >= 1)
  std::vector<std::vector<Int>> torsion;  // torsion of reduced d_q
};
ReducedComplex reduce_complex(const FreeComplex& fc);

// Bounded complex of finitely presented groups; degree 0..D.
class ChainComplex {
 public:
  ChainComplex(std::vector<FgAbGroup> groups, std::vector<GroupHom> differentials);

  int top_degree() const { return int(groups_.size()) - 1; }
  const FgAbGroup& group(int p) const { return groups_[p]; }
  const GroupHom& differential(int p) const { return diffs_[p - 1]; }  // d_p, p >= 1

  // d_p well-defined and d_{p-1} o d_p = 0 (modulo relations).
  void validate() const;

  FgAbGroup homology(int p) const;
  Decomposition homology_invariants(int p) const;

  // Quasi-isomorphic complex of free groups (one extra top degree).
  FreeComplex free_replacement() const;

 private:
  std::vector<FgAbGroup> groups_;
  std::vector<GroupHom> diffs_;
};

}  // namespace exactalg
