#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tame/exactalg/group.hpp"
#include "tame/injcat/word.hpp"

namespace tamemod {

using exactalg::DenseMat;
using exactalg::FgAbGroup;
using exactalg::GroupElement;
using exactalg::GroupHom;
using exactalg::Int;

struct ValidationReport {
  bool ok = true;
  std::string message;  // first violated relation, with level and indices
};

// A functor on the injections between {1..0}, ..., {1..N} into abelian groups,
// given by its level groups, the adjacent transpositions of each symmetric
// group, and the stabilization maps F(n) -> F(n+1). This is the concrete
// finite presentation of a tame module over the injection monoid.
class TruncIFunctor {
 public:
  int N = 0;
  int grade = 0;
  std::vector<FgAbGroup> levels;                     // 0..N
  std::map<std::pair<int, int>, GroupHom> transpositions;  // (n, i) -> s_i on F(n)
  std::vector<GroupHom> stab;                        // iota: F(n) -> F(n+1), n < N

  const FgAbGroup& level(int n) const { return levels.at(n); }
  const GroupHom& s(int n, int i) const { return transpositions.at({n, i}); }
  const GroupHom& iota(int n) const { return stab.at(n); }

  // Checks involution/braid, equivariance of iota, and the added-coordinate
  // relation; every other operation assumes a passing report.
  ValidationReport validate() const;

  // The action of a full permutation at one level, derived from the adjacent
  // transpositions by word decomposition; memoized per (level, permutation).
  GroupHom perm_action(int n, const injcat::Perm& g) const;

  // alpha_* for an injection into a level <= N: stabilize, then permute by the
  // canonical completion. Well-defined on validated functors.
  GroupElement act(const injcat::InjWord& alpha, const GroupElement& x) const;
  DenseMat act_matrix(const injcat::InjWord& alpha) const;

 private:
  struct Memo {
    std::map<std::pair<int, std::vector<int>>, DenseMat> perm;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();  // write-once cache
};

using FunctorPtr = std::shared_ptr<const TruncIFunctor>;

// Constant functor with value A and identity structure maps.
TruncIFunctor constant_functor(const FgAbGroup& a, int N, int grade = 0);
TruncIFunctor zero_functor(int N, int grade = 0);

// Levelwise direct sum; both arguments must share one truncation level.
TruncIFunctor direct_sum(const TruncIFunctor& f, const TruncIFunctor& g);

// Zero out all levels above i, with zero structure maps into them.
TruncIFunctor truncate_above(const TruncIFunctor& f, int i);

// Algebraic shift: result(n) = F(1+n), the symmetric group acting through
// 1 x -, truncation dropping to N-1.
TruncIFunctor shift(const TruncIFunctor& f);

// Induction: result(0) = 0, result(1+n) = Z[S_{1+n}] tensored over S_n with
// F(n), copies indexed by the cosets picking the image of 1.
TruncIFunctor induce(const TruncIFunctor& f);

// Levelwise kernel of a family of maps F(n) -> G(n) commuting with all
// structure maps, with the induced functor structure. Returns the kernel
// functor and the levelwise inclusions into F.
struct KernelFunctor {
  TruncIFunctor kernel;
  std::vector<GroupHom> inclusion;
};
KernelFunctor kernel_functor(const TruncIFunctor& f, const TruncIFunctor& g,
                             const std::vector<GroupHom>& maps);

// A finitely presented abelian group with an action of S_n, given on the
// adjacent transpositions.
struct SigmaModule {
  int n = 0;
  FgAbGroup group;
  std::vector<GroupHom> transpositions;  // s_1 .. s_{n-1}

  ValidationReport validate() const;
  GroupHom action(const injcat::Perm& g, bool sign_twist) const;
};

// P_n tensored over S_n with B: level m is Z[I(n,m)] tensored over S_n with B,
// copies indexed by increasing words, symmetric groups acting by
// postcomposition. sign_twist multiplies the S_n-action on B by the sign.
TruncIFunctor tensor_sigma(const SigmaModule& b, int N, bool sign_twist, int grade = 0);

// The k-fold shift together with the transition maps given by the action of
// i |-> i+1: at matched levels F(m) -> F(m+1), x |-> (2,...,m+1)_* x.
struct DStage {
  TruncIFunctor stage;               // the k-fold shift
  std::vector<GroupHom> transition;  // from the (k-1)-fold shift, levels 0..N-k
};
DStage d_stage(const TruncIFunctor& f, int k);

}  // namespace tamemod
