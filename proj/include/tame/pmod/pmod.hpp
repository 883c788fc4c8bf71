#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tame/tamemod/colim.hpp"
#include "tame/tamemod/functor.hpp"

namespace pmod {

using exactalg::DenseMat;
using exactalg::FgAbGroup;
using exactalg::GroupHom;
using exactalg::Int;
using injcat::InjWord;
using tamemod::ColimElement;
using tamemod::FunctorPtr;
using tamemod::TruncIFunctor;

// The representable functor P_n: level m free on the injective words n -> m in
// lexicographic order, symmetric groups acting by postcomposition, iota by
// codomain extension.
TruncIFunctor p_functor(int n, int N, int grade = 0);

// Position of w in the lexicographic basis of P_n at level w.codomain.
int p_basis_index(const InjWord& w);

// A finite Z-linear combination of injective words with a common source size.
using WordSum = std::vector<std::pair<Int, InjWord>>;

// A direct sum P_{n_1} + ... + P_{n_r}; order is significant.
struct PSum {
  std::vector<int> summands;
  int total_rank(int m) const;  // rank of the level-m realization
};

// A map between P-sums. entries[i][j] is an element of Z[I(n_i, m_j)] and
// denotes the map P_{m_j} -> P_{n_i} sending the generator to that element,
// where n_i runs over target summands and m_j over source summands.
struct PMap {
  PSum source, target;
  std::vector<std::vector<WordSum>> entries;

  static PMap identity(const PSum& s);
  PMap compose(const PMap& inner) const;  // this o inner
};

// The level-m direct sum of free groups realizing s.
TruncIFunctor realize_psum(const PSum& s, int N);

// The level-m homomorphism realizing f between the level groups of the
// realizations of its source and target.
GroupHom evaluate_pmap(const PMap& f, int m);

// The map P_n -> W classified by a colimit element of filtration <= n:
// basis word w goes to the action of w on the element. The element must be
// representable at a level <= n (checked, lowering the representative through
// iota preimages when needed).
struct PHomData {
  int n = 0;
  ColimElement element;      // representative lowered to a level <= n
  std::vector<GroupHom> maps;  // level m realization P_n(m) -> W(m), m = 0..N
};
PHomData hom_from_P(int n, const ColimElement& e);

// Explicit levelwise isomorphism P_{1+n} = induce(P_n): the generator
// (1,...,n+1) corresponds to the unit tensor (1,...,n); the inverse sends a
// coset representative f and word (x_1..x_n) to (f(1), f(x_1+1),...,f(x_n+1)).
struct KappaData {
  FunctorPtr p;        // P_{1+n}
  FunctorPtr induced;  // induce(P_n)
  std::vector<GroupHom> forward;   // P_{1+n}(m) -> induced(m)
  std::vector<GroupHom> backward;
  bool verified = false;  // both composites are the identity at every level
};
KappaData kappa(int n, int N);

// The tower projection P_{1+n} -> P_n dropping the last coordinate, realizing
// the quotient maps of the monoid ring by the agreement ideals.
struct QuotientIn {
  PMap projection;
  std::vector<GroupHom> realized;  // levelwise
};
QuotientIn quotient_In(int n, int N);

// A finite tower a_0, ..., a_K with a_k a word sum of source size k, each
// projecting to the previous one (colimit equality on dropped coordinates).
struct ProElement {
  std::vector<WordSum> components;
  void check_compatible() const;  // throws on a broken tower
};

// Acts by the level-k component on an element with verified filtration <= k.
ColimElement act_pro_element(const ProElement& a, int k, const ColimElement& e);

// Named functor constructors usable from the command line:
// P(n), Z, zero, truncP(n,i).
TruncIFunctor builtin_functor(const std::string& name, int N);

}  // namespace pmod
