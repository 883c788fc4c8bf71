#pragma once

#include <optional>

#include "tame/tamemod/functor.hpp"

namespace tamemod {

// An element of the colimit of a truncated functor, held at a representing
// level. Equality and all verdicts below are bounded by the truncation N and
// say so explicitly.
struct ColimElement {
  FunctorPtr parent;
  int level = 0;
  GroupElement value;

  ColimElement(FunctorPtr f, int level, GroupElement v);
  ColimElement(FunctorPtr f, int level, std::vector<Int> coeffs);

  // Push the representative up via iota; m must satisfy level <= m <= N.
  ColimElement pushed_to(int m) const;
  bool is_zero_up_to_truncation() const;
};

struct EqVerdict {
  bool equal = false;
  int level = 0;  // first common level where the representatives agree, or N
  std::string to_string() const;
};

// Pushes both elements to common levels and compares. "distinct" is a verdict
// up to the truncation, not a proof about the full colimit.
EqVerdict eq_up_to(const ColimElement& a, const ColimElement& b);

// The action of any monoid element restricting to f_prefix on the level of e.
ColimElement m_act(const injcat::InjWord& f_prefix, const ColimElement& e);

struct FiltrationWitness {
  int level = 0;         // level of the moved representative
  int transposition = 0; // index j of the violating s_j
};

struct FiltrationVerdict {
  bool holds = false;
  int bound = 0;  // the truncation N the answer is good up to
  std::optional<FiltrationWitness> witness;
};

// Bounded filtration test: e has filtration <= k iff every s_j with j > k
// fixes every pushed representative, equality taken in the colimit up to N.
FiltrationVerdict filtration_le(const ColimElement& e, int k);

// Smallest k with filtration_le(e, k); always <= the representing level.
int exact_filtration(const ColimElement& e);

struct SemistableWitness {
  int level = 0;
  int generator = 0;
  int transposition = 0;
};

struct SemistableVerdict {
  bool semistable = false;
  int bound = 0;
  std::optional<SemistableWitness> witness;
};

// Trivial-action test: every (s_i g - g) must die under iota within the
// truncation; a surviving difference is returned as the witness.
SemistableVerdict is_semistable_up_to(const FunctorPtr& f);

struct DSurjectiveVerdict {
  bool surjective = false;
  int bound = 0;
  std::optional<ColimElement> witness;  // an element with no visible d-preimage
};

// Bounded check that every colimit element coming from a level below N is hit
// by the action of i |-> i+1.
DSurjectiveVerdict check_d_surjective_up_to(const FunctorPtr& f);

}  // namespace tamemod
