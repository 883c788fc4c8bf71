#pragma once

#include "tame/pmod/pmod.hpp"

namespace pmod {

// A partial resolution ... -> P_1 -> P_0 -> W by direct sums of P_n's.
// Kernel generators are searched up to filtration search_level; `complete`
// records whether the searched generators span every levelwise kernel within
// the truncation, and `note` names the first flagged spot otherwise.
struct PResolution {
  FunctorPtr target;
  PSum p0;
  std::vector<ColimElement> augmentation;  // one element of W per summand of p0
  std::vector<PMap> maps;                  // maps[t] : P_{t+1} -> P_t
  int search_level = 0;
  bool complete = true;
  std::string note;

  int length() const { return int(maps.size()); }
  // Level-m realization of the map out of P_t (the augmentation for t = 0).
  GroupHom realize(int t, int m) const;
};

// Find generators of W itself (degree 0 of the resolution).
PResolution start_resolution(FunctorPtr target, int search_level);

// Extend with kernel generators until the resolution reaches target_degree.
PResolution extend_resolution(PResolution r, int target_degree, int search_level);

}  // namespace pmod
