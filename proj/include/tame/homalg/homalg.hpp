#pragma once

#include <string>
#include <vector>

#include "tame/exactalg/complex.hpp"
#include "tame/pmod/resolution.hpp"
#include "tame/tamemod/functor.hpp"

namespace homalg {

using exactalg::DenseMat;
using exactalg::FgAbGroup;
using exactalg::GroupHom;
using exactalg::Int;
using tamemod::TruncIFunctor;

struct CoinvariantsResult {
  FgAbGroup value;                // coinvariants at the top level
  std::vector<FgAbGroup> terms;   // Z tensor_{S_n} F(n) for n = 0..N
  bool stabilized = false;        // final two induced maps are isomorphisms
};

// Z tensor over the monoid: the colimit of the levelwise symmetric-group
// coinvariants, approximated by the top term of the truncation.
CoinvariantsResult coinvariants(const TruncIFunctor& f);

struct TorResult {
  int p = 0;
  FgAbGroup value;
  std::string method;      // "bar" or "p_resolution"
  int truncation = 0;      // N
  int search_level = -1;   // L for the resolution method
  bool stabilized = false; // bar: value agrees between N-1 and N;
                           // resolution: kernel search was complete
};

// Tor by the homology of the normalized simplicial replacement over the
// truncated injection category. p_max is capped and the chain sizes guarded.
std::vector<TorResult> tor_bar(const TruncIFunctor& f, int p_max);

// Tor by applying the monoid coinvariants to a resolution by representables:
// every P_n collapses to Z and every word to its coefficient.
std::vector<TorResult> tor_pres(const pmod::PResolution& r, int p_max);

// Homology of S_n with coefficients in b, by the normalized bar complex.
std::vector<FgAbGroup> group_homology(const tamemod::SigmaModule& b, int p_max);

// Free ranks of the given Tor groups (the rationalized values).
std::vector<int> rationalize_tor(const std::vector<TorResult>& results);

// The rational collapse assertion: all positive-degree Tor ranks vanish.
bool rational_collapse_check(const std::vector<TorResult>& results);

struct CoinvKernelReport {
  bool annihilated = true;      // every kernel class dies under the factorial
  std::vector<int> kernel_levels;  // levels with a nonzero kernel
};

// The collapse mechanism on an injection of functors: at each level the
// kernel of the induced map on symmetric-group coinvariants must be
// annihilated by the group order n!.
CoinvKernelReport coinvariants_kernel_annihilated(const TruncIFunctor& sub,
                                                  const TruncIFunctor& whole,
                                                  const std::vector<GroupHom>& inclusion);

}  // namespace homalg
