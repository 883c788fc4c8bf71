#pragma once

#include <map>
#include <string>
#include <vector>

#include "tame/homalg/homalg.hpp"
#include "tame/tamemod/functor.hpp"

namespace specseq {

using exactalg::Decomposition;
using exactalg::FgAbGroup;
using tamemod::FunctorPtr;
using tamemod::SigmaModule;
using tamemod::TruncIFunctor;

// Stable stems used as coefficient input. The table is data, never computed
// here; the built-in values cover q = 0..7.
struct StemsTable {
  std::map<int, Decomposition> groups;  // q -> pi_q

  static StemsTable builtin();
  static StemsTable load(const std::string& path);  // JSON {"q": {...}}

  bool has(int q) const { return groups.count(q) > 0; }
  FgAbGroup at(int q) const;  // throws on a missing degree

  // Suspension: the table of an n-sphere from the table of the zero-sphere.
  StemsTable shifted(int by) const;
};

// Homotopy of a spectrum as one tame module per degree.
struct GradedTameModule {
  int k_min = 0;
  std::vector<FunctorPtr> degrees;  // degree k_min + i

  int k_max() const { return k_min + int(degrees.size()) - 1; }
  const FunctorPtr& at(int k) const { return degrees.at(size_t(k - k_min)); }
};

// Levelwise tensor of a functor with a fixed coefficient group; the structure
// maps act on the left factor only.
TruncIFunctor tensor_with_group(const TruncIFunctor& f, const FgAbGroup& a);

// Degree k of a free spectrum on an n-sphere-like cell: P_n tensored with the
// stem in degree k + n. The monoid acts only through P_n.
GradedTameModule free_homotopy(int n, const StemsTable& stems, int k_min, int k_max,
                               int N);

// Degree k of a semifree spectrum: P_n tensored over Sigma_n with the given
// coefficient module in degree k + n, sign-twisted or not.
GradedTameModule semifree_homotopy(int n, const std::vector<SigmaModule>& coeffs,
                                   int k_min, bool sign_twist, int N);

// The stem in degree q with all of Sigma_n acting trivially, or with every
// transposition acting by -1.
SigmaModule stem_sigma_module(int n, const StemsTable& stems, int q, bool sign_action);

struct E2Cell {
  FgAbGroup value;
  std::string method;       // "bar", "p_resolution", or "both"
  bool stabilized = false;
  bool agree = true;        // dual-method cells record the comparison
};

// The E2 window of the detection spectral sequence for the given homotopy:
// cell (p, q) is the p-th derived coinvariants of degree q. Differentials are
// metadata only and the abutment is reported as a disclaimer, never computed.
struct E2Page {
  int p_max = 0;
  int q_min = 0;
  std::vector<std::vector<E2Cell>> rows;  // rows[q - q_min][p]
  std::vector<FgAbGroup> edge;            // coinvariants per degree, the p = 0 column
  int truncation = 0;
  int search_level = -1;

  int q_max() const { return q_min + int(rows.size()) - 1; }
  const E2Cell& cell(int p, int q) const { return rows.at(size_t(q - q_min)).at(size_t(p)); }

  std::string render_text() const;
  std::string render_json() const;
};

// method: "bar", "pres", or "both"; search_level feeds the resolution engine.
E2Page assemble_e2(const GradedTameModule& g, int p_max, const std::string& method,
                   int search_level);

}  // namespace specseq
