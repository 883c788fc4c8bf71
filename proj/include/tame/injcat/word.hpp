#pragma once

#include <string>
#include <vector>

namespace injcat {

// An injective map from {1..n} to {1..m}, stored as the value list
// (x_1, ..., x_n) together with the codomain size m. The empty word with any
// codomain is valid.
struct InjWord {
  std::vector<int> values;
  int codomain = 0;

  InjWord() = default;
  InjWord(std::vector<int> vals, int m);

  int source() const { return int(values.size()); }
  int at(int i) const { return values[i - 1]; }  // 1-based application

  bool is_identity() const;
  static InjWord identity(int n);

  std::string to_string() const;            // "(3 1)@3", identity as "id@n"
  static InjWord parse(const std::string&);

  bool operator==(const InjWord& o) const = default;
  bool operator<(const InjWord& o) const;  // by source, then codomain, then values
};

// A permutation is an injective word with source == codomain.
using Perm = InjWord;

// g after f: (g o f)(i) = g(f(i)); codomain of f must equal source of g.
InjWord compose(const InjWord& g, const InjWord& f);

// Extend w to a permutation of its codomain, assigning the unused targets to
// the remaining sources in increasing order.
Perm complete_to_perm(const InjWord& w);

int sign(const Perm& p);

// All injective words n -> m in lexicographic order of their value lists.
std::vector<InjWord> enumerate_inj(int n, int m);

// A composable tuple of non-identity arrows starting at object0; p = 0 chains
// carry no arrows and just name an object.
struct Chain {
  int object0 = 0;
  std::vector<InjWord> arrows;
  int end_object() const { return arrows.empty() ? object0 : arrows.back().codomain; }
  bool operator==(const Chain& o) const = default;
};

// All p-chains of non-identity arrows among the objects 0..N.
std::vector<Chain> enumerate_chains(int N, int p);

}  // namespace injcat
