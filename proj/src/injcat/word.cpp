#include "tame/injcat/word.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace injcat {

InjWord::InjWord(std::vector<int> vals, int m) : values(std::move(vals)), codomain(m) {
  std::vector<char> seen(m + 1, 0);
  for (int x : values) {
    if (x < 1 || x > m || seen[x]) throw std::invalid_argument("InjWord: not injective into 1.." + std::to_string(m));
    seen[x] = 1;
  }
}

bool InjWord::is_identity() const {
  if (codomain != source()) return false;
  for (int i = 0; i < codomain; ++i)
    if (values[i] != i + 1) return false;
  return true;
}

InjWord InjWord::identity(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return InjWord(std::move(v), n);
}

std::string InjWord::to_string() const {
  if (is_identity()) return "id@" + std::to_string(codomain);
  std::ostringstream out;
  out << '(';
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out << ' ';
    out << values[i];
  }
  out << ")@" << codomain;
  return out.str();
}

InjWord InjWord::parse(const std::string& text) {
  const auto bad = [&] { return std::invalid_argument("InjWord: cannot parse '" + text + "'"); };
  size_t at = text.rfind('@');
  if (at == std::string::npos) throw bad();
  int m;
  try {
    size_t used;
    m = std::stoi(text.substr(at + 1), &used);
    if (used != text.size() - at - 1) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  std::string head = text.substr(0, at);
  if (head == "id") {
    if (m < 0) throw bad();
    return identity(m);
  }
  if (head.size() < 2 || head.front() != '(' || head.back() != ')') throw bad();
  std::istringstream in(head.substr(1, head.size() - 2));
  std::vector<int> vals;
  int x;
  while (in >> x) vals.push_back(x);
  if (!in.eof()) throw bad();
  return InjWord(std::move(vals), m);
}

bool InjWord::operator<(const InjWord& o) const {
  if (source() != o.source()) return source() < o.source();
  if (codomain != o.codomain) return codomain < o.codomain;
  return values < o.values;
}

InjWord compose(const InjWord& g, const InjWord& f) {
  if (f.codomain != g.source()) throw std::invalid_argument("compose: codomain/source mismatch");
  std::vector<int> v(f.source());
  for (int i = 1; i <= f.source(); ++i) v[i - 1] = g.at(f.at(i));
  return InjWord(std::move(v), g.codomain);
}

Perm complete_to_perm(const InjWord& w) {
  const int m = w.codomain;
  std::vector<char> used(m + 1, 0);
  for (int x : w.values) used[x] = 1;
  std::vector<int> v = w.values;
  v.reserve(m);
  for (int x = 1; x <= m; ++x)
    if (!used[x]) v.push_back(x);
  return Perm(std::move(v), m);
}

int sign(const Perm& p) {
  if (p.source() != p.codomain) throw std::invalid_argument("sign: not a permutation");
  int inv = 0;
  for (size_t i = 0; i < p.values.size(); ++i)
    for (size_t j = i + 1; j < p.values.size(); ++j)
      if (p.values[i] > p.values[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

std::vector<InjWord> enumerate_inj(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("enumerate_inj: negative size");
  std::vector<InjWord> out;
  if (n > m) return out;
  std::vector<int> cur;
  std::vector<char> used(m + 1, 0);
  auto rec = [&](auto&& self) -> void {
    if (int(cur.size()) == n) {
      out.emplace_back(cur, m);
      return;
    }
    for (int x = 1; x <= m; ++x) {
      if (used[x]) continue;
      used[x] = 1;
      cur.push_back(x);
      self(self);
      cur.pop_back();
      used[x] = 0;
    }
  };
  rec(rec);
  return out;
}

std::vector<Chain> enumerate_chains(int N, int p) {
  if (N < 0 || p < 0) throw std::invalid_argument("enumerate_chains: negative argument");
  std::vector<Chain> out;
  if (p == 0) {
    for (int n = 0; n <= N; ++n) out.push_back({n, {}});
    return out;
  }
  // arrows[i] : n_i -> n_{i+1}, all non-identity, objects bounded by N
  Chain cur;
  auto rec = [&](auto&& self, int from, int depth) -> void {
    if (depth == p) {
      out.push_back(cur);
      return;
    }
    for (int to = from; to <= N; ++to)
      for (const InjWord& w : enumerate_inj(from, to)) {
        if (w.is_identity()) continue;
        cur.arrows.push_back(w);
        self(self, to, depth + 1);
        cur.arrows.pop_back();
      }
  };
  for (int n0 = 0; n0 <= N; ++n0) {
    cur.object0 = n0;
    rec(rec, n0, 0);
  }
  return out;
}

}  // namespace injcat
