#include "tame/homalg/homalg.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "tame/exactalg/sparse.hpp"
#include "tame/injcat/word.hpp"

namespace homalg {

using exactalg::Decomposition;
using exactalg::FreeComplex;
using exactalg::SparseMat;
using injcat::Chain;
using injcat::InjWord;

namespace {

// Z tensor_{S_n} F(n): kill (s_i - id) x for every generator x.
FgAbGroup sym_coinvariants(const TruncIFunctor& f, int n) {
  const FgAbGroup& g = f.level(n);
  int k = g.num_generators();
  DenseMat cols(k, 0);
  for (int i = 1; i + 1 <= n; ++i) {
    DenseMat d = f.s(n, i).matrix() - DenseMat::identity(k);
    cols = cols.hstack(d);
  }
  return exactalg::quotient_by_columns(g, cols);
}

Int factorial(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<int> chain_key(const Chain& c) {
  std::vector<int> key{c.object0};
  for (const InjWord& a : c.arrows) {
    key.push_back(a.codomain);
    key.push_back(a.source());
    key.insert(key.end(), a.values.begin(), a.values.end());
  }
  return key;
}

// Degree data of the free replacement of the simplicial chain level: kept
// chains contribute a generator block, chains over presented levels also a
// relation-lattice block one degree up.
struct BarDegree {
  std::vector<Chain> chains;             // start level has generators
  std::map<std::vector<int>, int> index; // chain key -> position
  std::vector<int> gen_off;              // offsets into the generator part
  std::vector<int> lat_off;              // offsets into the lattice part, -1 if none
  int gen_dim = 0;
  int lat_dim = 0;
};

struct ArrowMaps {
  DenseMat act;  // F(a): F(n0) -> F(n1) on generators
  DenseMat lat;  // induced map on relation-lattice bases
};

// Number of non-identity injections from m to n.
long long arrow_count(int m, int n) {
  if (m > n) return 0;
  long long c = 1;
  for (int i = n - m + 1; i <= n; ++i) c *= i;
  return c - (m == n ? 1 : 0);
}

// Chain cells per degree without materializing the chains: paths are counted
// by a walk over the arrow-count matrix, weighted by the generator and
// relation-lattice ranks of the start level.
struct CellCounts {
  std::vector<long long> gen, lat;  // indexed by chain degree
};

CellCounts count_cells(const std::vector<int>& gens, const std::vector<int>& lat, int n_used,
                       int q_max) {
  CellCounts cc;
  std::vector<long long> g(n_used + 1), l(n_used + 1);
  for (int n = 0; n <= n_used; ++n) {
    g[n] = gens[n];
    l[n] = lat[n];
  }
  for (int q = 0; q <= q_max; ++q) {
    long long sg = 0, sl = 0;
    for (int n = 0; n <= n_used; ++n) {
      sg += g[n];
      sl += l[n];
    }
    cc.gen.push_back(sg);
    cc.lat.push_back(sl);
    std::vector<long long> g2(n_used + 1, 0), l2(n_used + 1, 0);
    for (int m = 0; m <= n_used; ++m)
      for (int n = m; n <= n_used; ++n) {
        long long a = arrow_count(m, n);
        g2[n] += g[m] * a;
        l2[n] += l[m] * a;
      }
    g = std::move(g2);
    l = std::move(l2);
  }
  return cc;
}

// Unit-pivot chain reduction of the simplicial replacement complex whose top
// differential is too large to materialize. The base differentials d_1..d_P
// live in small map-based matrices; the top differential sits in a compact
// static column store where the few columns that are ever rewritten move into
// a flat overlay, and deleted rows stay in place but are filtered on read, so
// a pivot whose column is a singleton costs no rewrites at all. All matrices
// share one pivot queue ordered by Markowitz cost (colsize - 1) * (rowdeg -
// 1), bucketed by bit width of the last known cost and revalidated on pop, so
// base pivots delete top rows at exactly the moments that keep the top fill
// tiny, just like a whole-complex reduction of the materialized matrices.
struct TopReducer {
  static constexpr int kBuckets = 48;
  static constexpr unsigned char kParked = 255;
  int nrows = 0;
  long long columns_seen = 0, n_elims = 0, n_updates = 0;
  std::vector<long long> colptr{0};
  std::vector<int> rowidx;
  std::vector<short> sval;
  std::vector<long long> rowptr;
  std::vector<int> rowcol;
  std::vector<char> rowalive, colalive;
  std::vector<int> colsize, rowdeg;
  std::vector<int> ovid;  // column -> overlay slot, -1 while still static
  std::vector<std::vector<std::pair<int, long long>>> ovcol;
  std::vector<std::vector<int>> rowextra;  // fill occupancy; may hold stale ids
  std::vector<char> rowpacked;             // rowextra alone lists the row's columns
  std::vector<unsigned char> lastk;        // bucket of the authoritative queue entry
  // base complex: cells of degree 0..P, where the deg-P cells are the top rows
  int nbase = 0;
  std::vector<int> bdims;
  std::vector<std::vector<std::unordered_map<int, Int>>> bcol;  // bcol[q][c]: row -> value
  std::vector<std::vector<std::unordered_set<int>>> browcols;   // browcols[q][r]: columns
  std::vector<std::vector<char>> balive;  // degrees 0..P-1; degree P uses rowalive
  // events: {q, kind, i} with q = nbase + 1 for the top matrix, kind 0 = column,
  // kind 1 = row; cbkt entries {q, c, k} revalidate against cost bound 2^k - 1
  std::deque<std::array<int, 3>> cheap;
  std::vector<std::vector<int>> rsmall;  // top rows that reached degree 2 or 3
  std::vector<std::vector<std::array<int, 3>>> cbkt;

  TopReducer(int rows, long long expect_cols) : nrows(rows) {
    rsmall.resize(2);
    cbkt.resize(kBuckets);
    colptr.reserve(size_t(expect_cols) + 1);
    rowidx.reserve(size_t(expect_cols) * 8);
    sval.reserve(size_t(expect_cols) * 8);
  }

  // Differentials d_1..d_P of the materialized degrees; dims.back() == nrows.
  void set_base(std::vector<int> dims, const std::vector<SparseMat>& diffs) {
    nbase = int(dims.size()) - 1;
    bdims = std::move(dims);
    bcol.resize(nbase + 1);
    browcols.resize(nbase + 1);
    balive.resize(nbase);
    for (int p = 0; p < nbase; ++p) balive[p].assign(bdims[p], 1);
    for (int q = 1; q <= nbase; ++q) {
      bcol[q].resize(bdims[q]);
      browcols[q].resize(bdims[q - 1]);
      for (int c = 0; c < bdims[q]; ++c)
        for (const auto& [r, v] : diffs[q].column(c)) {
          auto it = bcol[q][c].find(r);
          if (it == bcol[q][c].end()) {
            bcol[q][c].emplace(r, v);
            browcols[q][r].insert(c);
          } else if ((it->second += v) == 0) {
            bcol[q][c].erase(it);
            browcols[q][r].erase(c);
          }
        }
    }
  }

  void add_column(std::vector<std::pair<int, long long>>& e) {
    ++columns_seen;
    std::sort(e.begin(), e.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t w = 0;
    for (size_t i = 0; i < e.size();) {
      long long s = 0;
      size_t j = i;
      while (j < e.size() && e[j].first == e[i].first) s += e[j++].second;
      if (s != 0) e[w++] = {e[i].first, s};
      i = j;
    }
    e.resize(w);
    for (const auto& [r, v] : e) {
      if (v > 30000 || v < -30000)
        throw std::runtime_error("bar differential entry exceeds the streaming range");
      rowidx.push_back(r);
      sval.push_back(short(v));
    }
    colptr.push_back(static_cast<long long>(rowidx.size()));
  }

  int cols() const { return int(colptr.size()) - 1; }

  std::vector<std::pair<int, long long>> view(int c) const {
    std::vector<std::pair<int, long long>> out;
    if (ovid[c] >= 0) {
      for (const auto& [r, v] : ovcol[ovid[c]])
        if (rowalive[r]) out.emplace_back(r, v);
      return out;
    }
    for (long long k = colptr[c]; k < colptr[c + 1]; ++k)
      if (rowalive[rowidx[k]]) out.emplace_back(rowidx[k], sval[k]);
    return out;
  }

  long long value_at(int c, int r) const {
    if (ovid[c] >= 0) {
      for (const auto& [x, v] : ovcol[ovid[c]])
        if (x == r) return v;
      return 0;
    }
    for (long long k = colptr[c]; k < colptr[c + 1]; ++k)
      if (rowidx[k] == r) return sval[k];
    return 0;
  }

  int topq() const { return nbase + 1; }

  // Cost of the cheapest unit pivot the live entries offer, or -1.
  long long entries_cost(const std::vector<std::pair<int, long long>>& cv) const {
    int bd = -1;
    for (const auto& [x, v] : cv)
      if ((v == 1 || v == -1) && (bd < 0 || rowdeg[x] < bd)) bd = rowdeg[x];
    if (bd < 0) return -1;
    return static_cast<long long>(cv.size() - 1) * (bd - 1);
  }

  void queue_cost(int c, long long cost) {
    if (cost < 0) {
      lastk[c] = kParked;
      return;
    }
    if (cost == 0) {
      lastk[c] = 0;
      cheap.push_back({topq(), 0, c});
      return;
    }
    int k = std::min(int(std::bit_width(static_cast<unsigned long long>(cost))), kBuckets - 1);
    lastk[c] = static_cast<unsigned char>(k);
    cbkt[k].push_back({topq(), c, k});
  }

  void queue_base(int q, int c) {
    long long cost = base_cost(q, c);
    if (cost < 0) return;
    if (cost == 0) {
      cheap.push_back({q, 0, c});
      return;
    }
    int k = std::min(int(std::bit_width(static_cast<unsigned long long>(cost))), kBuckets - 1);
    cbkt[k].push_back({q, c, k});
  }

  long long base_cost(int q, int c) const {
    int bd = -1;
    for (const auto& [x, v] : bcol[q][c])
      if ((v == 1 || v == -1) && (bd < 0 || int(browcols[q][x].size()) < bd))
        bd = int(browcols[q][x].size());
    if (bd < 0) return -1;
    return static_cast<long long>(bcol[q][c].size() - 1) * (bd - 1);
  }

  void store(int c, std::vector<std::pair<int, long long>> nc) {
    colsize[c] = int(nc.size());
    queue_cost(c, entries_cost(nc));
    if (ovid[c] < 0) {
      ovid[c] = int(ovcol.size());
      ovcol.push_back(std::move(nc));
    } else {
      ovcol[ovid[c]] = std::move(nc);
    }
  }

  void drop_deg(int r) {
    int d = --rowdeg[r];
    if (d == 1)
      cheap.push_back({topq(), 1, r});
    else if (d == 2 || d == 3)
      rsmall[d - 2].push_back(r);
  }

  void finalize() {
    rowalive.assign(nrows, 1);
    colalive.assign(cols(), 1);
    colsize.resize(cols());
    ovid.assign(cols(), -1);
    lastk.assign(cols(), kParked);
    rowdeg.assign(nrows, 0);
    rowextra.resize(nrows);
    rowpacked.assign(nrows, 0);
    for (int c = 0; c < cols(); ++c) colsize[c] = int(colptr[c + 1] - colptr[c]);
    for (int r : rowidx) ++rowdeg[r];
    rowptr.assign(nrows + 1, 0);
    for (int r : rowidx) ++rowptr[r + 1];
    for (int r = 0; r < nrows; ++r) rowptr[r + 1] += rowptr[r];
    rowcol.resize(rowidx.size());
    std::vector<long long> cur(rowptr.begin(), rowptr.end() - 1);
    for (int c = 0; c < cols(); ++c)
      for (long long k = colptr[c]; k < colptr[c + 1]; ++k) rowcol[cur[rowidx[k]]++] = c;
    for (int c = 0; c < cols(); ++c) {
      int bd = -1;
      for (long long k = colptr[c]; k < colptr[c + 1]; ++k)
        if ((sval[k] == 1 || sval[k] == -1) && (bd < 0 || rowdeg[rowidx[k]] < bd))
          bd = rowdeg[rowidx[k]];
      queue_cost(c, bd < 0 ? -1 : (colptr[c + 1] - colptr[c] - 1) * (bd - 1));
    }
    for (int q = 1; q <= nbase; ++q)
      for (int c = 0; c < bdims[q]; ++c) queue_base(q, c);
  }

  // Live entries of top row r as (column, value). The first walk filters the
  // static occupancy list and caches the surviving column ids in rowextra, so
  // later walks cost only the current degree; fill keeps appending there and
  // stale ids are filtered out again on the next walk.
  std::vector<std::pair<int, long long>> live_row(int r) {
    std::vector<int> js;
    if (!rowpacked[r])
      for (long long k = rowptr[r]; k < rowptr[r + 1]; ++k) js.push_back(rowcol[k]);
    js.insert(js.end(), rowextra[r].begin(), rowextra[r].end());
    std::sort(js.begin(), js.end());
    js.erase(std::unique(js.begin(), js.end()), js.end());
    std::vector<std::pair<int, long long>> out;
    for (int j : js) {
      if (!colalive[j]) continue;
      long long v = value_at(j, r);
      if (v != 0) out.emplace_back(j, v);
    }
    rowextra[r].clear();
    for (const auto& [j, v] : out) rowextra[r].push_back(j);
    rowpacked[r] = 1;
    return out;
  }

  // Detach top row r: columns keep their (now filtered) entries, only the
  // live sizes and the pivot queue are refreshed. Used when a base pivot
  // consumes a deg-P cell; top pivots do their own bookkeeping inline.
  void detach_top_row(int r) {
    rowalive[r] = 0;
    for (const auto& [j, v] : live_row(r)) {
      int s = --colsize[j];
      if (s == 1) {
        lastk[j] = 0;
        cheap.push_back({topq(), 0, j});
      } else if (s == 2) {
        queue_cost(j, entries_cost(view(j)));
      }
    }
    rowextra[r].clear();
    rowextra[r].shrink_to_fit();
  }

  // Remove the deg-p cell i from the base complex: its column of d_p vanishes
  // and its row of d_{p+1} (or of the top matrix) is deleted for free.
  void delete_bcell(int p, int i) {
    if (p >= 1 && p <= nbase) {
      for (const auto& [x, v] : bcol[p][i]) {
        browcols[p][x].erase(i);
        if (browcols[p][x].size() == 1) cheap.push_back({p, 1, x});
      }
      bcol[p][i].clear();
    }
    if (p == nbase) {
      detach_top_row(i);
      return;
    }
    balive[p][i] = 0;
    for (int c2 : std::vector<int>(browcols[p + 1][i].begin(), browcols[p + 1][i].end())) {
      bcol[p + 1][c2].erase(i);
      if (bcol[p + 1][c2].size() == 1) cheap.push_back({p + 1, 0, c2});
    }
    browcols[p + 1][i].clear();
  }

  void eliminate(int r, int c, long long pv) {
    ++n_elims;
    std::vector<std::pair<int, long long>> pe = view(c);
    std::erase_if(pe, [&](const auto& e) { return e.first == r; });
    colalive[c] = 0;
    if (ovid[c] >= 0) {
      ovcol[ovid[c]].clear();
      ovcol[ovid[c]].shrink_to_fit();
    }
    if (pe.empty()) {
      // the pivot column was a singleton: other columns just lose the row,
      // which the read-time filter handles without a rewrite
      delete_bcell(nbase, r);
      return;
    }
    for (const auto& [j, fr] : live_row(r)) {
      if (j == c) continue;
      std::vector<std::pair<int, long long>> cv = view(j);
      long long f = fr * pv;  // multiplier of the pivot column, pv = +-1
      std::vector<std::pair<int, long long>> nc;
      size_t a = 0, b = 0;
      while (a < cv.size() || b < pe.size()) {
        if (b == pe.size() || (a < cv.size() && cv[a].first < pe[b].first)) {
          if (cv[a].first != r) nc.push_back(cv[a]);
          ++a;
        } else if (a == cv.size() || pe[b].first < cv[a].first) {
          ++n_updates;
          long long v = -f * pe[b].second;
          if (v > (1LL << 42) || v < -(1LL << 42))
            throw std::runtime_error("bar differential entry exceeds the streaming range");
          nc.emplace_back(pe[b].first, v);
          ++rowdeg[pe[b].first];
          rowextra[pe[b].first].push_back(j);
          ++b;
        } else {
          ++n_updates;
          long long v = cv[a].second - f * pe[b].second;
          if (v > (1LL << 42) || v < -(1LL << 42))
            throw std::runtime_error("bar differential entry exceeds the streaming range");
          if (v != 0)
            nc.emplace_back(cv[a].first, v);
          else
            drop_deg(cv[a].first);
          ++a;
          ++b;
        }
      }
      store(j, std::move(nc));
    }
    for (const auto& [x, v] : pe) drop_deg(x);
    // every column with a live entry at r was just rewritten without it, so
    // the detach walk only clears the base column of the dead cell
    rowalive[r] = 0;
    if (nbase >= 1) {
      for (const auto& [x, v] : bcol[nbase][r]) {
        browcols[nbase][x].erase(r);
        if (browcols[nbase][x].size() == 1) cheap.push_back({nbase, 1, x});
      }
      bcol[nbase][r].clear();
    }
    rowextra[r].clear();
    rowextra[r].shrink_to_fit();
  }

  void eliminate_base(int q, int r, int c) {
    ++n_elims;
    const Int pv = bcol[q][c].at(r);  // +-1
    std::vector<int> js(browcols[q][r].begin(), browcols[q][r].end());
    std::vector<std::pair<int, Int>> pivot_col(bcol[q][c].begin(), bcol[q][c].end());
    for (int j : js) {
      if (j == c) continue;
      Int f = bcol[q][j].at(r) * pv;
      for (const auto& [x, v] : pivot_col) {
        if (x == r) continue;
        ++n_updates;
        auto it = bcol[q][j].find(x);
        if (it == bcol[q][j].end()) {
          bcol[q][j].emplace(x, -f * v);
          browcols[q][x].insert(j);
        } else if ((it->second -= f * v) == 0) {
          bcol[q][j].erase(it);
          browcols[q][x].erase(j);
          if (browcols[q][x].size() == 1) cheap.push_back({q, 1, x});
        }
      }
      queue_base(q, j);
    }
    delete_bcell(q - 1, r);
    delete_bcell(q, c);
  }

  // Smallest unit-valued column of the top row, or nothing; rows with no unit
  // entry stay parked until a degree change queues them again.
  bool try_row(int r) {
    int bj = -1;
    long long bv = 0;
    for (const auto& [j, f] : live_row(r)) {
      if (f != 1 && f != -1) continue;
      if (bj < 0 || colsize[j] < colsize[bj]) {
        bj = j;
        bv = f;
      }
    }
    if (bj < 0) return false;
    eliminate(r, bj, bv);
    return true;
  }

  // Revalidate a popped top column against the cost bound it was queued
  // under: eliminate if the pivot is still that cheap, requeue at the true
  // cost if it got dearer, park it if no unit entry is left.
  void process(int c, long long bound) {
    std::vector<std::pair<int, long long>> cv = view(c);
    int br = -1;
    long long bv = 0;
    for (const auto& [x, v] : cv)
      if ((v == 1 || v == -1) && (br < 0 || rowdeg[x] < rowdeg[br])) {
        br = x;
        bv = v;
      }
    if (br < 0) {
      lastk[c] = kParked;
      return;
    }
    long long cost = static_cast<long long>(cv.size() - 1) * (rowdeg[br] - 1);
    if (cost <= bound)
      eliminate(br, c, bv);
    else
      queue_cost(c, cost);
  }

  void process_base(int q, int c, long long bound) {
    int br = -1;
    for (const auto& [x, v] : bcol[q][c])
      if ((v == 1 || v == -1) && (br < 0 || browcols[q][x].size() < browcols[q][br].size()))
        br = x;
    if (br < 0) return;
    long long cost =
        static_cast<long long>(bcol[q][c].size() - 1) * (int(browcols[q][br].size()) - 1);
    if (cost <= bound)
      eliminate_base(q, br, c);
    else
      queue_base(q, c);
  }

  bool cell_alive(int p, int i) const { return p == nbase ? rowalive[i] != 0 : balive[p][i] != 0; }

  void handle_cheap(int q, int kind, int i) {
    if (q == topq()) {
      if (kind == 0) {
        if (colalive[i] && lastk[i] == 0) process(i, 0);
      } else if (rowalive[i] && rowdeg[i] == 1) {
        try_row(i);
      }
      return;
    }
    if (kind == 0) {
      if (cell_alive(q, i) && !bcol[q][i].empty()) process_base(q, i, 0);
    } else if (cell_alive(q - 1, i) && browcols[q][i].size() == 1) {
      int c = *browcols[q][i].begin();
      const Int& v = bcol[q][c].at(i);
      if (v == 1 || v == -1) eliminate_base(q, i, c);
    }
  }

  void run() {
    for (;;) {
      if (!cheap.empty()) {
        auto [q, kind, i] = cheap.front();
        cheap.pop_front();
        handle_cheap(q, kind, i);
        continue;
      }
      bool found = false;
      for (int d = 2; d <= 3 && !found; ++d) {
        auto& rq = rsmall[d - 2];
        if (rq.empty()) continue;
        int r = rq.back();
        rq.pop_back();
        found = true;
        if (rowalive[r] && rowdeg[r] == d) try_row(r);
      }
      if (found) continue;
      for (int k = 1; k < kBuckets && !found; ++k) {
        auto& bq = cbkt[k];
        if (bq.empty()) continue;
        auto [q, c, qk] = bq.back();
        bq.pop_back();
        found = true;
        long long bound = (1LL << qk) - 1;
        if (q == topq()) {
          if (colalive[c] && lastk[c] == qk) process(c, bound);
        } else if (cell_alive(q, c) && !bcol[q][c].empty()) {
          process_base(q, c, bound);
        }
      }
      if (!found) return;
    }
  }

  // Rank and torsion of the reduced d_q over the surviving cells, q = 1..P.
  std::pair<int, std::vector<Int>> base_invariants(int q) const {
    std::unordered_map<int, int> rmap, cmap;
    for (int c = 0; c < bdims[q]; ++c) {
      if (bcol[q][c].empty()) continue;
      cmap.emplace(c, int(cmap.size()));
      for (const auto& [r, v] : bcol[q][c]) rmap.emplace(r, int(rmap.size()));
    }
    DenseMat m(int(rmap.size()), int(cmap.size()));
    for (const auto& [c, ci] : cmap)
      for (const auto& [r, v] : bcol[q].at(c)) m.at(rmap.at(r), ci) = v;
    std::vector<Int> inv = smith_invariants(std::move(m));
    std::pair<int, std::vector<Int>> out;
    out.first = int(inv.size());
    for (const Int& d : inv)
      if (d > 1) out.second.push_back(d);
    return out;
  }
};

// Homology of the normalized simplicial replacement over the injections among
// 0..N_used, through degree p_max, as a complex of free groups. Small cases
// materialize the whole complex; when the top chain degree is too large its
// differential is streamed column by column instead.
std::vector<Decomposition> bar_homology(const TruncIFunctor& f, int n_used, int p_max) {
  const int top = p_max + 1;

  std::vector<int> gens(n_used + 1), lat(n_used + 1);
  std::vector<DenseMat> rho(n_used + 1);
  std::vector<std::optional<exactalg::Snf>> rho_snf(n_used + 1);
  for (int n = 0; n <= n_used; ++n) {
    gens[n] = f.level(n).num_generators();
    rho[n] = exactalg::column_lattice_basis(f.level(n).relations().transpose());
    lat[n] = rho[n].cols();
  }

  CellCounts cc = count_cells(gens, lat, n_used, top);
  std::vector<long long> fdim(top + 2, 0);  // free-replacement dimensions
  for (int q = 0; q <= top + 1; ++q)
    fdim[q] = (q <= top ? cc.gen[q] : 0) + (q >= 1 ? cc.lat[q - 1] : 0);
  long long total_full = 0, total_base = 0;
  for (int q = 0; q <= top + 1; ++q) total_full += fdim[q];
  for (int q = 0; q <= p_max; ++q) total_base += fdim[q];
  const bool streamed = total_full > 50000 || getenv("TAME_BAR_STREAM");
  if (streamed && (total_base > 2000000 || cc.gen[top] > 30000000))
    throw std::runtime_error(
        "bar complex exceeds the resource guard; lower the truncation or degree");

  const int q_hi = streamed ? p_max : top;  // chain degrees materialized
  std::vector<BarDegree> deg(q_hi + 1);
  for (int q = 0; q <= q_hi; ++q) {
    BarDegree& d = deg[q];
    for (Chain& c : injcat::enumerate_chains(n_used, q)) {
      if (gens[c.object0] == 0) continue;
      d.index[chain_key(c)] = int(d.chains.size());
      d.gen_off.push_back(d.gen_dim);
      d.gen_dim += gens[c.object0];
      if (lat[c.object0] > 0) {
        d.lat_off.push_back(d.lat_dim);
        d.lat_dim += lat[c.object0];
      } else {
        d.lat_off.push_back(-1);
      }
      d.chains.push_back(std::move(c));
    }
  }

  // Per-arrow action and its lift to the relation lattices, shared by the
  // generator and lattice faces.
  std::map<std::vector<int>, ArrowMaps> arrow_cache;
  auto arrow_maps = [&](const InjWord& a) -> const ArrowMaps& {
    std::vector<int> key{a.codomain};
    key.insert(key.end(), a.values.begin(), a.values.end());
    auto it = arrow_cache.find(key);
    if (it != arrow_cache.end()) return it->second;
    ArrowMaps m;
    m.act = f.act_matrix(a);
    int n0 = a.source(), n1 = a.codomain;
    if (lat[n0] > 0) {
      DenseMat pushed = m.act * rho[n0];
      if (!rho_snf[n1]) rho_snf[n1] = exactalg::smith_normal_form(rho[n1]);
      m.lat = DenseMat(lat[n1], lat[n0]);
      for (int j = 0; j < lat[n0]; ++j) {
        std::vector<Int> b(pushed.rows());
        for (int r = 0; r < pushed.rows(); ++r) b[r] = pushed.at(r, j);
        auto x = exactalg::solve(*rho_snf[n1], b);
        if (!x) throw std::logic_error("action does not preserve the relation lattice");
        for (int r = 0; r < lat[n1]; ++r) m.lat.at(r, j) = (*x)[r];
      }
    }
    return arrow_cache.emplace(std::move(key), std::move(m)).first->second;
  };

  // Faces of a chain: the target chain, the sign, and the acting arrow for
  // face 0 (no arrow means the block is an identity).
  struct Face {
    Chain target;
    int sign;
    const InjWord* push;  // non-null only for face 0
  };
  auto faces_of = [](const Chain& c) {
    std::vector<Face> out;
    int q = int(c.arrows.size());
    for (int i = 0; i <= q; ++i) {
      if (q == 0) break;  // objects have no faces here
      Chain t;
      const InjWord* push = nullptr;
      if (i == 0) {
        t.object0 = c.arrows[0].codomain;
        t.arrows.assign(c.arrows.begin() + 1, c.arrows.end());
        push = &c.arrows[0];
      } else if (i == q) {
        t.object0 = c.object0;
        t.arrows.assign(c.arrows.begin(), c.arrows.end() - 1);
      } else {
        InjWord comp = injcat::compose(c.arrows[i], c.arrows[i - 1]);
        if (comp.is_identity()) continue;  // degenerate in the normalized complex
        t.object0 = c.object0;
        t.arrows.assign(c.arrows.begin(), c.arrows.end());
        t.arrows[i - 1] = comp;
        t.arrows.erase(t.arrows.begin() + i);
      }
      out.push_back({std::move(t), i % 2 == 0 ? 1 : -1, push});
    }
    return out;
  };

  auto build_diff = [&](int q) {
    int rows = deg[q - 1].gen_dim + (q >= 2 ? deg[q - 2].lat_dim : 0);
    int cols = (q <= q_hi ? deg[q].gen_dim : 0) + deg[q - 1].lat_dim;
    SparseMat d(rows, cols);
    if (q <= q_hi) {
      // generator faces
      for (size_t ci = 0; ci < deg[q].chains.size(); ++ci) {
        const Chain& c = deg[q].chains[ci];
        for (const Face& fa : faces_of(c)) {
          auto it = deg[q - 1].index.find(chain_key(fa.target));
          if (it == deg[q - 1].index.end()) continue;  // zero-rank start
          int roff = deg[q - 1].gen_off[it->second];
          int coff = deg[q].gen_off[ci];
          if (fa.push) {
            const DenseMat& m = arrow_maps(*fa.push).act;
            for (int r = 0; r < m.rows(); ++r)
              for (int cc = 0; cc < m.cols(); ++cc)
                if (m.at(r, cc) != 0) d.add(roff + r, coff + cc, fa.sign * m.at(r, cc));
          } else {
            for (int r = 0; r < gens[c.object0]; ++r) d.add(roff + r, coff + r, fa.sign);
          }
        }
      }
    }
    // relation columns rho into the generators one degree down, and the lifted
    // faces -S between the lattice parts
    for (size_t ci = 0; ci < deg[q - 1].chains.size(); ++ci) {
      if (deg[q - 1].lat_off[ci] < 0) continue;
      const Chain& c = deg[q - 1].chains[ci];
      int coff = (q <= q_hi ? deg[q].gen_dim : 0) + deg[q - 1].lat_off[ci];
      const DenseMat& r0 = rho[c.object0];
      for (int r = 0; r < r0.rows(); ++r)
        for (int j = 0; j < r0.cols(); ++j)
          if (r0.at(r, j) != 0) d.add(deg[q - 1].gen_off[ci] + r, coff + j, r0.at(r, j));
      if (q >= 2) {
        for (const Face& fa : faces_of(c)) {
          auto it = deg[q - 2].index.find(chain_key(fa.target));
          if (it == deg[q - 2].index.end()) continue;
          int ti = it->second;
          if (deg[q - 2].lat_off[ti] < 0) continue;
          int roff = deg[q - 1].gen_dim + deg[q - 2].lat_off[ti];
          if (fa.push) {
            const DenseMat& s = arrow_maps(*fa.push).lat;
            for (int r = 0; r < s.rows(); ++r)
              for (int cc = 0; cc < s.cols(); ++cc)
                if (s.at(r, cc) != 0) d.add(roff + r, coff + cc, -fa.sign * s.at(r, cc));
          } else {
            for (int r = 0; r < lat[c.object0]; ++r) d.add(roff + r, coff + r, -fa.sign);
          }
        }
      }
    }
    return d;
  };

  if (!streamed) {
    FreeComplex fc;
    fc.dims.resize(top + 2);
    fc.diffs.resize(top + 2);
    for (int q = 0; q <= top + 1; ++q)
      fc.dims[q] = (q <= top ? deg[q].gen_dim : 0) + (q >= 1 ? deg[q - 1].lat_dim : 0);
    for (int q = 1; q <= top + 1; ++q) fc.diffs[q] = build_diff(q);
    return fc.homology_range(p_max);
  }

  // Streamed top differential: the (p_max+1)-chains are enumerated as tuples
  // of composable arrow ids and their columns fed to the zero-fill cascade,
  // never materializing the full matrix algebraically.
  const int P = p_max;

  std::vector<InjWord> arrows;
  std::vector<std::vector<int>> out_of(n_used + 1);
  std::map<std::vector<int>, int> arrow_id;
  for (int m = 0; m <= n_used; ++m)
    for (int n = m; n <= n_used; ++n)
      for (const InjWord& w : injcat::enumerate_inj(m, n)) {
        if (w.is_identity()) continue;
        std::vector<int> key{w.codomain};
        key.insert(key.end(), w.values.begin(), w.values.end());
        arrow_id[key] = int(arrows.size());
        out_of[m].push_back(int(arrows.size()));
        arrows.push_back(w);
      }
  const int na = int(arrows.size());
  if (na >= 4095)
    throw std::runtime_error(
        "bar complex exceeds the resource guard; lower the truncation or degree");
  auto aid = [&](const InjWord& w) {
    std::vector<int> key{w.codomain};
    key.insert(key.end(), w.values.begin(), w.values.end());
    return arrow_id.at(key);
  };
  // composite arrow ids, -1 for identity composites or incomposable pairs
  std::vector<int> comp(size_t(na) * na, -1);
  for (int a = 0; a < na; ++a)
    for (int b : out_of[arrows[a].codomain]) {
      InjWord w = injcat::compose(arrows[b], arrows[a]);
      if (!w.is_identity()) comp[size_t(b) * na + a] = aid(w);
    }

  auto pack = [](int n0, const int* ids, int len) {
    uint64_t k = uint64_t(n0) + 1;
    for (int i = 0; i < len; ++i) k = (k << 12) | uint64_t(ids[i] + 1);
    return k;
  };
  std::unordered_map<uint64_t, int> idx_top;  // P-chain tuple -> chain position
  idx_top.reserve(deg[P].chains.size() * 2);
  {
    std::vector<int> ids;
    for (size_t i = 0; i < deg[P].chains.size(); ++i) {
      ids.clear();
      for (const InjWord& a : deg[P].chains[i].arrows) ids.push_back(aid(a));
      idx_top[pack(deg[P].chains[i].object0, ids.data(), P)] = int(i);
    }
  }

  TopReducer te(deg[P].gen_dim + (P >= 1 ? deg[P - 1].lat_dim : 0),
                cc.gen[top] + (top >= 1 ? cc.lat[top - 1] : 0));
  std::vector<const DenseMat*> act_of(na, nullptr);
  auto act = [&](int id) {
    if (!act_of[id]) act_of[id] = &arrow_maps(arrows[id]).act;
    return act_of[id];
  };

  struct FaceBlock {
    int rowbase;
    int sign;
    int push;  // arrow id for face 0, -1 for an identity block
  };
  std::vector<FaceBlock> fb;
  std::vector<std::pair<int, long long>> entries;
  auto push_entry = [&](int row, const Int& v, int sgn) {
    if (v > (1LL << 40) || v < -(1LL << 40))
      throw std::runtime_error("bar differential entry exceeds the streaming range");
    long long w = v.convert_to<long long>();
    entries.emplace_back(row, sgn > 0 ? w : -w);
  };
  std::vector<int> ids(P + 1), t(P);
  auto emit = [&]() {
    int n0 = arrows[ids[0]].source();
    fb.clear();
    {
      int n1 = arrows[ids[0]].codomain;
      if (gens[n1] > 0) {
        auto it = idx_top.find(pack(n1, ids.data() + 1, P));
        if (it != idx_top.end()) fb.push_back({deg[P].gen_off[it->second], 1, ids[0]});
      }
    }
    for (int i = 1; i <= P; ++i) {
      int m = comp[size_t(ids[i]) * na + ids[i - 1]];
      if (m < 0) continue;  // degenerate in the normalized complex
      int w = 0;
      for (int j = 0; j < i - 1; ++j) t[w++] = ids[j];
      t[w++] = m;
      for (int j = i + 1; j <= P; ++j) t[w++] = ids[j];
      auto it = idx_top.find(pack(n0, t.data(), P));
      if (it != idx_top.end())
        fb.push_back({deg[P].gen_off[it->second], i % 2 == 0 ? 1 : -1, -1});
    }
    {
      auto it = idx_top.find(pack(n0, ids.data(), P));
      if (it != idx_top.end())
        fb.push_back({deg[P].gen_off[it->second], (P + 1) % 2 == 0 ? 1 : -1, -1});
    }
    for (int cc = 0; cc < gens[n0]; ++cc) {
      entries.clear();
      for (const FaceBlock& b : fb) {
        if (b.push >= 0) {
          const DenseMat& m = *act(b.push);
          for (int r = 0; r < m.rows(); ++r) {
            const Int& v = m.at(r, cc);
            if (v != 0) push_entry(b.rowbase + r, v, b.sign);
          }
        } else {
          entries.emplace_back(b.rowbase + cc, b.sign);
        }
      }
      te.add_column(entries);
    }
  };
  std::function<void(int)> rec = [&](int pos) {
    if (pos == P + 1) {
      emit();
      return;
    }
    if (pos == 0) {
      for (int n = 0; n <= n_used; ++n) {
        if (gens[n] == 0) continue;
        for (int id : out_of[n]) {
          ids[0] = id;
          rec(1);
        }
      }
    } else {
      for (int id : out_of[arrows[ids[pos - 1]].codomain]) {
        ids[pos] = id;
        rec(pos + 1);
      }
    }
  };
  rec(0);

  // relation-lattice columns of the P-chains, built like the materialized ones
  for (size_t ci = 0; ci < deg[P].chains.size(); ++ci) {
    if (deg[P].lat_off[ci] < 0) continue;
    const Chain& c = deg[P].chains[ci];
    const DenseMat& r0 = rho[c.object0];
    struct LatBlock {
      int rowbase;
      int sign;
      const DenseMat* s;  // lifted face, nullptr for an identity block
    };
    std::vector<LatBlock> lb;
    if (P >= 1)
      for (const Face& fa : faces_of(c)) {
        auto it = deg[P - 1].index.find(chain_key(fa.target));
        if (it == deg[P - 1].index.end()) continue;
        int ti = it->second;
        if (deg[P - 1].lat_off[ti] < 0) continue;
        lb.push_back({deg[P].gen_dim + deg[P - 1].lat_off[ti], fa.sign,
                      fa.push ? &arrow_maps(*fa.push).lat : nullptr});
      }
    for (int j = 0; j < lat[c.object0]; ++j) {
      entries.clear();
      for (int r = 0; r < r0.rows(); ++r)
        if (r0.at(r, j) != 0) push_entry(deg[P].gen_off[ci] + r, r0.at(r, j), 1);
      for (const LatBlock& b : lb) {
        if (b.s) {
          for (int r = 0; r < b.s->rows(); ++r)
            if (b.s->at(r, j) != 0) push_entry(b.rowbase + r, b.s->at(r, j), -b.sign);
        } else {
          entries.emplace_back(b.rowbase + j, -b.sign);
        }
      }
      te.add_column(entries);
    }
  }

  {
    std::vector<int> bdm(P + 1);
    for (int q = 0; q < P; ++q) bdm[q] = deg[q].gen_dim + (q >= 1 ? deg[q - 1].lat_dim : 0);
    bdm[P] = te.nrows;
    std::vector<SparseMat> bd(P + 1);
    for (int q = 1; q <= P; ++q) bd[q] = build_diff(q);
    te.set_base(std::move(bdm), bd);
  }
  te.finalize();
  te.run();

  // surviving cells per degree and the invariants of the reduced differentials
  std::vector<int> adim(P + 1, 0);
  for (int p = 0; p < P; ++p)
    for (char a : te.balive[p]) adim[p] += a;
  std::vector<int> fin(te.nrows, -1);
  for (int r = 0; r < te.nrows; ++r)
    if (te.rowalive[r]) fin[r] = adim[P]++;
  const int nfin = adim[P];
  std::vector<int> rank(P + 1, 0);
  std::vector<std::vector<Int>> torsion(P + 1);
  for (int q = 1; q <= P; ++q) {
    auto [rk, tor] = te.base_invariants(q);
    rank[q] = rk;
    torsion[q] = std::move(tor);
  }

  // remainder of the top differential over the surviving cells
  std::set<std::vector<std::pair<int, long long>>> seen;
  for (int c = 0; c < te.cols(); ++c) {
    if (!te.colalive[c]) continue;
    std::vector<std::pair<int, long long>> e;
    for (const auto& [r, v] : te.view(c)) e.emplace_back(fin[r], v);
    if (e.empty()) continue;
    if (e[0].second < 0)
      for (auto& [r, v] : e) v = -v;  // sign-normalized duplicates are redundant
    seen.insert(std::move(e));
  }
  FreeComplex rfc;
  rfc.dims = {nfin, int(seen.size())};
  rfc.diffs.resize(2);
  rfc.diffs[1] = SparseMat(nfin, int(seen.size()));
  {
    int c = 0;
    for (const auto& e : seen) {
      for (const auto& [r, v] : e) rfc.diffs[1].add(r, c, v);
      ++c;
    }
  }
  exactalg::ReducedComplex rr = exactalg::reduce_complex(rfc);
  // unit pivots removed a row and a column each; they all count toward rank
  int rank_top = (nfin - rr.adim[0]) + rr.rank[1];
  if (getenv("TAME_DEBUG_REDUCER"))
    fprintf(stderr,
            "streamed top: %lld cols over %d rows, %lld pivots, remainder %d x %zu, rank %d, "
            "updates %lld, overlay %zu\n",
            te.columns_seen, te.nrows, te.n_elims, nfin, seen.size(), rank_top, te.n_updates,
            te.ovcol.size());

  std::vector<Decomposition> out;
  for (int p = 0; p <= p_max; ++p) {
    Decomposition dec;
    if (p < P) {
      dec.free_rank = adim[p] - rank[p] - rank[p + 1];
      dec.torsion = torsion[p + 1];
    } else {
      dec.free_rank = adim[P] - rank[P] - rank_top;
      dec.torsion = rr.torsion[1];
    }
    out.push_back(std::move(dec));
  }
  return out;
}

}  // namespace

CoinvariantsResult coinvariants(const TruncIFunctor& f) {
  CoinvariantsResult r;
  for (int n = 0; n <= f.N; ++n) r.terms.push_back(sym_coinvariants(f, n));
  r.value = r.terms.back();
  if (f.N >= 2) {
    r.stabilized = true;
    for (int n = f.N - 2; n < f.N; ++n) {
      GroupHom induced(r.terms[n], r.terms[n + 1], f.iota(n).matrix());
      if (!induced.is_isomorphism()) r.stabilized = false;
    }
  }
  return r;
}

std::vector<TorResult> tor_bar(const TruncIFunctor& f, int p_max) {
  if (p_max < 0 || p_max > 4) throw std::invalid_argument("tor_bar: degree must lie in 0..4");
  std::vector<Decomposition> now = bar_homology(f, f.N, p_max);
  bool stabilized = false;
  if (f.N >= 1) {
    std::vector<Decomposition> prev = bar_homology(f, f.N - 1, p_max);
    stabilized = now == prev;
  }
  std::vector<TorResult> out;
  for (int p = 0; p <= p_max; ++p) {
    TorResult t;
    t.p = p;
    t.value = FgAbGroup::from_decomposition(now[p]);
    t.method = "bar";
    t.truncation = f.N;
    t.stabilized = stabilized;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<TorResult> tor_pres(const pmod::PResolution& r, int p_max) {
  if (p_max < 0) throw std::invalid_argument("tor_pres: negative degree");
  if (r.length() < p_max + 1)
    throw std::invalid_argument("tor_pres: resolution shorter than the requested degree");

  FreeComplex fc;
  fc.dims.push_back(int(r.p0.summands.size()));
  fc.diffs.emplace_back();
  for (int t = 0; t <= p_max; ++t) {
    const pmod::PMap& m = r.maps[t];
    int rows = int(m.target.summands.size()), cols = int(m.source.summands.size());
    SparseMat d(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        Int sum = 0;  // the coinvariants of P_n are Z via the coefficient sum
        for (const auto& [coef, word] : m.entries[i][j]) sum += coef;
        if (sum != 0) d.add(i, j, sum);
      }
    fc.dims.push_back(cols);
    fc.diffs.push_back(std::move(d));
  }

  std::vector<TorResult> out;
  for (int p = 0; p <= p_max; ++p) {
    TorResult t;
    t.p = p;
    t.value = FgAbGroup::from_decomposition(fc.homology(p));
    t.method = "p_resolution";
    t.truncation = r.target->N;
    t.search_level = r.search_level;
    t.stabilized = r.complete;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<FgAbGroup> group_homology(const tamemod::SigmaModule& b, int p_max) {
  if (b.n > 4) throw std::invalid_argument("group_homology: symmetric group capped at n = 4");
  if (p_max < 0 || p_max > 4) throw std::invalid_argument("group_homology: degree must lie in 0..4");

  std::vector<injcat::Perm> g;  // the non-identity elements
  for (const injcat::Perm& p : injcat::enumerate_inj(b.n, b.n))
    if (!p.is_identity()) g.push_back(p);
  int ng = int(g.size());
  std::vector<DenseMat> action(ng);
  for (int i = 0; i < ng; ++i) action[i] = b.action(g[i], false).matrix();

  int k = b.group.num_generators();
  const DenseMat& rels = b.group.relations();
  int top = p_max + 1;

  long long copies = 1, total = 0;
  std::vector<long long> ncopies(top + 1);
  for (int p = 0; p <= top; ++p) {
    ncopies[p] = copies;
    total += copies * std::max(k, 1);
    copies *= ng;
    if (total > 20000)
      throw std::runtime_error("bar complex exceeds the resource guard; lower the degree");
  }

  // degree p: one copy of B per tuple of non-identity elements
  auto chain_group = [&](int p) {
    int c = int(ncopies[p]);
    DenseMat block(rels.rows() * c, k * c);
    for (int t = 0; t < c; ++t)
      for (int r = 0; r < rels.rows(); ++r)
        for (int j = 0; j < k; ++j) block.at(t * rels.rows() + r, t * k + j) = rels.at(r, j);
    return FgAbGroup(k * c, std::move(block));
  };

  // tuple index in base ng, first element most significant
  auto tuples = [&](int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(p, 0);
    for (long long i = 0; i < ncopies[p]; ++i) {
      out.push_back(t);
      for (int j = p - 1; j >= 0; --j) {
        if (++t[j] < ng) break;
        t[j] = 0;
      }
    }
    return out;
  };
  auto tuple_index = [&](const std::vector<int>& t) {
    long long i = 0;
    for (int x : t) i = i * ng + x;
    return int(i);
  };
  std::map<std::vector<int>, int> elt_index;
  for (int i = 0; i < ng; ++i) elt_index[g[i].values] = i;

  std::vector<FgAbGroup> groups;
  for (int p = 0; p <= top; ++p) groups.push_back(chain_group(p));
  std::vector<GroupHom> diffs;
  for (int p = 1; p <= top; ++p) {
    DenseMat d(groups[p - 1].num_generators(), groups[p].num_generators());
    for (const std::vector<int>& t : tuples(p)) {
      int coff = tuple_index(t) * k;
      for (int i = 0; i <= p; ++i) {
        std::vector<int> u;
        const DenseMat* block = nullptr;  // identity when null
        int sign = i % 2 == 0 ? 1 : -1;
        if (i == 0) {
          u.assign(t.begin() + 1, t.end());
        } else if (i == p) {
          u.assign(t.begin(), t.end() - 1);
          block = &action[t[p - 1]];
        } else {
          InjWord prod = injcat::compose(g[t[i - 1]], g[t[i]]);
          if (prod.is_identity()) continue;
          u = t;
          u[i - 1] = elt_index.at(prod.values);
          u.erase(u.begin() + i);
        }
        int roff = tuple_index(u) * k;
        for (int r = 0; r < k; ++r) {
          if (block) {
            for (int c = 0; c < k; ++c) d.at(roff + r, coff + c) += sign * block->at(r, c);
          } else {
            d.at(roff + r, coff + r) += sign;
          }
        }
      }
    }
    diffs.emplace_back(groups[p], groups[p - 1], std::move(d));
  }

  exactalg::ChainComplex cx(std::move(groups), std::move(diffs));
  std::vector<FgAbGroup> out;
  for (const Decomposition& d : cx.free_replacement().homology_range(p_max))
    out.push_back(FgAbGroup::from_decomposition(d));
  return out;
}

std::vector<int> rationalize_tor(const std::vector<TorResult>& results) {
  std::vector<int> out;
  for (const TorResult& t : results) out.push_back(t.value.decompose().free_rank);
  return out;
}

bool rational_collapse_check(const std::vector<TorResult>& results) {
  for (const TorResult& t : results)
    if (t.p >= 1 && t.value.decompose().free_rank != 0) return false;
  return true;
}

CoinvKernelReport coinvariants_kernel_annihilated(const TruncIFunctor& sub,
                                                  const TruncIFunctor& whole,
                                                  const std::vector<GroupHom>& inclusion) {
  if (sub.N != whole.N || int(inclusion.size()) != sub.N + 1)
    throw std::invalid_argument("coinvariants_kernel_annihilated: mismatched truncations");
  CoinvKernelReport rep;
  for (int n = 0; n <= sub.N; ++n) {
    FgAbGroup cs = sym_coinvariants(sub, n), cw = sym_coinvariants(whole, n);
    GroupHom induced(cs, cw, inclusion[n].matrix());
    exactalg::KernelData k = exactalg::hom_kernel(induced);
    if (k.kernel.is_trivial()) continue;
    rep.kernel_levels.push_back(n);
    Int bound = factorial(n);
    for (int j = 0; j < k.inclusion.matrix().cols(); ++j) {
      std::vector<Int> x(cs.num_generators());
      for (int r = 0; r < cs.num_generators(); ++r) x[r] = k.inclusion.matrix().at(r, j);
      if (!cs.element_killed_by(x, bound)) rep.annihilated = false;
    }
  }
  return rep;
}

}  // namespace homalg
