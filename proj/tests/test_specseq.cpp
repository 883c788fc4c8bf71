#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "tame/pmod/pmod.hpp"
#include "tame/specseq/specseq.hpp"
#include "tame/tamemod/colim.hpp"

using namespace specseq;
using exactalg::DenseMat;
using exactalg::GroupHom;
using exactalg::Int;

namespace {

const Decomposition Z{1, {}};
const Decomposition Z2{0, {2}};
const Decomposition ZERO{0, {}};

Decomposition dec(const FgAbGroup& g) { return g.decompose(); }

}  // namespace

TEST_CASE("builtin stems table and the file copy agree") {
  StemsTable t = StemsTable::builtin();
  CHECK(dec(t.at(0)) == Z);
  CHECK(dec(t.at(1)) == Z2);
  CHECK(dec(t.at(3)) == Decomposition{0, {24}});
  CHECK(t.at(4).is_trivial());
  CHECK(dec(t.at(7)) == Decomposition{0, {240}});
  CHECK(!t.has(8));
  CHECK_THROWS(t.at(8));
  if (const char* dir = std::getenv("TAMECALC_DATA")) {
    StemsTable f = StemsTable::load(std::string(dir) + "/stems.json");
    CHECK(f.groups == t.groups);
  }
}

TEST_CASE("tensor with a coefficient group") {
  TruncIFunctor p1 = pmod::p_functor(1, 3);
  TruncIFunctor tz = tensor_with_group(p1, FgAbGroup(1));
  CHECK(tz.validate().ok);
  for (int m = 0; m <= 3; ++m) CHECK(dec(tz.level(m)) == dec(p1.level(m)));

  TruncIFunctor t2 = tensor_with_group(p1, FgAbGroup::cyclic(2));
  CHECK(t2.validate().ok);
  for (int m = 1; m <= 3; ++m) {
    Decomposition d = dec(t2.level(m));
    CHECK(d.free_rank == 0);
    CHECK(int(d.torsion.size()) == p1.level(m).num_generators());
  }

  TruncIFunctor t0 = tensor_with_group(p1, FgAbGroup(0));
  for (int m = 0; m <= 3; ++m) CHECK(t0.level(m).is_trivial());
}

TEST_CASE("free homotopy") {
  // the coefficient in degree k is the table entry at k + n; for an n-sphere
  // cell the zero-sphere table is shifted up by n
  StemsTable stems = StemsTable::builtin().shifted(1);
  GradedTameModule g = free_homotopy(1, stems, 0, 4, 3);
  CHECK(g.k_max() == 4);
  // degree 0 coefficient Z: the representable itself
  TruncIFunctor p1 = pmod::p_functor(1, 3);
  for (int m = 0; m <= 3; ++m) CHECK(dec(g.at(0)->level(m)) == dec(p1.level(m)));
  CHECK(g.at(0)->grade == 0);
  CHECK(g.at(2)->grade == 2);
  // degree 4 hits the zero stem
  for (int m = 0; m <= 3; ++m) CHECK(g.at(4)->level(m).is_trivial());
  CHECK_THROWS(free_homotopy(1, stems, 7, 8, 3));
  CHECK(dec(stems.at(2)) == Z2);
}

TEST_CASE("free homotopy at n = 0 is constant and semistable") {
  StemsTable stems = StemsTable::builtin();
  GradedTameModule g = free_homotopy(0, stems, 0, 2, 3);
  for (int k = 0; k <= 2; ++k) {
    const auto& f = g.at(k);
    for (int m = 1; m <= 3; ++m) CHECK(dec(f->level(m)) == dec(f->level(0)));
    CHECK(tamemod::is_semistable_up_to(f).semistable);
  }
  CHECK(dec(g.at(1)->level(0)) == Z2);
}

TEST_CASE("sign twist cancels the sign action") {
  StemsTable stems = StemsTable::builtin();
  for (int q : {0, 1}) {
    SigmaModule flip = stem_sigma_module(2, stems, q, true);
    SigmaModule triv = stem_sigma_module(2, stems, q, false);
    TruncIFunctor a = tamemod::tensor_sigma(flip, 3, true);
    TruncIFunctor b = tamemod::tensor_sigma(triv, 3, false);
    for (int m = 0; m <= 3; ++m) {
      CHECK(dec(a.level(m)) == dec(b.level(m)));
      for (int i = 1; i + 1 <= m; ++i) CHECK(a.s(m, i).matrix() == b.s(m, i).matrix());
      if (m < 3) CHECK(a.iota(m).matrix() == b.iota(m).matrix());
    }
  }
}

TEST_CASE("free coefficient module gives the free spectrum levels") {
  // B = Z[Sigma_2]: generators swapped by the transposition
  SigmaModule reg;
  reg.n = 2;
  reg.group = FgAbGroup(2);
  reg.transpositions.emplace_back(reg.group, reg.group, DenseMat{{0, 1}, {1, 0}});
  TruncIFunctor t = tamemod::tensor_sigma(reg, 4, false);
  TruncIFunctor p2 = pmod::p_functor(2, 4);
  for (int m = 0; m <= 4; ++m) CHECK(dec(t.level(m)) == dec(p2.level(m)));
}

TEST_CASE("semifree homotopy validates the action") {
  SigmaModule bad;
  bad.n = 2;
  bad.group = FgAbGroup(1);
  bad.transpositions.emplace_back(bad.group, bad.group, DenseMat{{2}});  // not an involution
  CHECK_THROWS(semifree_homotopy(2, {bad}, 0, false, 3));
  SigmaModule wrong = stem_sigma_module(3, StemsTable::builtin(), 0, false);
  CHECK_THROWS(semifree_homotopy(2, {wrong}, 0, false, 3));
}

TEST_CASE("semistable input collapses to the edge column") {
  GradedTameModule g;
  g.k_min = 0;
  g.degrees.push_back(
      std::make_shared<TruncIFunctor>(tamemod::constant_functor(FgAbGroup(1), 3)));
  g.degrees.push_back(
      std::make_shared<TruncIFunctor>(tamemod::constant_functor(FgAbGroup::cyclic(2), 3, 1)));
  E2Page page = assemble_e2(g, 2, "both", 3);
  CHECK(dec(page.cell(0, 0).value) == Z);
  CHECK(dec(page.cell(0, 1).value) == Z2);
  for (int q = 0; q <= 1; ++q)
    for (int p = 1; p <= 2; ++p) {
      CHECK(page.cell(p, q).value.is_trivial());
      CHECK(page.cell(p, q).agree);
    }
  // edge row is the degreewise coinvariants
  for (int q = 0; q <= 1; ++q)
    CHECK(dec(page.edge[size_t(q)]) == dec(page.cell(0, q).value));
}

TEST_CASE("free input concentrates in the p = 0 column") {
  StemsTable stems = StemsTable::builtin().shifted(1);
  E2Page page = assemble_e2(free_homotopy(1, stems, 0, 1, 3), 2, "both", 3);
  CHECK(dec(page.cell(0, 0).value) == Z);
  CHECK(dec(page.cell(0, 1).value) == Z2);
  for (int q = 0; q <= 1; ++q)
    for (int p = 1; p <= 2; ++p) CHECK(page.cell(p, q).value.is_trivial());
  for (const auto& row : page.rows)
    for (const E2Cell& c : row) CHECK(c.agree);
  // rational collapse: no free rank off the edge
  for (int q = 0; q <= 1; ++q)
    for (int p = 1; p <= 2; ++p) CHECK(dec(page.cell(p, q).value).free_rank == 0);
}

TEST_CASE("the q = 0 row of the two-sphere page is the symmetric group homology") {
  StemsTable stems = StemsTable::builtin();
  GradedTameModule g =
      semifree_homotopy(2, {stem_sigma_module(2, stems, 0, true)}, 0, true, 4);
  E2Page page = assemble_e2(g, 3, "pres", 3);
  CHECK(dec(page.cell(0, 0).value) == Z);
  CHECK(dec(page.cell(1, 0).value) == Z2);
  CHECK(page.cell(2, 0).value.is_trivial());
  CHECK(dec(page.cell(3, 0).value) == Z2);
}

TEST_CASE("rendering is deterministic and carries the metadata") {
  GradedTameModule g;
  g.k_min = 0;
  g.degrees.push_back(
      std::make_shared<TruncIFunctor>(tamemod::constant_functor(FgAbGroup(1), 3)));
  E2Page page = assemble_e2(g, 1, "bar", 3);
  std::string t1 = page.render_text();
  E2Page again = assemble_e2(g, 1, "bar", 3);
  CHECK(t1 == again.render_text());
  CHECK(page.render_json() == again.render_json());
  CHECK(t1.find("truncation N = 3") != std::string::npos);
  CHECK(t1.find("not computed") != std::string::npos);
  CHECK(page.render_json().find("\"method\": \"bar\"") != std::string::npos);
}
