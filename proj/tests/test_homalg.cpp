#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tame/homalg/homalg.hpp"
#include "tame/pmod/pmod.hpp"
#include "tame/pmod/resolution.hpp"

using namespace homalg;
using exactalg::Decomposition;
using pmod::FunctorPtr;
using tamemod::SigmaModule;
using tamemod::TruncIFunctor;

namespace {

FunctorPtr ptr(TruncIFunctor f) { return std::make_shared<TruncIFunctor>(std::move(f)); }

SigmaModule trivial_z(int n) {
  SigmaModule b;
  b.n = n;
  b.group = FgAbGroup(1);
  for (int i = 1; i < n; ++i) b.transpositions.push_back(GroupHom::identity(b.group));
  return b;
}

SigmaModule trivial_z2(int n) {
  SigmaModule b;
  b.n = n;
  b.group = FgAbGroup::cyclic(2);
  for (int i = 1; i < n; ++i) b.transpositions.push_back(GroupHom::identity(b.group));
  return b;
}

SigmaModule sign_z(int n) {
  SigmaModule b;
  b.n = n;
  b.group = FgAbGroup(1);
  for (int i = 1; i < n; ++i)
    b.transpositions.emplace_back(b.group, b.group, DenseMat{{-1}});
  return b;
}

tamemod::KernelFunctor augmentation_kernel(int N) {
  TruncIFunctor p1 = pmod::p_functor(1, N), p0 = pmod::p_functor(0, N);
  std::vector<GroupHom> aug;
  for (int m = 0; m <= N; ++m) {
    DenseMat row(1, p1.level(m).num_generators());
    for (int c = 0; c < row.cols(); ++c) row.at(0, c) = 1;
    aug.emplace_back(p1.level(m), p0.level(m), row);
  }
  return tamemod::kernel_functor(p1, p0, aug);
}

std::vector<Decomposition> decomps(const std::vector<TorResult>& r) {
  std::vector<Decomposition> out;
  for (const TorResult& t : r) out.push_back(t.value.decompose());
  return out;
}

std::vector<TorResult> tor_of(FunctorPtr f, int p_max, int search) {
  pmod::PResolution r = pmod::start_resolution(f, search);
  r = pmod::extend_resolution(std::move(r), p_max + 1, search);
  return tor_pres(r, p_max);
}

const Decomposition Z{1, {}};
const Decomposition Z2{0, {2}};
const Decomposition ZERO{0, {}};

}  // namespace

TEST_CASE("coinvariants of the basic fixtures") {
  CoinvariantsResult cz = coinvariants(tamemod::constant_functor(FgAbGroup(1), 4));
  CHECK(cz.value.decompose() == Z);
  CHECK(cz.stabilized);

  // every P_n has a single word orbit from level n on
  for (int n : {1, 2}) {
    CoinvariantsResult c = coinvariants(pmod::p_functor(n, 4));
    CHECK(c.value.decompose() == Z);
    CHECK(c.stabilized);
    CHECK(c.terms[0].is_trivial());
  }

  CoinvariantsResult cs = coinvariants(tamemod::tensor_sigma(trivial_z(2), 4, false));
  CHECK(cs.value.decompose() == Z);
  CHECK(cs.stabilized);

  // the reduced part of P_1: the difference class dies in the colimit
  CoinvariantsResult ck = coinvariants(augmentation_kernel(4).kernel);
  CHECK(ck.value.is_trivial());
  CHECK(ck.terms[2].decompose() == Z2);  // not yet dead at level 2
}

TEST_CASE("bar homology of the constant functor is concentrated in degree 0") {
  for (int N : {2, 3, 4}) {
    auto r = tor_bar(tamemod::constant_functor(FgAbGroup(1), N), 2);
    CHECK(decomps(r) == std::vector<Decomposition>{Z, ZERO, ZERO});
    if (N >= 3) CHECK(r[0].stabilized);
  }
  auto z6 = tor_bar(tamemod::constant_functor(FgAbGroup::cyclic(6), 3), 2);
  CHECK(decomps(z6) == std::vector<Decomposition>{{0, {6}}, ZERO, ZERO});
}

TEST_CASE("bar homology: projectives vanish in positive degrees") {
  auto r1 = tor_bar(pmod::p_functor(1, 3), 2);
  CHECK(decomps(r1) == std::vector<Decomposition>{Z, ZERO, ZERO});
  auto r2 = tor_bar(pmod::p_functor(2, 3), 2);
  CHECK(decomps(r2) == std::vector<Decomposition>{Z, ZERO, ZERO});
}

TEST_CASE("resolution method on projectives and the zero functor") {
  auto rz = tor_of(ptr(tamemod::zero_functor(3)), 2, 2);
  CHECK(decomps(rz) == std::vector<Decomposition>{ZERO, ZERO, ZERO});
  for (int n : {0, 1, 2}) {
    auto r = tor_of(ptr(pmod::p_functor(n, 4)), 2, 3);
    CHECK(decomps(r) == std::vector<Decomposition>{Z, ZERO, ZERO});
    CHECK(r[0].stabilized);
    CHECK(r[0].method == "p_resolution");
  }
}

TEST_CASE("both methods kill the reduced part of P_1") {
  // one kernel generator only shows up at filtration 5
  FunctorPtr w5 = ptr(augmentation_kernel(5).kernel);
  auto pres = tor_of(w5, 2, 5);
  CHECK(decomps(pres) == std::vector<Decomposition>{ZERO, ZERO, ZERO});
  // at truncation 4 the bar complex still sees a torsion class in degree 2
  // that dies one level up; the agreement at truncation 5 is checked by the
  // acceptance gate, which has the budget for the streamed run
  auto bar = tor_bar(augmentation_kernel(4).kernel, 2);
  CHECK(decomps(bar) == std::vector<Decomposition>{ZERO, ZERO, {0, {2}}});
}

TEST_CASE("method agreement and degree-0 match with coinvariants") {
  std::vector<FunctorPtr> fixtures = {
      ptr(tamemod::constant_functor(FgAbGroup(1), 3)),
      ptr(pmod::p_functor(1, 3)),
      ptr(tamemod::tensor_sigma(trivial_z(2), 3, false)),
      ptr(tamemod::direct_sum(pmod::p_functor(1, 3),
                              tamemod::constant_functor(FgAbGroup(1), 3))),
  };
  for (const FunctorPtr& f : fixtures) {
    auto bar = tor_bar(*f, 2);
    auto pres = tor_of(f, 2, 3);
    CHECK(decomps(bar) == decomps(pres));
    CHECK(bar[0].value.decompose() == coinvariants(*f).value.decompose());
  }
}

TEST_CASE("bar homology is additive") {
  TruncIFunctor f = pmod::p_functor(1, 3);
  TruncIFunctor g = tamemod::tensor_sigma(trivial_z(2), 3, false);
  auto sum = tor_bar(tamemod::direct_sum(f, g), 2);
  auto rf = tor_bar(f, 2), rg = tor_bar(g, 2);
  for (int p = 0; p <= 2; ++p) {
    Decomposition want = rf[p].value.decompose();
    Decomposition have = rg[p].value.decompose();
    want.free_rank += have.free_rank;
    std::vector<Int> tor = want.torsion;
    tor.insert(tor.end(), have.torsion.begin(), have.torsion.end());
    // compare through a presentation since torsion lists need renormalizing
    DenseMat rels(int(tor.size()), int(tor.size()) + want.free_rank);
    for (size_t i = 0; i < tor.size(); ++i) rels.at(int(i), int(i)) = tor[i];
    CHECK(sum[p].value.decompose() ==
          FgAbGroup(int(tor.size()) + want.free_rank, rels).decompose());
  }
}

TEST_CASE("symmetric group homology oracles") {
  auto h1 = group_homology(trivial_z(1), 3);
  CHECK(h1[0].decompose() == Z);
  for (int p = 1; p <= 3; ++p) CHECK(h1[p].is_trivial());

  auto hz = group_homology(trivial_z(2), 3);
  CHECK(hz[0].decompose() == Z);
  CHECK(hz[1].decompose() == Z2);
  CHECK(hz[2].is_trivial());
  CHECK(hz[3].decompose() == Z2);

  auto h2 = group_homology(trivial_z2(2), 3);
  for (int p = 0; p <= 3; ++p) CHECK(h2[p].decompose() == Z2);

  auto hs = group_homology(sign_z(2), 3);
  CHECK(hs[0].decompose() == Z2);
  CHECK(hs[1].is_trivial());
  CHECK(hs[2].decompose() == Z2);
  CHECK(hs[3].is_trivial());

  auto h3 = group_homology(trivial_z(3), 2);
  CHECK(h3[0].decompose() == Z);
  CHECK(h3[1].decompose() == Z2);
  CHECK(h3[2].is_trivial());
}

TEST_CASE("group homology bridge through degree 3") {
  for (const SigmaModule& b : {trivial_z(2), trivial_z2(2), sign_z(2)}) {
    auto tor = tor_of(ptr(tamemod::tensor_sigma(b, 4, false)), 3, 3);
    auto gh = group_homology(b, 3);
    for (int p = 0; p <= 3; ++p) CHECK(tor[p].value.decompose() == gh[p].decompose());
  }
}

TEST_CASE("tensor_sigma(2,-) torsion is 2-torsion") {
  for (const SigmaModule& b : {trivial_z(2), sign_z(2)}) {
    auto tor = tor_of(ptr(tamemod::tensor_sigma(b, 4, false)), 3, 3);
    for (const TorResult& t : tor)
      for (const Int& d : t.value.decompose().torsion) CHECK(d == 2);
  }
}

TEST_CASE("rational collapse and the annihilation mechanism") {
  std::vector<FunctorPtr> fixtures = {
      ptr(tamemod::constant_functor(FgAbGroup(1), 3)),
      ptr(pmod::p_functor(2, 3)),
      ptr(tamemod::tensor_sigma(trivial_z(2), 3, false)),
      ptr(augmentation_kernel(3).kernel),
  };
  for (const FunctorPtr& f : fixtures) {
    auto tor = tor_bar(*f, 2);
    CHECK(rational_collapse_check(tor));
    auto ranks = rationalize_tor(tor);
    for (size_t p = 1; p < ranks.size(); ++p) CHECK(ranks[p] == 0);
  }

  tamemod::KernelFunctor kf = augmentation_kernel(4);
  CoinvKernelReport rep =
      coinvariants_kernel_annihilated(kf.kernel, pmod::p_functor(1, 4), kf.inclusion);
  CHECK(rep.annihilated);
  REQUIRE(!rep.kernel_levels.empty());
  CHECK(rep.kernel_levels[0] == 2);  // the Z/2 difference class at level 2
}

TEST_CASE("guards reject oversized requests") {
  CHECK_THROWS(group_homology(trivial_z(5), 2));
  CHECK_THROWS(tor_bar(tamemod::constant_functor(FgAbGroup(1), 3), 5));
  pmod::PResolution r = pmod::start_resolution(ptr(pmod::p_functor(0, 3)), 2);
  CHECK_THROWS(tor_pres(r, 2));  // shorter than the requested degree
}
