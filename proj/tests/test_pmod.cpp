#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tame/pmod/pmod.hpp"
#include "tame/pmod/resolution.hpp"

using namespace pmod;
using injcat::InjWord;
using injcat::enumerate_inj;
using tamemod::ColimElement;

namespace {

FunctorPtr ptr(TruncIFunctor f) { return std::make_shared<TruncIFunctor>(std::move(f)); }

ColimElement basis_word(const FunctorPtr& p, const InjWord& w) {
  std::vector<Int> coeffs(p->level(w.codomain).num_generators());
  coeffs[p_basis_index(w)] = 1;
  return ColimElement(p, w.codomain, std::move(coeffs));
}

// the kernel of the rank-sum augmentation out of P_1, as a functor
tamemod::KernelFunctor augmentation_kernel(int N) {
  TruncIFunctor p1 = p_functor(1, N), p0 = p_functor(0, N);
  std::vector<exactalg::GroupHom> aug;
  for (int m = 0; m <= N; ++m) {
    DenseMat row(1, p1.level(m).num_generators());
    for (int c = 0; c < row.cols(); ++c) row.at(0, c) = 1;
    aug.emplace_back(p1.level(m), p0.level(m), row);
  }
  return tamemod::kernel_functor(p1, p0, aug);
}

}  // namespace

TEST_CASE("p_functor: ranks and validity") {
  for (int n : {0, 1, 2}) CHECK(p_functor(n, 4).validate().ok);
  TruncIFunctor p2 = p_functor(2, 5);
  long long expect[] = {0, 0, 2, 6, 12, 20};  // m!/(m-2)!
  for (int m = 0; m <= 5; ++m) CHECK(p2.level(m).num_generators() == expect[m]);

  TruncIFunctor p0 = p_functor(0, 3);
  for (int m = 0; m <= 3; ++m) {
    CHECK(p0.level(m).num_generators() == 1);
    if (m < 3) CHECK(p0.iota(m).matrix() == DenseMat{{1}});
  }
}

TEST_CASE("p_basis_index matches the enumeration order") {
  for (int n = 0; n <= 3; ++n)
    for (int m = n; m <= 5; ++m) {
      auto words = enumerate_inj(n, m);
      for (size_t i = 0; i < words.size(); ++i) CHECK(p_basis_index(words[i]) == int(i));
    }
}

TEST_CASE("evaluate_pmap: identity and augmentation") {
  PSum s{{1, 2}};
  PMap id = PMap::identity(s);
  for (int m = 0; m <= 3; ++m)
    CHECK(evaluate_pmap(id, m).matrix() == DenseMat::identity(s.total_rank(m)));

  // P_1 -> P_0, generator to the empty word: the all-ones sum at every level
  PMap aug;
  aug.source = PSum{{1}};
  aug.target = PSum{{0}};
  aug.entries = {{WordSum{{Int(1), InjWord({}, 1)}}}};
  for (int m = 1; m <= 4; ++m) {
    exactalg::GroupHom h = evaluate_pmap(aug, m);
    CHECK(h.matrix().rows() == 1);
    CHECK(h.matrix().cols() == m);
    for (int c = 0; c < m; ++c) CHECK(h.matrix().at(0, c) == 1);
  }
}

TEST_CASE("pmap single-word entries realize the word action; composition realizes") {
  // P_2 -> P_1 classified by the word (1)@2 sends (a,b) to (a)
  PMap f;
  f.source = PSum{{2}};
  f.target = PSum{{1}};
  f.entries = {{WordSum{{Int(1), InjWord({1}, 2)}}}};
  exactalg::GroupHom h = evaluate_pmap(f, 3);
  for (const InjWord& w : enumerate_inj(2, 3))
    CHECK(h.matrix().at(p_basis_index(InjWord({w.values[0]}, 3)), p_basis_index(w)) == 1);

  PMap aug;
  aug.source = PSum{{1}};
  aug.target = PSum{{0}};
  aug.entries = {{WordSum{{Int(1), InjWord({}, 1)}}}};
  PMap comp = aug.compose(f);
  for (int m = 2; m <= 4; ++m)
    CHECK(evaluate_pmap(comp, m).matrix() ==
          (evaluate_pmap(aug, m).compose(evaluate_pmap(f, m))).matrix());

  // associativity through realization on a triple
  PMap g;
  g.source = PSum{{2}};
  g.target = PSum{{2}};
  g.entries = {{WordSum{{Int(1), InjWord({2, 1}, 2)}}}};
  CHECK(evaluate_pmap(aug.compose(f.compose(g)), 3).matrix() ==
        evaluate_pmap((aug.compose(f)).compose(g), 3).matrix());
}

TEST_CASE("hom_from_P: identity, constants, word projection") {
  FunctorPtr p2 = ptr(p_functor(2, 4));
  PHomData idmap = hom_from_P(2, basis_word(p2, InjWord::identity(2)));
  for (int m = 0; m <= 4; ++m)
    CHECK(idmap.maps[m].matrix() == DenseMat::identity(p2->level(m).num_generators()));

  FunctorPtr z = ptr(tamemod::constant_functor(exactalg::FgAbGroup(1), 3));
  PHomData cmap = hom_from_P(0, ColimElement(z, 0, {Int(1)}));
  for (int m = 0; m <= 3; ++m) CHECK(cmap.maps[m].matrix() == DenseMat{{1}});

  FunctorPtr p1 = ptr(p_functor(1, 4));
  PHomData proj = hom_from_P(2, basis_word(p1, InjWord({1}, 1)));
  for (const InjWord& w : enumerate_inj(2, 3))
    CHECK(proj.maps[3].matrix().at(p_basis_index(InjWord({w.values[0]}, 3)),
                                   p_basis_index(w)) == 1);

  // an element of filtration 2 is not classified by P_1
  tamemod::KernelFunctor kf = augmentation_kernel(4);
  FunctorPtr w2 = ptr(kf.kernel);
  CHECK_THROWS(hom_from_P(1, ColimElement(w2, 2, {Int(1)})));
}

TEST_CASE("kappa: verified isomorphism and generator images") {
  for (int n : {0, 1, 2}) {
    KappaData k = kappa(n, 4);
    CHECK(k.verified);
    for (int m = 0; m <= 4; ++m)
      CHECK(k.p->level(m).num_generators() == k.induced->level(m).num_generators());
  }
  // (1,2) corresponds to the unit tensor (1) in copy 1
  KappaData k1 = kappa(1, 4);
  CHECK(k1.forward[2].matrix().at(0, p_basis_index(InjWord({1, 2}, 2))) == 1);
  CHECK_THROWS(kappa(4, 4));
}

TEST_CASE("quotient_In: drop the last coordinate") {
  QuotientIn q = quotient_In(1, 5);
  exactalg::GroupHom h = q.realized[5];
  CHECK(h.matrix().at(p_basis_index(InjWord({3}, 5)), p_basis_index(InjWord({3, 5}, 5))) == 1);

  // everything maps to the generator for n = 0
  QuotientIn q0 = quotient_In(0, 3);
  for (int c = 0; c < q0.realized[3].matrix().cols(); ++c)
    CHECK(q0.realized[3].matrix().at(0, c) == 1);

  // tower compatibility: two single drops equal the double drop
  QuotientIn q2 = quotient_In(2, 5);
  PMap twice = q.projection.compose(q2.projection);
  PMap direct;
  direct.source = PSum{{3}};
  direct.target = PSum{{1}};
  direct.entries = {{WordSum{{Int(1), InjWord({1}, 3)}}}};
  for (int m = 3; m <= 5; ++m)
    CHECK(evaluate_pmap(twice, m).matrix() == evaluate_pmap(direct, m).matrix());
}

TEST_CASE("pro-element actions") {
  FunctorPtr p1 = ptr(p_functor(1, 4));
  ColimElement e = basis_word(p1, InjWord({1}, 1));

  ProElement identity_tower;
  for (int k = 0; k <= 3; ++k) {
    std::vector<int> v(k);
    for (int i = 0; i < k; ++i) v[i] = i + 1;
    identity_tower.components.push_back({{Int(1), InjWord(v, std::max(k, 1))}});
  }
  CHECK(tamemod::eq_up_to(act_pro_element(identity_tower, 1, e), e).equal);

  // prefixes of i |-> i+1 act like the monoid element itself
  ProElement d_tower;
  for (int k = 0; k <= 3; ++k) {
    std::vector<int> v(k);
    for (int i = 0; i < k; ++i) v[i] = i + 2;
    d_tower.components.push_back({{Int(1), InjWord(v, k + 1)}});
  }
  CHECK(tamemod::eq_up_to(act_pro_element(d_tower, 1, e),
                          tamemod::m_act(InjWord({2}, 2), e))
            .equal);

  // the sum (1)+(2) with a compatible lift acts by both translates
  ProElement sum_tower;
  sum_tower.components.push_back({{Int(2), InjWord({}, 1)}});
  sum_tower.components.push_back({{Int(1), InjWord({1}, 2)}, {Int(1), InjWord({2}, 2)}});
  sum_tower.components.push_back({{Int(1), InjWord({1, 2}, 2)}, {Int(1), InjWord({2, 1}, 2)}});
  ColimElement r = act_pro_element(sum_tower, 1, e);
  ColimElement expect(p1, 2, {Int(1), Int(1)});
  CHECK(tamemod::eq_up_to(r, expect).equal);

  ProElement broken;
  broken.components.push_back({{Int(1), InjWord({}, 1)}});
  broken.components.push_back({{Int(2), InjWord({1}, 2)}});
  CHECK_THROWS(broken.check_compatible());
  CHECK_THROWS(act_pro_element(broken, 1, e));
}

TEST_CASE("resolutions of projectives terminate immediately") {
  PResolution rz = start_resolution(ptr(p_functor(0, 3)), 2);
  CHECK(rz.complete);
  CHECK(rz.p0.summands == std::vector<int>{0});
  rz = extend_resolution(rz, 2, 2);
  CHECK(rz.maps[0].source.summands.empty());
  CHECK(rz.maps[1].source.summands.empty());

  PResolution rp = start_resolution(ptr(p_functor(2, 4)), 2);
  CHECK(rp.complete);
  CHECK(rp.p0.summands == std::vector<int>{2});
  rp = extend_resolution(rp, 1, 2);
  CHECK(rp.maps[0].source.summands.empty());
}

TEST_CASE("resolving the augmentation kernel finds the difference generator") {
  tamemod::KernelFunctor kf = augmentation_kernel(4);
  FunctorPtr w = ptr(kf.kernel);
  PResolution r = start_resolution(w, 2);
  CHECK(r.complete);
  REQUIRE(r.p0.summands == std::vector<int>{2});
  // the generator sits at level 2 with filtration 2: the difference (1)-(2)
  CHECK(r.augmentation[0].level == 2);

  // the realized augmentation is onto at every level
  for (int m = 0; m <= 4; ++m)
    CHECK(exactalg::hom_cokernel(r.realize(0, m)).is_trivial());

  // one more step stays levelwise exact: kernel of step 0 equals image of step 1
  r = extend_resolution(r, 1, 3);
  for (int m = 0; m <= 4; ++m) {
    exactalg::GroupHom d0 = r.realize(0, m), d1 = r.realize(1, m);
    CHECK(d0.compose(d1).is_zero_map());
    exactalg::Snf s0 = exactalg::smith_normal_form(d0.matrix());
    exactalg::Snf s1 = exactalg::smith_normal_form(d1.matrix());
    CHECK(s1.rank == d0.matrix().cols() - s0.rank);
  }
}

TEST_CASE("builtin functor names") {
  CHECK(builtin_functor("Z", 3).level(2).decompose() == exactalg::Decomposition{1, {}});
  CHECK(builtin_functor("zero", 2).level(0).is_trivial());
  CHECK(builtin_functor("P(2)", 4).level(2).num_generators() == 2);
  CHECK(builtin_functor("truncP(1,2)", 4).level(3).is_trivial());
  CHECK_THROWS(builtin_functor("Q(1)", 3));
}
