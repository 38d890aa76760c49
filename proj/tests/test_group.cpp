#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "formation_lab/families.hpp"
#include "formation_lab/isomorphism.hpp"
#include "oracle/brute_force.hpp"
#include "support.hpp"

using namespace formation_lab;
using test_support::cyc;
using test_support::elem_of;

TEST_CASE("closure of permutation generators", "[group]") {
  CHECK(group_from_generators({Permutation::identity(4)})->order() == 1);
  const auto s3 = group_from_generators({cyc(3, {{1, 2}}), cyc(3, {{1, 2, 3}})}, "S3");
  CHECK(s3->order() == 6);
  CHECK(s3->permutation(0) == Permutation::identity(3));
  const auto a5 = group_from_generators({cyc(5, {{1, 2, 3, 4, 5}}), cyc(5, {{3, 4, 5}})});
  CHECK(a5->order() == 60);

  // same sizes as the map-based closure
  CHECK(oracle::closure({oracle::from_cycles(5, {{1, 2, 3, 4, 5}}), oracle::from_cycles(5, {{3, 4, 5}})}).size() == 60);
}

TEST_CASE("closure errors", "[group]") {
  CHECK_THROWS_MATCHES(group_from_generators({}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::InvalidPermutation; }));
  CHECK_THROWS_AS(Permutation(std::vector<Permutation::Point>{0, 0, 1}), Error);
  CHECK_THROWS_AS(cyc(3, {{1, 4}}), Error);
  CHECK_THROWS_AS(cyc(3, {{1, 2}, {2, 3}}), Error);

  Limits small = limits();
  small.max_group_order = 100;
  ScopedLimits guard(small);
  try {
    families::symmetric(5);
    FAIL("expected ClosureTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ClosureTooLarge);
  }
}

TEST_CASE("element numbering is breadth-first and deterministic", "[group]") {
  const auto a = families::symmetric(4);
  const auto b = families::symmetric(4);
  CHECK(std::equal(a->table().begin(), a->table().end(), b->table().begin(), b->table().end()));
  for (Elem x = 0; x < a->order(); ++x) {
    CHECK(a->mul(0, x) == x);
    CHECK(a->mul(x, 0) == x);
  }
  // generators come right after the identity
  CHECK(a->permutation(1) == cyc(4, {{1, 2}}));
  CHECK(a->permutation(2) == cyc(4, {{1, 2, 3, 4}}));
}

TEST_CASE("subgroup generation", "[group]") {
  const auto s3 = families::symmetric(3);
  CHECK(subgroup_generated(s3, {}).is_trivial());
  CHECK(subgroup_generated(s3, {elem_of(s3, cyc(3, {{1, 2, 3}}))}).size() == 3);
  CHECK(subgroup_generated(s3, s3->generators()).is_whole());
  CHECK_THROWS_AS(subgroup_generated(s3, {Elem{6}}), Error);
}

TEST_CASE("set products", "[group]") {
  const auto s3 = families::symmetric(3);
  const Subgroup a = subgroup_generated(s3, {elem_of(s3, cyc(3, {{1, 2}}))});
  const Subgroup b = subgroup_generated(s3, {elem_of(s3, cyc(3, {{1, 3}}))});
  const auto ab = set_product(a, b);
  CHECK(ab.elements.size() == 4);
  CHECK_FALSE(ab.is_subgroup);
  const auto aa = set_product(a, a);
  CHECK(aa.is_subgroup);
  CHECK(aa.elements == a.members());
  const Subgroup a3 = derived_subgroup(s3);
  CHECK(set_product(a3, b).is_subgroup);
  CHECK(set_product(b, a3).is_subgroup);

  const auto s4 = families::symmetric(4);
  CHECK_THROWS_AS(set_product(a, whole_group(s4)), Error);
}

TEST_CASE("normal closures", "[group]") {
  const auto s3 = families::symmetric(3);
  CHECK(normal_closure(s3, {}).is_trivial());
  CHECK(normal_closure(s3, {elem_of(s3, cyc(3, {{1, 2}}))}).is_whole());

  const auto a5 = families::alternating(5);
  const auto g = direct_product(a5, a5, "A5xA5");
  // the first generator is (a, 1) for a generator a of the left factor
  const Elem left = g->generators().front();
  const Subgroup l = normal_closure(g, {left});
  CHECK(l.size() == 60);
  CHECK(is_normal(l));
}

TEST_CASE("centralizers of sections", "[group]") {
  const auto s4 = families::symmetric(4);
  const Subgroup v4 = normal_closure(s4, {elem_of(s4, cyc(4, {{1, 2}, {3, 4}}))});
  REQUIRE(v4.size() == 4);
  const Subgroup c = centralizer_of_section(make_section(v4, trivial_subgroup(s4)));
  CHECK(c == v4);
  CHECK(centralizer_of_section(make_section(v4, v4)).is_whole());

  const auto ab = families::abelian({2, 6});
  const Subgroup h = subgroup_generated(ab, {Elem{1}});
  CHECK(centralizer_of_section(make_section(h, trivial_subgroup(ab))).is_whole());

  // the point stabilizer S3 is not normalized by S4
  const Subgroup s3 = subgroup_generated(s4, {elem_of(s4, cyc(4, {{1, 2}})), elem_of(s4, cyc(4, {{1, 2, 3}}))});
  CHECK_THROWS_AS(centralizer_of_section(make_section(s3, trivial_subgroup(s4))), Error);
}

TEST_CASE("quotients", "[group]") {
  const auto s4 = families::symmetric(4);
  const auto q1 = quotient_group(trivial_subgroup(s4));
  CHECK(are_isomorphic(q1.group, s4) == IsoResult::Isomorphic);
  CHECK(quotient_group(whole_group(s4)).group->order() == 1);

  const auto sl = families::special_linear_2(5);
  REQUIRE(sl->order() == 120);
  const Subgroup z = center(sl);
  CHECK(z.size() == 2);
  const auto q = quotient_group(z);
  CHECK(q.group->order() == 60);
  CHECK(normal_closure(q.group, {Elem{1}}).is_whole());
  CHECK(q.proj[0] == 0);
  CHECK(q.preimage(trivial_subgroup(q.group)) == z);

  const Subgroup s3 = subgroup_generated(s4, {elem_of(s4, cyc(4, {{1, 2}})), elem_of(s4, cyc(4, {{1, 2, 3}}))});
  CHECK_THROWS_AS(quotient_group(s3), Error);
}

TEST_CASE("derived subgroup and center", "[group]") {
  const auto c6 = families::cyclic(6);
  CHECK(derived_subgroup(c6).is_trivial());
  CHECK(center(c6).is_whole());
  const auto s3 = families::symmetric(3);
  CHECK(derived_subgroup(s3).size() == 3);
  CHECK(center(s3).is_trivial());
  CHECK(derived_subgroup(families::alternating(5)).is_whole());
}

TEST_CASE("semidirect product of a section", "[group]") {
  const auto s4 = families::symmetric(4);
  const Subgroup v4 = normal_closure(s4, {elem_of(s4, cyc(4, {{1, 2}, {3, 4}}))});
  const auto sd = section_semidirect(make_section(v4, trivial_subgroup(s4)));
  CHECK(sd->order() == 24);
  CHECK(are_isomorphic(sd, s4) == IsoResult::Isomorphic);
  CHECK(verify_group_axioms(sd).ok);

  const auto sl = families::special_linear_2(5);
  const auto c2 = section_semidirect(make_section(center(sl), trivial_subgroup(sl)));
  CHECK(are_isomorphic(c2, families::cyclic(2)) == IsoResult::Isomorphic);

  // central section: the acting quotient is trivial
  const auto d8 = families::dihedral(4);
  const Subgroup z = center(d8);
  CHECK(are_isomorphic(section_semidirect(make_section(z, trivial_subgroup(d8))), families::cyclic(2)) ==
        IsoResult::Isomorphic);
}

TEST_CASE("isomorphism test separates small groups", "[group]") {
  CHECK(are_isomorphic(families::dihedral(4), families::dicyclic(2)) == IsoResult::NotIsomorphic);
  CHECK(are_isomorphic(families::cyclic(6), families::abelian({2, 3})) == IsoResult::Isomorphic);
  CHECK(are_isomorphic(families::symmetric(3), families::dihedral(3)) == IsoResult::Isomorphic);
  CHECK(are_isomorphic(families::special_linear_2(3), families::symmetric(4)) == IsoResult::NotIsomorphic);
}

namespace {

std::vector<GroupPtr> property_groups() {
  return {families::symmetric(3),       families::symmetric(4),  families::dihedral(6), families::dicyclic(2),
          families::alternating(4),     families::abelian({2, 4}), families::special_linear_2(3),
          families::alternating(5),     families::dihedral(10)};
}

}  // namespace

TEST_CASE("group axioms hold for every family", "[group][property]") {
  for (const auto& g : property_groups()) {
    INFO(g->name());
    const auto r = verify_group_axioms(g);
    CHECK(r.ok);
    CHECK(r.exhaustive == (g->order() <= 512));
  }
  const auto big = families::symmetric(5);
  const auto r = verify_group_axioms(direct_product(big, families::cyclic(5)));
  CHECK(r.ok);
  CHECK_FALSE(r.exhaustive);
}

TEST_CASE("product counting identity and permutability", "[group][property]") {
  std::mt19937_64 rng(7);
  for (const auto& g : property_groups()) {
    INFO(g->name());
    for (int i = 0; i < 60; ++i) {
      const Subgroup a = test_support::random_subgroup(g, rng);
      const Subgroup b = test_support::random_subgroup(g, rng);
      const auto ab = set_product(a, b);
      const auto ba = set_product(b, a);
      CHECK(ab.elements.size() * intersection(a, b).size() == a.size() * b.size());
      CHECK(ab.is_subgroup == (ab.elements == ba.elements));
      CHECK(ab.is_subgroup == permutes(a, b));
    }
  }
}

TEST_CASE("quotient preimage recovers the kernel", "[group][property]") {
  for (const auto& g : property_groups()) {
    for (const auto& cls : g->conjugacy_classes()) {
      const Subgroup n = normal_closure(g, {cls.front()});
      const auto q = quotient_group(n);
      CHECK(q.group->order() * n.size() == g->order());
      CHECK(q.preimage(trivial_subgroup(q.group)) == n);
      for (Elem x = 0; x < g->order(); x += 7)
        for (Elem y = 0; y < g->order(); y += 5) CHECK(q.proj[g->mul(x, y)] == q.group->mul(q.proj[x], q.proj[y]));
    }
  }
}

TEST_CASE("semidirect order identity", "[group][property]") {
  for (const auto& g : property_groups()) {
    for (const auto& ct : g->conjugacy_classes()) {
      const Subgroup top = normal_closure(g, {ct.front()});
      for (const auto& cb : g->conjugacy_classes()) {
        const Subgroup bottom = normal_closure(g, {cb.front()});
        if (!bottom.subset_of(top)) continue;
        const Section sec = make_section(top, bottom);
        const Subgroup c = centralizer_of_section(sec);
        CHECK(bottom.subset_of(c));
        const auto sd = section_semidirect(sec, c);
        CHECK(sd->order() == sec.factor_order * (g->order() / c.size()));
      }
    }
  }
}

TEST_CASE("subgroup operations agree with the brute-force oracle", "[group][oracle]") {
  const auto s4 = families::symmetric(4);
  const auto o = oracle::closure({oracle::from_cycles(4, {{1, 2}}), oracle::from_cycles(4, {{1, 2, 3, 4}})});
  std::multiset<std::size_t> lib, ref;
  for (const auto& cls : s4->conjugacy_classes()) lib.insert(normal_closure(s4, {cls.front()}).size());
  for (const auto& c : oracle::classes(o)) {
    oracle::Mask m(o.size(), false);
    for (int x : c) m[x] = true;
    // normal closure of a class is the subgroup it generates
    ref.insert(static_cast<std::size_t>(oracle::count(oracle::generate(o, m))));
  }
  CHECK(lib == ref);
}
