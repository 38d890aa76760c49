#include <catch_amalgamated.hpp>

#include <random>

#include "formation_lab/families.hpp"
#include "formation_lab/products.hpp"
#include "support.hpp"

using namespace formation_lab;
using test_support::catalog_up_to;
using test_support::cyc;
using test_support::elem_of;

namespace {

const Formation U = formations::supersoluble();
const Formation NA = formations::metanilpotent();
const Formation All = formations::all_groups();

Subgroup gen(const GroupPtr& G, std::vector<Permutation> ps) {
  std::vector<Elem> xs;
  for (const auto& p : ps) xs.push_back(elem_of(G, p));
  return subgroup_generated(G, xs);
}

bool has_pair(const std::vector<Factorization>& fs, std::size_t a, std::size_t b) {
  return std::any_of(fs.begin(), fs.end(), [&](const Factorization& f) {
    return (f.H.size() == a && f.K.size() == b) || (f.H.size() == b && f.K.size() == a);
  });
}

std::size_t count_applicable(const std::vector<LemmaVerdict>& vs, const std::string& id) {
  return std::count_if(vs.begin(), vs.end(), [&](const LemmaVerdict& v) { return v.id == id && v.applicable; });
}

}  // namespace

TEST_CASE("subgroup enumeration", "[products]") {
  CHECK(all_subgroups(families::symmetric(3)).size() == 6);
  CHECK(all_subgroups(families::symmetric(4)).size() == 30);
  CHECK(all_subgroups(families::alternating(5)).size() == 59);
  CHECK(all_subgroups(families::symmetric(5)).size() == 156);
  CHECK(all_subgroups(families::dicyclic(2)).size() == 6);
  CHECK(all_subgroups(families::dihedral(4)).size() == 10);
  CHECK(cyclic_subgroups(families::symmetric(4)).size() == 17);
  CHECK_THROWS_AS(all_subgroups(families::alternating(6)), Error);
}

TEST_CASE("mutual permutability", "[products]") {
  const auto s3 = families::symmetric(3);
  const Subgroup a3 = gen(s3, {cyc(3, {{1, 2, 3}})});
  const Subgroup t = gen(s3, {cyc(3, {{1, 2}})});
  CHECK(are_mutually_permutable(a3, t));
  CHECK(are_mutually_permutable(a3, t, PermutabilityMode::Full));

  const auto a5 = families::alternating(5);
  const Subgroup a4 = gen(a5, {cyc(5, {{1, 2, 3}}), cyc(5, {{2, 3, 4}})});
  const Subgroup c5 = gen(a5, {cyc(5, {{1, 2, 3, 4, 5}})});
  REQUIRE(a4.size() == 12);
  CHECK_FALSE(are_mutually_permutable(a4, c5));
  CHECK_FALSE(are_mutually_permutable(a4, c5, PermutabilityMode::Full));

  const auto s4 = families::symmetric(4);
  const Subgroup v4 = gen(s4, {cyc(4, {{1, 2}, {3, 4}}), cyc(4, {{1, 3}, {2, 4}})});
  const Subgroup a4s = gen(s4, {cyc(4, {{1, 2, 3}}), cyc(4, {{2, 3, 4}})});
  CHECK(are_mutually_permutable(v4, a4s));
}

TEST_CASE("factorization search", "[products]") {
  CHECK(enumerate_mp_factorizations(families::cyclic(7)).empty());
  const auto s3 = enumerate_mp_factorizations(families::symmetric(3));
  CHECK(has_pair(s3, 3, 2));
  const auto c6 = enumerate_mp_factorizations(families::cyclic(6));
  CHECK(has_pair(c6, 2, 3));
  for (const auto& f : enumerate_mp_factorizations(families::symmetric(4))) {
    CHECK(set_product(f.H, f.K).elements.size() == 24);
    CHECK(f.mutually_permutable);
    CHECK(f.H_normal == is_normal(f.H));
    CHECK_FALSE(f.H.is_whole());
    CHECK_FALSE(f.K.is_whole());
  }
  const auto all = enumerate_mp_factorizations(families::dihedral(6));
  const auto classes = enumerate_mp_factorizations(families::dihedral(6), true);
  CHECK(classes.size() <= all.size());
  CHECK_FALSE(classes.empty());
}

TEST_CASE("factor inheritance on explicit groups", "[products]") {
  CHECK(theorem_b_verify(families::cyclic(5), U).empty());
  const auto s3s3 = direct_product(families::symmetric(3), families::symmetric(3));
  const auto vs = theorem_b_verify(s3s3, U);
  CHECK_FALSE(vs.empty());
  for (const auto& v : vs) {
    CHECK(v.applicable);
    CHECK(v.holds);
  }
  CHECK_THROWS_AS(theorem_b_verify(s3s3, formations::nilpotent()), Error);
}

TEST_CASE("product closure on SL(2,5) x S3", "[products]") {
  const auto sl = families::special_linear_2(5);
  const auto G = direct_product(sl, families::symmetric(3));
  const Subgroup H = derived_subgroup(G);
  REQUIRE(H.size() == 360);
  Subgroup K = trivial_subgroup(G);
  for (const auto& s : all_subgroups(centralizer(soluble_residual(G)))) {
    if (s.size() == 6 && !as_group(s).group->is_abelian()) K = s;
  }
  REQUIRE(K.size() == 6);
  for (const auto& F : {U, NA, All}) {
    const LemmaVerdict v = theorem_c_check(H, K, F);
    CHECK(v.applicable);
    CHECK(v.holds);
  }
  const auto c2c2 = families::abelian({2, 2});
  for (const auto& v : theorem_c_verify(c2c2, U)) CHECK((!v.applicable || v.holds));
}

TEST_CASE("supporting statements on explicit groups", "[products]") {
  const auto a5 = families::alternating(5);
  const auto a5a5 = direct_product(a5, a5);
  const auto big = lemma_suite(a5a5, U);
  CHECK(count_applicable(big, "ca-residual-centralizes-radical") == 1);

  const auto sl = lemma_suite(families::special_linear_2(5), U);
  CHECK(count_applicable(sl, "ca-residual-centralizes-radical") == 1);
  CHECK(count_applicable(sl, "central-iff-local-value") == 1);

  const auto a5c2 = direct_product(a5, families::cyclic(2));
  const auto vs = lemma_suite(a5c2, U);
  CHECK(count_applicable(vs, "mp-nonabelian-minimal-prefactorised") > 0);
  for (const auto& id : lemma_ids()) {
    INFO(id);
    CHECK(std::any_of(vs.begin(), vs.end(), [&](const LemmaVerdict& v) { return v.id == id; }));
  }
  for (const auto& v : vs) {
    INFO(v.id << ": " << v.witness);
    CHECK((!v.applicable || v.holds));
  }
}

TEST_CASE("Baer checks", "[products]") {
  const BaerReport small = baer_checks({families::abelian({2, 6}), families::symmetric(3)});
  CHECK(small.counterexamples.empty());
  CHECK_FALSE(small.smallest_witness.has_value());
  CHECK(small.pairs_checked > 0);

  const auto s3 = families::symmetric(3);
  const BaerReport wr = baer_checks({families::wreath_with_c2(s3, "S3wrC2")});
  CHECK(wr.counterexamples.empty());
  REQUIRE(wr.smallest_witness.has_value());
  CHECK(wr.smallest_witness->order == 72);
  CHECK_FALSE(wr.smallest_witness->derived_nilpotent);
}

TEST_CASE("cyclic and full permutability tests agree", "[products][property]") {
  std::mt19937_64 rng(37);
  std::vector<GroupPtr> groups;
  for (const auto& G : catalog_up_to(24)) groups.push_back(G);
  for (int i = 0; i < 10; ++i) {
    GroupPtr G = test_support::random_group(rng);
    if (G->order() <= 60) groups.push_back(G);
  }
  for (const auto& G : groups) {
    const auto subs = all_subgroups(G);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      for (std::size_t j = i; j < subs.size(); ++j) {
        INFO(G->name() << " " << subgroup_label(subs[i]) << " " << subgroup_label(subs[j]));
        CHECK(are_mutually_permutable(subs[i], subs[j]) ==
              are_mutually_permutable(subs[i], subs[j], PermutabilityMode::Full));
      }
    }
  }
}

TEST_CASE("images of mutually permutable factors stay mutually permutable", "[products][property]") {
  for (const auto& G : catalog_up_to(48)) {
    const auto facts = enumerate_mp_factorizations(G);
    if (facts.empty()) continue;
    for (const auto& n : normal_subgroups(G)) {
      const Quotient q = quotient_group(n);
      for (const auto& f : facts) {
        INFO(factorization_label(f) << " mod " << n.size());
        CHECK(are_mutually_permutable(q.image(f.H), q.image(f.K)));
      }
    }
  }
}

TEST_CASE("theorems and supporting statements hold on the small catalog", "[products][property]") {
  for (const auto& G : catalog_up_to(60)) {
    const auto facts = enumerate_mp_factorizations(G);
    for (const auto& F : {U, NA, All}) {
      std::vector<LemmaVerdict> vs = theorem_b_verify(G, F, facts);
      for (auto& v : theorem_c_verify(G, F, facts)) vs.push_back(std::move(v));
      for (auto& v : lemma_suite(G, F, facts)) vs.push_back(std::move(v));
      for (const auto& v : vs) {
        INFO(G->name() << " " << F.name() << " " << v.id << ": " << v.witness);
        CHECK((!v.applicable || v.holds));
      }
    }
  }
}
