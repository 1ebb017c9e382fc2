#include <doctest.h>

#include <algorithm>
#include <random>

#include "apnforge/automorphism.hpp"
#include "apnforge/family.hpp"
#include "apnforge/permgrp.hpp"
#include "oracles.hpp"

using namespace apnforge;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an apnforge::Error");
  return ErrorKind::Parse;
}

BinaryCode gold_code(int n, int r = 1) { return build_code(evaluate(gold_poly(make_field(n), r))); }

oracle::Perm raw(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

std::vector<oracle::Perm> raw(const std::vector<Permutation>& ps) {
  std::vector<oracle::Perm> out;
  for (const auto& p : ps) out.push_back(raw(p));
  return out;
}

std::vector<Permutation> emg(const Field& f) {
  std::vector<Permutation> gens = translation_generators(f);
  gens.push_back(mult_perm(f, f.generator()));
  gens.push_back(frobenius_perm(f, 1));
  return gens;
}

Permutation from_cycles(std::size_t n, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), 0u);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
  }
  return Permutation(img);
}

}  // namespace

TEST_CASE("permutation basics") {
  CHECK(kind_of([] { Permutation({0, 0, 1}); }) == ErrorKind::SizeMismatch);
  CHECK(kind_of([] { Permutation({0, 3}); }) == ErrorKind::SizeMismatch);
  const Permutation p({1, 2, 0, 3});
  const Permutation q({0, 1, 3, 2});
  CHECK((p * q)(2) == p(q(2)));
  CHECK((p * inverse(p)).is_identity());
  CHECK(power(p, 3).is_identity());
  CHECK(power(p, -1) == inverse(p));
  CHECK(element_order(p) == 3);
  CHECK(element_order(p * q) == 4);
  CHECK(element_order(Permutation::identity(5)) == 1);
  CHECK(fixed_points(p) == 1);
}

TEST_CASE("canonical permutations of K") {
  const FieldRef f4 = make_field(4);
  const FieldRef f6 = make_field(6);
  CHECK(translation_perm(*f4, 0).is_identity());
  for (Elem a = 1; a < 16; ++a) {
    CHECK(element_order(translation_perm(*f4, a)) == 2);
    for (Elem b = 0; b < 16; ++b) {
      CHECK(translation_perm(*f4, a) * translation_perm(*f4, b) == translation_perm(*f4, a ^ b));
    }
  }
  CHECK(mult_perm(*f4, 1).is_identity());
  CHECK(element_order(mult_perm(*f4, 2)) == 15);
  CHECK(mult_perm(*f4, 7)(0) == 0);
  for (Elem a = 1; a < 64; ++a) CHECK(element_order(mult_perm(*f6, a)) == f6->multiplicative_order(a));
  CHECK(kind_of([&] { mult_perm(*f4, 0); }) == ErrorKind::ZeroScalar);
  CHECK(frobenius_perm(*f4, 0).is_identity());
  CHECK(power(frobenius_perm(*f4, 1), 4).is_identity());
  CHECK(element_order(frobenius_perm(*f6, 1)) == 6);
}

TEST_CASE("is_automorphism") {
  const FieldRef f4 = make_field(4);
  const BinaryCode c4 = gold_code(4);
  CHECK(is_automorphism(c4, Permutation::identity(16)));
  CHECK(is_automorphism(c4, mult_perm(*f4, 2)));
  CHECK(is_automorphism(gold_code(5), frobenius_perm(*make_field(5), 1)));
  for (int n = 4; n <= 6; ++n) {
    const FieldRef f = make_field(n);
    const BinaryCode q = build_code(evaluate(random_quadratic_poly(f, 40 + n)));
    for (Elem k = 0; k < f->size(); ++k) CHECK(is_automorphism(q, translation_perm(*f, k)));
  }
  CHECK_FALSE(is_automorphism(c4, from_cycles(16, {{0, 1}})));
  CHECK(kind_of([&] { is_automorphism(c4, Permutation::identity(8)); }) == ErrorKind::SizeMismatch);
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    std::vector<Point> img(16);
    std::iota(img.begin(), img.end(), 0u);
    std::shuffle(img.begin(), img.end(), rng);
    const Permutation p(img);
    CHECK(is_automorphism(c4, p) == code_equal(permute_code(c4, p), c4));
  }
}

TEST_CASE("group orders against breadth-first closure") {
  const FieldRef f4 = make_field(4);
  CHECK(group_order(translation_generators(*f4)).order() == 16);
  for (int n : {4, 5}) {
    const FieldRef f = make_field(n);
    const auto gens = emg(*f);
    const GroupOrder q = f->size();
    CHECK(group_order(gens).order() == q * (q - 1) * static_cast<GroupOrder>(n));
    CHECK(group_order(gens).order() == oracle::closure_size(raw(gens)));
  }
  const FieldRef f6 = make_field(6);
  CHECK(group_order(emg(*f6)).order() == 24192);
  const FamilyParams fp = make_family_params(3, 1);
  std::vector<Permutation> u = translation_generators(*fp.field);
  u.push_back(mult_perm(*fp.field, family_omega(fp)));
  u.push_back(mult_perm(*fp.field, family_subfield_generator(fp)));
  CHECK(group_order(u).order() == 1344);
  CHECK(oracle::closure_size(raw(u)) == 1344);
}

TEST_CASE("stabilizer chain membership, sampling, enumeration") {
  const FieldRef f4 = make_field(4);
  const PermGroup g = group_order(emg(*f4));
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    Permutation w = Permutation::identity(16);
    for (int i = 0; i < 10; ++i) w = w * g.generators[rng() % g.generators.size()];
    CHECK(g.contains(w));
    CHECK(g.contains(g.chain.random_element(rng)));
  }
  CHECK_FALSE(g.contains(from_cycles(16, {{0, 1}})));
  std::set<Permutation> all;
  g.chain.for_each_element([&](const Permutation& p) {
    all.insert(p);
    return true;
  });
  CHECK(all.size() == 960);
  CHECK(enumerate_elements(g).size() == 960);
  const PermGroup h = group_order(emg(*f4), 16, {5, 9});
  CHECK(h.chain.base_point(0) == 5);
  CHECK(h.chain.base_point(1) == 9);
  CHECK(h.order() == 960);
  std::vector<Permutation> sym{from_cycles(16, {{0, 1}}),
                               from_cycles(16, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}})};
  const PermGroup s16 = group_order(sym);
  CHECK(to_string(s16.order()) == "20922789888000");
  CHECK(kind_of([&] { enumerate_elements(s16); }) == ErrorKind::GroupTooLarge);
}

TEST_CASE("full automorphism groups") {
  const FieldRef f4 = make_field(4);
  const auto rm = full_automorphism_group(first_order_rm(f4));
  CHECK(rm.group.order() == 322560);

  // Gold n = 4: the search returns a group of order 5760. The count of
  // affine maps of GF(2)^4 preserving the code, enumerated directly, agrees.
  const BinaryCode c4 = gold_code(4);
  const auto a4 = full_automorphism_group(c4);
  std::uint64_t affine = 0;
  for (std::uint32_t m = 0; m < 65536; ++m) {
    std::vector<Point> lin(16);
    for (Elem x = 0; x < 16; ++x) {
      Elem y = 0;
      for (int i = 0; i < 4; ++i) {
        if (x >> i & 1u) y ^= (m >> (4 * i)) & 15u;
      }
      lin[x] = y;
    }
    std::vector<Point> sorted = lin;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    for (Elem t = 0; t < 16; ++t) {
      std::vector<Point> img(16);
      for (Elem x = 0; x < 16; ++x) img[x] = lin[x] ^ t;
      affine += is_automorphism(c4, Permutation(img)) ? 1 : 0;
    }
  }
  CHECK(a4.group.order() == affine);
  CHECK(a4.group.order() == 5760);
  CHECK(a4.group.order() % 960 == 0);
  for (const auto& g : emg(*f4)) CHECK(a4.group.contains(g));

  CHECK(full_automorphism_group(gold_code(5)).group.order() == 4960);
  const auto a6 = full_automorphism_group(gold_code(6));
  CHECK(a6.group.order() == 24192);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) CHECK(is_automorphism(gold_code(6), a6.group.chain.random_element(rng)));

  const FieldRef f6 = make_field(6);
  for (const char* name : {"dillon_h1", "dillon_h2"}) {
    CHECK(full_automorphism_group(build_code(evaluate(builtin_function(name, f6).poly))).group.order() ==
          320);
  }
}

TEST_CASE("automorphism search options and limits") {
  const FieldRef f6 = make_field(6);
  const BinaryCode c = gold_code(6);
  AutSearchOptions seeded;
  seeded.seed = translation_generators(*f6);
  const auto r = full_automorphism_group(c, seeded);
  CHECK(r.group.order() == 24192);
  for (const auto& s : seeded.seed) CHECK(r.group.contains(s));
  AutSearchOptions bad;
  bad.seed = {from_cycles(64, {{0, 1}})};
  CHECK(kind_of([&] { full_automorphism_group(c, bad); }) == ErrorKind::BadParams);
  AutSearchOptions rushed;
  rushed.budget_seconds = 0;
  CHECK(kind_of([&] { full_automorphism_group(c, rushed); }) == ErrorKind::Timeout);
  const BinaryCode big = build_code(evaluate(gold_poly(make_field(11), 1)));
  CHECK(kind_of([&] { full_automorphism_group(big); }) == ErrorKind::TooLong);
}

TEST_CASE("2-transitivity") {
  for (int n : {4, 5}) {
    const auto a = full_automorphism_group(gold_code(n));
    CHECK(is_two_transitive(a.group));
    // Orbit of the pair (0, 1) over every element.
    std::set<std::pair<Point, Point>> orbit;
    a.group.chain.for_each_element([&](const Permutation& p) {
      orbit.insert({p(0), p(1)});
      return true;
    });
    const std::size_t q = std::size_t{1} << n;
    CHECK(orbit.size() == q * (q - 1));
  }
  CHECK_FALSE(is_two_transitive(group_order(translation_generators(*make_field(4)))));
}

TEST_CASE("unique cyclic subgroup of order 21 in K* : Gal at k = 3") {
  const FieldRef f6 = make_field(6);
  const PermGroup g = group_order({mult_perm(*f6, f6->generator()), frobenius_perm(*f6, 1)});
  REQUIRE(g.order() == 378);
  std::set<std::set<Permutation>> cyclic;
  for (const Permutation& p : enumerate_elements(g)) {
    if (element_order(p) != 21) continue;
    std::set<Permutation> sub;
    Permutation x = Permutation::identity(64);
    for (int i = 0; i < 21; ++i) {
      sub.insert(x);
      x = x * p;
    }
    cyclic.insert(sub);
  }
  CHECK(cyclic.size() == 1);
}

TEST_CASE("regular elementary abelian subgroups") {
  const FieldRef f4 = make_field(4);
  const PermGroup e = group_order(translation_generators(*f4));
  const auto self = regular_elem_abelian_subgroups(e);
  REQUIRE(self.size() == 1);
  CHECK(self[0].order() == 16);

  const auto a4 = full_automorphism_group(gold_code(4));
  const auto subs = regular_elem_abelian_subgroups(a4.group);
  REQUIRE(subs.size() == 1);
  for (const auto& t : translation_generators(*f4)) CHECK(subs[0].contains(t));

  // S4 on 4 points (the affine group of GF(2)^2) has only the Klein group.
  const PermGroup s4 = group_order({from_cycles(4, {{0, 1}}), from_cycles(4, {{0, 1, 2, 3}})});
  CHECK(s4.order() == 24);
  CHECK(regular_elem_abelian_subgroups(s4).size() == 1);
  CHECK(full_automorphism_group(first_order_rm(make_field(2))).group.order() == 24);

  const FieldRef f6 = make_field(6);
  const auto h1 = full_automorphism_group(build_code(evaluate(builtin_function("dillon_h1", f6).poly)));
  const auto hs = regular_elem_abelian_subgroups(h1.group);
  REQUIRE_FALSE(hs.empty());
  const PermGroup e6 = group_order(translation_generators(*f6));
  for (const auto& s : hs) {
    CHECK(s.order() == 64);
    const auto h = conjugating_element(h1.group, s, e6);
    REQUIRE(h.has_value());
    for (const auto& a : s.generators) CHECK(e6.contains(*h * a * inverse(*h)));
  }

  const PermGroup big = group_order({from_cycles(128, {{0, 1}})});
  CHECK(kind_of([&] { regular_elem_abelian_subgroups(big); }) == ErrorKind::DegreeTooLarge);
  const PermGroup s16 = group_order({from_cycles(16, {{0, 1}}),
                                     from_cycles(16, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}})});
  CHECK(kind_of([&] { regular_elem_abelian_subgroups(s16); }) == ErrorKind::GroupTooLarge);
}

TEST_CASE("conjugating elements") {
  const PermGroup s4 = group_order({from_cycles(4, {{0, 1}}), from_cycles(4, {{0, 1, 2, 3}})});
  const PermGroup a = group_order({from_cycles(4, {{0, 1}, {2, 3}})});
  const PermGroup b = group_order({from_cycles(4, {{0, 2}, {1, 3}})});
  const PermGroup t = group_order({from_cycles(4, {{0, 1}})});
  const auto same = conjugating_element(s4, a, a);
  REQUIRE(same.has_value());
  CHECK(a.contains(*same * a.generators[0] * inverse(*same)));
  const auto ab = conjugating_element(s4, a, b);
  REQUIRE(ab.has_value());
  CHECK(b.contains(*ab * a.generators[0] * inverse(*ab)));
  CHECK_FALSE(conjugating_element(s4, a, t).has_value());
  const PermGroup c3 = group_order({from_cycles(4, {{0, 1, 2}})});
  CHECK(kind_of([&] { conjugating_element(c3, a, a); }) == ErrorKind::NotSubgroup);
}
