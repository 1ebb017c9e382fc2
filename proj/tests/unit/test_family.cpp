#include <doctest.h>

#include "apnforge/automorphism.hpp"
#include "apnforge/family.hpp"
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

std::vector<Elem> outside_L(const Field& K, int k, std::size_t count) {
  std::vector<Elem> out;
  for (Elem a = 0; a < K.size() && out.size() < count; ++a) {
    if (!in_subfield(K, a, k)) out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("parameters and construction") {
  const FamilyParams p = make_family_params(3, 1);
  CHECK(p.field->degree() == 6);
  CHECK(p.b == 2);
  CHECK(p.c == outside_L(*p.field, 3, 1)[0]);
  CHECK(kind_of([] { make_family_params(3, 3); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { make_family_params(4, 1); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { make_family_params(3, 2); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { make_family_params(3, 1, Elem{1}); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { make_family_params(3, 1, std::nullopt, Elem{1}); }) == ErrorKind::BadParams);

  for (int s : {1, 5}) {
    const FamilyParams q = make_family_params(3, s);
    const FunctionTable f = build_family(q);
    CHECK(f.values[0] == 0);
    CHECK(oracle::differential_uniformity(f.values) == 2);
    CHECK(build_code(f).dimension() == 13);
    // Literal trinomial b x^(2^s+1) + (b x^(2^s+1))^(2^k) + c x^(2^k+1).
    const Field& K = *q.field;
    for (Elem x = 0; x < 64; ++x) {
      const auto m = K.modulus();
      const oracle::u32 t = oracle::mul(q.b, oracle::pow(x, (1u << s) + 1, m, 6), m, 6);
      const oracle::u32 expect = t ^ oracle::pow(t, 8, m, 6) ^ oracle::mul(q.c, oracle::pow(x, 9, m, 6), m, 6);
      REQUIRE(f.values[x] == expect);
    }
  }
}

TEST_CASE("c-independence") {
  for (int s : {1, 5}) {
    const FamilyParams p = make_family_params(3, s);
    CHECK(verify_c_independence(p, p.c));
    for (Elem d : outside_L(*p.field, 3, 8)) CHECK(verify_c_independence(p, d));
    CHECK(kind_of([&] { verify_c_independence(p, 1); }) == ErrorKind::BadParams);
  }
}

TEST_CASE("known automorphisms") {
  const FamilyParams p = make_family_params(3, 1);
  const Field& K = *p.field;
  const FunctionTable f = build_family(p);
  const BinaryCode c = build_code(f);

  const Permutation w = family_automorphism(p, FamilyAut::Omega);
  CHECK(element_order(w) == 3);
  CHECK(is_automorphism(c, w));
  const Elem omega = family_omega(p);
  for (Elem x = 0; x < 64; ++x) CHECK(f.values[K.mul(omega, x)] == f.values[x]);

  const Permutation z = family_automorphism(p, FamilyAut::SubfieldMult);
  CHECK(element_order(z) == 7);
  CHECK(is_automorphism(c, z));
  CHECK(kind_of([&] { family_automorphism(p, FamilyAut::SubfieldMult, 2); }) == ErrorKind::BadParams);

  // f_{c,s}(zx) = z^(2^s+1) f_{c z^(1-2^s)}(x) for every z in L*.
  for (Elem zz = 1; zz < 64; ++zz) {
    if (!in_subfield(K, zz, 3)) continue;
    FamilyParams q = p;
    q.c = K.mul(p.c, K.pow(zz, 1 - 2));
    const FunctionTable g = build_family(q);
    for (Elem x = 0; x < 64; ++x) {
      REQUIRE(f.values[K.mul(zz, x)] == K.mul(K.pow(zz, 3), g.values[x]));
    }
  }

  const Permutation d = family_automorphism(p, FamilyAut::Delta);
  CHECK(element_order(d) == 9);
  CHECK(power(d, 3) == mult_perm(K, omega));
  CHECK(power(d, 9).is_identity());
  CHECK(is_automorphism(c, d));  // c-independence carries delta over to the default c
  CHECK(kind_of([] { family_automorphism(make_family_params(3, 5), FamilyAut::Delta); }) ==
        ErrorKind::DeltaRequiresS1);
}

TEST_CASE("subgroup U") {
  const FamilyParams p = make_family_params(3, 1);
  const SubgroupU u = subgroup_U(p);
  CHECK(u.group.order() == 1344);
  CHECK(u.expected == 1344);
  const auto& g = u.group.generators;
  CHECK(g[u.noncommuting.first] * g[u.noncommuting.second] !=
        g[u.noncommuting.second] * g[u.noncommuting.first]);
  const BinaryCode c = build_code(build_family(p));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) CHECK(is_automorphism(c, u.group.chain.random_element(rng)));
  CHECK(subgroup_U(make_family_params(5, 1)).group.order() == 95232);
}

TEST_CASE("full automorphism group at k = 3") {
  const FamilyParams p = make_family_params(3, 1);
  const auto r = full_automorphism_group(build_code(build_family(p)));
  CHECK(r.group.order() == 4032);
  CHECK(r.group.contains(family_automorphism(p, FamilyAut::Delta)));
}

TEST_CASE("relative trace words vanish for beta in L") {
  for (int s : {1, 5}) {
    const FamilyParams p = make_family_params(3, s);
    const Field& K = *p.field;
    for (Elem beta = 0; beta < 64; ++beta) {
      if (!in_subfield(K, beta, 3)) continue;
      for (Elem x = 0; x < 64; ++x) {
        const Elem head = K.mul(p.b, K.pow(x, (1 << s) + 1));
        REQUIRE(K.trace(K.mul(beta, rel_trace(K, head, 3))) == 0);
      }
    }
  }
}

TEST_CASE("Gold comparison certificates") {
  for (int s : {1, 5}) {
    const FamilyParams p = make_family_params(3, s);
    for (int r : {1, 5}) {
      const InequivalenceCertificate cert = gold_comparison(p, r);
      CHECK(cert.verdict == Verdict::NotCczEquivalent);
      CHECK_FALSE(cert.codes_equal);
      CHECK(cert.quadratic_flags == std::pair{true, true});
      CHECK(cert.code_dims == std::pair<std::size_t, std::size_t>{13, 13});
      CHECK(cert.reasoning.size() >= 4);
    }
    CHECK(kind_of([&] { gold_comparison(p, 3); }) == ErrorKind::BadParams);
  }
  const FunctionTable gold = evaluate(gold_poly(make_field(6), 1));
  const InequivalenceCertificate self = compare_with_gold(gold, 1, std::nullopt);
  CHECK(self.verdict == Verdict::CczEquivalent);
  CHECK(self.codes_equal);
  // x^33 = (x^3)^32 on GF(64), so r = 5 gives the same code.
  CHECK(compare_with_gold(gold, 5, std::nullopt).verdict == Verdict::CczEquivalent);
  const FieldRef k6 = make_field(6);
  const FunctionTable h1 = evaluate(builtin_function("dillon_h1", k6).poly);
  const InequivalenceCertificate open = compare_with_gold(h1, 1, std::nullopt);
  CHECK_FALSE(open.codes_equal);
  CHECK(open.verdict == Verdict::Inconclusive);
  CHECK(to_string(Verdict::NotCczEquivalent) == "NOT_CCZ_EQUIVALENT");
}
