#include <doctest.h>

#include <random>

#include "apnforge/gf2n.hpp"
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
}  // namespace

TEST_CASE("make_field: default table, validation, generator order") {
  CHECK(make_field(4)->modulus() == 0x13);
  CHECK(make_field(2)->modulus() == 0x7);
  CHECK(make_field(3)->modulus() == 0xB);
  CHECK(make_field(5)->modulus() == 0x25);
  CHECK(make_field(6)->modulus() == 0x5B);
  CHECK(make_field(8)->modulus() == 0x11D);
  CHECK(kind_of([] { make_field(4, 0x15); }) == ErrorKind::ReducibleModulus);
  CHECK(kind_of([] { make_field(4, 0x7); }) == ErrorKind::ReducibleModulus);
  CHECK(kind_of([] { make_field(1); }) == ErrorKind::UnsupportedDegree);
  CHECK(kind_of([] { make_field(17); }) == ErrorKind::UnsupportedDegree);
  // The class of x has order 63 in GF(2^6), counted by repeated multiplication.
  CHECK(oracle::mult_order(2, make_field(6)->modulus(), 6) == 63);
}

TEST_CASE("every default modulus is primitive") {
  for (int n = 2; n <= 16; ++n) {
    const FieldRef f = make_field(n);
    CAPTURE(n);
    CHECK(oracle::mult_order(2, f->modulus(), n) == (1ull << n) - 1);
    CHECK(f->is_primitive(2));
  }
}

TEST_CASE("mul agrees with shift-and-add") {
  const FieldRef f4 = make_field(4);
  CHECK(f4->mul(0x2, 0x9) == 0x1);
  for (int n = 2; n <= 6; ++n) {
    const FieldRef f = make_field(n);
    for (Elem a = 0; a < f->size(); ++a) {
      for (Elem b = 0; b < f->size(); ++b) {
        REQUIRE(f->mul(a, b) == oracle::mul(a, b, f->modulus(), n));
      }
    }
  }
  std::mt19937 rng(7);
  for (int n : {8, 11, 16}) {
    const FieldRef f = make_field(n);
    for (int i = 0; i < 2000; ++i) {
      const Elem a = rng() % f->size(), b = rng() % f->size();
      REQUIRE(f->mul(a, b) == oracle::mul(a, b, f->modulus(), n));
    }
  }
  // Non-primitive irreducible modulus x^4+x^3+x^2+x+1.
  const FieldRef g = make_field(4, 0x1F);
  for (Elem a = 0; a < 16; ++a) {
    for (Elem b = 0; b < 16; ++b) REQUIRE(g->mul(a, b) == oracle::mul(a, b, 0x1F, 4));
  }
  CHECK_FALSE(g->is_primitive(2));
}

TEST_CASE("pow, inverse, zero inverse") {
  const FieldRef f4 = make_field(4);
  const FieldRef f6 = make_field(6);
  CHECK(f4->pow(0x7, 1) == 0x7);
  CHECK(f4->pow(2, 15) == 1);
  CHECK(f6->pow(2, 63) == 1);
  CHECK(f6->pow(2, 21) != 1);
  for (Elem a = 1; a < 64; ++a) {
    CHECK(f6->mul(a, f6->pow(a, 62)) == 1);
    CHECK(f6->mul(a, f6->pow(a, -1)) == 1);
    CHECK(f6->pow(a, 5) == oracle::pow(a, 5, f6->modulus(), 6));
  }
  CHECK(kind_of([&] { f4->pow(0, -1); }) == ErrorKind::ZeroInverse);
  CHECK(kind_of([&] { f4->inv(0); }) == ErrorKind::ZeroInverse);
}

TEST_CASE("trace") {
  CHECK(make_field(4)->trace(0) == 0);
  CHECK(make_field(4)->trace(1) == 0);
  CHECK(make_field(3)->trace(1) == 1);
  const FieldRef f5 = make_field(5);
  int zeros = 0;
  for (Elem x = 0; x < 32; ++x) zeros += f5->trace(x) == 0;
  CHECK(zeros == 16);
  for (int n = 2; n <= 8; ++n) {
    const FieldRef f = make_field(n);
    for (Elem a = 0; a < f->size(); ++a) {
      const auto t = oracle::trace_value(a, f->modulus(), n);
      REQUIRE(t <= 1);
      REQUIRE(static_cast<int>(t) == f->trace(a));
    }
  }
}

TEST_CASE("subfields and relative trace") {
  const FieldRef f6 = make_field(6);
  const SubfieldSpec L = make_subfield(f6);
  CHECK(L.k == 3);
  std::vector<int> fiber(64, 0);
  int members = 0;
  for (Elem a = 0; a < 64; ++a) {
    const Elem t = rel_trace(*f6, a, 3);
    CHECK(in_subfield(*f6, t, 3));
    ++fiber[t];
    if (in_subfield(*f6, a, 3)) {
      ++members;
      CHECK(t == 0);
    }
  }
  CHECK(members == 8);
  for (Elem a = 0; a < 64; ++a) CHECK(fiber[a] == (in_subfield(*f6, a, 3) ? 8 : 0));
  CHECK(in_subfield(element(f6, 0), L));
  CHECK(in_subfield(element(f6, 1), L));
  CHECK_FALSE(in_subfield(element(f6, 2), L));
  CHECK(rel_trace(element(f6, 0), L).bits == 0);
  CHECK(kind_of([] { make_subfield(make_field(5)); }) == ErrorKind::OddDegree);
  CHECK(kind_of([&] { in_subfield(element(make_field(5), 3), L); }) == ErrorKind::FieldMismatch);
}

TEST_CASE("is_primitive") {
  const FieldRef f4 = make_field(4);
  CHECK_FALSE(is_primitive(element(f4, 1)));
  CHECK_FALSE(is_primitive(element(f4, 0)));
  CHECK(is_primitive(element(f4, 2)));
  CHECK_FALSE(is_primitive(pow(element(f4, 2), 5)));
  CHECK(f4->multiplicative_order(f4->pow(2, 5)) == 3);
  for (Elem a = 1; a < 16; ++a) {
    CHECK(f4->is_primitive(a) == (oracle::mult_order(a, 0x13, 4) == 15));
  }
}

TEST_CASE("field axioms and trace identities") {
  std::mt19937 rng(11);
  for (int n = 2; n <= 10; ++n) {
    const FieldRef f = make_field(n);
    for (int i = 0; i < 500; ++i) {
      const Elem a = rng() % f->size(), b = rng() % f->size(), c = rng() % f->size();
      REQUIRE(f->mul(a, f->mul(b, c)) == f->mul(f->mul(a, b), c));
      REQUIRE(f->mul(a, b ^ c) == (f->mul(a, b) ^ f->mul(a, c)));
      REQUIRE(f->mul(a, b) == f->mul(b, a));
      REQUIRE(f->trace(a ^ b) == (f->trace(a) ^ f->trace(b)));
      REQUIRE(f->trace(f->square(a)) == f->trace(a));
    }
  }
  for (int n = 2; n <= 6; ++n) {
    const FieldRef f = make_field(n);
    for (Elem a = 0; a < f->size(); ++a) {
      for (Elem b = 0; b < f->size(); ++b) {
        REQUIRE(f->square(a ^ b) == (f->square(a) ^ f->square(b)));
      }
      if (a == 0) continue;
      bool hit = false;
      for (Elem x = 0; x < f->size() && !hit; ++x) hit = f->trace(f->mul(a, x)) == 1;
      REQUIRE(hit);
    }
  }
  for (int n : {4, 6, 8, 10}) {
    const FieldRef f = make_field(n);
    for (Elem a = 0; a < f->size(); ++a) {
      REQUIRE(f->trace(a) == subfield_trace(*f, rel_trace(*f, a, n / 2), n / 2));
    }
  }
}

TEST_CASE("parse_field and FieldElement mismatches") {
  CHECK(parse_field("gf2e6")->modulus() == 0x5B);
  CHECK(parse_field("gf2e6:0x43")->modulus() == 0x43);
  CHECK(parse_field("gf2e6", 0x43)->modulus() == 0x43);
  CHECK(parse_field("gf2e6:0x5b")->designation() == "gf2e6:0x5b");
  for (const char* bad : {"", "gf2", "gf2e", "gf2e6:", "gf2e6:5b", "gf2e6:0xzz", "GF2e6", "gf2e6x"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { parse_field(bad); }) == ErrorKind::Parse);
  }
  const FieldElement a = element(make_field(4), 3);
  const FieldElement b = element(make_field(5), 3);
  CHECK(kind_of([&] { mul(a, b); }) == ErrorKind::FieldMismatch);
  CHECK(kind_of([&] { add(a, b); }) == ErrorKind::FieldMismatch);
  CHECK(mul(a, element(make_field(4), 1)) == a);
  CHECK(mul(a, element(make_field(4), 0)).bits == 0);
}
