#include <doctest.h>

#include <sstream>

#include "apnforge/textio.hpp"

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

TEST_CASE("function files") {
  std::istringstream in("# cube\nfield gf2e4\n\nterm 0x1 3\n# more\nterm 0x2 5\n");
  const PolySpec p = parse_function(in);
  CHECK(p.field()->modulus() == 0x13);
  REQUIRE(p.terms().size() == 2);
  CHECK(p.terms()[1] == Term{2, 5});
  std::ostringstream out;
  write_function(out, p);
  CHECK(out.str() == "field gf2e4:0x13\nterm 0x1 3\nterm 0x2 5\n");
  std::istringstream again(out.str());
  CHECK(parse_function(again).terms() == p.terms());

  for (const char* bad : {"", "term 0x1 3\n", "field gf2e4\nterm 1 3\n", "field gf2e4\nterm 0x1\n",
                          "field gf2e4\nterm 0x10 3\n", "field gf2e4\nterm 0x1 16\n",
                          "field gf2e4 extra\n", "field gf2e4\nterm 0x1 3 4\n"}) {
    CAPTURE(bad);
    std::istringstream s(bad);
    CHECK(kind_of([&] { parse_function(s); }) == ErrorKind::Parse);
  }
  std::istringstream reducible("field gf2e4:0x15\n");
  CHECK(kind_of([&] { parse_function(reducible); }) == ErrorKind::ReducibleModulus);
}

TEST_CASE("modulus tables") {
  std::istringstream in("# overrides\nfield gf2e6:0x43\nfield gf2e4:0x19\n");
  const ModulusTable t = parse_modulus_table(in);
  CHECK(t.at(6) == 0x43);
  CHECK(resolve_field("gf2e6", t)->modulus() == 0x43);
  CHECK(resolve_field("gf2e6:0x5b", t)->modulus() == 0x5B);
  CHECK(resolve_field("gf2e5", t)->modulus() == 0x25);
  std::istringstream f("field gf2e4\nterm 0x1 3\n");
  CHECK(parse_function(f, t).field()->modulus() == 0x19);
  std::istringstream bad("field gf2e6\n");
  CHECK(kind_of([&] { parse_modulus_table(bad); }) == ErrorKind::Parse);
}

TEST_CASE("code dumps") {
  const FieldRef f = make_field(4);
  const BinaryCode c = build_code(evaluate(PolySpec(f, {{1, 3}})));
  std::ostringstream out;
  write_code(out, c);
  const std::string text = out.str();
  CHECK(text.rfind("binarycode n=4 len=16 dim=9\n", 0) == 0);
  std::istringstream in(text);
  CHECK(code_equal(parse_code(in, f), c));
  std::istringstream wrong(text);
  CHECK(kind_of([&] { parse_code(wrong, make_field(5)); }) == ErrorKind::FieldMismatch);
  std::istringstream shortdump("binarycode n=4 len=16 dim=2\n1000000000000000\n");
  CHECK(kind_of([&] { parse_code(shortdump, f); }) == ErrorKind::Parse);
  std::istringstream dependent("binarycode n=4 len=16 dim=2\n1000000000000000\n1000000000000000\n");
  CHECK(kind_of([&] { parse_code(dependent, f); }) == ErrorKind::Parse);
  std::istringstream badrow("binarycode n=4 len=16 dim=1\n10000000000000002\n");
  CHECK(kind_of([&] { parse_code(badrow, f); }) == ErrorKind::Parse);
}

TEST_CASE("permutation files") {
  std::istringstream in("# two\nperm n=4:\n1 0 3 2\nperm n=4: 0 1\n 3 2\n");
  const auto ps = parse_permutations(in);
  REQUIRE(ps.size() == 2);
  CHECK(ps[0](0) == 1);
  CHECK(ps[1](2) == 3);
  std::ostringstream out;
  write_permutation(out, ps[0]);
  std::istringstream back(out.str());
  CHECK(parse_permutations(back)[0] == ps[0]);
  std::istringstream dup("perm n=3: 0 0 1\n");
  CHECK(kind_of([&] { parse_permutations(dup); }) == ErrorKind::SizeMismatch);
  std::istringstream range("perm n=3: 0 1 3\n");
  CHECK(kind_of([&] { parse_permutations(range); }) == ErrorKind::Parse);
  std::istringstream header("perm 3: 0 1 2\n");
  CHECK(kind_of([&] { parse_permutations(header); }) == ErrorKind::Parse);
}

TEST_CASE("numbers") {
  CHECK(parse_number("0x1f") == 31);
  CHECK(parse_number("42") == 42);
  CHECK(kind_of([] { parse_number("0x"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_number("4a"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_number(""); }) == ErrorKind::Parse);
}
