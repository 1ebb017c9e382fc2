#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apnforge/gf2n.hpp"

namespace apnforge {

struct Term {
  Elem coeff = 0;
  std::uint32_t exponent = 0;

  bool operator==(const Term&) const = default;
};

/// Sparse univariate polynomial over K. Construction normalizes: exponents
/// strictly increasing, coefficients nonzero, like terms merged.
class PolySpec {
public:
  PolySpec(FieldRef field, std::vector<Term> terms);

  const FieldRef& field() const noexcept { return field_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

private:
  FieldRef field_;
  std::vector<Term> terms_;
};

/// f: K -> K as a table indexed by the integer value of x.
struct FunctionTable {
  FieldRef field;
  std::vector<Elem> values;

  std::size_t size() const noexcept { return values.size(); }
  Elem operator()(Elem x) const noexcept { return values[x]; }
  bool operator==(const FunctionTable& o) const {
    return *field == *o.field && values == o.values;
  }
};

/// Reduces an exponent into 0..2^n-1 without changing x -> x^e on K.
std::uint32_t reduce_exponent(const Field& field, std::uint64_t e) noexcept;

FunctionTable evaluate(const PolySpec& p);
FunctionTable identity_function(const FieldRef& field);
/// Unique polynomial of degree < 2^n with the given values (n <= 12).
PolySpec interpolate(const FunctionTable& f);

/// max over a != 0, b of #{x : f(x+a) + f(x) = b}. The a-range is split
/// across `threads` workers; the result does not depend on the split.
int differential_uniformity(const FunctionTable& f, int threads = 1);
bool is_apn(const FunctionTable& f, int threads = 1);

/// Maximum algebraic-normal-form degree over the n coordinate functions
/// (0 for constant functions).
int algebraic_degree(const FunctionTable& f);

/// Definition-level test: every D_a(x) = f(x+a)+f(x)+f(a)+f(0) is additive.
bool derivatives_additive(const FunctionTable& f);

/// x -> f(x+a) + f(x) + f(a).
FunctionTable derivative_map(const FunctionTable& f, Elem a);

/// Parameters for the named functions; unset fields take documented
/// defaults (family: smallest primitive b, smallest c outside L).
struct BuiltinParams {
  std::optional<int> r;
  std::optional<int> k;
  std::optional<int> s;
  std::optional<Elem> b;
  std::optional<Elem> c;
};

struct BuiltinFunction {
  std::string name;
  PolySpec poly;
  /// Resolved parameter choices (e.g. "u" for the Dillon functions, "b"/"c"
  /// for the family), in a stable order for reports.
  std::vector<std::pair<std::string, std::uint64_t>> choices;
};

/// name in {gold, family, dillon_h1, dillon_h2, dillon_h3}.
BuiltinFunction builtin_function(const std::string& name, const FieldRef& field,
                                 const BuiltinParams& params = {});

PolySpec gold_poly(const FieldRef& field, int r);

/// One term of a Dillon polynomial: coeff = u^u_power (or 1 when absent).
struct DillonTerm {
  std::optional<int> u_power;
  std::uint32_t exponent;
};
const std::vector<DillonTerm>& dillon_terms(const std::string& name);
/// Substitutes u into a Dillon template.
PolySpec dillon_poly(const FieldRef& field, const std::string& name, Elem u);

/// Seeded random Dembowski-Ostrom polynomial plus random affine part; always
/// of algebraic degree <= 2.
PolySpec random_quadratic_poly(const FieldRef& field, std::uint64_t seed);

}  // namespace apnforge
