#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "apnforge/error.hpp"

namespace apnforge {

/// Raw element of GF(2^n): bit i is the coefficient of u^i in the
/// polynomial basis. Elements also index code coordinates (0 .. 2^n-1).
using Elem = std::uint32_t;

/// GF(2^n) for 2 <= n <= 16 with an explicit irreducible modulus.
///
/// Multiplication goes through log/antilog tables built against a
/// generator of the multiplicative group, so any irreducible modulus works,
/// not only primitive ones. Instances are immutable after construction.
class Field {
public:
  Field(int n, std::uint32_t modulus);

  int degree() const noexcept { return n_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t size() const noexcept { return size_; }
  Elem generator() const noexcept { return generator_; }

  /// Designation string "gf2e<n>:0x<modulus>".
  std::string designation() const;

  bool contains(Elem a) const noexcept { return a < size_; }

  static Elem add(Elem a, Elem b) noexcept { return a ^ b; }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }

  Elem square(Elem a) const noexcept { return mul(a, a); }
  Elem inv(Elem a) const;
  Elem pow(Elem a, long long e) const;
  /// a^(2^j), j taken modulo n (negative j allowed).
  Elem frobenius(Elem a, int j) const noexcept;

  int trace(Elem a) const noexcept {
    return __builtin_parity(a & trace_mask_);
  }
  /// Bit mask m with Tr(a) = parity(a & m).
  Elem trace_mask() const noexcept { return trace_mask_; }

  /// Discrete log w.r.t. generator(); a must be nonzero.
  std::uint32_t log(Elem a) const noexcept { return log_[a]; }
  Elem exp(std::uint64_t e) const noexcept { return exp_[e % (size_ - 1)]; }

  std::uint64_t multiplicative_order(Elem a) const;
  bool is_primitive(Elem a) const;
  /// Distinct primes dividing 2^n - 1.
  const std::vector<std::uint64_t>& order_prime_factors() const noexcept {
    return primes_;
  }

  bool operator==(const Field& other) const noexcept {
    return n_ == other.n_ && modulus_ == other.modulus_;
  }

private:
  int n_;
  std::uint32_t modulus_;
  std::uint32_t size_;
  Elem generator_ = 0;
  Elem trace_mask_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<std::uint64_t> primes_;
};

using FieldRef = std::shared_ptr<const Field>;

/// Carry-less product of a and b reduced modulo `modulus` (degree n).
/// Table-free reference used to build the tables and by tests.
Elem clmul_mod(Elem a, Elem b, std::uint32_t modulus, int n) noexcept;

/// Degree of a GF(2)[x] polynomial given as a bit vector; -1 for zero.
int poly_degree(std::uint64_t p) noexcept;

/// Trial division by every polynomial of degree 1..deg/2.
bool is_irreducible(std::uint64_t poly);

/// Built-in primitive modulus for GF(2^n).
std::uint32_t default_modulus(int n);

/// Validates and builds a field; default modulus when none is given.
FieldRef make_field(int n, std::optional<std::uint32_t> modulus = std::nullopt);

/// Parses "gf2e<n>[:0x<hex>]". `fallback_modulus` overrides the built-in
/// default when the string carries no modulus.
FieldRef parse_field(const std::string& designation,
                     std::optional<std::uint32_t> fallback_modulus = std::nullopt);

/// An element bound to its field. Arithmetic between elements of different
/// fields throws FieldMismatch.
struct FieldElement {
  FieldRef field;
  Elem bits = 0;

  bool operator==(const FieldElement& o) const {
    return *field == *o.field && bits == o.bits;
  }
};

FieldElement element(const FieldRef& field, Elem bits);

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement pow(const FieldElement& a, long long e);
int trace(const FieldElement& a);
bool is_primitive(const FieldElement& a);

/// L = GF(2^k) inside K = GF(2^{2k}).
struct SubfieldSpec {
  FieldRef parent;
  int k = 0;
};

SubfieldSpec make_subfield(const FieldRef& parent);

bool in_subfield(const Field& field, Elem a, int k) noexcept;
bool in_subfield(const FieldElement& a, const SubfieldSpec& sub);

/// T_2(a) = a + a^(2^k), landing in L.
Elem rel_trace(const Field& field, Elem a, int k) noexcept;
FieldElement rel_trace(const FieldElement& a, const SubfieldSpec& sub);

/// Absolute trace of an element of L, computed inside K as
/// a + a^2 + ... + a^(2^(k-1)).
int subfield_trace(const Field& field, Elem a, int k) noexcept;

}  // namespace apnforge
