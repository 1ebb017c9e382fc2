#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apnforge/funcspace.hpp"
#include "apnforge/lincode.hpp"
#include "apnforge/permgrp.hpp"

namespace apnforge {

/// Trinomial b x^(2^s+1) + (b x^(2^s+1))^(2^k) + c x^(2^k+1) on GF(2^(2k)).
struct FamilyParams {
  FieldRef field;  // GF(2^(2k))
  int k = 0;
  int s = 0;
  Elem b = 0;  // primitive in K
  Elem c = 0;  // outside L = GF(2^k)
};

/// Validates and fills defaults: b = smallest primitive element, c = smallest
/// element outside L. `field` may be null (default modulus for n = 2k).
FamilyParams make_family_params(int k, int s, std::optional<Elem> b = std::nullopt,
                                std::optional<Elem> c = std::nullopt,
                                FieldRef field = nullptr);

/// Throws BadParams naming the first violated constraint.
void validate(const FamilyParams& p);

/// The family function; cross-checked at every x against T2(b x^(2^s+1)) + c x^(2^k+1).
FunctionTable build_family(const FamilyParams& p);

/// Whether swapping c for d (d outside L) leaves the code unchanged.
bool verify_c_independence(const FamilyParams& p, Elem d);

/// The element of order 3 that generates GF(4)*: b^((2^(2k)-1)/3).
Elem family_omega(const FamilyParams& p);
/// A generator of L*: b^(2^k+1).
Elem family_subfield_generator(const FamilyParams& p);

enum class FamilyAut { Omega, SubfieldMult, Delta };

/// Known automorphism of the family code, checked with is_automorphism before
/// it is returned.
///   Omega:        x -> omega x
///   SubfieldMult: x -> z x for z in L* (z = 0 selects the generator of L*)
///   Delta:        x -> b x^4, an automorphism of the code of the s = 1 member
///                 with c = b^((2^k+1)/3); its k-th power is x -> omega x.
Permutation family_automorphism(const FamilyParams& p, FamilyAut which, Elem z = 0);

struct SubgroupU {
  PermGroup group;
  GroupOrder expected = 0;  // 2^(2k) * 3 * (2^k - 1)
  /// Indices into group.generators of two generators that do not commute.
  std::pair<std::size_t, std::size_t> noncommuting{0, 0};
};

/// <translations, x -> omega x, x -> z x> with z generating L*.
SubgroupU subgroup_U(const FamilyParams& p);

enum class Verdict { NotCczEquivalent, CczEquivalent, Inconclusive };
std::string to_string(Verdict v);

struct InequivalenceCertificate {
  std::optional<FamilyParams> family;  // set when f is a family member
  int gold_r = 0;
  std::pair<std::size_t, std::size_t> code_dims{0, 0};
  bool codes_equal = false;
  std::pair<bool, bool> quadratic_flags{false, false};
  std::pair<bool, bool> apn_flags{false, false};
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> reasoning;
};

/// Compares f with the Gold function x^(2^r+1) on f's field.
///   codes equal                         -> CCZ_EQUIVALENT (g = A1 f + A)
///   f a family member, both quadratic
///   APN, codes different                -> NOT_CCZ_EQUIVALENT
///   anything else                       -> INCONCLUSIVE
/// `family` marks f as the member described by those parameters; the
/// inequivalence step is only valid for such f.
InequivalenceCertificate compare_with_gold(const FunctionTable& f, int r,
                                           const std::optional<FamilyParams>& family);

/// Family member against x^(2^r+1); requires gcd(r, 2k) = 1.
InequivalenceCertificate gold_comparison(const FamilyParams& p, int r);

}  // namespace apnforge
