#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "apnforge/lincode.hpp"
#include "apnforge/permgrp.hpp"

namespace apnforge {

struct AutSearchOptions {
  /// Wall-clock budget; exceeding it throws Error(Timeout).
  double budget_seconds = 600.0;
  /// Known automorphisms; each is verified, then used to prune.
  std::vector<Permutation> seed;
};

struct AutSearchStats {
  std::vector<Point> base;
  std::vector<int> weights_used;   // codeword weight classes in the incidence structure
  std::size_t words_used = 0;
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  double seconds = 0.0;
};

struct AutSearchResult {
  PermGroup group;
  AutSearchStats stats;
};

/// Full automorphism group of C (length <= 1024, dimension <= 24).
///
/// Coordinates are refined against the incidence structure formed by the
/// lightest codeword weight classes that together span C. The search
/// individualizes one coordinate per level; every leaf is checked with
/// is_automorphism, and known automorphisms prune candidate images through
/// the basic orbits of a stabilizer chain whose base is the search path.
AutSearchResult full_automorphism_group(const BinaryCode& c,
                                        const AutSearchOptions& options = {});

/// Every subgroup of G that is elementary abelian of order = degree and
/// acts regularly. Requires degree <= 64 and |G| <= 10^6.
std::vector<PermGroup> regular_elem_abelian_subgroups(const PermGroup& g);

/// Some h in G with h A h^-1 = B, or nullopt when A and B are not conjugate
/// in G. Throws NotSubgroup if A or B is not contained in G.
std::optional<Permutation> conjugating_element(const PermGroup& g, const PermGroup& a,
                                               const PermGroup& b);

/// Materializes all elements of G (|G| <= limit, else GroupTooLarge).
std::vector<Permutation> enumerate_elements(const PermGroup& g, std::uint64_t limit = 1000000);

}  // namespace apnforge
