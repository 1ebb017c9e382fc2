#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "apnforge/gf2n.hpp"
#include "apnforge/lincode.hpp"
#include "apnforge/permutation.hpp"

namespace apnforge {

using GroupOrder = unsigned __int128;

std::string to_string(GroupOrder v);

/// Stabilizer chain built by the deterministic (Knuth-style) Schreier-Sims
/// procedure. Base points come from `base_prefix` first, then the smallest
/// point moved by the generator that forces a new level.
class StabChain {
public:
  explicit StabChain(std::size_t degree, std::vector<Point> base_prefix = {});

  std::size_t degree() const noexcept { return degree_; }

  /// Extends the group by g; no-op when g is already a member.
  void add_generator(const Permutation& g);

  bool contains(const Permutation& g) const;
  GroupOrder order() const;

  std::size_t base_length() const noexcept { return levels_.size(); }
  Point base_point(std::size_t level) const { return levels_[level].base; }
  const std::vector<Point>& orbit(std::size_t level) const { return levels_[level].orbit; }
  bool in_orbit(std::size_t level, Point p) const {
    return levels_[level].slot[p] >= 0;
  }
  /// u with u(base_point(level)) = p.
  const Permutation& transversal(std::size_t level, Point p) const;
  /// Strong generators stored at `level` (they fix all earlier base points).
  const std::vector<Permutation>& level_generators(std::size_t level) const {
    return levels_[level].gens;
  }

  /// Uniformly random element.
  Permutation random_element(std::mt19937_64& rng) const;
  /// Calls visit on each element exactly once; stops early when visit
  /// returns false.
  void for_each_element(const std::function<bool(const Permutation&)>& visit) const;

private:
  struct Level {
    Point base;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    std::vector<int> slot;  // point -> index into trans, -1 outside the orbit
    std::vector<Permutation> trans;
    std::vector<Permutation> trans_inv;
  };

  void add_at(std::size_t level, const Permutation& g);
  bool sifts_from(std::size_t level, Permutation g) const;
  void open_level(const Permutation& g);

  std::size_t degree_;
  std::vector<Point> prefix_;
  std::vector<Level> levels_;
};

/// A generating set together with its verified stabilizer chain.
struct PermGroup {
  std::vector<Permutation> generators;
  StabChain chain;

  std::size_t degree() const noexcept { return chain.degree(); }
  GroupOrder order() const { return chain.order(); }
  bool contains(const Permutation& p) const { return chain.contains(p); }
};

/// Builds the chain and checks that every generator sifts to the identity.
PermGroup group_order(const std::vector<Permutation>& gens, std::size_t degree,
                      std::vector<Point> base_prefix = {});
inline PermGroup group_order(const std::vector<Permutation>& gens) {
  return group_order(gens, gens.empty() ? 0 : gens.front().size());
}

// Canonical permutations of the coordinates K (integer order).
Permutation translation_perm(const Field& field, Elem k);
Permutation mult_perm(const Field& field, Elem a);
Permutation frobenius_perm(const Field& field, int j);

/// All translations, as the n generators x -> x + u^i.
std::vector<Permutation> translation_generators(const Field& field);

/// True iff every word of C, relabelled by p, stays in C.
bool is_automorphism(const BinaryCode& c, const Permutation& p);

/// Orbit-counting check: transitive, and the stabilizer of the first base
/// point transitive on the rest.
bool is_two_transitive(const PermGroup& g);

}  // namespace apnforge
