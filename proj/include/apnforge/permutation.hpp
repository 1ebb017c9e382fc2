#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace apnforge {

using Point = std::uint32_t;

/// Bijection of {0, ..., N-1} stored as its image array.
class Permutation {
public:
  Permutation() = default;
  /// Throws SizeMismatch unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  Point operator()(Point x) const noexcept { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}

  std::vector<Point> images_;

  friend Permutation compose(const Permutation& p, const Permutation& q);
  friend Permutation inverse(const Permutation& p);
};

/// (p * q)(x) = p(q(x)): q acts first.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}
Permutation inverse(const Permutation& p);
Permutation power(const Permutation& p, long long e);

/// lcm of the cycle lengths.
std::uint64_t element_order(const Permutation& p);
std::size_t fixed_points(const Permutation& p);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace apnforge
