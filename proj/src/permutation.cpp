#include "apnforge/permutation.hpp"

#include <numeric>

#include "apnforge/error.hpp"

namespace apnforge {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw Error(ErrorKind::SizeMismatch, "image array is not a bijection");
    }
    seen[x] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Point> id(n);
  std::iota(id.begin(), id.end(), Point{0});
  return Permutation(std::move(id), Unchecked{});
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw Error(ErrorKind::SizeMismatch, "degrees differ");
  std::vector<Point> out(p.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = p.images_[q.images_[x]];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

Permutation inverse(const Permutation& p) {
  std::vector<Point> out(p.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[p.images_[x]] = static_cast<Point>(x);
  return Permutation(std::move(out), Permutation::Unchecked{});
}

Permutation power(const Permutation& p, long long e) {
  Permutation base = e < 0 ? inverse(p) : p;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  Permutation result = Permutation::identity(p.size());
  while (k != 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

std::uint64_t element_order(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  std::uint64_t order = 1;
  for (Point start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    std::uint64_t len = 0;
    for (Point x = start; !seen[x]; x = p(x)) {
      seen[x] = 1;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::size_t fixed_points(const Permutation& p) {
  std::size_t c = 0;
  for (Point x = 0; x < p.size(); ++x) c += (p(x) == x);
  return c;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (Point x : p.images()) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace apnforge
