#include <algorithm>

#include "apnforge/automorphism.hpp"

namespace apnforge {

std::vector<Permutation> enumerate_elements(const PermGroup& g, std::uint64_t limit) {
  if (g.order() > limit) {
    throw Error(ErrorKind::GroupTooLarge, "group of order " + to_string(g.order()) +
                                              " is too large to enumerate");
  }
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(g.order()));
  g.chain.for_each_element([&](const Permutation& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

namespace {

bool commutes(const Permutation& a, const Permutation& b) {
  for (Point x = 0; x < a.size(); ++x) {
    if (a(b(x)) != b(a(x))) return false;
  }
  return true;
}

bool fixed_point_free(const Permutation& p) {
  for (Point x = 0; x < p.size(); ++x) {
    if (p(x) == x) return false;
  }
  return true;
}

class RegularSearch {
public:
  RegularSearch(std::size_t degree, std::vector<std::vector<Permutation>> by_image)
      : degree_(degree), by_image_(std::move(by_image)) {}

  std::vector<PermGroup> run() {
    std::vector<Permutation> elems{Permutation::identity(degree_)};
    std::vector<char> covered(degree_, 0);
    covered[0] = 1;
    std::vector<Permutation> gens;
    extend(elems, covered, gens);
    return std::move(found_);
  }

private:
  // Each subgroup is reached along exactly one path: the element chosen at
  // every step is the unique one mapping 0 to the smallest uncovered point.
  void extend(const std::vector<Permutation>& elems, std::vector<char>& covered,
              std::vector<Permutation>& gens) {
    if (elems.size() == degree_) {
      found_.push_back(group_order(gens, degree_));
      return;
    }
    Point y = 0;
    while (covered[y]) ++y;
    for (const Permutation& t : by_image_[y]) {
      if (!std::all_of(gens.begin(), gens.end(),
                       [&](const Permutation& g) { return commutes(t, g); })) {
        continue;
      }
      std::vector<Permutation> grown = elems;
      bool ok = true;
      for (const Permutation& s : elems) {
        Permutation ts = t * s;
        if (!fixed_point_free(ts) || covered[ts(0)]) {
          ok = false;
          break;
        }
        grown.push_back(std::move(ts));
      }
      if (!ok) continue;
      for (std::size_t i = elems.size(); i < grown.size(); ++i) covered[grown[i](0)] = 1;
      gens.push_back(t);
      extend(grown, covered, gens);
      gens.pop_back();
      for (std::size_t i = elems.size(); i < grown.size(); ++i) covered[grown[i](0)] = 0;
    }
  }

  std::size_t degree_;
  std::vector<std::vector<Permutation>> by_image_;
  std::vector<PermGroup> found_;
};

}  // namespace

std::vector<PermGroup> regular_elem_abelian_subgroups(const PermGroup& g) {
  const std::size_t n = g.degree();
  if (n > 64) throw Error(ErrorKind::DegreeTooLarge, "degree above 64");
  if (n == 0 || (n & (n - 1)) != 0) return {};
  std::vector<std::vector<Permutation>> by_image(n);
  for (Permutation& p : enumerate_elements(g)) {
    if (fixed_point_free(p) && (p * p).is_identity()) by_image[p(0)].push_back(std::move(p));
  }
  if (n == 1) return {group_order({}, 1)};
  return RegularSearch(n, std::move(by_image)).run();
}

std::optional<Permutation> conjugating_element(const PermGroup& g, const PermGroup& a,
                                               const PermGroup& b) {
  for (const PermGroup* sub : {&a, &b}) {
    for (const Permutation& p : sub->generators) {
      if (!g.contains(p)) throw Error(ErrorKind::NotSubgroup, "subgroup not contained in G");
    }
  }
  if (a.order() != b.order()) return std::nullopt;
  const std::size_t n = g.degree();
  std::optional<Permutation> result;
  std::vector<Point> img(n);
  g.chain.for_each_element([&](const Permutation& h) {
    for (const Permutation& x : a.generators) {
      for (Point p = 0; p < n; ++p) img[h(p)] = h(x(p));
      if (!b.contains(Permutation(img))) return true;
    }
    result = h;
    return false;
  });
  return result;
}

}  // namespace apnforge
