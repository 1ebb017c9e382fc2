#include <algorithm>
#include <chrono>
#include <numeric>

#include "apnforge/automorphism.hpp"

namespace apnforge {

namespace {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Colors = std::vector<std::uint32_t>;

/// Points vs. selected codewords; color refinement on the bipartite
/// incidence graph. All color ids are ranks of label-free keys, so
/// refine(g(colors)) = g(refine(colors)) for every automorphism g.
class Incidence {
public:
  Incidence(std::size_t points, std::vector<std::uint32_t> offsets,
            std::vector<Point> members, std::vector<std::uint64_t> block_class)
      : points_(points),
        offsets_(std::move(offsets)),
        members_(std::move(members)),
        block_class_(std::move(block_class)),
        acc_(points),
        keys_(points) {}

  std::size_t points() const noexcept { return points_; }

  /// Refines in place; returns the number of colors and folds the
  /// refinement history into `trace`.
  std::uint32_t refine(Colors& colors, std::uint64_t& trace) {
    std::uint32_t count = relabel(colors, nullptr, trace);
    while (true) {
      std::fill(acc_.begin(), acc_.end(), 0);
      const std::size_t blocks = block_class_.size();
      for (std::size_t b = 0; b < blocks; ++b) {
        std::uint64_t h = block_class_[b];
        for (std::uint32_t i = offsets_[b]; i < offsets_[b + 1]; ++i) {
          h += mix64(colors[members_[i]] + 0x51ed270b27a2b9fdULL);
        }
        const std::uint64_t hh = mix64(h);
        for (std::uint32_t i = offsets_[b]; i < offsets_[b + 1]; ++i) acc_[members_[i]] += hh;
      }
      const std::uint32_t next = relabel(colors, &acc_, trace);
      if (next == count || next == points_) {
        count = next;
        break;
      }
      count = next;
    }
    return count;
  }

private:
  std::uint32_t relabel(Colors& colors, const std::vector<std::uint64_t>* extra,
                        std::uint64_t& trace) {
    for (std::size_t p = 0; p < points_; ++p) {
      keys_[p] = {colors[p], extra ? (*extra)[p] : 0};
    }
    sorted_ = keys_;
    std::sort(sorted_.begin(), sorted_.end());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> distinct;
    distinct.reserve(points_);
    std::uint64_t t = trace;
    for (std::size_t i = 0; i < sorted_.size(); ++i) {
      if (i == 0 || sorted_[i] != sorted_[i - 1]) {
        distinct.push_back(sorted_[i]);
        t = mix64(t ^ sorted_[i].first) + mix64(sorted_[i].second);
      }
      t = mix64(t + 1);
    }
    trace = t;
    for (std::size_t p = 0; p < points_; ++p) {
      colors[p] = static_cast<std::uint32_t>(
          std::lower_bound(distinct.begin(), distinct.end(), keys_[p]) - distinct.begin());
    }
    return static_cast<std::uint32_t>(distinct.size());
  }

  std::size_t points_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Point> members_;
  std::vector<std::uint64_t> block_class_;
  std::vector<std::uint64_t> acc_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keys_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted_;
};

Incidence build_incidence(const BinaryCode& c, AutSearchStats& stats) {
  const std::vector<std::uint64_t> dist = weight_distribution(c);
  const std::size_t n = c.length();

  // Lightest classes first until they span C. Weight n (all-ones) carries
  // no information and is skipped.
  std::vector<int> chosen;
  Rref span{BitMatrix(0, n), {}};
  std::vector<Word> tmp;
  for (std::size_t w = 1; w < n && span.rank() < c.dimension(); ++w) {
    if (dist[w] == 0) continue;
    chosen.push_back(static_cast<int>(w));
    for_each_codeword(c, [&](std::span<const Word> word) {
      if (span.rank() == c.dimension() || static_cast<std::size_t>(popcount(word)) != w) return;
      tmp.assign(word.begin(), word.end());
      if (!reduce_in_place(span, tmp)) {
        BitMatrix grown = span.basis;
        grown.append_row(word);
        span = rref(grown);
      }
    });
  }
  if (chosen.empty()) chosen.push_back(static_cast<int>(n));  // C <= <1>

  std::vector<std::uint32_t> offsets{0};
  std::vector<Point> members;
  std::vector<std::uint64_t> cls;
  for_each_codeword(c, [&](std::span<const Word> word) {
    const int w = popcount(word);
    auto it = std::find(chosen.begin(), chosen.end(), w);
    if (w == 0 || it == chosen.end()) return;
    for (std::size_t x = 0; x < n; ++x) {
      if ((word[x / 64] >> (x % 64)) & 1u) members.push_back(static_cast<Point>(x));
    }
    offsets.push_back(static_cast<std::uint32_t>(members.size()));
    cls.push_back(mix64(static_cast<std::uint64_t>(w) * 0x2545f4914f6cdd1dULL));
  });
  stats.weights_used = chosen;
  stats.words_used = cls.size();
  return Incidence(n, std::move(offsets), std::move(members), std::move(cls));
}

Colors individualize(const Colors& colors, Point v) {
  Colors out(colors.size());
  for (std::size_t p = 0; p < colors.size(); ++p) out[p] = 2 * colors[p] + (p == v ? 1u : 0u);
  return out;
}

struct PathNode {
  Colors colors;           // refined coloring at this depth
  std::uint64_t trace;     // refinement history up to here
  std::uint32_t cell = 0;  // color of the cell individualized next
};

class Search {
public:
  Search(const BinaryCode& code, const AutSearchOptions& opt, AutSearchStats& stats)
      : code_(code),
        stats_(stats),
        incidence_(build_incidence(code, stats)),
        start_(std::chrono::steady_clock::now()),
        budget_(opt.budget_seconds) {}

  AutSearchResult run(const std::vector<Permutation>& seed) {
    const std::size_t n = code_.length();
    build_first_path();
    StabChain chain(n, stats_.base);
    for (const Permutation& s : seed) {
      if (!is_automorphism(code_, s)) {
        throw Error(ErrorKind::BadParams, "seed permutation is not an automorphism");
      }
      chain.add_generator(s);
    }
    std::vector<Permutation> gens = seed;

    for (std::size_t level = stats_.base.size(); level-- > 0;) {
      const PathNode& node = path_[level];
      std::vector<char> failed(n, 0);
      for (Point gamma = 0; gamma < n; ++gamma) {
        if (node.colors[gamma] != node.cell || gamma == stats_.base[level]) continue;
        if (failed[gamma] || known_image(chain, level, gamma)) continue;
        std::optional<Permutation> g = find_extension(level, gamma);
        if (g) {
          chain.add_generator(*g);
          gens.push_back(std::move(*g));
        } else {
          for (Point q : orbit_under_level(chain, level, gamma)) failed[q] = 1;
        }
      }
    }

    PermGroup group = group_order(gens, n, stats_.base);
    stats_.seconds = elapsed();
    return {std::move(group), stats_};
  }

private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void tick() {
    ++stats_.nodes;
    if ((stats_.nodes & 63) == 1 && elapsed() > budget_) {
      throw Error(ErrorKind::Timeout, "automorphism search exceeded its budget of " +
                                          std::to_string(budget_) + " s");
    }
  }

  void build_first_path() {
    const std::size_t n = code_.length();
    PathNode node{Colors(n, 0), 0, 0};
    incidence_.refine(node.colors, node.trace);
    while (true) {
      // Smallest non-singleton cell, ties to the lowest color id.
      std::vector<std::uint32_t> size;
      for (std::uint32_t col : node.colors) {
        if (col >= size.size()) size.resize(col + 1, 0);
        ++size[col];
      }
      std::uint32_t best = 0;
      std::uint32_t best_size = 0;
      for (std::uint32_t col = 0; col < size.size(); ++col) {
        if (size[col] > 1 && (best_size == 0 || size[col] < best_size)) {
          best = col;
          best_size = size[col];
        }
      }
      if (best_size == 0) break;
      node.cell = best;
      Point v = 0;
      while (node.colors[v] != best) ++v;
      stats_.base.push_back(v);
      path_.push_back(node);
      PathNode child{individualize(node.colors, v), node.trace, 0};
      incidence_.refine(child.colors, child.trace);
      node = std::move(child);
    }
    leaf_ = node;
  }

  bool known_image(const StabChain& chain, std::size_t level, Point gamma) const {
    return level < chain.base_length() && chain.in_orbit(level, gamma);
  }

  std::vector<Point> orbit_under_level(const StabChain& chain, std::size_t level,
                                       Point start) const {
    std::vector<Point> orbit{start};
    if (level >= chain.base_length()) return orbit;
    std::vector<char> seen(code_.length(), 0);
    seen[start] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const Permutation& g : chain.level_generators(level)) {
        const Point q = g(orbit[i]);
        if (!seen[q]) {
          seen[q] = 1;
          orbit.push_back(q);
        }
      }
    }
    return orbit;
  }

  // Target path equals the first path above `level`; diverges by mapping
  // base[level] to gamma.
  std::optional<Permutation> find_extension(std::size_t level, Point gamma) {
    return descend(level, path_[level].colors, path_[level].trace, gamma);
  }

  std::optional<Permutation> descend(std::size_t level, const Colors& colors,
                                     std::uint64_t trace, Point image) {
    tick();
    PathNode child{individualize(colors, image), trace, 0};
    incidence_.refine(child.colors, child.trace);
    const PathNode& expect = level + 1 < path_.size() ? path_[level + 1] : leaf_;
    if (child.trace != expect.trace) return std::nullopt;
    if (level + 1 == path_.size()) return leaf_permutation(child.colors);
    const std::uint32_t cell = path_[level + 1].cell;
    for (Point v = 0; v < colors.size(); ++v) {
      if (child.colors[v] != cell) continue;
      if (auto g = descend(level + 1, child.colors, child.trace, v)) return g;
    }
    return std::nullopt;
  }

  std::optional<Permutation> leaf_permutation(const Colors& target) {
    ++stats_.leaves;
    const std::size_t n = code_.length();
    std::vector<Point> by_color(n);
    for (Point v = 0; v < n; ++v) by_color[target[v]] = v;
    std::vector<Point> img(n);
    for (Point v = 0; v < n; ++v) img[v] = by_color[leaf_.colors[v]];
    Permutation g(std::move(img));
    if (!is_automorphism(code_, g)) return std::nullopt;
    return g;
  }

  const BinaryCode& code_;
  AutSearchStats& stats_;
  Incidence incidence_;
  std::vector<PathNode> path_;
  PathNode leaf_;
  std::chrono::steady_clock::time_point start_;
  double budget_;
};

}  // namespace

AutSearchResult full_automorphism_group(const BinaryCode& c, const AutSearchOptions& options) {
  if (c.length() > 1024) throw Error(ErrorKind::TooLong, "code length above 1024");
  if (c.dimension() > 24) throw Error(ErrorKind::TooBig, "dimension above 24");
  AutSearchStats stats;
  Search search(c, options, stats);
  return search.run(options.seed);
}

}  // namespace apnforge
