#include "apnforge/permgrp.hpp"

#include <algorithm>

namespace apnforge {

std::string to_string(GroupOrder v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

StabChain::StabChain(std::size_t degree, std::vector<Point> base_prefix)
    : degree_(degree), prefix_(std::move(base_prefix)) {
  for (Point b : prefix_) {
    if (b >= degree_) throw Error(ErrorKind::SizeMismatch, "base point outside the domain");
  }
}

void StabChain::open_level(const Permutation& g) {
  Point base = 0;
  if (levels_.size() < prefix_.size()) {
    base = prefix_[levels_.size()];
  } else {
    while (base < degree_ && g(base) == base) ++base;
  }
  Level level;
  level.base = base;
  level.orbit.push_back(base);
  level.slot.assign(degree_, -1);
  level.slot[base] = 0;
  level.trans.push_back(Permutation::identity(degree_));
  level.trans_inv.push_back(Permutation::identity(degree_));
  levels_.push_back(std::move(level));
}

bool StabChain::sifts_from(std::size_t level, Permutation g) const {
  for (std::size_t i = level; i < levels_.size(); ++i) {
    if (g.is_identity()) return true;
    const Level& l = levels_[i];
    const int s = l.slot[g(l.base)];
    if (s < 0) return false;
    g = l.trans_inv[static_cast<std::size_t>(s)] * g;
  }
  return g.is_identity();
}

void StabChain::add_generator(const Permutation& g) {
  if (g.size() != degree_) throw Error(ErrorKind::SizeMismatch, "generator degree mismatch");
  add_at(0, g);
}

void StabChain::add_at(std::size_t i, const Permutation& g) {
  if (sifts_from(i, g)) return;
  if (i == levels_.size()) open_level(g);
  levels_[i].gens.push_back(g);

  std::vector<Permutation> work;
  const std::size_t known = levels_[i].trans.size();
  for (std::size_t t = 0; t < known; ++t) work.push_back(g * levels_[i].trans[t]);

  while (!work.empty()) {
    Permutation h = std::move(work.back());
    work.pop_back();
    const Point p = h(levels_[i].base);
    const int s = levels_[i].slot[p];
    if (s >= 0) {
      Permutation schreier = levels_[i].trans_inv[static_cast<std::size_t>(s)] * h;
      add_at(i + 1, schreier);
      continue;
    }
    Level& l = levels_[i];
    l.slot[p] = static_cast<int>(l.trans.size());
    l.orbit.push_back(p);
    l.trans_inv.push_back(inverse(h));
    l.trans.push_back(h);
    for (const Permutation& gen : levels_[i].gens) work.push_back(gen * levels_[i].trans.back());
  }
}

bool StabChain::contains(const Permutation& g) const {
  if (g.size() != degree_) return false;
  return sifts_from(0, g);
}

GroupOrder StabChain::order() const {
  GroupOrder o = 1;
  for (const Level& l : levels_) o *= l.orbit.size();
  return o;
}

const Permutation& StabChain::transversal(std::size_t level, Point p) const {
  const int s = levels_[level].slot[p];
  if (s < 0) throw Error(ErrorKind::BadParams, "point outside the basic orbit");
  return levels_[level].trans[static_cast<std::size_t>(s)];
}

Permutation StabChain::random_element(std::mt19937_64& rng) const {
  Permutation g = Permutation::identity(degree_);
  for (const Level& l : levels_) {
    std::uniform_int_distribution<std::size_t> pick(0, l.trans.size() - 1);
    g = g * l.trans[pick(rng)];
  }
  return g;
}

void StabChain::for_each_element(const std::function<bool(const Permutation&)>& visit) const {
  // g = t_0 * t_1 * ... * t_{k-1}, one transversal element per level.
  std::vector<Permutation> prefix{Permutation::identity(degree_)};
  std::vector<std::size_t> idx(levels_.size(), 0);
  if (levels_.empty()) {
    visit(prefix.back());
    return;
  }
  std::size_t depth = 0;
  while (true) {
    if (idx[depth] == levels_[depth].trans.size()) {
      if (depth == 0) return;
      idx[depth] = 0;
      prefix.pop_back();
      --depth;
      ++idx[depth];
      continue;
    }
    Permutation next = prefix.back() * levels_[depth].trans[idx[depth]];
    if (depth + 1 == levels_.size()) {
      if (!visit(next)) return;
      ++idx[depth];
    } else {
      prefix.push_back(std::move(next));
      ++depth;
    }
  }
}

PermGroup group_order(const std::vector<Permutation>& gens, std::size_t degree,
                      std::vector<Point> base_prefix) {
  PermGroup g{gens, StabChain(degree, std::move(base_prefix))};
  for (const Permutation& p : gens) g.chain.add_generator(p);
  for (const Permutation& p : gens) {
    if (!g.chain.contains(p)) {
      throw Error(ErrorKind::BadParams, "stabilizer chain failed to sift a generator");
    }
  }
  return g;
}

Permutation translation_perm(const Field& field, Elem k) {
  std::vector<Point> img(field.size());
  for (Elem x = 0; x < field.size(); ++x) img[x] = x ^ k;
  return Permutation(std::move(img));
}

Permutation mult_perm(const Field& field, Elem a) {
  if (a == 0) throw Error(ErrorKind::ZeroScalar, "multiplier must be nonzero");
  std::vector<Point> img(field.size());
  for (Elem x = 0; x < field.size(); ++x) img[x] = field.mul(a, x);
  return Permutation(std::move(img));
}

Permutation frobenius_perm(const Field& field, int j) {
  std::vector<Point> img(field.size());
  for (Elem x = 0; x < field.size(); ++x) img[x] = field.frobenius(x, j);
  return Permutation(std::move(img));
}

std::vector<Permutation> translation_generators(const Field& field) {
  std::vector<Permutation> gens;
  for (int i = 0; i < field.degree(); ++i) gens.push_back(translation_perm(field, Elem{1} << i));
  return gens;
}

bool is_automorphism(const BinaryCode& c, const Permutation& p) {
  if (p.size() != c.length()) {
    throw Error(ErrorKind::SizeMismatch, "permutation degree differs from code length");
  }
  const Rref& e = c.echelon();
  std::vector<Word> word(e.basis.stride());
  for (std::size_t r = 0; r < e.rank(); ++r) {
    std::fill(word.begin(), word.end(), 0);
    auto row = e.basis.row(r);
    for (std::size_t x = 0; x < c.length(); ++x) {
      const Point y = p(static_cast<Point>(x));
      if ((row[y / 64] >> (y % 64)) & 1u) word[x / 64] |= Word{1} << (x % 64);
    }
    if (!reduce_in_place(e, word)) return false;
  }
  return true;
}

bool is_two_transitive(const PermGroup& g) {
  const std::size_t n = g.degree();
  if (n < 2) return true;
  PermGroup h = group_order(g.generators, n, {0, 1});
  return h.chain.base_length() >= 2 && h.chain.orbit(0).size() == n &&
         h.chain.orbit(1).size() == n - 1;
}

}  // namespace apnforge
