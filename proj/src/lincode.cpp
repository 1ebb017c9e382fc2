#include "apnforge/lincode.hpp"

#include <algorithm>
#include <set>

namespace apnforge {

BinaryCode::BinaryCode(FieldRef field, BitMatrix generators)
    : field_(std::move(field)), generators_(std::move(generators)) {
  if (generators_.cols() != field_->size()) {
    throw Error(ErrorKind::LengthMismatch, "code length must equal 2^n");
  }
  echelon_ = rref(generators_);
}

std::vector<Word> codeword(const FunctionTable& f, const CodewordIndex& idx) {
  const Field& k = *f.field;
  std::vector<Word> w(words_for(k.size()), 0);
  for (Elem x = 0; x < k.size(); ++x) {
    const int bit = k.trace(k.mul(idx.alpha, x)) ^ k.trace(k.mul(idx.beta, f.values[x])) ^
                    (idx.epsilon & 1);
    if (bit) w[x / 64] |= Word{1} << (x % 64);
  }
  return w;
}

BitMatrix trace_block(const Field& field, std::span<const Elem> values) {
  const int n = field.degree();
  BitMatrix m(static_cast<std::size_t>(n), values.size());
  for (int i = 0; i < n; ++i) {
    const Elem basis = Elem{1} << i;
    for (std::size_t x = 0; x < values.size(); ++x) {
      if (field.trace(field.mul(basis, values[x]))) m.set(static_cast<std::size_t>(i), x, true);
    }
  }
  return m;
}

namespace {

BitMatrix rm_rows(const Field& k) {
  BitMatrix g(0, k.size());
  std::vector<Word> ones(words_for(k.size()), ~Word{0});
  if (k.size() % 64 != 0) ones.back() = (Word{1} << (k.size() % 64)) - 1;
  g.append_row(ones);
  std::vector<Elem> id(k.size());
  for (Elem x = 0; x < k.size(); ++x) id[x] = x;
  BitMatrix lin = trace_block(k, id);
  for (std::size_t i = 0; i < lin.rows(); ++i) g.append_row(lin.row(i));
  return g;
}

}  // namespace

BinaryCode build_code(const FunctionTable& f) {
  BitMatrix g = rm_rows(*f.field);
  BitMatrix block = trace_block(*f.field, f.values);
  for (std::size_t i = 0; i < block.rows(); ++i) g.append_row(block.row(i));
  return BinaryCode(f.field, std::move(g));
}

BinaryCode first_order_rm(const FieldRef& field) {
  return BinaryCode(field, rm_rows(*field));
}

std::size_t dimension(const BinaryCode& c) { return c.dimension(); }

bool code_equal(const BinaryCode& c, const BinaryCode& d) {
  if (c.length() != d.length()) {
    throw Error(ErrorKind::LengthMismatch, "codes have different lengths");
  }
  return c.echelon().pivots == d.echelon().pivots && c.echelon().basis == d.echelon().basis;
}

BinaryCode permute_code(const BinaryCode& c, const Permutation& p) {
  if (p.size() != c.length()) {
    throw Error(ErrorKind::SizeMismatch, "permutation degree differs from code length");
  }
  const BitMatrix& g = c.generators();
  BitMatrix out(g.rows(), g.cols());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t x = 0; x < g.cols(); ++x) {
      if (g.get(r, p(static_cast<Point>(x)))) out.set(r, x, true);
    }
  }
  return BinaryCode(c.field(), std::move(out));
}

namespace {

// Sums of all `size`-subsets of cols, via an explicit index stack.
std::vector<std::uint64_t> subset_sums(const std::vector<std::uint64_t>& cols, int size) {
  std::vector<std::uint64_t> sums;
  if (size == 0) {
    sums.push_back(0);
    return sums;
  }
  const int n = static_cast<int>(cols.size());
  if (size > n) return sums;
  std::vector<int> idx(static_cast<std::size_t>(size));
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(size) + 1, 0);
  int depth = 0;
  idx[0] = 0;
  while (depth >= 0) {
    const auto d = static_cast<std::size_t>(depth);
    if (idx[d] > n - (size - depth)) {
      --depth;
      if (depth >= 0) ++idx[static_cast<std::size_t>(depth)];
      continue;
    }
    partial[d + 1] = partial[d] ^ cols[static_cast<std::size_t>(idx[d])];
    if (depth + 1 == size) {
      sums.push_back(partial[d + 1]);
      ++idx[d];
    } else {
      idx[d + 1] = idx[d] + 1;
      ++depth;
    }
  }
  return sums;
}

}  // namespace

std::optional<int> dual_min_distance(const BinaryCode& c, int cap) {
  if (cap < 1 || cap > 8) throw Error(ErrorKind::CapTooLarge, "cap must lie in 1..8");
  const Rref& e = c.echelon();
  if (e.rank() > 64) throw Error(ErrorKind::TooBig, "dimension above 64");
  std::vector<std::uint64_t> cols(c.length(), 0);
  for (std::size_t r = 0; r < e.rank(); ++r) {
    for (std::size_t x = 0; x < c.length(); ++x) {
      if (e.basis.get(r, x)) cols[x] |= std::uint64_t{1} << r;
    }
  }
  // Processing w in increasing order means any two distinct subsets with
  // equal sums are disjoint: an overlap would leave a smaller dependent set.
  for (int w = 1; w <= cap; ++w) {
    const int lo = w / 2;
    const int hi = w - lo;
    std::vector<std::uint64_t> left = subset_sums(cols, lo);
    std::sort(left.begin(), left.end());
    if (lo == hi) {
      if (std::adjacent_find(left.begin(), left.end()) != left.end()) return w;
      continue;
    }
    for (std::uint64_t s : subset_sums(cols, hi)) {
      if (std::binary_search(left.begin(), left.end(), s)) return w;
    }
  }
  return std::nullopt;
}

BitMatrix trace_gram_matrix(const Field& field) {
  const int n = field.degree();
  BitMatrix t(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (field.trace(field.mul(Elem{1} << i, Elem{1} << j))) {
        t.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), true);
      }
    }
  }
  return t;
}

FunctionTable function_from_code(const BinaryCode& c) {
  const Field& k = *c.field();
  const int n = k.degree();
  const BinaryCode c0 = first_order_rm(c.field());
  for (std::size_t r = 0; r < c0.echelon().rank(); ++r) {
    if (!c.contains(c0.echelon().basis.row(r))) {
      throw Error(ErrorKind::NotSupercode, "code does not contain C_0");
    }
  }
  if (c.dimension() > static_cast<std::size_t>(2 * n + 1)) {
    throw Error(ErrorKind::TooBig, "dimension exceeds 2n+1");
  }
  const std::set<std::size_t> rm_pivots(c0.echelon().pivots.begin(),
                                        c0.echelon().pivots.end());
  std::vector<std::size_t> complement;
  for (std::size_t r = 0; r < c.echelon().rank(); ++r) {
    if (rm_pivots.count(c.echelon().pivots[r]) == 0) complement.push_back(r);
  }
  const BitMatrix tinv = *inverse(trace_gram_matrix(k));
  std::vector<Elem> tinv_rows(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (tinv.get(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        tinv_rows[static_cast<std::size_t>(i)] |= Elem{1} << j;
      }
    }
  }
  FunctionTable f{c.field(), std::vector<Elem>(k.size(), 0)};
  for (Elem x = 0; x < k.size(); ++x) {
    Elem column = 0;
    for (std::size_t i = 0; i < complement.size(); ++i) {
      if (c.echelon().basis.get(complement[i], x)) column |= Elem{1} << i;
    }
    Elem value = 0;
    for (int i = 0; i < n; ++i) {
      if (__builtin_parity(tinv_rows[static_cast<std::size_t>(i)] & column)) {
        value |= Elem{1} << i;
      }
    }
    f.values[x] = value;
  }
  return f;
}

namespace {

// Incremental elimination that remembers, for every reduced row, which
// original vectors were combined into it.
class TrackedBasis {
public:
  // Returns the dependency mask if v is already in the span.
  std::optional<std::uint64_t> insert(std::span<const Word> v, std::uint64_t mask) {
    std::vector<Word> w(v.begin(), v.end());
    reduce(w, mask);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] != 0) {
        const std::size_t pivot = i * 64 + static_cast<std::size_t>(__builtin_ctzll(w[i]));
        rows_.push_back({std::move(w), mask, pivot});
        return std::nullopt;
      }
    }
    return mask;
  }

  std::optional<std::uint64_t> solve(std::span<const Word> v) const {
    std::vector<Word> w(v.begin(), v.end());
    std::uint64_t mask = 0;
    reduce(w, mask);
    for (Word x : w) {
      if (x != 0) return std::nullopt;
    }
    return mask;
  }

private:
  struct Row {
    std::vector<Word> bits;
    std::uint64_t mask;
    std::size_t pivot;
  };

  void reduce(std::vector<Word>& w, std::uint64_t& mask) const {
    for (const Row& r : rows_) {
      if ((w[r.pivot / 64] >> (r.pivot % 64)) & 1u) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= r.bits[i];
        mask ^= r.mask;
      }
    }
  }

  std::vector<Row> rows_;
};

}  // namespace

AffineWitness ea_witness(const FunctionTable& f, const FunctionTable& g) {
  if (!(*f.field == *g.field)) {
    throw Error(ErrorKind::FieldMismatch, "functions live over different fields");
  }
  const Field& k = *f.field;
  const auto n = static_cast<std::size_t>(k.degree());
  const BitMatrix rm = rm_rows(k);  // row 0: ones, rows 1..n: G_0'
  const BitMatrix gf = trace_block(k, f.values);
  const BitMatrix gg = trace_block(k, g.values);

  // Mask layout: bit 0 -> t, bits 1..n -> B row, bits n+1..2n -> B1 row.
  TrackedBasis basis;
  std::vector<std::uint64_t> kernel;
  for (std::size_t i = 0; i <= n; ++i) basis.insert(rm.row(i), std::uint64_t{1} << i);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto dep = basis.insert(gf.row(i), std::uint64_t{1} << (n + 1 + i))) {
      kernel.push_back(*dep);
    }
  }

  const std::uint64_t b1_part = ((std::uint64_t{1} << n) - 1) << (n + 1);
  const auto b1_bits = [&](std::uint64_t m) { return (m & b1_part) >> (n + 1); };

  std::vector<std::uint64_t> solution(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = basis.solve(gg.row(i));
    if (!s) throw Error(ErrorKind::NoWitness, "codes are not equal");
    solution[i] = *s;
  }

  // Free directions (the kernel) let us make B1 invertible row by row.
  BitMatrix chosen(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto independent = [&](std::uint64_t m) {
      BitMatrix trial = chosen;
      std::vector<Word> row(1, b1_bits(m));
      trial.append_row(row);
      return rank(trial) == trial.rows();
    };
    std::uint64_t m = solution[i];
    if (!independent(m)) {
      bool fixed = false;
      for (std::uint64_t d : kernel) {
        if (independent(m ^ d)) {
          m ^= d;
          fixed = true;
          break;
        }
      }
      if (!fixed) throw Error(ErrorKind::NoWitness, "no invertible B1 exists");
    }
    solution[i] = m;
    std::vector<Word> row(1, b1_bits(m));
    chosen.append_row(row);
  }

  AffineWitness w{BitMatrix(n, n), BitMatrix(n, n), std::vector<int>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t m = solution[i];
    w.t[i] = static_cast<int>(m & 1u);
    for (std::size_t j = 0; j < n; ++j) {
      if ((m >> (1 + j)) & 1u) w.b.set(i, j, true);
      if ((m >> (n + 1 + j)) & 1u) w.b1.set(i, j, true);
    }
  }
  return w;
}

AffineWitness ea_witness(const BinaryCode& c, const BinaryCode& d) {
  if (!code_equal(c, d)) throw Error(ErrorKind::NoWitness, "codes are not equal");
  return ea_witness(function_from_code(c), function_from_code(d));
}

bool verify_witness(const FunctionTable& f, const FunctionTable& g, const AffineWitness& w) {
  const Field& k = *f.field;
  const auto n = static_cast<std::size_t>(k.degree());
  if (w.b1.rows() != n || w.b1.cols() != n || w.b.rows() != n || w.b.cols() != n ||
      w.t.size() != n) {
    return false;
  }
  if (!inverse(w.b1)) return false;
  std::vector<Elem> id(k.size());
  for (Elem x = 0; x < k.size(); ++x) id[x] = x;
  BitMatrix rhs = w.b1 * trace_block(k, f.values) + w.b * trace_block(k, id);
  for (std::size_t i = 0; i < n; ++i) {
    if (w.t[i]) {
      for (std::size_t x = 0; x < k.size(); ++x) rhs.flip(i, x);
    }
  }
  return rhs == trace_block(k, g.values);
}

void for_each_codeword(const BinaryCode& c,
                       const std::function<void(std::span<const Word>)>& visit) {
  const Rref& e = c.echelon();
  const std::size_t dim = e.rank();
  if (dim > 30) throw Error(ErrorKind::TooBig, "too many codewords to enumerate");
  std::vector<Word> word(e.basis.stride(), 0);
  visit(word);
  const std::uint64_t total = std::uint64_t{1} << dim;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto flip = static_cast<std::size_t>(__builtin_ctzll(i));
    auto row = e.basis.row(flip);
    for (std::size_t w = 0; w < word.size(); ++w) word[w] ^= row[w];
    visit(word);
  }
}

std::vector<std::uint64_t> weight_distribution(const BinaryCode& c) {
  std::vector<std::uint64_t> counts(c.length() + 1, 0);
  for_each_codeword(c, [&](std::span<const Word> w) {
    ++counts[static_cast<std::size_t>(popcount(w))];
  });
  return counts;
}

}  // namespace apnforge
