#include "apnforge/bitmatrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace apnforge {

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void BitMatrix::append_row(std::span<const Word> bits) {
  if (bits.size() != stride_) throw std::invalid_argument("row width mismatch");
  data_.insert(data_.end(), bits.begin(), bits.end());
  ++rows_;
}

void BitMatrix::append_zero_row() {
  data_.resize(data_.size() + stride_, 0);
  ++rows_;
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) noexcept {
  Word* d = data_.data() + dst * stride_;
  const Word* s = data_.data() + src * stride_;
  for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
}

bool BitMatrix::row_is_zero(std::size_t r) const noexcept {
  for (Word w : row(r)) {
    if (w != 0) return false;
  }
  return true;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r, true);
    }
  }
  return t;
}

BitMatrix BitMatrix::slice_rows(std::size_t first, std::size_t count) const {
  BitMatrix out(0, cols_);
  for (std::size_t r = first; r < first + count; ++r) out.append_row(row(r));
  return out;
}

std::string BitMatrix::to_string() const {
  std::string s;
  s.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in product");
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a.get(i, k)) continue;
      auto src = b.row(k);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    }
  }
  return out;
}

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("shape mismatch in sum");
  }
  BitMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    auto src = b.row(i);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
  }
  return out;
}

Rref rref(const BitMatrix& m) {
  BitMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && !a.get(p, c)) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i != r && a.get(i, c)) a.xor_row(i, r);
    }
    pivots.push_back(c);
    ++r;
  }
  return {a.slice_rows(0, r), std::move(pivots)};
}

bool reduce_in_place(const Rref& r, std::span<Word> v) noexcept {
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    const std::size_t c = r.pivots[i];
    if ((v[c / 64] >> (c % 64)) & 1u) {
      auto row = r.basis.row(i);
      for (std::size_t w = 0; w < v.size(); ++w) v[w] ^= row[w];
    }
  }
  for (Word w : v) {
    if (w != 0) return false;
  }
  return true;
}

bool in_row_space(const Rref& r, std::span<const Word> v) {
  std::vector<Word> tmp(v.begin(), v.end());
  return reduce_in_place(r, tmp);
}

std::size_t rank(const BitMatrix& m) { return rref(m).rank(); }

std::optional<BitMatrix> inverse(const BitMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  BitMatrix a = m;
  BitMatrix inv = BitMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && !a.get(p, c)) ++p;
    if (p == n) return std::nullopt;
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != c && a.get(i, c)) {
        a.xor_row(i, c);
        inv.xor_row(i, c);
      }
    }
  }
  return inv;
}

}  // namespace apnforge
