#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apnforge {

using Word = std::uint64_t;

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

/// Dense GF(2) matrix, rows packed into 64-bit words (bit c of a row lives
/// in word c/64 at position c%64). Padding bits beyond `cols` stay zero.
class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t stride() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * stride_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) noexcept {
    Word& w = data_[r * stride_ + c / 64];
    const Word bit = Word{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    data_[r * stride_ + c / 64] ^= Word{1} << (c % 64);
  }

  std::span<Word> row(std::size_t r) noexcept {
    return {data_.data() + r * stride_, stride_};
  }
  std::span<const Word> row(std::size_t r) const noexcept {
    return {data_.data() + r * stride_, stride_};
  }

  void append_row(std::span<const Word> bits);
  void append_zero_row();
  void xor_row(std::size_t dst, std::size_t src) noexcept;
  void swap_rows(std::size_t a, std::size_t b) noexcept;
  bool row_is_zero(std::size_t r) const noexcept;

  BitMatrix transpose() const;
  /// Rows i..i+count.
  BitMatrix slice_rows(std::size_t first, std::size_t count) const;

  bool operator==(const BitMatrix& o) const = default;

  /// One line per row over {0,1}.
  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
BitMatrix operator+(const BitMatrix& a, const BitMatrix& b);

/// Reduced row echelon form; pivots are strictly increasing column indices,
/// so the form is unique for a given row space.
struct Rref {
  BitMatrix basis;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

Rref rref(const BitMatrix& m);

/// Reduces `v` against the echelon basis in place; true iff v was in the
/// row space (it is then left zero).
bool reduce_in_place(const Rref& r, std::span<Word> v) noexcept;
bool in_row_space(const Rref& r, std::span<const Word> v);

std::size_t rank(const BitMatrix& m);

/// Inverse of a square matrix; nullopt if singular.
std::optional<BitMatrix> inverse(const BitMatrix& m);

inline int popcount(std::span<const Word> v) noexcept {
  int c = 0;
  for (Word w : v) c += __builtin_popcountll(w);
  return c;
}

}  // namespace apnforge
