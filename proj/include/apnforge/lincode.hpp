#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "apnforge/bitmatrix.hpp"
#include "apnforge/funcspace.hpp"
#include "apnforge/gf2n.hpp"
#include "apnforge/permutation.hpp"

namespace apnforge {

/// Binary linear code of length N = 2^n whose coordinates are identified
/// with the elements of K in integer order. The generator rows need not be
/// independent; the reduced echelon form is computed once at construction.
class BinaryCode {
public:
  BinaryCode(FieldRef field, BitMatrix generators);

  const FieldRef& field() const noexcept { return field_; }
  std::size_t length() const noexcept { return generators_.cols(); }
  const BitMatrix& generators() const noexcept { return generators_; }
  const Rref& echelon() const noexcept { return echelon_; }
  std::size_t dimension() const noexcept { return echelon_.rank(); }

  bool contains(std::span<const Word> word) const { return in_row_space(echelon_, word); }

private:
  FieldRef field_;
  BitMatrix generators_;
  Rref echelon_;
};

/// Word x -> Tr(alpha x) + Tr(beta f(x)) + epsilon.
struct CodewordIndex {
  Elem alpha = 0;
  Elem beta = 0;
  int epsilon = 0;
};

std::vector<Word> codeword(const FunctionTable& f, const CodewordIndex& idx);

/// Rows (i, x) -> Tr(u^i * values[x]) for i < n: the trace block of any
/// table under the polynomial basis.
BitMatrix trace_block(const Field& field, std::span<const Elem> values);

/// Generator rows: all-ones, Tr(u^i x), Tr(u^i f(x)).
BinaryCode build_code(const FunctionTable& f);
/// The first-order Reed-Muller code C_0 (all-ones plus Tr(u^i x)).
BinaryCode first_order_rm(const FieldRef& field);

std::size_t dimension(const BinaryCode& c);
bool code_equal(const BinaryCode& c, const BinaryCode& d);

/// Each word r becomes x -> r[p(x)].
BinaryCode permute_code(const BinaryCode& c, const Permutation& p);

/// Smallest w <= cap such that some w columns of the echelon generator
/// matrix sum to zero (the minimum distance of the dual code); nullopt when
/// every w <= cap fails. cap must lie in 1..8.
std::optional<int> dual_min_distance(const BinaryCode& c, int cap);

/// Recovers g with build_code(g) = C for any C with C_0 <= C and
/// dim C <= 2n+1.
FunctionTable function_from_code(const BinaryCode& c);

/// Gram matrix T_{ij} = Tr(u^i u^j) of the polynomial basis.
BitMatrix trace_gram_matrix(const Field& field);

/// Solution of G_g = B1 G_f + B G_0' + t 1 (trace blocks in the polynomial
/// basis). B1 is invertible.
struct AffineWitness {
  BitMatrix b1;
  BitMatrix b;
  std::vector<int> t;
};

AffineWitness ea_witness(const FunctionTable& f, const FunctionTable& g);
/// Code-level form: works on the functions recovered from C and D.
AffineWitness ea_witness(const BinaryCode& c, const BinaryCode& d);
bool verify_witness(const FunctionTable& f, const FunctionTable& g, const AffineWitness& w);

/// Gray-code walk over all 2^dim codewords (dim <= 30).
void for_each_codeword(const BinaryCode& c,
                       const std::function<void(std::span<const Word>)>& visit);

/// counts[w] = number of codewords of weight w.
std::vector<std::uint64_t> weight_distribution(const BinaryCode& c);

}  // namespace apnforge
