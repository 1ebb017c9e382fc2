#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "apnforge/funcspace.hpp"
#include "apnforge/gf2n.hpp"
#include "apnforge/lincode.hpp"
#include "apnforge/permutation.hpp"

namespace apnforge {

/// Degree -> modulus overrides for field designations without an explicit
/// modulus.
using ModulusTable = std::map<int, std::uint32_t>;

/// Lines "field gf2e<n>:0x<hex>"; '#' starts a comment line.
ModulusTable parse_modulus_table(std::istream& in);

/// "gf2e<n>[:0x<hex>]", consulting `table` when no modulus is given.
FieldRef resolve_field(const std::string& designation, const ModulusTable& table = {});

/// Function file: "field gf2e.." then "term 0x<coeff> <exp>" lines.
PolySpec parse_function(std::istream& in, const ModulusTable& table = {});
void write_function(std::ostream& out, const PolySpec& p);

/// Code dump: "binarycode n=<n> len=<N> dim=<k>" then k echelon rows over
/// {0,1}. The dump does not carry the modulus, so the caller supplies the
/// field.
BinaryCode parse_code(std::istream& in, const FieldRef& field);
void write_code(std::ostream& out, const BinaryCode& c);

/// "perm n=<N>:" followed by N images (whitespace separated, any line
/// breaks). A file may hold several permutations back to back.
std::vector<Permutation> parse_permutations(std::istream& in);
void write_permutation(std::ostream& out, const Permutation& p);

/// Hex literal "0x.." or decimal.
std::uint64_t parse_number(const std::string& text);

}  // namespace apnforge
