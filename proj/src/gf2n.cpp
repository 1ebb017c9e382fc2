#include "apnforge/gf2n.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <sstream>

namespace apnforge {

namespace {

// Primitive polynomials, full bit pattern including x^n.
constexpr std::array<std::uint32_t, 17> kDefaultModuli = {
    0,       0,
    0x7,      // x^2+x+1
    0xB,      // x^3+x+1
    0x13,     // x^4+x+1
    0x25,     // x^5+x^2+1
    0x5B,     // x^6+x^4+x^3+x+1
    0x83,     // x^7+x+1
    0x11D,    // x^8+x^4+x^3+x^2+1
    0x211,    // x^9+x^4+1
    0x409,    // x^10+x^3+1
    0x805,    // x^11+x^2+1
    0x1053,   // x^12+x^6+x^4+x+1
    0x201B,   // x^13+x^4+x^3+x+1
    0x4443,   // x^14+x^10+x^6+x+1
    0x8003,   // x^15+x+1
    0x1100B,  // x^16+x^12+x^3+x+1
};

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) {
    a ^= m << (da - dm);
  }
  return a;
}

Elem pow_slow(Elem a, std::uint64_t e, std::uint32_t modulus, int n) {
  Elem result = 1;
  while (e != 0) {
    if (e & 1) result = clmul_mod(result, a, modulus, n);
    a = clmul_mod(a, a, modulus, n);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) primes.push_back(m);
  return primes;
}

void check_degree(int n) {
  if (n < 2 || n > 16) {
    throw Error(ErrorKind::UnsupportedDegree,
                "extension degree " + std::to_string(n) + " outside 2..16");
  }
}

}  // namespace

int poly_degree(std::uint64_t p) noexcept {
  return p == 0 ? -1 : 63 - __builtin_clzll(p);
}

Elem clmul_mod(Elem a, Elem b, std::uint32_t modulus, int n) noexcept {
  std::uint64_t acc = 0;
  for (std::uint64_t x = a; b != 0; b >>= 1, x <<= 1) {
    if (b & 1) acc ^= x;
  }
  for (int d = poly_degree(acc); d >= n; d = poly_degree(acc)) {
    acc ^= static_cast<std::uint64_t>(modulus) << (d - n);
  }
  return static_cast<Elem>(acc);
}

bool is_irreducible(std::uint64_t poly) {
  const int d = poly_degree(poly);
  if (d < 1) return false;
  for (int dd = 1; 2 * dd <= d; ++dd) {
    for (std::uint64_t q = 1ULL << dd; q < (2ULL << dd); ++q) {
      if (poly_mod(poly, q) == 0) return false;
    }
  }
  return true;
}

std::uint32_t default_modulus(int n) {
  check_degree(n);
  return kDefaultModuli[static_cast<std::size_t>(n)];
}

Field::Field(int n, std::uint32_t modulus)
    : n_(n), modulus_(modulus), size_(1u << n) {
  check_degree(n);
  if (poly_degree(modulus) != n) {
    throw Error(ErrorKind::ReducibleModulus,
                "modulus does not have degree " + std::to_string(n));
  }
  if (!is_irreducible(modulus)) {
    throw Error(ErrorKind::ReducibleModulus, "modulus is reducible over GF(2)");
  }
  primes_ = distinct_prime_factors(size_ - 1);

  const auto primitive_slow = [&](Elem a) {
    if (a == 0) return false;
    for (auto p : primes_) {
      if (pow_slow(a, (size_ - 1) / p, modulus_, n_) == 1) return false;
    }
    return true;
  };
  for (Elem g = 2; g < size_; ++g) {
    if (primitive_slow(g)) {
      generator_ = g;
      break;
    }
  }

  exp_.resize(size_ - 1);
  log_.assign(size_, 0);
  Elem x = 1;
  for (std::uint32_t i = 0; i + 1 < size_; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = clmul_mod(x, generator_, modulus_, n_);
  }

  for (int i = 0; i < n_; ++i) {
    Elem basis = Elem{1} << i;
    Elem sum = 0;
    Elem conj = basis;
    for (int j = 0; j < n_; ++j) {
      sum ^= conj;
      conj = clmul_mod(conj, conj, modulus_, n_);
    }
    if (sum > 1) {
      throw Error(ErrorKind::ReducibleModulus, "trace left the prime field");
    }
    trace_mask_ |= sum << i;
  }
}

std::string Field::designation() const {
  std::ostringstream os;
  os << "gf2e" << n_ << ":0x" << std::hex << modulus_;
  return os.str();
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::ZeroInverse, "zero has no inverse");
  return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
}

Elem Field::pow(Elem a, long long e) const {
  if (a == 0) {
    if (e < 0) throw Error(ErrorKind::ZeroInverse, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  const long long m = size_ - 1;
  long long r = (e % m + m) % m;
  return exp_[static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(log_[a]) * static_cast<unsigned>(r)) % m)];
}

Elem Field::frobenius(Elem a, int j) const noexcept {
  int jj = ((j % n_) + n_) % n_;
  for (int i = 0; i < jj; ++i) a = mul(a, a);
  return a;
}

std::uint64_t Field::multiplicative_order(Elem a) const {
  if (a == 0) return 0;
  std::uint64_t ord = size_ - 1;
  for (auto p : primes_) {
    while (ord % p == 0 && pow(a, static_cast<long long>(ord / p)) == 1) ord /= p;
  }
  return ord;
}

bool Field::is_primitive(Elem a) const {
  if (a == 0) return false;
  for (auto p : primes_) {
    if (pow(a, static_cast<long long>((size_ - 1) / p)) == 1) return false;
  }
  return true;
}

FieldRef make_field(int n, std::optional<std::uint32_t> modulus) {
  check_degree(n);
  return std::make_shared<const Field>(n, modulus.value_or(default_modulus(n)));
}

FieldRef parse_field(const std::string& designation,
                     std::optional<std::uint32_t> fallback_modulus) {
  const auto bad = [&] {
    return Error(ErrorKind::Parse, "bad field designation '" + designation + "'");
  };
  if (designation.rfind("gf2e", 0) != 0) throw bad();
  const char* first = designation.data() + 4;
  const char* last = designation.data() + designation.size();
  int n = 0;
  auto [p, ec] = std::from_chars(first, last, n);
  if (ec != std::errc{} || p == first) throw bad();
  std::optional<std::uint32_t> modulus = fallback_modulus;
  if (p != last) {
    if (last - p < 4 || p[0] != ':' || p[1] != '0' || (p[2] != 'x' && p[2] != 'X')) {
      throw bad();
    }
    std::uint32_t m = 0;
    auto [q, ec2] = std::from_chars(p + 3, last, m, 16);
    if (ec2 != std::errc{} || q != last) throw bad();
    modulus = m;
  }
  return make_field(n, modulus);
}

FieldElement element(const FieldRef& field, Elem bits) {
  if (!field->contains(bits)) {
    throw Error(ErrorKind::BadParams, "element does not fit the field");
  }
  return {field, bits};
}

namespace {
void check_same(const FieldElement& a, const FieldElement& b) {
  if (!(*a.field == *b.field)) {
    throw Error(ErrorKind::FieldMismatch, "operands live in different fields");
  }
}
}  // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return {a.field, a.bits ^ b.bits};
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return {a.field, a.field->mul(a.bits, b.bits)};
}

FieldElement pow(const FieldElement& a, long long e) {
  return {a.field, a.field->pow(a.bits, e)};
}

int trace(const FieldElement& a) { return a.field->trace(a.bits); }

bool is_primitive(const FieldElement& a) { return a.field->is_primitive(a.bits); }

SubfieldSpec make_subfield(const FieldRef& parent) {
  if (parent->degree() % 2 != 0) {
    throw Error(ErrorKind::OddDegree, "subfield of index 2 needs even degree");
  }
  return {parent, parent->degree() / 2};
}

bool in_subfield(const Field& field, Elem a, int k) noexcept {
  return field.frobenius(a, k) == a;
}

bool in_subfield(const FieldElement& a, const SubfieldSpec& sub) {
  if (!(*a.field == *sub.parent)) {
    throw Error(ErrorKind::FieldMismatch, "element not in the parent field");
  }
  return in_subfield(*a.field, a.bits, sub.k);
}

Elem rel_trace(const Field& field, Elem a, int k) noexcept {
  return a ^ field.frobenius(a, k);
}

FieldElement rel_trace(const FieldElement& a, const SubfieldSpec& sub) {
  if (a.field->degree() % 2 != 0) {
    throw Error(ErrorKind::OddDegree, "relative trace needs even degree");
  }
  if (!(*a.field == *sub.parent)) {
    throw Error(ErrorKind::FieldMismatch, "element not in the parent field");
  }
  return {a.field, rel_trace(*a.field, a.bits, sub.k)};
}

int subfield_trace(const Field& field, Elem a, int k) noexcept {
  Elem sum = 0;
  for (int i = 0; i < k; ++i) {
    sum ^= a;
    a = field.square(a);
  }
  return static_cast<int>(sum);
}

}  // namespace apnforge
