#include "apnforge/funcspace.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <thread>

namespace apnforge {

PolySpec::PolySpec(FieldRef field, std::vector<Term> terms) : field_(std::move(field)) {
  std::map<std::uint32_t, Elem> merged;
  for (const Term& t : terms) {
    if (!field_->contains(t.coeff)) {
      throw Error(ErrorKind::FieldMismatch, "coefficient does not belong to the field");
    }
    if (t.exponent >= field_->size()) {
      throw Error(ErrorKind::BadParams, "exponent exceeds 2^n - 1");
    }
    merged[t.exponent] ^= t.coeff;
  }
  for (auto [e, c] : merged) {
    if (c != 0) terms_.push_back({c, e});
  }
}

std::uint32_t reduce_exponent(const Field& field, std::uint64_t e) noexcept {
  const std::uint64_t m = field.size() - 1;
  if (e <= m) return static_cast<std::uint32_t>(e);
  return static_cast<std::uint32_t>((e - 1) % m + 1);
}

FunctionTable evaluate(const PolySpec& p) {
  const Field& k = *p.field();
  FunctionTable out{p.field(), std::vector<Elem>(k.size(), 0)};
  for (const Term& t : p.terms()) {
    if (t.exponent == 0) {
      for (auto& v : out.values) v ^= t.coeff;
      continue;
    }
    const std::uint64_t log_c = k.log(t.coeff);
    for (Elem x = 1; x < k.size(); ++x) {
      out.values[x] ^= k.exp(log_c + static_cast<std::uint64_t>(k.log(x)) * t.exponent);
    }
  }
  return out;
}

PolySpec interpolate(const FunctionTable& f) {
  const Field& k = *f.field;
  if (k.degree() > 12) throw Error(ErrorKind::TooBig, "interpolation supports n <= 12");
  const std::uint64_t m = k.size() - 1;
  std::vector<Term> terms{{f.values[0], 0}};
  // a_e = sum over x != 0 of f(x) x^(m-e) for 0 < e < m; a_m = sum of all f(x).
  Elem top = 0;
  for (Elem v : f.values) top ^= v;
  for (std::uint64_t e = 1; e < m; ++e) {
    Elem a = 0;
    for (Elem x = 1; x < k.size(); ++x) {
      if (f.values[x] != 0) {
        a ^= k.exp(k.log(f.values[x]) + static_cast<std::uint64_t>(k.log(x)) * (m - e));
      }
    }
    terms.push_back({a, static_cast<std::uint32_t>(e)});
  }
  terms.push_back({top, static_cast<std::uint32_t>(m)});
  return PolySpec(f.field, std::move(terms));
}

FunctionTable identity_function(const FieldRef& field) {
  FunctionTable out{field, std::vector<Elem>(field->size())};
  std::iota(out.values.begin(), out.values.end(), Elem{0});
  return out;
}

namespace {

int du_range(const FunctionTable& f, Elem a_begin, Elem a_end) {
  const std::size_t q = f.size();
  std::vector<std::uint32_t> stamp(q, 0);
  std::vector<int> count(q, 0);
  int best = 0;
  std::uint32_t gen = 0;
  for (Elem a = a_begin; a < a_end; ++a) {
    ++gen;
    for (Elem x = 0; x < q; ++x) {
      const Elem b = f.values[x ^ a] ^ f.values[x];
      if (stamp[b] != gen) {
        stamp[b] = gen;
        count[b] = 0;
      }
      best = std::max(best, ++count[b]);
    }
  }
  return best;
}

}  // namespace

int differential_uniformity(const FunctionTable& f, int threads) {
  const Elem q = static_cast<Elem>(f.size());
  threads = std::clamp(threads, 1, static_cast<int>(q - 1));
  if (threads == 1) return du_range(f, 1, q);
  std::vector<int> partial(static_cast<std::size_t>(threads), 0);
  std::vector<std::thread> pool;
  const Elem chunk = (q - 1 + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const Elem lo = 1 + static_cast<Elem>(t) * chunk;
    const Elem hi = std::min<Elem>(q, lo + chunk);
    pool.emplace_back([&, t, lo, hi] {
      if (lo < hi) partial[static_cast<std::size_t>(t)] = du_range(f, lo, hi);
    });
  }
  for (auto& th : pool) th.join();
  return *std::max_element(partial.begin(), partial.end());
}

bool is_apn(const FunctionTable& f, int threads) {
  return differential_uniformity(f, threads) == 2;
}

int algebraic_degree(const FunctionTable& f) {
  // Moebius transform of all n coordinate functions at once.
  std::vector<Elem> anf = f.values;
  const std::size_t q = anf.size();
  for (std::size_t step = 1; step < q; step <<= 1) {
    for (std::size_t x = 0; x < q; ++x) {
      if (x & step) anf[x] ^= anf[x ^ step];
    }
  }
  int degree = 0;
  for (std::size_t x = 0; x < q; ++x) {
    if (anf[x] != 0) degree = std::max(degree, __builtin_popcountll(x));
  }
  return degree;
}

bool derivatives_additive(const FunctionTable& f) {
  const Elem q = static_cast<Elem>(f.size());
  std::vector<Elem> d(q);
  for (Elem a = 1; a < q; ++a) {
    // The f(0) term removes the constant part, so affine shifts do not matter.
    for (Elem x = 0; x < q; ++x) d[x] = f.values[x ^ a] ^ f.values[x] ^ f.values[a] ^ f.values[0];
    for (Elem x = 0; x < q; ++x) {
      for (Elem y = x + 1; y < q; ++y) {
        if (d[x ^ y] != (d[x] ^ d[y])) return false;
      }
    }
  }
  return true;
}

FunctionTable derivative_map(const FunctionTable& f, Elem a) {
  if (a == 0) throw Error(ErrorKind::ZeroDirection, "derivative direction must be nonzero");
  FunctionTable out{f.field, std::vector<Elem>(f.size())};
  for (Elem x = 0; x < f.size(); ++x) {
    out.values[x] = f.values[x ^ a] ^ f.values[x] ^ f.values[a];
  }
  return out;
}

PolySpec gold_poly(const FieldRef& field, int r) {
  const int n = field->degree();
  if (r < 1) throw Error(ErrorKind::BadParams, "gold exponent needs r >= 1");
  if (std::gcd(r, n) != 1) throw Error(ErrorKind::BadParams, "gcd(r,n) != 1");
  // x^(2^r) only depends on r mod n.
  const std::uint64_t two_r = std::uint64_t{1} << (r % n);
  return PolySpec(field, {{1, reduce_exponent(*field, two_r + 1)}});
}

namespace {

const std::map<std::string, std::vector<DillonTerm>>& dillon_table() {
  static const std::map<std::string, std::vector<DillonTerm>> table = {
      {"dillon_h1",
       {{{}, 3}, {{}, 5}, {62, 9}, {3, 10}, {{}, 18}, {3, 20}, {3, 34}, {{}, 40}}},
      {"dillon_h2", {{{}, 3}, {11, 5}, {13, 9}, {{}, 17}, {11, 33}, {{}, 48}}},
      {"dillon_h3", {{{}, 3}, {{}, 17}, {16, 18}, {16, 33}, {15, 48}}},
  };
  return table;
}

int dillon_degree(const std::string& name) { return name == "dillon_h3" ? 8 : 6; }

int read_int(const std::optional<int>& v, const char* what) {
  if (!v) throw Error(ErrorKind::BadParams, std::string("missing parameter ") + what);
  return *v;
}

Elem smallest_primitive(const Field& k) {
  for (Elem a = 1; a < k.size(); ++a) {
    if (k.is_primitive(a)) return a;
  }
  return 0;
}

Elem smallest_outside_subfield(const Field& k, int half) {
  for (Elem a = 0; a < k.size(); ++a) {
    if (!in_subfield(k, a, half)) return a;
  }
  return 0;
}

}  // namespace

const std::vector<DillonTerm>& dillon_terms(const std::string& name) {
  auto it = dillon_table().find(name);
  if (it == dillon_table().end()) {
    throw Error(ErrorKind::BadParams, "unknown Dillon function '" + name + "'");
  }
  return it->second;
}

PolySpec dillon_poly(const FieldRef& field, const std::string& name, Elem u) {
  std::vector<Term> terms;
  for (const DillonTerm& t : dillon_terms(name)) {
    const Elem c = t.u_power ? field->pow(u, *t.u_power) : 1;
    terms.push_back({c, reduce_exponent(*field, t.exponent)});
  }
  return PolySpec(field, std::move(terms));
}

BuiltinFunction builtin_function(const std::string& name, const FieldRef& field,
                                 const BuiltinParams& params) {
  const Field& k = *field;
  const int n = k.degree();
  if (name == "gold") {
    const int r = read_int(params.r, "r");
    return {name, gold_poly(field, r), {{"r", static_cast<std::uint64_t>(r)}}};
  }
  if (name == "family") {
    const int kk = read_int(params.k, "k");
    const int s = read_int(params.s, "s");
    if (kk < 3 || kk % 2 == 0) throw Error(ErrorKind::BadParams, "k must be odd and >= 3");
    if (s < 1 || s % 2 == 0) throw Error(ErrorKind::BadParams, "s must be odd and >= 1");
    if (std::gcd(kk, s) != 1) throw Error(ErrorKind::BadParams, "gcd(k,s) != 1");
    if (n != 2 * kk) throw Error(ErrorKind::BadParams, "field degree must equal 2k");
    const Elem b = params.b.value_or(smallest_primitive(k));
    const Elem c = params.c.value_or(smallest_outside_subfield(k, kk));
    if (!k.contains(b) || !k.is_primitive(b)) {
      throw Error(ErrorKind::BadParams, "b is not primitive");
    }
    if (!k.contains(c) || in_subfield(k, c, kk)) {
      throw Error(ErrorKind::BadParams, "c lies in subfield L");
    }
    const std::uint64_t e_s = (std::uint64_t{1} << (s % n)) + 1;
    const std::uint64_t e_k = (std::uint64_t{1} << kk) + 1;
    // b x^(2^s+1) + (b x^(2^s+1))^(2^k) + c x^(2^k+1)
    std::vector<Term> terms = {
        {b, reduce_exponent(k, e_s)},
        {k.frobenius(b, kk), reduce_exponent(k, e_s << kk)},
        {c, reduce_exponent(k, e_k)},
    };
    return {name,
            PolySpec(field, std::move(terms)),
            {{"k", static_cast<std::uint64_t>(kk)},
             {"s", static_cast<std::uint64_t>(s)},
             {"b", b},
             {"c", c}}};
  }
  if (dillon_table().count(name) != 0) {
    if (n != dillon_degree(name)) {
      throw Error(ErrorKind::BadParams,
                  name + " requires n = " + std::to_string(dillon_degree(name)));
    }
    for (Elem u = 1; u < k.size(); ++u) {
      if (!k.is_primitive(u)) continue;
      PolySpec p = dillon_poly(field, name, u);
      if (is_apn(evaluate(p))) return {name, std::move(p), {{"u", u}}};
    }
    throw Error(ErrorKind::NoApnRepresentative,
                "no primitive element makes " + name + " APN");
  }
  throw Error(ErrorKind::BadParams, "unknown builtin '" + name + "'");
}

PolySpec random_quadratic_poly(const FieldRef& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = field->degree();
  std::uniform_int_distribution<Elem> coeff(0, field->size() - 1);
  std::vector<Term> terms;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng() % 3 == 0) {
        terms.push_back({coeff(rng), (Elem{1} << i) + (Elem{1} << j)});
      }
    }
    if (rng() % 2 == 0) terms.push_back({coeff(rng), Elem{1} << i});
  }
  terms.push_back({coeff(rng), 0});
  return PolySpec(field, std::move(terms));
}

}  // namespace apnforge
