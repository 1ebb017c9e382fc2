#include "apnforge/family.hpp"

#include <numeric>
#include <stdexcept>

namespace apnforge {

namespace {

Elem first_primitive(const Field& k) {
  for (Elem a = 1; a < k.size(); ++a) {
    if (k.is_primitive(a)) return a;
  }
  return 0;
}

Elem first_outside_subfield(const Field& k, int half) {
  for (Elem a = 0; a < k.size(); ++a) {
    if (!in_subfield(k, a, half)) return a;
  }
  return 0;
}

BuiltinParams as_builtin(const FamilyParams& p) {
  BuiltinParams bp;
  bp.k = p.k;
  bp.s = p.s;
  bp.b = p.b;
  bp.c = p.c;
  return bp;
}

std::string hex(Elem v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", v);
  return buf;
}

}  // namespace

void validate(const FamilyParams& p) {
  if (p.k < 3 || p.k % 2 == 0) throw Error(ErrorKind::BadParams, "k must be odd and >= 3");
  if (p.s < 1 || p.s % 2 == 0) throw Error(ErrorKind::BadParams, "s must be odd and >= 1");
  if (std::gcd(p.k, p.s) != 1) throw Error(ErrorKind::BadParams, "gcd(k,s) != 1");
  if (!p.field || p.field->degree() != 2 * p.k) {
    throw Error(ErrorKind::BadParams, "field degree must equal 2k");
  }
  if (!p.field->contains(p.b) || !p.field->is_primitive(p.b)) {
    throw Error(ErrorKind::BadParams, "b is not primitive");
  }
  if (!p.field->contains(p.c) || in_subfield(*p.field, p.c, p.k)) {
    throw Error(ErrorKind::BadParams, "c lies in subfield L");
  }
}

FamilyParams make_family_params(int k, int s, std::optional<Elem> b, std::optional<Elem> c,
                                FieldRef field) {
  if (k < 3 || k % 2 == 0) throw Error(ErrorKind::BadParams, "k must be odd and >= 3");
  if (2 * k > 16) throw Error(ErrorKind::BadParams, "2k exceeds the supported field degree 16");
  if (!field) field = make_field(2 * k);
  FamilyParams p{field, k, s, b.value_or(first_primitive(*field)),
                 c.value_or(first_outside_subfield(*field, k))};
  validate(p);
  return p;
}

FunctionTable build_family(const FamilyParams& p) {
  validate(p);
  FunctionTable f = evaluate(builtin_function("family", p.field, as_builtin(p)).poly);
  const Field& K = *p.field;
  const std::uint64_t es = (std::uint64_t{1} << p.s) + 1;
  const std::uint64_t ek = (std::uint64_t{1} << p.k) + 1;
  for (Elem x = 0; x < K.size(); ++x) {
    const Elem head = K.mul(p.b, K.pow(x, static_cast<long long>(es)));
    const Elem expect =
        rel_trace(K, head, p.k) ^ K.mul(p.c, K.pow(x, static_cast<long long>(ek)));
    if (f.values[x] != expect) {
      throw std::logic_error("family table disagrees with its relative-trace form");
    }
  }
  return f;
}

bool verify_c_independence(const FamilyParams& p, Elem d) {
  FamilyParams q = p;
  q.c = d;
  validate(q);
  return code_equal(build_code(build_family(p)), build_code(build_family(q)));
}

Elem family_omega(const FamilyParams& p) {
  return p.field->pow(p.b, static_cast<long long>((p.field->size() - 1) / 3));
}

Elem family_subfield_generator(const FamilyParams& p) {
  return p.field->pow(p.b, static_cast<long long>((std::uint64_t{1} << p.k) + 1));
}

Permutation family_automorphism(const FamilyParams& p, FamilyAut which, Elem z) {
  validate(p);
  const Field& K = *p.field;
  FamilyParams target = p;
  Permutation g = Permutation::identity(K.size());
  switch (which) {
    case FamilyAut::Omega:
      g = mult_perm(K, family_omega(p));
      break;
    case FamilyAut::SubfieldMult:
      if (z == 0) z = family_subfield_generator(p);
      if (!K.contains(z) || !in_subfield(K, z, p.k)) {
        throw Error(ErrorKind::BadParams, "z must be a nonzero element of L");
      }
      g = mult_perm(K, z);
      break;
    case FamilyAut::Delta: {
      if (p.s != 1) throw Error(ErrorKind::DeltaRequiresS1, "delta is defined for s = 1 only");
      // c = b^((2^k+1)/3) makes f(bx) = f(x)^4; the code does not depend on c.
      target.c = K.pow(p.b, static_cast<long long>(((std::uint64_t{1} << p.k) + 1) / 3));
      std::vector<Point> img(K.size());
      for (Elem x = 0; x < K.size(); ++x) img[x] = K.mul(p.b, K.square(K.square(x)));
      g = Permutation(std::move(img));
      break;
    }
  }
  if (!is_automorphism(build_code(build_family(target)), g)) {
    throw std::logic_error("constructed family automorphism fails verification");
  }
  return g;
}

SubgroupU subgroup_U(const FamilyParams& p) {
  validate(p);
  const Field& K = *p.field;
  std::vector<Permutation> gens = translation_generators(K);
  gens.push_back(mult_perm(K, family_omega(p)));
  gens.push_back(mult_perm(K, family_subfield_generator(p)));
  SubgroupU u{group_order(gens, K.size()), 0, {0, 0}};
  u.expected = GroupOrder{K.size()} * 3 * ((GroupOrder{1} << p.k) - 1);
  if (u.group.order() != u.expected) {
    throw std::logic_error("subgroup U has order " + to_string(u.group.order()) +
                           ", expected " + to_string(u.expected));
  }
  const auto& gs = u.group.generators;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      if (gs[i] * gs[j] != gs[j] * gs[i]) {
        u.noncommuting = {i, j};
        return u;
      }
    }
  }
  throw std::logic_error("subgroup U generators commute");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NotCczEquivalent:
      return "NOT_CCZ_EQUIVALENT";
    case Verdict::CczEquivalent:
      return "CCZ_EQUIVALENT";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

InequivalenceCertificate compare_with_gold(const FunctionTable& f, int r,
                                           const std::optional<FamilyParams>& family) {
  const FieldRef& field = f.field;
  if (r < 1 || std::gcd(r, field->degree()) != 1) {
    throw Error(ErrorKind::BadParams, "gcd(r,n) != 1");
  }
  const FunctionTable g = evaluate(gold_poly(field, r));
  const BinaryCode cf = build_code(f);
  const BinaryCode cg = build_code(g);

  InequivalenceCertificate cert;
  cert.family = family;
  cert.gold_r = r;
  cert.code_dims = {cf.dimension(), cg.dimension()};
  cert.codes_equal = code_equal(cf, cg);
  cert.quadratic_flags = {algebraic_degree(f) <= 2, algebraic_degree(g) <= 2};
  cert.apn_flags = {is_apn(f), is_apn(g)};

  auto& why = cert.reasoning;
  why.push_back("dim C_f = " + std::to_string(cert.code_dims.first) + ", dim C_g = " +
                std::to_string(cert.code_dims.second) + " (g = x^(2^" + std::to_string(r) +
                "+1))");
  if (cert.codes_equal) {
    why.push_back("C_f = C_g, so g = A1(f) + A for affine A1, A [code equality criterion]");
    why.push_back("EA-equivalence implies CCZ-equivalence [definitions]");
    cert.verdict = Verdict::CczEquivalent;
    return cert;
  }
  why.push_back("C_f != C_g by direct comparison of reduced echelon forms [code inequality]");
  const bool quadratic_apn = cert.quadratic_flags.first && cert.quadratic_flags.second &&
                             cert.apn_flags.first && cert.apn_flags.second;
  if (family && quadratic_apn) {
    why.push_back(
        "f quadratic APN, g Gold: CCZ-equivalence would imply EA-equivalence "
        "[quadratic APN vs Gold reduction]");
    why.push_back(
        "family member EA-equivalent to Gold would force C_f = C_g "
        "[EA-equivalence forces equal codes]");
    why.push_back("codes differ, hence f and g are not CCZ-equivalent [Gold inequivalence]");
    cert.verdict = Verdict::NotCczEquivalent;
  } else {
    why.push_back(family ? "hypotheses fail: both functions must be quadratic APN"
                         : "f is not a family member; unequal codes alone decide nothing");
    cert.verdict = Verdict::Inconclusive;
  }
  return cert;
}

InequivalenceCertificate gold_comparison(const FamilyParams& p, int r) {
  validate(p);
  if (r < 1 || std::gcd(r, 2 * p.k) != 1) throw Error(ErrorKind::BadParams, "gcd(r,2k) != 1");
  InequivalenceCertificate cert = compare_with_gold(build_family(p), r, p);
  cert.reasoning.insert(cert.reasoning.begin(),
                        "f = family(k=" + std::to_string(p.k) + ", s=" + std::to_string(p.s) +
                            ", b=" + hex(p.b) + ", c=" + hex(p.c) + ")");
  return cert;
}

}  // namespace apnforge
