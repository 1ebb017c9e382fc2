#include "apnforge/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "apnforge/automorphism.hpp"
#include "apnforge/family.hpp"
#include "apnforge/textio.hpp"

namespace apnforge {

namespace {

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << "0x" << std::hex << v;
  return s.str();
}

std::string yes(bool b) { return b ? "true" : "false"; }

template <class Seq>
std::string join(const Seq& seq, const char* sep = ",") {
  std::ostringstream s;
  bool first = true;
  for (const auto& v : seq) {
    if (!first) s << sep;
    s << v;
    first = false;
  }
  return s.str();
}

/// key=value lines; text mode appends a bracketed source label and allows
/// free-form notes, kv mode prints only the pairs.
class Report {
public:
  Report(std::ostream& out, bool kv) : out_(out), kv_(kv) {}

  void put(const std::string& key, const std::string& value, const std::string& tag = {}) {
    out_ << key << '=' << value;
    if (!kv_ && !tag.empty()) out_ << "  [" << tag << ']';
    out_ << '\n';
  }
  void put(const std::string& key, bool value, const std::string& tag = {}) {
    put(key, yes(value), tag);
  }
  template <class T>
    requires std::is_arithmetic_v<T>
  void put(const std::string& key, T value, const std::string& tag = {}) {
    put(key, std::to_string(value), tag);
  }
  void note(const std::string& text) {
    if (!kv_) out_ << "# " << text << '\n';
  }
  void raw(const std::string& text) { out_ << text; }
  std::ostream& stream() { return out_; }

private:
  std::ostream& out_;
  bool kv_;
};

namespace tag {
const char* const apn = "APN definition";
const char* const gold_apn = "Gold APN when gcd(r,n)=1";
const char* const quadratic = "quadratic functions";
const char* const dim = "dim C_f = 2n+1 for APN f";
const char* const dual = "dual distance 6 iff APN";
const char* const equal = "equal codes iff g = A1 f + A";
const char* const recover = "function recovery via trace Gram matrix";
const char* const aut = "automorphism definition";
const char* const translations = "translations preserve quadratic codes";
const char* const gold_order = "Gold automorphism order 2^n(2^n-1)n";
const char* const dillon = "Dillon example orders";
const char* const two_trans = "2-transitivity of Aut(C_g)";
const char* const regular = "regular elementary abelian subgroups";
const char* const conj = "conjugacy of regular subgroups";
const char* const family_apn = "family is APN";
const char* const family_dim = "family code dimension 4k+1";
const char* const sub_u = "subgroup U of order 2^(2k)*3(2^k-1)";
const char* const delta = "delta of order 3k with delta^k = omega";
const char* const indep = "family code independent of c";
const char* const conjecture = "conjectured order 2^(2k)*3k(2^k-1)";
const char* const ineq = "Gold inequivalence";
const char* const field = "field construction";
}  // namespace tag

struct FunctionArgs {
  std::string builtin;
  std::string file;
  std::string code;
  std::optional<int> r, k, s;
  std::string b, c;
};

struct Inputs {
  std::string field;
  FunctionArgs first, second;
};

struct Loaded {
  std::optional<FunctionTable> table;
  std::optional<PolySpec> poly;
  std::optional<BinaryCode> code;
  std::string label;
  std::vector<std::pair<std::string, std::uint64_t>> choices;

  const BinaryCode& get_code() {
    if (!code) code = build_code(*table);
    return *code;
  }
};

class Cli {
public:
  Cli(std::ostream& out) : out_(out) {}

  int run(const std::vector<std::string>& args, std::ostream& err);

private:
  ModulusTable table_;
  std::ostream& out_;
  std::string format_ = "text";
  int threads_ = 1;
  double budget_ = 600;
  Inputs in_;

  Report report() { return Report(out_, format_ == "kv"); }

  std::ifstream open(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
    return f;
  }

  FieldRef field_or(int n) {
    if (!in_.field.empty()) return resolve_field(in_.field, table_);
    return resolve_field("gf2e" + std::to_string(n), table_);
  }

  FieldRef require_field() {
    if (in_.field.empty()) throw Error(ErrorKind::BadParams, "--field is required");
    return resolve_field(in_.field, table_);
  }

  Elem element_arg(const std::string& text, const FieldRef& f, const char* what) {
    const std::uint64_t v = parse_number(text);
    if (v >= f->size()) throw Error(ErrorKind::BadParams, std::string(what) + " outside the field");
    return static_cast<Elem>(v);
  }

  Loaded load(const FunctionArgs& a, bool allow_code = true) {
    const int given = !a.builtin.empty() + !a.file.empty() + !a.code.empty();
    if (given != 1) {
      throw Error(ErrorKind::BadParams, "give exactly one of --builtin, --file, --code");
    }
    Loaded l;
    if (!a.code.empty()) {
      if (!allow_code) throw Error(ErrorKind::BadParams, "this command needs a function, not a code");
      std::ifstream f = open(a.code);
      std::stringstream buf;
      buf << f.rdbuf();
      FieldRef field;
      if (!in_.field.empty()) {
        field = require_field();
      } else {
        const std::string text = buf.str();
        const auto pos = text.find("n=");
        if (pos == std::string::npos) throw Error(ErrorKind::Parse, "code dump lacks n=");
        field = resolve_field("gf2e" + std::to_string(std::atoi(text.c_str() + pos + 2)), table_);
      }
      l.code = parse_code(buf, field);
      l.label = a.code;
      return l;
    }
    if (!a.file.empty()) {
      std::ifstream f = open(a.file);
      l.poly = parse_function(f, table_);
      if (!in_.field.empty() && !(*require_field() == *l.poly->field())) {
        throw Error(ErrorKind::FieldMismatch, "--field differs from the function file");
      }
      l.label = a.file;
    } else {
      FieldRef field;
      if (a.builtin == "family") {
        if (!a.k) throw Error(ErrorKind::BadParams, "family needs --k");
        field = field_or(2 * *a.k);
      } else if (a.builtin == "dillon_h1" || a.builtin == "dillon_h2") {
        field = field_or(6);
      } else if (a.builtin == "dillon_h3") {
        field = field_or(8);
      } else {
        field = require_field();
      }
      BuiltinParams p;
      p.r = a.r;
      p.k = a.k;
      p.s = a.s;
      if (!a.b.empty()) p.b = element_arg(a.b, field, "b");
      if (!a.c.empty()) p.c = element_arg(a.c, field, "c");
      BuiltinFunction bf = builtin_function(a.builtin, field, p);
      l.poly = std::move(bf.poly);
      l.choices = std::move(bf.choices);
      l.label = a.builtin;
    }
    l.table = evaluate(*l.poly);
    return l;
  }

  void describe(Report& rep, const Loaded& l, const std::string& prefix = "") {
    const FieldRef& f = l.table ? l.table->field : l.code->field();
    rep.put(prefix + "field", f->designation());
    rep.put(prefix + "input", l.label);
    for (const auto& [k, v] : l.choices) {
      rep.put(prefix + k, (k == "r" || k == "k" || k == "s") ? std::to_string(v) : hex(v));
    }
  }

  const char* aut_tag(const std::string& label) const {
    if (label.rfind("dillon", 0) == 0) return tag::dillon;
    if (label == "gold") return tag::gold_order;
    if (label == "family") return tag::conjecture;
    return tag::aut;
  }

  AutSearchResult full_aut(const BinaryCode& c) {
    AutSearchOptions o;
    o.budget_seconds = budget_;
    return full_automorphism_group(c, o);
  }

  PermGroup group_from_file(const std::string& path, std::size_t degree_hint = 0) {
    std::ifstream f = open(path);
    std::vector<Permutation> gens = parse_permutations(f);
    std::size_t n = gens.empty() ? degree_hint : gens.front().size();
    for (const auto& g : gens) {
      if (g.size() != n) throw Error(ErrorKind::SizeMismatch, "generators of different degrees");
    }
    if (n == 0) throw Error(ErrorKind::Parse, "no permutations in '" + path + "'");
    return group_order(gens, n);
  }

  // Command bodies.
  void field_info();
  void fn_eval();
  void fn_du();
  void fn_apn();
  void fn_degree();
  void code_build(const std::string& out_path);
  void code_dim();
  void code_equal_cmd();
  void code_dualmin(int cap);
  void code_recover(const std::string& out_path);
  void code_witness();
  void aut_verify(const std::string& perm_path);
  void aut_order(const std::string& gens_path);
  void aut_full(const std::string& gens_out);
  void aut_regular(const std::string& gens_path);
  void aut_conjugate(const std::string& g, const std::string& a, const std::string& b,
                     const std::string& out_path);
  void family_report(bool full);
  void family_gold(std::optional<int> r);
  FamilyParams family_params();
};

void Cli::field_info() {
  const FieldRef f = require_field();
  Report rep = report();
  rep.put("field", f->designation(), tag::field);
  rep.put("degree", f->degree());
  rep.put("modulus", hex(f->modulus()));
  rep.put("size", static_cast<std::uint64_t>(f->size()));
  rep.put("irreducible", is_irreducible(f->modulus()));
  rep.put("x_is_primitive", f->is_primitive(2 % f->size()));
  rep.put("generator", hex(f->generator()));
  rep.put("trace_mask", hex(f->trace_mask()));
  rep.put("order_prime_factors", join(f->order_prime_factors()));
  if (f->degree() % 2 == 0) {
    const int k = f->degree() / 2;
    std::size_t count = 0;
    for (Elem a = 0; a < f->size(); ++a) count += in_subfield(*f, a, k) ? 1 : 0;
    rep.put("subfield_degree", k);
    rep.put("subfield_size", count);
  }
}

void Cli::fn_eval() {
  Loaded l = load(in_.first, false);
  Report rep = report();
  describe(rep, l);
  for (Elem x = 0; x < l.table->size(); ++x) rep.put("f(" + hex(x) + ")", hex(l.table->values[x]));
}

void Cli::fn_du() {
  Loaded l = load(in_.first, false);
  Report rep = report();
  describe(rep, l);
  const int du = differential_uniformity(*l.table, threads_);
  const char* t = l.label == "gold" ? tag::gold_apn
                  : l.label == "family" ? tag::family_apn
                                        : tag::apn;
  rep.put("differential_uniformity", du, tag::apn);
  rep.put("apn", du == 2, t);
}

void Cli::fn_apn() {
  Loaded l = load(in_.first, false);
  Report rep = report();
  describe(rep, l);
  rep.put("apn", is_apn(*l.table, threads_), l.label == "gold" ? tag::gold_apn : tag::apn);
}

void Cli::fn_degree() {
  Loaded l = load(in_.first, false);
  Report rep = report();
  describe(rep, l);
  const int d = algebraic_degree(*l.table);
  rep.put("algebraic_degree", d, tag::quadratic);
  rep.put("quadratic", d == 2, tag::quadratic);
}

void Cli::code_build(const std::string& out_path) {
  Loaded l = load(in_.first);
  const BinaryCode& c = l.get_code();
  if (out_path.empty()) {
    write_code(out_, c);
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error(ErrorKind::Parse, "cannot write '" + out_path + "'");
  write_code(f, c);
  Report rep = report();
  describe(rep, l);
  rep.put("dimension", c.dimension(), tag::dim);
  rep.put("written", out_path);
}

void Cli::code_dim() {
  Loaded l = load(in_.first);
  Report rep = report();
  describe(rep, l);
  const BinaryCode& c = l.get_code();
  rep.put("length", c.length());
  rep.put("dimension", c.dimension(), l.label == "family" ? tag::family_dim : tag::dim);
  rep.put("max_dimension", 2 * c.field()->degree() + 1);
}

void Cli::code_equal_cmd() {
  Loaded a = load(in_.first);
  Loaded b = load(in_.second);
  Report rep = report();
  describe(rep, a, "first_");
  describe(rep, b, "second_");
  rep.put("dimensions", std::to_string(a.get_code().dimension()) + "," +
                            std::to_string(b.get_code().dimension()));
  rep.put("codes_equal", code_equal(a.get_code(), b.get_code()), tag::equal);
}

void Cli::code_dualmin(int cap) {
  Loaded l = load(in_.first);
  Report rep = report();
  describe(rep, l);
  const auto d = dual_min_distance(l.get_code(), cap);
  rep.put("cap", cap);
  rep.put("dual_min_distance", d ? std::to_string(*d) : "exceeds_cap", tag::dual);
  if (d || cap >= 6) rep.put("apn_by_dual_distance", d.has_value() && *d == 6, tag::dual);
}

void Cli::code_recover(const std::string& out_path) {
  Loaded l = load(in_.first);
  const FunctionTable g = function_from_code(l.get_code());
  const PolySpec p = interpolate(g);
  const bool round_trip = code_equal(build_code(g), l.get_code());
  if (out_path.empty()) {
    write_function(out_, p);
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error(ErrorKind::Parse, "cannot write '" + out_path + "'");
  write_function(f, p);
  Report rep = report();
  describe(rep, l);
  rep.put("terms", p.terms().size());
  rep.put("round_trip_code_equal", round_trip, tag::recover);
  rep.put("written", out_path);
}

void Cli::code_witness() {
  Loaded a = load(in_.first);
  Loaded b = load(in_.second);
  const FunctionTable f = a.table ? *a.table : function_from_code(a.get_code());
  const FunctionTable g = b.table ? *b.table : function_from_code(b.get_code());
  const AffineWitness w = ea_witness(f, g);
  Report rep = report();
  describe(rep, a, "first_");
  describe(rep, b, "second_");
  rep.note("g = B1 f + B x + t in trace coordinates; rows listed top to bottom");
  const auto rows = [](const BitMatrix& m) {
    std::vector<std::string> out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      std::string s;
      for (std::size_t c = 0; c < m.cols(); ++c) s.push_back(m.get(r, c) ? '1' : '0');
      out.push_back(s);
    }
    return join(out, ";");
  };
  rep.put("B1", rows(w.b1), tag::equal);
  rep.put("B", rows(w.b));
  rep.put("t", join(w.t, ""));
  rep.put("verified", verify_witness(f, g, w), tag::equal);
}

void Cli::aut_verify(const std::string& perm_path) {
  Loaded l = load(in_.first);
  std::ifstream f = open(perm_path);
  const std::vector<Permutation> perms = parse_permutations(f);
  Report rep = report();
  describe(rep, l);
  bool all = true;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const bool ok = is_automorphism(l.get_code(), perms[i]);
    all = all && ok;
    rep.put("perm" + std::to_string(i) + "_is_automorphism", ok, tag::aut);
  }
  rep.put("all_automorphisms", all, tag::aut);
}

void Cli::aut_order(const std::string& gens_path) {
  if (gens_path.empty()) throw Error(ErrorKind::BadParams, "--gens is required");
  const PermGroup g = group_from_file(gens_path);
  Report rep = report();
  rep.put("degree", g.degree());
  rep.put("generators", g.generators.size());
  rep.put("group_order", to_string(g.order()));
  std::vector<Point> base;
  for (std::size_t i = 0; i < g.chain.base_length(); ++i) base.push_back(g.chain.base_point(i));
  rep.put("base", join(base));
}

void Cli::aut_full(const std::string& gens_out) {
  Loaded l = load(in_.first);
  const AutSearchResult r = full_aut(l.get_code());
  Report rep = report();
  describe(rep, l);
  rep.put("aut_order", to_string(r.group.order()), aut_tag(l.label));
  rep.put("generators", r.group.generators.size());
  rep.put("base", join(r.stats.base));
  rep.put("weights_used", join(r.stats.weights_used));
  rep.put("words_used", r.stats.words_used);
  rep.put("nodes", r.stats.nodes);
  rep.put("leaves", r.stats.leaves);
  if (l.label == "gold") {
    const GroupOrder n = static_cast<GroupOrder>(l.get_code().field()->degree());
    const GroupOrder q = GroupOrder{1} << static_cast<int>(n);
    const GroupOrder formula = q * (q - 1) * n;
    rep.put("gold_formula_order", to_string(formula), tag::gold_order);
    if (formula != r.group.order()) {
      rep.note("the computed group is larger than 2^n(2^n-1)n at this n; every generator passed is_automorphism");
    }
  }
  rep.put("two_transitive", is_two_transitive(r.group), l.label == "gold" ? tag::two_trans : "");
  std::ostringstream secs;
  secs << r.stats.seconds;
  rep.put("seconds", secs.str());
  if (!gens_out.empty()) {
    std::ofstream f(gens_out);
    if (!f) throw Error(ErrorKind::Parse, "cannot write '" + gens_out + "'");
    for (const auto& g : r.group.generators) write_permutation(f, g);
    rep.put("written", gens_out);
  }
}

void Cli::aut_regular(const std::string& gens_path) {
  Report rep = report();
  std::optional<PermGroup> g;
  std::optional<FieldRef> field;
  if (!gens_path.empty()) {
    g = group_from_file(gens_path);
  } else {
    Loaded l = load(in_.first);
    describe(rep, l);
    field = l.get_code().field();
    g = full_aut(l.get_code()).group;
    rep.put("aut_order", to_string(g->order()), aut_tag(l.label));
  }
  const std::vector<PermGroup> subs = regular_elem_abelian_subgroups(*g);
  rep.put("regular_subgroups", subs.size(), tag::regular);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string key = "subgroup" + std::to_string(i);
    rep.put(key + "_order", to_string(subs[i].order()));
    if (field) {
      bool is_translations = true;
      for (const auto& t : translation_generators(**field)) {
        is_translations = is_translations && subs[i].contains(t);
      }
      rep.put(key + "_is_translation_group", is_translations, tag::regular);
    }
  }
}

void Cli::aut_conjugate(const std::string& g_path, const std::string& a_path,
                        const std::string& b_path, const std::string& out_path) {
  Report rep = report();
  if (!g_path.empty()) {
    if (a_path.empty() || b_path.empty()) {
      throw Error(ErrorKind::BadParams, "--gens needs --sub-a and --sub-b");
    }
    const PermGroup g = group_from_file(g_path);
    const PermGroup a = group_from_file(a_path, g.degree());
    const PermGroup b = group_from_file(b_path, g.degree());
    const auto h = conjugating_element(g, a, b);
    rep.put("conjugate", h.has_value(), tag::conj);
    if (h && !out_path.empty()) {
      std::ofstream f(out_path);
      write_permutation(f, *h);
      rep.put("written", out_path);
    }
    return;
  }
  // Function or code input: every regular elementary abelian subgroup of
  // Aut(C) against the translation group.
  Loaded l = load(in_.first);
  describe(rep, l);
  const BinaryCode& c = l.get_code();
  const PermGroup g = full_aut(c).group;
  rep.put("aut_order", to_string(g.order()), aut_tag(l.label));
  const PermGroup e = group_order(translation_generators(*c.field()), c.length());
  const std::vector<PermGroup> subs = regular_elem_abelian_subgroups(g);
  rep.put("regular_subgroups", subs.size(), tag::regular);
  bool all = true;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const bool ok = conjugating_element(g, subs[i], e).has_value();
    all = all && ok;
    rep.put("subgroup" + std::to_string(i) + "_conjugate_to_translations", ok, tag::conj);
  }
  rep.put("all_conjugate", all, tag::conj);
}

FamilyParams Cli::family_params() {
  const FunctionArgs& a = in_.first;
  if (!a.k || !a.s) throw Error(ErrorKind::BadParams, "family needs --k and --s");
  if (*a.k < 3 || *a.k % 2 == 0) throw Error(ErrorKind::BadParams, "k must be odd and >= 3");
  if (std::gcd(*a.k, *a.s) != 1) throw Error(ErrorKind::BadParams, "gcd(k,s) != 1");
  const FieldRef field = field_or(2 * *a.k);
  std::optional<Elem> b, c;
  if (!a.b.empty()) b = element_arg(a.b, field, "b");
  if (!a.c.empty()) c = element_arg(a.c, field, "c");
  return make_family_params(*a.k, *a.s, b, c, field);
}

void put_certificate(Report& rep, const InequivalenceCertificate& cert) {
  const std::string p = "gold_r" + std::to_string(cert.gold_r) + "_";
  rep.put(p + "code_dims", std::to_string(cert.code_dims.first) + "," +
                               std::to_string(cert.code_dims.second));
  rep.put(p + "quadratic", yes(cert.quadratic_flags.first) + "," + yes(cert.quadratic_flags.second),
          tag::quadratic);
  rep.put(p + "codes_equal", cert.codes_equal, tag::equal);
  rep.put(p + "verdict", to_string(cert.verdict), tag::ineq);
  for (const auto& line : cert.reasoning) rep.note("  " + line);
}

void Cli::family_report(bool full) {
  const FamilyParams p = family_params();
  const Field& K = *p.field;
  Report rep = report();
  rep.put("field", K.designation());
  rep.put("k", p.k);
  rep.put("s", p.s);
  rep.put("b", hex(p.b));
  rep.put("c", hex(p.c));
  const FunctionTable f = build_family(p);
  const int du = differential_uniformity(f, threads_);
  rep.put("differential_uniformity", du, tag::apn);
  rep.put("apn", du == 2, tag::family_apn);
  const BinaryCode code = build_code(f);
  rep.put("code_dimension", code.dimension(), tag::family_dim);

  const SubgroupU u = subgroup_U(p);
  rep.put("u_order", to_string(u.group.order()), tag::sub_u);
  rep.put("u_noncommuting_generators",
          std::to_string(u.noncommuting.first) + "," + std::to_string(u.noncommuting.second),
          tag::sub_u);
  if (p.s == 1) {
    const Permutation d = family_automorphism(p, FamilyAut::Delta);
    rep.put("delta_order", element_order(d), tag::delta);
    rep.put("delta_k_is_omega", power(d, p.k) == mult_perm(K, family_omega(p)), tag::delta);
  } else {
    rep.note("delta is defined for s = 1 only");
  }

  // c-independence against the next few admissible values of c.
  std::size_t checked = 0;
  bool indep = true;
  for (Elem d = 0; d < K.size() && checked < 5; ++d) {
    if (d == p.c || in_subfield(K, d, p.k)) continue;
    indep = indep && verify_c_independence(p, d);
    ++checked;
  }
  rep.put("c_values_checked", checked);
  rep.put("c_independence", indep, tag::indep);

  for (int r = 1; r < 2 * p.k; ++r) {
    if (std::gcd(r, 2 * p.k) == 1) put_certificate(rep, gold_comparison(p, r));
  }

  if (full) {
    const AutSearchResult a = full_aut(code);
    const GroupOrder expected = GroupOrder{K.size()} * 3 * p.k * ((GroupOrder{1} << p.k) - 1);
    rep.put("aut_order", to_string(a.group.order()), tag::conjecture);
    rep.put("aut_order_conjectured", to_string(expected), tag::conjecture);
    rep.put("aut_order_matches", a.group.order() == expected, tag::conjecture);
  }
}

void Cli::family_gold(std::optional<int> r) {
  const FamilyParams p = family_params();
  Report rep = report();
  rep.put("field", p.field->designation());
  rep.put("k", p.k);
  rep.put("s", p.s);
  rep.put("b", hex(p.b));
  rep.put("c", hex(p.c));
  if (r) {
    put_certificate(rep, gold_comparison(p, *r));
    return;
  }
  for (int q = 1; q < 2 * p.k; ++q) {
    if (std::gcd(q, 2 * p.k) == 1) put_certificate(rep, gold_comparison(p, q));
  }
}

void add_function_options(CLI::App* app, FunctionArgs& a, bool second = false) {
  const std::string sfx = second ? "2" : "";
  app->add_option("--builtin" + sfx, a.builtin, "gold | family | dillon_h1 | dillon_h2 | dillon_h3");
  app->add_option("--file" + sfx, a.file, "function file");
  app->add_option("--code" + sfx, a.code, "code dump");
  app->add_option("--r" + sfx, a.r, "Gold parameter r");
  app->add_option("--k" + sfx, a.k, "family parameter k");
  app->add_option("--s" + sfx, a.s, "family parameter s");
  app->add_option("--b" + sfx, a.b, "family coefficient b");
  app->add_option("--c" + sfx, a.c, "family coefficient c");
}

int Cli::run(const std::vector<std::string>& args, std::ostream& err) {
  CLI::App app{"apnforge: APN functions, their codes and automorphism groups", "apnforge"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", format_, "text | kv")->check(CLI::IsMember({"text", "kv"}));
  app.add_option("--threads", threads_, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget", budget_, "search budget in seconds")->check(CLI::Range(0.0, 1e9));
  app.add_option("--field", in_.field, "gf2e<n>[:0x<modulus>]");

  std::string out_path, perm_path, gens_path, sub_a, sub_b;
  int cap = 6;
  std::optional<int> gold_r;
  bool full = false;
  std::function<void()> action;

  auto group = [&](const char* name, const char* help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, std::function<void()> fn,
                  bool second = false) {
    auto* s = parent->add_subcommand(name, help);
    add_function_options(s, in_.first);
    if (second) add_function_options(s, in_.second, true);
    s->callback([&action, fn] { action = fn; });
    return s;
  };

  auto* fld = group("field", "finite field information");
  leaf(fld, "info", "modulus, generator, trace mask", [this] { field_info(); });

  auto* fn = group("fn", "function properties");
  leaf(fn, "eval", "value table", [this] { fn_eval(); });
  leaf(fn, "du", "differential uniformity", [this] { fn_du(); });
  leaf(fn, "apn", "APN test", [this] { fn_apn(); });
  leaf(fn, "degree", "algebraic degree", [this] { fn_degree(); });

  auto* code = group("code", "the code C_f");
  leaf(code, "build", "echelon dump of C_f", [&] { code_build(out_path); })
      ->add_option("--out", out_path);
  leaf(code, "dim", "dimension", [this] { code_dim(); });
  leaf(code, "equal", "compare two codes", [this] { code_equal_cmd(); }, true);
  leaf(code, "dualmin", "minimum distance of the dual code", [&] { code_dualmin(cap); })
      ->add_option("--cap", cap)
      ->check(CLI::Range(1, 8));
  leaf(code, "recover-function", "function with the given code", [&] { code_recover(out_path); })
      ->add_option("--out", out_path);
  leaf(code, "witness", "affine witness g = B1 f + B x + t", [this] { code_witness(); }, true);

  auto* aut = group("aut", "automorphisms");
  leaf(aut, "verify", "check permutations", [&] { aut_verify(perm_path); })
      ->add_option("--perm", perm_path)
      ->required();
  leaf(aut, "order", "order of a generated group", [&] { aut_order(gens_path); })
      ->add_option("--gens", gens_path);
  leaf(aut, "full", "full automorphism group", [&] { aut_full(out_path); })
      ->add_option("--gens-out", out_path);
  leaf(aut, "regular-subgroups", "regular elementary abelian subgroups",
       [&] { aut_regular(gens_path); })
      ->add_option("--gens", gens_path);
  auto* conj = leaf(aut, "conjugate", "conjugacy of regular subgroups",
                    [&] { aut_conjugate(gens_path, sub_a, sub_b, out_path); });
  conj->add_option("--gens", gens_path);
  conj->add_option("--sub-a", sub_a);
  conj->add_option("--sub-b", sub_b);
  conj->add_option("--out", out_path);

  auto* fam = group("family", "the trinomial family");
  leaf(fam, "report", "invariants and Gold comparison", [&] { family_report(full); })
      ->add_flag("--full", full, "also compute the full automorphism group");
  leaf(fam, "gold-compare", "inequivalence certificates", [&] { family_gold(gold_r); })
      ->add_option("--gold-r", gold_r, "Gold exponent parameter (default: all valid)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out_ << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out_ << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "apnforge: usage error: " << e.what() << '\n';
    return kExitUser;
  }

  if (const char* path = std::getenv("APNFORGE_MODULUS_TABLE"); path && *path) {
    std::ifstream f(path);
    if (!f) {
      err << "apnforge: error: cannot open modulus table '" << path << "'\n";
      return kExitUser;
    }
    try {
      table_ = parse_modulus_table(f);
    } catch (const Error& e) {
      err << "apnforge: error: modulus table: " << e.what() << '\n';
      return kExitUser;
    }
  }

  try {
    action();
  } catch (const Error& e) {
    err << "apnforge: " << (e.kind() == ErrorKind::Timeout ? "timeout" : "error") << ": "
        << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::Timeout ? kExitTimeout : kExitUser;
  } catch (const std::exception& e) {
    err << "apnforge: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out);
  return cli.run(args, err);
}

}  // namespace apnforge
