#include "apnforge/textio.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace apnforge {

namespace {

Error parse_error(const std::string& what, std::size_t line) {
  return Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Next non-blank, non-comment line; false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    line = trim(raw);
    if (!line.empty() && line[0] != '#') return true;
  }
  return false;
}

int designation_degree(const std::string& d) {
  int n = 0;
  if (d.rfind("gf2e", 0) != 0) throw Error(ErrorKind::Parse, "bad field designation '" + d + "'");
  auto [p, ec] = std::from_chars(d.data() + 4, d.data() + d.size(), n);
  if (ec != std::errc{} || p == d.data() + 4) {
    throw Error(ErrorKind::Parse, "bad field designation '" + d + "'");
  }
  return n;
}

std::size_t read_key(const std::string& token, const std::string& key, std::size_t lineno) {
  if (token.rfind(key + "=", 0) != 0) throw parse_error("expected " + key + "=<value>", lineno);
  try {
    return static_cast<std::size_t>(parse_number(token.substr(key.size() + 1)));
  } catch (const Error&) {
    throw parse_error("bad value in '" + token + "'", lineno);
  }
}

}  // namespace

std::uint64_t parse_number(const std::string& text) {
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const char* first = text.data() + (hex ? 2 : 0);
  const char* last = text.data() + text.size();
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(first, last, v, hex ? 16 : 10);
  if (text.empty() || ec != std::errc{} || p != last || first == last) {
    throw Error(ErrorKind::Parse, "bad number '" + text + "'");
  }
  return v;
}

ModulusTable parse_modulus_table(std::istream& in) {
  ModulusTable table;
  std::string line;
  std::size_t lineno = 0;
  while (next_line(in, line, lineno)) {
    std::istringstream ss(line);
    std::string kw, designation;
    ss >> kw >> designation;
    if (kw != "field" || designation.find(':') == std::string::npos) {
      throw parse_error("expected 'field gf2e<n>:0x<hex>'", lineno);
    }
    const FieldRef f = parse_field(designation);
    table[f->degree()] = f->modulus();
  }
  return table;
}

FieldRef resolve_field(const std::string& designation, const ModulusTable& table) {
  const int n = designation_degree(designation);
  std::optional<std::uint32_t> fallback;
  if (auto it = table.find(n); it != table.end()) fallback = it->second;
  return parse_field(designation, fallback);
}

PolySpec parse_function(std::istream& in, const ModulusTable& table) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw Error(ErrorKind::Parse, "empty function file");
  std::istringstream head(line);
  std::string kw, designation, extra;
  head >> kw >> designation;
  if (kw != "field" || designation.empty() || (head >> extra)) {
    throw parse_error("expected 'field gf2e<n>[:0x<hex>]'", lineno);
  }
  const FieldRef field = resolve_field(designation, table);
  std::vector<Term> terms;
  while (next_line(in, line, lineno)) {
    std::istringstream ss(line);
    std::string coeff, exponent;
    ss >> kw >> coeff >> exponent;
    if (kw != "term" || exponent.empty() || (ss >> extra) || coeff.rfind("0x", 0) != 0) {
      throw parse_error("expected 'term 0x<coeff> <exponent>'", lineno);
    }
    const std::uint64_t c = parse_number(coeff);
    const std::uint64_t e = parse_number(exponent);
    if (c >= field->size() || e >= field->size()) {
      throw parse_error("coefficient or exponent out of range", lineno);
    }
    terms.push_back({static_cast<Elem>(c), static_cast<std::uint32_t>(e)});
  }
  return PolySpec(field, std::move(terms));
}

void write_function(std::ostream& out, const PolySpec& p) {
  out << "field " << p.field()->designation() << '\n';
  for (const Term& t : p.terms()) {
    out << "term 0x" << std::hex << t.coeff << std::dec << ' ' << t.exponent << '\n';
  }
}

BinaryCode parse_code(std::istream& in, const FieldRef& field) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw Error(ErrorKind::Parse, "empty code dump");
  std::istringstream head(line);
  std::string kw, tn, tlen, tdim;
  head >> kw >> tn >> tlen >> tdim;
  if (kw != "binarycode") throw parse_error("expected 'binarycode n=.. len=.. dim=..'", lineno);
  const std::size_t n = read_key(tn, "n", lineno);
  const std::size_t len = read_key(tlen, "len", lineno);
  const std::size_t dim = read_key(tdim, "dim", lineno);
  if (n != static_cast<std::size_t>(field->degree()) || len != field->size()) {
    throw Error(ErrorKind::FieldMismatch, "code dump does not match field " + field->designation());
  }
  BitMatrix rows(0, len);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!next_line(in, line, lineno)) throw Error(ErrorKind::Parse, "code dump ends early");
    if (line.size() != len || line.find_first_not_of("01") != std::string::npos) {
      throw parse_error("row must have " + std::to_string(len) + " characters over {0,1}", lineno);
    }
    rows.append_zero_row();
    for (std::size_t x = 0; x < len; ++x) rows.set(r, x, line[x] == '1');
  }
  if (next_line(in, line, lineno)) throw parse_error("trailing data after code rows", lineno);
  BinaryCode code(field, std::move(rows));
  if (code.dimension() != dim) {
    throw Error(ErrorKind::Parse, "code rows are linearly dependent");
  }
  return code;
}

void write_code(std::ostream& out, const BinaryCode& c) {
  const Rref& e = c.echelon();
  out << "binarycode n=" << c.field()->degree() << " len=" << c.length()
      << " dim=" << c.dimension() << '\n';
  std::string row(c.length(), '0');
  for (std::size_t r = 0; r < e.rank(); ++r) {
    for (std::size_t x = 0; x < c.length(); ++x) row[x] = e.basis.get(r, x) ? '1' : '0';
    out << row << '\n';
  }
}

std::vector<Permutation> parse_permutations(std::istream& in) {
  std::vector<Permutation> out;
  std::string token;
  while (in >> token) {
    if (token[0] == '#') {
      std::getline(in, token);
      continue;
    }
    std::string size_tok;
    if (token != "perm" || !(in >> size_tok) || size_tok.size() < 4 ||
        size_tok.rfind("n=", 0) != 0 || size_tok.back() != ':') {
      throw Error(ErrorKind::Parse, "expected 'perm n=<N>:'");
    }
    const std::uint64_t n = parse_number(size_tok.substr(2, size_tok.size() - 3));
    std::vector<Point> img(n);
    for (auto& v : img) {
      if (!(in >> token)) throw Error(ErrorKind::Parse, "permutation ends early");
      const std::uint64_t x = parse_number(token);
      if (x >= n) throw Error(ErrorKind::Parse, "image " + token + " outside 0.." + std::to_string(n - 1));
      v = static_cast<Point>(x);
    }
    out.emplace_back(std::move(img));
  }
  return out;
}

void write_permutation(std::ostream& out, const Permutation& p) {
  out << "perm n=" << p.size() << ":";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << (i % 16 == 0 ? "\n" : " ") << p(static_cast<Point>(i));
  }
  out << '\n';
}

}  // namespace apnforge
