#include "document.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "scalarkit/artinian.hpp"
#include "scalarkit/bilinear.hpp"

namespace scalarkit::cli {

using modules::ModuleDesc;
using modules::Summand;
using modules::SummandKind;

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Bilinear: return "bilinear";
    case Kind::Ring: return "ring";
    case Kind::Lie: return "lie";
    case Kind::CommutativeAlgebra: return "commutative-algebra";
    case Kind::Module: return "module";
  }
  return "?";
}

InputError::InputError(std::string category, std::string invariant, std::string pointer, Position where)
    : std::runtime_error(category + " at " + where.to_string() + (pointer.empty() ? "" : " (" + pointer + ")") +
                         ": " + invariant),
      category_(std::move(category)),
      invariant_(std::move(invariant)),
      pointer_(std::move(pointer)),
      where_(where) {}

namespace {

const std::vector<std::string> kKinds = {"bilinear", "ring", "lie", "commutative-algebra", "module"};

[[noreturn]] void invalid(const InputDocument& doc, const std::string& pointer, const std::string& invariant) {
  throw InputError("validation error", invariant, pointer, doc.positions.at(pointer));
}

void check_keys(const InputDocument& doc, const Json& obj, const std::string& pointer,
                const std::vector<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      invalid(doc, pointer_child(pointer, it.key()), "unknown key '" + it.key() + "'");
}

std::vector<std::string> read_names(const InputDocument& doc, const Json& j, const std::string& pointer) {
  if (!j.is_array()) invalid(doc, pointer, "basis must be an array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) invalid(doc, pointer_child(pointer, i), "basis names must be strings");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

CarrierSpec read_carrier(const InputDocument& doc, const Json& obj, const std::string& pointer) {
  CarrierSpec c;
  if (!obj.contains("basis")) invalid(doc, pointer, "missing key 'basis'");
  c.basis = read_names(doc, obj["basis"], pointer_child(pointer, std::string("basis")));
  if (obj.contains("summands")) {
    const Json& s = obj["summands"];
    std::string sp = pointer_child(pointer, std::string("summands"));
    if (!s.is_array()) invalid(doc, sp, "summands must be an array");
    c.summands = std::vector<Json>(s.begin(), s.end());
  }
  return c;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; });
}

Integer read_integer(const InputDocument& doc, const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Integer(j.dump());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return Integer(s);
  }
  invalid(doc, pointer, "expected a non-negative integer");
}

Rational read_rational(const InputDocument& doc, const Json& j, const std::string& pointer, const Domain& d) {
  try {
    if (j.is_number_integer()) return Scalar(d, Rational(Integer(j.dump()))).value();
    if (j.is_string()) return Scalar::parse(d, j.get<std::string>()).value();
  } catch (const Error& e) {
    invalid(doc, pointer, "not a literal of " + d.to_string() + ": " + e.detail());
  }
  if (j.is_number_float()) invalid(doc, pointer, "floating-point literals are not exact; write \"p/q\"");
  invalid(doc, pointer, "expected an exact literal string such as \"3/4\"");
}

const char* kDomainGrammar = "domain must be \"Q\", \"Z\", {\"gf\": p}, {\"zmod\": m} or {\"ext\": {\"base\", \"minpoly\"}}";

Domain read_domain(const InputDocument& doc, const Json& j, const std::string& pointer) {
  if (j.is_string()) {
    if (j == "Q") return Domain::rationals();
    if (j == "Z") return Domain::integers();
    invalid(doc, pointer, kDomainGrammar);
  }
  if (!j.is_object() || j.size() != 1) invalid(doc, pointer, kDomainGrammar);
  const std::string tag = j.begin().key();
  const Json& v = j.begin().value();
  const std::string vp = pointer_child(pointer, tag);
  if (tag == "gf") {
    Integer p = read_integer(doc, v, vp);
    if (p < 2 || !is_probable_prime(p)) invalid(doc, vp, "gf modulus must be prime");
    return Domain::prime_field(p);
  }
  if (tag == "zmod") {
    Integer m = read_integer(doc, v, vp);
    if (m < 2) invalid(doc, vp, "zmod modulus must be at least 2");
    return Domain::residues(m);
  }
  if (tag == "ext") {
    if (!v.is_object()) invalid(doc, vp, "ext must be an object with keys base and minpoly");
    check_keys(doc, v, vp, {"base", "minpoly"});
    if (!v.contains("base")) invalid(doc, vp, "missing key 'base'");
    if (!v.contains("minpoly")) invalid(doc, vp, "missing key 'minpoly'");
    const std::string bp = pointer_child(vp, std::string("base"));
    Domain base = read_domain(doc, v["base"], bp);
    if (base.kind() != DomainKind::Rationals && base.kind() != DomainKind::PrimeField)
      invalid(doc, bp, "extension base must be \"Q\" or {\"gf\": p}");
    const std::string mp = pointer_child(vp, std::string("minpoly"));
    const Json& m = v["minpoly"];
    if (!m.is_array()) invalid(doc, mp, "minpoly must be an array of coefficients, constant term first");
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < m.size(); ++i) coeffs.push_back(read_rational(doc, m[i], pointer_child(mp, i), base));
    try {
      return Domain::extension(base, coeffs);
    } catch (const Error& e) {
      invalid(doc, mp, "minpoly must be irreducible of degree at least 2: " + e.detail());
    }
  }
  invalid(doc, pointer, kDomainGrammar);
}

Summand line_of(const Domain& d) {
  switch (d.kind()) {
    case DomainKind::Rationals: return Summand::rational_line();
    case DomainKind::Integers: return Summand::free_int_line();
    case DomainKind::PrimeField:
    case DomainKind::Residues: return Summand::cyclic(d.modulus());
    case DomainKind::Extension: return Summand::field_line(d);
  }
  return Summand::rational_line();
}

ModuleDesc read_module(const InputDocument& doc, const Domain& d, const CarrierSpec& spec, const std::string& pointer) {
  const std::string bp = pointer_child(pointer, std::string("basis"));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < spec.basis.size(); ++i) {
    const std::string& name = spec.basis[i];
    if (!valid_name(name)) invalid(doc, pointer_child(bp, i), "basis name '" + name + "' must be an identifier");
    if (!seen.insert(name).second) invalid(doc, pointer_child(bp, i), "basis name '" + name + "' is repeated");
  }
  const std::size_t n = spec.basis.size();
  if (!spec.summands) {
    if (d.is_field()) return ModuleDesc::vector_space(d, n);
    return ModuleDesc(std::vector<Summand>(n, line_of(d)));
  }
  const std::string sp = pointer_child(pointer, std::string("summands"));
  if (spec.summands->size() != n) invalid(doc, sp, "summands and basis must have the same length");
  std::vector<Summand> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string ip = pointer_child(sp, i);
    Summand s = line_of(read_domain(doc, (*spec.summands)[i], ip));
    if (d.is_field() && !(s == line_of(d)))
      invalid(doc, ip, "summands over the field " + d.to_string() + " must be lines over it");
    if (d.kind() == DomainKind::Integers && s.kind == SummandKind::FieldLine)
      invalid(doc, ip, "summands over Z must be \"Q\", \"Z\", {\"gf\": p} or {\"zmod\": m}");
    if (d.kind() == DomainKind::Residues &&
        (s.kind != SummandKind::Cyclic || d.modulus() % s.modulus != 0))
      invalid(doc, ip, "summands over " + d.to_string() + " must be cyclic of order dividing " + d.modulus().get_str());
    out.push_back(s);
  }
  if (d.is_field()) return ModuleDesc::vector_space(d, n);
  return ModuleDesc(out);
}

Scalar read_entry(const InputDocument& doc, const Json& j, const std::string& pointer, const Domain& d) {
  if (d.kind() == DomainKind::Extension) {
    if (j.is_array()) {
      if (j.size() > d.degree()) invalid(doc, pointer, "more coefficients than the extension degree");
      std::vector<Rational> c;
      for (std::size_t i = 0; i < j.size(); ++i) c.push_back(read_rational(doc, j[i], pointer_child(pointer, i), d.base()));
      return Scalar::from_coefficients(d, c);
    }
    return Scalar(d, read_rational(doc, j, pointer, d.base()));
  }
  if (d.kind() == DomainKind::Residues && j.is_string() && j.get<std::string>().find('/') != std::string::npos)
    invalid(doc, pointer, "fractions are not literals of " + d.to_string());
  return Scalar(d, read_rational(doc, j, pointer, d));
}

Vector solve_unit(const Structure& s) {
  const std::size_t n = s.carrier.size();
  Matrix m(s.domain, n * n, n);
  Vector rhs = zero_vector(s.domain, n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) m(j * n + k, i) = s.table[i][j][k];
      if (j == k) rhs[j * n + k] = Scalar::one(s.domain);
    }
  auto sol = solve(m, rhs);
  if (!sol) fail(ErrorCode::InvalidStructure, "the algebra has no unit element");
  return sol->particular;
}

}  // namespace

InputDocument parse_document(const std::string& text) {
  InputDocument doc;
  ParsedJson parsed;
  try {
    parsed = parse_json_with_positions(text);
  } catch (const JsonSyntaxError& e) {
    throw InputError("parse error", e.what(), "", e.where());
  }
  doc.positions = std::move(parsed.positions);
  const Json& root = parsed.value;
  if (!root.is_object()) invalid(doc, "", "the document must be a JSON object");
  check_keys(doc, root, "", {"kind", "domain", "summands", "basis", "codomain", "table"});
  if (!root.contains("kind")) invalid(doc, "", "missing key 'kind'");
  if (!root["kind"].is_string() ||
      std::find(kKinds.begin(), kKinds.end(), root["kind"].get<std::string>()) == kKinds.end())
    invalid(doc, "/kind", "kind must be one of bilinear, ring, lie, commutative-algebra, module");
  doc.kind = root["kind"].get<std::string>();
  if (!root.contains("domain")) invalid(doc, "", "missing key 'domain'");
  doc.domain = root["domain"];
  doc.carrier = read_carrier(doc, root, "");
  if (root.contains("codomain")) {
    if (!root["codomain"].is_object()) invalid(doc, "/codomain", "codomain must be an object");
    check_keys(doc, root["codomain"], "/codomain", {"summands", "basis"});
    doc.codomain = read_carrier(doc, root["codomain"], "/codomain");
  }
  if (root.contains("table")) doc.table = root["table"];
  return doc;
}

Json serialize_document(const InputDocument& doc) {
  auto carrier = [](Json& out, const CarrierSpec& c) {
    if (c.summands) out["summands"] = Json(*c.summands);
    out["basis"] = c.basis;
  };
  Json out = Json::object();
  out["kind"] = doc.kind;
  out["domain"] = doc.domain;
  carrier(out, doc.carrier);
  if (doc.codomain) {
    Json c = Json::object();
    carrier(c, *doc.codomain);
    out["codomain"] = c;
  }
  if (doc.table) out["table"] = *doc.table;
  return out;
}

std::string dump_document(const InputDocument& doc) { return serialize_document(doc).dump(2) + "\n"; }

Structure load_structure(const InputDocument& doc) {
  Structure s;
  s.kind = static_cast<Kind>(std::find(kKinds.begin(), kKinds.end(), doc.kind) - kKinds.begin());
  s.domain = read_domain(doc, doc.domain, "/domain");
  s.carrier = read_module(doc, s.domain, doc.carrier, "");
  s.names = doc.carrier.basis;
  if (doc.codomain && s.kind != Kind::Bilinear) invalid(doc, "/codomain", "codomain is only allowed for kind bilinear");
  if (doc.codomain) {
    s.codomain = read_module(doc, s.domain, *doc.codomain, "/codomain");
    s.codomain_names = doc.codomain->basis;
  } else {
    s.codomain = s.carrier;
    s.codomain_names = s.names;
  }
  if (s.kind == Kind::Module) {
    if (doc.table) invalid(doc, "/table", "module documents take no table");
    return s;
  }
  if (!doc.table) invalid(doc, "", "missing key 'table'");
  const Json& t = *doc.table;
  const std::size_t n = s.carrier.size();
  const std::size_t m = s.codomain.size();
  auto shape = [&](const Json& j, const std::string& p, std::size_t len, const std::string& what) {
    if (!j.is_array() || j.size() != len)
      invalid(doc, p, what + " must be an array of length " + std::to_string(len));
  };
  shape(t, "/table", n, "table");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string ip = pointer_child("/table", i);
    shape(t[i], ip, n, "table row");
    std::vector<Vector> row;
    for (std::size_t j = 0; j < n; ++j) {
      const std::string jp = pointer_child(ip, j);
      shape(t[i][j], jp, m, "table entry (coordinates of a product)");
      Vector v;
      for (std::size_t k = 0; k < m; ++k)
        v.push_back(read_entry(doc, t[i][j][k], pointer_child(jp, k), s.codomain[k].coordinate_domain()));
      row.push_back(std::move(v));
    }
    s.table.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((s.carrier[i].divisible() && s.carrier[j].bounded()) || (s.carrier[i].bounded() && s.carrier[j].divisible()))
        if (!is_zero(s.table[i][j]))
          invalid(doc, pointer_child(pointer_child("/table", i), j),
                  "a divisible and a bounded summand must multiply to zero");
  try {
    bilinear::BilinearMap(s.carrier, s.codomain, s.table);
  } catch (const Error& e) {
    invalid(doc, "/table", e.detail());
  }
  if (s.kind == Kind::CommutativeAlgebra) {
    if (!s.domain.is_field()) invalid(doc, "/domain", "commutative-algebra needs a field domain");
    try {
      commutative_algebra(s);
    } catch (const Error& e) {
      invalid(doc, "/table", "not a commutative unital associative algebra: " + e.detail());
    }
  }
  return s;
}

artinian::CommutativeAlgebra commutative_algebra(const Structure& s) {
  return artinian::CommutativeAlgebra(s.domain, s.table, solve_unit(s));
}

Structure extend_structure(const Structure& s, const std::vector<Rational>& minpoly) {
  if (s.domain.kind() != DomainKind::Rationals && s.domain.kind() != DomainKind::PrimeField)
    throw InputError("validation error", "--extension needs a Q or GF(p) domain, not " + s.domain.to_string(), "", {});
  Domain k;
  try {
    k = Domain::extension(s.domain, minpoly);
  } catch (const Error& e) {
    throw InputError("validation error", "--extension minpoly must be irreducible of degree at least 2: " + e.detail(),
                     "", {});
  }
  Structure out = s;
  out.domain = k;
  out.carrier = ModuleDesc::vector_space(k, s.carrier.size());
  out.codomain = ModuleDesc::vector_space(k, s.codomain.size());
  for (auto& row : out.table)
    for (auto& v : row)
      for (auto& x : v) x = Scalar(k, x.value());
  return out;
}

namespace {

[[noreturn]] void bad_element(const std::string& text, const std::string& why) {
  throw InputError("validation error", "element '" + text + "': " + why, "", {});
}

Scalar element_literal(const Domain& d, const std::string& text, const std::string& whole) {
  try {
    return Scalar::parse(d, text);
  } catch (const Error& e) {
    bad_element(whole, e.detail());
  }
}

}  // namespace

Vector parse_element(const Structure& s, const std::string& input) {
  std::string text;
  for (char c : input)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  const std::size_t n = s.carrier.size();
  if (text.empty()) bad_element(input, "empty");
  if (text.front() == '(') {
    if (text.back() != ')') bad_element(input, "missing ')'");
    std::vector<std::string> parts;
    std::string cur;
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
      if (text[i] == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += text[i];
      }
    }
    parts.push_back(cur);
    if (parts.size() != n) bad_element(input, "expected " + std::to_string(n) + " coordinates");
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(element_literal(s.carrier[i].coordinate_domain(), parts[i], input));
    return v;
  }
  Vector v = s.carrier.zero();
  std::size_t i = 0;
  while (i < text.size()) {
    bool negative = false;
    while (i < text.size() && (text[i] == '+' || text[i] == '-')) negative ^= text[i++] == '-';
    std::size_t j = i;
    while (j < text.size() && text[j] != '+' && text[j] != '-') ++j;
    std::string term = text.substr(i, j - i);
    if (term.empty()) bad_element(input, "empty term");
    std::string coef = "1", name = term;
    auto star = term.find('*');
    if (star != std::string::npos) {
      coef = term.substr(0, star);
      name = term.substr(star + 1);
    }
    auto it = std::find(s.names.begin(), s.names.end(), name);
    if (it == s.names.end()) bad_element(input, "unknown basis name '" + name + "'");
    std::size_t k = static_cast<std::size_t>(it - s.names.begin());
    Scalar c = element_literal(s.carrier[k].coordinate_domain(), coef, input);
    v[k] = negative ? v[k] - c : v[k] + c;
    i = j;
  }
  return v;
}

std::string combination(const std::vector<std::string>& names, const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    std::string c = v[i].to_string();
    std::string term;
    if (c == "1") {
      term = names[i];
    } else if (c == "-1") {
      term = "-" + names[i];
    } else {
      bool compound = c.find(' ') != std::string::npos || c.find('+') != std::string::npos ||
                      c.find('-', 1) != std::string::npos;
      term = (compound ? "(" + c + ")" : c) + "*" + names[i];
    }
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

std::string tuple(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].to_string();
  return out + ")";
}

}  // namespace scalarkit::cli
