#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json_source.hpp"
#include "scalarkit/artinian.hpp"
#include "scalarkit/modules.hpp"

namespace scalarkit::cli {

enum class Kind { Bilinear, Ring, Lie, CommutativeAlgebra, Module };

std::string kind_name(Kind k);

/// Malformed or invalid input; exit code 1.
class InputError : public std::runtime_error {
 public:
  InputError(std::string category, std::string invariant, std::string pointer, Position where);
  const std::string& category() const { return category_; }
  const std::string& invariant() const { return invariant_; }
  const std::string& pointer() const { return pointer_; }
  Position where() const { return where_; }

 private:
  std::string category_;  // "parse error" or "validation error"
  std::string invariant_;
  std::string pointer_;
  Position where_;
};

struct CarrierSpec {
  std::optional<std::vector<Json>> summands;
  std::vector<std::string> basis;

  bool operator==(const CarrierSpec& o) const = default;
};

/// The input file as written. Literals stay unparsed so the model
/// round-trips through serialization.
struct InputDocument {
  std::string kind;
  Json domain;
  CarrierSpec carrier;
  std::optional<CarrierSpec> codomain;
  std::optional<Json> table;
  SourceMap positions;  // not part of the model

  bool operator==(const InputDocument& o) const {
    return kind == o.kind && domain == o.domain && carrier == o.carrier && codomain == o.codomain && table == o.table;
  }
};

/// JSON syntax and document shape. Throws InputError.
InputDocument parse_document(const std::string& text);
Json serialize_document(const InputDocument& doc);
std::string dump_document(const InputDocument& doc);

/// The document read as exact algebraic data.
struct Structure {
  Kind kind = Kind::Ring;
  Domain domain;
  modules::ModuleDesc carrier;
  modules::ModuleDesc codomain;
  std::vector<std::string> names;
  std::vector<std::string> codomain_names;
  std::vector<std::vector<Vector>> table;  // empty for modules
};

/// Checks every invariant of the schema and the literals. Throws InputError.
Structure load_structure(const InputDocument& doc);

/// The unital algebra of a commutative-algebra document; the unit is solved for.
artinian::CommutativeAlgebra commutative_algebra(const Structure& s);

/// Base change of a structure over Q or GF(p) to base[a]/(minpoly).
Structure extend_structure(const Structure& s, const std::vector<Rational>& minpoly);

/// "(1,0,1/2)" or a combination of basis names such as "x - 1/2*z".
Vector parse_element(const Structure& s, const std::string& text);

/// Basis names weighted by the coordinates, e.g. "x + 1/2*z".
std::string combination(const std::vector<std::string>& names, const Vector& v);
/// "(1,0,1/2)"
std::string tuple(const Vector& v);

}  // namespace scalarkit::cli
