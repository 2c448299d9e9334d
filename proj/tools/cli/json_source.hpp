#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace scalarkit::cli {

using Json = nlohmann::ordered_json;

struct Position {
  std::size_t line = 0;    // 1-based; 0 when unknown
  std::size_t column = 0;  // 1-based, in bytes

  std::string to_string() const;
};

/// Start position of every value, keyed by JSON pointer ("" is the root).
class SourceMap {
 public:
  void set(const std::string& pointer, Position p) { positions_[pointer] = p; }
  /// Position of the pointer, or of its nearest recorded ancestor.
  Position at(const std::string& pointer) const;

 private:
  std::map<std::string, Position> positions_;
};

/// Malformed JSON or a duplicate object key.
class JsonSyntaxError : public std::runtime_error {
 public:
  JsonSyntaxError(const std::string& message, Position where)
      : std::runtime_error(message), where_(where) {}
  Position where() const { return where_; }

 private:
  Position where_;
};

struct ParsedJson {
  Json value;
  SourceMap positions;
};

/// Parses UTF-8 JSON text, recording where each value starts.
ParsedJson parse_json_with_positions(const std::string& text);

/// Appends one pointer segment, escaping '~' and '/'.
std::string pointer_child(const std::string& parent, const std::string& key);
std::string pointer_child(const std::string& parent, std::size_t index);

}  // namespace scalarkit::cli
