#include "report.hpp"

#include "document.hpp"

namespace scalarkit::cli {

namespace {

bool is_leaf(const Json& j) { return !j.is_object() && !j.is_array(); }

constexpr std::size_t kInlineWidth = 100;

bool is_flat(const Json& j) {
  if (!j.is_array()) return false;
  std::size_t width = 0;
  for (const auto& e : j) {
    if (!is_leaf(e)) return false;
    width += (e.is_string() ? e.get<std::string>().size() : e.dump().size()) + 2;
  }
  return width <= kInlineWidth;
}

std::string leaf(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

std::string flat(const Json& j) {
  std::string out = "[";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + leaf(j[i]);
  return out + "]";
}

void emit(std::string& out, const Json& j, const std::string& indent);

void emit_value(std::string& out, const std::string& head, const Json& v, const std::string& indent) {
  if (is_leaf(v)) {
    out += head + " " + leaf(v) + "\n";
  } else if (is_flat(v)) {
    out += head + " " + flat(v) + "\n";
  } else if (v.empty()) {
    out += head + (v.is_object() ? " {}" : " []") + "\n";
  } else {
    out += head + "\n";
    emit(out, v, indent + "  ");
  }
}

void emit(std::string& out, const Json& j, const std::string& indent) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) emit_value(out, indent + it.key() + ":", it.value(), indent);
    return;
  }
  for (const auto& e : j) {
    if (is_leaf(e)) {
      out += indent + "- " + leaf(e) + "\n";
    } else if (is_flat(e)) {
      out += indent + "- " + flat(e) + "\n";
    } else {
      std::string inner;
      emit(inner, e, indent + "  ");
      // The first line of an item carries the dash.
      out += indent + "- " + inner.substr(indent.size() + 2);
    }
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::string out;
  if (is_leaf(report))
    out = leaf(report) + "\n";
  else
    emit(out, report, "");
  return out;
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

Json combinations_json(const std::vector<std::string>& names, const std::vector<Vector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(combination(names, v));
  return out;
}

Json span_json(const std::vector<std::string>& names, const std::vector<Vector>& vs) {
  Json out = Json::object();
  out["dim"] = vs.size();
  out["basis"] = combinations_json(names, vs);
  return out;
}

}  // namespace scalarkit::cli
