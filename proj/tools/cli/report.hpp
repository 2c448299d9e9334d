#pragma once

#include <string>
#include <vector>

#include "json_source.hpp"
#include "scalarkit/matrix.hpp"

namespace scalarkit::cli {

/// Indented "key: value" lines; arrays of scalars stay on one line.
std::string render_text(const Json& report);
std::string render_json(const Json& report);

Json matrix_json(const Matrix& m);
Json vector_json(const Vector& v);
/// Each vector as a combination of the names.
Json combinations_json(const std::vector<std::string>& names, const std::vector<Vector>& vs);
/// {"dim": n, "basis": [...]}
Json span_json(const std::vector<std::string>& names, const std::vector<Vector>& vs);

}  // namespace scalarkit::cli
