#pragma once

#include <string>
#include <vector>

#include "json_source.hpp"

namespace scalarkit::cli {

enum class SelftestLevel { Quick, Full };

/// A shipped fixture and the outcome its canonical pipeline must have.
struct FixtureExpectation {
  std::string file;
  std::string failing_stage;  // empty when the pipeline must succeed
};

const std::vector<FixtureExpectation>& shipped_fixtures();

/// Oracle suites plus the fixture round trips. Failures are report content.
Json selftest(SelftestLevel level, const std::string& fixture_dir);

/// True when every suite in a selftest report passed.
bool selftest_passed(const Json& report);

}  // namespace scalarkit::cli
