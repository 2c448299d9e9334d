#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "document.hpp"

namespace scalarkit::cli {

struct Options {
  bool witnesses = false;
  unsigned max_class = 6;
  unsigned width_bound = 8;
  std::uint64_t seed = 0x5eed;
  bool absolute = false;
  std::optional<std::vector<Rational>> extension;
};

/// A library error raised inside a named stage; exit code 2. The report
/// built so far, ending in a failed_stage entry, travels with it.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const Error& cause, Json partial);
  const std::string& stage() const { return stage_; }
  ErrorCode code() const { return code_; }
  const Json& partial() const { return partial_; }

 private:
  std::string stage_;
  ErrorCode code_;
  Json partial_;
};

/// "-2,0,1" (constant term first). Throws InputError.
std::vector<Rational> parse_minpoly_flag(const std::string& text);

/// The canonical pipeline for the document's kind.
Json analyze(const InputDocument& doc, const Options& options);

/// subcommand: mul, pow, comm or decompose.
Json malcev(const std::string& subcommand, const InputDocument& doc, const std::vector<std::string>& args,
            const Options& options);

}  // namespace scalarkit::cli
