#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "document.hpp"
#include "pipelines.hpp"
#include "report.hpp"
#include "selftest.hpp"

#ifndef SCALARKIT_FIXTURE_DIR
#define SCALARKIT_FIXTURE_DIR "fixtures"
#endif

namespace {

using namespace scalarkit::cli;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kPipeline = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("validation error", "cannot read file '" + path + "'", "", {});
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_input_error(const std::string& file, const InputError& e) {
  std::cerr << (file.empty() ? "scalarkit" : file);
  if (e.where().line) std::cerr << ":" << e.where().line << ":" << e.where().column;
  std::cerr << ": " << e.category() << ": " << e.invariant();
  if (!e.pointer().empty()) std::cerr << " [" << e.pointer() << "]";
  std::cerr << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact structure analysis of finite-dimensional rings, bilinear maps and nilpotent Lie algebras"};
  app.require_subcommand(1);

  std::string format = "text";
  Options options;
  std::string extension;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--witnesses", options.witnesses, "Include basis-change matrices and witnesses");
  app.add_option("--max-class", options.max_class, "Largest nilpotency class accepted")->check(CLI::Range(1, 6));
  app.add_option("--width-bound", options.width_bound, "Search bound for widths");
  app.add_option("--seed", options.seed, "Seed for idempotent probing");
  app.add_option("--extension", extension, "Pre-extend the field by a minimal polynomial, coefficients constant first");
  app.add_flag("--absolute", options.absolute, "Require split residue fields (NeedsExtension otherwise)");

  std::vector<std::string> analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the canonical pipeline: analyze [KIND] FILE");
  analyze_cmd->add_option("args", analyze_args, "Optional kind, then the input file")->required()->expected(1, 2);
  analyze_cmd->fallthrough();

  std::string malcev_op, malcev_file;
  std::vector<std::string> malcev_args;
  auto* malcev_cmd = app.add_subcommand("malcev", "Group operations in exp(L) on log coordinates");
  malcev_cmd->add_option("op", malcev_op, "mul, pow, comm or decompose")
      ->required()
      ->check(CLI::IsMember({"mul", "pow", "comm", "decompose"}));
  malcev_cmd->add_option("file", malcev_file, "Lie algebra input file")->required();
  malcev_cmd->add_option("elements", malcev_args, "Element literals such as \"(1,0,0)\" or \"x + 1/2*z\"");
  malcev_cmd->fallthrough();

  std::string level = "quick";
  std::string fixture_dir = SCALARKIT_FIXTURE_DIR;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the brute-force oracle suites");
  selftest_cmd->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  selftest_cmd->add_option("--fixtures", fixture_dir, "Fixture directory");
  selftest_cmd->fallthrough();

  std::string normalize_file;
  auto* normalize_cmd = app.add_subcommand("normalize", "Print the canonical serialization of an input file");
  normalize_cmd->add_option("file", normalize_file, "Input file")->required();
  normalize_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  auto emit = [&](const Json& report) {
    std::cout << (format == "json" ? render_json(report) : render_text(report));
  };

  std::string file;
  try {
    if (!extension.empty()) options.extension = parse_minpoly_flag(extension);
    if (*selftest_cmd) {
      Json report = selftest(level == "full" ? SelftestLevel::Full : SelftestLevel::Quick, fixture_dir);
      emit(report);
      return selftest_passed(report) ? kOk : kPipeline;
    }
    if (*normalize_cmd) {
      file = normalize_file;
      std::cout << dump_document(parse_document(read_file(file)));
      return kOk;
    }
    if (*analyze_cmd) {
      file = analyze_args.back();
      InputDocument doc = parse_document(read_file(file));
      if (analyze_args.size() == 2) {
        const std::string& kind = analyze_args.front();
        if (kind != "bilinear" && kind != "ring" && kind != "lie" && kind != "commutative-algebra" && kind != "module")
          throw InputError("validation error",
                           "kind must be one of bilinear, ring, lie, commutative-algebra, module; got '" + kind + "'",
                           "", {});
        doc.kind = kind;
        if (kind == "module") doc.table.reset();
      }
      emit(analyze(doc, options));
      return kOk;
    }
    file = malcev_file;
    InputDocument doc = parse_document(read_file(file));
    emit(malcev(malcev_op, doc, malcev_args, options));
    return kOk;
  } catch (const InputError& e) {
    print_input_error(file, e);
    return kInvalid;
  } catch (const PipelineError& e) {
    emit(e.partial());
    std::cerr << file << ": pipeline error: " << e.what() << "\n";
    return kPipeline;
  } catch (const scalarkit::Error& e) {
    std::cerr << (file.empty() ? "scalarkit" : file) << ": error: " << error_code_name(e.code()) << ": " << e.detail()
              << "\n";
    return kPipeline;
  }
}
