#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ybp/errors.hpp"
#include "ybp/pipeline.hpp"
#include "ybp/problem.hpp"

#ifndef YBCHECK_FIXTURE_DIR
#define YBCHECK_FIXTURE_DIR "fixtures"
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ybp::InputError(ybp::errcode::schema, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool env_verbose() {
  const char* v = std::getenv("YBCHECK_VERBOSE");
  return v != nullptr && std::string(v) == "1";
}

int run_one(const std::string& path, const ybp::RunOptions& opt, const std::string& format) {
  ybp::ProblemSpec spec = ybp::parse_problem(slurp(path));
  ybp::Report rep = ybp::run_pipeline(spec, opt);
  if (format == "json")
    std::cout << ybp::emit_report_json(rep, opt.verbose);
  else
    std::cout << ybp::emit_report_text(rep);
  return ybp::report_exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifies Poisson structures induced by Yang-Baxter solutions"};
  app.require_subcommand(1);

  std::string file;
  ybp::RunOptions opt;
  std::string format = "text";
  auto* check = app.add_subcommand("check", "run the checks on one problem file");
  check->add_option("file", file, "problem description (JSON)")->required();
  check->add_option("--only", opt.only, "comma-separated subset of checks")->delimiter(',');
  check->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  check->add_flag("--verbose", opt.verbose, "include timings in the report");

  std::string dir = YBCHECK_FIXTURE_DIR;
  auto* fixtures = app.add_subcommand("fixtures", "operate on the bundled problem files");
  fixtures->require_subcommand(1);
  auto* list = fixtures->add_subcommand("list", "list bundled problem files");
  auto* runall = fixtures->add_subcommand("run-all", "run the checks on every bundled file");
  for (auto* s : {list, runall})
    s->add_option("--dir", dir, "directory containing problem files");

  CLI11_PARSE(app, argc, argv);
  if (env_verbose()) opt.verbose = true;

  try {
    if (check->parsed()) return run_one(file, opt, format);
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (list->parsed()) {
      for (const auto& p : files) std::cout << p.filename().string() << "\n";
      return 0;
    }
    int worst = 0;
    for (const auto& p : files) worst = std::max(worst, run_one(p.string(), opt, format));
    return worst;
  } catch (const ybp::InputError& e) {
    std::cerr << "input error [" << e.code << "]: " << e.what() << "\n";
    return 2;
  } catch (const ybp::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
