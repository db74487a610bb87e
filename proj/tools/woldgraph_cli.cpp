#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <woldgraph/woldgraph.hpp>

namespace {

int emit(const wold::CommandResult& r) {
  std::cout << r.report.dump(2) << "\n";
  return r.exit_code;
}

int input_error(const std::string& command, const wold::FamilyError& e) {
  nlohmann::json j = {{"command", command}, {"inputs_digest", ""},   {"results", nlohmann::json::object()},
                      {"residuals", nlohmann::json::object()},     {"status", "error"}};
  j["errors"] = e.details().empty() ? nlohmann::json::array({e.what()}) : nlohmann::json(e.details());
  if (e.line() > 0) j["line"] = e.line();
  std::cerr << e.what() << "\n";
  std::cout << j.dump(2) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wold data, graph groupoids and block structure of partial-isometry families"};
  app.require_subcommand(1);

  unsigned depth = 0;
  std::size_t max_len = 0;
  double tol = 0.0;
  app.add_option("--depth", depth, "Finite-shift chain truncation depth (default: file value or 4)")
      ->check(CLI::Range(1u, 64u));
  app.add_option("--max-len", max_len, "Longest reduced path to enumerate (default: file value or 3)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  app.add_option("--tol", tol, "Identity-check tolerance (default: file value or 1e-10)")
      ->check(CLI::PositiveNumber);

  std::string file;
  auto* classify = app.add_subcommand("classify", "Indices, Wold partition, G-graph summary and algebra");
  classify->add_option("file", file, "Family file")->required();

  auto* groupoid = app.add_subcommand("groupoid", "Enumerate the graph groupoid of the G-graph");
  groupoid->add_option("file", file, "Family file")->required();
  groupoid->add_option("--max-len", max_len, "Longest reduced path to enumerate")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  groupoid->add_option("--depth", depth, "Finite-shift chain truncation depth")->check(CLI::Range(1u, 64u));
  bool emit_dot = false;
  std::string dot_path;
  groupoid->add_flag("--emit-dot", emit_dot, "Write the G-graph as <file>.dot");
  groupoid->add_option("--dot-path", dot_path, "Override the .dot output path");

  auto* verify = app.add_subcommand("verify", "Check matrix generators against their symbolic declarations");
  verify->add_option("file", file, "Family file")->required();
  verify->add_option("--tol", tol, "Identity-check tolerance")->check(CLI::PositiveNumber);

  std::size_t dim = 8;
  std::uint64_t seed = 1;
  auto* cayley = app.add_subcommand("cayley", "Cayley roundtrip, rank-one defect and unitary extension checks");
  cayley->add_option("--dim", dim, "Matrix dimension")->check(CLI::Range(std::size_t{1}, std::size_t{256}));
  cayley->add_option("--seed", seed, "Random seed");
  cayley->add_option("--tol", tol, "Identity-check tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every other usage error is an input error.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  wold::Options opts;
  if (depth) opts.depth = depth;
  if (max_len) opts.max_len = max_len;
  if (tol > 0.0) opts.tol = tol;
  opts.emit_dot = emit_dot;
  opts.dot_path = dot_path;

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "cayley") return emit(wold::cmd_cayley(dim, seed, opts));
    const wold::FamilyFile family = wold::load_family(file);
    if (command == "classify") return emit(wold::cmd_classify(family, opts));
    if (command == "groupoid") return emit(wold::cmd_groupoid(family, opts));
    return emit(wold::cmd_verify(family, opts));
  } catch (const wold::FamilyError& e) {
    return input_error(command, e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
