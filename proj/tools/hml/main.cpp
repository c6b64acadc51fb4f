// hml: command line front end for the verification suites.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hml/report/verify.hpp"
#include "hml/util/parallel.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kIdentityFailure = 1;
constexpr int kInfrastructureFailure = 2;

struct Args {
  std::string suite;
  std::string family;
  std::string grid;
  int rays = 1;
  int decades = 0;
  double fd_step = 0.0;
  double tol = 0.0;
  int samples = 100;
  std::string out;
  std::string format = "csv";
};

int run(const Args& args, const CLI::App& verify) {
  hml::report::VerifyOptions options;
  options.suite = args.suite;
  if (verify.count("--grid")) options.grid = args.grid;
  options.rays = args.rays;
  if (verify.count("--decades")) options.decades = args.decades;
  if (verify.count("--fd-step")) options.fd_step = args.fd_step;
  if (verify.count("--tol")) options.tolerance = args.tol;
  options.exterior_samples = args.samples;
  options.threads = hml::util::thread_count();

  std::optional<hml::report::FamilyConfig> config;
  if (!args.family.empty()) config = hml::report::load_family(args.family);

  const auto report = hml::report::run_verify(config, options);
  const std::string text = args.format == "json" ? hml::report::to_json(report) : hml::report::to_csv(report);
  if (args.out.empty() || args.out == "-") {
    std::cout << text;
  } else {
    std::ofstream file(args.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + args.out + "' for writing");
    file << text;
    if (!file.flush()) throw std::runtime_error("write to '" + args.out + "' failed");
  }

  const long failures = report.failures();
  std::cerr << "hml verify " << args.suite << ": " << (failures == 0 ? "PASS" : "FAIL");
  if (failures) std::cerr << " (" << failures << " failing rows)";
  std::cerr << "\n";
  return failures == 0 ? kPass : kIdentityFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hodge metric verification"};
  app.require_subcommand(1);
  Args args;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and write a report");
  verify->add_option("suite", args.suite, "exterior, vhs, metrics, poincare or all")
      ->required()
      ->check(CLI::IsMember({"exterior", "vhs", "metrics", "poincare", "all"}));
  verify->add_option("--family", args.family, "Family JSON file or built-in name");
  verify->add_option("--grid", args.grid, "log:a:b:N or lin:a:b:N");
  verify->add_option("--rays", args.rays, "Rays per grid value")->check(CLI::Range(1, 1024));
  verify->add_option("--decades", args.decades, "Sweep decades")->check(CLI::Range(3, 300));
  verify->add_option("--fd-step", args.fd_step, "Relative finite-difference step")->check(CLI::PositiveNumber);
  verify->add_option("--tol", args.tol, "Relative tolerance for finite-difference identities")
      ->check(CLI::PositiveNumber);
  verify->add_option("--samples", args.samples, "Random forms per bidegree (exterior suite)")
      ->check(CLI::Range(1, 100000));
  verify->add_option("--out", args.out, "Output path (default stdout)");
  verify->add_option("--format", args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInfrastructureFailure;
  }

  try {
    if (args.suite != "exterior" && args.family.empty()) throw hml::report::ConfigError("--family is required for suite '" + args.suite + "'");
    return run(args, *verify);
  } catch (const std::exception& e) {
    std::cerr << "hml: " << e.what() << "\n";
    return kInfrastructureFailure;
  }
}
