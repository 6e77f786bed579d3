// selord <subcommand> [input.json|-] [--bound N] [--stabilization N]
//        [--no-cache] [--certificates]

#include <fstream>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "selord/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with maximal orders and selective orders"};
  std::string subcommand;
  std::string input = "-";
  std::size_t bound = 0, stabilization = 0;
  bool no_cache = false, certificates = false;
  app.add_option("subcommand", subcommand, "td, chamber, classgroup, split, rho, verdict or parametrize")
      ->required()
      ->check(CLI::IsMember({"td", "chamber", "classgroup", "split", "rho", "verdict", "parametrize"}));
  app.add_option("input", input, "job file, or - for standard input");
  auto* bound_opt = app.add_option("--bound", bound, "number of rational primes to sample")->check(CLI::PositiveNumber);
  auto* stab_opt = app.add_option("--stabilization", stabilization, "unchanged samples required before accepting")
                       ->check(CLI::PositiveNumber);
  app.add_flag("--no-cache", no_cache, "do not read or write the class group cache");
  app.add_flag("--certificates", certificates, "include the full sampling trace");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::string text;
  if (input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(input);
    if (!in) {
      nlohmann::json err{{"error", {{"kind", "input"}, {"message", "cannot read " + input}}}};
      std::cout << err.dump(2) << '\n';
      return 1;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  nlohmann::json job = nlohmann::json::parse(text, nullptr, false);
  if (job.is_discarded()) {
    nlohmann::json err{{"subcommand", subcommand},
                       {"error", {{"kind", "input"}, {"message", "input is not valid JSON"}}}};
    std::cout << err.dump(2) << '\n';
    return 1;
  }

  selord::RunOptions options;
  if (*bound_opt) options.bound = bound;
  if (*stab_opt) options.stabilization = stabilization;
  options.use_cache = !no_cache;
  options.certificates = certificates;
  selord::RunResult result = selord::run_job(subcommand, job, options);
  std::cout << result.document.dump(2) << '\n';
  return result.exit_code;
}
