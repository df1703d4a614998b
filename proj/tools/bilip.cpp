#include <iostream>

#include "CLI11.hpp"
#include "bilip/commands.hpp"
#include "bilip/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Certified smoothing of group actions on the interval and the circle"};
  app.require_subcommand(1, 1);
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"smooth", "smoothed metric matrix on a uniform grid"},
      {"conjugate", "tabulate the conjugating homeomorphism"},
      {"verify", "run the verification suites; nonzero exit unless every check passes"},
      {"lcnet", "build the net in R^d and check its invariants"},
      {"report", "smooth + conjugate + verify with an aggregated summary"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--threads", threads, "worker threads (0 = hardware)");
  }
  CLI11_PARSE(app, argc, argv);
  try {
    if (threads > 0) bilip::set_thread_count(threads);
    auto cfg = bilip::cli::load_config(config);
    if (seed) cfg.seed = *seed;
    const std::string cmd = app.get_subcommands().front()->get_name();
    int status = 0;
    if (cmd == "smooth") status = bilip::cli::cmd_smooth(cfg, out);
    if (cmd == "conjugate") status = bilip::cli::cmd_conjugate(cfg, out);
    if (cmd == "verify") status = bilip::cli::cmd_verify(cfg, out);
    if (cmd == "lcnet") status = bilip::cli::cmd_lcnet(cfg, out);
    if (cmd == "report") status = bilip::cli::cmd_report(cfg, out);
    if (status != 0) std::cerr << "bilip: some checks did not pass, see " << out << "\n";
    return status;
  } catch (const bilip::cli::ConfigError& e) {
    std::cerr << "bilip: config error at " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "bilip: " << e.what() << "\n";
    return 3;
  }
}
