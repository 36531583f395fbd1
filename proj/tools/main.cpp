// ndstc: simulation driver for nonsquare differential space-time coding
// with key-derived projection bases.
//
// Exit codes: 0 success, 2 usage/config error, 3 search budget exceeded,
// 4 numerical failure.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ndstc/errors.hpp"
#include "ndstc/experiment.hpp"
#include "ndstc/parallel.hpp"
#include "ndstc/version.hpp"

namespace {

int dispatch(const std::string& name, const ndstc::RunContext& ctx) {
  if (name == "basis") return ndstc::cmd_basis(ctx);
  if (name == "gain-sweep") return ndstc::cmd_gain_sweep(ctx);
  if (name == "ber") return ndstc::cmd_ber(ctx);
  if (name == "leakage") return ndstc::cmd_leakage(ctx);
  if (name == "secrecy") return ndstc::cmd_secrecy(ctx);
  if (name == "landscape") return ndstc::cmd_landscape(ctx);
  throw ndstc::ParamError("unknown command: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonsquare differential space-time coding simulator"};
  app.set_version_flag("--version", std::string("ndstc ") + ndstc::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t trials = 0;
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--seed", seed, "master RNG seed");
  app.add_option("--threads", threads,
                 "worker threads; 0 uses the hardware count");
  app.add_option("--trials", trials,
                 "override the config's trial/frame/start count");

  const char* subs[] = {"basis",   "gain-sweep", "ber",
                        "leakage", "secrecy",    "landscape"};
  const char* descs[] = {
      "derive a projection basis from a key and report its coding gain",
      "optimize bases over a list of array sizes",
      "bit error rate versus SNR for one link configuration",
      "eavesdropper leakage versus array size",
      "secrecy rate versus eavesdropper antenna count",
      "distribution of converged objective values over many starts"};
  for (std::size_t i = 0; i < 6; ++i)
    app.add_subcommand(subs[i], descs[i])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit cleanly
  }

  try {
    ndstc::RunContext ctx;
    if (!config_path.empty()) ctx.cfg = ndstc::Config::from_file(config_path);
    ctx.out_dir = out_dir;
    ctx.seed = seed;
    ctx.threads = ndstc::resolve_threads(threads);
    ctx.trials_override = trials;
    return dispatch(app.get_subcommands().front()->get_name(), ctx);
  } catch (const ndstc::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ndstc::ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ndstc::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
