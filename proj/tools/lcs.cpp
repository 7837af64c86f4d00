// lcs: London / modified-London coherent-state numerics from the command line.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lcs/cli.hpp"

namespace {

using lcs::cli::Command;
using lcs::cli::Format;
using lcs::cli::RunConfig;

void add_state_options(CLI::App* sub, RunConfig& cfg, std::string& family, bool x_required) {
  auto* x = sub->add_option("--x", cfg.x, "Amplitude x >= 0");
  if (x_required) x->required();
  sub->add_option("--theta", cfg.theta, "Phase theta of z = x e^{i theta} (radians)");
  sub->add_option("--family", family, "State family: london | modified")
      ->check(CLI::IsMember({"london", "modified"}, CLI::ignore_case));
  sub->add_option("--dim", cfg.dim, "Fock cutoff (0 = automatic)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"London and modified-London coherent states: states, photon statistics, Husimi Q, atomic inversion"};
  app.set_version_flag("--version", std::string(lcs::cli::version));
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "csv";
  std::string output;
  std::string sweep;
  std::string family = "modified";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", output, "Output file (default: standard output)");
    sub->add_option("--precision", cfg.precision, "Significant digits for CSV floats");
  };

  auto* state = app.add_subcommand("state", "Number-state amplitudes and photon distribution");
  add_state_options(state, cfg, family, true);
  common(state);

  auto* stats = app.add_subcommand("stats", "Mean photon number and Mandel Q, optionally over an x sweep");
  add_state_options(stats, cfg, family, false);
  stats->add_option("--sweep", sweep, "Amplitude grid lo:hi:step (inclusive)");
  common(stats);

  auto* husimi = app.add_subcommand("husimi", "Husimi Q function on a square alpha grid");
  add_state_options(husimi, cfg, family, true);
  husimi->add_option("--half-width", cfg.half_width, "Grid half-width (default 3 + 2 sqrt(<n> + 1))");
  husimi->add_option("--n", cfg.grid_samples, "Samples per axis");
  common(husimi);

  auto* inversion = app.add_subcommand("inversion", "Jaynes-Cummings atomic inversion W(t) and revival detection");
  add_state_options(inversion, cfg, family, true);
  inversion->add_option("--lambda", cfg.lambda, "Atom-field coupling");
  inversion->add_option("--t-max", cfg.t_max, "End of the time window");
  inversion->add_option("--steps", cfg.steps, "Number of time samples");
  inversion->add_option("--window", cfg.window, "Envelope window in samples (odd)");
  common(inversion);

  auto* identity = app.add_subcommand("identity-check", "Check sum n J_n(y)^2 against its closed form");
  identity->add_option("--y", cfg.y, "Bessel argument(s) y > 0")->expected(1, -1);
  common(identity);

  try {
    app.parse(argc, argv);
    if (!sweep.empty()) cfg.sweep = lcs::cli::parse_sweep(sweep);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lcs::cli::usage;
  } catch (const lcs::cli::usage_error& e) {
    std::cerr << "lcs: usage error: " << e.what() << '\n';
    return lcs::cli::usage;
  }

  if (stats->parsed() && sweep.empty() && stats->count("--x") == 0) {
    std::cerr << "lcs: usage error: stats needs --x or --sweep\n";
    return lcs::cli::usage;
  }

  if (state->parsed()) cfg.command = Command::State;
  if (stats->parsed()) cfg.command = Command::Stats;
  if (husimi->parsed()) cfg.command = Command::Husimi;
  if (inversion->parsed()) cfg.command = Command::Inversion;
  if (identity->parsed()) cfg.command = Command::IdentityCheck;
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  cfg.family = family == "london" ? lcs::Family::London : lcs::Family::ModifiedLondon;

  if (output.empty()) return lcs::cli::run(cfg, std::cout, std::cerr);

  std::ofstream file(output, std::ios::binary);
  if (!file) {
    std::cerr << "lcs: usage error: cannot open --output '" << output << "'\n";
    return lcs::cli::usage;
  }
  return lcs::cli::run(cfg, file, std::cerr);
}
