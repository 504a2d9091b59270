// quortho command-line experiment runner.
//
// Every subcommand drives one registered experiment and writes its
// figure-ready artifacts plus a hashed manifest to the output directory.
// Option precedence: command-line flags > --config JSON file > QUORTHO_OUT
// (output directory only) > built-in defaults.
//
// Exit codes: 0 success, 1 validation/usage error, 2 threshold violation
// under --check.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <string>

#include "quortho/experiments.hpp"
#include "quortho/io.hpp"

namespace {

using nlohmann::json;
using quortho::ExperimentSpec;
using quortho::RunMode;

// --config must take effect before flag parsing (flags override the file),
// so locate it with a pre-scan of argv.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

RunMode parse_mode(const std::string& text) {
  if (text == "sampled") return RunMode::Sampled;
  if (text == "analytic") return RunMode::Analytic;
  throw std::invalid_argument("mode must be 'sampled' or 'analytic', got '" +
                              text + "'");
}

std::vector<double> as_double_list(const json& value) {
  if (value.is_array()) return value.get<std::vector<double>>();
  return {value.get<double>()};
}

// Config keys mirror the flag names (without the leading dashes).
void apply_config(ExperimentSpec& spec, const json& config) {
  if (config.contains("dim")) spec.dim = config["dim"].get<int>();
  if (config.contains("count")) spec.count = config["count"].get<int>();
  if (config.contains("cond")) spec.cond = config["cond"].get<double>();
  if (config.contains("eps")) spec.eps_values = as_double_list(config["eps"]);
  if (config.contains("delta")) spec.delta = config["delta"].get<double>();
  if (config.contains("mode"))
    spec.mode = parse_mode(config["mode"].get<std::string>());
  if (config.contains("inject-error"))
    spec.inject_error = config["inject-error"].get<bool>();
  if (config.contains("seed"))
    spec.seed = config["seed"].get<std::uint64_t>();
  if (config.contains("trials")) spec.trials = config["trials"].get<int>();
  if (config.contains("grid"))
    spec.grid = as_double_list(config["grid"]);
  if (config.contains("model"))
    spec.model = config["model"].get<std::string>();
  if (config.contains("sites")) spec.sites = config["sites"].get<int>();
  if (config.contains("out"))
    spec.out_dir = config["out"].get<std::string>();
  if (config.contains("check")) spec.check = config["check"].get<bool>();
}

struct CommandState {
  ExperimentSpec spec;
  std::string mode_flag;  // raw --mode text, converted after parse
  std::string out_flag;   // raw --out text
  std::string config_flag;  // accepted here, consumed by the pre-scan
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quortho — quantum Gram-Schmidt simulation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "quortho 0.1.0");

  json config = json::object();
  const std::string config_path = find_config_path(argc, argv);
  if (!config_path.empty()) {
    try {
      config = json::parse(quortho::read_text_file(config_path));
    } catch (const std::exception& e) {
      std::cerr << "quortho: cannot load config '" << config_path
                << "': " << e.what() << '\n';
      return 1;
    }
  }

  std::map<std::string, CommandState> states;
  auto add_command = [&](const std::string& name, const std::string& blurb,
                         ExperimentSpec defaults) {
    defaults.name = name;
    if (const char* env = std::getenv("QUORTHO_OUT"); env && *env)
      defaults.out_dir = env;
    try {
      apply_config(defaults, config);
    } catch (const std::exception& e) {
      std::cerr << "quortho: bad config value: " << e.what() << '\n';
      std::exit(1);
    }
    CommandState& state =
        states.emplace(name, CommandState{std::move(defaults), "", "", ""})
            .first->second;
    ExperimentSpec& spec = state.spec;

    CLI::App* cmd = app.add_subcommand(name, blurb);
    cmd->add_option("--dim", spec.dim, "ambient dimension N");
    cmd->add_option("--count", spec.count, "vectors per family (0 = dim)");
    cmd->add_option("--cond", spec.cond,
                    "condition number for random instances");
    cmd->add_option("--eps", spec.eps_values,
                    "accuracy parameter(s), comma separated")
        ->delimiter(',');
    cmd->add_option("--delta", spec.delta, "estimation failure budget");
    cmd->add_option("--mode", state.mode_flag, "sampled | analytic")
        ->check(CLI::IsMember({"sampled", "analytic"}));
    cmd->add_flag("--inject-error", spec.inject_error,
                  "inject errant simulation unitaries");
    cmd->add_option("--seed", spec.seed, "base RNG seed");
    cmd->add_option("--trials", spec.trials, "trials per grid point");
    cmd->add_option("--grid", spec.grid, "sweep grid, comma separated")
        ->delimiter(',');
    cmd->add_option("--model", spec.model, "ising | heisenberg")
        ->check(CLI::IsMember({"ising", "heisenberg"}));
    cmd->add_option("--sites", spec.sites, "chain length");
    cmd->add_option("--out", state.out_flag,
                    "output directory (default $QUORTHO_OUT or ./out)");
    cmd->add_flag("--check", spec.check,
                  "exit 2 when figure thresholds are violated");
    cmd->add_option("--config", state.config_flag,
                    "JSON config mirroring these flags (flags override)");
    return cmd;
  };

  {
    ExperimentSpec d;
    d.eps_values = {1e-4};
    add_command("qgs",
                "Loss-of-orthogonality sweep, quantum vs classical "
                "Gram-Schmidt",
                d);
  }
  {
    ExperimentSpec d;
    d.mode = RunMode::Sampled;
    d.trials = 20;
    add_command("qr", "QR reconstruction error across condition numbers", d);
  }
  {
    ExperimentSpec d;
    d.eps_values = {0.05};
    d.trials = 200;
    add_command("qipe-bench", "Inner-product estimation accuracy benchmark",
                d);
  }
  {
    ExperimentSpec d;
    d.eps_values = {0.05};
    d.trials = 20;
    add_command("fit",
                "Polynomial least-squares fit and degree-selection grid", d);
  }
  add_command("linsolve", "Random linear-system classification and solve",
              ExperimentSpec{});
  {
    ExperimentSpec d;
    d.eps_values = {1e-4};
    add_command("laplace",
                "Dirichlet Laplace potentials for three charge cases", d);
  }
  add_command("eigen", "QR-iteration eigenvalues for spin-chain models",
              ExperimentSpec{});
  {
    ExperimentSpec d;
    d.cond = 10.0;
    add_command("bench-scaling", "Ledger cost scaling versus matrix size", d);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // contract: all usage errors exit 1
  }

  for (auto& [name, state] : states) {
    if (!app.got_subcommand(name)) continue;
    try {
      if (!state.mode_flag.empty()) state.spec.mode = parse_mode(state.mode_flag);
      if (!state.out_flag.empty()) state.spec.out_dir = state.out_flag;
      const int code = quortho::run_experiment(state.spec);
      std::cout << name << ": artifacts written to "
                << state.spec.out_dir.string() << '\n';
      if (code == 2)
        std::cerr << name << ": --check thresholds violated\n";
      return code;
    } catch (const std::exception& e) {
      std::cerr << "quortho: " << e.what() << '\n';
      return 1;
    }
  }
  std::cerr << "quortho: no subcommand selected\n";
  return 1;
}
