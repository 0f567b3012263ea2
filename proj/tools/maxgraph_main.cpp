#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <maxgraph/config.hpp>
#include <maxgraph/errors.hpp>
#include <maxgraph/experiments.hpp>
#include <maxgraph/report.hpp>

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<long> seed;
  std::optional<int> threads;
};

void add_common_options(CLI::App* cmd, Options& opts, bool config_required) {
  CLI::Option* config =
      cmd->add_option("-c,--config", opts.config_path,
                      "run configuration file (line-oriented key = value)");
  config->check(CLI::ExistingFile);
  if (config_required) config->required();
  cmd->add_option("-o,--out", opts.out_dir,
                  "artifact directory (default: [run] output)");
  cmd->add_option("--seed", opts.seed, "override [run] seed");
  cmd->add_option("--threads", opts.threads,
                  "worker threads, recorded in the artifacts; execution is "
                  "single-threaded and deterministic");
}

int run(const std::string& experiment, const Options& opts) {
  maxgraph::Config config =
      opts.config_path.empty()
          ? maxgraph::Config::parse_string("", "<defaults>")
          : maxgraph::Config::parse_file(opts.config_path);
  config.set("run", "experiment", experiment);
  if (opts.seed) config.set("run", "seed", std::to_string(*opts.seed));
  if (opts.threads)
    config.set("run", "threads", std::to_string(*opts.threads));
  const std::string out =
      !opts.out_dir.empty()
          ? opts.out_dir
          : config.get_string("run", "output", "runs/" + experiment);
  config.set("run", "output", out);

  maxgraph::Artifacts artifacts(out, config);
  const bool ok = maxgraph::run_experiment(config, artifacts);
  for (const auto& check : artifacts.checks())
    std::printf("%s %s value=%s : %s\n", check.pass ? "PASS" : "FAIL",
                check.anchor.c_str(),
                maxgraph::format_number(check.value).c_str(),
                check.detail.c_str());
  std::printf("%s: %zu checks, artifacts under %s\n", ok ? "OK" : "FAILED",
              artifacts.checks().size(), out.c_str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "maxgraph: solve, verify and probe spacelike graphs of bounded "
      "hyperbolic angle over rotationally symmetric surfaces"};
  app.require_subcommand(1);

  const struct {
    const char* name;
    const char* help;
    bool config_required;
  } subcommands[] = {
      {"solve", "Dirichlet solve of the zero-mean-curvature equation", true},
      {"verify", "identity battery on a sampled spacelike graph", true},
      {"parab", "capacity trend over growing annuli against an expected "
                "verdict", true},
      {"wedge", "height bound, wedge containment and properness certificate",
       true},
      {"rigidity", "flatness trend of solutions across growing discs", true},
      {"suite", "the full ten-criterion acceptance battery", false},
  };

  Options opts;
  std::string chosen;
  for (const auto& sub : subcommands) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    add_common_options(cmd, opts, sub.config_required);
    cmd->callback([&chosen, name = std::string(sub.name)] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run(chosen, opts);
  } catch (const maxgraph::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
