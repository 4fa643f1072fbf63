// Command-line front end: experiment runners and oracle checks.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fris/experiments.hpp"
#include "fris/pso.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 1;
  int n_seeds = 20;
  std::string out_dir = ".";
  std::string encoding;
  std::string mode;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file");
  cmd->add_option("--seed", opts.seed, "base seed");
  cmd->add_option("--seeds", opts.n_seeds, "seeds per experiment point");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--encoding", opts.encoding, "activation encoding")
      ->check(CLI::IsMember({"general", "mask"}));
  cmd->add_option("--mode", opts.mode, "position mode")
      ->check(CLI::IsMember({"grid", "continuous"}));
}

std::pair<fris::ScenarioConfig, fris::PsoConfig> resolve_configs(
    const CommonOpts& opts) {
  fris::ScenarioConfig sc;
  fris::PsoConfig pc;
  if (!opts.config_path.empty()) {
    std::tie(sc, pc) = fris::load_config(opts.config_path);
  } else {
    fris::validate(sc);
    fris::validate(pc, sc);
  }
  if (!opts.encoding.empty())
    pc.encoding = fris::encoding_from_string(opts.encoding);
  if (!opts.mode.empty()) pc.mode = fris::mode_from_string(opts.mode);
  fris::validate(pc, sc);
  return {sc, pc};
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "."
                                                    : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("io: cannot write " + path.string());
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}

int run_oracle_check(const CommonOpts& opts) {
  auto [sc, pc] = resolve_configs(opts);
  // Small instances where exhaustive enumeration is tractable.
  fris::ScenarioConfig small = sc;
  small.grid_mx = 8;
  small.grid_mz = 8;
  small.m_o = 4;
  small.n_draws = 10;
  fris::PsoConfig mask_cfg = pc;
  mask_cfg.mode = fris::Mode::Grid;
  mask_cfg.encoding = fris::Encoding::Mask;
  const fris::ChannelSet cs = fris::draw_channel_set(
      small.total_elements(), fris::mix_seed(opts.seed, 0), small.n_draws);
  const auto [anchor, mask_best] = fris::brute_force_mask(small, cs);
  const fris::OptResult pso_mask =
      fris::optimize(small, mask_cfg, opts.seed, cs);
  std::cout << "mask oracle:   optimum " << mask_best << " bps/Hz at anchor ("
            << anchor.first << "," << anchor.second << "), PSO "
            << pso_mask.best_fitness << " bps/Hz ("
            << 100.0 * pso_mask.best_fitness / mask_best << "%)\n";

  fris::ScenarioConfig tiny = sc;
  tiny.grid_mx = 4;
  tiny.grid_mz = 3;
  tiny.m_o = 3;
  tiny.n_draws = 5;
  fris::PsoConfig gen_cfg = pc;
  gen_cfg.mode = fris::Mode::Grid;
  gen_cfg.encoding = fris::Encoding::General;
  const fris::ChannelSet cs2 = fris::draw_channel_set(
      tiny.total_elements(), fris::mix_seed(opts.seed, 0), tiny.n_draws);
  const auto [subset, subset_best] =
      fris::brute_force_subset(tiny, cs2, tiny.m_o);
  const fris::OptResult pso_gen = fris::optimize(tiny, gen_cfg, opts.seed, cs2);
  std::cout << "subset oracle: optimum " << subset_best << " bps/Hz, PSO "
            << pso_gen.best_fitness << " bps/Hz ("
            << 100.0 * pso_gen.best_fitness / subset_best << "%)\n";
  const bool ok = pso_mask.best_fitness <= mask_best + 1e-9 &&
                  pso_gen.best_fitness <= subset_best + 1e-9;
  std::cout << (ok ? "oracle-check OK\n" : "oracle-check FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FRIS-aided ambient backscatter link simulator and optimizer"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto* layout = app.add_subcommand("layout", "optimize once, dump layout CSV");
  auto* conv = app.add_subcommand("convergence", "per-iteration mean best");
  auto* snr = app.add_subcommand("rate-vs-snr", "FRIS vs RIS over SNR sweep");
  auto* lattice =
      app.add_subcommand("rate-vs-lattice", "rate vs host lattice size");
  auto* oracle =
      app.add_subcommand("oracle-check", "PSO vs brute-force on small cases");
  for (auto* cmd : {layout, conv, snr, lattice, oracle}) add_common(cmd, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out_dir(opts.out_dir);
    if (layout->parsed()) {
      auto [sc, pc] = resolve_configs(opts);
      const fris::LayoutRunResult res = fris::run_layout(sc, pc, opts.seed);
      write_file(out_dir / "layout.csv", res.csv);
      write_file(out_dir / "layout_result.json", res.result_json);
    } else if (conv->parsed()) {
      auto [sc, pc] = resolve_configs(opts);
      const auto seeds = fris::seed_list(opts.seed, opts.n_seeds);
      const fris::ConvergenceResult res = fris::run_convergence(sc, pc, seeds);
      write_file(out_dir / "convergence.csv", res.csv);
      write_file(out_dir / "convergence_meta.json",
                 fris::experiment_meta_json("convergence", sc, pc, seeds,
                                            res.gain_scale));
    } else if (snr->parsed()) {
      auto [sc, pc] = resolve_configs(opts);
      const auto seeds = fris::seed_list(opts.seed, opts.n_seeds);
      const fris::SweepResult res = fris::run_rate_vs_snr(sc, pc, seeds);
      write_file(out_dir / "rate_vs_snr.csv", res.csv);
      write_file(out_dir / "rate_vs_snr_meta.json",
                 fris::experiment_meta_json("rate-vs-snr", sc, pc, seeds,
                                            res.gain_scale));
    } else if (lattice->parsed()) {
      auto [sc, pc] = resolve_configs(opts);
      const auto seeds = fris::seed_list(opts.seed, opts.n_seeds);
      const fris::SweepResult res = fris::run_rate_vs_lattice(sc, pc, seeds);
      write_file(out_dir / "rate_vs_lattice.csv", res.csv);
      write_file(out_dir / "rate_vs_lattice_meta.json",
                 fris::experiment_meta_json("rate-vs-lattice", sc, pc, seeds,
                                            res.gain_scale));
    } else if (oracle->parsed()) {
      return run_oracle_check(opts);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: config-validation: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    const std::string category =
        what.rfind("config missing", 0) == 0  ? "config-missing"
        : what.rfind("config parse", 0) == 0  ? "config-parse"
        : what.rfind("io:", 0) == 0           ? "io"
                                              : "runtime";
    std::cerr << "error: " << category << ": " << what << "\n";
    return 3;
  }
  return 0;
}
