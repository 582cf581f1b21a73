#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fwmpair/config.hpp"
#include "fwmpair/error.hpp"
#include "fwmpair/export.hpp"
#include "fwmpair/presets.hpp"
#include "fwmpair/schmidt.hpp"
#include "fwmpair/sweeps.hpp"

using namespace fwmpair;

namespace {

struct Overrides {
  std::string config;
  std::string preset;
  std::vector<double> rates;
  std::optional<double> tau;
  std::optional<double> length;
  std::optional<double> bandwidth_nm;
  std::optional<std::size_t> steps;
  std::string out;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "INI run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--preset", o.preset, "fibre preset (see 'presets list')");
  cmd->add_option("--rate", o.rates, "pair generation rate(s) per pulse");
  cmd->add_option("--tau", o.tau, "Gaussian pump duration tau (s), or square width");
  cmd->add_option("--length", o.length, "fibre length (m)");
  cmd->add_option("--bandwidth-nm", o.bandwidth_nm, "Gaussian pump FWHM bandwidth (nm)");
  cmd->add_option("--steps", o.steps, "SSF step count");
  cmd->add_option("--out", o.out, "output directory");
}

RunConfig build_config(const Overrides& o, std::optional<Model> model) {
  RunConfig cfg = o.config.empty() ? preset_config(o.preset.empty() ? "fiberA-726" : o.preset) : load_config(o.config);
  if (!o.config.empty() && !o.preset.empty()) {
    cfg.preset = o.preset;
    cfg.fiber = find_preset(o.preset).params;
  }
  if (model) cfg.model = *model;
  if (!o.rates.empty()) {
    cfg.rates = o.rates;
    cfg.powers.clear();
  }
  if (o.length) cfg.fiber.length = *o.length;
  if (o.tau) cfg = with_duration(cfg, *o.tau);
  if (o.bandwidth_nm) {
    cfg.pump.shape = PumpShape::gaussian;
    cfg.pump.bandwidth_nm = *o.bandwidth_nm;
    cfg.pump.tau = 0.0;
  }
  if (o.steps) cfg.ssf.n_steps = *o.steps;
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (cfg.pump.shape == PumpShape::gaussian && cfg.pump.tau == 0.0 && cfg.pump.bandwidth_nm == 0.0) {
    cfg.pump.bandwidth_nm = 1.0;
  }
  if (cfg.rates.empty() && cfg.powers.empty()) cfg.rates = {0.0};
  cfg.validate();
  return cfg;
}

std::string path_in(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

void print_rows(const std::vector<RateRow>& rows) {
  std::printf("%-12s %-12s %-14s %-10s %-10s\n", "rate", "measured", "peak_power_W", "purity", "K");
  for (const RateRow& r : rows) {
    if (!r.error.empty()) {
      std::printf("%-12.6g error: %s\n", r.target_rate, r.error.c_str());
      continue;
    }
    std::printf("%-12.6g %-12.6g %-14.6g %-10.6f %-10.4f\n", r.target_rate, r.rate, r.peak_power, r.purity,
                r.schmidt_number);
  }
}

int run_state(const Overrides& o, Model model) {
  const RunConfig cfg = build_config(o, model);
  const ResolvedRun run = resolve(cfg);
  ensure_directory(cfg.output_dir);
  const double rate = cfg.rates.empty() ? 0.0 : cfg.rates.front();
  const StatePoint point = cfg.powers.empty() ? state_for_rate(run, rate) : state_for_power(run, cfg.powers.front());
  const SchmidtResult schmidt = schmidt_decompose(point.amplitude, false);
  const std::string stem = model == Model::analytic_jta ? "jta" : "jsa";
  export_magnitude(path_in(cfg, stem), point.amplitude);
  if (point.amplitude.domain() == Domain::time) export_magnitude(path_in(cfg, "jsa"), spectral_state(point));
  export_metadata(path_in(cfg, "run.ini"), run);
  std::printf("model %s  rate %.6g  peak power %.6g W  purity %.6f  schmidt number %.4f\n", to_string(model), point.rate,
              point.peak_power, schmidt.purity, schmidt.schmidt_number());
  return 0;
}

int run_sweep(const Overrides& o) {
  const RunConfig cfg = build_config(o, std::nullopt);
  const ResolvedRun run = resolve(cfg);
  ensure_directory(cfg.output_dir);
  const auto rows = purity_vs_rate(run);
  export_rate_table(path_in(cfg, "purity_vs_rate.csv"), rows);
  export_metadata(path_in(cfg, "run.ini"), run);
  print_rows(rows);
  for (const RateRow& r : rows) {
    if (!r.error.empty()) return 3;
  }
  return 0;
}

int run_optimize(const Overrides& o) {
  const RunConfig cfg = build_config(o, std::nullopt);
  ensure_directory(cfg.output_dir);
  std::map<std::string, std::string> extra;
  for (std::size_t k = 0; k < cfg.rates.size(); ++k) {
    const double rate = cfg.rates[k];
    const TauOptimum best = optimize_tau(cfg, rate);
    export_tau_trace(path_in(cfg, "tau_trace_" + std::to_string(k) + ".csv"), best);
    std::printf("rate %.6g  optimal duration %.6g s  purity %.6f  (%zu evaluations)\n", rate, best.duration, best.purity,
                best.trace.size());
    if (best.at_boundary) std::fprintf(stderr, "warning: optimum at the edge of the search bracket for rate %g\n", rate);
    extra["optimum_" + std::to_string(k)] = std::to_string(rate) + " " + std::to_string(best.duration);
  }
  export_metadata(path_in(cfg, "run.ini"), resolve(cfg), extra);
  return 0;
}

int run_filter(const Overrides& o) {
  RunConfig cfg = build_config(o, std::nullopt);
  if (!cfg.filter) cfg.filter = FilterConfig{};
  const ResolvedRun run = resolve(cfg);
  ensure_directory(cfg.output_dir);
  const auto curves = filter_sweep(run);
  export_filter_curves(path_in(cfg, "filter_sweep.csv"), curves);
  export_metadata(path_in(cfg, "run.ini"), run);
  for (const FilterCurve& c : curves) {
    std::printf("rate %.6g  centre %.6g rad/s\n", c.rate, c.center);
    for (const FilterPoint& p : c.points) {
      std::printf("  width %-12.5g T %-10.5f RT %-12.5g purity %.6f\n", p.width, p.transmission, p.effective_rate,
                  p.purity);
    }
  }
  return 0;
}

int list_presets() {
  for (const FiberPreset& p : fiber_presets()) {
    const FiberParams& f = p.params;
    std::printf("%s (v%s): %s\n", p.name.c_str(), p.version.c_str(), p.description.c_str());
    std::printf("  lambda p/s/i = %.6g / %.6g / %.6g nm, beta1 s/i = %g / %g s/m, beta2 p/s/i = %g / %g / %g s^2/m,\n"
                "  gamma p/s/i = %g / %g / %g 1/(W m) (placeholder scale), default length %g m\n",
                f.lambda_p0 * 1e9, f.lambda_s0 * 1e9, f.lambda_i0 * 1e9, f.beta1_s, f.beta1_i, f.beta2_p, f.beta2_s,
                f.beta2_i, f.gamma_p, f.gamma_s, f.gamma_i, f.length);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-pair purity simulations for birefringent fibre four-wave mixing"};
  app.require_subcommand(1);
  Overrides o;
  auto* jsa = app.add_subcommand("jsa", "analytic joint spectral amplitude at one rate");
  auto* jta = app.add_subcommand("jta", "analytic joint temporal amplitude at one rate");
  auto* ssf = app.add_subcommand("ssf", "split-step simulation of the pair state at one rate");
  auto* sweep = app.add_subcommand("sweep", "purity against generation rate");
  auto* optimize = app.add_subcommand("optimize-tau", "pump duration maximizing purity at each rate");
  auto* filter = app.add_subcommand("filter-sweep", "purity against effective rate under herald filtering");
  for (auto* cmd : {jsa, jta, ssf, sweep, optimize, filter}) add_common(cmd, o);
  auto* presets = app.add_subcommand("presets", "fibre presets");
  presets->require_subcommand(1);
  auto* list = presets->add_subcommand("list", "show the built-in fibres");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*jsa) return run_state(o, Model::analytic_jsa);
    if (*jta) return run_state(o, Model::analytic_jta);
    if (*ssf) return run_state(o, Model::ssf);
    if (*sweep) return run_sweep(o);
    if (*optimize) return run_optimize(o);
    if (*filter) return run_filter(o);
    if (*list) return list_presets();
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
