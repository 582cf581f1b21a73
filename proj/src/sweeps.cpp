#include "fwmpair/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "fwmpair/analytic_jsa.hpp"
#include "fwmpair/analytic_jta.hpp"
#include "fwmpair/error.hpp"
#include "fwmpair/schmidt.hpp"

namespace fwmpair {

namespace {

constexpr double pi = std::numbers::pi;

std::size_t even_ceil(double x) {
  auto n = static_cast<std::size_t>(std::ceil(x));
  return n + (n % 2);
}

PumpEnvelope make_pump(const RunConfig& cfg, const TemporalGrid& grid, double duration) {
  PumpEnvelope pump = cfg.pump.shape == PumpShape::gaussian
                          ? gaussian_pump(grid, duration, 1.0)
                          : square_pump(grid, duration, 1.0, cfg.pump.edge_smoothing);
  if (cfg.pump.prechirp_length != 0.0) pump = prechirp(pump, cfg.fiber.beta2_p, cfg.pump.prechirp_length);
  return pump;
}

void require_span(double have, double need, const char* what) {
  if (have < need * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << what << " spans " << have << " but needs " << need;
    fail(ErrorKind::coverage, msg.str());
  }
}

struct Extent {
  double lo = 0.0;
  double hi = 0.0;
  double span() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

SsfOptions ssf_options(const RunConfig& cfg) { return SsfOptions{cfg.ssf.pump_spm, cfg.ssf.pair_xpm, true}; }

}  // namespace

double pump_duration(const RunConfig& cfg) {
  if (cfg.pump.shape == PumpShape::square) return cfg.pump.duration;
  if (cfg.pump.tau > 0.0) return cfg.pump.tau;
  return bandwidth_to_tau(cfg.pump.bandwidth_nm * 1e-9, cfg.fiber.lambda_p0);
}

RunConfig with_duration(const RunConfig& cfg, double duration) {
  RunConfig out = cfg;
  if (cfg.pump.shape == PumpShape::square) {
    out.pump.duration = duration;
  } else {
    out.pump.tau = duration;
    out.pump.bandwidth_nm = 0.0;
  }
  return out;
}

ResolvedRun resolve(const RunConfig& cfg) {
  cfg.validate();
  ResolvedRun run;
  run.config = cfg;
  RunConfig& rc = run.config;
  FiberParams f = cfg.fiber;
  if (cfg.model == Model::ssf && !cfg.ssf.include_beta2) f.beta2_p = f.beta2_s = f.beta2_i = 0.0;
  run.fiber = f;
  const double L = f.length;

  const bool gaussian = cfg.pump.shape == PumpShape::gaussian;
  const double duration = pump_duration(cfg);
  run.duration = duration;
  const double scale = gaussian ? duration : 0.5 * duration;
  const double half_extent = gaussian ? 4.0 * duration : 0.5 * (duration + cfg.pump.edge_smoothing);
  const double margin = cfg.grid.margin * scale;
  // Dispersive spreading of the pump. A Gaussian's spectrum is confined to
  // about 4/tau; hard square edges fill the whole band up to Nyquist.
  const double pump_band = gaussian ? 4.0 / duration : 0.0;
  const bool pump_evolves = cfg.model == Model::ssf || (cfg.model == Model::analytic_jsa && cfg.jsa.pump_slices > 0);
  const double chirp = cfg.pump.prechirp_length;
  const double chirp_z = pump_evolves ? std::max(std::abs(chirp), std::abs(chirp + L)) : std::abs(chirp);
  auto pad_for = [&](double dt) {
    const double band = pump_band > 0.0 ? std::min(pump_band, pi / dt) : pi / dt;
    return half_extent + margin + 1.5 * std::abs(cfg.fiber.beta2_p) * chirp_z * band;
  };
  const std::size_t n = cfg.grid.n_points;

  // Time windows are sized at the Nyquist limit of a first guess, then
  // rechecked at the final step.
  auto walk = [&](double beta1, double pad) {
    return Extent{std::min(0.0, beta1 * L) - pad, std::max(0.0, beta1 * L) + pad};
  };
  auto time_step = [&](auto&& span_for) {
    if (cfg.grid.dt > 0.0) return cfg.grid.dt;
    double dt = span_for(pad_for(scale / 8.0)) / static_cast<double>(n);
    for (int k = 0; k < 20; ++k) {
      const double next = span_for(pad_for(dt)) / static_cast<double>(n);
      if (next <= dt) break;
      dt = next;
    }
    return dt;
  };

  if (cfg.model == Model::analytic_jta) {
    auto span_for = [&](double pad) { return std::max(walk(f.beta1_s, pad).span(), walk(f.beta1_i, pad).span()); };
    const double dt = time_step(span_for);
    const Extent es = walk(f.beta1_s, pad_for(dt));
    const Extent ei = walk(f.beta1_i, pad_for(dt));
    require_span(static_cast<double>(n) * dt, std::max(es.span(), ei.span()), "JTA window");
    run.signal_time = TemporalGrid::make(n, dt, es.mid());
    run.idler_time = TemporalGrid::make(n, dt, ei.mid());
    run.signal_freq = dual_grid(run.signal_time);
    run.idler_freq = dual_grid(run.idler_time);
    run.pump_time = make_pump(cfg, TemporalGrid::make(n, dt, 0.0), duration);
    rc.grid.dt = dt;
  } else if (cfg.model == Model::ssf) {
    auto shared_for = [&](double pad) {
      const Extent es = walk(f.beta1_s, pad);
      const Extent ei = walk(f.beta1_i, pad);
      return Extent{std::min(es.lo, ei.lo), std::max(es.hi, ei.hi)};
    };
    const double dt = time_step([&](double pad) { return shared_for(pad).span(); });
    const Extent shared = shared_for(pad_for(dt));
    require_span(static_cast<double>(n) * dt, shared.span(), "SSF window");
    const TemporalGrid grid = TemporalGrid::make(n, dt, shared.mid());
    run.signal_time = run.idler_time = grid;
    run.signal_freq = run.idler_freq = dual_grid(grid);
    run.pump_time = make_pump(cfg, grid, duration);
    run.ssf = cfg.ssf.n_steps > 0 ? SsfConfig{cfg.ssf.n_steps, grid} : SsfConfig::for_grid(grid, f, cfg.ssf.step_margin);
    run.ssf.validate(f);
    rc.grid.dt = dt;
    rc.ssf.n_steps = run.ssf.n_steps;
  } else {
    if (std::abs(f.walkoff_difference()) == 0.0) {
      fail(ErrorKind::degenerate_walkoff, "signal and idler share a group velocity; no phase-matching window");
    }
    const double band_s = f.beta1_s != 0.0 ? 2.0 * pi / (std::abs(f.beta1_s) * L) : 0.0;
    const double band_i = f.beta1_i != 0.0 ? 2.0 * pi / (std::abs(f.beta1_i) * L) : 0.0;
    // Where |F|^2 has fallen to the coverage threshold (square: 8 lobes).
    const double sum_extent = gaussian ? std::sqrt(2.0 * std::log(1.0 / coverage_threshold)) / duration
                                       : 16.0 * pi / duration;
    double w_s = 0.5 * cfg.grid.window_multiple * band_s;
    double w_i = 0.5 * cfg.grid.window_multiple * band_i;
    if (band_s == 0.0) w_s = w_i + sum_extent;
    if (band_i == 0.0) w_i = w_s + sum_extent;
    const double d_omega = cfg.grid.d_omega > 0.0 ? cfg.grid.d_omega : 2.0 * std::max(w_s, w_i) / static_cast<double>(n);
    const double window = static_cast<double>(n) * d_omega;
    if (band_s > 0.0) require_span(window, 4.0 * band_s, "JSA signal window");
    if (band_i > 0.0) require_span(window, 4.0 * band_i, "JSA idler window");
    run.signal_freq = SpectralGrid::make(n, d_omega, 0.0);
    run.idler_freq = SpectralGrid::make(n, d_omega, 0.0);
    run.signal_time = dual_grid(run.signal_freq);
    run.idler_time = dual_grid(run.idler_freq);

    const double max_sum = window;  // |dw_s + dw_i| stays below n d_omega
    const double pump_dt =
        cfg.grid.pump_dt > 0.0 ? cfg.grid.pump_dt : std::min(gaussian ? duration / 8.0 : duration / 64.0, pi / max_sum);
    const double pad = pad_for(pump_dt);
    const std::size_t pump_points =
        cfg.grid.pump_points > 0 ? cfg.grid.pump_points : std::max<std::size_t>(256, even_ceil(2.0 * pad / pump_dt));
    require_span(static_cast<double>(pump_points) * pump_dt, 2.0 * pad, "pump window");
    run.pump_spectral = make_pump(cfg, TemporalGrid::make(pump_points, pump_dt, 0.0), duration);
    rc.grid.d_omega = d_omega;
    rc.grid.pump_dt = pump_dt;
    rc.grid.pump_points = pump_points;
  }
  return run;
}

StatePoint state_for_power(const ResolvedRun& run, double peak_power) {
  if (!(peak_power > 0.0) || !std::isfinite(peak_power)) fail(ErrorKind::domain, "peak power must be positive");
  const RunConfig& cfg = run.config;
  StatePoint point;
  point.peak_power = peak_power;
  switch (cfg.model) {
    case Model::analytic_jta: {
      const PumpEnvelope pump = run.pump_time->with_peak_power(peak_power);
      point.amplitude = build_jta(pump, run.fiber, run.signal_time, run.idler_time);
      point.rate = generation_rate(point.amplitude);
      break;
    }
    case Model::analytic_jsa: {
      const PumpEnvelope pump = run.pump_spectral->with_peak_power(peak_power);
      JsaOptions options = cfg.jsa;
      options.cw_power = cfg.jsa_cw_shift ? peak_power : 0.0;
      point.amplitude = build_jsa_analytic(pump, run.fiber, run.signal_freq, run.idler_freq, options);
      point.rate = generation_rate_closed_form(pump, run.fiber);
      break;
    }
    case Model::ssf: {
      const PumpEnvelope pump = run.pump_time->with_peak_power(peak_power);
      point.amplitude = simulate_pair_state(pump, run.fiber, run.ssf, ssf_options(cfg));
      point.rate = point.amplitude.norm_squared();
      break;
    }
  }
  point.target_rate = point.rate;
  return point;
}

StatePoint state_for_rate(const ResolvedRun& run, double rate) {
  if (!(rate >= 0.0) || !(rate < 1.0)) fail(ErrorKind::domain, "rate must lie in [0, 1)");
  const RunConfig& cfg = run.config;
  if (rate == 0.0) {
    StatePoint point;
    switch (cfg.model) {
      case Model::analytic_jta:
        point.amplitude = build_jta(*run.pump_time, run.fiber, run.signal_time, run.idler_time, JtaOptions{false});
        break;
      case Model::analytic_jsa: {
        JsaOptions options = cfg.jsa;
        options.cw_power = 0.0;
        point.amplitude = build_jsa_analytic(*run.pump_spectral, run.fiber, run.signal_freq, run.idler_freq, options);
        break;
      }
      case Model::ssf:
        point.amplitude = simulate_pair_state(*run.pump_time, run.fiber, run.ssf, SsfOptions{false, false, true});
        break;
    }
    return point;
  }

  switch (cfg.model) {
    case Model::analytic_jta: {
      const double power = power_for_rate(*run.pump_time, run.fiber, run.signal_time, run.idler_time, rate);
      StatePoint point = state_for_power(run, power);
      point.target_rate = rate;
      return point;
    }
    case Model::analytic_jsa: {
      const double power = std::sqrt(rate / generation_rate_closed_form(*run.pump_spectral, run.fiber));
      StatePoint point = state_for_power(run, power);
      point.target_rate = rate;
      return point;
    }
    case Model::ssf:
      break;
  }

  // The SSF rate is only nearly quadratic in power once the pump reshapes,
  // so the quadratic rescaling is iterated inside a shrinking bracket.
  double power = std::sqrt(rate / generation_rate_closed_form(*run.pump_time, run.fiber));
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (int iteration = 0; iteration < 60; ++iteration) {
    StatePoint point = state_for_power(run, power);
    const double ratio = point.rate / rate;
    if (std::abs(ratio - 1.0) <= cfg.ssf.rate_tolerance) {
      point.target_rate = rate;
      return point;
    }
    if (ratio < 1.0) {
      lo = std::max(lo, power);
    } else {
      hi = std::min(hi, power);
    }
    double next = ratio > 0.0 ? power / std::sqrt(ratio) : 2.0 * power;
    if (std::isfinite(hi) && (next <= lo || next >= hi)) next = 0.5 * (lo + hi);
    power = next;
  }
  std::ostringstream msg;
  msg << "SSF power search did not reach rate " << rate << " within " << cfg.ssf.rate_tolerance;
  fail(ErrorKind::range, msg.str());
}

JointAmplitude spectral_state(const StatePoint& point) {
  return point.amplitude.domain() == Domain::time ? transform_2d(point.amplitude) : point.amplitude;
}

std::pair<double, double> visibility_bound(double purity, double rate) { return {purity, purity - rate}; }

std::vector<RateRow> purity_vs_rate(const ResolvedRun& run) {
  const RunConfig& cfg = run.config;
  const bool by_power = !cfg.powers.empty();
  const std::vector<double>& inputs = by_power ? cfg.powers : cfg.rates;

  auto compute = [&](double input) {
    RateRow row;
    row.target_rate = by_power ? std::numeric_limits<double>::quiet_NaN() : input;
    try {
      const StatePoint point = by_power ? state_for_power(run, input) : state_for_rate(run, input);
      const double p = purity(point.amplitude);
      row.rate = point.rate;
      row.peak_power = point.peak_power;
      row.purity = p;
      row.schmidt_number = 1.0 / p;
      row.visibility_low = visibility_bound(p, by_power ? point.rate : input).second;
      if (by_power) row.target_rate = point.rate;
    } catch (const Error& e) {
      row.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    return row;
  };

  std::vector<RateRow> rows(inputs.size());
  const std::size_t workers = std::max<std::size_t>(1, cfg.parallelism);
  for (std::size_t start = 0; start < inputs.size(); start += workers) {
    const std::size_t stop = std::min(inputs.size(), start + workers);
    if (workers == 1) {
      rows[start] = compute(inputs[start]);
      continue;
    }
    std::vector<std::future<RateRow>> jobs;
    for (std::size_t k = start; k < stop; ++k) jobs.push_back(std::async(std::launch::async, compute, inputs[k]));
    for (std::size_t k = start; k < stop; ++k) rows[k] = jobs[k - start].get();
  }
  return rows;
}

std::vector<RateRow> purity_vs_rate(const RunConfig& cfg) { return purity_vs_rate(resolve(cfg)); }

TauOptimum optimize_tau(const RunConfig& cfg, double rate) {
  const double base = pump_duration(cfg);
  double lo = cfg.optimize.lower > 0.0 ? cfg.optimize.lower : 0.2 * base;
  double hi = cfg.optimize.upper > 0.0 ? cfg.optimize.upper : 5.0 * base;
  if (!(lo < hi)) fail(ErrorKind::configuration, "optimization bracket is empty");
  const double outer_lo = std::log(lo);
  const double outer_hi = std::log(hi);

  TauOptimum result;
  auto evaluate = [&](double log_duration) {
    const double d = std::exp(log_duration);
    const double p = purity(state_for_rate(resolve(with_duration(cfg, d)), rate).amplitude);
    result.trace.push_back({d, p});
    return p;
  };

  double a = outer_lo;
  double b = outer_hi;
  if (cfg.optimize.scan_points >= 3) {
    const std::size_t m = cfg.optimize.scan_points;
    std::vector<double> xs(m);
    std::vector<double> ps(m);
    for (std::size_t k = 0; k < m; ++k) {
      xs[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(m - 1);
      ps[k] = evaluate(xs[k]);
    }
    const auto best = static_cast<std::size_t>(std::max_element(ps.begin(), ps.end()) - ps.begin());
    a = xs[best == 0 ? 0 : best - 1];
    b = xs[std::min(m - 1, best + 1)];
  }

  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double pc = evaluate(c);
  double pd = evaluate(d);
  while (b - a > cfg.optimize.tolerance) {
    if (pc >= pd) {
      b = d;
      d = c;
      pd = pc;
      c = b - g * (b - a);
      pc = evaluate(c);
    } else {
      a = c;
      c = d;
      pc = pd;
      d = a + g * (b - a);
      pd = evaluate(d);
    }
  }
  const auto best = std::max_element(result.trace.begin(), result.trace.end(),
                                     [](const TauSample& x, const TauSample& y) { return x.purity < y.purity; });
  result.duration = best->duration;
  result.purity = best->purity;
  const double edge = 2.0 * cfg.optimize.tolerance;
  result.at_boundary = std::log(result.duration) - outer_lo < edge || outer_hi - std::log(result.duration) < edge;
  return result;
}

std::vector<FilterCurve> filter_sweep(const ResolvedRun& run) {
  const RunConfig& cfg = run.config;
  const FilterConfig filter = cfg.filter.value_or(FilterConfig{});
  if (cfg.rates.empty()) fail(ErrorKind::configuration, "filter sweep needs at least one rate");
  const SpectralGrid& grid = filter.axis == FilterAxis::signal ? run.signal_freq : run.idler_freq;
  std::vector<double> widths = filter.widths;
  if (widths.empty()) {
    const double narrow = grid.d_omega;
    const double full = 2.0 * grid.span();  // covers the grid from any centre
    const std::size_t count = 16;
    for (std::size_t k = 0; k < count; ++k) {
      widths.push_back(narrow * std::pow(full / narrow, static_cast<double>(k) / static_cast<double>(count - 1)));
    }
  }
  auto build = [&](double rate) { return spectral_state(state_for_rate(run, rate)); };
  return purity_vs_effective_rate(build, cfg.rates, widths, filter.axis, filter.center);
}

}  // namespace fwmpair
