#include "fwmpair/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include <fftw3.h>

#include "fwmpair/error.hpp"

namespace fwmpair {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// FFTW planning is not thread safe; execution of an existing plan on new
// arrays is. Plans are created once per geometry and kept for the process.
class PlanCache {
 public:
  using Key = std::tuple<int, int, int, int, int>;  // n, howmany, stride, dist, sign

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int howmany, int stride, int dist, int sign) {
    const Key key{n, howmany, stride, dist, sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t extent = static_cast<std::size_t>((howmany - 1) * dist + (n - 1) * stride + 1);
    auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * extent));
    fftw_plan plan = fftw_plan_many_dft(1, &n, howmany, scratch, nullptr, stride, dist, scratch, nullptr, stride, dist,
                                        sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) fail(ErrorKind::dimension, "fftw could not plan a transform of length " + std::to_string(n));
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

int fftw_sign(Direction direction) { return direction == Direction::time_to_frequency ? FFTW_BACKWARD : FFTW_FORWARD; }

// Centred transform of `howmany` strided vectors held in `data`.
void centred_transform(cdouble* data, int n, int howmany, int stride, int dist, Direction direction) {
  const int half = n / 2;
  std::vector<cdouble> line(static_cast<std::size_t>(n));
  auto shift = [&](int shift_by) {
    for (int h = 0; h < howmany; ++h) {
      cdouble* base = data + static_cast<std::ptrdiff_t>(h) * dist;
      for (int m = 0; m < n; ++m) line[m] = base[static_cast<std::ptrdiff_t>((m + shift_by) % n) * stride];
      for (int m = 0; m < n; ++m) base[static_cast<std::ptrdiff_t>(m) * stride] = line[m];
    }
  };
  shift(half);  // ifftshift: sample at index n/2 moves to 0
  fftw_plan plan = plan_cache().get(n, howmany, stride, dist, fftw_sign(direction));
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, raw, raw);
  shift(n - half);  // fftshift
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int h = 0; h < howmany; ++h) {
    cdouble* base = data + static_cast<std::ptrdiff_t>(h) * dist;
    for (int m = 0; m < n; ++m) base[static_cast<std::ptrdiff_t>(m) * stride] *= scale;
  }
}

}  // namespace

TemporalGrid TemporalGrid::make(std::size_t n_points, double dt, double t_center) {
  if (n_points < 8) fail(ErrorKind::dimension, "temporal grid needs at least 8 points");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorKind::dimension, "temporal grid step must be positive");
  if (!std::isfinite(t_center)) fail(ErrorKind::dimension, "temporal grid centre must be finite");
  return TemporalGrid{n_points, dt, t_center};
}

Eigen::VectorXd TemporalGrid::times() const {
  Eigen::VectorXd t(static_cast<Eigen::Index>(n_points));
  for (std::size_t j = 0; j < n_points; ++j) t(static_cast<Eigen::Index>(j)) = time(j);
  return t;
}

SpectralGrid SpectralGrid::make(std::size_t n_points, double d_omega, double omega_center) {
  if (n_points < 8) fail(ErrorKind::dimension, "spectral grid needs at least 8 points");
  if (!(d_omega > 0.0) || !std::isfinite(d_omega)) fail(ErrorKind::dimension, "spectral grid step must be positive");
  return SpectralGrid{n_points, d_omega, omega_center, two_pi / (static_cast<double>(n_points) * d_omega), 0.0};
}

Eigen::VectorXd SpectralGrid::detunings() const {
  Eigen::VectorXd w(static_cast<Eigen::Index>(n_points));
  for (std::size_t k = 0; k < n_points; ++k) w(static_cast<Eigen::Index>(k)) = detuning(k);
  return w;
}

SpectralGrid dual_grid(const TemporalGrid& grid) {
  const double d_omega = two_pi / (static_cast<double>(grid.n_points) * grid.dt);
  return SpectralGrid{grid.n_points, d_omega, 0.0, grid.dt, grid.t_center};
}

TemporalGrid dual_grid(const SpectralGrid& grid) {
  return TemporalGrid{grid.n_points, grid.conjugate_dt, grid.conjugate_t_center};
}

Eigen::VectorXcd transform_1d(std::span<const cdouble> samples, std::size_t n_points, Direction direction) {
  if (samples.size() != n_points) {
    fail(ErrorKind::dimension, "transform length " + std::to_string(samples.size()) + " does not match grid size " +
                                   std::to_string(n_points));
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(n_points));
  std::copy(samples.begin(), samples.end(), out.data());
  centred_transform(out.data(), static_cast<int>(n_points), 1, 1, static_cast<int>(n_points), direction);
  return out;
}

Eigen::VectorXcd transform_1d(const Eigen::VectorXcd& samples, const TemporalGrid& grid, Direction direction) {
  return transform_1d(std::span<const cdouble>(samples.data(), static_cast<std::size_t>(samples.size())),
                      grid.n_points, direction);
}

void transform_axis(Eigen::MatrixXcd& matrix, int axis, Direction direction) {
  const int rows = static_cast<int>(matrix.rows());
  const int cols = static_cast<int>(matrix.cols());
  if (axis == 0) {
    centred_transform(matrix.data(), rows, cols, 1, rows, direction);
  } else {
    centred_transform(matrix.data(), cols, rows, rows, 1, direction);
  }
}

Eigen::VectorXcd spectral_density(const Eigen::VectorXcd& samples, const TemporalGrid& grid) {
  const SpectralGrid dual = dual_grid(grid);
  return transform_1d(samples, grid, Direction::time_to_frequency) * std::sqrt(grid.dt / dual.d_omega);
}

Eigen::VectorXcd temporal_samples(const Eigen::VectorXcd& density, const SpectralGrid& grid) {
  const std::span<const cdouble> view(density.data(), static_cast<std::size_t>(density.size()));
  return transform_1d(view, grid.n_points, Direction::frequency_to_time) * std::sqrt(grid.d_omega / grid.conjugate_dt);
}

std::size_t axis_size(const AxisGrid& axis) {
  return std::visit([](const auto& g) { return g.n_points; }, axis);
}

double axis_step(const AxisGrid& axis) {
  if (const auto* t = std::get_if<TemporalGrid>(&axis)) return t->dt;
  return std::get<SpectralGrid>(axis).d_omega;
}

Eigen::VectorXd axis_coordinates(const AxisGrid& axis) {
  if (const auto* t = std::get_if<TemporalGrid>(&axis)) return t->times();
  return std::get<SpectralGrid>(axis).detunings();
}

JointAmplitude JointAmplitude::time_domain(Eigen::MatrixXcd matrix, const TemporalGrid& signal,
                                           const TemporalGrid& idler) {
  JointAmplitude ja{std::move(matrix), signal, idler, 1.0};
  ja.validate();
  return ja;
}

JointAmplitude JointAmplitude::frequency_domain(Eigen::MatrixXcd matrix, const SpectralGrid& signal,
                                                const SpectralGrid& idler) {
  JointAmplitude ja{std::move(matrix), signal, idler, 1.0};
  ja.validate();
  return ja;
}

Domain JointAmplitude::domain() const {
  return std::holds_alternative<TemporalGrid>(signal_axis) ? Domain::time : Domain::frequency;
}

void JointAmplitude::validate() const {
  if (signal_axis.index() != idler_axis.index()) {
    fail(ErrorKind::dimension, "joint amplitude mixes temporal and spectral axes");
  }
  if (static_cast<std::size_t>(matrix.rows()) != axis_size(signal_axis) ||
      static_cast<std::size_t>(matrix.cols()) != axis_size(idler_axis)) {
    fail(ErrorKind::dimension, "joint amplitude matrix is " + std::to_string(matrix.rows()) + "x" +
                                   std::to_string(matrix.cols()) + " but axes are " +
                                   std::to_string(axis_size(signal_axis)) + "x" + std::to_string(axis_size(idler_axis)));
  }
}

JointAmplitude transform_2d(const JointAmplitude& amplitude) {
  amplitude.validate();
  JointAmplitude out = amplitude;
  if (amplitude.domain() == Domain::time) {
    const auto& ts = std::get<TemporalGrid>(amplitude.signal_axis);
    const auto& ti = std::get<TemporalGrid>(amplitude.idler_axis);
    const SpectralGrid ws = dual_grid(ts);
    const SpectralGrid wi = dual_grid(ti);
    transform_axis(out.matrix, 0, Direction::time_to_frequency);
    transform_axis(out.matrix, 1, Direction::time_to_frequency);
    out.matrix *= std::sqrt((ts.dt / ws.d_omega) * (ti.dt / wi.d_omega));
    out.signal_axis = ws;
    out.idler_axis = wi;
  } else {
    const auto& ws = std::get<SpectralGrid>(amplitude.signal_axis);
    const auto& wi = std::get<SpectralGrid>(amplitude.idler_axis);
    transform_axis(out.matrix, 0, Direction::frequency_to_time);
    transform_axis(out.matrix, 1, Direction::frequency_to_time);
    out.matrix *= std::sqrt((ws.d_omega / ws.conjugate_dt) * (wi.d_omega / wi.conjugate_dt));
    out.signal_axis = dual_grid(ws);
    out.idler_axis = dual_grid(wi);
  }
  return out;
}

}  // namespace fwmpair
