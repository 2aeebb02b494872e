#include "cqed/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cqed/units.hpp"

namespace cqed {

namespace {

constexpr double kMinMeanPhotons = 1e-30;

double trace_with(const Matrix& op, const Matrix& x) {
  return op.cwiseProduct(x.transpose()).sum().real();
}

void require_monotone(const std::vector<double>& taus, const char* what) {
  if (taus.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty delay grid");
  }
  if (!std::is_sorted(taus.begin(), taus.end())) {
    throw std::invalid_argument(std::string(what) + ": delay grid must be monotone increasing");
  }
}

double clamp_value(double v, const char* what) {
  if (v < -1e-8) {
    throw std::runtime_error(std::string(what) + ": correlation value significantly negative");
  }
  return v < 0.0 ? 0.0 : v;
}

struct RegressionContext {
  Superoperator liouville;
  DensityMatrix rho_ss;
  Matrix a;
  Matrix n_op;
  double nbar = 0.0;
};

RegressionContext make_context(const SystemParams& p, const char* what) {
  RegressionContext ctx{liouvillian(p), {}, annihilation_operator(p.dims).m,
                        number_operator(p.dims).m, 0.0};
  ctx.rho_ss = steady_state(ctx.liouville);
  ctx.nbar = trace_with(ctx.n_op, ctx.rho_ss.m);
  if (!(ctx.nbar > kMinMeanPhotons)) {
    throw std::runtime_error(std::string(what) +
                             ": mean photon number is zero, normalization undefined");
  }
  return ctx;
}

}  // namespace

double steady_mean_photons(const SystemParams& p) {
  const auto liouville = liouvillian(p);
  const auto rho = steady_state(liouville);
  return trace_with(number_operator(p.dims).m, rho.m);
}

CorrelationSeries g2(const SystemParams& p, const std::vector<double>& taus) {
  require_monotone(taus, "g2");
  auto ctx = make_context(p, "g2");

  // Stationarity: evaluate on |tau|, sorted ascending for one sequential pass.
  std::vector<int> order(taus.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return std::abs(taus[i]) < std::abs(taus[j]); });

  CorrelationSeries series{taus, std::vector<double>(taus.size()), 2, ctx.nbar * ctx.nbar};
  StepPropagator prop(ctx.liouville);
  Vector v = vectorize(ctx.a * ctx.rho_ss.m * ctx.a.adjoint());
  double t = 0.0;
  for (int idx : order) {
    const double target = std::abs(taus[idx]);
    prop.advance(v, target - t);
    t = target;
    const double value = trace_with(ctx.n_op, unvectorize(v, p.dims)) / series.normalization;
    series.values[idx] = clamp_value(value, "g2");
  }
  return series;
}

double g3(const SystemParams& p, double tau1, double tau2) {
  if (tau1 < 0.0 || tau2 < 0.0) {
    throw std::invalid_argument("g3: delays must be non-negative");
  }
  auto ctx = make_context(p, "g3");
  StepPropagator prop(ctx.liouville);

  Vector v = vectorize(ctx.a * ctx.rho_ss.m * ctx.a.adjoint());
  prop.advance(v, tau1);
  Vector w = vectorize(ctx.a * unvectorize(v, p.dims) * ctx.a.adjoint());
  prop.advance(w, tau2);
  const double value =
      trace_with(ctx.n_op, unvectorize(w, p.dims)) / (ctx.nbar * ctx.nbar * ctx.nbar);
  return clamp_value(value, "g3");
}

CorrelationSeries g3_zero_tau(const SystemParams& p, const std::vector<double>& taus) {
  require_monotone(taus, "g3_zero_tau");
  auto ctx = make_context(p, "g3_zero_tau");
  const double norm = ctx.nbar * ctx.nbar * ctx.nbar;

  CorrelationSeries series{taus, std::vector<double>(taus.size()), 3, norm};
  StepPropagator prop(ctx.liouville);

  const Matrix conditioned_once = ctx.a * ctx.rho_ss.m * ctx.a.adjoint();
  const int first_nonneg =
      static_cast<int>(std::lower_bound(taus.begin(), taus.end(), 0.0) - taus.begin());

  // tau < 0: pair detected last; propagate a rho a+ and read off <a+^2 a^2>.
  if (first_nonneg > 0) {
    const Matrix pair_op = (ctx.a.adjoint() * ctx.a.adjoint() * ctx.a * ctx.a).eval();
    Vector v = vectorize(conditioned_once);
    double t = 0.0;
    for (int i = first_nonneg - 1; i >= 0; --i) {
      const double target = -taus[i];
      prop.advance(v, target - t);
      t = target;
      series.values[i] =
          clamp_value(trace_with(pair_op, unvectorize(v, p.dims)) / norm, "g3_zero_tau");
    }
  }

  // tau >= 0: both annihilations at time zero; propagate a^2 rho a+^2.
  if (first_nonneg < static_cast<int>(taus.size())) {
    Vector v = vectorize(ctx.a * conditioned_once * ctx.a.adjoint());
    double t = 0.0;
    for (int i = first_nonneg; i < static_cast<int>(taus.size()); ++i) {
      prop.advance(v, taus[i] - t);
      t = taus[i];
      series.values[i] =
          clamp_value(trace_with(ctx.n_op, unvectorize(v, p.dims)) / norm, "g3_zero_tau");
    }
  }
  return series;
}

CorrelationSeries g3_diag(const SystemParams& p, const std::vector<double>& taus) {
  require_monotone(taus, "g3_diag");
  if (taus.front() < 0.0) {
    throw std::invalid_argument("g3_diag: delays must be non-negative");
  }
  auto ctx = make_context(p, "g3_diag");
  const double norm = ctx.nbar * ctx.nbar * ctx.nbar;

  CorrelationSeries series{taus, std::vector<double>(taus.size()), 3, norm};
  StepPropagator prop(ctx.liouville);

  // Both delays move together: keep the conditioned state (forward) and the
  // photon-number functional (transposed) in step, and sandwich in between.
  Vector v = vectorize(ctx.a * ctx.rho_ss.m * ctx.a.adjoint());
  Vector u = vectorize(ctx.n_op);
  double t = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double dt = taus[i] - t;
    prop.advance(v, dt);
    prop.advance_transpose(u, dt);
    t = taus[i];
    const Vector w = vectorize(ctx.a * unvectorize(v, p.dims) * ctx.a.adjoint());
    const double value = (u.transpose() * w).value().real() / norm;
    series.values[i] = clamp_value(value, "g3_diag");
  }
  return series;
}

PhotonDistribution photon_distribution(const DensityMatrix& rho) {
  PhotonDistribution dist;
  dist.probs.resize(rho.dims.fock_dim, 0.0);
  for (int n = 0; n < rho.dims.fock_dim; ++n) {
    for (int s = 0; s < rho.dims.atom_dim; ++s) {
      dist.probs[n] += rho.m(rho.dims.index(s, n), rho.dims.index(s, n)).real();
    }
    dist.mean += n * dist.probs[n];
  }
  return dist;
}

double gk_from_distribution(const PhotonDistribution& p, int k) {
  if (k < 2) {
    throw std::invalid_argument("gk_from_distribution: order must be at least 2");
  }
  if (!(p.mean > kMinMeanPhotons)) {
    throw std::runtime_error("gk_from_distribution: zero mean photon number");
  }
  double sum = 0.0;
  for (std::size_t m = k; m < p.probs.size(); ++m) {
    double falling = 1.0;
    for (int j = 0; j < k; ++j) {
      falling *= static_cast<double>(m - j);
    }
    sum += falling * p.probs[m];
  }
  return sum / std::pow(p.mean, k);
}

PhotonDistribution poisson_reference(double mean, int fock_dim) {
  if (mean < 0.0) {
    throw std::invalid_argument("poisson_reference: mean must be non-negative");
  }
  if (fock_dim < 1) {
    throw std::invalid_argument("poisson_reference: fock_dim must be positive");
  }
  PhotonDistribution dist;
  dist.probs.resize(fock_dim, 0.0);
  if (mean == 0.0) {
    dist.probs[0] = 1.0;
    return dist;
  }
  for (int n = 0; n < fock_dim; ++n) {
    dist.probs[n] = std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
    dist.mean += n * dist.probs[n];
  }
  return dist;
}

WindowedAverage windowed_average(const CorrelationSeries& series, double t_start, double t_end) {
  if (!(t_start <= t_end)) {
    throw std::invalid_argument("windowed_average: t_start must not exceed t_end");
  }
  const double slack = 1e-12;
  WindowedAverage out;
  double sum = 0.0;
  for (std::size_t i = 0; i < series.taus.size(); ++i) {
    if (series.taus[i] >= t_start - slack && series.taus[i] <= t_end + slack) {
      sum += series.values[i];
      ++out.count;
    }
  }
  if (out.count == 0) {
    throw std::invalid_argument("windowed_average: window contains no samples");
  }
  out.mean = sum / out.count;
  if (out.count > 1) {
    double ss = 0.0;
    for (std::size_t i = 0; i < series.taus.size(); ++i) {
      if (series.taus[i] >= t_start - slack && series.taus[i] <= t_end + slack) {
        ss += (series.values[i] - out.mean) * (series.values[i] - out.mean);
      }
    }
    out.standard_error = std::sqrt(ss / (out.count - 1)) / std::sqrt(out.count);
  }
  return out;
}

double dominant_oscillation_frequency(const std::vector<double>& taus,
                                      const std::vector<double>& values, double f_min,
                                      double f_max) {
  const int n = static_cast<int>(taus.size());
  if (n < 16 || values.size() != taus.size()) {
    throw std::invalid_argument("dominant_oscillation_frequency: need at least 16 samples");
  }
  if (!(f_min > 0.0 && f_max > f_min)) {
    throw std::invalid_argument("dominant_oscillation_frequency: invalid frequency band");
  }

  // Remove the slow baseline with a moving average spanning one period of
  // the lowest band frequency.
  const double dt = (taus.back() - taus.front()) / (n - 1);
  int width = static_cast<int>(std::lround(1.0 / (f_min * dt)));
  width = std::clamp(width, 3, n);
  if (width % 2 == 0) {
    ++width;
  }
  std::vector<double> detrended(n);
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - width / 2);
    const int hi = std::min(n - 1, i + width / 2);
    double avg = 0.0;
    for (int j = lo; j <= hi; ++j) {
      avg += values[j];
    }
    avg /= (hi - lo + 1);
    detrended[i] = values[i] - avg;
  }

  std::vector<double> windowed(n);
  for (int i = 0; i < n; ++i) {
    const double hann = 0.5 - 0.5 * std::cos(units::kTwoPi * i / (n - 1));
    windowed[i] = detrended[i] * hann;
  }

  const int bins = 2000;
  const double df = (f_max - f_min) / bins;
  auto power = [&](double f) {
    Complex acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += windowed[i] * std::exp(Complex(0.0, -units::kTwoPi * f * taus[i]));
    }
    return std::norm(acc);
  };

  std::vector<double> spectrum(bins + 1);
  for (int k = 0; k <= bins; ++k) {
    spectrum[k] = power(f_min + k * df);
  }

  // Strongest interior local maximum; a band-edge argmax is the tail of an
  // out-of-band component, not an oscillation in the band.
  int best = -1;
  for (int k = 1; k < bins; ++k) {
    if (spectrum[k] >= spectrum[k - 1] && spectrum[k] >= spectrum[k + 1] &&
        (best < 0 || spectrum[k] > spectrum[best])) {
      best = k;
    }
  }
  if (best < 0) {
    throw std::runtime_error(
        "dominant_oscillation_frequency: no spectral peak inside the band");
  }

  double f_peak = f_min + best * df;
  const double y0 = spectrum[best - 1], y1 = spectrum[best], y2 = spectrum[best + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  if (denom < 0.0) {
    f_peak += 0.5 * df * (y0 - y2) / denom;
  }
  return f_peak;
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) {
    throw std::invalid_argument("linear_grid: need step > 0 and stop >= start");
  }
  const int count = static_cast<int>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = start + i * step;
  }
  return grid;
}

std::vector<double> default_dynamics_grid() {
  return linear_grid(units::seconds_from_ns(-500.0), units::seconds_from_ns(500.0),
                     units::seconds_from_ns(1.0));
}

std::vector<double> long_time_grid() {
  auto grid = linear_grid(0.0, units::seconds_from_ns(500.0), units::seconds_from_ns(1.0));
  const auto tail = linear_grid(units::seconds_from_ns(510.0), units::seconds_from_us(4.0),
                                units::seconds_from_ns(10.0));
  grid.insert(grid.end(), tail.begin(), tail.end());
  return grid;
}

}  // namespace cqed
