#include "qneg/stationary.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include <fmt/format.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

namespace qneg {

std::vector<double> StationaryVector::entries() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dim * dim));
  out.insert(out.end(), static_cast<std::size_t>(n), a);
  out.insert(out.end(), static_cast<std::size_t>(m), 0.0);
  out.insert(out.end(), static_cast<std::size_t>(positives()), b);
  return out;
}

bool stationary_feasible(int d, int n, int m) {
  const long long k = static_cast<long long>(d) * d - n - m;
  if (d < 1 || n < 1 || m < 0 || k < 1) return false;
  // k((k+n)/d - 1) > n, kept in integers so boundary cases stay exact.
  return k * (k + n - d) > static_cast<long long>(n) * d;
}

StationaryVector stationary_values(int d, int n, int m) {
  if (d < 1) throw InvalidInput(fmt::format("stationary_values: dimension must be positive, got {}", d));
  const int k = d * d - n - m;
  if (n < 1 || m < 0 || k < 1) {
    throw InvalidInput(fmt::format("stationary_values: need 1 <= n, 0 <= m, n + m < d^2 (d={}, n={}, m={})",
                                   d, n, m));
  }
  if (!stationary_feasible(d, n, m)) {
    throw InvalidInput(fmt::format("stationary_values: (d={}, n={}, m={}) admits no solution with a < 0 < b",
                                   d, n, m));
  }
  const double kd = k;
  const double nd = n;
  const double disc = kd * nd * ((kd + nd) / d - 1.0);
  StationaryVector v;
  v.dim = d;
  v.n = n;
  v.m = m;
  v.b = (kd + std::sqrt(disc)) / (kd * (kd + nd));
  v.a = (1.0 - kd * v.b) / nd;
  return v;
}

std::vector<StationaryVector> stationary_table(int d) {
  std::vector<StationaryVector> out;
  const int total = d * d;
  for (int n = 1; n < total; ++n) {
    for (int m = 0; n + m < total; ++m) {
      if (!stationary_feasible(d, n, m)) continue;
      out.push_back(stationary_values(d, n, m));
    }
  }
  return out;
}

StationaryMaximum max_stationary_sum_negativity(int d) {
  if (d < 2) throw InvalidInput(fmt::format("max_stationary_sum_negativity needs d >= 2, got {}", d));
  StationaryMaximum best;
  bool found = false;
  for (const auto& v : stationary_table(d)) {
    const double value = v.sum_negativity();
    if (!found || value > best.value) {
      best = {value, v.n, v.m};
      found = true;
    }
  }
  return best;
}

LocalMaxCertificate local_max_certificate(const NegativityReport& report, const QRep& q, double tol) {
  if (report.achieving_state.dim() != q.dim()) {
    throw DimensionMismatch(fmt::format("certificate: report state has dimension {}, Q-rep has {}",
                                        report.achieving_state.dim(), q.dim()));
  }
  LocalMaxCertificate cert;
  const auto qp = represent(report.achieving_state, q);
  cert.quasiprobabilities.assign(qp.entries().begin(), qp.entries().end());

  auto sorted = cert.quasiprobabilities;
  std::sort(sorted.begin(), sorted.end());
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size() || sorted[i] - sorted[i - 1] > tol) {
      const double sum = std::accumulate(sorted.begin() + static_cast<std::ptrdiff_t>(begin),
                                         sorted.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
      cert.clusters.push_back({sum / static_cast<double>(i - begin), i - begin});
      begin = i;
    }
  }

  const bool has_zero = std::any_of(cert.clusters.begin(), cert.clusters.end(),
                                    [&](const ValueCluster& c) { return std::abs(c.center) <= tol; });
  cert.certified = cert.clusters.size() == 2 || (cert.clusters.size() == 3 && has_zero);
  cert.stationary_bound = max_stationary_sum_negativity(q.dim()).value;
  cert.global_max_witness = std::abs(report.value - cert.stationary_bound) <= tol;
  cert.verdict = cert.certified ? "local-max" : "no certificate";
  return cert;
}

double wh_conjectured_lower_bound() {
  return (2.0 / 3.0) * (std::cos(std::numbers::pi / 9.0) - 0.5);
}

double wh_sum_negativity_d3(const HermitianOperator& fiducial) {
  const QRep q(wh_orbit(fiducial, 3), "wh-sample");
  return sum_negativity_exhaustive(q, 1).value;
}

namespace {

// Stand-in objective where the parameters leave the fiducial manifold.
constexpr double kInfeasiblePenalty = 1.0;

double evaluate(const WhFiducialParams& params) {
  const auto fid = try_sample_wh_fiducial_d3(params);
  if (!fid) return kInfeasiblePenalty;
  try {
    return wh_sum_negativity_d3(fid->matrix());
  } catch (const InvalidQRep&) {
    return kInfeasiblePenalty;
  }
}

struct PolishContext {
  int branch;
};

double polish_objective(const gsl_vector* x, void* raw) {
  const auto* ctx = static_cast<const PolishContext*>(raw);
  WhFiducialParams p;
  p.diag_angle = gsl_vector_get(x, 0);
  p.polar = gsl_vector_get(x, 1);
  p.azimuth = gsl_vector_get(x, 2);
  p.v_phase = gsl_vector_get(x, 3);
  p.branch = ctx->branch;
  return evaluate(p);
}

ConjectureSample polish(const ConjectureSample& start) {
  PolishContext ctx{start.params.branch};
  gsl_multimin_function fn{&polish_objective, 4, &ctx};
  gsl_vector* x = gsl_vector_alloc(4);
  gsl_vector* step = gsl_vector_alloc(4);
  gsl_vector_set(x, 0, start.params.diag_angle);
  gsl_vector_set(x, 1, start.params.polar);
  gsl_vector_set(x, 2, start.params.azimuth);
  gsl_vector_set(x, 3, start.params.v_phase);
  gsl_vector_set_all(step, 0.05);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 4);
  gsl_multimin_fminimizer_set(s, &fn, x, step);
  for (int it = 0; it < 4000; ++it) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS) break;
  }
  ConjectureSample out;
  out.params.diag_angle = gsl_vector_get(s->x, 0);
  out.params.polar = gsl_vector_get(s->x, 1);
  out.params.azimuth = gsl_vector_get(s->x, 2);
  out.params.v_phase = gsl_vector_get(s->x, 3);
  out.params.branch = start.params.branch;
  out.value = s->fval;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  if (out.value > start.value) return start;
  return out;
}

template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
  };
  if (threads <= 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
}

}  // namespace

ConjectureSweepResult conjecture_sweep(const ConjectureSweepOptions& options) {
  if (options.samples < 1) throw InvalidInput("conjecture sweep needs at least one sample");
  const auto start = std::chrono::steady_clock::now();
  gsl_set_error_handler_off();

  ConjectureSweepResult out;
  out.samples = options.samples;
  out.bound = wh_conjectured_lower_bound();
  const double floor = out.bound - 1e-9;

  std::vector<ConjectureSample> raw(options.samples);
  std::vector<std::uint64_t> failures(options.samples, 0);
  parallel_for(raw.size(), options.threads, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(options.rng_seed, i));
    for (;;) {
      const auto params = random_wh_params(rng);
      const auto fid = try_sample_wh_fiducial_d3(params);
      if (!fid) {
        ++failures[i];
        continue;
      }
      raw[i] = {params, wh_sum_negativity_d3(fid->matrix())};
      return;
    }
  });
  out.sampling_failures = std::accumulate(failures.begin(), failures.end(), std::uint64_t{0});

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return raw[l].value < raw[r].value; });
  out.raw_min = raw[order.front()].value;
  out.raw_below_bound = static_cast<std::uint64_t>(
      std::count_if(raw.begin(), raw.end(), [&](const ConjectureSample& s) { return s.value < floor; }));

  const std::size_t starts = std::min<std::size_t>(raw.size(), static_cast<std::size_t>(std::max(0, options.polish_starts)));
  out.polished.resize(starts);
  parallel_for(starts, options.threads, [&](std::size_t i) {
    // Nelder-Mead stalls on this nonsmooth objective; restart from the last simplex point.
    auto current = raw[order[i]];
    for (int round = 0; round < 6; ++round) {
      const auto next = polish(current);
      const bool stalled = current.value - next.value < 1e-13;
      current = next;
      if (stalled) break;
    }
    out.polished[i] = current;
  });

  out.best = raw[order.front()];
  for (const auto& p : out.polished) {
    if (p.value < floor) ++out.polished_below_bound;
    if (p.value < out.best.value) out.best = p;
  }
  out.polished_min = out.best.value;
  out.best_fiducial = sample_wh_fiducial_d3(out.best.params).matrix();

  const auto mine = eigenvalues(out.best_fiducial);
  const auto ref = eigenvalues(qmin_fiducial());
  out.best_spectrum_gap_to_qmin = (mine - ref).cwiseAbs().maxCoeff();
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace qneg
