#include "qneg/negativity.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>
#include <utility>

#include <fmt/format.h>

namespace qneg {

namespace {

using SmallMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxSearchDim, kMaxSearchDim>;
using SmallVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, kMaxSearchDim, 1>;

// Subsets within this distance of the optimum count as ties.
constexpr double kTieTol = 1e-11;
// Slack absorbing rounding in the pruning bounds.
constexpr double kPruneSlack = 1e-11;
constexpr std::uint64_t kBlockBits = 12;
constexpr int kMaxReseeds = 64;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::size_t> mask_to_indices(std::uint64_t mask) {
  std::vector<std::size_t> out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

void atomic_min(std::atomic<double>& target, double value) {
  double current = target.load(std::memory_order_relaxed);
  while (value < current &&
         !target.compare_exchange_weak(current, value, std::memory_order_relaxed)) {
  }
}

int resolve_threads(int requested) { return std::max(1, requested); }

// Runs body(worker_index) on `threads` workers and joins them.
template <typename Body>
void run_workers(int threads, Body&& body) {
  if (threads == 1) {
    body(0);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) pool.emplace_back([&body, w] { body(w); });
}

// ---------------------------------------------------------------------------
// Exhaustive partial-sum scan.

struct Candidate {
  std::uint64_t mask;
  double lambda;
};

struct BlockResult {
  double best = kInfinity;
  std::vector<Candidate> near;  // every recorded subset within kTieTol of `best`
  std::uint64_t eigensolves = 0;
  std::uint64_t pruned_gershgorin = 0;
  std::uint64_t pruned_definite = 0;
};

template <int D>
using FixedMatrix = Eigen::Matrix<Complex, D, D>;

// Lower bound on lambda_min from Gershgorin discs, with |z| <= |Re z| + |Im z|.
template <int D>
double gershgorin_lower_bound(const FixedMatrix<D>& h) {
  double bound = kInfinity;
  for (int r = 0; r < D; ++r) {
    double radius = 0.0;
    for (int c = 0; c < D; ++c) {
      if (c != r) radius += std::abs(h(r, c).real()) + std::abs(h(r, c).imag());
    }
    bound = std::min(bound, h(r, r).real() - radius);
  }
  return bound;
}

// True when h - shift*I admits a Cholesky factorization, i.e. lambda_min(h) > shift.
template <int D>
bool shifted_positive_definite(const FixedMatrix<D>& h, double shift) {
  FixedMatrix<D> l;
  for (int j = 0; j < D; ++j) {
    double pivot = h(j, j).real() - shift;
    for (int k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
    if (!(pivot > 0.0)) return false;
    const double root = std::sqrt(pivot);
    l(j, j) = root;
    for (int i = j + 1; i < D; ++i) {
      Complex acc = h(i, j);
      for (int k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
      l(i, j) = acc / root;
    }
  }
  return true;
}

template <int D>
BlockResult scan_block(const std::vector<FixedMatrix<D>>& elems, std::uint64_t lo, std::uint64_t hi,
                       std::atomic<double>& incumbent) {
  BlockResult out;
  const auto gray = [](std::uint64_t i) { return i ^ (i >> 1); };
  std::uint64_t mask = gray(lo);
  FixedMatrix<D> sum = FixedMatrix<D>::Zero();
  for (std::uint64_t m = mask; m != 0; m &= m - 1) sum += elems[static_cast<std::size_t>(std::countr_zero(m))];

  Eigen::SelfAdjointEigenSolver<FixedMatrix<D>> solver;
  for (std::uint64_t i = lo; i < hi; ++i) {
    if (i != lo) {
      const int bit = std::countr_zero(i);
      mask ^= std::uint64_t{1} << bit;
      if ((mask >> bit) & 1U) {
        sum += elems[static_cast<std::size_t>(bit)];
      } else {
        sum -= elems[static_cast<std::size_t>(bit)];
      }
    }
    if (mask == 0) continue;

    const double threshold = incumbent.load(std::memory_order_relaxed) + kTieTol + kPruneSlack;
    if (gershgorin_lower_bound<D>(sum) > threshold) {
      ++out.pruned_gershgorin;
      continue;
    }
    if (shifted_positive_definite<D>(sum, threshold)) {
      ++out.pruned_definite;
      continue;
    }
    solver.compute(sum, Eigen::EigenvaluesOnly);
    ++out.eigensolves;
    const double lambda = solver.eigenvalues()(0);
    if (lambda < out.best) {
      out.best = lambda;
      std::erase_if(out.near, [&](const Candidate& c) { return c.lambda > lambda + kTieTol; });
      atomic_min(incumbent, lambda);
    }
    if (lambda <= out.best + kTieTol) out.near.push_back({mask, lambda});
  }
  return out;
}

template <int D>
BlockResult exhaustive_scan(const QRep& q, int threads, std::uint64_t& scanned) {
  std::vector<FixedMatrix<D>> elems;
  elems.reserve(q.size());
  double start_bound = kInfinity;
  for (const auto& e : q.elements()) {
    elems.emplace_back(e.matrix());
    start_bound = std::min(start_bound, eigenvalues(e)(0));
  }
  const int n = static_cast<int>(q.size());
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t block = std::min<std::uint64_t>(total, std::uint64_t{1} << kBlockBits);
  const std::uint64_t blocks = total / block;

  // Every singleton is a subset, so its eigenvalue bounds the optimum from above.
  std::atomic<double> incumbent(start_bound);
  std::vector<BlockResult> results(static_cast<std::size_t>(blocks));
  std::atomic<std::uint64_t> next{0};
  run_workers(threads, [&](int) {
    for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
      results[static_cast<std::size_t>(b)] = scan_block<D>(elems, b * block, (b + 1) * block, incumbent);
    }
  });

  BlockResult merged;
  for (const auto& r : results) {
    merged.best = std::min(merged.best, r.best);
    merged.eigensolves += r.eigensolves;
    merged.pruned_gershgorin += r.pruned_gershgorin;
    merged.pruned_definite += r.pruned_definite;
  }
  for (const auto& r : results) {
    for (const auto& c : r.near) {
      if (c.lambda <= merged.best + kTieTol) merged.near.push_back(c);
    }
  }
  scanned = total - 1;
  return merged;
}

// ---------------------------------------------------------------------------
// Alternating ascent.

struct SearchElements {
  int dim;
  std::vector<SmallMatrix> elems;

  explicit SearchElements(const QRep& q) : dim(q.dim()) {
    if (dim > kMaxSearchDim) {
      throw Refused(fmt::format("search kernels support d <= {}, got {}", kMaxSearchDim, dim));
    }
    for (const auto& e : q.elements()) elems.emplace_back(e.matrix());
  }

  // Fills out[i] = <psi|Q_i|psi> and returns the bitmask of negative entries.
  std::uint64_t expectations(const SmallVector& psi, std::vector<double>& out) const {
    std::uint64_t mask = 0;
    out.resize(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      out[i] = psi.dot(elems[i] * psi).real();
      if (out[i] < 0.0) mask |= std::uint64_t{1} << i;
    }
    return mask;
  }

  SmallMatrix sum(std::uint64_t mask) const {
    SmallMatrix s = SmallMatrix::Zero(dim, dim);
    for (std::uint64_t m = mask; m != 0; m &= m - 1) s += elems[static_cast<std::size_t>(std::countr_zero(m))];
    return s;
  }
};

double negative_sum(const std::vector<double>& x, std::uint64_t mask) {
  double s = 0.0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) s += x[static_cast<std::size_t>(std::countr_zero(m))];
  return s;
}

struct RawAscent {
  bool negative_start = false;
  double value = 0.0;
  SmallVector psi;
  std::uint64_t subset = 0;
  int iterations = 0;
};

RawAscent ascend(const SearchElements& se, SmallVector psi, double tol, int max_iterations) {
  RawAscent out;
  std::vector<double> x;
  std::uint64_t subset = se.expectations(psi, x);
  if (subset == 0) {
    out.psi = psi;
    return out;
  }
  out.negative_start = true;
  const double inv_d = 1.0 / se.dim;
  double value = -negative_sum(x, subset) * inv_d;
  Eigen::SelfAdjointEigenSolver<SmallMatrix> solver;
  int it = 0;
  while (it < max_iterations) {
    ++it;
    solver.compute(se.sum(subset), Eigen::ComputeEigenvectors);
    SmallVector next = solver.eigenvectors().col(0);
    next.normalize();
    const std::uint64_t next_subset = se.expectations(next, x);
    const double next_value = -negative_sum(x, next_subset) * inv_d;
    if (next_value < value) break;  // rounding-level regression; keep the previous point
    const double improvement = next_value - value;
    const bool stable = next_subset == subset;
    psi = next;
    subset = next_subset;
    value = next_value;
    if (stable || improvement < tol) break;
  }
  out.value = value;
  out.psi = psi;
  out.subset = subset;
  out.iterations = it;
  return out;
}

SmallVector random_small_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SmallVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  v.normalize();
  return v;
}

PureState to_state(const SmallVector& v) { return PureState::normalized(CVector(v)); }

struct SeedBest {
  bool found = false;
  double value = -1.0;
  std::uint64_t seed = 0;
  SmallVector psi;
  std::uint64_t subset = 0;
  std::uint64_t reseeds = 0;
  std::uint64_t started = 0;

  // Higher value wins; equal values go to the lower seed index.
  void offer(double v, std::uint64_t s, const SmallVector& state, std::uint64_t mask) {
    if (!found || v > value || (v == value && s < seed)) {
      found = true;
      value = v;
      seed = s;
      psi = state;
      subset = mask;
    }
  }
};

// ---------------------------------------------------------------------------
// General p: projected gradient ascent of F(psi) = sum_j neg(q_j)^p.

double lp_objective(const std::vector<double>& x, double inv_d, double p) {
  double f = 0.0;
  for (double v : x) {
    if (v < 0.0) f += std::pow(-v * inv_d, p);
  }
  return f;
}

double lp_ascent(const SearchElements& se, SmallVector& psi, double p) {
  const double inv_d = 1.0 / se.dim;
  std::vector<double> x;
  se.expectations(psi, x);
  double f = lp_objective(x, inv_d, p);
  double step = 0.5;
  for (int it = 0; it < 5000 && step > 1e-14; ++it) {
    SmallVector grad = SmallVector::Zero(se.dim);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < 0.0) grad -= (p * std::pow(-x[j] * inv_d, p - 1.0) * inv_d) * (se.elems[j] * psi);
    }
    grad -= psi.dot(grad) * psi;  // tangent to the sphere
    const double gnorm = grad.norm();
    if (gnorm < 1e-15) break;
    for (;;) {
      SmallVector trial = psi + (step / gnorm) * grad;
      trial.normalize();
      std::vector<double> xt;
      se.expectations(trial, xt);
      const double ft = lp_objective(xt, inv_d, p);
      if (ft > f) {
        const bool converged = ft - f <= 1e-15 * std::max(1.0, f);
        psi = trial;
        x = std::move(xt);
        f = ft;
        step = std::min(1.0, step * 1.5);
        if (converged) step = 0.0;
        break;
      }
      step *= 0.5;
      if (step <= 1e-14) break;
    }
  }
  return f;
}

}  // namespace

std::vector<double> negative_part(std::span<const double> v) {
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] < 0.0 ? -v[j] : 0.0;
  return out;
}

double np_negativity(std::span<const double> v, double p) {
  if (!(p >= 1.0)) throw InvalidInput(fmt::format("N^p negativity needs p >= 1, got {}", p));
  const auto neg = negative_part(v);
  if (std::isinf(p)) return neg.empty() ? 0.0 : *std::max_element(neg.begin(), neg.end());
  if (p == 1.0) {
    double s = 0.0;
    for (double x : neg) s += x;
    return s;
  }
  // Scale by the largest entry to keep x^p away from underflow.
  const double top = neg.empty() ? 0.0 : *std::max_element(neg.begin(), neg.end());
  if (top == 0.0) return 0.0;
  double s = 0.0;
  for (double x : neg) s += std::pow(x / top, p);
  return top * std::pow(s, 1.0 / p);
}

HermitianOperator partial_sum(const QRep& q, std::span<const std::size_t> subset) {
  HermitianOperator acc = HermitianOperator::zero(q.dim());
  for (auto i : subset) acc = acc + q[i];
  return acc;
}

NegativityReport ceiling_negativity(const QRep& q) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t arg = 0;
  double lowest = kInfinity;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double v = eigenvalues(q[j])(0);
    if (v < lowest) {
      lowest = v;
      arg = j;
    }
  }
  auto pair = min_eigenpair(q[arg]);
  NegativityReport r;
  r.p = kInfinity;
  r.value = std::abs(pair.value) / q.dim();
  r.achieving_state = pair.vector;
  r.achieving_subset = {arg};
  r.exhaustive = true;
  r.subsets_scanned = q.size();
  r.method = "ceiling";
  r.eigensolves = q.size() + 1;
  r.wall_seconds = seconds_since(start);
  return r;
}

NegativityReport sum_negativity_exhaustive(const QRep& q, int thread_budget) {
  const int d = q.dim();
  if (d > kMaxExhaustiveDim) {
    throw Refused(fmt::format(
        "exhaustive sum negativity is limited to d <= {} (2^{} subsets for d={}); use the "
        "stochastic search (--seeds N) instead",
        kMaxExhaustiveDim, d * d, d));
  }
  const auto start = std::chrono::steady_clock::now();
  const int threads = resolve_threads(thread_budget);
  std::uint64_t scanned = 0;
  BlockResult merged;
  switch (d) {
    case 2: merged = exhaustive_scan<2>(q, threads, scanned); break;
    case 3: merged = exhaustive_scan<3>(q, threads, scanned); break;
    case 4: merged = exhaustive_scan<4>(q, threads, scanned); break;
    case 5: merged = exhaustive_scan<5>(q, threads, scanned); break;
    default: throw Refused(fmt::format("exhaustive sum negativity needs d >= 2, got {}", d));
  }
  if (merged.near.empty()) throw Error("exhaustive scan recorded no subset");
  const auto chosen = std::min_element(merged.near.begin(), merged.near.end(),
                                       [](const Candidate& a, const Candidate& b) { return a.mask < b.mask; });

  NegativityReport r;
  r.p = 1.0;
  r.achieving_subset = mask_to_indices(chosen->mask);
  const auto pair = min_eigenpair(partial_sum(q, r.achieving_subset));
  r.value = std::max(0.0, -pair.value / d);
  r.achieving_state = pair.vector;
  r.exhaustive = true;
  r.subsets_scanned = scanned;
  r.method = "exhaustive";
  r.eigensolves = merged.eigensolves;
  r.pruned_gershgorin = merged.pruned_gershgorin;
  r.pruned_definite = merged.pruned_definite;
  r.wall_seconds = seconds_since(start);
  return r;
}

AscentResult sum_negativity_ascent(const QRep& q, const PureState& start, double tol,
                                   int max_iterations) {
  if (start.dim() != q.dim()) throw DimensionMismatch("sum_negativity_ascent: state dimension differs");
  const SearchElements se(q);
  const auto raw = ascend(se, SmallVector(start.amplitudes()), tol, max_iterations);
  AscentResult out;
  out.negative_start = raw.negative_start;
  out.value = raw.value;
  out.state = to_state(raw.psi);
  out.subset = raw.subset;
  out.iterations = raw.iterations;
  return out;
}

NegativityReport sum_negativity_stochastic(const QRep& q, const StochasticOptions& options) {
  if (options.seeds < 1) throw InvalidInput("stochastic search needs at least one seed");
  const auto start = std::chrono::steady_clock::now();
  const SearchElements se(q);
  const int threads = resolve_threads(options.threads);

  std::vector<SeedBest> partial(static_cast<std::size_t>(threads));
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kChunk = 64;
  run_workers(threads, [&](int w) {
    auto& best = partial[static_cast<std::size_t>(w)];
    for (std::uint64_t c = next.fetch_add(kChunk); c < options.seeds; c = next.fetch_add(kChunk)) {
      const std::uint64_t end = std::min(options.seeds, c + kChunk);
      for (std::uint64_t s = c; s < end; ++s) {
        std::mt19937_64 rng(derive_seed(options.rng_seed, s));
        for (int attempt = 0; attempt <= kMaxReseeds; ++attempt) {
          const auto raw = ascend(se, random_small_state(se.dim, rng), options.tol, options.max_iterations);
          if (!raw.negative_start) {
            ++best.reseeds;
            continue;
          }
          ++best.started;
          best.offer(raw.value, s, raw.psi, raw.subset);
          break;
        }
      }
    }
  });

  SeedBest merged;
  for (const auto& p : partial) {
    merged.reseeds += p.reseeds;
    merged.started += p.started;
    if (p.found) merged.offer(p.value, p.seed, p.psi, p.subset);
  }

  NegativityReport r;
  r.p = 1.0;
  r.exhaustive = false;
  r.seeds_used = options.seeds;
  r.reseeds = merged.reseeds;
  r.method = "stochastic";
  if (merged.found) {
    r.value = merged.value;
    r.achieving_state = to_state(merged.psi);
    r.achieving_subset = mask_to_indices(merged.subset);
  } else {
    r.value = 0.0;
    r.achieving_state = PureState::basis(q.dim(), 0);
  }
  r.wall_seconds = seconds_since(start);
  return r;
}

NegativityReport sum_negativity_stochastic(const QRep& q, std::uint64_t seeds, std::uint64_t rng_seed,
                                           double tol) {
  StochasticOptions options;
  options.seeds = seeds;
  options.rng_seed = rng_seed;
  options.tol = tol;
  return sum_negativity_stochastic(q, options);
}

NegativityReport np_negativity_qrep(const QRep& q, double p, std::uint64_t seeds, std::uint64_t rng_seed,
                                    int threads) {
  if (!(p >= 1.0)) throw InvalidInput(fmt::format("N^p negativity needs p >= 1, got {}", p));
  if (std::isinf(p)) return ceiling_negativity(q);
  if (p == 1.0) {
    if (q.dim() <= kMaxExhaustiveDim) return sum_negativity_exhaustive(q, threads);
    StochasticOptions options;
    options.seeds = seeds;
    options.rng_seed = rng_seed;
    options.threads = threads;
    return sum_negativity_stochastic(q, options);
  }
  if (seeds < 1) throw InvalidInput("N^p ascent needs at least one seed");

  const auto start = std::chrono::steady_clock::now();
  const SearchElements se(q);
  SeedBest best;
  std::vector<double> x;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(derive_seed(rng_seed, s));
    SmallVector psi = random_small_state(se.dim, rng);
    int attempts = 0;
    while (se.expectations(psi, x) == 0 && attempts++ < kMaxReseeds) {
      ++best.reseeds;
      psi = random_small_state(se.dim, rng);
    }
    const double f = lp_ascent(se, psi, p);
    const std::uint64_t mask = se.expectations(psi, x);
    best.offer(std::pow(f, 1.0 / p), s, psi, mask);
  }

  NegativityReport r;
  r.p = p;
  r.value = best.value;
  r.achieving_state = to_state(best.psi);
  r.achieving_subset = mask_to_indices(best.subset);
  r.exhaustive = false;
  r.seeds_used = seeds;
  r.reseeds = best.reseeds;
  r.method = "gradient-ascent";
  r.wall_seconds = seconds_since(start);
  return r;
}

}  // namespace qneg
