#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qneg/operators.hpp"
#include "qneg/qrep.hpp"

namespace qneg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Largest dimension the exhaustive partial-sum search accepts (2^25 - 1 subsets).
inline constexpr int kMaxExhaustiveDim = 5;
/// Largest dimension the search kernels handle.
inline constexpr int kMaxSearchDim = 8;

/// Refusal to run a computation outside its supported envelope.
class Refused : public Error {
 public:
  using Error::Error;
};

/// Result of an N^p negativity computation for a Q-rep.
struct NegativityReport {
  double p = 1.0;  ///< measure; kInfinity for the ceiling negativity
  double value = 0.0;
  PureState achieving_state;
  std::vector<std::size_t> achieving_subset;  ///< indices into the Q-rep
  bool exhaustive = false;
  std::uint64_t subsets_scanned = 0;
  std::uint64_t seeds_used = 0;

  std::string method;
  std::uint64_t eigensolves = 0;
  std::uint64_t pruned_gershgorin = 0;
  std::uint64_t pruned_definite = 0;
  std::uint64_t reseeds = 0;
  double wall_seconds = 0.0;
};

/// Elementwise max(-v_j, 0).
std::vector<double> negative_part(std::span<const double> v);

/// L^p norm of the negative part; p = kInfinity gives the largest entry.
/// Throws InvalidInput for p < 1.
double np_negativity(std::span<const double> v, double p);

/// (1/d) |min_j lambda_min(Q_j)| with its eigenvector.
NegativityReport ceiling_negativity(const QRep& q);

/// Sum negativity by scanning every nonempty partial sum sum_{i in S} Q_i.
///
/// Subsets are visited in Gray-code order inside fixed blocks of the index
/// range 0..2^{d^2}-1; blocks are handed out to `thread_budget` workers.
/// A subset is skipped when its Gershgorin disc bound, or a successful
/// Cholesky factorization of (sum - t I), shows its minimal eigenvalue is
/// above the best value found so far. Subsets whose minimal eigenvalue lies
/// within 1e-11 of the optimum are treated as ties and the smallest bitmask
/// wins, so the report does not depend on the worker count.
///
/// Throws Refused for d > 5.
NegativityReport sum_negativity_exhaustive(const QRep& q, int thread_budget = 1);

struct StochasticOptions {
  std::uint64_t seeds = 1000;
  std::uint64_t rng_seed = 1;
  double tol = 1e-12;
  int max_iterations = 200;
  int threads = 1;
};

/// Outcome of one alternating ascent from a given pure state.
struct AscentResult {
  bool negative_start = false;  ///< false when the start has no negative entry
  double value = 0.0;
  PureState state;
  std::uint64_t subset = 0;  ///< bitmask of the negative entries of `state`
  int iterations = 0;
};

/// Alternates S <- {i : Tr(rho Q_i) < 0} and rho <- minimal eigenvector of
/// sum_{i in S} Q_i until S repeats, the objective improves by less than
/// `tol`, or `max_iterations` is reached.
AscentResult sum_negativity_ascent(const QRep& q, const PureState& start, double tol = 1e-12,
                                   int max_iterations = 200);

/// Best ascent over Haar-random starts. Seed k draws from the stream
/// derive_seed(rng_seed, k); starts without negative entries are redrawn and
/// counted in `reseeds`. The value is always a lower bound on N^1.
NegativityReport sum_negativity_stochastic(const QRep& q, const StochasticOptions& options);
NegativityReport sum_negativity_stochastic(const QRep& q, std::uint64_t seeds,
                                           std::uint64_t rng_seed, double tol = 1e-12);

/// N^p of a Q-rep. p = inf is exact via ceiling_negativity; p = 1 uses the
/// exhaustive search up to d = 5 and the stochastic search above; other p
/// run projected-gradient ascent over pure states from `seeds` random starts.
NegativityReport np_negativity_qrep(const QRep& q, double p, std::uint64_t seeds,
                                    std::uint64_t rng_seed, int threads = 1);

/// sum_{i in subset} Q_i
HermitianOperator partial_sum(const QRep& q, std::span<const std::size_t> subset);

}  // namespace qneg
