#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qneg/negativity.hpp"
#include "qneg/qrep.hpp"
#include "qneg/wh.hpp"

namespace qneg {

inline constexpr double kStationaryTol = 1e-12;
inline constexpr double kClusterTol = 1e-7;

/// Quasiprobability vector on the sqrt(1/d) sphere with n entries equal to
/// a < 0, m zeros and k = d^2 - n - m entries equal to b > 0.
struct StationaryVector {
  int dim = 0;
  int n = 0;
  int m = 0;
  double a = 0.0;
  double b = 0.0;

  int positives() const { return dim * dim - n - m; }
  /// n |a|
  double sum_negativity() const { return -n * a; }
  std::vector<double> entries() const;
};

/// Whether (n, m) admits a stationary vector with a < 0 < b.
bool stationary_feasible(int d, int n, int m);

/// Solves n a + k b = 1, n a^2 + k b^2 = 1/d for a < 0 < b. With k fixed,
/// b is the larger root of k(k+n) b^2 - 2k b + 1 - n/d = 0, which gives
/// a < 0 exactly when k((k+n)/d - 1) > n. Throws InvalidInput otherwise.
StationaryVector stationary_values(int d, int n, int m);

/// Every feasible (n, m) in dimension d, ordered by n then m.
std::vector<StationaryVector> stationary_table(int d);

struct StationaryMaximum {
  double value = 0.0;
  int n = 0;
  int m = 0;
};

/// Largest n|a| over all feasible (n, m); ties keep the smallest n, then m.
StationaryMaximum max_stationary_sum_negativity(int d);

struct ValueCluster {
  double center = 0.0;
  std::size_t count = 0;
};

struct LocalMaxCertificate {
  std::vector<double> quasiprobabilities;
  std::vector<ValueCluster> clusters;  // ascending centers
  bool certified = false;
  bool global_max_witness = false;
  double stationary_bound = 0.0;
  std::string verdict;
};

/// Sorts the achieving state's quasiprobabilities and splits them wherever
/// consecutive entries differ by more than `tol`. Certified when there are
/// two clusters, or three with one centered at 0 within `tol`.
LocalMaxCertificate local_max_certificate(const NegativityReport& report, const QRep& q,
                                          double tol = kClusterTol);

/// (2/3)(cos(pi/9) - 1/2), the sum negativity of {Q^min}.
double wh_conjectured_lower_bound();

struct ConjectureSweepOptions {
  std::uint64_t samples = 10000;
  std::uint64_t rng_seed = 1;
  int polish_starts = 8;  ///< lowest raw samples refined by Nelder-Mead
  int threads = 1;
};

struct ConjectureSample {
  WhFiducialParams params;
  double value = 0.0;
};

struct ConjectureSweepResult {
  std::uint64_t samples = 0;
  std::uint64_t sampling_failures = 0;
  double bound = 0.0;
  double raw_min = 0.0;
  double polished_min = 0.0;
  std::uint64_t raw_below_bound = 0;      ///< raw values below bound - 1e-9
  std::uint64_t polished_below_bound = 0;
  ConjectureSample best;                  ///< overall minimum after polishing
  HermitianOperator best_fiducial = HermitianOperator::zero(3);
  double best_spectrum_gap_to_qmin = 0.0;  ///< max |eig(best) - eig(Q^min fiducial)|
  std::vector<ConjectureSample> polished;
  double wall_seconds = 0.0;
};

/// Exhaustive sum negativity of the WH Q-rep generated by a d=3 fiducial.
double wh_sum_negativity_d3(const HermitianOperator& fiducial);

/// Samples random WH fiducials in d=3, takes the exhaustive sum negativity
/// of each orbit and polishes the lowest ones over the fiducial parameters.
/// Evidence tooling only; nothing is asserted here.
ConjectureSweepResult conjecture_sweep(const ConjectureSweepOptions& options);

}  // namespace qneg
