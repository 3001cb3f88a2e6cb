#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qneg/io.hpp"

namespace qneg {

/// One expected-vs-computed line of the reproduction table.
struct ReproRow {
  std::string label;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  std::string method;  ///< exhaustive, stochastic or closed-form
  bool pass = false;   ///< |expected - computed| <= tolerance
  bool skipped = false;
  std::string note;
};

struct ReproOptions {
  int threads = 1;
  std::uint64_t seeds = 100000;  ///< stochastic seeds for d=8; 0 skips those rows
  std::uint64_t rng_seed = 1;
};

/// Scopes: all, d2, d3, d4, d5, d8. Throws InvalidInput for anything else.
std::vector<ReproRow> cmd_reproduce(std::string_view scope, const ReproOptions& options);

bool all_rows_pass(const std::vector<ReproRow>& rows);

/// Aligned text table, 12 significant digits.
std::string format_repro_table(const std::vector<ReproRow>& rows);
Json to_json(const ReproRow& row);

// Closed forms used by the table.
double d4_qminus_sum_negativity_exact();
/// Degree-4 factor of the characteristic polynomial of the optimal 7-element
/// partial sum of the d=4 SIC Q^- (x is the eigenvalue).
double d4_qminus_charpoly(double x);

}  // namespace qneg
