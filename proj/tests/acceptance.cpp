// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 5 8g       run the listed criteria (8 runs all of 8a-8g)
//
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qneg/builtins.hpp"
#include "qneg/negativity.hpp"
#include "qneg/reproduce.hpp"
#include "qneg/sic.hpp"
#include "qneg/stationary.hpp"
#include "qneg/wh.hpp"
#include "support.hpp"

using namespace qneg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string g(double v) { return fmt::format("{:.12g}", v); }

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

Outcome criterion_1() {
  Outcome o;
  const double expected = (std::sqrt(3.0) - 1.0) / 4.0;
  const auto t = Clock::now();
  for (const char* name : {"d2-qplus", "d2-qminus"}) {
    const auto q = builtin_qrep(name);
    const auto sum = sum_negativity_exhaustive(q);
    const auto ceil = ceiling_negativity(q);
    o.require(sum.exhaustive && sum.subsets_scanned == 15, fmt::format("{} scanned {}", name, sum.subsets_scanned));
    o.require(near(sum.value, expected, 1e-10), fmt::format("{} N1={}", name, g(sum.value)));
    o.require(near(ceil.value, expected, 1e-10), fmt::format("{} Ninf={}", name, g(ceil.value)));
  }
  const double secs = since(t);
  o.require(secs < 1.0, fmt::format("runtime {:.3f}s", secs));
  o.note(fmt::format("N1 = Ninf = {} in {:.3f}s", g(expected), secs));
  return o;
}

Outcome criterion_2() {
  Outcome o;
  const auto t = Clock::now();
  const auto plus = builtin_qrep("d3-hesse-qplus");
  const auto minus = builtin_qrep("d3-hesse-qminus");
  const auto sp = sum_negativity_exhaustive(plus);
  const auto sm = sum_negativity_exhaustive(minus);
  o.require(sp.subsets_scanned == 511 && sm.subsets_scanned == 511, "subset count");
  o.require(near(sp.value, 1.0 / 3.0, 1e-10), "N1(Q+)=" + g(sp.value));
  o.require(near(sm.value, 1.0 / 3.0, 1e-10), "N1(Q-)=" + g(sm.value));
  const auto b = ceiling_bounds(3);
  const double cp = ceiling_negativity(plus).value;
  const double cm = ceiling_negativity(minus).value;
  o.require(near(cp, 1.0 / 3.0, 1e-10) && near(cp, b.n_plus, 1e-10), "ceiling Q+=" + g(cp));
  o.require(near(cm, 1.0 / 9.0, 1e-10) && near(cm, b.n_minus, 1e-10), "ceiling Q-=" + g(cm));
  const double secs = since(t);
  o.require(secs < 1.0, fmt::format("runtime {:.3f}s", secs));
  o.note(fmt::format("N1 = {} / {}, ceiling {} / {}, {:.3f}s", g(sp.value), g(sm.value), g(cp), g(cm), secs));
  return o;
}

Outcome criterion_3() {
  Outcome o;
  const double want_max = (2.0 / 9.0) * (std::sqrt(7.0) - 1.0);
  const double want_min = (2.0 * std::cos(std::numbers::pi / 9.0) - 1.0) / 3.0;
  const auto rmax = sum_negativity_exhaustive(builtin_qrep("qmax"));
  const auto rmin = sum_negativity_exhaustive(builtin_qrep("qmin"));
  o.require(rmax.exhaustive && rmin.exhaustive, "exhaustive flag");
  o.require(near(rmax.value, want_max, 1e-10), "Qmax=" + g(rmax.value));
  o.require(near(rmin.value, want_min, 1e-10), "Qmin=" + g(rmin.value));
  o.require(std::abs(rmax.value - 1.0 / 3.0) > 1e-3 && std::abs(rmin.value - 1.0 / 3.0) > 1e-3,
            "values do not differ from 1/3");
  o.note(fmt::format("Qmax {} > 1/3 > Qmin {}", g(rmax.value), g(rmin.value)));
  return o;
}

Outcome criterion_4() {
  Outcome o;
  const auto m = max_stationary_sum_negativity(3);
  o.require(near(m.value, (2.0 / 9.0) * (std::sqrt(7.0) - 1.0), 1e-12), "max=" + g(m.value));
  o.require(m.n == 2 && m.m == 0, fmt::format("argmax (n,m)=({},{})", m.n, m.m));
  const auto v = stationary_values(3, 2, 0);
  o.require(near(v.a, (1.0 - std::sqrt(7.0)) / 9.0, 1e-12), "a=" + g(v.a));
  o.require(near(v.b, (7.0 + 2.0 * std::sqrt(7.0)) / 63.0, 1e-12), "b=" + g(v.b));
  const auto q = builtin_qrep("qmax");
  const auto c = local_max_certificate(sum_negativity_exhaustive(q), q);
  o.require(c.certified, "Qmax not certified");
  o.require(c.global_max_witness, "Qmax not a global-max witness");
  o.note(fmt::format("bound {} at (n,m)=(2,0), Qmax certificate: {}", g(m.value), c.verdict));
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const auto t = Clock::now();
  const auto plus = builtin_qrep("d4-qplus");
  const auto minus = builtin_qrep("d4-qminus");
  const auto rp = sum_negativity_exhaustive(plus);
  const auto rm = sum_negativity_exhaustive(minus);
  const double secs = since(t);
  o.require(rp.subsets_scanned == 65535 && rm.subsets_scanned == 65535, "subset count");
  o.require(near(rp.value, 0.5, 1e-8), "N1(Q+)=" + g(rp.value));
  o.require(near(rm.value, 0.420967, 1e-6), "N1(Q-)=" + g(rm.value));
  o.require(near(rm.value, d4_qminus_sum_negativity_exact(), 1e-8), "Q- vs closed form");
  const auto c = local_max_certificate(rp, plus);
  const bool pm = c.clusters.size() == 2 && near(c.clusters[0].center, -0.125, 1e-8) &&
                  near(c.clusters[1].center, 0.125, 1e-8);
  o.require(pm, "Q+ achieving vector does not cluster to +-1/8");
  const double lambda = min_eigenpair(partial_sum(minus, rm.achieving_subset)).value;
  const double poly = d4_qminus_charpoly(lambda);
  o.require(std::abs(poly) < 1e-6, "charpoly(lambda)=" + g(poly));
  o.require(secs < 10.0, fmt::format("runtime {:.2f}s", secs));
  o.note(fmt::format("Q+ {} Q- {} (|S|={}, lambda={}, poly={:.1e}), {:.2f}s", g(rp.value), g(rm.value),
                     rm.achieving_subset.size(), g(lambda), poly, secs));
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const auto t = Clock::now();
  const auto rp = sum_negativity_exhaustive(builtin_qrep("d5-qplus"));
  const auto rm = sum_negativity_exhaustive(builtin_qrep("d5-qminus"));
  const double secs = since(t);
  const std::uint64_t all = (std::uint64_t{1} << 25) - 1;
  o.require(rp.subsets_scanned == all && rm.subsets_scanned == all, "subset count");
  o.require(near(rp.value, 0.584277, 1e-5), "N1(Q+)=" + g(rp.value));
  o.require(near(rm.value, 0.501957, 1e-5), "N1(Q-)=" + g(rm.value));
  o.require(secs <= 1800.0, fmt::format("runtime {:.1f}s", secs));
  o.note(fmt::format("Q+ {} Q- {}; {} eigensolves, {:.1f}s on 1 thread", g(rp.value), g(rm.value),
                     rp.eigensolves + rm.eigensolves, secs));
  return o;
}

Outcome criterion_7() {
  Outcome o;
  const auto t = Clock::now();
  const auto q = builtin_qrep("d8-hoggar-qminus");
  StochasticOptions so;
  so.seeds = 100000;
  so.rng_seed = 1;
  const auto r = sum_negativity_stochastic(q, so);
  const double secs = since(t);
  o.require(r.value >= 7.0 / 8.0 - 1e-6, "best=" + g(r.value));
  const auto c = local_max_certificate(r, q, 1e-6);
  const bool shape = c.clusters.size() == 2 && c.clusters[0].count == 28 && c.clusters[1].count == 36 &&
                     near(c.clusters[0].center, -1.0 / 32.0, 1e-6) && near(c.clusters[1].center, 5.0 / 96.0, 1e-6);
  o.require(shape, "achieving vector is not 28 x (-1/32), 36 x (5/96)");
  o.require(c.certified, "certificate did not fire");
  o.require(secs <= 3600.0, fmt::format("runtime {:.1f}s", secs));
  o.note(fmt::format("best {} over {} seeds ({} reseeds), {:.1f}s", g(r.value), r.seeds_used, r.reseeds, secs));
  return o;
}

Outcome criterion_8a() {
  Outcome o;
  double worst = 0.0;
  for (int d : {2, 3, 4}) {
    std::mt19937_64 rng(derive_seed(81, static_cast<std::uint64_t>(d)));
    std::vector<QRep> reps;
    for (const auto& name : builtin_qrep_names()) {
      auto q = builtin_qrep(name);
      if (q.dim() == d) reps.push_back(std::move(q));
    }
    for (int k = 0; k < 1000; ++k) {
      // In d=3 every other pair uses a freshly sampled WH Q-rep.
      const auto psi = random_pure_state(d, rng);
      double l2 = 0.0;
      if (d == 3 && k % 2 == 1) {
        const auto [params, fid] = random_wh_fiducial_d3(rng);
        l2 = represent(psi, QRep(wh_orbit(fid.matrix(), 3), "sample")).l2_norm();
      } else {
        l2 = represent(psi, reps[static_cast<std::size_t>(k) % reps.size()]).l2_norm();
      }
      worst = std::max(worst, std::abs(l2 - std::sqrt(1.0 / d)));
    }
  }
  o.require(worst < 1e-9, fmt::format("max deviation {:.2e}", worst));
  o.note(fmt::format("3000 pairs, max |L2 - sqrt(1/d)| = {:.2e}", worst));
  return o;
}

Outcome criterion_8b() {
  Outcome o;
  std::mt19937_64 rng(82);
  double worst = 0.0;
  for (const auto& name : builtin_qrep_names()) {
    const auto q = builtin_qrep(name);
    for (int k = 0; k < 20; ++k) {
      const auto rho = testing::random_density(q.dim(), rng);
      worst = std::max(worst, max_abs_diff(reconstruct(represent(rho, q), q), rho.op()));
    }
  }
  o.require(worst < 1e-9, fmt::format("max deviation {:.2e}", worst));
  o.note(fmt::format("roundtrip error {:.2e}", worst));
  return o;
}

Outcome criterion_8c() {
  Outcome o;
  std::mt19937_64 rng(83);
  double worst = 0.0;
  for (const auto& name : builtin_qrep_names()) {
    const auto q = builtin_qrep(name);
    for (int k = 0; k < 20; ++k) {
      const auto rho = testing::random_density(q.dim(), rng);
      const auto povm = testing::random_povm(q.dim(), rng);
      worst = std::max(worst, born_lhs_rhs(rho, q, povm).max_deviation());
    }
  }
  o.require(worst < 1e-9, fmt::format("max deviation {:.2e}", worst));
  o.note(fmt::format("max |lhs - rhs| = {:.2e}", worst));
  return o;
}

Outcome criterion_8d() {
  Outcome o;
  double worst = 0.0;
  for (const char* name : testing::small_builtins()) {
    const auto q = builtin_qrep(name);
    const double exact = sum_negativity_exhaustive(q).value;
    const double stoch = sum_negativity_stochastic(q, 1000, 84).value;
    o.require(stoch <= exact + 1e-12, fmt::format("{}: stochastic {} > exhaustive {}", name, g(stoch), g(exact)));
    o.require(near(stoch, exact, 1e-9), fmt::format("{}: stochastic {} vs {}", name, g(stoch), g(exact)));
    worst = std::max(worst, std::abs(stoch - exact));
  }
  o.note(fmt::format("{} builtins, 1000 seeds, max gap {:.1e}", testing::small_builtins().size(), worst));
  return o;
}

Outcome criterion_8e() {
  Outcome o;
  std::mt19937_64 rng(85);
  const auto b = ceiling_bounds(3);
  double lo = 1.0;
  double hi = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto [params, fid] = random_wh_fiducial_d3(rng);
    const double c = ceiling_negativity(QRep(wh_orbit(fid.matrix(), 3), "sample")).value;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  o.require(lo >= b.n_minus - 1e-9 && hi <= b.n_plus + 1e-9, fmt::format("range [{}, {}]", g(lo), g(hi)));
  o.note(fmt::format("ceiling in [{}, {}] within [{}, {}]", g(lo), g(hi), g(b.n_minus), g(b.n_plus)));
  return o;
}

Outcome criterion_8f() {
  Outcome o;
  std::mt19937_64 rng(86);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> scale(1, 4);
  int agree = 0;
  int valid = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto [params, fid] = random_wh_fiducial_d3(rng);
    CMatrix m = fid.matrix().matrix();
    if (k % 2 == 1) {
      // Trace-preserving Hermitian perturbation of size 1e-1 .. 1e-4.
      const double eps = std::pow(10.0, -scale(rng));
      CMatrix p(3, 3);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) p(r, c) = Complex(normal(rng), normal(rng));
      }
      p = 0.5 * (p + p.adjoint()).eval();
      p -= (p.trace() / 3.0) * CMatrix::Identity(3, 3);
      m += eps * p;
    }
    const HermitianOperator h(m);
    const bool check = check_wh_fiducial_d3(h).passed;
    const bool qrep = validate_qrep(wh_orbit(h, 3)).passed;
    valid += check;
    agree += check == qrep;
  }
  o.require(agree == 1000, fmt::format("{} of 1000 agree", agree));
  o.note(fmt::format("{} / 1000 agree ({} valid)", agree, valid));
  return o;
}

Outcome criterion_8g() {
  Outcome o;
  for (const char* name : {"d4-qplus", "d4-qminus", "qmin", "qmax", "d5-qminus"}) {
    const auto q = builtin_qrep(name);
    const auto base = sum_negativity_exhaustive(q, 1);
    for (int t : {4, 8}) {
      const auto r = sum_negativity_exhaustive(q, t);
      const bool same = r.value == base.value && r.achieving_subset == base.achieving_subset &&
                        r.achieving_state.amplitudes() == base.achieving_state.amplitudes();
      o.require(same, fmt::format("{} differs at {} threads", name, t));
    }
  }
  o.note("value, subset and state identical for threads 1, 4, 8");
  return o;
}

Outcome criterion_9() {
  Outcome o;
  ConjectureSweepOptions so;
  so.samples = 10000;
  so.rng_seed = 1;
  so.polish_starts = 8;
  const auto r = conjecture_sweep(so);
  const double floor = r.bound - 1e-9;
  o.require(r.raw_min >= floor && r.polished_min >= floor,
            fmt::format("{} raw and {} polished samples below the bound; minimum {} vs bound {}",
                        r.raw_below_bound, r.polished_below_bound, g(r.polished_min), g(r.bound)));
  o.require(near(r.polished_min, r.bound, 1e-6), "minimum not attained at the bound");
  o.require(r.best_spectrum_gap_to_qmin <= 1e-6,
            fmt::format("minimiser spectrum differs from Q^min by {:.2e}", r.best_spectrum_gap_to_qmin));
  if (r.polished_min < floor) {
    const auto fid = r.best_fiducial;
    o.note(fmt::format("minimiser is a valid WH Q-rep: check {}, Gram violation {:.1e}",
                       check_wh_fiducial_d3(fid).passed ? "pass" : "fail",
                       validate_qrep(wh_orbit(fid, 3)).max_gram_violation));
  }
  o.note(fmt::format("raw min {} over {} samples, {:.1f}s", g(r.raw_min), r.samples, r.wall_seconds));
  return o;
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"1", "d=2 SIC Q+-: N1 = Ninf = (sqrt3-1)/4", criterion_1},
      {"2", "d=3 Hesse SIC sum and ceiling negativities", criterion_2},
      {"3", "d=3 Q^max / Q^min sum negativities", criterion_3},
      {"4", "d=3 stationary upper bound and Q^max witness", criterion_4},
      {"5", "d=4 SIC Q+- sum negativities", criterion_5},
      {"6", "d=5 SIC Q+- sum negativities", criterion_6},
      {"7", "d=8 Hoggar Q- stochastic 7/8", criterion_7},
      {"8a", "pure-state quasiprobability L2 norm", criterion_8a},
      {"8b", "represent/reconstruct roundtrip", criterion_8b},
      {"8c", "Born-rule identity", criterion_8c},
      {"8d", "stochastic vs exhaustive on d <= 4 builtins", criterion_8d},
      {"8e", "ceiling sandwich on sampled d=3 WH Q-reps", criterion_8e},
      {"8f", "fiducial check agrees with Q-rep validation", criterion_8f},
      {"8g", "exhaustive result independent of thread count", criterion_8g},
      {"9", "WH lower-bound sweep in d=3", criterion_9},
  };

  std::vector<std::string> wanted(argv + 1, argv + argc);
  auto selected = [&](const std::string& id) {
    if (wanted.empty()) return true;
    for (const auto& w : wanted) {
      if (w == id || (w.size() == 1 && id.size() == 2 && id[0] == w[0])) return true;
    }
    return false;
  };

  int failures = 0;
  int ran = 0;
  for (const auto& c : all) {
    if (!selected(c.id)) continue;
    ++ran;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    failures += !out.pass;
    std::cout << fmt::format("[{}] criterion {:<3} {}: {}\n", out.pass ? "PASS" : "FAIL", c.id, c.title, out.detail)
              << std::flush;
  }
  if (ran == 0) {
    std::cerr << "no criterion matches the arguments\n";
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
