// qneg: command-line front end for Q-rep negativity computations.
//
//   qneg validate   --builtin d3-hesse-qminus
//   qneg negativity --qrep qmax --p 1 --exhaustive --out report.json
//   qneg sic        --label d4 --emit gram
//   qneg wh         --dim 3 --check fiducial.json
//   qneg stationary --dim 4 --table
//   qneg certify    --report report.json --qrep qmax
//   qneg reproduce  --scope all
//
// Exit status: 0 success, 1 a computed result failed its contract (or the
// computation itself raised), 2 usage error.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qneg/builtins.hpp"
#include "qneg/io.hpp"
#include "qneg/negativity.hpp"
#include "qneg/reproduce.hpp"
#include "qneg/sic.hpp"
#include "qneg/stationary.hpp"
#include "qneg/wh.hpp"

namespace {

using qneg::Json;

constexpr int kExitOk = 0;
constexpr int kExitContract = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_threads() {
  if (const char* env = std::getenv("QNEG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    std::cerr << "warning: ignoring QNEG_THREADS='" << env << "'\n";
  }
  return 1;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    qneg::write_json_file(out_path, j);
  }
}

std::string g12(double v) { return fmt::format("{:.12g}", v); }

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return qneg::kInfinity;
  try {
    std::size_t used = 0;
    const double p = std::stod(s, &used);
    if (used == s.size() && p >= 1.0) return p;
  } catch (const std::exception&) {
  }
  throw UsageError(fmt::format("--p must be a number >= 1 or 'inf', got '{}'", s));
}

std::string print_matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += g12(m(r, c));
    }
    out += '\n';
  }
  return out;
}

// --- subcommands ------------------------------------------------------------

struct QRepArgs {
  std::string qrep;
  std::string builtin;

  void add(CLI::App* cmd) {
    cmd->add_option("--qrep", qrep, "builtin name or Q-rep JSON file");
    cmd->add_option("--builtin", builtin, "builtin Q-rep name");
  }
  qneg::QRep load() const {
    if (qrep.empty() == builtin.empty()) throw UsageError("give exactly one of --qrep or --builtin");
    if (!builtin.empty()) return qneg::builtin_qrep(builtin);
    return qneg::resolve_qrep(qrep);
  }
};

int run_validate(const QRepArgs& src, bool json) {
  if (src.qrep.empty() == src.builtin.empty()) throw UsageError("give exactly one of --qrep or --builtin");
  std::vector<qneg::HermitianOperator> ops;
  std::string label;
  if (!src.builtin.empty() || qneg::is_builtin_qrep(src.qrep)) {
    const auto q = qneg::builtin_qrep(src.builtin.empty() ? src.qrep : src.builtin);
    ops = q.elements();
    label = q.label();
  } else {
    const auto j = qneg::read_json_file(src.qrep);
    const auto& elems = j.is_array() ? j : j.at("elements");
    for (const auto& e : elems) ops.push_back(qneg::hermitian_from_json(e));
    label = j.is_object() ? j.value("label", src.qrep) : src.qrep;
  }
  const auto v = qneg::validate_qrep(ops);
  if (json) {
    auto j = qneg::to_json(v);
    j["label"] = label;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << label << ": " << v.summary() << '\n';
  }
  return v.passed ? kExitOk : kExitContract;
}

struct NegativityArgs {
  QRepArgs src;
  std::string p = "1";
  bool exhaustive = false;
  std::uint64_t seeds = 0;
  std::uint64_t rng_seed = 1;
  int threads = 1;
  std::string out;
};

int run_negativity(const NegativityArgs& a) {
  const auto q = a.src.load();
  const double p = parse_p(a.p);
  if (a.exhaustive && a.seeds > 0) throw UsageError("--exhaustive and --seeds are mutually exclusive");
  if (a.exhaustive && p != 1.0 && !std::isinf(p)) throw UsageError("--exhaustive applies to p = 1 and p = inf only");
  qneg::NegativityReport r;
  if (std::isinf(p)) {
    r = qneg::ceiling_negativity(q);
  } else if (p == 1.0 && a.exhaustive) {
    r = qneg::sum_negativity_exhaustive(q, a.threads);
  } else if (p == 1.0 && a.seeds > 0) {
    qneg::StochasticOptions o;
    o.seeds = a.seeds;
    o.rng_seed = a.rng_seed;
    o.threads = a.threads;
    r = qneg::sum_negativity_stochastic(q, o);
  } else {
    r = qneg::np_negativity_qrep(q, p, a.seeds > 0 ? a.seeds : 1000, a.rng_seed, a.threads);
  }
  auto j = qneg::to_json(r);
  j["qrep"] = q.label();
  j["dim"] = q.dim();
  if (a.out == "-") {
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  if (!a.out.empty()) qneg::write_json_file(a.out, j);
  std::cout << fmt::format("{} p={} {} value={}", q.label(), a.p, r.method, g12(r.value));
  if (r.exhaustive && r.p == 1.0) std::cout << fmt::format(" subsets={}", r.subsets_scanned);
  if (!r.exhaustive) std::cout << fmt::format(" seeds={} reseeds={}", r.seeds_used, r.reseeds);
  std::cout << fmt::format(" |S|={} time={:.3f}s\n", r.achieving_subset.size(), r.wall_seconds);
  return kExitOk;
}

int run_represent(const QRepArgs& src, const std::string& state_path, int basis, const std::string& out) {
  const auto q = src.load();
  qneg::PureState psi;
  if (!state_path.empty()) {
    psi = qneg::state_from_json(qneg::read_json_file(state_path));
  } else if (basis >= 0) {
    psi = qneg::PureState::basis(q.dim(), basis);
  } else {
    throw UsageError("give --state FILE or --basis K");
  }
  const auto v = qneg::represent(psi, q);
  Json j = {{"qrep", q.label()},
            {"quasiprobabilities", qneg::to_json(v)},
            {"l2_norm", v.l2_norm()},
            {"sum_negativity", qneg::np_negativity(v.view(), 1.0)},
            {"ceiling_negativity", qneg::np_negativity(v.view(), qneg::kInfinity)}};
  emit(j, out);
  return kExitOk;
}

int run_sic(const std::string& label, const std::string& what, bool csv, const std::string& out) {
  const auto s = qneg::load_sic(label);
  if (what == "gram") {
    const auto g = qneg::gram_matrix(s.projectors());
    if (csv) {
      std::cout << print_matrix_csv(g);
      return kExitOk;
    }
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back(g(r, c));
      rows.push_back(row);
    }
    emit({{"label", label},
          {"gram", rows},
          {"max_overlap_violation", s.validation().max_overlap_violation},
          {"max_rank_violation", s.validation().max_rank_violation}},
         out);
  } else if (what == "fiducial") {
    emit({{"label", label}, {"fiducial", qneg::to_json(qneg::sic_fiducial(label))}}, out);
  } else if (what == "qplus" || what == "qminus") {
    const auto reps = qneg::sic_qreps(s);
    emit(qneg::to_json(what == "qplus" ? reps.plus : reps.minus), out);
  } else {
    throw UsageError(fmt::format("--emit must be gram, fiducial, qplus or qminus, got '{}'", what));
  }
  return kExitOk;
}

struct WhArgs {
  int dim = 3;
  std::string check;
  bool sample = false;
  std::optional<double> diag_angle, polar, azimuth;
  double v_phase = 0.0;
  int branch = 0;
  std::optional<std::uint64_t> rng_seed;
  std::uint64_t sweep = 0;
  int polish = 8;
  int threads = 1;
  bool orbit = false;
  std::string out;
};

int run_wh(const WhArgs& a) {
  if (a.dim != 3) throw UsageError("the WH fiducial tools cover d = 3 only");
  const int modes = (!a.check.empty()) + a.sample + (a.sweep > 0);
  if (modes != 1) throw UsageError("give exactly one of --check FILE, --sample or --sweep N");

  if (!a.check.empty()) {
    const auto m = qneg::hermitian_from_json(qneg::read_json_file(a.check));
    const auto c = qneg::check_wh_fiducial_d3(m);
    emit(qneg::to_json(c), a.out);
    return c.passed ? kExitOk : kExitContract;
  }
  if (a.sample) {
    qneg::WhFiducialParams params;
    qneg::WhFiducialD3 fid;
    if (a.diag_angle && a.polar && a.azimuth) {
      params = {*a.diag_angle, *a.polar, *a.azimuth, a.v_phase, a.branch};
      if (a.rng_seed) params.branch = static_cast<int>(*a.rng_seed % qneg::kWhPhaseBranches);
      fid = qneg::sample_wh_fiducial_d3(params);
    } else if (a.diag_angle || a.polar || a.azimuth) {
      throw UsageError("--diag-angle, --polar and --azimuth go together");
    } else {
      std::mt19937_64 rng(qneg::derive_seed(a.rng_seed.value_or(1), 0));
      std::tie(params, fid) = qneg::random_wh_fiducial_d3(rng);
    }
    Json j = {{"params", qneg::to_json(params)}, {"fiducial", qneg::to_json(fid.matrix())}};
    if (a.orbit) j["qrep"] = qneg::to_json(qneg::QRep(qneg::wh_orbit(fid.matrix(), 3), "wh-sample"));
    emit(j, a.out);
    return kExitOk;
  }
  qneg::ConjectureSweepOptions o;
  o.samples = a.sweep;
  o.rng_seed = a.rng_seed.value_or(1);
  o.polish_starts = a.polish;
  o.threads = a.threads;
  const auto r = qneg::conjecture_sweep(o);
  std::cout << fmt::format(
      "samples={} bound={} raw_min={} polished_min={} raw_below={} polished_below={} time={:.1f}s\n", r.samples,
      g12(r.bound), g12(r.raw_min), g12(r.polished_min), r.raw_below_bound, r.polished_below_bound,
      r.wall_seconds);
  if (!a.out.empty()) qneg::write_json_file(a.out, qneg::to_json(r));
  return kExitOk;
}

int run_stationary(int dim, bool table, std::optional<int> n, int m, bool json, bool csv) {
  if (dim < 2) throw UsageError("--dim must be at least 2");
  if (table) {
    const auto rows = qneg::stationary_table(dim);
    const auto best = qneg::max_stationary_sum_negativity(dim);
    if (json) {
      Json arr = Json::array();
      for (const auto& v : rows) arr.push_back(qneg::to_json(v));
      std::cout << Json{{"dim", dim}, {"rows", arr}, {"max", {{"value", best.value}, {"n", best.n}, {"m", best.m}}}}
                       .dump(2)
                << '\n';
    } else if (csv) {
      std::cout << "n,m,k,a,b,n|a|\n";
      for (const auto& v : rows) {
        std::cout << fmt::format("{},{},{},{},{},{}\n", v.n, v.m, v.positives(), g12(v.a), g12(v.b),
                                 g12(v.sum_negativity()));
      }
    } else {
      std::cout << fmt::format("{:>4} {:>4} {:>4} {:>20} {:>20} {:>20}\n", "n", "m", "k", "a", "b", "n|a|");
      for (const auto& v : rows) {
        std::cout << fmt::format("{:>4} {:>4} {:>4} {:>20} {:>20} {:>20}{}\n", v.n, v.m, v.positives(), g12(v.a),
                                 g12(v.b), g12(v.sum_negativity()),
                                 v.n == best.n && v.m == best.m ? "  <- max" : "");
      }
    }
    return kExitOk;
  }
  if (!n) throw UsageError("give --table or --n (with optional --m)");
  const auto v = qneg::stationary_values(dim, *n, m);
  if (json) {
    std::cout << qneg::to_json(v).dump(2) << '\n';
  } else {
    std::cout << fmt::format("d={} n={} m={} a={} b={} n|a|={}\n", v.dim, v.n, v.m, g12(v.a), g12(v.b),
                             g12(v.sum_negativity()));
  }
  return kExitOk;
}

int run_certify(const std::string& report_path, const QRepArgs& src, double tol, bool json) {
  const auto report = qneg::report_from_json(qneg::read_json_file(report_path));
  const auto q = src.load();
  const auto c = qneg::local_max_certificate(report, q, tol);
  if (json) {
    std::cout << qneg::to_json(c).dump(2) << '\n';
  } else {
    std::cout << fmt::format("{}: {} (value {}, stationary bound {}, global-max witness: {})\n", q.label(),
                             c.verdict, g12(report.value), g12(c.stationary_bound),
                             c.global_max_witness ? "yes" : "no");
    for (const auto& cl : c.clusters) std::cout << fmt::format("  {:>20} x {}\n", g12(cl.center), cl.count);
  }
  return kExitOk;
}

int run_reproduce(const std::string& scope, const qneg::ReproOptions& o, const std::string& json_out) {
  const auto rows = qneg::cmd_reproduce(scope, o);
  std::cout << qneg::format_repro_table(rows);
  for (const auto& r : rows) {
    if (r.skipped) std::cerr << "warning: " << r.label << " " << r.note << '\n';
  }
  if (!json_out.empty()) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(qneg::to_json(r));
    emit({{"scope", scope}, {"rows", arr}, {"pass", qneg::all_rows_pass(rows)}}, json_out);
  }
  return qneg::all_rows_pass(rows) ? kExitOk : kExitContract;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negativity of quasiprobability representations"};
  app.require_subcommand(1);
  const int threads_default = default_threads();

  bool json = false;
  bool csv = false;

  QRepArgs validate_src;
  auto* validate = app.add_subcommand("validate", "check the Q-rep invariants");
  validate_src.add(validate);
  validate->add_flag("--json", json);

  QRepArgs represent_src;
  std::string state_path;
  int basis = -1;
  std::string represent_out;
  auto* represent = app.add_subcommand("represent", "quasiprobability vector of a pure state");
  represent_src.add(represent);
  represent->add_option("--state", state_path, "pure state JSON");
  represent->add_option("--basis", basis, "computational basis state index");
  represent->add_option("--out", represent_out);

  NegativityArgs neg;
  neg.threads = threads_default;
  auto* negativity = app.add_subcommand("negativity", "N^p negativity of a Q-rep");
  neg.src.add(negativity);
  negativity->add_option("--p", neg.p, "1, inf, or any real >= 1");
  negativity->add_flag("--exhaustive", neg.exhaustive);
  negativity->add_option("--seeds", neg.seeds, "random starts for the search modes");
  negativity->add_option("--rng-seed", neg.rng_seed);
  negativity->add_option("--threads", neg.threads)->check(CLI::PositiveNumber);
  negativity->add_option("--out", neg.out, "report JSON path");

  std::string sic_label;
  std::string sic_emit = "gram";
  std::string sic_out;
  auto* sic = app.add_subcommand("sic", "embedded SIC data");
  sic->add_option("--label", sic_label)->required()->check(CLI::IsMember(qneg::sic_labels()));
  sic->add_option("--emit", sic_emit, "gram, fiducial, qplus or qminus");
  sic->add_flag("--csv", csv);
  sic->add_option("--out", sic_out);

  WhArgs wha;
  wha.threads = threads_default;
  auto* wh = app.add_subcommand("wh", "d=3 WH fiducial tools");
  wh->add_option("--dim", wha.dim);
  wh->add_option("--check", wha.check, "fiducial matrix JSON");
  wh->add_flag("--sample", wha.sample);
  wh->add_option("--diag-angle", wha.diag_angle);
  wh->add_option("--polar", wha.polar);
  wh->add_option("--azimuth", wha.azimuth);
  wh->add_option("--v-phase", wha.v_phase);
  wh->add_option("--branch", wha.branch)->check(CLI::Range(0, qneg::kWhPhaseBranches - 1));
  wh->add_option("--rng-seed", wha.rng_seed);
  wh->add_flag("--orbit", wha.orbit, "also emit the generated Q-rep");
  wh->add_option("--sweep", wha.sweep, "sample count for the lower-bound sweep");
  wh->add_option("--polish", wha.polish, "samples refined by Nelder-Mead in --sweep");
  wh->add_option("--threads", wha.threads)->check(CLI::PositiveNumber);
  wh->add_option("--out", wha.out);

  int st_dim = 0;
  bool st_table = false;
  std::optional<int> st_n;
  int st_m = 0;
  auto* stationary = app.add_subcommand("stationary", "two/three-valued stationary vectors");
  stationary->add_option("--dim", st_dim)->required();
  stationary->add_flag("--table", st_table);
  stationary->add_option("--n", st_n);
  stationary->add_option("--m", st_m);
  stationary->add_flag("--json", json);
  stationary->add_flag("--csv", csv);

  std::string report_path;
  QRepArgs certify_src;
  double certify_tol = qneg::kClusterTol;
  auto* certify = app.add_subcommand("certify", "local-maximum certificate for a sum-negativity report");
  certify->add_option("--report", report_path)->required();
  certify_src.add(certify);
  certify->add_option("--tol", certify_tol);
  certify->add_flag("--json", json);

  std::string scope = "all";
  qneg::ReproOptions repro;
  repro.threads = threads_default;
  std::string repro_json;
  auto* reproduce = app.add_subcommand("reproduce", "expected-vs-computed table");
  reproduce->add_option("--scope", scope)->check(CLI::IsMember({"all", "d2", "d3", "d4", "d5", "d8"}));
  reproduce->add_option("--threads", repro.threads)->check(CLI::PositiveNumber);
  reproduce->add_option("--seeds", repro.seeds, "d=8 stochastic seeds; 0 skips");
  reproduce->add_option("--rng-seed", repro.rng_seed);
  reproduce->add_option("--json", repro_json, "also write the rows as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return run_validate(validate_src, json);
    if (*represent) return run_represent(represent_src, state_path, basis, represent_out);
    if (*negativity) return run_negativity(neg);
    if (*sic) return run_sic(sic_label, sic_emit, csv, sic_out);
    if (*wh) return run_wh(wha);
    if (*stationary) return run_stationary(st_dim, st_table, st_n, st_m, json, csv);
    if (*certify) return run_certify(report_path, certify_src, certify_tol, json);
    if (*reproduce) return run_reproduce(scope, repro, repro_json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qneg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitContract;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << '\n';
    return kExitContract;
  }
  return kExitUsage;
}
