// wsci: confidence intervals for the weighted sum of two binomial proportions.
//
//   wsci ci       --w1 0.3 --n1 20 --n2 30 --k1 2 --k2 0 --method randomized --y 0.2
//   wsci coverage --w1 0.3 --n1 20 --n2 30 --method shortest --out curve.csv
//   wsci support  --w1 0.3 --n1 20 --n2 30 --around 0.03
//
// Exit codes: 0 success, 1 numerical failure, 2 invalid arguments.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wsci/ci.hpp"
#include "wsci/coverage.hpp"
#include "wsci/mixture.hpp"

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

// Invalid input attributable to one flag.
struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& what)
      : std::runtime_error("--" + flag + ": " + what) {}
};

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Value as it appears at 9 significant digits, so the JSON and text agree.
double round9(double v) { return std::stod(fmt9(v)); }

struct ModelFlags {
  double w1 = 0.0;
  int n1 = 0;
  int n2 = 0;

  void add(CLI::App& app) {
    app.add_option("--w1", w1, "weight of stratum 1, in (0, 1)")->required();
    app.add_option("--n1", n1, "sample 1 size")->required();
    app.add_option("--n2", n2, "sample 2 size")->required();
  }

  wsci::Model build() const {
    if (!(w1 > 0.0 && w1 < 1.0)) throw UsageError("w1", "w1 = " + fmt9(w1) + " is not in (0, 1)");
    if (n1 < 1) throw UsageError("n1", "n1 must be at least 1");
    if (n2 < 1) throw UsageError("n2", "n2 must be at least 1");
    return wsci::Model(n1, n2, w1);
  }
};

double checked_gamma(double gamma) {
  if (!(gamma > 0.5 && gamma < 1.0)) {
    throw UsageError("gamma", "gamma = " + fmt9(gamma) + " is not in (0.5, 1)");
  }
  return gamma;
}

wsci::Method checked_method(const std::string& name) {
  auto m = wsci::parse_method(name);
  if (!m) throw UsageError("method", "unknown method '" + name + "'");
  return *m;
}

// ---------------------------------------------------------------- ci

struct CiFlags {
  ModelFlags model;
  int k1 = 0;
  int k2 = 0;
  double gamma = 0.95;
  std::string method = "randomized";
  std::optional<double> y;
  std::optional<std::uint64_t> seed;
  std::string json_path;
};

int run_ci(const CiFlags& f) {
  const wsci::Model model = f.model.build();
  if (f.k1 < 0 || f.k1 > f.model.n1) {
    throw UsageError("k1", "k1 = " + std::to_string(f.k1) + (f.k1 < 0 ? " is negative" : " > n1 = " + std::to_string(f.model.n1)));
  }
  if (f.k2 < 0 || f.k2 > f.model.n2) {
    throw UsageError("k2", "k2 = " + std::to_string(f.k2) + (f.k2 < 0 ? " is negative" : " > n2 = " + std::to_string(f.model.n2)));
  }
  const double gamma = checked_gamma(f.gamma);
  if (f.y && !(*f.y >= 0.0 && *f.y <= 1.0)) {
    throw UsageError("y", "y = " + fmt9(*f.y) + " is not in [0, 1]");
  }

  // Supplying y (or a seed) randomizes the chosen tail-split rule.
  wsci::Method method = checked_method(f.method);
  const bool randomize = f.y || f.seed;
  if (wsci::is_randomized(method) && !randomize) {
    throw UsageError("method", "randomized intervals need --y or --seed");
  }
  if (randomize && method == wsci::Method::standard) method = wsci::Method::randomized_standard;
  if (randomize && method == wsci::Method::shortest) method = wsci::Method::randomized;

  wsci::IntervalRequest req{model, f.k1, f.k2, gamma, method, f.y, f.seed};
  if (randomize) req.y = wsci::resolve_y(req);
  const double u = wsci::observed_estimate(req);

  wsci::Interval iv;
  try {
    iv = wsci::compute_interval(req);
  } catch (const wsci::Error& e) {
    std::cerr << "error: interval computation (" << wsci::to_string(method)
              << ") failed: " << e.what() << '\n';
    return kExitNumerical;
  }

  std::ostringstream out;
  out << "weight of stratum 1: " << fmt9(f.model.w1) << '\n'
      << "sample 1 size: " << f.model.n1 << '\n'
      << "sample 2 size: " << f.model.n2 << '\n'
      << "successes in sample 1: " << f.k1 << '\n'
      << "successes in sample 2: " << f.k2 << '\n'
      << "confidence level: " << fmt9(gamma) << '\n'
      << "method: " << wsci::to_string(method) << '\n'
      << "estimate: " << fmt9(u) << '\n';
  if (req.y) {
    out << "random number y: " << fmt9(*req.y);
    if (!f.y) out << " (drawn with seed " << *f.seed << ')';
    out << '\n';
  }
  out << "tail split gamma1: " << fmt9(iv.gamma1) << '\n';
  if (iv.reflected) out << "note: estimate above 0.5, computed from 1 - estimate with successes and failures exchanged\n";
  out << "left end: " << fmt9(iv.lower) << '\n'
      << "right end: " << fmt9(iv.upper) << '\n'
      << "length: " << fmt9(iv.length) << '\n'
      << "sidedness: " << wsci::to_string(iv.sided) << "\n\n"
      << "w1=" << fmt9(f.model.w1) << ", n1=" << f.model.n1 << ", n2=" << f.model.n2
      << ", estimate=" << fmt9(u);
  if (req.y) out << ", y=" << fmt9(*req.y);
  out << ", gamma=" << fmt9(gamma) << '\n'
      << "vartheta in (" << fmt9(iv.lower) << ", " << fmt9(iv.upper) << ")\n";
  std::cout << out.str();

  if (!f.json_path.empty()) {
    nlohmann::ordered_json doc;
    doc["w1"] = round9(f.model.w1);
    doc["n1"] = f.model.n1;
    doc["n2"] = f.model.n2;
    doc["k1"] = f.k1;
    doc["k2"] = f.k2;
    doc["gamma"] = round9(gamma);
    doc["method"] = std::string(wsci::to_string(method));
    doc["estimate"] = round9(u);
    doc["y"] = req.y ? nlohmann::ordered_json(round9(*req.y)) : nlohmann::ordered_json(nullptr);
    doc["seed"] = (!f.y && f.seed) ? nlohmann::ordered_json(*f.seed) : nlohmann::ordered_json(nullptr);
    doc["gamma1"] = round9(iv.gamma1);
    doc["lower"] = round9(iv.lower);
    doc["upper"] = round9(iv.upper);
    doc["length"] = round9(iv.length);
    doc["sidedness"] = std::string(wsci::to_string(iv.sided));
    doc["reflected"] = iv.reflected;
    std::ofstream os(f.json_path);
    if (!os) throw UsageError("json", "cannot write " + f.json_path);
    os << doc.dump(2) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- coverage

struct CoverageFlags {
  ModelFlags model;
  double gamma = 0.95;
  std::string method = "shortest";
  int grid = 99;
  int y_nodes = 64;
  unsigned threads = 0;
  std::string out_path;
};

int run_coverage(const CoverageFlags& f) {
  const wsci::Model model = f.model.build();
  wsci::SweepConfig sc;
  sc.gamma = checked_gamma(f.gamma);
  sc.method = checked_method(f.method);
  if (f.grid < 1) throw UsageError("grid", "grid must be at least 1");
  if (f.y_nodes < 1) throw UsageError("y-nodes", "y-nodes must be at least 1");
  sc.grid_points = f.grid;
  sc.y_nodes = f.y_nodes;
  sc.threads = f.threads;

  std::vector<wsci::CoveragePoint> points;
  try {
    points = wsci::sweep(model, sc);
  } catch (const wsci::Error& e) {
    std::cerr << "error: coverage sweep failed: " << e.what() << '\n';
    return kExitNumerical;
  }

  if (f.out_path.empty()) {
    wsci::write_csv(std::cout, points);
  } else {
    std::ofstream os(f.out_path);
    if (!os) throw UsageError("out", "cannot write " + f.out_path);
    wsci::write_csv(os, points);
  }
  auto [lo, hi] = std::minmax_element(points.begin(), points.end(), [](auto& a, auto& b) {
    return a.coverage < b.coverage;
  });
  std::ostream& summary = f.out_path.empty() ? std::cerr : std::cout;
  summary << "method: " << wsci::to_string(sc.method) << ", gamma=" << fmt9(sc.gamma)
          << ", points=" << points.size() << '\n'
          << "min coverage: " << fmt9(lo->coverage) << " at vartheta=" << fmt9(lo->vartheta) << '\n'
          << "max coverage: " << fmt9(hi->coverage) << " at vartheta=" << fmt9(hi->vartheta) << '\n';
  return 0;
}

// ---------------------------------------------------------------- support

struct SupportFlags {
  ModelFlags model;
  std::optional<double> around;
};

int run_support(const SupportFlags& f) {
  const wsci::Model model = f.model.build();
  const wsci::SupportGrid& grid = model.grid();
  std::cout << "grid size: " << grid.size() << '\n';
  if (f.around) {
    if (!grid.find(*f.around)) {
      throw UsageError("around", fmt9(*f.around) + " is not an attainable estimate");
    }
    const wsci::Neighbors nb = wsci::neighbors(grid, *f.around);
    std::cout << "u-: " << fmt9(nb.minus) << '\n'
              << "u: " << fmt9(grid.values[*grid.find(*f.around)]) << '\n'
              << "u+: " << fmt9(nb.plus) << '\n';
    return 0;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::cout << fmt9(grid.values[i]);
    for (auto [k1, k2] : grid.preimages[i]) {
      // Preimages are listed in the caller's labelling.
      const auto [c1, c2] = model.to_internal(k1, k2);
      std::cout << " (" << c1 << ',' << c2 << ')';
    }
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence intervals for the weighted sum of two binomial proportions"};
  app.require_subcommand(1);

  CiFlags ci;
  auto* ci_cmd = app.add_subcommand("ci", "compute a confidence interval");
  ci.model.add(*ci_cmd);
  ci_cmd->add_option("--k1", ci.k1, "successes in sample 1")->required();
  ci_cmd->add_option("--k2", ci.k2, "successes in sample 2")->required();
  ci_cmd->add_option("--gamma", ci.gamma, "confidence level")->capture_default_str();
  ci_cmd->add_option("--method", ci.method, "standard | shortest | randomized | randomized-standard")
      ->capture_default_str();
  ci_cmd->add_option("--y", ci.y, "auxiliary uniform value for randomized intervals");
  ci_cmd->add_option("--seed", ci.seed, "seed used to draw y when --y is absent");
  ci_cmd->add_option("--json", ci.json_path, "also write a flat JSON report here");

  CoverageFlags cov;
  auto* cov_cmd = app.add_subcommand("coverage", "coverage-probability sweep as CSV");
  cov.model.add(*cov_cmd);
  cov_cmd->add_option("--gamma", cov.gamma, "confidence level")->capture_default_str();
  cov_cmd->add_option("--method", cov.method, "standard | shortest | randomized | randomized-standard")
      ->capture_default_str();
  cov_cmd->add_option("--grid", cov.grid, "interior vartheta points")->capture_default_str();
  cov_cmd->add_option("--y-nodes", cov.y_nodes, "midpoint nodes over y (randomized methods)")
      ->capture_default_str();
  cov_cmd->add_option("--threads", cov.threads, "worker threads (0 = all cores)");
  cov_cmd->add_option("--out", cov.out_path, "CSV output path (default: standard output)");

  SupportFlags sup;
  auto* sup_cmd = app.add_subcommand("support", "list attainable estimates");
  sup.model.add(*sup_cmd);
  sup_cmd->add_option("--around", sup.around, "show the neighbours of this estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ci_cmd) return run_ci(ci);
    if (*cov_cmd) return run_coverage(cov);
    if (*sup_cmd) return run_support(sup);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
