// quiverstab: intrinsic weight systems and slope stability for A_n quivers.
//
// Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
// 3 I/O error.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "quiverstab/cone.hpp"
#include "quiverstab/errors.hpp"
#include "quiverstab/ff_oracle.hpp"
#include "quiverstab/quiver.hpp"
#include "quiverstab/semiinvariants.hpp"
#include "quiverstab/stability.hpp"
#include "quiverstab/weights.hpp"
#include "report.hpp"

namespace {

using namespace quiverstab;
using report::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_ints(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::int64_t value = 0;
    const char* first = text.data() + start;
    const char* last = text.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
      throw parse_error(start + 1, "malformed " + what + " '" + text + "' (expected comma-separated integers)");
    out.push_back(value);
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

WeightSystem parse_weights(const Quiver& q, const std::string& text) {
  WeightSystem w{parse_ints(text, "weight list")};
  if (w.size() != static_cast<std::size_t>(q.size()))
    throw domain_error("expected " + std::to_string(q.size()) + " weights for n=" + std::to_string(q.size()) + ", got " +
                       std::to_string(w.size()));
  return w;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct Options {
  std::string word;
  std::string weights;
  std::string check;
  std::string dims;
  std::string interval;
  std::string highlight;
  std::string mode = "left";
  std::string out;
  bool irredundant = false;
  bool interior = false;
  bool walls = false;
  bool diagnostics = false;
  bool resume = false;
  bool quotient = false;
  bool timing = false;
  int max_n = 0;
  unsigned jobs = 1;
  std::uint64_t prime = 7;
  std::uint64_t oracle_prime = 2;
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
};

int cmd_weights(const Options& o) {
  print(report::weights_json(parse_quiver(o.word)));
  return kOk;
}

int cmd_verify(const Options& o) {
  const Quiver q = parse_quiver(o.word);
  const WeightSystem w = o.weights.empty() ? intrinsic_weights(q) : parse_weights(q, o.weights);
  const StabilityReport rep = verify_reineke(q, w);
  print(report::stability_json(rep));
  return rep.all_stable ? kOk : kFailed;
}

int cmd_inequalities(const Options& o) {
  const Quiver q = parse_quiver(o.word);
  const std::vector<LinearForm> forms = o.irredundant ? irredundant_forms(cone_of(q)) : stability_inequalities(q);
  print(json{{"orientation", q.word()}, {"n", q.size()}, {"irredundant", o.irredundant}, {"forms", report::forms_json(forms)}});
  return kOk;
}

int cmd_cone(const Options& o) {
  const Quiver q = parse_quiver(o.word);
  const ConeDescription c = cone_of(q);
  json out{{"orientation", q.word()}, {"n", c.n}, {"forms", report::forms_json(c.forms)}};
  int code = kOk;
  if (o.walls) {
    const auto kept = irredundant_forms(c);
    const std::set<LinearForm> walls(kept.begin(), kept.end());
    json flags = json::array();
    for (const LinearForm& f : c.forms) flags.push_back(walls.contains(f));
    out["irredundant"] = flags;
  }
  if (!o.check.empty()) {
    const WeightSystem w = parse_weights(q, o.check);
    out["check"] = {{"thetas", w.thetas}, {"strict", contains(c, w, true)}, {"closure", contains(c, w, false)}};
  }
  if (o.interior) {
    const auto point = feasible_interior(c);
    if (point) {
      const bool ok = contains(c, *point, true);
      out["interior"] = {{"thetas", point->thetas}, {"strict", ok}};
      if (!ok) code = kFailed;
    } else {
      out["interior"] = nullptr;
    }
  }
  print(out);
  return code;
}

int cmd_decompose(const Options& o) {
  const Quiver q = parse_quiver(o.word);
  const DecompositionMode mode = o.mode == "right" ? DecompositionMode::Right : DecompositionMode::Left;
  Decomposition d;
  try {
    d = decompose_intrinsic(q, mode);
  } catch (const not_found_error& e) {
    std::cerr << "decompose: " << e.what() << '\n';
    return kFailed;
  }
  if (!o.diagnostics) {
    print(report::decomposition_json(d));
    return kOk;
  }
  const WeightSystem rebuilt = d.reconstruct(q);
  const WeightSystem theta = intrinsic_weights(q);
  print(json{{"orientation", q.word()},
             {"mode", to_string(mode)},
             {"coefficients", report::decomposition_json(d)},
             {"thetas", theta.thetas},
             {"reconstruction", rebuilt.thetas},
             {"exact", rebuilt == theta},
             {"support_restriction", support_restriction_check(q, d)}});
  return rebuilt == theta ? kOk : kFailed;
}

int cmd_semiinv(const Options& o) {
  const Quiver q = parse_quiver(o.word);
  if (o.trials < 1) throw domain_error("--trials must be at least 1");
  const WeightSystem w = parse_weights(q, o.weights);
  const DimensionVector dy = parse_ints(o.dims, "dimension vector");
  const SemiinvarianceReport r =
      check_semiinvariance(q, w, dy, static_cast<std::size_t>(o.trials), o.prime, o.seed);
  json out{{"orientation", q.word()}, {"dims", dy}, {"thetas", w.thetas}, {"prime", o.prime}, {"seed", o.seed}};
  out.update(report::semiinvariance_json(r));
  print(out);
  return r.failures == 0 ? kOk : kFailed;
}

std::set<std::string> completed_orientations(const std::string& path) {
  std::set<std::string> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("orientation") || !rec.contains("n"))
      throw io_error(path + ":" + std::to_string(lineno) + ": not a sweep record");
    done.insert(std::to_string(rec["n"].get<int>()) + ":" + rec["orientation"].get<std::string>());
  }
  if (in.bad()) throw io_error("cannot read " + path);
  return done;
}

int cmd_sweep(const Options& o) {
  if (o.max_n < 1) throw domain_error("--max-n must be at least 1");
  if (o.resume && o.out.empty()) throw domain_error("--resume needs --out");
  std::vector<Quiver> quivers = report::sweep_orientations(o.max_n, o.quotient);
  bool all_stable = true;
  if (o.resume) {
    const auto done = completed_orientations(o.out);
    std::erase_if(quivers, [&](const Quiver& q) { return done.contains(std::to_string(q.size()) + ":" + q.word()); });
    // Earlier records are re-read for the exit status.
    std::ifstream in(o.out);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty() && !json::parse(line)["all_stable"].get<bool>()) all_stable = false;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, o.resume ? std::ios::app : std::ios::trunc);
    if (!file) throw io_error("cannot open " + o.out + " for writing");
  }
  std::ostream& sink = o.out.empty() ? std::cout : file;
  report::run_sweep(quivers, o.jobs, [&](const report::SweepRecord& rec) {
    all_stable = all_stable && rec.all_stable && rec.intrinsic_in_cone;
    sink << report::sweep_json(rec, o.timing).dump() << '\n';
    if (!sink) throw io_error("write failed" + (o.out.empty() ? std::string() : " on " + o.out));
  });
  sink.flush();
  if (!sink) throw io_error("write failed");
  return all_stable ? kOk : kFailed;
}

int cmd_oracle(const Options& o) {
  const Quiver q = parse_quiver(o.word);
  const auto pq = parse_ints(o.interval, "interval");
  if (pq.size() != 2) throw domain_error("--interval expects p,q");
  const IntervalRep rep{static_cast<int>(pq[0]), static_cast<int>(pq[1])};
  require_interval(rep, q.size());
  const std::set<DimensionVector> oracle = subrep_dimension_vectors(thin_rep(q, rep, o.oracle_prime), q);
  std::set<DimensionVector> combinatorial;
  for (const SubrepSupport& s : enumerate_subrep_supports(q, rep)) combinatorial.insert(s.indicator(q.size()));
  const bool match = oracle == combinatorial;
  print(json{{"orientation", q.word()},
             {"interval", {rep.p, rep.q}},
             {"prime", o.oracle_prime},
             {"match", match},
             {"count", oracle.size()},
             {"oracle", oracle},
             {"combinatorial", combinatorial}});
  return match ? kOk : kFailed;
}

int cmd_dot(const Options& o) {
  const Quiver q = parse_quiver(o.word);
  VertexSet h;
  for (auto v : parse_ints(o.highlight, "vertex list")) {
    if (v < 1 || v > q.size()) throw domain_error("vertex " + std::to_string(v) + " outside 1.." + std::to_string(q.size()));
    h.insert(static_cast<int>(v));
  }
  std::cout << to_dot(q, h);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic weight systems and slope stability for A_n quivers"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Options o;

  const auto word = [&](CLI::App* sub) {
    sub->add_option("word", o.word, "Orientation word over R/L (or >/<); \"\" is A_1")->required()->allow_extra_args(false);
  };

  auto* weights = app.add_subcommand("weights", "Intrinsic weight system of an orientation");
  word(weights);

  auto* verify = app.add_subcommand("verify", "Check that every indecomposable is stable");
  word(verify);
  verify->add_option("--weights", o.weights, "Weight system to test (default: intrinsic)");

  auto* ineq = app.add_subcommand("inequalities", "Linear forms f with f(theta) > 0 on stabilizing weights");
  word(ineq);
  ineq->add_flag("--irredundant", o.irredundant, "Keep only forms that support a wall");

  auto* cone = app.add_subcommand("cone", "Cone of weight systems stabilizing every indecomposable");
  word(cone);
  cone->add_option("--check", o.check, "Weight system to test for membership");
  cone->add_flag("--interior", o.interior, "Find an integer point strictly inside");
  cone->add_flag("--walls", o.walls, "Flag the irredundant forms");

  auto* decompose = app.add_subcommand("decompose", "Non-negative decomposition of the intrinsic weights");
  word(decompose);
  decompose->add_option("--mode", o.mode, "left (W_X) or right (W^Y)")->check(CLI::IsMember({"left", "right"}));
  decompose->add_flag("--diagnostics", o.diagnostics, "Include reconstruction and side-condition audit");

  auto* semiinv = app.add_subcommand("semiinv", "Randomized check of the semi-invariance law over F_p");
  word(semiinv);
  semiinv->add_option("--dims", o.dims, "Dimension vector of Y")->required();
  semiinv->add_option("--weights", o.weights, "Weight system theta")->required();
  semiinv->add_option("--prime", o.prime, "Field size")->capture_default_str();
  semiinv->add_option("--trials", o.trials, "Random (g, Y) pairs")->capture_default_str();
  semiinv->add_option("--seed", o.seed, "Random seed")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Verify every orientation up to a size, as JSON lines");
  sweep->add_option("--max-n", o.max_n, "Largest n")->required();
  sweep->add_option("--out", o.out, "Output file (default: stdout)");
  sweep->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_flag("--resume", o.resume, "Skip orientations already in --out and append");
  sweep->add_flag("--quotient-symmetry", o.quotient, "One orientation per reversal/opposite class");
  sweep->add_flag("--timing", o.timing, "Add elapsed_micros to each record");

  auto* oracle = app.add_subcommand("oracle", "Finite-field subrepresentations against arrow-closed subsets");
  word(oracle);
  oracle->add_option("--interval", o.interval, "Interval p,q")->required();
  oracle->add_option("--prime", o.oracle_prime, "Field size (2 or 3)")->capture_default_str();

  auto* dot = app.add_subcommand("dot", "Graphviz description of the quiver");
  word(dot);
  dot->add_option("--highlight", o.highlight, "Comma-separated vertices to shade");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*weights) return cmd_weights(o);
    if (*verify) return cmd_verify(o);
    if (*ineq) return cmd_inequalities(o);
    if (*cone) return cmd_cone(o);
    if (*decompose) return cmd_decompose(o);
    if (*semiinv) return cmd_semiinv(o);
    if (*sweep) return cmd_sweep(o);
    if (*oracle) return cmd_oracle(o);
    if (*dot) return cmd_dot(o);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const resource_limit_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
