// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "quiverstab/cone.hpp"
#include "quiverstab/ff_oracle.hpp"
#include "quiverstab/semiinvariants.hpp"
#include "quiverstab/stability.hpp"

using namespace quiverstab;

namespace {

struct Criterion {
  std::string description;
  double seconds_limit;  // 0 means unbounded
  std::function<bool(std::string&)> check;
};

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string(QUIVERSTAB_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = ::pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

bool example_weights(std::string& detail) {
  int code = 0;
  const auto j = nlohmann::json::parse(run_cli("weights RRRLLR", code));
  detail = "thetas " + j["thetas"].dump();
  return code == 0 && j["thetas"] == nlohmann::json({6, 4, 2, -24, 2, 16, -6});
}

bool zero_sum_monotone(std::string& detail) {
  std::size_t count = 0;
  for (int n = 1; n <= 12; ++n)
    for (const Quiver& q : all_orientations(n)) {
      const WeightSystem w = intrinsic_weights(q);
      if (std::accumulate(w.thetas.begin(), w.thetas.end(), std::int64_t{0}) != 0) {
        detail = q.word() + " does not sum to zero";
        return false;
      }
      for (const Arrow& a : q.arrows())
        if (w[a.source] <= w[a.target]) {
          detail = q.word() + " not decreasing along an arrow";
          return false;
        }
      ++count;
    }
  detail = std::to_string(count) + " orientations";
  return true;
}

bool double_construction(std::string& detail) {
  std::size_t count = 0;
  for (int n = 1; n <= 12; ++n)
    for (const Quiver& q : all_orientations(n)) {
      if (intrinsic_weights(q) != intrinsic_weights_via_subquivers(q) ||
          intrinsic_weights(q).thetas != oracle::intrinsic(q.word())) {
        detail = q.word();
        return false;
      }
      ++count;
    }
  detail = std::to_string(count) + " orientations";
  return true;
}

bool sweep_all_stable(std::string& detail) {
  int code = 0;
  const std::string out = run_cli("sweep --max-n 10 --jobs 1", code);
  std::istringstream in(out);
  std::size_t records = 0, stable = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    ++records;
    if (nlohmann::json::parse(line)["all_stable"].get<bool>()) ++stable;
  }
  detail = "exit " + std::to_string(code) + ", " + std::to_string(stable) + "/" + std::to_string(records) + " stable";
  return code == 0 && records == 1023 && stable == records;
}

bool converse(std::string& detail) {
  std::mt19937_64 rng(20260101);
  std::size_t checks = 0;
  for (int n = 3; n <= 8; ++n) {
    std::vector<WeightSystem> random_systems;
    for (int k = 0; k < 100; ++k) random_systems.push_back(WeightSystem{oracle::random_vec(rng, n, -30, 30)});
    for (const Quiver& q : all_orientations(n)) {
      std::vector<WeightSystem> systems{intrinsic_weights(q)};
      systems.insert(systems.end(), random_systems.begin(), random_systems.end());
      for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        const VertexSet s(m);
        if (s.is_contiguous()) continue;
        const auto parts = s.components();
        const auto ds = oracle::indicator(m, n);
        for (const WeightSystem& w : systems) {
          const VertexSet c = decomposable_never_stable(q, w, s);
          const auto dc = oracle::indicator(c.mask(), n);
          const bool summand = std::find(parts.begin(), parts.end(), c) != parts.end();
          if (!summand || oracle::dot(w.thetas, dc) * oracle::total(ds) < oracle::dot(w.thetas, ds) * oracle::total(dc)) {
            detail = q.word() + " support " + s.to_string();
            return false;
          }
          ++checks;
        }
      }
    }
  }
  detail = std::to_string(checks) + " witnesses";
  return true;
}

bool cone_membership(std::string& detail) {
  std::size_t count = 0;
  for (int n = 1; n <= 8; ++n)
    for (const Quiver& q : all_orientations(n)) {
      const ConeDescription c = cone_of(q);
      const WeightSystem w = intrinsic_weights(q);
      for (std::int64_t k = 1; k <= 5; ++k)
        if (!contains(c, w.scaled(k), true)) {
          detail = q.word() + " k=" + std::to_string(k);
          return false;
        }
      ++count;
    }
  detail = std::to_string(count) + " orientations";
  return true;
}

bool inequality_equivalence(std::string& detail) {
  std::mt19937_64 rng(7);
  std::size_t points = 0;
  for (int n = 1; n <= 6; ++n)
    for (const Quiver& q : all_orientations(n)) {
      const auto forms = stability_inequalities(q);
      for (int k = 0; k < 1000; ++k) {
        const WeightSystem w{oracle::random_vec(rng, n, -10, 10)};
        bool positive = true;
        for (const auto& f : forms) positive = positive && f(w) > 0;
        if (positive != verify_reineke(q, w).all_stable || positive != oracle::all_stable(q.word(), w.thetas)) {
          detail = q.word() + " at " + format_thetas(w);
          return false;
        }
        ++points;
      }
    }
  detail = std::to_string(points) + " points";
  return true;
}

bool irredundancy(std::string& detail) {
  const auto rr = irredundant_forms(cone_of(parse_quiver("RR")));
  const std::set<std::vector<std::int64_t>> expected{{1, -1, 0}, {0, 1, -1}};
  std::set<std::vector<std::int64_t>> got;
  for (const auto& f : rr) got.insert(f.coeffs);
  if (got != expected || rr.size() != 2) {
    detail = "RR irredundant set differs";
    return false;
  }
  std::mt19937_64 rng(8);
  std::size_t walls = 0;
  for (int n = 1; n <= 6; ++n)
    for (const Quiver& q : all_orientations(n)) {
      const ConeDescription all = cone_of(q);
      const ConeDescription reduced{n, irredundant_forms(all)};
      walls += reduced.forms.size();
      for (int k = 0; k < 10000; ++k) {
        const WeightSystem w{oracle::random_vec(rng, n, -50, 50)};
        if (contains(all, w, true) != contains(reduced, w, true)) {
          detail = q.word() + " at " + format_thetas(w);
          return false;
        }
      }
    }
  detail = std::to_string(walls) + " walls over n <= 6";
  return true;
}

bool decomposition(std::string& detail) {
  const auto rr = decompose_intrinsic(parse_quiver("RR"), DecompositionMode::Left);
  if (rr.coefficients != std::map<IntervalRep, std::int64_t>{{{1, 1}, 1}, {{1, 2}, 1}, {{2, 2}, 1}}) {
    detail = "RR decomposition differs";
    return false;
  }
  std::size_t count = 0;
  for (int n = 1; n <= 8; ++n)
    for (const Quiver& q : all_orientations(n))
      for (auto mode : {DecompositionMode::Left, DecompositionMode::Right}) {
        const Decomposition d = decompose_intrinsic(q, mode);
        for (const auto& [rep, c] : d.coefficients)
          if (c <= 0) {
            detail = q.word() + " non-positive coefficient";
            return false;
          }
        if (d.reconstruct(q) != intrinsic_weights(q)) {
          detail = q.word() + " " + to_string(mode);
          return false;
        }
        ++count;
      }
  detail = std::to_string(count) + " decompositions";
  return true;
}

bool table_agreement(std::string& detail) {
  std::size_t entries = 0;
  for (int n = 1; n <= 8; ++n)
    for (const Quiver& q : all_orientations(n))
      for (IntervalRep x : enumerate_indecomposables(q)) {
        const auto t = table_theta(q, x), tp = table_theta_prime(q, x);
        const auto l = weight_left(q, x), r = weight_right(q, x);
        for (int i = 1; i <= n; ++i) {
          const auto k = static_cast<std::size_t>(i - 1);
          if ((t[k] && *t[k] != l[i]) || (tp[k] && *tp[k] != r[i])) {
            detail = q.word() + " I" + std::to_string(x.p) + "," + std::to_string(x.q) + " i=" + std::to_string(i);
            return false;
          }
          // weights themselves checked against the bilinear form
          if (l[i] != oracle::euler(q.word(), dimension_vector(x, n), oracle::indicator(std::uint64_t{1} << k, n))) {
            detail = q.word() + " W_X differs from <dX, e_i>";
            return false;
          }
          entries += (t[k] ? 1U : 0U) + (tp[k] ? 1U : 0U);
        }
      }
  detail = std::to_string(entries) + " table entries";
  return true;
}

bool semiinvariance(std::string& detail) {
  std::size_t configs = 0, trials = 0, nonzero = 0;
  for (std::uint64_t p : {7ULL, 101ULL})
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL})
      for (int n = 1; n <= 5; ++n)
        for (const Quiver& q : all_orientations(n))
          for (IntervalRep x : enumerate_indecomposables(q))
            for (IntervalRep y : enumerate_indecomposables(q)) {
              const auto dx = dimension_vector(x, n), dy = dimension_vector(y, n);
              if (euler_form(q, dx, dy) != 0) continue;
              const auto r = check_semiinvariance(q, weight_left(q, x), dy, 100, p, seed);
              const InvariantTally& cx = r.invariants.at(0);
              if (!cx.applicable || cx.failures != 0 || cx.evaluations != 100) {
                detail = q.word() + " I" + std::to_string(x.p) + "," + std::to_string(x.q) + " p=" + std::to_string(p);
                return false;
              }
              ++configs;
              trials += cx.evaluations;
              nonzero += cx.nonzero_values;
            }
  detail = std::to_string(configs) + " configurations, " + std::to_string(trials) + " trials, " +
           std::to_string(nonzero) + " non-zero values";
  return nonzero > 0;
}

bool hom_duality(std::string& detail) {
  std::mt19937_64 rng(12);
  std::size_t pairs = 0, zero = 0;
  for (int attempt = 0; attempt < 100000 && pairs < 500; ++attempt) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const auto qs = all_orientations(n);
    const Quiver& q = qs[rng() % qs.size()];
    const auto dx = oracle::random_vec(rng, n, 0, 2), dy = oracle::random_vec(rng, n, 0, 2);
    if (euler_form(q, dx, dy) != 0) continue;
    const FFRep x = random_rep(q, dx, 7, rng), y = random_rep(q, dy, 7, rng);
    std::vector<oracle::Mat> xa, ya;
    for (const auto* src : {&x, &y})
      for (const auto& m : src->maps) {
        oracle::Mat o(m.rows(), std::vector<std::uint64_t>(m.cols()));
        for (std::size_t r = 0; r < m.rows(); ++r)
          for (std::size_t c = 0; c < m.cols(); ++c) o[r][c] = m(r, c);
        (src == &x ? xa : ya).push_back(std::move(o));
      }
    const bool det_nonzero = c_semiinvariant(q, x, y) != 0;
    const bool hom_zero = oracle::hom_dimension(q.word(), dx, dy, xa, ya, 7) == 0;
    if (det_nonzero != hom_zero) {
      detail = q.word() + " dX=" + format_thetas(WeightSystem{dx}) + " dY=" + format_thetas(WeightSystem{dy});
      return false;
    }
    ++pairs;
    if (!det_nonzero) ++zero;
  }
  detail = std::to_string(pairs) + " pairs, " + std::to_string(zero) + " with non-zero Hom";
  return pairs >= 200 && zero > 0 && zero < pairs;
}

bool oracle_equivalence(std::string& detail) {
  std::size_t count = 0;
  for (std::uint64_t p : {2ULL, 3ULL})
    for (int n = 1; n <= 6; ++n)
      for (const Quiver& q : all_orientations(n))
        for (IntervalRep x : enumerate_indecomposables(q)) {
          std::set<DimensionVector> expected;
          for (std::uint64_t m : oracle::closed_subsets(q.word(), x.p, x.q)) expected.insert(oracle::indicator(m, n));
          if (subrep_dimension_vectors(thin_rep(q, x, p), q) != expected) {
            detail = q.word() + " I" + std::to_string(x.p) + "," + std::to_string(x.q) + " p=" + std::to_string(p);
            return false;
          }
          ++count;
        }
  detail = std::to_string(count) + " interval representations";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"Example weights for RRRLLR", 0, example_weights},
      {"Zero sum and strict decrease along arrows, n <= 12", 10, zero_sum_monotone},
      {"Closed form equals subquiver summation, n <= 12", 30, double_construction},
      {"sweep --max-n 10: every indecomposable stable", 60, sweep_all_stable},
      {"Decomposable thin supports have a destabilizing summand, n <= 8", 0, converse},
      {"Intrinsic weights and multiples strictly inside the cone, n <= 8", 0, cone_membership},
      {"Inequalities agree with the verifier on 1000 points per orientation, n <= 6", 0, inequality_equivalence},
      {"Irredundant walls cut out the same region, n <= 6; RR walls", 0, irredundancy},
      {"Non-negative decomposition reconstructs the intrinsic weights, n <= 8", 60, decomposition},
      {"Case tables agree with the weight maps, n <= 8", 0, table_agreement},
      {"Semi-invariance law for c_X, n <= 5, p in {7,101}, seeds 1..3", 0, semiinvariance},
      {"det f_X^Y non-zero iff Hom(X,Y) = 0 on random pairs", 0, hom_duality},
      {"Finite-field subrepresentations match arrow-closed subsets, n <= 6", 120, oracle_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.seconds_limit > 0 && secs > c.seconds_limit) {
      ok = false;
      detail += " (over the time limit)";
    }
    if (!ok) ++failures;
    std::printf("%s %zu. %s [%s; %.2fs]\n", ok ? "PASS" : "FAIL", i + 1, c.description.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
