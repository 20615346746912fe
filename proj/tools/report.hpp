#pragma once

// JSON payloads for the command line front end and the orientation sweep.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "quiverstab/cone.hpp"
#include "quiverstab/ff_oracle.hpp"
#include "quiverstab/quiver.hpp"
#include "quiverstab/semiinvariants.hpp"
#include "quiverstab/stability.hpp"
#include "quiverstab/weights.hpp"

namespace quiverstab::report {

using json = nlohmann::ordered_json;

inline json vertex_list(VertexSet s) { return json(s.vertices()); }

inline json forms_json(const std::vector<LinearForm>& forms) {
  json out = json::array();
  for (const LinearForm& f : forms) out.push_back(f.coeffs);
  return out;
}

inline json weights_json(const Quiver& q) {
  json types = json::array(), l = json::array(), r = json::array();
  for (const VertexContext& v : classify_vertices(q)) {
    types.push_back(to_string(v.vtype));
    l.push_back(v.l);
    r.push_back(v.r);
  }
  return json{{"orientation", q.word()}, {"n", q.size()},      {"types", types},
              {"l", l},                  {"r", r},             {"thetas", intrinsic_weights(q).thetas}};
}

inline json stability_json(const StabilityReport& rep) {
  json verdicts = json::array();
  for (const StabilityVerdict& v : rep.verdicts) {
    verdicts.push_back({{"p", v.interval.p},
                        {"q", v.interval.q},
                        {"stable", v.stable},
                        {"witness", v.witness ? vertex_list(*v.witness) : json(nullptr)}});
  }
  return json{{"quiver", rep.quiver.word()},
              {"thetas", rep.weights.thetas},
              {"all_stable", rep.all_stable},
              {"verdicts", verdicts}};
}

inline std::string interval_key(IntervalRep x) { return std::to_string(x.p) + "," + std::to_string(x.q); }

inline json decomposition_json(const Decomposition& d) {
  json out = json::object();
  for (const auto& [rep, c] : d.coefficients) out[interval_key(rep)] = c;
  return out;
}

inline json semiinvariance_json(const SemiinvarianceReport& r) {
  json counter = nullptr;
  if (r.first_counterexample) {
    const auto& c = *r.first_counterexample;
    counter = {{"invariant", c.invariant},
               {"trial", c.trial},
               {"value", c.value},
               {"transformed", c.transformed},
               {"character", c.character}};
  }
  json invariants = json::array();
  for (const InvariantTally& t : r.invariants) {
    invariants.push_back({{"name", t.name},
                          {"applicable", t.applicable},
                          {"note", t.note},
                          {"evaluations", t.evaluations},
                          {"nonzero_values", t.nonzero_values},
                          {"failures", t.failures}});
  }
  return json{{"trials", r.trials},
              {"failures", r.failures},
              {"first_counterexample", counter},
              {"dx", r.dx},
              {"invariants", invariants}};
}

// ---------------------------------------------------------------------------
// Sweep

struct SweepRecord {
  std::string orientation;
  int n = 0;
  bool all_stable = false;
  std::size_t num_intervals = 0;
  std::size_t num_inequalities = 0;
  bool intrinsic_in_cone = false;
  std::int64_t elapsed_micros = 0;
  StabilityReport report;
};

inline SweepRecord sweep_one(const Quiver& q) {
  const auto start = std::chrono::steady_clock::now();
  SweepRecord rec;
  rec.orientation = q.word();
  rec.n = q.size();
  const WeightSystem theta = intrinsic_weights(q);
  rec.report = verify_reineke(q, theta);
  rec.all_stable = rec.report.all_stable;
  rec.num_intervals = rec.report.verdicts.size();
  const ConeDescription cone = cone_of(q);
  rec.num_inequalities = cone.forms.size();
  rec.intrinsic_in_cone = contains(cone, theta, true);
  rec.elapsed_micros =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

inline json sweep_json(const SweepRecord& rec, bool timing) {
  json out{{"orientation", rec.orientation},
           {"n", rec.n},
           {"all_stable", rec.all_stable},
           {"num_intervals", rec.num_intervals},
           {"num_inequalities", rec.num_inequalities},
           {"intrinsic_in_cone", rec.intrinsic_in_cone}};
  if (timing) out["elapsed_micros"] = rec.elapsed_micros;
  if (!rec.all_stable) out["report"] = stability_json(rec.report);
  return out;
}

// Lexicographically least word among Q, its opposite, its relabeling
// i -> n+1-i, and both.
inline std::string canonical_word(const Quiver& q) {
  return std::min({q.word(), q.opposite().word(), q.reversed().word(), q.reversed().opposite().word()});
}

// Words for n = 1..max_n in canonical (n, lexicographic) order.
inline std::vector<Quiver> sweep_orientations(int max_n, bool quotient_symmetry) {
  std::vector<Quiver> out;
  for (int n = 1; n <= max_n; ++n)
    for (Quiver& q : all_orientations(n))
      if (!quotient_symmetry || canonical_word(q) == q.word()) out.push_back(std::move(q));
  return out;
}

// Evaluates `quivers` on `jobs` workers and hands the records to `sink` in
// input order.
inline void run_sweep(const std::vector<Quiver>& quivers, unsigned jobs,
                      const std::function<void(const SweepRecord&)>& sink) {
  jobs = std::max(1U, jobs);
  if (jobs == 1) {
    for (const Quiver& q : quivers) sink(sweep_one(q));
    return;
  }
  std::vector<SweepRecord> records(quivers.size());
  std::vector<std::exception_ptr> errors(quivers.size());
  std::vector<std::atomic<bool>> ready(quivers.size());
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < quivers.size(); i = next++) {
          try {
            records[i] = sweep_one(quivers[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
          ready[i].store(true, std::memory_order_release);
          ready[i].notify_one();
        }
      });
    try {
      for (std::size_t i = 0; i < quivers.size(); ++i) {
        ready[i].wait(false, std::memory_order_acquire);
        if (errors[i]) std::rethrow_exception(errors[i]);
        sink(records[i]);
        records[i] = SweepRecord{};
      }
    } catch (...) {
      next = quivers.size();
      throw;
    }
  }
}

}  // namespace quiverstab::report
