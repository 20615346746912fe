#pragma once

// Slope stability of thin representations. A subrepresentation of a thin
// representation with identity arrow maps is determined by its support,
// which must be arrow-closed inside the ambient support.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "quiverstab/errors.hpp"
#include "quiverstab/linear_form.hpp"
#include "quiverstab/quiver.hpp"
#include "quiverstab/weights.hpp"

namespace quiverstab {

using SubrepSupport = VertexSet;

namespace detail {

inline void require_subset_size(const Quiver& q, int limit = 30) {
  if (q.size() > limit)
    throw resource_limit_error("subset enumeration limited to n <= " + std::to_string(limit));
}

}  // namespace detail

// Every arrow-closed subset of [p,q], ascending by bitmask, including the
// empty set and the full support.
inline std::vector<SubrepSupport> enumerate_subrep_supports(const Quiver& q, IntervalRep rep) {
  require_interval(rep, q.size());
  detail::require_subset_size(q);
  const VertexSet ambient = rep.support();
  const std::uint64_t count = std::uint64_t{1} << rep.length();
  std::vector<SubrepSupport> out;
  for (std::uint64_t local = 0; local < count; ++local) {
    const VertexSet s(local << (rep.p - 1));
    if (is_arrow_closed(q, s, ambient)) out.push_back(s);
  }
  return out;
}

struct StabilityResult {
  bool stable = true;
  std::optional<SubrepSupport> witness;  // first violating subrepresentation
};

namespace detail {

// Scans proper non-zero arrow-closed subsets of `support`; `strict` selects
// stability (Less required) versus semistability (Less or Equal allowed).
inline StabilityResult scan_subreps(const Quiver& q, const WeightSystem& w, VertexSet support, bool strict) {
  const int n = q.size();
  if (w.size() != static_cast<std::size_t>(n)) throw domain_error("weight system length does not match quiver");
  const std::uint64_t full = support.mask();
  auto weight_of_mask = [&](std::uint64_t m) {
    std::int64_t total = 0;
    for (; m != 0; m &= m - 1) total = checked_add(total, w.thetas[static_cast<std::size_t>(std::countr_zero(m))]);
    return total;
  };
  const std::int64_t w_total = weight_of_mask(full);
  const std::int64_t r_total = std::popcount(full);
  // Proper non-zero submasks of `full`, ascending.
  for (std::uint64_t sub = (0 - full) & full; sub != full && sub != 0; sub = (sub - full) & full) {
    const VertexSet s(sub);
    if (!is_arrow_closed(q, s, support)) continue;
    // slope(S) vs slope(support) by cross-multiplication
    const auto cmp = checked_mul(weight_of_mask(sub), r_total) <=> checked_mul(w_total, std::popcount(sub));
    const bool ok = strict ? cmp == std::strong_ordering::less : cmp != std::strong_ordering::greater;
    if (!ok) return {false, s};
  }
  return {};
}

}  // namespace detail

inline StabilityResult is_stable(const Quiver& q, const WeightSystem& w, IntervalRep rep) {
  require_interval(rep, q.size());
  detail::require_subset_size(q);
  return detail::scan_subreps(q, w, rep.support(), true);
}

inline bool is_semistable(const Quiver& q, const WeightSystem& w, IntervalRep rep) {
  require_interval(rep, q.size());
  detail::require_subset_size(q);
  return detail::scan_subreps(q, w, rep.support(), false).stable;
}

struct StabilityVerdict {
  IntervalRep interval;
  bool stable;
  std::optional<SubrepSupport> witness;
};

struct StabilityReport {
  Quiver quiver;
  WeightSystem weights;
  std::vector<StabilityVerdict> verdicts;
  bool all_stable = true;
};

inline StabilityReport verify_reineke(const Quiver& q, const WeightSystem& w) {
  if (w.size() != static_cast<std::size_t>(q.size())) throw domain_error("weight system length does not match quiver");
  StabilityReport report{q, w, {}, true};
  for (IntervalRep rep : enumerate_indecomposables(q)) {
    StabilityResult r = is_stable(q, w, rep);
    report.all_stable = report.all_stable && r.stable;
    report.verdicts.push_back({rep, r.stable, r.witness});
  }
  return report;
}

// The component of a disconnected thin support with the largest slope; its
// slope is at least the slope of the whole support.
inline SubrepSupport decomposable_never_stable(const Quiver& q, const WeightSystem& w, VertexSet support) {
  const int n = q.size();
  if (support.max() > n) throw domain_error("support exceeds the quiver");
  if (support.empty() || support.is_contiguous())
    throw domain_error("support " + support.to_string() + " is not decomposable (need at least two components)");
  const DimensionVector total = support.indicator(n);
  const auto parts = support.components();
  SubrepSupport best = parts.front();
  for (const VertexSet& c : parts)
    if (slope_cmp(w, c.indicator(n), best.indicator(n)) == std::strong_ordering::greater) best = c;
  if (slope_cmp(w, best.indicator(n), total) == std::strong_ordering::less)
    throw std::logic_error("mediant property violated");
  return best;
}

// Whenever the thin representation on `support` is semistable, its
// components have equal slope and are each stable.
inline bool thin_polystability_check(const Quiver& q, const WeightSystem& w, VertexSet support) {
  const int n = q.size();
  if (support.max() > n) throw domain_error("support exceeds the quiver");
  detail::require_subset_size(q);
  if (!verify_reineke(q, w).all_stable)
    throw domain_error("weight system does not stabilize every indecomposable");
  if (support.empty()) return true;
  if (!detail::scan_subreps(q, w, support, false).stable) return true;
  const auto parts = support.components();
  for (const VertexSet& c : parts) {
    if (slope_cmp(w, c.indicator(n), parts.front().indicator(n)) != std::strong_ordering::equal) return false;
    if (!is_stable(q, w, {c.min(), c.max()}).stable) return false;
  }
  return true;
}

// f(theta) = r(S) w(X) - r(X) w(S) > 0 for every interval X and proper
// non-zero subrepresentation S, gcd-normalized, deduplicated and sorted.
inline std::vector<LinearForm> stability_inequalities_for(const Quiver& q, std::span<const IntervalRep> reps) {
  const int n = q.size();
  std::set<LinearForm> forms;
  for (IntervalRep rep : reps) {
    const DimensionVector dx = dimension_vector(rep, n);
    const std::int64_t rx = rep.length();
    for (const SubrepSupport& s : enumerate_subrep_supports(q, rep)) {
      if (s.empty() || s == rep.support()) continue;
      const DimensionVector ds = s.indicator(n);
      const std::int64_t rs = s.size();
      LinearForm f{std::vector<std::int64_t>(static_cast<std::size_t>(n))};
      for (std::size_t i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = rs * dx[i] - rx * ds[i];
      forms.insert(f.normalized());
    }
  }
  return {forms.begin(), forms.end()};
}

inline std::vector<LinearForm> stability_inequalities(const Quiver& q) {
  const auto reps = enumerate_indecomposables(q);
  return stability_inequalities_for(q, reps);
}

}  // namespace quiverstab
