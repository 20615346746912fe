#pragma once

// Polyhedral cones cut out by strict stability inequalities f(theta) > 0:
// membership, interior lattice points and irredundant (wall-supporting) forms.
//
// Feasibility is decided by Fourier-Motzkin elimination over exact rationals
// on the system {f(theta) >= 1}; a homogeneous strict system has a solution
// iff this one does (scale any strict solution). Chernikov's rule drops a
// derived row once it combines more than k+1 original rows after k
// eliminations; such rows are always implied by the others. Before
// elimination, forms that are non-negative combinations of two other kept
// forms are dropped.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "quiverstab/errors.hpp"
#include "quiverstab/linear_form.hpp"
#include "quiverstab/quiver.hpp"
#include "quiverstab/stability.hpp"
#include "quiverstab/weights.hpp"

namespace quiverstab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Open region {f > 0 for all forms}; its closure uses f >= 0. An empty form
// set denotes the whole weight space.
struct ConeDescription {
  int n = 0;
  std::vector<LinearForm> forms;
};

inline ConeDescription cone_of(const Quiver& q, std::span<const IntervalRep> intervals) {
  if (intervals.empty()) throw domain_error("cone_of needs a non-empty set of intervals");
  for (IntervalRep rep : intervals) require_interval(rep, q.size());
  return {q.size(), stability_inequalities_for(q, intervals)};
}

inline ConeDescription cone_of(const Quiver& q) {
  const auto all = enumerate_indecomposables(q);
  return cone_of(q, all);
}

inline bool contains(const ConeDescription& c, const WeightSystem& theta, bool strict) {
  if (theta.size() != static_cast<std::size_t>(c.n))
    throw domain_error("weight system has " + std::to_string(theta.size()) + " entries, cone dimension is " +
                       std::to_string(c.n));
  for (const LinearForm& f : c.forms) {
    const std::int64_t v = f(theta);
    if (strict ? v <= 0 : v < 0) return false;
  }
  return true;
}

// Row cap for Fourier-Motzkin; QUIVERSTAB_MAX_FORMS overrides the default.
inline std::size_t default_max_forms() {
  constexpr std::size_t kDefault = 100000;
  if (const char* env = std::getenv("QUIVERSTAB_MAX_FORMS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefault;
}

namespace fm {

// a . x >= b
struct Row {
  std::vector<BigInt> a;
  BigRational b;
  boost::dynamic_bitset<> history;
};

inline BigInt floor_of(const BigRational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);  // always positive
  BigInt quot = num / den;
  if (num < 0 && quot * den != num) --quot;
  return quot;
}

inline BigInt ceil_of(const BigRational& r) { return -floor_of(-r); }

// Divides a and b by gcd(a). Returns false for the zero direction.
inline bool normalize(Row& row) {
  BigInt g = 0;
  for (const BigInt& c : row.a) g = boost::multiprecision::gcd(g, c);
  if (g == 0) return false;
  if (g != 1) {
    for (BigInt& c : row.a) c /= g;
    row.b /= BigRational(g);
  }
  return true;
}

class RowSet {
public:
  explicit RowSet(std::size_t max_rows) : max_rows_(max_rows) {}

  // Adds a normalized row. A row is dropped only when another row with the
  // same direction has b at least as large and a history that is a subset
  // of its own.
  void add(Row row) {
    auto& same = index_[row.a];
    for (std::size_t k = 0; k < same.size(); ++k) {
      const Row& e = rows_[same[k]];
      if (e.b >= row.b && e.history.is_subset_of(row.history)) return;
    }
    for (std::size_t k = 0; k < same.size();) {
      Row& e = rows_[same[k]];
      if (row.b >= e.b && row.history.is_subset_of(e.history)) {
        alive_[same[k]] = false;
        same[k] = same.back();
        same.pop_back();
      } else {
        ++k;
      }
    }
    if (++live_ > max_rows_)
      throw resource_limit_error("Fourier-Motzkin row count exceeded the cap of " + std::to_string(max_rows_) +
                                 " (set QUIVERSTAB_MAX_FORMS to raise it)");
    same.push_back(rows_.size());
    rows_.push_back(std::move(row));
    alive_.push_back(true);
  }

  std::vector<Row> release() {
    std::vector<Row> out;
    out.reserve(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (alive_[i]) out.push_back(std::move(rows_[i]));
    return out;
  }

private:
  std::size_t max_rows_;
  std::size_t live_ = 0;
  std::vector<Row> rows_;
  std::vector<bool> alive_;
  std::map<std::vector<BigInt>, std::vector<std::size_t>> index_;
};

// Returns a rational point satisfying every row, or nothing if infeasible.
inline std::optional<std::vector<BigRational>> solve(std::vector<Row> rows, int n, std::size_t max_rows) {
  const auto dim = static_cast<std::size_t>(n);
  {
    RowSet initial(max_rows);
    for (Row& r : rows) {
      if (r.a.size() != dim) throw domain_error("row dimension mismatch");
      if (!normalize(r)) {
        if (r.b > 0) return std::nullopt;
        continue;
      }
      initial.add(std::move(r));
    }
    rows = initial.release();
  }

  std::vector<std::vector<Row>> stages;
  std::vector<std::size_t> order;
  std::vector<bool> eliminated(dim, false);

  for (std::size_t step = 1; step <= dim; ++step) {
    // Pick the variable whose elimination creates the fewest rows.
    std::size_t best = dim;
    long long best_cost = std::numeric_limits<long long>::max();
    for (std::size_t v = 0; v < dim; ++v) {
      if (eliminated[v]) continue;
      std::size_t pos = 0, neg = 0;
      for (const Row& r : rows) {
        if (r.a[v] > 0) ++pos;
        else if (r.a[v] < 0) ++neg;
      }
      const long long cost = static_cast<long long>(pos * neg) - static_cast<long long>(pos + neg);
      if (cost < best_cost) {
        best_cost = cost;
        best = v;
      }
    }
    const std::size_t v = best;
    eliminated[v] = true;
    order.push_back(v);

    RowSet next(max_rows);
    std::vector<const Row*> pos, neg;
    for (const Row& r : rows) {
      if (r.a[v] > 0) pos.push_back(&r);
      else if (r.a[v] < 0) neg.push_back(&r);
      else next.add(r);
    }
    for (const Row* p : pos) {
      for (const Row* m : neg) {
        boost::dynamic_bitset<> hist = p->history | m->history;
        if (hist.count() > step + 1) continue;  // Chernikov: implied by other rows
        const BigInt cp = p->a[v];
        const BigInt cm = -m->a[v];
        Row combined{std::vector<BigInt>(dim), BigRational(cm) * p->b + BigRational(cp) * m->b, std::move(hist)};
        for (std::size_t j = 0; j < dim; ++j) combined.a[j] = cm * p->a[j] + cp * m->a[j];
        if (!normalize(combined)) {
          if (combined.b > 0) return std::nullopt;
          continue;
        }
        next.add(std::move(combined));
      }
    }
    stages.push_back(std::move(rows));
    rows = next.release();
  }
  // Everything left is trivial 0 >= b and was checked on creation.

  std::vector<BigRational> x(dim, BigRational(0));
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::size_t v = order[k];
    std::optional<BigRational> lo, hi;
    for (const Row& r : stages[k]) {
      const BigInt& c = r.a[v];
      if (c == 0) continue;
      BigRational rest = r.b;
      for (std::size_t j = 0; j < dim; ++j)
        if (j != v && r.a[j] != 0) rest -= BigRational(r.a[j]) * x[j];
      const BigRational bound = rest / BigRational(c);
      if (c > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    BigRational value(0);
    if (lo && hi) {
      if (*lo > *hi) throw std::logic_error("Fourier-Motzkin back-substitution found an empty range");
      const BigRational c(ceil_of(*lo));
      value = c <= *hi ? c : *lo;
    } else if (lo) {
      value = BigRational(ceil_of(*lo));
    } else if (hi) {
      value = BigRational(floor_of(*hi));
    }
    x[v] = value;
  }
  return x;
}

// Rows f(x) >= 1 for the given forms (optionally with one form negated).
inline std::vector<Row> strict_rows(std::span<const LinearForm> forms, int n, std::optional<std::size_t> negate = {}) {
  std::vector<Row> rows;
  rows.reserve(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    Row r{std::vector<BigInt>(static_cast<std::size_t>(n)), BigRational(1), boost::dynamic_bitset<>(forms.size())};
    r.history.set(i);
    const BigInt sign = (negate && *negate == i) ? -1 : 1;
    for (std::size_t j = 0; j < r.a.size(); ++j) r.a[j] = sign * BigInt(forms[i].coeffs.at(j));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace fm

namespace detail {

// When every form has coefficient sum zero, the all-ones direction lies in
// the lineality space and the last coordinate can be pinned to zero.
inline bool ones_in_lineality(const ConeDescription& c) {
  if (c.n < 2) return false;
  for (const LinearForm& f : c.forms) {
    std::int64_t sum = 0;
    for (auto x : f.coeffs) sum += x;
    if (sum != 0) return false;
  }
  return true;
}

inline std::optional<std::vector<BigRational>> solve_strict(const ConeDescription& c, std::span<const LinearForm> forms,
                                                            std::optional<std::size_t> negate, std::size_t max_rows) {
  const bool pin_last = ones_in_lineality(c);
  const int dim = pin_last ? c.n - 1 : c.n;
  auto rows = fm::strict_rows(forms, c.n, negate);
  if (pin_last)
    for (auto& r : rows) r.a.pop_back();
  auto point = fm::solve(std::move(rows), dim, max_rows);
  if (point && pin_last) point->push_back(BigRational(0));
  return point;
}

// f = a g + b h with a, b >= 0 (rational). Forms are non-zero.
inline bool in_pair_cone(const LinearForm& f, const LinearForm& g, const LinearForm& h) {
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      BigInt det = BigInt(g.coeffs[i]) * h.coeffs[j] - BigInt(g.coeffs[j]) * h.coeffs[i];
      if (det == 0) continue;
      BigInt a = BigInt(f.coeffs[i]) * h.coeffs[j] - BigInt(f.coeffs[j]) * h.coeffs[i];
      BigInt b = BigInt(g.coeffs[i]) * f.coeffs[j] - BigInt(g.coeffs[j]) * f.coeffs[i];
      if (det < 0) {
        det = -det;
        a = -a;
        b = -b;
      }
      if (a < 0 || b < 0) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (a * g.coeffs[k] + b * h.coeffs[k] != det * f.coeffs[k]) return false;
      return true;
    }
  return false;
}

// Indices of forms, largest L1 norm first.
inline std::vector<std::size_t> by_descending_l1(const std::vector<LinearForm>& forms) {
  std::vector<std::size_t> order(forms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto l1 = [&](std::size_t i) {
    BigInt s = 0;
    for (auto x : forms[i].coeffs) s += x < 0 ? -BigInt(x) : BigInt(x);
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return l1(a) > l1(b); });
  return order;
}

// keep[i] is false when forms[i] is implied by a pair of kept forms.
inline std::vector<bool> drop_pair_implied(const std::vector<LinearForm>& forms) {
  std::vector<bool> keep(forms.size(), true);
  for (std::size_t i : by_descending_l1(forms)) {
    if (forms[i].is_zero()) continue;
    bool implied = false;
    for (std::size_t j = 0; j < forms.size() && !implied; ++j) {
      if (j == i || !keep[j] || forms[j].is_zero()) continue;
      for (std::size_t k = j + 1; k < forms.size() && !implied; ++k)
        if (k != i && keep[k] && !forms[k].is_zero() && in_pair_cone(forms[i], forms[j], forms[k])) implied = true;
    }
    if (implied) keep[i] = false;
  }
  return keep;
}

inline std::vector<LinearForm> kept(const std::vector<LinearForm>& forms, const std::vector<bool>& keep) {
  std::vector<LinearForm> out;
  for (std::size_t i = 0; i < forms.size(); ++i)
    if (keep[i]) out.push_back(forms[i]);
  return out;
}

}  // namespace detail

// An integer point with f(theta) > 0 for every form, or nothing.
inline std::optional<WeightSystem> feasible_interior(const ConeDescription& c,
                                                     std::size_t max_rows = default_max_forms()) {
  for (const LinearForm& f : c.forms)
    if (f.size() != static_cast<std::size_t>(c.n)) throw domain_error("form dimension mismatch");
  const auto reduced = detail::kept(c.forms, detail::drop_pair_implied(c.forms));
  auto point = detail::solve_strict(c, reduced, std::nullopt, max_rows);
  if (!point) return std::nullopt;

  BigInt lcm = 1;
  for (const BigRational& v : *point) {
    const BigInt den = boost::multiprecision::denominator(v);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  std::vector<BigInt> scaled;
  BigInt g = 0;
  for (const BigRational& v : *point) {
    scaled.push_back(boost::multiprecision::numerator(v) * (lcm / boost::multiprecision::denominator(v)));
    g = boost::multiprecision::gcd(g, scaled.back());
  }
  WeightSystem w;
  for (BigInt& s : scaled) {
    if (g > 1) s /= g;
    if (s > std::numeric_limits<std::int64_t>::max() || s < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("interior point does not fit in 64-bit integers");
    w.thetas.push_back(static_cast<std::int64_t>(s));
  }
  if (!contains(c, w, true)) throw std::logic_error("Fourier-Motzkin returned a point outside the open cone");
  return w;
}

// Forms whose removal enlarges the open region: f is kept iff
// {-f >= 1} together with {g >= 1 : g != f} is feasible. Forms found
// redundant are discarded before the next test; in a full-dimensional cone
// with distinct normalized forms this leaves the answer unchanged.
inline std::vector<LinearForm> irredundant_forms(const ConeDescription& c,
                                                 std::size_t max_rows = default_max_forms()) {
  if (!feasible_interior(c, max_rows)) throw domain_error("cone is not full-dimensional (open region is empty)");
  std::vector<bool> keep = detail::drop_pair_implied(c.forms);
  for (std::size_t i : detail::by_descending_l1(c.forms)) {
    if (!keep[i]) continue;
    std::vector<LinearForm> trial;
    std::size_t position = 0;
    for (std::size_t j = 0; j < c.forms.size(); ++j) {
      if (!keep[j]) continue;
      if (j == i) position = trial.size();
      trial.push_back(c.forms[j]);
    }
    if (!detail::solve_strict(c, trial, position, max_rows)) keep[i] = false;
  }
  return detail::kept(c.forms, keep);
}

}  // namespace quiverstab
