#pragma once

// Euler form, the weight systems W_X and W^Y carried by the determinantal
// semi-invariants c_X and c^Y, their case tables, non-negative integral
// decompositions of the intrinsic weight system, and the determinantal
// semi-invariants themselves evaluated over F_p.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "quiverstab/errors.hpp"
#include "quiverstab/ff_oracle.hpp"
#include "quiverstab/finite_field.hpp"
#include "quiverstab/quiver.hpp"
#include "quiverstab/weights.hpp"

namespace quiverstab {

// <dX, dY> = sum_i dX_i dY_i - sum_a dX_{s(a)} dY_{t(a)}
inline std::int64_t euler_form(const Quiver& q, std::span<const std::int64_t> dx, std::span<const std::int64_t> dy) {
  const auto n = static_cast<std::size_t>(q.size());
  if (dx.size() != n || dy.size() != n) throw domain_error("Euler form needs two dimension vectors of length n");
  std::int64_t value = 0;
  for (std::size_t i = 0; i < n; ++i) value += dx[i] * dy[i];
  for (const Arrow& a : q.arrows())
    value -= dx[static_cast<std::size_t>(a.source - 1)] * dy[static_cast<std::size_t>(a.target - 1)];
  return value;
}

namespace detail {

inline std::int64_t entry_or_zero(std::span<const std::int64_t> d, int vertex) {
  return vertex >= 1 && static_cast<std::size_t>(vertex) <= d.size() ? d[static_cast<std::size_t>(vertex - 1)] : 0;
}

}  // namespace detail

// (W_X)_i = <dX, e_i>, evaluated by vertex type.
inline WeightSystem weight_left(const Quiver& q, std::span<const std::int64_t> dx) {
  if (dx.size() != static_cast<std::size_t>(q.size())) throw domain_error("dimension vector length mismatch");
  WeightSystem w;
  for (const VertexContext& v : classify_vertices(q)) {
    const int i = v.index;
    const auto at = [&](int k) { return detail::entry_or_zero(dx, k); };
    switch (v.vtype) {
      case VertexType::I: w.thetas.push_back(at(i)); break;
      case VertexType::II: w.thetas.push_back(at(i) - at(i - 1) - at(i + 1)); break;
      case VertexType::III: w.thetas.push_back(at(i) - at(i - 1)); break;
      case VertexType::IV: w.thetas.push_back(at(i) - at(i + 1)); break;
    }
  }
  return w;
}

inline WeightSystem weight_left(const Quiver& q, IntervalRep x) {
  return weight_left(q, dimension_vector(x, q.size()));
}

// (W^Y)_i = -<e_i, dY>, evaluated by vertex type.
inline WeightSystem weight_right(const Quiver& q, std::span<const std::int64_t> dy) {
  if (dy.size() != static_cast<std::size_t>(q.size())) throw domain_error("dimension vector length mismatch");
  WeightSystem w;
  for (const VertexContext& v : classify_vertices(q)) {
    const int i = v.index;
    const auto at = [&](int k) { return detail::entry_or_zero(dy, k); };
    switch (v.vtype) {
      case VertexType::I: w.thetas.push_back(-at(i) + at(i - 1) + at(i + 1)); break;
      case VertexType::II: w.thetas.push_back(-at(i)); break;
      case VertexType::III: w.thetas.push_back(-at(i) + at(i + 1)); break;
      case VertexType::IV: w.thetas.push_back(-at(i) + at(i - 1)); break;
    }
  }
  return w;
}

inline WeightSystem weight_right(const Quiver& q, IntervalRep y) {
  return weight_right(q, dimension_vector(y, q.size()));
}

// The dimension vector d with weight_left(d) = theta. The Euler matrix is
// unitriangular along any topological order.
inline DimensionVector dimension_from_left_weight(const Quiver& q, const WeightSystem& theta) {
  const int n = q.size();
  if (theta.size() != static_cast<std::size_t>(n)) throw domain_error("weight system length mismatch");
  // theta_i = d_i - sum_{a: t(a)=i} d_{s(a)}; resolve sources before targets.
  DimensionVector d(static_cast<std::size_t>(n), 0);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int resolved = 0; resolved < n;) {
    for (int i = 1; i <= n; ++i) {
      if (done[static_cast<std::size_t>(i - 1)]) continue;
      std::int64_t incoming = 0;
      bool ready = true;
      for (const Arrow& a : q.arrows()) {
        if (a.target != i) continue;
        if (!done[static_cast<std::size_t>(a.source - 1)]) ready = false;
        else incoming += d[static_cast<std::size_t>(a.source - 1)];
      }
      if (!ready) continue;
      d[static_cast<std::size_t>(i - 1)] = theta[i] + incoming;
      done[static_cast<std::size_t>(i - 1)] = true;
      ++resolved;
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Case tables for Theta(I_{p,q}) and Theta'(I_{p,q}). The table has no row
// for i = q when p < q; that entry stays empty.

using PartialWeights = std::vector<std::optional<std::int64_t>>;

inline PartialWeights table_theta(const Quiver& q, IntervalRep x) {
  require_interval(x, q.size());
  PartialWeights out;
  for (const VertexContext& v : classify_vertices(q)) {
    const int i = v.index;
    const VertexType t = v.vtype;
    const bool one_or_three = t == VertexType::I || t == VertexType::III;
    std::optional<std::int64_t> e;
    if (x.p < i && i < x.q) {
      e = t == VertexType::I ? 1 : t == VertexType::II ? -1 : 0;
    } else if (i == x.p) {
      if (x.p == x.q) e = 1;
      else e = one_or_three ? 1 : 0;
    } else if (i == x.p - 1) {
      e = one_or_three ? 0 : -1;
    } else if (i == x.q + 1) {
      e = (t == VertexType::I || t == VertexType::IV) ? 0 : -1;
    } else if (i < x.p - 1 || i > x.q + 1) {
      e = 0;
    }
    out.push_back(e);
  }
  return out;
}

inline PartialWeights table_theta_prime(const Quiver& q, IntervalRep x) {
  require_interval(x, q.size());
  PartialWeights out;
  for (const VertexContext& v : classify_vertices(q)) {
    const int i = v.index;
    const VertexType t = v.vtype;
    const bool one_or_three = t == VertexType::I || t == VertexType::III;
    std::optional<std::int64_t> e;
    if (x.p < i && i < x.q) {
      e = t == VertexType::I ? 1 : t == VertexType::II ? -1 : 0;
    } else if (i == x.p) {
      if (x.p == x.q) e = -1;
      else e = one_or_three ? 0 : -1;
    } else if (i == x.p - 1) {
      e = one_or_three ? 1 : 0;
    } else if (i == x.q + 1) {
      e = (t == VertexType::I || t == VertexType::IV) ? 1 : 0;
    } else if (i < x.p - 1 || i > x.q + 1) {
      e = 0;
    }
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Non-negative decompositions of the intrinsic weight system

enum class DecompositionMode { Left, Right };

inline const char* to_string(DecompositionMode m) { return m == DecompositionMode::Left ? "left" : "right"; }

// Positive coefficients only, keyed by interval.
struct Decomposition {
  DecompositionMode mode = DecompositionMode::Left;
  std::map<IntervalRep, std::int64_t> coefficients;

  WeightSystem reconstruct(const Quiver& q) const {
    WeightSystem w{std::vector<std::int64_t>(static_cast<std::size_t>(q.size()), 0)};
    for (const auto& [rep, c] : coefficients) {
      const WeightSystem g = mode == DecompositionMode::Left ? weight_left(q, rep) : weight_right(q, rep);
      for (std::size_t i = 0; i < w.thetas.size(); ++i) w.thetas[i] += c * g.thetas[i];
    }
    return w;
  }
};

// The dimension vector d with weight_right(d) = theta, resolving sinks first.
inline DimensionVector dimension_from_right_weight(const Quiver& q, const WeightSystem& theta) {
  const int n = q.size();
  if (theta.size() != static_cast<std::size_t>(n)) throw domain_error("weight system length mismatch");
  // -theta_i = d_i - sum_{a: s(a)=i} d_{t(a)}
  DimensionVector d(static_cast<std::size_t>(n), 0);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int resolved = 0; resolved < n;) {
    for (int i = 1; i <= n; ++i) {
      if (done[static_cast<std::size_t>(i - 1)]) continue;
      std::int64_t outgoing = 0;
      bool ready = true;
      for (const Arrow& a : q.arrows()) {
        if (a.source != i) continue;
        if (!done[static_cast<std::size_t>(a.target - 1)]) ready = false;
        else outgoing += d[static_cast<std::size_t>(a.target - 1)];
      }
      if (!ready) continue;
      d[static_cast<std::size_t>(i - 1)] = -theta[i] + outgoing;
      done[static_cast<std::size_t>(i - 1)] = true;
      ++resolved;
    }
  }
  return d;
}

namespace detail {

// Non-negative c over intervals (lexicographic order), each at most cap, with
// sum_c c * 1_{[p,q]} = d. Interval [p,q] is an edge p -> q+1 on the path
// 1..n+1 and a cover is a flow with supply d_i - d_{i-1} at node i; the
// consecutive-ones matrix is totally unimodular, so max-flow decides
// feasibility of any suffix exactly and the search never backtracks deep.
class IntervalCover {
public:
  IntervalCover(int n, DimensionVector target) : n_(n), target_(std::move(target)) {
    for (int p = 1; p <= n; ++p)
      for (int q = p; q <= n; ++q) intervals_.push_back({p, q});
  }

  const std::vector<IntervalRep>& intervals() const { return intervals_; }

  bool feasible(std::int64_t cap) const { return completable(target_, 0, cap); }

  // Lexicographically least cover with coefficients in [0, cap].
  std::optional<std::vector<std::int64_t>> run(std::int64_t cap) const {
    if (!feasible(cap)) return std::nullopt;
    std::vector<std::int64_t> coeffs(intervals_.size(), 0);
    DimensionVector residual = target_;
    for (std::size_t k = 0; k < intervals_.size(); ++k) {
      const IntervalRep x = intervals_[k];
      std::int64_t top = cap;
      for (int v = x.p; v <= x.q; ++v) top = std::min(top, residual[static_cast<std::size_t>(v - 1)]);
      std::int64_t c = 0;
      for (; c <= top; ++c) {
        DimensionVector trial = residual;
        for (int v = x.p; v <= x.q; ++v) trial[static_cast<std::size_t>(v - 1)] -= c;
        if (completable(trial, k + 1, cap)) break;
      }
      if (c > top) throw std::logic_error("interval cover lost feasibility");
      coeffs[k] = c;
      for (int v = x.p; v <= x.q; ++v) residual[static_cast<std::size_t>(v - 1)] -= c;
    }
    return coeffs;
  }

private:
  // Can `residual` be covered using only intervals k, k+1, ...?
  bool completable(const DimensionVector& residual, std::size_t first, std::int64_t cap) const {
    const std::size_t nodes = static_cast<std::size_t>(n_) + 3;  // path nodes 1..n+1, source 0, sink n+2
    const std::size_t source = 0, sink = nodes - 1;
    std::vector<std::vector<std::int64_t>> capacity(nodes, std::vector<std::int64_t>(nodes, 0));
    std::int64_t supply = 0;
    for (int i = 1; i <= n_ + 1; ++i) {
      const std::int64_t here = i <= n_ ? residual[static_cast<std::size_t>(i - 1)] : 0;
      const std::int64_t before = i > 1 ? residual[static_cast<std::size_t>(i - 2)] : 0;
      const std::int64_t delta = here - before;
      if (delta > 0) {
        capacity[source][static_cast<std::size_t>(i)] = delta;
        supply += delta;
      } else if (delta < 0) {
        capacity[static_cast<std::size_t>(i)][sink] = -delta;
      }
    }
    for (std::size_t k = first; k < intervals_.size(); ++k)
      capacity[static_cast<std::size_t>(intervals_[k].p)][static_cast<std::size_t>(intervals_[k].q + 1)] += cap;
    return max_flow(capacity, source, sink) == supply;
  }

  static std::int64_t max_flow(std::vector<std::vector<std::int64_t>>& capacity, std::size_t source, std::size_t sink) {
    const std::size_t nodes = capacity.size();
    std::int64_t total = 0;
    while (true) {
      std::vector<std::size_t> parent(nodes, nodes);
      parent[source] = source;
      std::vector<std::size_t> queue{source};
      for (std::size_t head = 0; head < queue.size() && parent[sink] == nodes; ++head)
        for (std::size_t v = 0; v < nodes; ++v)
          if (parent[v] == nodes && capacity[queue[head]][v] > 0) {
            parent[v] = queue[head];
            queue.push_back(v);
          }
      if (parent[sink] == nodes) return total;
      std::int64_t push = capacity[parent[sink]][sink];
      for (std::size_t v = sink; v != source; v = parent[v]) push = std::min(push, capacity[parent[v]][v]);
      for (std::size_t v = sink; v != source; v = parent[v]) {
        capacity[parent[v]][v] -= push;
        capacity[v][parent[v]] += push;
      }
      total += push;
    }
  }

  int n_;
  DimensionVector target_;
  std::vector<IntervalRep> intervals_;
};

}  // namespace detail

// Writes the intrinsic weight system as a non-negative integer combination of
// W_{I_{p,q}} (left) or W^{I_{p,q}} (right). Both maps are unimodular in the
// dimension vector, so this is a cover of the preimage d by intervals. The
// result is the lexicographically least cover (intervals in lexicographic
// order) among those with the smallest possible largest coefficient.
inline Decomposition decompose_intrinsic(const Quiver& q, DecompositionMode mode,
                                         std::optional<std::int64_t> max_cap = std::nullopt) {
  const WeightSystem theta = intrinsic_weights(q);
  const DimensionVector d =
      mode == DecompositionMode::Left ? dimension_from_left_weight(q, theta) : dimension_from_right_weight(q, theta);
  const auto fail = [&](const std::string& why) {
    return not_found_error("no non-negative decomposition " + why + " for orientation '" + q.word() + "' (" +
                           to_string(mode) + " mode)");
  };
  for (auto v : d)
    if (v < 0) throw fail("exists (preimage dimension vector has a negative entry)");

  std::int64_t limit = 0;
  for (auto v : d) limit = std::max(limit, v);
  if (max_cap) limit = std::min(limit, *max_cap);

  const detail::IntervalCover search(q.size(), d);
  for (std::int64_t cap = 0; cap <= limit; ++cap) {
    if (auto found = search.run(cap)) {
      Decomposition out{mode, {}};
      for (std::size_t k = 0; k < found->size(); ++k)
        if ((*found)[k] > 0) out.coefficients.emplace(search.intervals()[k], (*found)[k]);
      return out;
    }
  }
  throw fail("with coefficients <= " + std::to_string(limit));
}

// Endpoint-type side conditions on the intervals that carry a positive
// coefficient. A clause "q != n is of type T" is read as q != n and
// type(q) in T; only the first clause of each mode also admits q = n.
inline bool interval_meets_side_conditions(const Quiver& q, IntervalRep x, DecompositionMode mode) {
  require_interval(x, q.size());
  const int n = q.size();
  const VertexType tp = vertex_type(q, x.p);
  const VertexType tq = vertex_type(q, x.q);
  const auto in = [](VertexType t, VertexType a, VertexType b) { return t == a || t == b; };
  using VT = VertexType;
  if (mode == DecompositionMode::Left) {
    if (x.p != 1 && in(tp, VT::I, VT::IV) && !(x.q == n || in(tq, VT::II, VT::IV))) return false;
    if (in(tp, VT::II, VT::III) && !(x.q != n && in(tq, VT::I, VT::III))) return false;
    if (x.p == 1 && !(x.q != n && in(tq, VT::I, VT::III))) return false;
  } else {
    if (x.p != 1 && in(tp, VT::II, VT::III) && !(x.q == n || in(tq, VT::I, VT::III))) return false;
    if (in(tp, VT::I, VT::IV) && !(x.q != n && in(tq, VT::II, VT::IV))) return false;
    if (x.p == 1 && !(x.q != n && in(tq, VT::II, VT::IV))) return false;
  }
  return true;
}

inline bool support_restriction_check(const Quiver& q, const Decomposition& dec) {
  for (const auto& [rep, c] : dec.coefficients)
    if (c > 0 && !interval_meets_side_conditions(q, rep, dec.mode)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Determinantal semi-invariants over F_p

// Matrix of f_X^Y : (f_i)_i -> (f_{t(a)} X_a - Y_a f_{s(a)})_a. Domain basis:
// vertex by vertex, matrix units E_{rc} of Hom(X_i, Y_i) row-major; codomain
// likewise, arrow by arrow.
inline ff::Matrix hom_matrix(const Quiver& q, const FFRep& x, const FFRep& y) {
  validate(q, x);
  validate(q, y);
  if (x.prime != y.prime) throw domain_error("representations over different fields");
  const std::uint64_t p = x.prime;
  const auto n = static_cast<std::size_t>(q.size());
  const auto dx = [&](int v) { return static_cast<std::size_t>(x.dims[static_cast<std::size_t>(v - 1)]); };
  const auto dy = [&](int v) { return static_cast<std::size_t>(y.dims[static_cast<std::size_t>(v - 1)]); };

  std::vector<std::size_t> col_offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    col_offset[i + 1] = col_offset[i] + dy(static_cast<int>(i + 1)) * dx(static_cast<int>(i + 1));
  std::vector<std::size_t> row_offset(q.arrow_count() + 1, 0);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow arr = q.arrow(a);
    row_offset[a + 1] = row_offset[a] + dy(arr.target) * dx(arr.source);
  }

  ff::Matrix m(row_offset.back(), col_offset.back());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow arr = q.arrow(a);
    const std::size_t ds = dx(arr.source);  // codomain block is dy(t) x ds
    const ff::Matrix& xa = x.maps[a];       // dx(t) x dx(s)
    const ff::Matrix& ya = y.maps[a];       // dy(t) x dy(s)
    // f_t = E_{rc} in Hom(X_t, Y_t):  E_{rc} X_a has row r equal to row c of X_a.
    const auto t = static_cast<std::size_t>(arr.target - 1);
    for (std::size_t r = 0; r < dy(arr.target); ++r)
      for (std::size_t c = 0; c < dx(arr.target); ++c) {
        const std::size_t col = col_offset[t] + r * dx(arr.target) + c;
        for (std::size_t k = 0; k < ds; ++k) {
          const std::size_t row = row_offset[a] + r * ds + k;
          m(row, col) = ff::add(m(row, col), xa(c, k), p);
        }
      }
    // f_s = E_{rc} in Hom(X_s, Y_s):  -Y_a E_{rc} has column c equal to -(column r of Y_a).
    const auto s = static_cast<std::size_t>(arr.source - 1);
    for (std::size_t r = 0; r < dy(arr.source); ++r)
      for (std::size_t c = 0; c < ds; ++c) {
        const std::size_t col = col_offset[s] + r * ds + c;
        for (std::size_t k = 0; k < dy(arr.target); ++k) {
          const std::size_t row = row_offset[a] + k * ds + c;
          m(row, col) = ff::sub(m(row, col), ya(k, r), p);
        }
      }
  }
  return m;
}

// c(X,Y) = det f_X^Y, defined when <dX, dY> = 0.
inline ff::Elem c_semiinvariant(const Quiver& q, const FFRep& x, const FFRep& y) {
  const std::int64_t pairing = euler_form(q, x.dims, y.dims);
  if (pairing != 0)
    throw domain_error("c(X,Y) needs <dX,dY> = 0, got " + std::to_string(pairing));
  return ff::determinant(hom_matrix(q, x, y), x.prime);
}

namespace detail {

// X(path from i to j) if the unique path exists (i != j), else nothing.
inline std::optional<ff::Matrix> path_map(const Quiver& q, const FFRep& x, int i, int j) {
  const std::uint64_t p = x.prime;
  const int step = j > i ? 1 : -1;
  ff::Matrix acc = ff::Matrix::identity(static_cast<std::size_t>(x.dims[static_cast<std::size_t>(i - 1)]));
  for (int v = i; v != j; v += step) {
    const std::size_t a = static_cast<std::size_t>(std::min(v, v + step) - 1);
    const Arrow arr = q.arrow(a);
    if (arr.source != v) return std::nullopt;
    acc = ff::multiply(x.maps[a], acc, p);
  }
  return acc;
}

}  // namespace detail

// det A, with A : (+)_i X_i^{theta+_i} -> (+)_j X_j^{theta-_j} whose block at
// (copy of j, copy of i) is X(p_{i,j}) or zero.
inline ff::Elem det_a_semiinvariant(const Quiver& q, const WeightSystem& theta, const FFRep& x) {
  validate(q, x);
  const int n = q.size();
  if (theta.size() != static_cast<std::size_t>(n)) throw domain_error("weight system length mismatch");
  const std::int64_t pairing = weight_of(theta, x.dims);
  if (pairing != 0)
    throw domain_error("det A needs sum_i theta_i d_i = 0, got " + std::to_string(pairing));
  struct Slot {
    int vertex;
    std::size_t offset;
  };
  std::vector<Slot> domain, codomain;
  std::size_t cols = 0, rows = 0;
  for (int v = 1; v <= n; ++v) {
    const std::int64_t t = theta[v];
    const auto d = static_cast<std::size_t>(x.dims[static_cast<std::size_t>(v - 1)]);
    for (std::int64_t c = 0; c < t; ++c, cols += d) domain.push_back({v, cols});
    for (std::int64_t c = 0; c < -t; ++c, rows += d) codomain.push_back({v, rows});
  }
  ff::Matrix a(rows, cols);
  for (const Slot& src : domain)
    for (const Slot& dst : codomain) {
      const auto block = detail::path_map(q, x, src.vertex, dst.vertex);
      if (!block) continue;
      for (std::size_t r = 0; r < block->rows(); ++r)
        for (std::size_t c = 0; c < block->cols(); ++c) a(dst.offset + r, src.offset + c) = (*block)(r, c);
    }
  return ff::determinant(a, x.prime);
}

// True when det A vanishes for every X of dimension d: some vertex with
// non-zero space is repeated (|theta_i| >= 2), duplicating block rows or
// columns.
inline bool det_a_identically_zero(const WeightSystem& theta, std::span<const std::int64_t> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::int64_t t = theta.thetas.at(i);
    if (d[i] > 0 && (t >= 2 || t <= -2)) return true;
  }
  return false;
}

// chi_theta(g) = prod_i det(g_i)^{theta_i}
inline ff::Elem character_value(const WeightSystem& theta, const GroupElement& g, std::uint64_t prime) {
  ff::require_prime(prime);
  if (g.size() != theta.size()) throw domain_error("group element needs one block per vertex");
  ff::Elem value = 1 % prime;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const ff::Elem det = ff::determinant(g[i], prime);
    if (det == 0) throw domain_error("singular block at vertex " + std::to_string(i + 1));
    const std::int64_t e = theta.thetas[i];
    const ff::Elem base = e >= 0 ? det : ff::inv(det, prime);
    value = ff::mul(value, ff::pow(base, static_cast<std::uint64_t>(e >= 0 ? e : -e), prime), prime);
  }
  return value;
}

// ---------------------------------------------------------------------------
// Semi-invariance law: f(g.Y) = chi_theta(g)^{-1} f(Y), i.e. (g.f) = chi f
// with (g.f)(Y) = f(g^{-1}.Y).

struct SemiinvarianceCounterexample {
  std::string invariant;
  std::size_t trial;
  ff::Elem value;         // f(Y)
  ff::Elem transformed;   // f(g.Y)
  ff::Elem character;     // chi(g)
};

struct InvariantTally {
  std::string name;
  bool applicable = false;
  std::string note;
  std::size_t evaluations = 0;
  std::size_t nonzero_values = 0;
  std::size_t failures = 0;
};

struct SemiinvarianceReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<SemiinvarianceCounterexample> first_counterexample;
  std::vector<InvariantTally> invariants;
  DimensionVector dx;  // representation X with W_X = theta (for c_X)
};

inline SemiinvarianceReport check_semiinvariance(const Quiver& q, const WeightSystem& theta, const DimensionVector& dy,
                                                 std::size_t trials, std::uint64_t prime, std::uint64_t seed) {
  ff::require_prime(prime);
  if (trials < 1) throw domain_error("trials must be at least 1");
  if (theta.size() != static_cast<std::size_t>(q.size()) || dy.size() != theta.size())
    throw domain_error("weight system and dimension vector must have length n");
  for (auto v : dy)
    if (v < 0) throw domain_error("negative dimension");
  const std::int64_t pairing = weight_of(theta, dy);
  if (pairing != 0)
    throw domain_error("weight system pairs to " + std::to_string(pairing) +
                       " with the dimension vector; only the trivial semi-invariant exists");

  std::mt19937_64 rng(seed);
  SemiinvarianceReport report;
  report.trials = trials;
  report.dx = dimension_from_left_weight(q, theta);

  bool cx_ok = true;
  for (auto v : report.dx) cx_ok = cx_ok && v >= 0;
  InvariantTally cx{"c_X", cx_ok, cx_ok ? "" : "W_X = theta needs a negative dimension", 0, 0, 0};
  InvariantTally det_a{"det_A", true, det_a_identically_zero(theta, dy) ? "identically zero (repeated path blocks)" : "",
                       0, 0, 0};
  std::optional<FFRep> x;
  if (cx_ok) x = random_rep(q, report.dx, prime, rng);

  const auto record = [&](InvariantTally& tally, std::size_t trial, ff::Elem before, ff::Elem after, ff::Elem chi) {
    ++tally.evaluations;
    if (before != 0) ++tally.nonzero_values;
    if (ff::mul(after, chi, prime) == before) return;
    ++tally.failures;
    ++report.failures;
    if (!report.first_counterexample) report.first_counterexample = {tally.name, trial, before, after, chi};
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const FFRep y = random_rep(q, dy, prime, rng);
    const GroupElement g = random_group_element(dy, prime, rng);
    const FFRep gy = apply_group(q, g, y);
    const ff::Elem chi = character_value(theta, g, prime);
    if (x) record(cx, trial, c_semiinvariant(q, *x, y), c_semiinvariant(q, *x, gy), chi);
    record(det_a, trial, det_a_semiinvariant(q, theta, y), det_a_semiinvariant(q, theta, gy), chi);
  }
  report.invariants = {cx, det_a};
  return report;
}

}  // namespace quiverstab
