#pragma once

// Brute-force ground truth over small prime fields: explicit representations,
// exhaustive subrepresentation enumeration and slope stability.

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "quiverstab/errors.hpp"
#include "quiverstab/finite_field.hpp"
#include "quiverstab/quiver.hpp"
#include "quiverstab/weights.hpp"

namespace quiverstab {

// A point of Rep(Q,d) over F_p: maps[a] is a dims[t(a)] x dims[s(a)] matrix.
struct FFRep {
  std::uint64_t prime = 2;
  DimensionVector dims;
  std::vector<ff::Matrix> maps;

  bool operator==(const FFRep&) const = default;
};

inline void validate(const Quiver& q, const FFRep& x) {
  ff::require_prime(x.prime);
  if (x.dims.size() != static_cast<std::size_t>(q.size())) throw domain_error("representation dimension vector length mismatch");
  for (auto d : x.dims)
    if (d < 0) throw domain_error("negative dimension");
  if (x.maps.size() != q.arrow_count()) throw domain_error("representation needs one map per arrow");
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow arr = q.arrow(a);
    const auto rows = static_cast<std::size_t>(x.dims[static_cast<std::size_t>(arr.target - 1)]);
    const auto cols = static_cast<std::size_t>(x.dims[static_cast<std::size_t>(arr.source - 1)]);
    if (x.maps[a].rows() != rows || x.maps[a].cols() != cols)
      throw domain_error("map shape mismatch on arrow " + std::to_string(arr.source) + "->" + std::to_string(arr.target));
  }
}

// I_{p,q} with 1x1 identity maps inside the interval.
inline FFRep thin_rep(const Quiver& q, IntervalRep rep, std::uint64_t prime) {
  ff::require_prime(prime);
  FFRep x{prime, dimension_vector(rep, q.size()), {}};
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow arr = q.arrow(a);
    const auto rows = static_cast<std::size_t>(x.dims[static_cast<std::size_t>(arr.target - 1)]);
    const auto cols = static_cast<std::size_t>(x.dims[static_cast<std::size_t>(arr.source - 1)]);
    x.maps.push_back(rows == 1 && cols == 1 ? ff::Matrix::identity(1) : ff::Matrix(rows, cols));
  }
  return x;
}

inline FFRep random_rep(const Quiver& q, const DimensionVector& d, std::uint64_t prime, std::mt19937_64& rng) {
  ff::require_prime(prime);
  if (d.size() != static_cast<std::size_t>(q.size())) throw domain_error("dimension vector length mismatch");
  FFRep x{prime, d, {}};
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow arr = q.arrow(a);
    x.maps.push_back(ff::random_matrix(static_cast<std::size_t>(d[static_cast<std::size_t>(arr.target - 1)]),
                                       static_cast<std::size_t>(d[static_cast<std::size_t>(arr.source - 1)]), prime, rng));
  }
  return x;
}

inline FFRep random_rep(const Quiver& q, const DimensionVector& d, std::uint64_t prime, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_rep(q, d, prime, rng);
}

// ---------------------------------------------------------------------------
// Base change

// One invertible block per vertex.
using GroupElement = std::vector<ff::Matrix>;

inline GroupElement random_group_element(const DimensionVector& d, std::uint64_t prime, std::mt19937_64& rng) {
  GroupElement g;
  for (auto di : d) g.push_back(ff::random_invertible(static_cast<std::size_t>(di), prime, rng));
  return g;
}

inline GroupElement group_inverse(const GroupElement& g, std::uint64_t prime) {
  GroupElement out;
  for (const auto& block : g) out.push_back(ff::inverse(block, prime));
  return out;
}

// (g.X)_a = g_{t(a)} X_a g_{s(a)}^{-1}
inline FFRep apply_group(const Quiver& q, const GroupElement& g, const FFRep& x) {
  validate(q, x);
  if (g.size() != x.dims.size()) throw domain_error("group element needs one block per vertex");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i].rows() != static_cast<std::size_t>(x.dims[i]) || g[i].cols() != static_cast<std::size_t>(x.dims[i]))
      throw domain_error("group block shape mismatch at vertex " + std::to_string(i + 1));
  const GroupElement g_inv = group_inverse(g, x.prime);  // throws on singular blocks
  FFRep out{x.prime, x.dims, {}};
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow arr = q.arrow(a);
    const auto s = static_cast<std::size_t>(arr.source - 1);
    const auto t = static_cast<std::size_t>(arr.target - 1);
    out.maps.push_back(ff::multiply(ff::multiply(g[t], x.maps[a], x.prime), g_inv[s], x.prime));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subspaces and subrepresentations

namespace detail {

inline void require_oracle_size(std::int64_t dim, std::uint64_t prime) {
  if (dim > 4 || prime > 3)
    throw resource_limit_error("exhaustive subspace enumeration limited to dim <= 4 and p <= 3 (got dim " +
                               std::to_string(dim) + ", p " + std::to_string(prime) + ")");
}

}  // namespace detail

// Every subspace of F_p^dim as a reduced row echelon basis (k x dim).
inline std::vector<ff::Matrix> enumerate_subspaces(std::int64_t dim, std::uint64_t prime) {
  if (dim < 0) throw domain_error("negative dimension");
  ff::require_prime(prime);
  detail::require_oracle_size(dim, prime);
  const auto n = static_cast<std::size_t>(dim);
  std::vector<ff::Matrix> out;
  for (std::size_t k = 0; k <= n; ++k) {
    // pivot column sets of size k, as bitmasks in ascending order
    for (std::uint32_t pivmask = 0; pivmask < (1U << n); ++pivmask) {
      if (static_cast<std::size_t>(std::popcount(pivmask)) != k) continue;
      std::vector<std::size_t> pivots;
      for (std::size_t c = 0; c < n; ++c)
        if (pivmask & (1U << c)) pivots.push_back(c);
      // free slots: row r, column c > pivots[r], c not a pivot column
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = pivots[r] + 1; c < n; ++c)
          if (!(pivmask & (1U << c))) free.emplace_back(r, c);
      std::vector<ff::Elem> values(free.size(), 0);
      while (true) {
        ff::Matrix m(k, n);
        for (std::size_t r = 0; r < k; ++r) m(r, pivots[r]) = 1;
        for (std::size_t f = 0; f < free.size(); ++f) m(free[f].first, free[f].second) = values[f];
        out.push_back(std::move(m));
        std::size_t f = free.size();
        while (f > 0 && values[f - 1] == prime - 1) values[--f] = 0;
        if (f == 0) break;
        ++values[f - 1];
      }
    }
  }
  return out;
}

namespace detail {

// Basis rows of `sub` (k x ds) pushed through `map` (dt x ds) land in the row
// space of `target` (m x dt).
inline bool image_contained(const ff::Matrix& sub, const ff::Matrix& map, const ff::Matrix& target, std::uint64_t p) {
  if (sub.rows() == 0) return true;
  const ff::Matrix image = ff::multiply(sub, map.transpose(), p);  // k x dt
  if (image.is_zero()) return true;
  if (target.rows() == 0) return false;
  return ff::rank(ff::stack(target, image), p) == target.rows();
}

}  // namespace detail

// Dimension vectors of all subrepresentations (U_i subset X_i with
// X_a(U_s) subset U_t), by dynamic programming along the line.
inline std::set<DimensionVector> subrep_dimension_vectors(const FFRep& x, const Quiver& q) {
  validate(q, x);
  for (auto d : x.dims) detail::require_oracle_size(d, x.prime);
  const int n = q.size();
  std::vector<std::vector<ff::Matrix>> spaces;
  for (auto d : x.dims) spaces.push_back(enumerate_subspaces(d, x.prime));

  // state: chosen subspace index at the current vertex -> reachable prefixes
  std::map<std::size_t, std::set<DimensionVector>> frontier;
  for (std::size_t s = 0; s < spaces[0].size(); ++s)
    frontier[s].insert(DimensionVector{static_cast<std::int64_t>(spaces[0][s].rows())});

  for (int v = 2; v <= n; ++v) {
    const std::size_t a = static_cast<std::size_t>(v - 2);
    const Arrow arr = q.arrow(a);
    const auto& prev_spaces = spaces[static_cast<std::size_t>(v - 2)];
    const auto& cur_spaces = spaces[static_cast<std::size_t>(v - 1)];
    std::map<std::size_t, std::set<DimensionVector>> next;
    for (const auto& [prev_idx, prefixes] : frontier) {
      const ff::Matrix& u_prev = prev_spaces[prev_idx];
      for (std::size_t cur = 0; cur < cur_spaces.size(); ++cur) {
        const ff::Matrix& u_cur = cur_spaces[cur];
        const bool ok = arr.source == v - 1 ? detail::image_contained(u_prev, x.maps[a], u_cur, x.prime)
                                            : detail::image_contained(u_cur, x.maps[a], u_prev, x.prime);
        if (!ok) continue;
        auto& bucket = next[cur];
        for (const auto& prefix : prefixes) {
          DimensionVector extended = prefix;
          extended.push_back(static_cast<std::int64_t>(u_cur.rows()));
          bucket.insert(std::move(extended));
        }
      }
    }
    frontier = std::move(next);
  }

  std::set<DimensionVector> out;
  for (const auto& [idx, prefixes] : frontier) out.insert(prefixes.begin(), prefixes.end());
  return out;
}

inline bool is_stable_ff(const FFRep& x, const Quiver& q, const WeightSystem& w) {
  if (rank_of(x.dims) <= 0) throw domain_error("stability needs a non-zero representation");
  const DimensionVector zero(x.dims.size(), 0);
  for (const DimensionVector& d : subrep_dimension_vectors(x, q)) {
    if (d == zero || d == x.dims) continue;
    if (slope_cmp(w, d, x.dims) != std::strong_ordering::less) return false;
  }
  return true;
}

}  // namespace quiverstab
