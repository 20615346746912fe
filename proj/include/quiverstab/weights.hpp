#pragma once

// Intrinsic weight system of an A_n orientation, together with the additive
// weight, rank and slope functions it induces.

#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "quiverstab/errors.hpp"
#include "quiverstab/quiver.hpp"

namespace quiverstab {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("64-bit overflow in weight arithmetic");
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("64-bit overflow in weight arithmetic");
  return out;
}

}  // namespace detail

// One integer per vertex, theta_1..theta_n.
struct WeightSystem {
  std::vector<std::int64_t> thetas;

  std::size_t size() const noexcept { return thetas.size(); }
  std::int64_t operator[](int vertex) const { return thetas.at(static_cast<std::size_t>(vertex - 1)); }

  WeightSystem scaled(std::int64_t k) const {
    WeightSystem out{thetas};
    for (auto& t : out.thetas) t = detail::checked_mul(t, k);
    return out;
  }

  bool operator==(const WeightSystem&) const = default;
};

inline std::string format_thetas(const WeightSystem& w) {
  std::string s;
  for (std::size_t i = 0; i < w.thetas.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w.thetas[i]);
  }
  return s;
}

// Closed form by vertex type:
//   I: l+r+2lr   II: -(l+r+2lr)   III: r-l   IV: l-r
inline WeightSystem intrinsic_weights(const Quiver& q) {
  if (q.size() > 10000) throw domain_error("intrinsic weights are only supported for n <= 10000");
  WeightSystem w;
  w.thetas.reserve(static_cast<std::size_t>(q.size()));
  for (const VertexContext& v : classify_vertices(q)) {
    const std::int64_t l = v.l;
    const std::int64_t r = v.r;
    switch (v.vtype) {
      case VertexType::I: w.thetas.push_back(l + r + 2 * l * r); break;
      case VertexType::II: w.thetas.push_back(-(l + r + 2 * l * r)); break;
      case VertexType::III: w.thetas.push_back(r - l); break;
      case VertexType::IV: w.thetas.push_back(l - r); break;
    }
  }
  return w;
}

// Recomputes the intrinsic system as a sum over every connected subquiver
// [a,b] containing i of (#arrows of [a,b] leaving i) - (#arrows entering i).
inline WeightSystem intrinsic_weights_via_subquivers(const Quiver& q) {
  const int n = q.size();
  WeightSystem w{std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)};
  for (int a = 1; a <= n; ++a) {
    for (int b = a; b <= n; ++b) {
      // arrows of the subquiver [a,b] are the edges a..b-1
      for (int e = a; e < b; ++e) {
        const Arrow arr = q.arrow(static_cast<std::size_t>(e - 1));
        ++w.thetas[static_cast<std::size_t>(arr.source - 1)];
        --w.thetas[static_cast<std::size_t>(arr.target - 1)];
      }
    }
  }
  return w;
}

inline std::int64_t weight_of(const WeightSystem& w, std::span<const std::int64_t> d) {
  if (d.size() != w.size())
    throw domain_error("weight system has " + std::to_string(w.size()) + " entries but dimension vector has " +
                       std::to_string(d.size()));
  std::int64_t total = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    total = detail::checked_add(total, detail::checked_mul(w.thetas[i], d[i]));
  return total;
}

inline std::int64_t rank_of(std::span<const std::int64_t> d) {
  std::int64_t total = 0;
  for (auto x : d) total = detail::checked_add(total, x);
  return total;
}

// Exact comparison of w(d1)/r(d1) against w(d2)/r(d2).
inline std::strong_ordering slope_cmp(const WeightSystem& w, std::span<const std::int64_t> d1,
                                      std::span<const std::int64_t> d2) {
  const std::int64_t r1 = rank_of(d1);
  const std::int64_t r2 = rank_of(d2);
  if (r1 <= 0 || r2 <= 0) throw domain_error("slope undefined for rank zero");
  const std::int64_t lhs = detail::checked_mul(weight_of(w, d1), r2);
  const std::int64_t rhs = detail::checked_mul(weight_of(w, d2), r1);
  return lhs <=> rhs;
}

// Sum of intrinsic weights over a connected arrow-closed S = [a,b], from
// the count of connected subquivers that straddle its boundary.
inline std::int64_t closed_subset_weight_value(const Quiver& q, VertexSet s) {
  const int n = q.size();
  if (s.empty() || !s.is_contiguous()) throw domain_error("subset must be a non-empty run of consecutive vertices");
  if (s.max() > n) throw domain_error("subset exceeds the quiver");
  if (!is_arrow_closed(q, s, VertexSet::interval(1, n)))
    throw domain_error("subset " + s.to_string() + " is not arrow-closed");
  const std::int64_t size = s.size();
  const std::int64_t left = s.min() - 1;
  const std::int64_t right = n - s.max();
  return -size * (left + right) - 2 * left * right;
}

}  // namespace quiverstab
