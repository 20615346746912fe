#pragma once

// Independent reference implementations. They work from the raw orientation
// word and plain loops, and share no code paths with the library beyond the
// value types used to hand results back.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;

// Arrow on edge k (0-based, joining vertices k+1 and k+2) as (source, target).
inline std::pair<int, int> edge(const std::string& word, std::size_t k) {
  const int a = static_cast<int>(k) + 1;
  return word[k] == 'R' ? std::pair{a, a + 1} : std::pair{a + 1, a};
}

inline std::vector<std::pair<int, int>> arrows(const std::string& word) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t k = 0; k < word.size(); ++k) out.push_back(edge(word, k));
  return out;
}

// "I", "II", "III", "IV" from in/out degrees and the direction of travel.
inline std::vector<std::string> types(const std::string& word) {
  const int n = static_cast<int>(word.size()) + 1;
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) {
    int in = 0, out_deg = 0;
    bool from_left = false, to_right = false;
    for (auto [s, t] : arrows(word)) {
      if (s == i) {
        ++out_deg;
        if (t == i + 1) to_right = true;
      }
      if (t == i) {
        ++in;
        if (s == i - 1) from_left = true;
      }
    }
    if (in == 0) out.push_back("I");
    else if (out_deg == 0) out.push_back("II");
    else out.push_back(from_left && to_right ? "III" : "IV");
  }
  return out;
}

// theta_i = sum over intervals [a,b] containing i of outdeg - indeg inside [a,b].
inline Vec intrinsic(const std::string& word) {
  const int n = static_cast<int>(word.size()) + 1;
  Vec theta(static_cast<std::size_t>(n), 0);
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      for (auto [s, t] : arrows(word))
        if (a <= std::min(s, t) && std::max(s, t) <= b) {
          ++theta[static_cast<std::size_t>(s - 1)];
          --theta[static_cast<std::size_t>(t - 1)];
        }
  return theta;
}

// Subsets of [p,q] (bit v-1 for vertex v) that no arrow inside [p,q] leaves.
inline std::vector<std::uint64_t> closed_subsets(const std::string& word, int p, int q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t local = 0; local < (std::uint64_t{1} << (q - p + 1)); ++local) {
    const std::uint64_t s = local << (p - 1);
    bool closed = true;
    for (auto [src, tgt] : arrows(word)) {
      const bool inside = p <= std::min(src, tgt) && std::max(src, tgt) <= q;
      if (inside && (s >> (src - 1) & 1U) && !(s >> (tgt - 1) & 1U)) closed = false;
    }
    if (closed) out.push_back(s);
  }
  return out;
}

inline Vec indicator(std::uint64_t mask, int n) {
  Vec d(static_cast<std::size_t>(n), 0);
  for (int v = 1; v <= n; ++v) d[static_cast<std::size_t>(v - 1)] = (mask >> (v - 1)) & 1U;
  return d;
}

__extension__ typedef __int128 Wide;

inline Wide dot(const Vec& a, const Vec& b) {
  Wide s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<Wide>(a[i]) * b[i];
  return s;
}

inline Wide total(const Vec& d) {
  Wide s = 0;
  for (auto x : d) s += x;
  return s;
}

// Slope-stability of the thin interval [p,q], by direct 128-bit arithmetic.
inline bool stable(const std::string& word, const Vec& theta, int p, int q, bool strict = true) {
  const int n = static_cast<int>(word.size()) + 1;
  const std::uint64_t full = ((std::uint64_t{1} << (q - p + 1)) - 1) << (p - 1);
  const Vec dx = indicator(full, n);
  for (std::uint64_t s : closed_subsets(word, p, q)) {
    if (s == 0 || s == full) continue;
    const Vec ds = indicator(s, n);
    const Wide lhs = dot(theta, ds) * total(dx);
    const Wide rhs = dot(theta, dx) * total(ds);
    if (strict ? lhs >= rhs : lhs > rhs) return false;
  }
  return true;
}

inline bool all_stable(const std::string& word, const Vec& theta) {
  const int n = static_cast<int>(word.size()) + 1;
  for (int p = 1; p <= n; ++p)
    for (int q = p; q <= n; ++q)
      if (!stable(word, theta, p, q)) return false;
  return true;
}

inline std::int64_t euler(const std::string& word, const Vec& dx, const Vec& dy) {
  std::int64_t v = 0;
  for (std::size_t i = 0; i < dx.size(); ++i) v += dx[i] * dy[i];
  for (auto [s, t] : arrows(word)) v -= dx[static_cast<std::size_t>(s - 1)] * dy[static_cast<std::size_t>(t - 1)];
  return v;
}

// ---------------------------------------------------------------------------
// Linear algebra mod p, kept separate from the library's elimination.

using Mat = std::vector<std::vector<std::uint64_t>>;

inline std::uint64_t power(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (b %= p; e; e >>= 1, b = b * b % p)
    if (e & 1U) r = r * b % p;
  return r;
}

inline std::size_t rank_mod(Mat m, std::uint64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t inv = power(m[rank][c], p - 2, p);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const std::uint64_t f = m[r][c] * inv % p;
      for (std::size_t k = c; k < cols; ++k) m[r][k] = (m[r][k] + p - f * m[rank][k] % p) % p;
    }
    ++rank;
  }
  return rank;
}

// dim Hom(X,Y) for representations given as per-arrow dense matrices
// (rows = dim at target). Unknowns are the entries of f_i : X_i -> Y_i,
// indexed by (vertex, row of Y_i, column of X_i); each arrow contributes
// the scalar equations (f_t X_a - Y_a f_s)[r][c] = 0.
inline std::size_t hom_dimension(const std::string& word, const Vec& dx, const Vec& dy, const std::vector<Mat>& xa,
                                 const std::vector<Mat>& ya, std::uint64_t p) {
  const std::size_t n = dx.size();
  std::vector<std::size_t> base(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) base[i + 1] = base[i] + static_cast<std::size_t>(dy[i] * dx[i]);
  const std::size_t unknowns = base[n];
  auto var = [&](std::size_t v, std::size_t r, std::size_t c) { return base[v] + r * static_cast<std::size_t>(dx[v]) + c; };
  Mat eqs;
  const auto arr = arrows(word);
  for (std::size_t a = 0; a < arr.size(); ++a) {
    const auto s = static_cast<std::size_t>(arr[a].first - 1);
    const auto t = static_cast<std::size_t>(arr[a].second - 1);
    for (std::size_t r = 0; r < static_cast<std::size_t>(dy[t]); ++r)
      for (std::size_t c = 0; c < static_cast<std::size_t>(dx[s]); ++c) {
        std::vector<std::uint64_t> row(unknowns, 0);
        for (std::size_t k = 0; k < static_cast<std::size_t>(dx[t]); ++k)  // (f_t X_a)[r][c]
          row[var(t, r, k)] = (row[var(t, r, k)] + xa[a][k][c]) % p;
        for (std::size_t k = 0; k < static_cast<std::size_t>(dy[s]); ++k)  // (Y_a f_s)[r][c]
          row[var(s, k, c)] = (row[var(s, k, c)] + p - ya[a][r][k]) % p;
        eqs.push_back(std::move(row));
      }
  }
  return unknowns - (eqs.empty() ? 0 : rank_mod(eqs, p));
}

// Any integer point of [-bound, bound]^n with every form strictly positive?
inline bool box_has_strict_point(const std::vector<Vec>& forms, int n, int bound) {
  Vec x(static_cast<std::size_t>(n), -bound);
  while (true) {
    bool ok = true;
    for (const Vec& f : forms)
      if (dot(f, x) <= 0) {
        ok = false;
        break;
      }
    if (ok) return true;
    int k = n - 1;
    while (k >= 0 && x[static_cast<std::size_t>(k)] == bound) x[static_cast<std::size_t>(k--)] = -bound;
    if (k < 0) return false;
    ++x[static_cast<std::size_t>(k)];
  }
}

inline std::vector<std::string> words(int n) {
  std::vector<std::string> out{""};
  for (int k = 1; k < n; ++k) {
    std::vector<std::string> next;
    for (const auto& w : out) {
      next.push_back(w + "L");
      next.push_back(w + "R");
    }
    out = std::move(next);
  }
  return out;
}

inline Vec random_vec(std::mt19937_64& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Vec v(static_cast<std::size_t>(n));
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace oracle
