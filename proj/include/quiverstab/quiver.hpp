#pragma once

// Orientations of the A_n line diagram: vertices, arrows, vertex types,
// interval (thin indecomposable) representations and the Gabriel-root oracle.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quiverstab/errors.hpp"

namespace quiverstab {

// Direction of the edge between vertices i and i+1.
//   Right: i -> i+1      Left: i <- i+1
enum class Direction : std::uint8_t { Right, Left };

// I: source, II: sink, III: through-vertex along the reference direction,
// IV: through-vertex against it.
enum class VertexType : std::uint8_t { I, II, III, IV };

inline const char* to_string(VertexType t) {
  switch (t) {
    case VertexType::I: return "I";
    case VertexType::II: return "II";
    case VertexType::III: return "III";
    case VertexType::IV: return "IV";
  }
  return "?";
}

using DimensionVector = std::vector<std::int64_t>;

struct Arrow {
  int source;  // 1-based
  int target;
};

class Quiver {
public:
  Quiver() = default;
  explicit Quiver(std::vector<Direction> orientation) : orientation_(std::move(orientation)) {}

  // Orientation word over {R,L}; '>' and '<' are accepted as aliases.
  static Quiver parse(std::string_view word) {
    std::vector<Direction> dirs;
    dirs.reserve(word.size());
    for (std::size_t k = 0; k < word.size(); ++k) {
      switch (word[k]) {
        case 'R':
        case '>': dirs.push_back(Direction::Right); break;
        case 'L':
        case '<': dirs.push_back(Direction::Left); break;
        default:
          throw parse_error(k + 1, "invalid orientation symbol '" + std::string(1, word[k]) +
                                       "' at position " + std::to_string(k + 1) +
                                       " (expected R, L, > or <)");
      }
    }
    return Quiver(std::move(dirs));
  }

  int size() const noexcept { return static_cast<int>(orientation_.size()) + 1; }
  std::size_t arrow_count() const noexcept { return orientation_.size(); }
  const std::vector<Direction>& orientation() const noexcept { return orientation_; }

  // Arrow a (0-based) joins vertices a+1 and a+2.
  Arrow arrow(std::size_t a) const {
    const int left = static_cast<int>(a) + 1;
    return orientation_[a] == Direction::Right ? Arrow{left, left + 1} : Arrow{left + 1, left};
  }

  std::vector<Arrow> arrows() const {
    std::vector<Arrow> out;
    out.reserve(arrow_count());
    for (std::size_t a = 0; a < arrow_count(); ++a) out.push_back(arrow(a));
    return out;
  }

  std::string word() const {
    std::string w;
    w.reserve(orientation_.size());
    for (auto d : orientation_) w.push_back(d == Direction::Right ? 'R' : 'L');
    return w;
  }

  // Every arrow flipped.
  Quiver opposite() const {
    std::vector<Direction> dirs(orientation_);
    for (auto& d : dirs) d = d == Direction::Right ? Direction::Left : Direction::Right;
    return Quiver(std::move(dirs));
  }

  // The same quiver relabeled by i -> n+1-i.
  Quiver reversed() const {
    std::vector<Direction> dirs(orientation_.rbegin(), orientation_.rend());
    for (auto& d : dirs) d = d == Direction::Right ? Direction::Left : Direction::Right;
    return Quiver(std::move(dirs));
  }

  bool operator==(const Quiver&) const = default;

private:
  std::vector<Direction> orientation_;
};

inline Quiver parse_quiver(std::string_view word) { return Quiver::parse(word); }

// All 2^(n-1) orientations of A_n in lexicographic word order (L < R).
inline std::vector<Quiver> all_orientations(int n) {
  if (n < 1) throw domain_error("n must be at least 1");
  if (n > 40) throw resource_limit_error("refusing to enumerate 2^(n-1) orientations for n > 40");
  const std::size_t edges = static_cast<std::size_t>(n - 1);
  std::vector<Quiver> out;
  out.reserve(std::size_t{1} << edges);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << edges); ++code) {
    std::vector<Direction> dirs(edges);
    for (std::size_t k = 0; k < edges; ++k) {
      // Most significant bit first, so codes ascend in word order.
      const bool right = (code >> (edges - 1 - k)) & 1U;
      dirs[k] = right ? Direction::Right : Direction::Left;
    }
    out.emplace_back(std::move(dirs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertex subsets

// Set of vertex labels 1..64 stored as a bitmask (bit v-1 for vertex v).
class VertexSet {
public:
  static constexpr int kMaxVertices = 64;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t mask) : mask_(mask) {}

  static VertexSet interval(int p, int q) {
    check_label(p);
    check_label(q);
    VertexSet s;
    for (int v = p; v <= q; ++v) s.insert(v);
    return s;
  }

  static VertexSet of(std::initializer_list<int> vertices) {
    VertexSet s;
    for (int v : vertices) s.insert(v);
    return s;
  }

  static VertexSet of(std::span<const int> vertices) {
    VertexSet s;
    for (int v : vertices) s.insert(v);
    return s;
  }

  void insert(int v) {
    check_label(v);
    mask_ |= bit(v);
  }
  bool contains(int v) const noexcept {
    return v >= 1 && v <= kMaxVertices && (mask_ & bit(v)) != 0;
  }
  bool empty() const noexcept { return mask_ == 0; }
  int size() const noexcept { return std::popcount(mask_); }
  std::uint64_t mask() const noexcept { return mask_; }
  int min() const noexcept { return empty() ? 0 : std::countr_zero(mask_) + 1; }
  int max() const noexcept { return empty() ? 0 : kMaxVertices - std::countl_zero(mask_); }

  bool is_subset_of(VertexSet other) const noexcept { return (mask_ & ~other.mask_) == 0; }

  std::vector<int> vertices() const {
    std::vector<int> out;
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  // Maximal runs of consecutive labels, in increasing order.
  std::vector<VertexSet> components() const {
    std::vector<VertexSet> out;
    std::uint64_t m = mask_;
    while (m != 0) {
      const int lo = std::countr_zero(m);
      const std::uint64_t shifted = m >> lo;
      const int len = std::countr_one(shifted);
      const std::uint64_t run = (len == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1)) << lo;
      out.emplace_back(run);
      m &= ~run;
    }
    return out;
  }

  bool is_contiguous() const noexcept {
    if (empty()) return false;
    const std::uint64_t shifted = mask_ >> std::countr_zero(mask_);
    return (shifted & (shifted + 1)) == 0;
  }

  DimensionVector indicator(int n) const {
    DimensionVector d(static_cast<std::size_t>(n), 0);
    for (int v : vertices()) {
      if (v > n) throw domain_error("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
      d[static_cast<std::size_t>(v - 1)] = 1;
    }
    return d;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int v : vertices()) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    }
    return s + "}";
  }

  friend VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.mask_ | b.mask_); }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.mask_ & b.mask_); }
  bool operator==(const VertexSet&) const = default;
  auto operator<=>(const VertexSet&) const = default;

private:
  static void check_label(int v) {
    if (v < 1 || v > kMaxVertices)
      throw domain_error("vertex label " + std::to_string(v) + " outside 1.." + std::to_string(kMaxVertices));
  }
  static constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << (v - 1); }

  std::uint64_t mask_ = 0;
};

// ---------------------------------------------------------------------------
// Vertex classification

struct VertexContext {
  int index;  // 1-based label
  VertexType vtype;
  int l;  // vertices strictly left
  int r;  // vertices strictly right
};

inline VertexType vertex_type(const Quiver& q, int i) {
  const int n = q.size();
  const auto& o = q.orientation();
  // Incident edges: left edge (i-1,i) and right edge (i,i+1).
  const bool has_left = i > 1;
  const bool has_right = i < n;
  if (!has_left && !has_right) return VertexType::I;  // isolated vertex, by convention
  const bool left_in = has_left && o[static_cast<std::size_t>(i - 2)] == Direction::Right;
  const bool right_out = has_right && o[static_cast<std::size_t>(i - 1)] == Direction::Right;
  if (!has_left) return right_out ? VertexType::I : VertexType::II;
  if (!has_right) return left_in ? VertexType::II : VertexType::I;
  if (!left_in && right_out) return VertexType::I;
  if (left_in && !right_out) return VertexType::II;
  return left_in ? VertexType::III : VertexType::IV;
}

inline std::vector<VertexContext> classify_vertices(const Quiver& q) {
  const int n = q.size();
  std::vector<VertexContext> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out.push_back({i, vertex_type(q, i), i - 1, n - i});
  return out;
}

// ---------------------------------------------------------------------------
// Interval representations I_{p,q}

struct IntervalRep {
  int p;
  int q;

  bool valid_in(int n) const noexcept { return 1 <= p && p <= q && q <= n; }
  int length() const noexcept { return q - p + 1; }
  bool contains(int v) const noexcept { return p <= v && v <= q; }
  VertexSet support() const { return VertexSet::interval(p, q); }

  bool operator==(const IntervalRep&) const = default;
  auto operator<=>(const IntervalRep&) const = default;
};

inline void require_interval(IntervalRep rep, int n) {
  if (!rep.valid_in(n))
    throw domain_error("interval I_{" + std::to_string(rep.p) + "," + std::to_string(rep.q) +
                       "} invalid for n=" + std::to_string(n));
}

inline DimensionVector dimension_vector(IntervalRep rep, int n) {
  require_interval(rep, n);
  DimensionVector d(static_cast<std::size_t>(n), 0);
  for (int v = rep.p; v <= rep.q; ++v) d[static_cast<std::size_t>(v - 1)] = 1;
  return d;
}

inline std::vector<IntervalRep> enumerate_indecomposables(int n) {
  std::vector<IntervalRep> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2);
  for (int p = 1; p <= n; ++p)
    for (int q = p; q <= n; ++q) out.push_back({p, q});
  return out;
}

inline std::vector<IntervalRep> enumerate_indecomposables(const Quiver& q) {
  return enumerate_indecomposables(q.size());
}

// A thin representation is indecomposable iff its support quiver is connected;
// in A_n that means a non-empty run of consecutive labels.
inline bool is_indecomposable_thin(const Quiver& q, VertexSet support) {
  if (support.max() > q.size()) throw domain_error("support exceeds the quiver");
  return support.is_contiguous();
}

// S is arrow-closed inside `ambient` when no arrow with both ends in
// `ambient` starts in S and ends outside S.
inline bool is_arrow_closed(const Quiver& q, VertexSet s, VertexSet ambient) {
  if (q.size() > VertexSet::kMaxVertices) throw domain_error("subset operations support n <= 64");
  // bit e-1 marks the edge between e and e+1
  std::uint64_t right = 0;
  std::uint64_t left = 0;
  for (std::size_t e = 0; e < q.arrow_count(); ++e)
    (q.orientation()[e] == Direction::Right ? right : left) |= std::uint64_t{1} << e;
  const std::uint64_t inner = ambient.mask() & (ambient.mask() >> 1);
  const std::uint64_t sm = s.mask();
  const std::uint64_t forward_escape = sm & ~(sm >> 1) & right & inner;   // e in S, e+1 not
  const std::uint64_t backward_escape = (sm >> 1) & ~sm & left & inner;  // e+1 in S, e not
  return (forward_escape | backward_escape) == 0;
}

// ---------------------------------------------------------------------------
// Tits form and positive roots

inline std::int64_t quadratic_form(const Quiver& q, std::span<const std::int64_t> d) {
  if (d.size() != static_cast<std::size_t>(q.size())) throw domain_error("dimension vector length mismatch");
  std::int64_t value = 0;
  for (auto x : d) value += x * x;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow arr = q.arrow(a);
    value -= d[static_cast<std::size_t>(arr.source - 1)] * d[static_cast<std::size_t>(arr.target - 1)];
  }
  return value;
}

// All non-zero d with entries in {0..bound} and q_Q(d) = 1, in ascending
// lexicographic order of entries.
inline std::vector<DimensionVector> positive_roots_bruteforce(const Quiver& q, int bound = 1) {
  const int n = q.size();
  if (bound < 1) throw domain_error("bound must be positive");
  double total = 1;
  for (int i = 0; i < n; ++i) total *= bound + 1;
  if (total > 5e7) throw resource_limit_error("root search space too large");
  std::vector<DimensionVector> roots;
  DimensionVector d(static_cast<std::size_t>(n), 0);
  while (true) {
    // odometer, last coordinate fastest
    int k = n - 1;
    while (k >= 0 && d[static_cast<std::size_t>(k)] == bound) d[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
    ++d[static_cast<std::size_t>(k)];
    if (quadratic_form(q, d) == 1) roots.push_back(d);
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Graphviz output

inline std::string to_dot(const Quiver& q, VertexSet highlight = {}) {
  std::ostringstream os;
  os << "digraph Q {\n  rankdir=LR;\n";
  for (int i = 1; i <= q.size(); ++i) {
    os << "  " << i;
    if (highlight.contains(i)) os << " [style=filled, fillcolor=lightgray]";
    os << ";\n";
  }
  for (const Arrow& a : q.arrows()) os << "  " << a.source << " -> " << a.target << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace quiverstab
