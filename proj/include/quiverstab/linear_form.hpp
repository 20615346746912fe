#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "quiverstab/errors.hpp"
#include "quiverstab/weights.hpp"

namespace quiverstab {

// Integer linear functional on weight space, gcd-normalized.
struct LinearForm {
  std::vector<std::int64_t> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }

  std::int64_t operator()(const WeightSystem& w) const {
    if (w.size() != coeffs.size()) throw domain_error("linear form / weight system dimension mismatch");
    std::int64_t total = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      total = detail::checked_add(total, detail::checked_mul(coeffs[i], w.thetas[i]));
    return total;
  }

  bool is_zero() const noexcept {
    for (auto c : coeffs)
      if (c != 0) return false;
    return true;
  }

  // Divides by the gcd of the coefficients; the zero form is left alone.
  LinearForm normalized() const {
    std::int64_t g = 0;
    for (auto c : coeffs) g = std::gcd(g, c);
    LinearForm out{coeffs};
    if (g > 1)
      for (auto& c : out.coeffs) c /= g;
    return out;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coeffs[i]);
    }
    return s + ")";
  }

  bool operator==(const LinearForm&) const = default;
  auto operator<=>(const LinearForm&) const = default;
};

}  // namespace quiverstab
