#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "logse/errors.hpp"

namespace logse::numerics {

/// Thomas-algorithm factorization of a tridiagonal matrix, reusable across
/// right-hand sides. lower[0] and upper[n-1] are ignored.
template <class T>
class TridiagonalLU {
 public:
  TridiagonalLU(std::span<const T> lower, std::span<const T> diag, std::span<const T> upper)
      : lower_(lower.begin(), lower.end()), c_(diag.size()), inv_d_(diag.size()) {
    const std::size_t n = diag.size();
    detail::require(n > 0 && lower.size() == n && upper.size() == n,
                    "TridiagonalLU: band sizes must match");
    T d = diag[0];
    if (d == T(0)) throw DomainError("TridiagonalLU: zero pivot");
    inv_d_[0] = T(1) / d;
    c_[0] = upper[0] * inv_d_[0];
    for (std::size_t i = 1; i < n; ++i) {
      d = diag[i] - lower[i] * c_[i - 1];
      if (d == T(0)) throw DomainError("TridiagonalLU: zero pivot");
      inv_d_[i] = T(1) / d;
      c_[i] = (i + 1 < n) ? upper[i] * inv_d_[i] : T(0);
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return inv_d_.size(); }

  /// Solve in place; the right-hand side may be of a wider type (real
  /// matrix, complex vector).
  template <class V>
  void solve(std::span<V> x) const {
    const std::size_t n = size();
    detail::require(x.size() == n, "TridiagonalLU: right-hand side has wrong size");
    x[0] *= inv_d_[0];
    for (std::size_t i = 1; i < n; ++i) x[i] = (x[i] - lower_[i] * x[i - 1]) * inv_d_[i];
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c_[i] * x[i + 1];
  }

 private:
  std::vector<T> lower_;
  std::vector<T> c_;
  std::vector<T> inv_d_;
};

template <class T>
std::vector<T> solve_tridiagonal(std::span<const T> lower, std::span<const T> diag,
                                 std::span<const T> upper, std::vector<T> rhs) {
  TridiagonalLU<T>(lower, diag, upper).solve(std::span<T>(rhs));
  return rhs;
}

}  // namespace logse::numerics
