#pragma once

#include <cstdint>
#include <stdexcept>

namespace nsg {

/// Binomial coefficient on 64-bit integers; n up to 66 stays exact.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 66) throw std::overflow_error("binomial: n too large for 64 bits");
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(r);
}

/// Fibonacci numbers with F(1) = F(2) = 1 and F(n) = 0 for n <= 0, the
/// indexing the genus-side counting theorems use.
inline std::uint64_t fibonacci(int n) {
  if (n <= 0) return 0;
  if (n > 92) throw std::overflow_error("fibonacci: n too large for 64 bits");
  std::uint64_t a = 0, b = 1;
  for (int i = 1; i < n; ++i) {
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

}  // namespace nsg
