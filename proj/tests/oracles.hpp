#pragma once

// Independent oracles used only by tests.  These deliberately take the
// slow, obviously-correct route so they can certify the fast paths in the
// library without sharing code with them.

#include <vector>

#include "crystalca/bethe.hpp"

namespace cca::oracles {

// Cofactor (Laplace) expansion along the first row.
inline BigInt cofactor_det(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BigInt total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<BigInt>> minor(n - 1, std::vector<BigInt>(n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == c) continue;
        minor[r - 1][cc++] = m[r][k];
      }
    }
    const BigInt term = m[0][c] * cofactor_det(minor);
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

}  // namespace cca::oracles
