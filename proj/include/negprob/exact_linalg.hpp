#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "negprob/rational.hpp"

namespace negprob {

// Dense row-major integer matrix.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Integer& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Square M with M^{-1} = adjugate / det. `det` is det(M) up to sign; the
// pair is consistent, which is all callers rely on.
struct ScaledInverse {
  IntMatrix adjugate;
  Integer det;
};

// Fraction-free Gauss-Jordan. Returns nullopt when M is singular.
std::optional<ScaledInverse> scaled_inverse(const IntMatrix& m);

// Rank over Q via fraction-free elimination.
std::size_t rank(IntMatrix m);

// Solves M x = b for square nonsingular M, nullopt if singular.
std::optional<std::vector<Rational>> solve(const IntMatrix& m, const std::vector<Rational>& b);

// Rank of a rational matrix given row-wise.
std::size_t rank(const std::vector<std::vector<Rational>>& rows);

}  // namespace negprob
