#include "negprob/exact_linalg.hpp"

#include <utility>

namespace negprob {

std::optional<ScaledInverse> scaled_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows;
  IntMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  Integer prev = 1;
  Integer t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(p, j), a(k, j));
    const Integer pivot = a(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Integer factor = a(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        t = pivot * a(i, j) - factor * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = pivot;
  }
  // Left block is now det * I; the right block is the adjugate.
  ScaledInverse out{IntMatrix(n, n), prev};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.adjugate(i, j) = a(i, n + j);
  return out;
}

std::size_t rank(IntMatrix m) {
  std::size_t r = 0;
  Integer prev = 1;
  Integer t;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      for (std::size_t j = c + 1; j < m.cols; ++j) {
        t = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

std::optional<std::vector<Rational>> solve(const IntMatrix& m, const std::vector<Rational>& b) {
  auto inv = scaled_inverse(m);
  if (!inv) return std::nullopt;
  const std::size_t n = m.rows;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (inv->adjugate(i, j) != 0) acc += Rational(inv->adjugate(i, j)) * b[j];
    x[i] = acc / Rational(inv->det);
  }
  return x;
}

std::size_t rank(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Integer lcm = 1;
    for (const auto& v : rows[i]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j].get_num() * (lcm / rows[i][j].get_den());
  }
  return rank(std::move(m));
}

}  // namespace negprob
