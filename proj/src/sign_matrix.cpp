#include "negprob/sign_matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "negprob/errors.hpp"

namespace negprob {

SignMatrix::SignMatrix(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 1 || n > 8) throw ValidationError("sign matrix size must be between 1 and 8");
  if (n < 8 && (bits >> (n * n)) != 0) throw ValidationError("sign matrix bitmask has bits beyond N*N");
}

bool SignMatrix::rank_one() const {
  // c_xy c_00 == c_x0 c_0y for all x, y
  for (int x = 1; x < n_; ++x)
    for (int y = 1; y < n_; ++y)
      if (at(x, y) * at(0, 0) != at(x, 0) * at(0, y)) return false;
  return true;
}

namespace {

std::uint64_t row_mask(int n) { return (std::uint64_t{1} << n) - 1; }

std::uint64_t column_mask(int n, int y) {
  std::uint64_t m = 0;
  for (int x = 0; x < n; ++x) m |= std::uint64_t{1} << (x * n + y);
  return m;
}

std::uint64_t normalize_bits(int n, std::uint64_t bits) {
  for (int x = 0; x < n; ++x)
    if ((bits >> (x * n)) & 1u) bits ^= row_mask(n) << (x * n);
  for (int y = 1; y < n; ++y)
    if ((bits >> y) & 1u) bits ^= column_mask(n, y);
  return bits;
}

}  // namespace

SignMatrix SignMatrix::normalized() const { return SignMatrix(n_, normalize_bits(n_, bits_)); }

bool SignMatrix::is_normalized() const { return normalize_bits(n_, bits_) == bits_; }

SignMatrix SignMatrix::canonical() const {
  if (n_ > 5) throw ValidationError("exact canonical form supports N <= 5");
  const int n = n_;
  std::vector<int> rp(static_cast<std::size_t>(n)), cp(static_cast<std::size_t>(n));
  std::iota(rp.begin(), rp.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  // Row-permuted rows as bitmasks over columns
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  do {
    for (int x = 0; x < n; ++x) rows[static_cast<std::size_t>(x)] = (bits_ >> (rp[static_cast<std::size_t>(x)] * n)) & row_mask(n);
    std::iota(cp.begin(), cp.end(), 0);
    do {
      std::uint64_t b = 0;
      for (int x = 0; x < n; ++x) {
        std::uint64_t r = 0;
        const std::uint64_t src = rows[static_cast<std::size_t>(x)];
        for (int y = 0; y < n; ++y) r |= ((src >> cp[static_cast<std::size_t>(y)]) & 1u) << y;
        b |= r << (x * n);
      }
      best = std::min(best, normalize_bits(n, b));
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return SignMatrix(n, best);
}

std::vector<std::uint32_t> SignMatrix::invariant() const {
  const int n = n_;
  auto gram = [&](bool rows_side) {
    // |<r_i, r_j>| multiset and sign products over triples
    std::vector<std::vector<int>> g(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int s = 0;
        for (int k = 0; k < n; ++k) s += rows_side ? at(i, k) * at(j, k) : at(k, i) * at(k, j);
        g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
      }
    std::vector<std::uint32_t> pairs, triples, per_line;
    for (int i = 0; i < n; ++i) {
      std::vector<std::uint32_t> mine;
      for (int j = 0; j < n; ++j)
        if (j != i) mine.push_back(static_cast<std::uint32_t>(std::abs(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])));
      std::sort(mine.begin(), mine.end());
      std::uint32_t key = 0;
      for (auto v : mine) key = key * 17u + v;
      per_line.push_back(key);
      for (int j = i + 1; j < n; ++j) {
        pairs.push_back(static_cast<std::uint32_t>(std::abs(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])));
        for (int k = j + 1; k < n; ++k) {
          const long prod = static_cast<long>(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) *
                            g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
          const std::uint32_t code = static_cast<std::uint32_t>(std::abs(prod)) * 2u + (prod < 0 ? 1u : 0u);
          triples.push_back(code);
        }
      }
    }
    std::sort(pairs.begin(), pairs.end());
    std::sort(triples.begin(), triples.end());
    std::sort(per_line.begin(), per_line.end());
    std::vector<std::uint32_t> out;
    out.insert(out.end(), pairs.begin(), pairs.end());
    out.push_back(0xffffffffu);
    out.insert(out.end(), triples.begin(), triples.end());
    out.push_back(0xffffffffu);
    out.insert(out.end(), per_line.begin(), per_line.end());
    return out;
  };
  auto r = gram(true);
  auto c = gram(false);
  // Transposition is not a symmetry of the problem, keep sides ordered.
  r.push_back(0xfffffffeu);
  r.insert(r.end(), c.begin(), c.end());
  return r;
}

std::string SignMatrix::to_string() const {
  std::string s;
  for (int x = 0; x < n_; ++x) {
    if (x) s += '/';
    for (int y = 0; y < n_; ++y) s += at(x, y) > 0 ? '+' : '-';
  }
  return s;
}

SignMatrix parse_sign_matrix(const std::string& text) {
  std::vector<std::string> rows(1);
  for (char ch : text) {
    if (ch == '/')
      rows.emplace_back();
    else if (ch == '+' || ch == '-')
      rows.back() += ch;
    else
      throw ValidationError(std::string("sign matrix: unexpected character '") + ch + "'");
  }
  const int n = static_cast<int>(rows.size());
  if (n < 1 || n > 8) throw ValidationError("sign matrix must have 1 to 8 rows");
  std::uint64_t bits = 0;
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(rows[x].size()) != n) throw ValidationError("sign matrix must be square");
    for (int y = 0; y < n; ++y)
      if (rows[x][y] == '-') bits |= std::uint64_t{1} << (x * n + y);
  }
  return SignMatrix(n, bits);
}

std::vector<SignOrbit> sign_orbits(int n) {
  if (n < 1 || n > 4) throw ValidationError("orbit enumeration supports N <= 4");
  // Normalized matrices: entries outside the first row and column are free.
  std::vector<int> free_pos;
  for (int x = 1; x < n; ++x)
    for (int y = 1; y < n; ++y) free_pos.push_back(x * n + y);
  const std::uint64_t per_normalized = std::uint64_t{1} << (2 * n - 1);
  std::map<std::uint64_t, std::uint64_t> counts;
  const std::uint64_t total = std::uint64_t{1} << free_pos.size();
  for (std::uint64_t f = 0; f < total; ++f) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < free_pos.size(); ++i)
      if ((f >> i) & 1u) bits |= std::uint64_t{1} << free_pos[i];
    counts[SignMatrix(n, bits).canonical().bits()] += per_normalized;
  }
  std::vector<SignOrbit> out;
  for (const auto& [bits, size] : counts) out.push_back({SignMatrix(n, bits), size});
  return out;
}

}  // namespace negprob
