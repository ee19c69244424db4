#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace negprob {

// N x N matrix with entries in {+1, -1}, N <= 8. Stored as a bitmask in
// row-major order (bit x*N + y set means entry (x, y) is -1).
class SignMatrix {
 public:
  SignMatrix(int n, std::uint64_t bits);

  static std::uint64_t entry_count(int n) { return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n); }

  int n() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int at(int x, int y) const { return ((bits_ >> (x * n_ + y)) & 1u) ? -1 : 1; }

  // Rank one over +-1, i.e. c_xy = u_x v_y. These are exactly the matrices of
  // local correlation boxes.
  bool rank_one() const;

  // Flip rows then columns so the first column and first row are all +1.
  SignMatrix normalized() const;
  bool is_normalized() const;

  // Smallest normalized bitmask over all row and column permutations.
  // Cost (N!)^2 N^2; used for N <= 5.
  SignMatrix canonical() const;

  // Permutation- and sign-invariant fingerprint. Equal for matrices in the
  // same orbit; distinct fingerprints imply distinct orbits.
  std::vector<std::uint32_t> invariant() const;

  std::string to_string() const;

  bool operator==(const SignMatrix& other) const = default;

 private:
  int n_;
  std::uint64_t bits_;
};

// Inverse of SignMatrix::to_string ("+-/-+"). Throws ValidationError.
SignMatrix parse_sign_matrix(const std::string& text);

// Orbit representative with the number of sign matrices in its orbit.
struct SignOrbit {
  SignMatrix representative;
  std::uint64_t size;
};

// All orbits of N x N sign matrices under row/column permutations and sign
// flips, in increasing order of canonical bitmask. N <= 4.
std::vector<SignOrbit> sign_orbits(int n);

}  // namespace negprob
