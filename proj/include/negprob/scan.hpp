#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "negprob/polytope.hpp"
#include "negprob/sign_matrix.hpp"

namespace negprob {

enum class ScanMode { Full, Symmetry, Sample };

const char* to_string(ScanMode mode);
ScanMode parse_scan_mode(const std::string& text);

// Progress of a scan after `cursor` work items.
struct ScanCheckpoint {
  int n = 0;
  ScanMode mode = ScanMode::Full;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::uint64_t cursor = 0;
  std::uint64_t total_items = 0;
  std::map<Rational, std::uint64_t> counts;
  // Best value so far and the first item reaching it.
  Rational best = 0;
  std::uint64_t best_bits = 0;
  // N >= 5 with Certify::Maxima: items left at their floating-point value.
  std::uint64_t uncertified = 0;
  double uncertified_max = 0;
};

// Which N >= 5 boxes get an exact M*. All: every box. Maxima: boxes whose
// screened value could raise the running maximum, plus boxes whose screened
// value matches an already certified class.
enum class Certify { All, Maxima };

struct ScanOptions {
  ScanMode mode = ScanMode::Full;
  // Sample mode: number of random sign matrices. Symmetry mode with N >= 5:
  // number of distinct orbit representatives to visit.
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  Certify certify = Certify::Maxima;
  std::uint64_t checkpoint_every = 4096;
  std::function<void(const ScanCheckpoint&)> on_checkpoint;
  std::optional<ScanCheckpoint> resume;
  // Called once per classified work item, in item order.
  std::function<void(const SignMatrix&, std::uint64_t weight, const Rational& m_star)> on_item;
};

struct ScanResult {
  VertexClassification classification;
  std::uint64_t items = 0;
  // Counts cover every box (full, or symmetry with N <= 4 where orbit sizes
  // weight each representative). Otherwise counts are per visited item.
  bool exhaustive = false;
  SignMatrix argmax{1, 0};
  // N >= 5: items whose class was assigned from the floating-point screen
  // against an exactly certified class value.
  std::uint64_t screened = 0;
  // N >= 5: items not in the classification (see Certify::Maxima) and the
  // largest screened value among them.
  std::uint64_t uncertified = 0;
  double uncertified_max = 0;
};

// Classifies correlation_box(c) by M* over a sweep of N x N sign matrices.
//
// Full: all 2^{N^2} matrices (N <= 4). Symmetry: one representative per orbit
// under row/column permutations and sign flips; exact orbits with sizes for
// N <= 4, and for N >= 5 a seeded search over PR_N variants and random
// matrices, deduplicated by orbit invariants. Sample: `count` seeded random
// matrices.
//
// For N <= 4 each M* comes from the exact solver. For N >= 5 every box goes
// through a floating-point screen first and the certify policy decides which
// ones are solved exactly. The decision is made in item order, so results do
// not depend on `jobs`.
ScanResult nn22_scan(int n, const ScanOptions& options);

// class_mass_num,class_mass_den,count[,decimal]
std::string format_scan_csv(const std::map<Rational, std::uint64_t>& counts, int decimals = -1);

void write_checkpoint(std::ostream& out, const ScanCheckpoint& checkpoint);
// Throws ParseError.
ScanCheckpoint read_checkpoint(std::istream& in);

}  // namespace negprob
