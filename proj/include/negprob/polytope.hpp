#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "negprob/scenario.hpp"

namespace negprob {

// Collins-Gisin coordinates of a bipartite binary-outcome behavior:
// p(a=0|x) for each x, then p(b=0|y) for each y, then p(a=0,b=0|x,y) with
// x major.
struct CGVector {
  int nx = 0;
  int ny = 0;
  std::vector<Rational> values;

  std::size_t dim() const { return values.size(); }
  bool operator==(const CGVector&) const = default;
};

// to_cg throws ValidationError on a signalling behavior or a scenario that
// is not bipartite binary.
CGVector to_cg(const Behavior& behavior);
Behavior from_cg(const CGVector& cg);

// coeffs . v + offset >= 0
struct Inequality {
  std::vector<Rational> coeffs;
  Rational offset;
};

struct HRep {
  std::size_t dim = 0;
  std::vector<Inequality> rows;
};

// Nonnegativity of every P(a,b|x,y) in CG coordinates, ordered by (x, y)
// then (a, b).
HRep ns_hrep(const Scenario& scenario);

bool satisfies(const HRep& hrep, std::span<const Rational> point);
// Tight inequalities at `point` span the full dimension.
bool is_extremal(const HRep& hrep, std::span<const Rational> point);

// Extreme points of a bounded polyhedron by the double description method
// over exact integers, sorted lexicographically. Throws ValidationError if the
// polyhedron is unbounded or empty.
std::vector<std::vector<Rational>> enumerate_vertices(const HRep& hrep);

// Vertices of the no-signalling polytope of a bipartite binary scenario.
std::vector<Behavior> ns_vertices(const Scenario& scenario);

struct VertexClassification {
  std::map<Rational, std::uint64_t> counts;
  std::uint64_t total = 0;
  // Filled only when requested.
  std::vector<Behavior> vertices;
  std::vector<Rational> masses;

  Rational max_value() const { return counts.empty() ? Rational(0) : counts.rbegin()->first; }
};

// min_mass for each behavior, histogrammed by exact M*. With jobs > 1 the
// work is split across threads; the result does not depend on jobs.
VertexClassification classify_vertices(std::span<const Behavior> vertices, bool keep = false, unsigned jobs = 1);

}  // namespace negprob
