#include "negprob/polytope.hpp"

#include <algorithm>
#include <thread>

#include "negprob/errors.hpp"
#include "negprob/exact_linalg.hpp"
#include "negprob/mass.hpp"

namespace negprob {

namespace {

void require_bipartite_binary(const Scenario& sc) {
  if (!sc.is_bipartite_binary()) throw ValidationError("expected a bipartite binary-outcome scenario, got " + sc.label());
}

}  // namespace

CGVector to_cg(const Behavior& behavior) {
  const Scenario& sc = behavior.scenario();
  require_bipartite_binary(sc);
  const auto report = no_signalling_report(behavior);
  if (!report.satisfied) throw ValidationError("behavior is signalling: " + report.worst_context);
  CGVector cg;
  cg.nx = sc.party(0).n_settings;
  cg.ny = sc.party(1).n_settings;
  for (int x = 0; x < cg.nx; ++x) cg.values.push_back(behavior.p(0, 0, x, 0) + behavior.p(0, 1, x, 0));
  for (int y = 0; y < cg.ny; ++y) cg.values.push_back(behavior.p(0, 0, 0, y) + behavior.p(1, 0, 0, y));
  for (int x = 0; x < cg.nx; ++x)
    for (int y = 0; y < cg.ny; ++y) cg.values.push_back(behavior.p(0, 0, x, y));
  return cg;
}

Behavior from_cg(const CGVector& cg) {
  if (cg.nx < 1 || cg.ny < 1) throw ValidationError("CG vector needs at least one setting per party");
  const auto nx = static_cast<std::size_t>(cg.nx), ny = static_cast<std::size_t>(cg.ny);
  if (cg.values.size() != nx + ny + nx * ny) throw ValidationError("CG vector has wrong dimension");
  const Scenario sc = Scenario::bipartite(cg.nx, cg.ny);
  std::vector<Rational> table(sc.table_size());
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const Rational& pa = cg.values[x];
      const Rational& pb = cg.values[nx + y];
      const Rational& pab = cg.values[nx + ny + x * ny + y];
      const std::size_t base = (x * ny + y) * 4;
      table[base + 0] = pab;
      table[base + 1] = pa - pab;
      table[base + 2] = pb - pab;
      table[base + 3] = 1 - pa - pb + pab;
    }
  return Behavior(sc, std::move(table));
}

HRep ns_hrep(const Scenario& scenario) {
  require_bipartite_binary(scenario);
  const auto nx = static_cast<std::size_t>(scenario.party(0).n_settings);
  const auto ny = static_cast<std::size_t>(scenario.party(1).n_settings);
  HRep h;
  h.dim = nx + ny + nx * ny;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const std::size_t ia = x, ib = nx + y, iab = nx + ny + x * ny + y;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Inequality q{std::vector<Rational>(h.dim, Rational(0)), Rational(0)};
          // P(00) = pab, P(01) = pa - pab, P(10) = pb - pab, P(11) = 1 - pa - pb + pab
          if (a == 0 && b == 0) q.coeffs[iab] = 1;
          if (a == 0 && b == 1) { q.coeffs[ia] = 1; q.coeffs[iab] = -1; }
          if (a == 1 && b == 0) { q.coeffs[ib] = 1; q.coeffs[iab] = -1; }
          if (a == 1 && b == 1) { q.coeffs[ia] = -1; q.coeffs[ib] = -1; q.coeffs[iab] = 1; q.offset = 1; }
          h.rows.push_back(std::move(q));
        }
    }
  return h;
}

namespace {

Rational evaluate(const Inequality& q, std::span<const Rational> point) {
  Rational s = q.offset;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (sgn(q.coeffs[i]) != 0) s += q.coeffs[i] * point[i];
  return s;
}

}  // namespace

bool satisfies(const HRep& hrep, std::span<const Rational> point) {
  if (point.size() != hrep.dim) throw ValidationError("point has wrong dimension");
  return std::all_of(hrep.rows.begin(), hrep.rows.end(), [&](const Inequality& q) { return sgn(evaluate(q, point)) >= 0; });
}

bool is_extremal(const HRep& hrep, std::span<const Rational> point) {
  if (!satisfies(hrep, point)) return false;
  std::vector<std::vector<Rational>> tight;
  for (const auto& q : hrep.rows)
    if (sgn(evaluate(q, point)) == 0) tight.push_back(q.coeffs);
  return rank(tight) == hrep.dim;
}

namespace {

// Double description over the homogenized cone {(t, v) : t >= 0, offset t + coeffs . v >= 0}.
class DoubleDescription {
 public:
  explicit DoubleDescription(const HRep& hrep) : dim_(hrep.dim + 1) {
    rows_.push_back(integer_row(Rational(1), std::vector<Rational>(hrep.dim, Rational(0))));
    for (const auto& q : hrep.rows) {
      if (q.coeffs.size() != hrep.dim) throw ValidationError("inequality has wrong dimension");
      rows_.push_back(integer_row(q.offset, q.coeffs));
    }
    words_ = (rows_.size() + 63) / 64;
  }

  std::vector<std::vector<Rational>> run() {
    initial();
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!in_initial_[i]) insert(i);
    std::vector<std::vector<Rational>> points;
    for (const auto& ray : rays_) {
      if (sgn(ray.coords[0]) == 0) throw ValidationError("polyhedron is unbounded");
      std::vector<Rational> p(dim_ - 1);
      for (std::size_t k = 1; k < dim_; ++k) {
        p[k - 1] = Rational(ray.coords[k], ray.coords[0]);
        p[k - 1].canonicalize();
      }
      points.push_back(std::move(p));
    }
    if (points.empty()) throw ValidationError("polyhedron is empty");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
  }

 private:
  struct Ray {
    std::vector<Integer> coords;
    std::vector<std::uint64_t> zeros;
  };

  static std::vector<Integer> integer_row(const Rational& offset, const std::vector<Rational>& coeffs) {
    Integer l = offset.get_den();
    for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> row;
    row.reserve(coeffs.size() + 1);
    row.push_back(offset.get_num() * (l / offset.get_den()));
    for (const auto& c : coeffs) row.push_back(c.get_num() * (l / c.get_den()));
    return row;
  }

  Integer slack(std::size_t row, const Ray& r) const {
    Integer s = 0;
    const auto& h = rows_[row];
    for (std::size_t k = 0; k < dim_; ++k)
      if (sgn(h[k]) != 0) s += h[k] * r.coords[k];
    return s;
  }

  void set_zero(Ray& r, std::size_t row) const { r.zeros[row / 64] |= std::uint64_t{1} << (row % 64); }

  static void normalize(std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
      for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }

  void initial() {
    in_initial_.assign(rows_.size(), false);
    std::vector<std::size_t> chosen;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t i = 0; i < rows_.size() && chosen.size() < dim_; ++i) {
      std::vector<Rational> cand(rows_[i].begin(), rows_[i].end());
      basis.push_back(cand);
      if (rank(basis) == basis.size()) {
        chosen.push_back(i);
        in_initial_[i] = true;
      } else {
        basis.pop_back();
      }
    }
    if (chosen.size() < dim_) throw ValidationError("polyhedron is unbounded (constraints do not span the space)");
    IntMatrix s(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) s(i, k) = rows_[chosen[i]][k];
    const auto inv = scaled_inverse(s);
    if (!inv) throw Error("double description: singular initial system (internal error)");
    const int ds = sgn(inv->det);
    // column j of S^{-1} is tight on every chosen row except j
    for (std::size_t j = 0; j < dim_; ++j) {
      Ray r;
      r.coords.resize(dim_);
      for (std::size_t k = 0; k < dim_; ++k) r.coords[k] = ds > 0 ? inv->adjugate(k, j) : Integer(-inv->adjugate(k, j));
      normalize(r.coords);
      r.zeros.assign(words_, 0);
      for (std::size_t i = 0; i < dim_; ++i)
        if (i != j) set_zero(r, chosen[i]);
      rays_.push_back(std::move(r));
    }
  }

  static std::size_t popcount(const std::vector<std::uint64_t>& z) {
    std::size_t c = 0;
    for (auto w : z) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  void insert(std::size_t row) {
    std::vector<Integer> s(rays_.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      s[i] = slack(row, rays_[i]);
      const int sg = sgn(s[i]);
      if (sg > 0) pos.push_back(i);
      if (sg < 0) neg.push_back(i);
    }
    std::vector<std::uint64_t> common(words_);
    for (auto p : pos)
      for (auto n : neg) {
        for (std::size_t w = 0; w < words_; ++w) common[w] = rays_[p].zeros[w] & rays_[n].zeros[w];
        if (popcount(common) + 2 < dim_) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays_.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          bool contains = true;
          for (std::size_t w = 0; w < words_; ++w)
            if ((rays_[k].zeros[w] & common[w]) != common[w]) {
              contains = false;
              break;
            }
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        Ray r;
        r.coords.resize(dim_);
        const Integer sp = s[p], sn = -s[n];
        for (std::size_t k = 0; k < dim_; ++k) r.coords[k] = sp * rays_[n].coords[k] + sn * rays_[p].coords[k];
        normalize(r.coords);
        r.zeros = common;
        set_zero(r, row);
        next.push_back(std::move(r));
      }
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      const int sg = sgn(s[i]);
      if (sg < 0) continue;
      if (sg == 0) set_zero(rays_[i], row);
      next.push_back(std::move(rays_[i]));
    }
    rays_ = std::move(next);
  }

  std::size_t dim_;
  std::size_t words_ = 1;
  std::vector<std::vector<Integer>> rows_;
  std::vector<bool> in_initial_;
  std::vector<Ray> rays_;
};

}  // namespace

std::vector<std::vector<Rational>> enumerate_vertices(const HRep& hrep) {
  if (hrep.dim == 0) throw ValidationError("polyhedron has dimension 0");
  return DoubleDescription(hrep).run();
}

std::vector<Behavior> ns_vertices(const Scenario& scenario) {
  const HRep h = ns_hrep(scenario);
  std::vector<Behavior> out;
  for (auto& p : enumerate_vertices(h))
    out.push_back(from_cg(CGVector{scenario.party(0).n_settings, scenario.party(1).n_settings, std::move(p)}));
  return out;
}

VertexClassification classify_vertices(std::span<const Behavior> vertices, bool keep, unsigned jobs) {
  VertexClassification out;
  std::vector<Rational> masses(vertices.size());
  if (!vertices.empty()) {
    const Scenario& sc = vertices.front().scenario();
    for (const auto& v : vertices)
      if (!(v.scenario() == sc)) throw ValidationError("classify_vertices: mixed scenarios");
    const MarginalSystem system(sc);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(vertices.size())));
    auto work = [&](unsigned w) {
      for (std::size_t i = w; i < vertices.size(); i += jobs) masses[i] = min_mass(system, vertices[i]).m_star;
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::exception_ptr> errors(jobs);
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < jobs; ++w)
        threads.emplace_back([&, w] {
          try {
            work(w);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      for (auto& t : threads) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
  }
  for (const auto& m : masses) ++out.counts[m];
  out.total = vertices.size();
  if (keep) {
    out.vertices.assign(vertices.begin(), vertices.end());
    out.masses = std::move(masses);
  }
  return out;
}

}  // namespace negprob
