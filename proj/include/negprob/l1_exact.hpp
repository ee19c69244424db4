#pragma once

// Exact revised simplex for   minimize sum |p_j|   subject to   C p = rhs
// over the columns of a MarginalSystem, with p split into (p+, p-).
//
// The basis inverse is kept fraction-free: B^{-1} = Adj / d with integer Adj
// and d = +-det(B), updated by exact division after each pivot. Every basic
// variable has cost 1, so the dual is the column sum of Adj over d and a
// column (atom, sign) prices out iff sign * (C_atom . y) > 1. Entering and
// leaving variables follow Bland's rule on the index 2*atom + (sign < 0).
//
// Ops selects the integer type: Int64Ops throws ArithmeticOverflow when a
// value leaves int64 (callers rerun with BigOps).

#include <climits>
#include <cstdint>
#include <optional>
#include <vector>

#include "negprob/errors.hpp"
#include "negprob/marginal_system.hpp"
#include "negprob/rational.hpp"

namespace negprob {

struct Int64Ops {
  using T = std::int64_t;

  static T from(const Integer& v) {
    if (!v.fits_slong_p()) throw ArithmeticOverflow();
    return static_cast<T>(v.get_si());
  }
  static Integer to_integer(T v) { return Integer(static_cast<long>(v)); }
  static int sign(T v) { return (v > 0) - (v < 0); }
  static void add(T& acc, T v) {
    if (__builtin_add_overflow(acc, v, &acc)) throw ArithmeticOverflow();
  }
  static void sub(T& acc, T v) {
    if (__builtin_sub_overflow(acc, v, &acc)) throw ArithmeticOverflow();
  }
  static T neg(T v) {
    if (v == INT64_MIN) throw ArithmeticOverflow();
    return -v;
  }
  // (a*x - b*y) / d, known to be exact.
  static T combine(T a, T x, T b, T y, T d) {
    const __int128 n = static_cast<__int128>(a) * x - static_cast<__int128>(b) * y;
    if (n >= INT64_MIN && n <= INT64_MAX) return static_cast<T>(n) / d;
    const __int128 q = n / d;
    if (q < INT64_MIN || q > INT64_MAX) throw ArithmeticOverflow();
    return static_cast<T>(q);
  }
  // sign(a*b - c*e)
  static int cmp_products(T a, T b, T c, T e) {
    const __int128 l = static_cast<__int128>(a) * b, r = static_cast<__int128>(c) * e;
    return (l > r) - (l < r);
  }
  static int cmp(T a, T b) { return (a > b) - (a < b); }
};

struct BigOps {
  using T = Integer;

  static T from(const Integer& v) { return v; }
  static Integer to_integer(const T& v) { return v; }
  static int sign(const T& v) { return sgn(v); }
  static void add(T& acc, const T& v) { acc += v; }
  static void sub(T& acc, const T& v) { acc -= v; }
  static T neg(const T& v) { return -v; }
  static T combine(const T& a, const T& x, const T& b, const T& y, const T& d) {
    T n = a * x - b * y;
    T q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
  }
  static int cmp_products(const T& a, const T& b, const T& c, const T& e) {
    const T l = a * b, r = c * e;
    return cmp(l, r);
  }
  static int cmp(const T& a, const T& b) {
    const int c = ::cmp(a, b);
    return (c > 0) - (c < 0);
  }
};

// Bland's rule throughout, or largest violation first with a permanent switch
// to Bland after a run of degenerate pivots.
enum class L1Pricing { Bland, Dantzig };

struct L1Basic {
  std::uint64_t atom = 0;
  int sign = 1;
};

struct L1Result {
  std::vector<L1Basic> basis;
  // Value of each basic variable (>= 0), same order as `basis`.
  std::vector<Rational> values;
  Rational objective;
  std::size_t pivots = 0;
};

template <class Ops>
class ExactL1Simplex {
  using T = typename Ops::T;

 public:
  // `start` must name rows() atoms with linearly independent columns; signs
  // are chosen so the starting basis is primal feasible. Throws
  // ValidationError if the start is singular.
  ExactL1Simplex(const MarginalSystem& sys, const std::vector<Rational>& rhs, const std::vector<std::uint64_t>& start,
                 L1Pricing pricing = L1Pricing::Bland)
      : sys_(sys), r_(sys.rows()), pricing_(pricing) {
    if (rhs.size() != r_ || start.size() != r_) throw ValidationError("L1 simplex: dimension mismatch");
    scale_ = 1;
    for (const auto& v : rhs) mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), v.get_den_mpz_t());

    // Inverse of the start basis by fraction-free pivots from the identity.
    adj_.assign(r_ * r_, T(0));
    for (std::size_t i = 0; i < r_; ++i) adj_[i * r_ + i] = T(1);
    d_ = T(1);
    basis_.assign(r_, L1Basic{});
    std::vector<char> unit(r_, 1);
    std::vector<T> alpha(r_);
    xs_.assign(r_, T(0));
    for (std::uint64_t atom : start) {
      column(atom, 1, alpha);
      std::optional<std::size_t> row;
      for (std::size_t i = 0; i < r_ && !row; ++i)
        if (unit[i] && Ops::sign(alpha[i]) != 0) row = i;
      if (!row) throw ValidationError("L1 simplex: starting basis is singular");
      pivot(*row, alpha);
      unit[*row] = 0;
      basis_[*row] = {atom, 1};
    }

    const int dsign = Ops::sign(d_);
    for (std::size_t i = 0; i < r_; ++i) {
      Integer x = 0;
      for (std::size_t k = 0; k < r_; ++k) x += Ops::to_integer(adj_[i * r_ + k]) * (rhs[k].get_num() * (scale_ / rhs[k].get_den()));
      if (sgn(x) != 0 && sgn(x) != dsign) {
        basis_[i].sign = -1;
        x = -x;
        for (std::size_t k = 0; k < r_; ++k) adj_[i * r_ + k] = Ops::neg(adj_[i * r_ + k]);
      }
      xs_[i] = Ops::from(x);
    }

    // per-level scratch for the Kronecker contraction
    const std::size_t n = sys_.party_count();
    level_size_.assign(n + 1, 1);
    for (std::size_t p = n; p-- > 0;) level_size_[p] = level_size_[p + 1] * sys_.local_events(p);
    scratch_.resize(n + 1);
    for (std::size_t p = 0; p <= n; ++p) scratch_[p].assign(level_size_[p], T(0));
  }

  L1Result solve() {
    std::vector<T> alpha(r_);
    while (true) {
      compute_dual();
      const auto entering = price();
      if (!entering) break;
      const auto [atom, sign] = *entering;
      column(atom, sign, alpha);

      const int dsign = Ops::sign(d_);
      std::optional<std::size_t> leave;
      for (std::size_t i = 0; i < r_; ++i) {
        if (Ops::sign(alpha[i]) != dsign) continue;
        if (!leave) {
          leave = i;
          continue;
        }
        // xs_i / alpha_i  vs  xs_l / alpha_l ; alpha_i * alpha_l > 0
        const int c = Ops::cmp_products(xs_[i], alpha[*leave], xs_[*leave], alpha[i]);
        if (c < 0 || (c == 0 && var_index(basis_[i]) < var_index(basis_[*leave]))) leave = i;
      }
      if (!leave) throw Error("L1 simplex: unbounded direction (objective is bounded below; internal error)");
      if (Ops::sign(xs_[*leave]) == 0) {
        if (pricing_ == L1Pricing::Dantzig && ++degenerate_run_ > kStallLimit) pricing_ = L1Pricing::Bland;
      } else {
        degenerate_run_ = 0;
      }
      pivot(*leave, alpha);
      basis_[*leave] = {atom, sign};
      ++pivots_;
    }

    L1Result out;
    out.basis = basis_;
    out.pivots = pivots_;
    out.values.resize(r_);
    const Integer denom = Ops::to_integer(d_) * scale_;
    out.objective = 0;
    for (std::size_t i = 0; i < r_; ++i) {
      out.values[i] = Rational(Ops::to_integer(xs_[i]), denom);
      out.values[i].canonicalize();
      out.objective += out.values[i];
    }
    return out;
  }

 private:
  static std::uint64_t var_index(const L1Basic& b) { return 2 * b.atom + (b.sign < 0 ? 1 : 0); }

  void compute_dual() {
    auto& y = scratch_[0];
    for (std::size_t k = 0; k < r_; ++k) y[k] = T(0);
    for (std::size_t i = 0; i < r_; ++i) {
      const T* row = &adj_[i * r_];
      for (std::size_t k = 0; k < r_; ++k) Ops::add(y[k], row[k]);
    }
  }

  // Bland: first atom (ascending) whose + or - column has negative reduced
  // cost. Dantzig: the most negative reduced cost, first on ties.
  std::optional<std::pair<std::uint64_t, int>> price() {
    found_.reset();
    best_ = d_;
    if (Ops::sign(best_) < 0) best_ = Ops::neg(best_);
    descend(0, 0);
    return found_;
  }

  void column(std::uint64_t atom, int sign, std::vector<T>& alpha) const {
    const auto support = sys_.column_support(atom);
    for (std::size_t i = 0; i < r_; ++i) {
      T acc(0);
      const T* row = &adj_[i * r_];
      for (auto k : support) Ops::add(acc, row[k]);
      alpha[i] = sign > 0 ? acc : Ops::neg(acc);
    }
  }

  bool descend(std::size_t p, std::uint64_t atom_base) {
    const std::size_t n = sys_.party_count();
    if (p == n) {
      const T& t = scratch_[n][0];
      // sign * t / d > 1  <=>  sign * t * sign(d) > |d|
      const T u = Ops::sign(d_) > 0 ? t : Ops::neg(t);
      if (pricing_ == L1Pricing::Bland) {
        if (Ops::cmp(u, best_) > 0) {
          found_ = std::make_pair(atom_base, 1);
          return true;
        }
        if (Ops::cmp(Ops::neg(u), best_) > 0) {
          found_ = std::make_pair(atom_base, -1);
          return true;
        }
        return false;
      }
      if (Ops::cmp(u, best_) > 0) {
        best_ = u;
        found_ = std::make_pair(atom_base, 1);
      }
      const T v = Ops::neg(u);
      if (Ops::cmp(v, best_) > 0) {
        best_ = v;
        found_ = std::make_pair(atom_base, -1);
      }
      return false;
    }
    const auto& in = scratch_[p];
    auto& out = scratch_[p + 1];
    const std::size_t inner = level_size_[p + 1];
    const std::uint64_t count = sys_.scenario().local_count(p);
    const std::uint64_t stride = sys_.scenario().party_stride(p);
    for (std::uint64_t l = 0; l < count; ++l) {
      const auto& supp = sys_.local_support(p, l);
      for (std::size_t k = 0; k < inner; ++k) out[k] = in[supp[0] * inner + k];
      for (std::size_t s = 1; s < supp.size(); ++s) {
        const T* src = &in[supp[s] * inner];
        for (std::size_t k = 0; k < inner; ++k) Ops::add(out[k], src[k]);
      }
      if (descend(p + 1, atom_base + l * stride)) return true;
    }
    return false;
  }

  void pivot(std::size_t r, const std::vector<T>& alpha) {
    const T ar = alpha[r];
    const T* prow = &adj_[r * r_];
    for (std::size_t i = 0; i < r_; ++i) {
      if (i == r) continue;
      const T ai = alpha[i];
      T* row = &adj_[i * r_];
      for (std::size_t k = 0; k < r_; ++k) row[k] = Ops::combine(ar, row[k], ai, prow[k], d_);
      xs_[i] = Ops::combine(ar, xs_[i], ai, xs_[r], d_);
    }
    d_ = ar;
  }

  static constexpr std::size_t kStallLimit = 1000;

  const MarginalSystem& sys_;
  std::size_t r_;
  L1Pricing pricing_;
  std::size_t degenerate_run_ = 0;
  T best_{};
  Integer scale_;
  std::vector<T> adj_;
  std::vector<T> xs_;
  T d_{};
  std::vector<L1Basic> basis_;
  std::size_t pivots_ = 0;
  std::vector<std::size_t> level_size_;
  std::vector<std::vector<T>> scratch_;
  std::optional<std::pair<std::uint64_t, int>> found_;
};

}  // namespace negprob
