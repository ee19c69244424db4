#include "negprob/l1_float.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "negprob/errors.hpp"

namespace negprob {

namespace {

struct Entering {
  std::uint64_t atom;
  int sign;
  // 1 - sign * (C_atom . y), negative
  double reduced_cost;
};

class FloatEngine {
 public:
  FloatEngine(const MarginalSystem& sys, const std::vector<double>& rhs, const FloatL1Options& opt)
      : sys_(sys), opt_(opt), r_(sys.rows()), q_(rhs) {
    nx_ = static_cast<int>(sys.local_events(0)) - 1;
    ny_ = static_cast<int>(sys.local_events(1)) - 1;
    atoms_ = opt.start.size() == r_ ? opt.start : sys.product_basis();
    signs_.assign(r_, 1);
    binv_.assign(r_ * r_, 0.0);
    x_.assign(r_, 0.0);
    y_.assign(r_, 0.0);
    w_.assign(static_cast<std::size_t>(ny_ + 1), 0.0);
  }

  FloatL1Result run() {
    FloatL1Result out;
    if (!refactor()) {
      atoms_ = sys_.product_basis();
      std::fill(signs_.begin(), signs_.end(), 1);
      if (!refactor()) return out;
    }
    double last_obj = objective();
    std::size_t stall = 0, since_refactor = 0, perturbations = 0;
    bool bland = false, perturbed = false;
    std::vector<double> alpha(r_);
    for (std::size_t it = 0; it < opt_.max_iterations; ++it) {
      if (since_refactor >= opt_.refactor_every) {
        if (!refactor()) return out;
        since_refactor = 0;
      }
      auto enter = bland ? price_bland() : price_dantzig();
      if (!enter && since_refactor > 0) {
        // confirm optimality on a fresh factorization
        if (!refactor()) return out;
        since_refactor = 0;
        enter = bland ? price_bland() : price_dantzig();
      }
      if (!enter && perturbed) {
        // optimal for the perturbed rhs; restore and continue from this basis
        q_ = original_q_;
        perturbed = false;
        if (!refactor()) return out;
        since_refactor = 0;
        last_obj = objective();
        stall = 0;
        enter = price_dantzig();
      }
      if (!enter) {
        out.converged = true;
        out.objective = objective();
        out.basis_atoms = atoms_;
        out.iterations = it;
        return out;
      }
      column_alpha(enter->atom, enter->sign, alpha);
      std::optional<std::size_t> leave;
      double best = 0;
      for (std::size_t i = 0; i < r_; ++i) {
        if (alpha[i] <= opt_.tolerance) continue;
        const double ratio = std::max(0.0, x_[i]) / alpha[i];
        if (!leave || ratio < best - 1e-12 || (ratio <= best + 1e-12 && alpha[i] > alpha[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return out;
      pivot(*leave, alpha, enter->reduced_cost);
      atoms_[*leave] = enter->atom;
      signs_[*leave] = enter->sign;
      ++since_refactor;
      const double obj = objective();
      if (obj < last_obj - 1e-11) {
        last_obj = obj;
        stall = 0;
      } else if (++stall > opt_.stall_limit) {
        stall = 0;
        if (!perturbed && perturbations < 8) {
          // break degeneracy: random relative perturbation of the rhs
          ++perturbations;
          perturbed = true;
          original_q_ = q_;
          for (auto& v : q_) v += 1e-7 * (1.0 + std::fabs(v)) * next_uniform();
          if (!refactor()) return out;
          since_refactor = 0;
          last_obj = objective();
        } else if (!perturbed) {
          bland = true;
        }
      }
    }
    return out;
  }

 private:
  // Deterministic uniform in [0, 1).
  double next_uniform() {
    rng_ = rng_ * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(rng_ >> 11) * 0x1.0p-53;
  }

  bool bob_zero(std::uint64_t b, int y) const { return ((b >> (ny_ - 1 - y)) & 1u) == 0; }

  double objective() const {
    double s = 0;
    for (double v : x_) s += std::max(0.0, v);
    return s;
  }

  void full_dual() {
    std::fill(y_.begin(), y_.end(), 0.0);
    for (std::size_t i = 0; i < r_; ++i) {
      const double* row = &binv_[i * r_];
      for (std::size_t k = 0; k < r_; ++k) y_[k] += row[k];
    }
  }

  // Visits Alice assignments in Gray-code order; w_ holds Y^T u(a), the
  // Bob-indexed partial dual.
  template <class F>
  bool for_each_alice(F&& f) {
    const std::size_t cols = static_cast<std::size_t>(ny_ + 1);
    for (std::size_t k = 0; k < cols; ++k) {
      double s = y_[k];
      for (int x = 0; x < nx_; ++x) s += y_[static_cast<std::size_t>(1 + x) * cols + k];
      w_[k] = s;
    }
    const std::uint64_t na = std::uint64_t{1} << nx_;
    std::uint64_t a = 0;
    for (std::uint64_t i = 0;; ++i) {
      if (f(a)) return true;
      if (i + 1 == na) break;
      const int flip = __builtin_ctzll(i + 1);
      const std::uint64_t mask = std::uint64_t{1} << flip;
      a ^= mask;
      const int x = nx_ - 1 - flip;
      const double* src = &y_[static_cast<std::size_t>(1 + x) * cols];
      if (a & mask)
        for (std::size_t k = 0; k < cols; ++k) w_[k] -= src[k];
      else
        for (std::size_t k = 0; k < cols; ++k) w_[k] += src[k];
    }
    return false;
  }

  std::optional<Entering> price_dantzig() {
    double best = opt_.tolerance;
    std::optional<Entering> pick;
    for_each_alice([&](std::uint64_t a) {
      double hi = w_[0], lo = w_[0];
      std::uint64_t bhi = 0, blo = 0;
      for (int y = 0; y < ny_; ++y) {
        const double v = w_[static_cast<std::size_t>(1 + y)];
        const std::uint64_t positive = v > 0;
        hi += std::max(v, 0.0);
        lo += std::min(v, 0.0);
        blo |= positive << (ny_ - 1 - y);
        bhi |= (positive ^ 1u) << (ny_ - 1 - y);
      }
      if (hi - 1 > best) {
        best = hi - 1;
        pick = Entering{(a << ny_) | bhi, 1, 1 - hi};
      }
      if (-1 - lo > best) {
        best = -1 - lo;
        pick = Entering{(a << ny_) | blo, -1, 1 + lo};
      }
      return false;
    });
    return pick;
  }

  // Smallest atom (then + before -) with negative reduced cost.
  std::optional<Entering> price_bland() {
    std::optional<Entering> pick;
    const std::uint64_t nb = std::uint64_t{1} << ny_;
    for_each_alice([&](std::uint64_t a) {
      for (std::uint64_t b = 0; b < nb; ++b) {
        const std::uint64_t atom = (a << ny_) | b;
        if (pick && atom >= pick->atom) break;
        double t = w_[0];
        for (int y = 0; y < ny_; ++y)
          if (bob_zero(b, y)) t += w_[static_cast<std::size_t>(1 + y)];
        if (t > 1 + opt_.tolerance) {
          pick = Entering{atom, 1, 1 - t};
          break;
        }
        if (t < -1 - opt_.tolerance) {
          pick = Entering{atom, -1, 1 + t};
          break;
        }
      }
      return false;
    });
    return pick;
  }

  void column_alpha(std::uint64_t atom, int sign, std::vector<double>& alpha) const {
    const auto support = sys_.column_support(atom);
    for (std::size_t i = 0; i < r_; ++i) {
      const double* row = &binv_[i * r_];
      double acc = 0;
      for (auto k : support) acc += row[k];
      alpha[i] = sign * acc;
    }
  }

  void pivot(std::size_t r, const std::vector<double>& alpha, double reduced_cost) {
    double* prow = &binv_[r * r_];
    const double inv = 1.0 / alpha[r];
    // y' = y + (d / alpha_r) * (row r of the old inverse)
    const double f = reduced_cost * inv;
    for (std::size_t k = 0; k < r_; ++k) y_[k] += f * prow[k];
    for (std::size_t k = 0; k < r_; ++k) prow[k] *= inv;
    x_[r] = std::max(0.0, x_[r]) * inv;
    for (std::size_t i = 0; i < r_; ++i) {
      if (i == r || alpha[i] == 0) continue;
      double* row = &binv_[i * r_];
      const double g = alpha[i];
      for (std::size_t k = 0; k < r_; ++k) row[k] -= g * prow[k];
      x_[i] -= g * x_[r];
    }
  }

  // Rebuilds the inverse, x and y from the basis; flips signs of negative basics.
  bool refactor() {
    std::vector<double> a(r_ * r_, 0.0);
    for (std::size_t i = 0; i < r_; ++i)
      for (auto k : sys_.column_support(atoms_[i])) a[k * r_ + i] = signs_[i];
    std::vector<double> inv(r_ * r_, 0.0);
    for (std::size_t i = 0; i < r_; ++i) inv[i * r_ + i] = 1;
    for (std::size_t c = 0; c < r_; ++c) {
      std::size_t p = c;
      for (std::size_t i = c + 1; i < r_; ++i)
        if (std::fabs(a[i * r_ + c]) > std::fabs(a[p * r_ + c])) p = i;
      if (std::fabs(a[p * r_ + c]) < 1e-12) return false;
      if (p != c)
        for (std::size_t k = 0; k < r_; ++k) {
          std::swap(a[p * r_ + k], a[c * r_ + k]);
          std::swap(inv[p * r_ + k], inv[c * r_ + k]);
        }
      const double piv = 1.0 / a[c * r_ + c];
      for (std::size_t k = 0; k < r_; ++k) {
        a[c * r_ + k] *= piv;
        inv[c * r_ + k] *= piv;
      }
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == c) continue;
        const double f = a[i * r_ + c];
        if (f == 0) continue;
        for (std::size_t k = c; k < r_; ++k) a[i * r_ + k] -= f * a[c * r_ + k];
        for (std::size_t k = 0; k < r_; ++k) inv[i * r_ + k] -= f * inv[c * r_ + k];
      }
    }
    binv_ = std::move(inv);
    for (std::size_t i = 0; i < r_; ++i) {
      double acc = 0;
      for (std::size_t k = 0; k < r_; ++k) acc += binv_[i * r_ + k] * q_[k];
      x_[i] = acc;
      if (acc < -opt_.tolerance) {
        signs_[i] = -signs_[i];
        x_[i] = -acc;
        for (std::size_t k = 0; k < r_; ++k) binv_[i * r_ + k] = -binv_[i * r_ + k];
      }
    }
    full_dual();
    return true;
  }

  const MarginalSystem& sys_;
  FloatL1Options opt_;
  std::size_t r_;
  int nx_ = 0, ny_ = 0;
  std::vector<double> q_, original_q_;
  std::uint64_t rng_ = 0x9e3779b97f4a7c15ull;
  std::vector<std::uint64_t> atoms_;
  std::vector<int> signs_;
  std::vector<double> binv_, x_, y_, w_;
};

}  // namespace

FloatL1Result solve_l1_float(const MarginalSystem& system, const std::vector<double>& rhs, const FloatL1Options& options) {
  if (!system.scenario().is_bipartite_binary()) throw ValidationError("float L1 screen needs a bipartite binary scenario");
  if (rhs.size() != system.rows()) throw ValidationError("float L1 screen: rhs has wrong length");
  return FloatEngine(system, rhs, options).run();
}

}  // namespace negprob
