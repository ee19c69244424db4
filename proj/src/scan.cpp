#include "negprob/scan.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "negprob/boxes.hpp"
#include "negprob/errors.hpp"
#include "negprob/l1_float.hpp"
#include "negprob/mass.hpp"

namespace negprob {

const char* to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::Full: return "full";
    case ScanMode::Symmetry: return "symmetry";
    case ScanMode::Sample: return "sample";
  }
  return "?";
}

ScanMode parse_scan_mode(const std::string& text) {
  if (text == "full") return ScanMode::Full;
  if (text == "symmetry") return ScanMode::Symmetry;
  if (text == "sample") return ScanMode::Sample;
  throw ValidationError("unknown scan mode '" + text + "' (expected full, symmetry or sample)");
}

namespace {

struct Item {
  std::uint64_t bits;
  std::uint64_t weight;
};

std::uint64_t random_bits(std::mt19937_64& rng, int n) {
  const std::uint64_t v = rng();
  return n == 8 ? v : v & ((std::uint64_t{1} << (n * n)) - 1);
}

std::vector<Item> searched_orbits(int n, std::uint64_t count, std::uint64_t seed) {
  std::vector<Item> items;
  std::set<std::vector<std::uint32_t>> seen;
  auto add = [&](std::uint64_t bits) {
    const SignMatrix m = SignMatrix(n, bits).normalized();
    if (seen.insert(m.invariant()).second) items.push_back({m.bits(), 1});
  };
  std::mt19937_64 rng(seed);
  add(pr_n_signs(n, 0).bits());
  // PR_N variants: at most a quarter of the budget
  const int free = pr_n_free_count(n);
  const std::uint64_t variants = free < 63 ? std::uint64_t{1} << free : ~std::uint64_t{0};
  const std::uint64_t variant_budget = count / 4;
  if (variants <= variant_budget) {
    for (std::uint64_t f = 1; f < variants && items.size() < count; ++f) add(pr_n_signs(n, f).bits());
  } else {
    const std::uint64_t mask = free < 64 ? (std::uint64_t{1} << free) - 1 : ~std::uint64_t{0};
    for (std::uint64_t tries = 0; items.size() < variant_budget && tries < 8 * variant_budget; ++tries)
      add(pr_n_signs(n, rng() & mask).bits());
  }
  for (std::uint64_t tries = 0; items.size() < count && tries < 64 * count; ++tries) add(random_bits(rng, n));
  return items;
}

std::vector<Item> build_items(int n, const ScanOptions& opt) {
  std::vector<Item> items;
  switch (opt.mode) {
    case ScanMode::Full: {
      if (n > 4) throw SizeError("full scan needs N <= 4 (2^{N^2} boxes)");
      const std::uint64_t total = std::uint64_t{1} << (n * n);
      items.reserve(total);
      for (std::uint64_t b = 0; b < total; ++b) items.push_back({b, 1});
      break;
    }
    case ScanMode::Symmetry:
      if (n <= 4) {
        for (const auto& o : sign_orbits(n)) items.push_back({o.representative.bits(), o.size});
      } else {
        if (opt.count == 0) throw ValidationError("symmetry scan with N >= 5 needs a positive --count");
        items = searched_orbits(n, opt.count, opt.seed);
      }
      break;
    case ScanMode::Sample: {
      if (opt.count == 0) throw ValidationError("sample scan needs a positive --count");
      std::mt19937_64 rng(opt.seed);
      items.reserve(opt.count);
      for (std::uint64_t i = 0; i < opt.count; ++i) items.push_back({random_bits(rng, n), 1});
      break;
    }
  }
  return items;
}

struct Screened {
  bool converged = false;
  double value = 0;
  std::vector<std::uint64_t> basis;
};

class Evaluator {
 public:
  explicit Evaluator(int n) : n_(n), system_(Scenario::bipartite(n, n)) {}

  std::vector<Rational> rhs(std::uint64_t bits) const { return system_.rhs(correlation_box(SignMatrix(n_, bits))); }

  Rational exact(std::uint64_t bits, const std::vector<std::uint64_t>& start = {}) const {
    const auto q = rhs(bits);
    if (!start.empty()) {
      try {
        return solve_l1(system_, q, start, L1Pricing::Dantzig).objective;
      } catch (const ValidationError&) {
        // singular in exact arithmetic; fall through to the product basis
      }
    }
    return solve_l1(system_, q, {}, L1Pricing::Dantzig).objective;
  }

  Screened screen(std::uint64_t bits) const {
    const auto q = rhs(bits);
    std::vector<double> approx(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) approx[i] = q[i].get_d();
    auto r = solve_l1_float(system_, approx);
    return {r.converged, r.objective, std::move(r.basis_atoms)};
  }

 private:
  int n_;
  MarginalSystem system_;
};

constexpr double kMatch = 1e-7;

template <class F>
void run_parallel(unsigned jobs, F&& work) {
  if (jobs == 1) {
    work(0u);
    return;
  }
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

}  // namespace

ScanResult nn22_scan(int n, const ScanOptions& opt) {
  if (n < 2 || n > 8) throw ValidationError("scan needs 2 <= N <= 8");
  const auto items = build_items(n, opt);
  ScanCheckpoint state;
  state.n = n;
  state.mode = opt.mode;
  state.count = opt.count;
  state.seed = opt.seed;
  state.total_items = items.size();
  if (opt.resume) {
    const auto& r = *opt.resume;
    if (r.n != n || r.mode != opt.mode || r.count != opt.count || r.seed != opt.seed || r.total_items != items.size())
      throw ValidationError("checkpoint does not match this scan's parameters");
    if (r.cursor > items.size()) throw ValidationError("checkpoint cursor beyond the end of the scan");
    state = r;
  }

  ScanResult result;
  const Evaluator eval(n);
  const bool screening = n >= 5;
  const unsigned jobs = std::max(1u, opt.jobs);
  const std::uint64_t block = std::max<std::uint64_t>(1, opt.checkpoint_every);
  std::vector<Rational> values;
  std::vector<Screened> screens;

  auto record = [&](const Item& item, const Rational& v) {
    state.counts[v] += item.weight;
    if (v > state.best) {
      state.best = v;
      state.best_bits = item.bits;
    }
    if (opt.on_item) opt.on_item(SignMatrix(n, item.bits), item.weight, v);
  };

  while (state.cursor < items.size()) {
    const std::uint64_t begin = state.cursor, end = std::min<std::uint64_t>(items.size(), begin + block);
    if (!screening) {
      values.assign(end - begin, Rational(0));
      run_parallel(jobs, [&](unsigned w) {
        for (std::uint64_t i = begin + w; i < end; i += jobs) values[i - begin] = eval.exact(items[i].bits);
      });
      for (std::uint64_t i = begin; i < end; ++i) record(items[i], values[i - begin]);
    } else {
      screens.assign(end - begin, Screened{});
      run_parallel(jobs, [&](unsigned w) {
        for (std::uint64_t i = begin + w; i < end; i += jobs) screens[i - begin] = eval.screen(items[i].bits);
      });
      // sequential pass: which boxes to certify depends only on item order
      for (std::uint64_t i = begin; i < end; ++i) {
        const Screened& s = screens[i - begin];
        if (!s.converged || opt.certify == Certify::All) {
          record(items[i], eval.exact(items[i].bits, s.converged ? s.basis : std::vector<std::uint64_t>{}));
          continue;
        }
        const Rational* hit = nullptr;
        for (const auto& [v, c] : state.counts)
          if (std::fabs(v.get_d() - s.value) < kMatch) hit = &v;
        if (hit) {
          ++result.screened;
          record(items[i], Rational(*hit));
        } else if (state.counts.empty() || s.value > state.best.get_d() - kMatch) {
          record(items[i], eval.exact(items[i].bits, s.basis));
        } else {
          ++state.uncertified;
          state.uncertified_max = std::max(state.uncertified_max, s.value);
        }
      }
    }
    state.cursor = end;
    if (opt.on_checkpoint) opt.on_checkpoint(state);
  }

  result.classification.counts = state.counts;
  for (const auto& [v, c] : state.counts) result.classification.total += c;
  result.items = items.size();
  result.exhaustive = opt.mode == ScanMode::Full || (opt.mode == ScanMode::Symmetry && n <= 4);
  result.argmax = SignMatrix(n, state.best_bits);
  result.uncertified = state.uncertified;
  result.uncertified_max = state.uncertified_max;
  return result;
}

std::string format_scan_csv(const std::map<Rational, std::uint64_t>& counts, int decimals) {
  std::ostringstream out;
  out << "class_mass_num,class_mass_den,count";
  if (decimals >= 0) out << ",decimal";
  out << "\n";
  for (const auto& [v, c] : counts) {
    out << v.get_num().get_str() << "," << v.get_den().get_str() << "," << c;
    if (decimals >= 0) out << "," << to_decimal(v, decimals);
    out << "\n";
  }
  return out.str();
}

void write_checkpoint(std::ostream& out, const ScanCheckpoint& c) {
  out << format_scan_csv(c.counts);
  out << "# cursor " << c.cursor << " of " << c.total_items << " n=" << c.n << " mode=" << to_string(c.mode)
      << " count=" << c.count << " seed=" << c.seed << " best=" << to_string(c.best) << " best_bits=" << c.best_bits
      << " uncertified=" << c.uncertified << " uncertified_max=" << std::setprecision(17) << c.uncertified_max << "\n";
}

ScanCheckpoint read_checkpoint(std::istream& in) {
  ScanCheckpoint c;
  std::string line;
  std::size_t lineno = 0;
  bool header = false, cursor = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!header) {
      if (line != "class_mass_num,class_mass_den,count") throw ParseError(lineno, "expected CSV header");
      header = true;
      continue;
    }
    if (line.rfind("# cursor ", 0) == 0) {
      std::istringstream s(line.substr(9));
      std::string of, field;
      if (!(s >> c.cursor >> of >> c.total_items) || of != "of") throw ParseError(lineno, "malformed cursor line");
      while (s >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "malformed cursor field '" + field + "'");
        const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        try {
          if (key == "n") c.n = std::stoi(val);
          else if (key == "mode") c.mode = parse_scan_mode(val);
          else if (key == "count") c.count = std::stoull(val);
          else if (key == "seed") c.seed = std::stoull(val);
          else if (key == "best") c.best = parse_rational(val);
          else if (key == "best_bits") c.best_bits = std::stoull(val);
          else if (key == "uncertified") c.uncertified = std::stoull(val);
          else if (key == "uncertified_max") c.uncertified_max = std::stod(val);
          else throw ParseError(lineno, "unknown cursor field '" + key + "'");
        } catch (const std::invalid_argument&) {
          throw ParseError(lineno, "bad value for '" + key + "'");
        } catch (const ValidationError&) {
          throw ParseError(lineno, "bad value for '" + key + "'");
        }
      }
      cursor = true;
      continue;
    }
    std::istringstream s(line);
    std::string num, den, count;
    if (!std::getline(s, num, ',') || !std::getline(s, den, ',') || !std::getline(s, count, ','))
      throw ParseError(lineno, "expected num,den,count");
    try {
      c.counts[parse_rational(num + "/" + den)] = std::stoull(count);
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad class row");
    }
  }
  if (!header || !cursor) throw ParseError(lineno, "checkpoint is missing its header or cursor line");
  return c;
}

}  // namespace negprob
