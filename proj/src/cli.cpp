#include "negprob/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "negprob/behavior_io.hpp"
#include "negprob/boxes.hpp"
#include "negprob/cloning.hpp"
#include "negprob/inequalities.hpp"
#include "negprob/mass.hpp"
#include "negprob/polytope.hpp"
#include "negprob/scan.hpp"

namespace negprob {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << text;
  if (!f) throw ValidationError("write failed for '" + path + "'");
}

// Writes to `path`, or to `out` when path is empty or "-".
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

Behavior load_behavior(const std::string& path) { return parse_behavior(read_file(path)); }

void require_2222(const Behavior& b) {
  if (!(b.scenario() == Scenario::bipartite(2, 2))) throw ValidationError("expected a 2222 behavior, got " + b.scenario().label());
}

std::string signalling_text(const NsReport& report) {
  return "signalling behavior: max discrepancy " + to_string(report.max_discrepancy) + " at " + report.worst_context + "\n";
}

struct SolveArgs {
  std::string input, witness;
  int decimals = -1;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Behavior b = load_behavior(a.input);
  const NsReport ns = no_signalling_report(b);
  if (!ns.satisfied) {
    err << signalling_text(ns);
    return kExitSignalling;
  }
  const MassResult r = min_mass(b);
  out << "M* = " << to_string(r.m_star);
  if (a.decimals >= 0) out << " (" << to_decimal(r.m_star, a.decimals) << ")";
  out << "\n";
  out << "positive part = " << to_string(r.positive_part) << "\n";
  out << "negative part = " << to_string(r.negative_part) << "\n";
  if (a.witness.empty()) {
    out << "\n" << format_jqpd(r.witness);
  } else {
    write_file(a.witness, format_jqpd(r.witness));
  }
  return kExitOk;
}

int cmd_chsh(const std::string& input, std::ostream& out, std::ostream& err) {
  const Behavior b = load_behavior(input);
  require_2222(b);
  const NsReport ns = no_signalling_report(b);
  if (!ns.satisfied) {
    err << signalling_text(ns);
    return kExitSignalling;
  }
  const ChshReport r = chsh(b);
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (int neg = 0; neg < 2; ++neg)
        out << (neg ? "-" : "") << "S_" << m << n << " = " << to_string(r.value(m, n, neg)) << "\n";
  out << "max |S| = " << to_string(r.max_abs) << "\n";
  return kExitOk;
}

int cmd_inn22(const std::string& input, int n, std::ostream& out, std::ostream& err) {
  const Behavior b = load_behavior(input);
  const auto& sc = b.scenario();
  if (!sc.is_bipartite_binary() || sc.party(0).n_settings != sc.party(1).n_settings)
    throw ValidationError("I_NN22 needs an NN22 behavior, got " + sc.label());
  if (n == 0) n = sc.party(0).n_settings;
  if (n != sc.party(0).n_settings) throw ValidationError("--n does not match the behavior's scenario " + sc.label());
  const NsReport ns = no_signalling_report(b);
  if (!ns.satisfied) {
    err << signalling_text(ns);
    return kExitSignalling;
  }
  out << "I_NN22 = " << to_string(inn22_value(b, n)) << "\n";
  return kExitOk;
}

struct BoxArgs {
  std::string kind, output, x = "1", scenario = "2,2;2,2", signs;
  int alpha = 0, beta = 0, gamma = 0, n = 2;
  std::uint64_t atom = 0, free_bits = 0;
};

int cmd_make_box(const BoxArgs& a, std::ostream& out) {
  Behavior b = [&] {
    if (a.kind == "pr") return pr_box(a.alpha, a.beta, a.gamma);
    if (a.kind == "isotropic") return isotropic(IsotropicParam(parse_rational(a.x))).behavior;
    if (a.kind == "uniform") return uniform(parse_scenario_spec(a.scenario));
    if (a.kind == "deterministic") {
      const Scenario sc = parse_scenario_spec(a.scenario);
      if (a.atom >= sc.atom_count()) throw ValidationError("--atom out of range for " + sc.label());
      return deterministic(sc, a.atom);
    }
    if (a.kind == "pr-n") return pr_n_box(a.n, a.free_bits);
    if (a.kind == "correlation") return correlation_box(parse_sign_matrix(a.signs));
    if (a.kind == "cloned") return marginals(cloned_isotropic(IsotropicParam(parse_rational(a.x))));
    throw ValidationError("unknown box kind '" + a.kind + "'");
  }();
  emit(out, a.output, format_behavior(b));
  return kExitOk;
}

struct ScanArgs {
  int n = 4;
  std::string mode = "full", checkpoint, output, certify = "maxima";
  std::uint64_t count = 0, seed = 0, checkpoint_every = 4096;
  unsigned jobs = 1;
  bool resume = false;
  int decimals = -1;
};

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
  ScanOptions opt;
  opt.mode = parse_scan_mode(a.mode);
  opt.count = a.count;
  opt.seed = a.seed;
  opt.jobs = a.jobs;
  opt.checkpoint_every = a.checkpoint_every;
  if (a.certify == "all")
    opt.certify = Certify::All;
  else if (a.certify != "maxima")
    throw ValidationError("--certify must be all or maxima");
  if (!a.checkpoint.empty()) {
    if (a.resume && std::filesystem::exists(a.checkpoint)) {
      std::istringstream in(read_file(a.checkpoint));
      opt.resume = read_checkpoint(in);
    }
    const std::string path = a.checkpoint;
    opt.on_checkpoint = [path](const ScanCheckpoint& c) {
      const std::string tmp = path + ".tmp";
      std::ostringstream s;
      write_checkpoint(s, c);
      write_file(tmp, s.str());
      std::filesystem::rename(tmp, path);
    };
  } else if (a.resume) {
    throw ValidationError("--resume needs --checkpoint");
  }
  const ScanResult r = nn22_scan(a.n, opt);
  emit(out, a.output, format_scan_csv(r.classification.counts, a.decimals));
  err << "items " << r.items << (r.exhaustive ? " (exhaustive)" : " (search)") << "\n";
  err << "max M* = " << to_string(r.classification.max_value()) << " at " << r.argmax.to_string() << "\n";
  if (r.screened) err << "classified by screen against certified values: " << r.screened << "\n";
  if (r.uncertified) {
    std::ostringstream v;
    v.precision(10);
    v << r.uncertified_max;
    err << "not certified (screened below the running maximum): " << r.uncertified << ", largest screened value "
        << v.str() << "\n";
  }
  return kExitOk;
}

struct VertexArgs {
  std::string scenario = "2222", output, vertices;
  unsigned jobs = 1;
  int decimals = -1;
};

int cmd_vertices(const VertexArgs& a, std::ostream& out, std::ostream& err) {
  Scenario sc = [&] {
    if (a.scenario == "2222") return Scenario::bipartite(2, 2);
    if (a.scenario == "3322") return Scenario::bipartite(3, 3);
    throw ValidationError("--scenario must be 2222 or 3322");
  }();
  const auto verts = ns_vertices(sc);
  if (!a.vertices.empty()) write_file(a.vertices, format_behavior_list(verts));
  const auto cls = classify_vertices(verts, false, a.jobs);
  emit(out, a.output, format_scan_csv(cls.counts, a.decimals));
  const auto local = cls.counts.count(Rational(1)) ? cls.counts.at(Rational(1)) : 0;
  err << "vertices " << cls.total << ": local " << local << ", nonlocal " << cls.total - local << "\n";
  return kExitOk;
}

struct CloneArgs {
  std::string x = "1", step = "1/16", output;
  bool sweep = false;
  bool witness = false;
};

int cmd_clone(const CloneArgs& a, std::ostream& out) {
  std::string text;
  if (a.sweep) {
    text = format_clone_csv(clone_sweep(parse_rational(a.step)));
  } else {
    text = format_clone_report(clone_report(IsotropicParam(parse_rational(a.x))));
  }
  if (a.witness) {
    const auto w = pr_clone_signalling_witness();
    std::ostringstream s;
    s << "perfect clone, P(b_0 ^ b'_1 = 1 | x=0) = " << to_string(w.hypothetical[0][0][1][1]) << "\n";
    s << "perfect clone, P(b_0 ^ b'_1 = 1 | x=1) = " << to_string(w.hypothetical[1][0][1][1]) << "\n";
    s << "perfect clone, total variation between Alice settings = " << to_string(w.hypothetical_tv) << "\n";
    s << "jqpd at x=1, P(b_0 ^ b'_1 = 1 | x=0) = " << to_string(w.from_jqpd[0][0][1][1]) << "\n";
    s << "jqpd at x=1, P(b_0 ^ b'_1 = 1 | x=1) = " << to_string(w.from_jqpd[1][0][1][1]) << "\n";
    s << "jqpd at x=1, total variation between Alice settings = " << to_string(w.from_jqpd_tv) << "\n";
    text += s.str();
  }
  emit(out, a.output, text);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal negative probability mass of Bell-type behaviors"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Minimal mass M* and a witness jqpd");
  solve->add_option("behavior", solve_args.input, "Behavior file")->required();
  solve->add_option("-w,--witness", solve_args.witness, "Write the witness jqpd here instead of stdout");
  solve->add_option("--decimals", solve_args.decimals, "Also print M* rounded to this many digits");

  std::string chsh_input;
  auto* chsh_cmd = app.add_subcommand("chsh", "The eight CHSH values of a 2222 behavior");
  chsh_cmd->add_option("behavior", chsh_input, "Behavior file")->required();

  std::string inn22_input;
  int inn22_n = 0;
  auto* inn22 = app.add_subcommand("inn22", "I_NN22 value of an NN22 behavior");
  inn22->add_option("behavior", inn22_input, "Behavior file")->required();
  inn22->add_option("--n", inn22_n, "Number of settings (defaults to the behavior's)")->check(CLI::Range(2, 12));

  BoxArgs box;
  auto* make_box = app.add_subcommand("make-box", "Write a standard behavior");
  make_box->add_option("kind", box.kind, "pr, isotropic, uniform, deterministic, pr-n, correlation, cloned")->required();
  make_box->add_option("-o,--output", box.output, "Output file (stdout by default)");
  make_box->add_option("--alpha", box.alpha)->check(CLI::Range(0, 1));
  make_box->add_option("--beta", box.beta)->check(CLI::Range(0, 1));
  make_box->add_option("--gamma", box.gamma)->check(CLI::Range(0, 1));
  make_box->add_option("--x", box.x, "Isotropic parameter, e.g. 3/4");
  make_box->add_option("--scenario", box.scenario, "Scenario spec, e.g. 2,2;2,2");
  make_box->add_option("--atom", box.atom, "Atom index for deterministic boxes");
  make_box->add_option("--n", box.n, "Settings per party for pr-n")->check(CLI::Range(2, 8));
  make_box->add_option("--free", box.free_bits, "Flips of the free PR_N entries (bitmask)");
  make_box->add_option("--signs", box.signs, "Sign matrix for correlation boxes, rows split by '/'");

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Classify NN22 correlation boxes by M*");
  scan->add_option("--n", scan_args.n, "Settings per party")->check(CLI::Range(2, 8));
  scan->add_option("--mode", scan_args.mode, "full, symmetry or sample");
  scan->add_option("--count", scan_args.count, "Items for sample mode and for symmetry mode with N >= 5");
  scan->add_option("--seed", scan_args.seed, "Random seed");
  scan->add_option("--jobs", scan_args.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  scan->add_option("--certify", scan_args.certify, "N >= 5: all or maxima");
  scan->add_option("--checkpoint", scan_args.checkpoint, "Checkpoint file, rewritten after every block");
  scan->add_option("--checkpoint-every", scan_args.checkpoint_every, "Items per block")->check(CLI::PositiveNumber);
  scan->add_flag("--resume", scan_args.resume, "Continue from the checkpoint file if present");
  scan->add_option("-o,--output", scan_args.output, "CSV output file (stdout by default)");
  scan->add_option("--decimals", scan_args.decimals, "Add a rounded decimal column")->check(CLI::Range(0, 30));

  VertexArgs vert;
  auto* vertices = app.add_subcommand("vertices", "Enumerate and classify no-signalling vertices");
  vertices->add_option("--scenario", vert.scenario, "2222 or 3322");
  vertices->add_option("-o,--output", vert.output, "Classification CSV (stdout by default)");
  vertices->add_option("--vertices", vert.vertices, "Write all vertices here as behavior records");
  vertices->add_option("--jobs", vert.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  vertices->add_option("--decimals", vert.decimals, "Add a rounded decimal column")->check(CLI::Range(0, 30));

  CloneArgs clone_args;
  auto* clone = app.add_subcommand("clone", "Observable marginals of the cloned isotropic jqpd");
  clone->add_option("--x", clone_args.x, "Isotropic parameter, e.g. 3/4");
  clone->add_flag("--sweep", clone_args.sweep, "CSV over x = 0, step, ..., 1");
  clone->add_option("--step", clone_args.step, "Sweep step");
  clone->add_flag("--signalling-witness", clone_args.witness, "Append the perfect-clone signalling witness");
  clone->add_option("-o,--output", clone_args.output, "Output file (stdout by default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (*solve) return cmd_solve(solve_args, out, err);
    if (*chsh_cmd) return cmd_chsh(chsh_input, out, err);
    if (*inn22) return cmd_inn22(inn22_input, inn22_n, out, err);
    if (*make_box) return cmd_make_box(box, out);
    if (*scan) return cmd_scan(scan_args, out, err);
    if (*vertices) return cmd_vertices(vert, out, err);
    if (*clone) return cmd_clone(clone_args, out);
  } catch (const SignallingError& e) {
    err << signalling_text(e.report());
    return kExitSignalling;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace negprob
