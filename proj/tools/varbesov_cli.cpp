// varbesov: norms, transforms, and the verification battery from the command
// line. Subcommands: norm, analyze, synthesize, decompose, verify.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varbesov/atoms.hpp"
#include "varbesov/besov.hpp"
#include "varbesov/config.hpp"
#include "varbesov/io.hpp"
#include "varbesov/parallel.hpp"
#include "varbesov/sequences.hpp"
#include "varbesov/verify.hpp"

namespace {

using namespace varbesov;

struct CommonArgs {
  std::string config_path;
  std::string input_path;
  std::string output_path;
  std::string suite = "all";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
};

RunConfig resolve_run(const CommonArgs& args) {
  RunConfig cfg = args.config_path.empty() ? RunConfig{} : load_config(args.config_path);
  if (args.seed_given) cfg.seed = args.seed;
  if (args.threads > 0) cfg.threads = args.threads;
  set_thread_count(cfg.threads);
  return cfg;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void put_config(Report& rep, const RunConfig& cfg) {
  rep.kv("config", resolved_config_json(cfg).dump());
}

Field load_input_field(const CommonArgs& args, const Grid& g) {
  if (args.input_path.empty()) throw FileError("missing --input field file");
  Field f = read_field(args.input_path);
  if (f.grid != g)
    throw FileError("input field grid differs from the configured grid");
  return f;
}

std::string cube_text(const DyadicCube& Q, int dim) {
  std::string s = "v=" + std::to_string(Q.level) + " m=(" + std::to_string(Q.m[0]);
  if (dim == 2) s += "," + std::to_string(Q.m[1]);
  return s + ")";
}

int cmd_norm(const CommonArgs& args) {
  auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg = resolve_run(args);
  Grid g = cfg.make_grid();
  ResolvedExponents ex = resolve_exponents(cfg, g);
  Field f = load_input_field(args, g);
  FilterBank bank = build_filterbank(g, cfg.bank);

  Report rep;
  rep.kv("command", "norm");
  put_config(rep, cfg);
  rep.kv("input", args.input_path);
  rep.kv("space", cfg.space);

  double value = 0.0;
  bool have_cube = false;
  DyadicCube argmax;
  if (cfg.space == "B" || cfg.space == "Btilde" || cfg.space == "sharp" ||
      cfg.space == "star") {
    BesovParams prm{ex.alpha, ex.p, ex.q, ex.tau, bank, cfg.tol};
    NormResult r;
    if (cfg.space == "B")
      r = besov_type_norm(f, prm);
    else if (cfg.space == "Btilde")
      r = besov_tilde_norm(f, prm);
    else if (cfg.space == "sharp")
      r = besov_norm_sharp(f, prm);
    else
      r = besov_norm_star(f, prm, cfg.gamma);
    value = r.value;
    argmax = r.argmax;
    have_cube = value > 0.0;
  } else if (cfg.space == "Bvar") {
    value = besov_variable_norm(f, ex.alpha, ex.p, ex.q, bank, cfg.tol);
  } else {  // Nmorrey
    if (!ex.p.is_const || (!ex.q.is_const && !ex.q.is_inf))
      throw ConfigError("config: Nmorrey needs constant p and q");
    double pc = ex.p.is_inf ? inf : ex.p.lo;
    double qc = ex.q.is_inf ? inf : ex.q.lo;
    if (ex.p.is_inf) throw ConfigError("config: Nmorrey needs finite p");
    if (!(cfg.morrey_u > 0.0) || cfg.morrey_u > pc)
      throw ConfigError("config: Nmorrey needs 0 < morrey_u <= p");
    value = besov_morrey_norm(f, ex.alpha, pc, qc, cfg.morrey_u, bank);
  }
  if (!std::isfinite(value)) throw NumericalError("norm is not finite");

  rep.kv("norm", value);
  rep.kv("argmax_cube", have_cube ? cube_text(argmax, g.dim) : std::string("null"));

  rep.section("level blocks");
  for (int v = 0; v <= bank.V; ++v) {
    std::vector<double> w = weight_block(lp_block(f, bank, v), ex.alpha, v);
    double sup = 0.0;
    for (double x : w) sup = std::max(sup, x);
    rep.kv("block_sup[" + std::to_string(v) + "]", sup);
  }

  bool const_exponents = ex.alpha.is_const && ex.p.is_const && !ex.p.is_inf &&
                         (ex.q.is_const || ex.q.is_inf) && ex.tau.is_const;
  if (const_exponents && (cfg.space == "B" || cfg.space == "Btilde" || cfg.space == "Bvar")) {
    double tau_cl = cfg.space == "B" ? 1.0 / ex.tau.lo
                    : cfg.space == "Btilde" ? 1.0 / ex.p.lo
                                            : 0.0;
    double oracle = oracle::besov_classical_const(f, bank, ex.alpha.lo, ex.p.lo,
                                                  ex.q.is_inf ? inf : ex.q.lo, tau_cl);
    rep.section("oracle");
    rep.kv("oracle_value", oracle);
    rep.kv("oracle_rel_gap", oracle > 0.0 ? std::abs(value - oracle) / oracle : 0.0);
  }

  // the timestamp line carries the only run-varying data (clock and wall time)
  std::string body = rep.render(false);
  std::string ts = "timestamp: run finished, wall=" + format_double(elapsed_since(t0)) + "s\n";
  if (args.output_path.empty()) {
    std::cout << ts << body;
  } else {
    std::ofstream out(args.output_path, std::ios::binary);
    if (!out) throw FileError("report: cannot open for writing: " + args.output_path);
    out << ts << body;
  }
  return 0;
}

int cmd_analyze(const CommonArgs& args) {
  RunConfig cfg = resolve_run(args);
  Grid g = cfg.make_grid();
  Field f = load_input_field(args, g);
  FilterBank bank = build_filterbank(g, cfg.bank);
  CoefficientSequence s = phi_transform(f, bank);
  if (args.output_path.empty()) throw FileError("missing --output coefficient file");
  write_coefficients(args.output_path, s, cfg.bank);
  return 0;
}

int cmd_synthesize(const CommonArgs& args) {
  RunConfig cfg = resolve_run(args);
  if (args.input_path.empty()) throw FileError("missing --input coefficient file");
  CoefficientFile cf = read_coefficients(args.input_path);
  FilterBank bank = build_filterbank(cf.seq.grid, cf.prof);
  if (cf.seq.V > bank.V) throw FileError("coefficient file: V above the bank range");
  Field f = inverse_phi_transform(cf.seq, bank);
  if (args.output_path.empty()) throw FileError("missing --output field file");
  write_field(args.output_path, f);
  return 0;
}

int cmd_decompose(const CommonArgs& args) {
  auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg = resolve_run(args);
  Grid g = cfg.make_grid();
  Field f = load_input_field(args, g);
  FilterBank bank = build_filterbank(g, cfg.bank);
  CoefficientSequence s = phi_transform(f, bank);
  QuasiAtomReport qr = quasi_atomic_decomposition(f, bank);
  if (!args.output_path.empty()) write_coefficients(args.output_path, s, cfg.bank);

  Report rep;
  rep.kv("command", "decompose");
  put_config(rep, cfg);
  rep.kv("input", args.input_path);
  rep.kv("route", "quasi-atomic (transform pair; not a compact-support decomposition)");
  rep.kv("reconstruction_rel_err", qr.recon_rel_err);
  rep.kv("kernel_tail_fraction_outside_3Q", qr.tail_fraction);
  std::string ts =
      "timestamp: run finished, wall=" + format_double(elapsed_since(t0)) + "s\n";
  std::cout << ts << rep.render(false);
  return 0;
}

int cmd_verify(const CommonArgs& args) {
  auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg = resolve_run(args);
  if (args.suite != "kernels" && args.suite != "norms" && args.suite != "transform" &&
      args.suite != "atoms" && args.suite != "all")
    throw ConfigError("verify: unknown suite: " + args.suite);

  VerifyOptions opt;
  opt.seed = cfg.seed;
  std::vector<CheckResult> results = verify_suite(args.suite, opt);

  Report rep;
  rep.kv("command", "verify");
  put_config(rep, cfg);
  rep.kv("suite", args.suite);
  int failed = 0;
  for (const CheckResult& r : results) {
    if (!r.pass) ++failed;
    std::string line = std::string(r.pass ? "PASS" : "FAIL") + " " + r.suite + "/" + r.name +
                       " measured=" + format_double(r.measured);
    if (!r.note.empty()) line += " | " + r.note;
    rep.kv("check", line);
  }
  rep.kv("checks_total", int(results.size()));
  rep.kv("checks_failed", failed);
  rep.kv("result", failed == 0 ? "PASS" : "FAIL");

  std::string ts =
      "timestamp: run finished, wall=" + format_double(elapsed_since(t0)) + "s\n";
  std::string body = rep.render(false);
  std::cout << ts << body;
  if (!args.output_path.empty()) {
    std::ofstream out(args.output_path, std::ios::binary);
    if (!out) throw FileError("report: cannot open for writing: " + args.output_path);
    out << ts << body;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-exponent Besov norms, transforms, and checks"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub, bool wants_suite) {
    sub->add_option("--config", args.config_path, "JSON run configuration");
    sub->add_option("--input", args.input_path, "input field or coefficient file");
    sub->add_option("--output", args.output_path, "output file");
    if (wants_suite) sub->add_option("--suite", args.suite, "check suite name");
    sub->add_option("--seed", args.seed, "override the corpus seed")
        ->each([&](const std::string&) { args.seed_given = true; });
    sub->add_option("--threads", args.threads,
                    "worker threads (0: VARBESOV_THREADS, then hardware)");
  };

  CLI::App* norm = app.add_subcommand("norm", "evaluate a norm on a field file");
  CLI::App* analyze = app.add_subcommand("analyze", "field to coefficient file");
  CLI::App* synthesize = app.add_subcommand("synthesize", "coefficient file to field");
  CLI::App* decompose =
      app.add_subcommand("decompose", "quasi-atomic decomposition with a quality report");
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(norm, false);
  add_common(analyze, false);
  add_common(synthesize, false);
  add_common(decompose, false);
  add_common(verify, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (norm->parsed()) return cmd_norm(args);
    if (analyze->parsed()) return cmd_analyze(args);
    if (synthesize->parsed()) return cmd_synthesize(args);
    if (decompose->parsed()) return cmd_decompose(args);
    if (verify->parsed()) return cmd_verify(args);
  } catch (const varbesov::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const varbesov::FileError& e) {
    std::cerr << "file error: " << e.what() << "\n";
    return 3;
  } catch (const varbesov::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
