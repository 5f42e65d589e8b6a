// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criterion 9 drives the installed CLI end to end; pass its path as
// argv[1]. Tolerances and time budgets are pinned here on purpose.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "varbesov/corpus.hpp"
#include "varbesov/verify.hpp"

using namespace varbesov;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& label, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s criterion-%d: %s (%s)\n", pass ? "PASS" : "FAIL", id, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// pass/fail of a named subset of battery checks; a missing name is a failure
bool subset_pass(const std::vector<CheckResult>& rs, const std::vector<std::string>& names,
                 std::string& detail) {
  bool ok = true;
  for (const std::string& n : names) {
    bool found = false;
    for (const CheckResult& r : rs) {
      if (r.name != n) continue;
      found = true;
      if (!r.pass) {
        ok = false;
        detail += " " + n + "=" + fmt(r.measured);
      }
    }
    if (!found) {
      ok = false;
      detail += " missing:" + n;
    }
  }
  if (ok) detail += " all named checks green";
  return ok;
}

std::string failing_names(const std::vector<CheckResult>& rs) {
  std::string s;
  for (const CheckResult& r : rs)
    if (!r.pass) s += " " + r.name + "=" + fmt(r.measured);
  return s.empty() ? std::string(" all green") : s;
}

// --- criterion 1: unit ball vs modular, 100 fields x 5 exponent shapes ------

void criterion_1() {
  auto t0 = clock_type::now();
  Grid g(1, 4, 8);
  std::vector<VariableExponent> shapes;
  shapes.push_back(VariableExponent::constant(g, 2.0));
  shapes.push_back(VariableExponent::constant(g, 0.8));
  shapes.push_back(random_exponent(g, 71001, 1.2, 2.5, 2));
  shapes.push_back(step_exponent(g, 1.3, 2.2));
  shapes.push_back(VariableExponent::constant(g, inf));
  const double scales[4] = {0.5, 0.9999, 1.0001, 3.0};
  std::vector<Field> fields;
  fields.reserve(100);
  for (int i = 0; i < 100; ++i)
    fields.push_back(random_band_limited(g, 71100 + i, 60.0, 1.05 + 0.01 * i));
  std::atomic<long> violations{0};
  parallel_for(fields.size(), [&](std::size_t i) {
    for (const VariableExponent& p : shapes) {
      double nb = luxemburg_norm(p, fields[i]);
      if (nb == 0.0) continue;
      for (double s : scales) {
        Field h = fields[i];
        h *= s / nb;
        bool norm_leq = luxemburg_norm(p, h) <= 1.0;
        ModularReport m = modular(p, h);
        bool mod_leq = m.finite && m.value <= 1.0 + 1e-9;
        if (norm_leq != mod_leq) ++violations;
      }
    }
  });
  double dt = seconds_since(t0);
  report(1, "unit ball matches the modular on 100 fields x 5 exponent shapes",
         violations == 0 && dt <= 30.0,
         "violations=" + std::to_string(violations.load()) + " time=" + fmt(dt) + "s");
}

// --- criterion 2: constant-exponent oracles within 1e-8 ---------------------

void criterion_2() {
  Grid g(1, 4, 8);
  FilterBank bank = build_filterbank(g);
  VariableExponent p17 = VariableExponent::constant(g, 1.7);
  VariableExponent p2 = VariableExponent::constant(g, 2.0);
  VariableExponent q13 = VariableExponent::constant(g, 1.3);
  double worst = 0.0;
  auto gap = [](double a, double b) { return b > 0.0 ? std::abs(a - b) / b : a; };
  for (int i = 0; i < 20; ++i) {
    Field f = random_band_limited(g, 72000 + i, bank.resolvable_band(), 1.1 + 0.02 * i);
    worst = std::max(worst, gap(luxemburg_norm(p17, f), oracle::lp_norm_const(1.7, f)));
    std::vector<Field> fs;
    for (int v = 0; v <= bank.V; ++v) fs.push_back(lp_block(f, bank, v));
    worst = std::max(worst,
                     gap(mixed_norm(p2, q13, fs), oracle::mixed_norm_const(2.0, 1.3, fs)));
    BesovParams prm{VariableExponent::constant(g, 0.5), p2,
                    VariableExponent::constant(g, 1.5), VariableExponent::constant(g, 3.0),
                    bank};
    worst = std::max(worst, gap(besov_type_norm(f, prm).value,
                                oracle::besov_classical_const(f, bank, 0.5, 2.0, 1.5,
                                                              1.0 / 3.0)));
  }
  report(2, "constant-exponent norms match independent oracles on 20 fields",
         worst <= 1e-8, "worst rel gap=" + fmt(worst));
}

// --- criterion 3: partition residual and transform reconstruction -----------

void criterion_3() {
  auto t0 = clock_type::now();
  double resid = 0.0, recon = 0.0;
  BankProfile profs[2] = {BankProfile{}, BankProfile{21.0 / 20.0, 39.0 / 20.0}};
  for (int d = 0; d < 2; ++d) {
    Grid g = d == 0 ? Grid(1, 4, 8) : Grid(2, 4, 4);
    for (const BankProfile& prof : profs) {
      FilterBank bank = build_filterbank(g, prof);
      resid = std::max(resid, calderon_residual(bank));
      int nf = d == 0 ? 5 : 2;
      for (int i = 0; i < nf; ++i) {
        Field f = random_band_limited(g, 73000 + 100 * d + i, bank.resolvable_band(), 1.2);
        CoefficientSequence s = phi_transform(f, bank);
        Field r = inverse_phi_transform(s, bank);
        double scale = f.max_abs(), err = 0.0;
        for (std::size_t k = 0; k < f.a.size(); ++k)
          err = std::max(err, std::abs(r.a[k] - f.a[k]));
        recon = std::max(recon, scale > 0.0 ? err / scale : err);
      }
    }
  }
  double dt = seconds_since(t0);
  report(3, "partition of unity and transform-pair reconstruction",
         resid <= 1e-12 && recon <= 1e-6 && dt <= 60.0,
         "residual=" + fmt(resid) + " recon=" + fmt(recon) + " time=" + fmt(dt) + "s");
}

// --- criterion 4: transform norm equivalence, two banks ----------------------

void criterion_4() {
  Grid g(1, 4, 8);
  FilterBank bankA = build_filterbank(g);
  FilterBank bankB = build_filterbank(g, BankProfile{21.0 / 20.0, 39.0 / 20.0});
  double worst_c = 0.0, worst_pair = 0.0;
  bool finite = true;
  for (int i = 0; i < 20; ++i) {
    VariableExponent alpha, p, q, tau;
    if (i < 12) {
      alpha = VariableExponent::constant(g, 0.3 + 0.02 * i);
      p = VariableExponent::constant(g, 1.6 + 0.05 * i);
      q = VariableExponent::constant(g, 1.2 + 0.05 * i);
      tau = VariableExponent::constant(g, 1.0 + 0.1 * i);
    } else {
      alpha = random_exponent(g, 74000 + 10 * i, 0.2, 0.8, 2);
      p = random_exponent(g, 74001 + 10 * i, 1.2, 2.0, 2);
      tau = random_exponent(g, 74003 + 10 * i, 0.9, 1.1, 2);
      q = i < 16 ? VariableExponent::constant(g, 1.5)
                 : random_exponent(g, 74002 + 10 * i, 1.0, 2.5, 2);
    }
    Field f = random_band_limited(g, 74500 + i, bankB.resolvable_band(), 1.2);
    SequenceParams sprm{alpha, p, q, tau};
    double ratios[2];
    FilterBank* banks[2] = {&bankA, &bankB};
    for (int b = 0; b < 2; ++b) {
      BesovParams prm{alpha, p, q, tau, *banks[b]};
      double nf = besov_type_norm(f, prm).value;
      double ns = seq_b_norm(phi_transform(f, *banks[b]), sprm).value;
      if (!(nf > 0.0) || !(ns > 0.0) || !std::isfinite(nf) || !std::isfinite(ns)) {
        finite = false;
        ratios[b] = 1.0;
        continue;
      }
      ratios[b] = ns / nf;
      worst_c = std::max(worst_c, std::max(ratios[b], 1.0 / ratios[b]));
    }
    double pair = std::max(ratios[0] / ratios[1], ratios[1] / ratios[0]);
    worst_pair = std::max(worst_pair, pair);
  }
  report(4, "coefficient norm equivalent to the field norm for two banks",
         finite && worst_c <= 10.0 && worst_pair <= 4.0,
         "worst constant=" + fmt(worst_c) + " bank spread=" + fmt(worst_pair));
}

// --- criteria 5..8: in-process verification suites ---------------------------

void criterion_5() {
  auto t0 = clock_type::now();
  std::vector<CheckResult> rs = verify_suite("kernels", VerifyOptions{});
  double dt = seconds_since(t0);
  bool all = dt <= 180.0;
  for (const CheckResult& r : rs) all = all && r.pass;
  report(5, "kernel estimate battery", all, failing_names(rs) + " time=" + fmt(dt) + "s");
}

void criterion_6() {
  std::vector<CheckResult> rs = verify_suite("transform", VerifyOptions{});
  std::string detail;
  bool ok = subset_pass(
      rs, {"majorant-dominates", "majorant-equivalence", "coefficient-bound"}, detail);
  report(6, "majorant sequence battery", ok, detail);
}

void criterion_7() {
  std::vector<CheckResult> rs = verify_suite("norms", VerifyOptions{});
  std::string detail;
  bool ok = subset_pass(rs,
                        {"sharp-equivalence", "star-gamma0-identity", "star-equivalence-g1",
                         "star-equivalence-g2", "embed-holder", "embed-holder-qinf",
                         "embed-sobolev-type", "embed-holder-upper", "pointwise-peak",
                         "tilde-holder-qinf", "tilde-dominated", "morrey-bridge",
                         "morrey-bridge-qinf", "sequence-sobolev"},
                        detail);
  report(7, "window variants, embeddings and bridge norms", ok, detail);
}

void criterion_8() {
  auto t0 = clock_type::now();
  std::vector<CheckResult> rs = verify_suite("atoms", VerifyOptions{});
  double dt = seconds_since(t0);
  bool all = dt <= 180.0;
  for (const CheckResult& r : rs) all = all && r.pass;
  report(8, "atom battery", all, failing_names(rs) + " time=" + fmt(dt) + "s");
}

// --- criterion 9: the CLI verification entry point --------------------------

void criterion_9(const char* cli) {
  if (cli == nullptr) {
    report(9, "cli full verification suite", false, "cli path not supplied");
    return;
  }
  auto t0 = clock_type::now();
  std::string cmd =
      std::string(cli) + " verify --suite all > acceptance_cli_verify.log 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  double dt = seconds_since(t0);
  report(9, "cli full verification suite", code == 0 && dt <= 600.0,
         "exit=" + std::to_string(code) + " time=" + fmt(dt) +
             "s log=acceptance_cli_verify.log");
}

}  // namespace

int main(int argc, char** argv) {
  set_thread_count(0);
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(argc > 1 ? argv[1] : nullptr);
  std::printf("acceptance: %d/9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
