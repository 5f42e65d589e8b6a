#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "varbesov/corpus.hpp"
#include "varbesov/io.hpp"

using namespace varbesov;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("VARBESOV_CLI");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path cap = fs::temp_directory_path() / ("vb_cli_out_" + std::to_string(counter++));
  std::string cmd = cli_path() + " " + args + " > " + cap.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(cap);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(cap);
  return r;
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("timestamp:", 0) != 0) out += line + "\n";
  return out;
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("vb_cli_ws_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string file(const std::string& name) const { return (dir / name).string(); }

  std::string config(const nlohmann::json& patch = {}) const {
    nlohmann::json cfg = {{"grid", {{"dim", 1}, {"J0", 3}, {"J", 5}}},
                          {"exponents",
                           {{"alpha", "0.5"}, {"p", "2"}, {"q", "1.5"}, {"tau", "3"}}},
                          {"space", "B"},
                          {"seed", 42}};
    for (auto& [k, v] : patch.items()) cfg[k] = v;
    std::string path = file("config.json");
    std::ofstream out(path);
    out << cfg.dump(2) << "\n";
    return path;
  }

  std::string input_field() const {
    Grid g(1, 3, 5);
    FilterBank bank = build_filterbank(g);
    Field f = random_band_limited(g, 401, bank.resolvable_band(), 1.2);
    std::string path = file("input.field");
    write_field(path, f);
    return path;
  }
};

double parse_kv(const std::string& text, const std::string& key) {
  std::size_t pos = text.find(key + ": ");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 2));
}

}  // namespace

TEST_CASE("norm reports are deterministic and carry the resolved config") {
  Workspace ws;
  std::string cfg = ws.config();
  std::string in = ws.input_field();
  std::string args = "norm --config " + cfg + " --input " + in;
  RunResult a = run_cli(args);
  INFO(a.out);
  REQUIRE(a.code == 0);
  CHECK(a.out.find("command: norm") != std::string::npos);
  CHECK(a.out.find("space: B") != std::string::npos);
  CHECK(a.out.find("norm: ") != std::string::npos);
  CHECK(a.out.find("argmax_cube: v=") != std::string::npos);
  CHECK(a.out.find("\"seed\":42") != std::string::npos);
  CHECK(a.out.rfind("timestamp: run finished, wall=", 0) == 0);
  CHECK(parse_kv(a.out, "norm") > 0.0);
  // constant exponents: the classical display agrees to the pinned gap
  CHECK(parse_kv(a.out, "oracle_rel_gap") <= 1e-7);

  RunResult b = run_cli(args);
  REQUIRE(b.code == 0);
  CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));

  RunResult c = run_cli(args + " --seed 7");
  REQUIRE(c.code == 0);
  CHECK(c.out.find("\"seed\":7") != std::string::npos);
  CHECK(strip_timestamp(c.out) != strip_timestamp(a.out));
}

TEST_CASE("norm can write its report to a file") {
  Workspace ws;
  std::string cfg = ws.config();
  std::string in = ws.input_field();
  std::string rep = ws.file("report.txt");
  RunResult a = run_cli("norm --config " + cfg + " --input " + in + " --output " + rep);
  REQUIRE(a.code == 0);
  std::ifstream f(rep);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("command: norm") != std::string::npos);
  CHECK(ss.str().rfind("timestamp: run finished, wall=", 0) == 0);
}

TEST_CASE("every space dispatches") {
  Workspace ws;
  std::string in = ws.input_field();
  for (const std::string space : {"B", "Btilde", "Bvar", "sharp", "star"}) {
    std::string cfg = ws.config({{"space", space}, {"gamma", 1}});
    RunResult r = run_cli("norm --config " + cfg + " --input " + in);
    INFO(space << "\n" << r.out);
    REQUIRE(r.code == 0);
    CHECK(parse_kv(r.out, "norm") > 0.0);
  }
  std::string cfg = ws.config(
      {{"space", "Nmorrey"}, {"morrey_u", 1.5}, {"exponents", {{"alpha", "0.5"}, {"p", "2"}, {"q", "1.5"}, {"tau", "1"}}}});
  RunResult r = run_cli("norm --config " + cfg + " --input " + in);
  INFO(r.out);
  REQUIRE(r.code == 0);
  CHECK(parse_kv(r.out, "norm") > 0.0);
}

TEST_CASE("config and file errors map to distinct exit codes") {
  Workspace ws;
  std::string in = ws.input_field();
  std::string good = ws.config();

  CHECK(run_cli("norm --config " + good + " --input " + ws.file("missing.field")).code == 3);

  std::string broken = ws.file("broken.json");
  {
    std::ofstream out(broken);
    out << "{oops\n";
  }
  CHECK(run_cli("norm --config " + broken + " --input " + in).code == 2);

  CHECK(run_cli("norm --config " + ws.config({{"space", "Zorble"}}) + " --input " + in)
            .code == 2);

  // an exponent that blows up on a grid point is a config error
  std::string blow = ws.config(
      {{"exponents", {{"alpha", "0.5"}, {"p", "1/(x - 4)"}, {"q", "1.5"}, {"tau", "3"}}}});
  CHECK(run_cli("norm --config " + blow + " --input " + in).code == 2);

  // the morrey space needs constant p with 0 < u <= p
  std::string varp = ws.config(
      {{"space", "Nmorrey"},
       {"exponents", {{"alpha", "0.5"}, {"p", "2 + 0.1*sin(x)"}, {"q", "1.5"}, {"tau", "1"}}}});
  CHECK(run_cli("norm --config " + varp + " --input " + in).code == 2);
  std::string bigu = ws.config({{"space", "Nmorrey"}, {"morrey_u", 3.0}});
  CHECK(run_cli("norm --config " + bigu + " --input " + in).code == 2);

  CHECK(run_cli("verify --suite bogus").code == 2);
  CHECK(run_cli("").code != 0);
}

TEST_CASE("analyze and synthesize invert each other") {
  Workspace ws;
  std::string cfg = ws.config();
  std::string in = ws.input_field();
  std::string coef = ws.file("out.coef");
  std::string back = ws.file("back.field");

  RunResult a = run_cli("analyze --config " + cfg + " --input " + in + " --output " + coef);
  INFO(a.out);
  REQUIRE(a.code == 0);
  REQUIRE(fs::exists(coef));

  RunResult s = run_cli("synthesize --input " + coef + " --output " + back);
  INFO(s.out);
  REQUIRE(s.code == 0);

  Field f = read_field(in);
  Field r = read_field(back);
  REQUIRE(r.grid == f.grid);
  double scale = f.max_abs(), worst = 0.0;
  for (std::size_t i = 0; i < f.a.size(); ++i)
    worst = std::max(worst, std::abs(r.a[i] - f.a[i]));
  CHECK(worst <= 1e-6 * scale);

  CHECK(run_cli("analyze --config " + cfg + " --input " + in).code == 3);
  CHECK(run_cli("synthesize --input " + ws.file("no.coef") + " --output " + back).code == 3);
}

TEST_CASE("decompose reports the transform route") {
  Workspace ws;
  std::string cfg = ws.config();
  std::string in = ws.input_field();
  RunResult r = run_cli("decompose --config " + cfg + " --input " + in);
  INFO(r.out);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("route: quasi-atomic") != std::string::npos);
  CHECK(parse_kv(r.out, "reconstruction_rel_err") <= 1e-6);
  CHECK(parse_kv(r.out, "kernel_tail_fraction_outside_3Q") >= 0.0);
}
