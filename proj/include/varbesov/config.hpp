#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "exponents.hpp"
#include "filterbank.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "varlp.hpp"

namespace varbesov {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resolved run parameters. Exponent expressions are kept as text so reports
// can echo the configuration; parsing happens against the resolved grid.
struct RunConfig {
  int dim = 1;
  int J0 = 4;
  int J = 8;
  std::string alpha_expr = "0.5";
  std::string p_expr = "2";
  std::string q_expr = "2";
  std::string tau_expr = "1";
  BankProfile bank;
  std::string space = "B";  // B, Btilde, Bvar, Nmorrey, sharp, star
  int gamma = 1;            // star window shift
  double morrey_u = 1.0;    // Nmorrey only
  std::uint64_t seed = 1234;
  int threads = 0;  // 0 resolves from VARBESOV_THREADS, then hardware
  double tol = lux_tol_default;

  Grid make_grid() const { return Grid(dim, J0, J); }
};

namespace detail {

template <typename T>
T config_get(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config: field \"") + key + "\" has the wrong type");
  }
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: document is not a JSON object");
  RunConfig c;
  if (j.contains("grid")) {
    const nlohmann::json& gj = j.at("grid");
    if (!gj.is_object()) throw ConfigError("config: \"grid\" must be an object");
    c.dim = detail::config_get<int>(gj, "dim", 1);
    if (c.dim != 1 && c.dim != 2) throw ConfigError("config: grid.dim must be 1 or 2");
    c.J0 = detail::config_get<int>(gj, "J0", 4);
    c.J = detail::config_get<int>(gj, "J", c.dim == 1 ? 8 : 4);
  }
  if (c.J0 < 1 || c.J < 2 || c.J0 + c.J > 24)
    throw ConfigError("config: need J0 >= 1, J >= 2, J0 + J <= 24");
  if (j.contains("exponents")) {
    const nlohmann::json& ej = j.at("exponents");
    if (!ej.is_object()) throw ConfigError("config: \"exponents\" must be an object");
    c.alpha_expr = detail::config_get<std::string>(ej, "alpha", c.alpha_expr);
    c.p_expr = detail::config_get<std::string>(ej, "p", c.p_expr);
    c.q_expr = detail::config_get<std::string>(ej, "q", c.q_expr);
    c.tau_expr = detail::config_get<std::string>(ej, "tau", c.tau_expr);
  }
  if (j.contains("bank")) {
    const nlohmann::json& bj = j.at("bank");
    if (!bj.is_object()) throw ConfigError("config: \"bank\" must be an object");
    c.bank.t1 = detail::config_get<double>(bj, "t1", c.bank.t1);
    c.bank.t2 = detail::config_get<double>(bj, "t2", c.bank.t2);
  }
  c.space = detail::config_get<std::string>(j, "space", c.space);
  if (c.space != "B" && c.space != "Btilde" && c.space != "Bvar" && c.space != "Nmorrey" &&
      c.space != "sharp" && c.space != "star")
    throw ConfigError("config: space must be one of B, Btilde, Bvar, Nmorrey, sharp, star");
  c.gamma = detail::config_get<int>(j, "gamma", c.gamma);
  if (c.gamma < 0 || c.gamma > c.J0)
    throw ConfigError("config: need 0 <= gamma <= J0");
  c.morrey_u = detail::config_get<double>(j, "morrey_u", c.morrey_u);
  c.seed = detail::config_get<std::uint64_t>(j, "seed", c.seed);
  c.threads = detail::config_get<int>(j, "threads", c.threads);
  if (c.threads < 0) throw ConfigError("config: threads must be >= 0");
  c.tol = detail::config_get<double>(j, "tol", c.tol);
  if (!(c.tol > 0.0) || c.tol > 1e-2) throw ConfigError("config: tol must be in (0, 1e-2]");
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: invalid JSON: " + path);
  return parse_config(j);
}

// Parsed exponents for one run; construction validates everything the norms
// will assume, so a bad expression fails before any field is read.
struct ResolvedExponents {
  VariableExponent alpha, p, q, tau;
};

inline VariableExponent parse_config_exponent(const std::string& expr, const Grid& g,
                                              const char* name) {
  try {
    VariableExponent e = parse_exponent(expr, g);
    for (double x : e.vals)
      if (!std::isfinite(x) && !e.is_inf)
        throw std::invalid_argument("exponent takes a non-finite value");
    return e;
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("config: exponent ") + name + ": " + ex.what());
  }
}

inline ResolvedExponents resolve_exponents(const RunConfig& c, const Grid& g) {
  ResolvedExponents r{parse_config_exponent(c.alpha_expr, g, "alpha"),
                      parse_config_exponent(c.p_expr, g, "p"),
                      parse_config_exponent(c.q_expr, g, "q"),
                      parse_config_exponent(c.tau_expr, g, "tau")};
  if (r.alpha.is_inf) throw ConfigError("config: alpha must be finite");
  auto positive = [](const VariableExponent& e, const char* name) {
    if (!e.is_inf && e.lo <= 0.0)
      throw ConfigError(std::string("config: exponent ") + name + " must be positive");
  };
  positive(r.p, "p");
  positive(r.q, "q");
  positive(r.tau, "tau");
  if (r.tau.is_inf) throw ConfigError("config: tau must be finite");
  return r;
}

inline nlohmann::json resolved_config_json(const RunConfig& c) {
  return nlohmann::json{
      {"grid", {{"dim", c.dim}, {"J0", c.J0}, {"J", c.J}}},
      {"exponents",
       {{"alpha", c.alpha_expr}, {"p", c.p_expr}, {"q", c.q_expr}, {"tau", c.tau_expr}}},
      {"bank", {{"t1", c.bank.t1}, {"t2", c.bank.t2}}},
      {"space", c.space},
      {"gamma", c.gamma},
      {"morrey_u", c.morrey_u},
      {"seed", c.seed},
      {"threads", c.threads},
      {"tol", c.tol}};
}

}  // namespace varbesov
