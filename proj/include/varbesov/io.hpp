#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "filterbank.hpp"
#include "grid.hpp"
#include "sequences.hpp"

namespace varbesov {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline nlohmann::json read_header_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw FileError(std::string(what) + ": missing header line");
  nlohmann::json h = nlohmann::json::parse(line, nullptr, false);
  if (h.is_discarded() || !h.is_object())
    throw FileError(std::string(what) + ": header line is not a JSON object");
  return h;
}

template <typename T>
T header_get(const nlohmann::json& h, const char* key, const char* what) {
  if (!h.contains(key))
    throw FileError(std::string(what) + ": header missing \"" + key + "\"");
  try {
    return h.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FileError(std::string(what) + ": header field \"" + key + "\" has the wrong type");
  }
}

// raw doubles are stored little-endian; byte-swap only on big-endian hosts
inline bool host_little_endian() {
  const std::uint16_t probe = 1;
  unsigned char b;
  std::memcpy(&b, &probe, 1);
  return b == 1;
}

inline void write_doubles_le(std::ostream& out, const double* xs, std::size_t n) {
  if (host_little_endian()) {
    out.write(reinterpret_cast<const char*>(xs), std::streamsize(n * sizeof(double)));
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    unsigned char b[8];
    std::memcpy(b, &xs[i], 8);
    std::swap(b[0], b[7]);
    std::swap(b[1], b[6]);
    std::swap(b[2], b[5]);
    std::swap(b[3], b[4]);
    out.write(reinterpret_cast<const char*>(b), 8);
  }
}

inline void read_doubles_le(std::istream& in, double* xs, std::size_t n, const char* what) {
  in.read(reinterpret_cast<char*>(xs), std::streamsize(n * sizeof(double)));
  if (std::size_t(in.gcount()) != n * sizeof(double))
    throw FileError(std::string(what) + ": truncated sample data");
  if (!host_little_endian()) {
    for (std::size_t i = 0; i < n; ++i) {
      unsigned char b[8];
      std::memcpy(b, &xs[i], 8);
      std::swap(b[0], b[7]);
      std::swap(b[1], b[6]);
      std::swap(b[2], b[5]);
      std::swap(b[3], b[4]);
      std::memcpy(&xs[i], b, 8);
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// field files: one JSON header line, then row-major samples
// ---------------------------------------------------------------------------

enum class FieldEncoding { Binary, Text };

inline void write_field(const std::string& path, const Field& f,
                        FieldEncoding enc = FieldEncoding::Binary) {
  const Grid& g = f.grid;
  bool complex = false;
  for (const cplx& z : f.a)
    if (z.imag() != 0.0) {
      complex = true;
      break;
    }
  nlohmann::json h{{"format_version", 1},
                   {"kind", "field"},
                   {"dim", g.dim},
                   {"J0", g.J0},
                   {"J", g.J},
                   {"dtype", complex ? "complex128" : "real64"},
                   {"byte_order", "little"},
                   {"encoding", enc == FieldEncoding::Binary ? "binary" : "text"}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("field file: cannot open for writing: " + path);
  out << h.dump() << "\n";
  if (enc == FieldEncoding::Binary) {
    std::vector<double> buf;
    buf.reserve(f.a.size() * (complex ? 2 : 1));
    for (const cplx& z : f.a) {
      buf.push_back(z.real());
      if (complex) buf.push_back(z.imag());
    }
    detail::write_doubles_le(out, buf.data(), buf.size());
  } else {
    for (const cplx& z : f.a) {
      out << format_double(z.real());
      if (complex) out << " " << format_double(z.imag());
      out << "\n";
    }
  }
  if (!out) throw FileError("field file: write failed: " + path);
}

inline Field read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("field file: cannot open: " + path);
  nlohmann::json h = detail::read_header_line(in, "field file");
  if (detail::header_get<std::string>(h, "kind", "field file") != "field")
    throw FileError("field file: kind is not \"field\"");
  if (detail::header_get<int>(h, "format_version", "field file") != 1)
    throw FileError("field file: unsupported format_version");
  int dim = detail::header_get<int>(h, "dim", "field file");
  int J0 = detail::header_get<int>(h, "J0", "field file");
  int J = detail::header_get<int>(h, "J", "field file");
  std::string dtype = detail::header_get<std::string>(h, "dtype", "field file");
  std::string enc = detail::header_get<std::string>(h, "encoding", "field file");
  if (detail::header_get<std::string>(h, "byte_order", "field file") != "little")
    throw FileError("field file: unsupported byte order");
  if (dim != 1 && dim != 2) throw FileError("field file: dim must be 1 or 2");
  if (J0 < 0 || J < 0 || J0 + J <= 0 || J0 + J > 24)
    throw FileError("field file: implausible grid levels");
  bool complex;
  if (dtype == "real64")
    complex = false;
  else if (dtype == "complex128")
    complex = true;
  else
    throw FileError("field file: dtype must be real64 or complex128");
  Grid g(dim, J0, J);
  Field f(g);
  std::size_t n = g.size() * (complex ? 2 : 1);
  std::vector<double> buf(n);
  if (enc == "binary") {
    detail::read_doubles_le(in, buf.data(), n, "field file");
  } else if (enc == "text") {
    for (std::size_t i = 0; i < n; ++i)
      if (!(in >> buf[i])) throw FileError("field file: truncated text samples");
  } else {
    throw FileError("field file: encoding must be binary or text");
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    f.a[i] = complex ? cplx(buf[2 * i], buf[2 * i + 1]) : cplx(buf[i], 0.0);
  return f;
}

// ---------------------------------------------------------------------------
// coefficient files: JSON header line, then sparse "v m... re im" text lines
// ---------------------------------------------------------------------------

inline void write_coefficients(const std::string& path, const CoefficientSequence& s,
                               const BankProfile& prof) {
  const Grid& g = s.grid;
  nlohmann::json h{{"format_version", 1},
                   {"kind", "coefficients"},
                   {"V", s.V},
                   {"grid", {{"dim", g.dim}, {"J0", g.J0}, {"J", g.J}}},
                   {"bank", {{"t1", prof.t1}, {"t2", prof.t2}}},
                   {"encoding", "text"}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("coefficient file: cannot open for writing: " + path);
  out << h.dump() << "\n";
  for (int v = 0; v <= s.V; ++v) {
    int per = s.per_axis(v);
    for (std::size_t k = 0; k < s.lam[v].size(); ++k) {
      cplx z = s.lam[v][k];
      if (z == cplx(0.0)) continue;
      out << v << " " << (g.dim == 1 ? int(k) : int(k) / per);
      if (g.dim == 2) out << " " << int(k) % per;
      out << " " << format_double(z.real()) << " " << format_double(z.imag()) << "\n";
    }
  }
  if (!out) throw FileError("coefficient file: write failed: " + path);
}

struct CoefficientFile {
  CoefficientSequence seq;
  BankProfile prof;
};

inline CoefficientFile read_coefficients(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("coefficient file: cannot open: " + path);
  nlohmann::json h = detail::read_header_line(in, "coefficient file");
  if (detail::header_get<std::string>(h, "kind", "coefficient file") != "coefficients")
    throw FileError("coefficient file: kind is not \"coefficients\"");
  if (detail::header_get<int>(h, "format_version", "coefficient file") != 1)
    throw FileError("coefficient file: unsupported format_version");
  int V = detail::header_get<int>(h, "V", "coefficient file");
  nlohmann::json gj = detail::header_get<nlohmann::json>(h, "grid", "coefficient file");
  nlohmann::json bj = detail::header_get<nlohmann::json>(h, "bank", "coefficient file");
  int dim = detail::header_get<int>(gj, "dim", "coefficient file");
  int J0 = detail::header_get<int>(gj, "J0", "coefficient file");
  int J = detail::header_get<int>(gj, "J", "coefficient file");
  if (dim != 1 && dim != 2) throw FileError("coefficient file: dim must be 1 or 2");
  if (J0 < 0 || J < 0 || J0 + J <= 0 || J0 + J > 24)
    throw FileError("coefficient file: implausible grid levels");
  Grid g(dim, J0, J);
  if (V < 0 || V > g.J - 2) throw FileError("coefficient file: V out of range");
  CoefficientFile cf{CoefficientSequence(g, V),
                     BankProfile{detail::header_get<double>(bj, "t1", "coefficient file"),
                                 detail::header_get<double>(bj, "t2", "coefficient file")}};
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int v, m0, m1 = 0;
    double re, im;
    bool ok = bool(ls >> v >> m0);
    if (ok && dim == 2) ok = bool(ls >> m1);
    if (ok) ok = bool(ls >> re >> im);
    if (!ok)
      throw FileError("coefficient file: malformed entry at line " + std::to_string(lineno));
    if (v < 0 || v > V)
      throw FileError("coefficient file: level out of range at line " + std::to_string(lineno));
    int per = cf.seq.per_axis(v);
    if (m0 < 0 || m0 >= per || m1 < 0 || m1 >= (dim == 2 ? per : 1))
      throw FileError("coefficient file: cube index out of range at line " +
                      std::to_string(lineno));
    cf.seq.lam[v][dim == 1 ? std::size_t(m0) : std::size_t(m0) * per + m1] = cplx(re, im);
  }
  return cf;
}

// ---------------------------------------------------------------------------
// reports: "key: value" text, deterministic except the timestamp line
// ---------------------------------------------------------------------------

class Report {
 public:
  void kv(const std::string& key, const std::string& value) {
    body_ += key + ": " + value + "\n";
  }
  void kv(const std::string& key, double value) { kv(key, format_double(value)); }
  void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }
  void blank() { body_ += "\n"; }
  void section(const std::string& name) { body_ += "## " + name + "\n"; }

  // the timestamp is the one line exempt from byte-identity across runs
  std::string render(bool with_timestamp = true) const {
    std::string out;
    if (with_timestamp) out += "timestamp: " + now_utc() + "\n";
    out += body_;
    return out;
  }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("report: cannot open for writing: " + path);
    out << render();
    if (!out) throw FileError("report: write failed: " + path);
  }

 private:
  static std::string now_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tmv{};
    gmtime_r(&t, &tmv);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tmv);
    return buf;
  }

  std::string body_;
};

}  // namespace varbesov
