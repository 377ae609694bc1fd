#include "radcurv/manifest.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "radcurv/comparison.hpp"
#include "radcurv/errors.hpp"

namespace radcurv {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::syntax: return "syntax error";
    case ErrorKind::unknown_identifier: return "unknown identifier";
    case ErrorKind::out_of_domain: return "out of domain";
    case ErrorKind::bad_parameter: return "bad parameter";
    case ErrorKind::empty_domain: return "empty domain";
    case ErrorKind::solver_failure: return "solver failure";
    case ErrorKind::quadrature_failure: return "quadrature failure";
    case ErrorKind::no_root: return "no root";
    case ErrorKind::hypothesis_unmet: return "hypothesis unmet";
    case ErrorKind::ladder_too_short: return "ladder too short";
    case ErrorKind::eigensolve_failure: return "eigensolve failure";
    case ErrorKind::optimizer_stalled: return "optimizer stalled";
    case ErrorKind::not_integrable: return "not integrable";
    case ErrorKind::time_too_small: return "time too small";
    case ErrorKind::step_rejected: return "step rejected";
    case ErrorKind::config_error: return "config error";
    case ErrorKind::io_error: return "io error";
  }
  return "error";
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// strip an end-of-line comment, respecting double quotes
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    else if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

struct Diagnostics {
  std::vector<std::string> items;
  void add(int line, const std::string& msg) {
    // line 0 marks post-parse (whole-file) complaints
    if (line > 0)
      items.push_back("line " + std::to_string(line) + ": " + msg);
    else
      items.push_back(msg);
  }
  void raise_if_any() const {
    if (items.empty()) return;
    std::string joined = "invalid manifest";
    for (const auto& it : items) joined += "; " + it;
    fail(ErrorKind::config_error, joined);
  }
};

bool parse_num(const std::string& s, double* out) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end == s.c_str() || *end != '\0' || !std::isfinite(v))
    return false;
  *out = v;
  return true;
}

bool parse_int(const std::string& s, long long* out) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end == s.c_str() || *end != '\0') return false;
  *out = v;
  return true;
}

bool parse_seed(const std::string& s, std::uint64_t* out) {
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (errno != 0 || end == s.c_str() || *end != '\0' || s.front() == '-')
    return false;
  *out = v;
  return true;
}

// expressions must come quoted; returns false when the quotes are missing
bool unquote(const std::string& s, std::string* out) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return false;
  *out = s.substr(1, s.size() - 2);
  return true;
}

std::string maybe_unquote(const std::string& s) {
  std::string inner;
  return unquote(s, &inner) ? inner : s;
}

// "tag" or "tag(number)"; returns true and fills arg (NaN when absent)
bool split_tag(const std::string& s, const std::string& name, double* arg) {
  if (s == name) {
    *arg = std::nan("");
    return true;
  }
  if (s.size() > name.size() + 2 && s.compare(0, name.size(), name) == 0 &&
      s[name.size()] == '(' && s.back() == ')') {
    std::string inner = s.substr(name.size() + 1, s.size() - name.size() - 2);
    return parse_num(trim(inner), arg);
  }
  return false;
}

bool grid_positive(const std::vector<double>& g) {
  for (double v : g)
    if (!(v > 0.0)) return false;
  return !g.empty();
}

}  // namespace

std::string builtin_warp_source(const std::string& tag) {
  std::string t = trim(tag);
  double arg = 0.0;
  if (split_tag(t, "euclidean", &arg)) {
    if (!std::isnan(arg)) fail(ErrorKind::config_error, "euclidean takes no argument");
    return "t";
  }
  if (split_tag(t, "hyperbolic", &arg)) {
    if (std::isnan(arg) || arg == 1.0) return "sinh(t)";
    if (!(arg > 0.0)) fail(ErrorKind::config_error, "hyperbolic(a) needs a > 0");
    std::string a = format_double(arg);
    return "sinh(" + a + "*t)/" + a;
  }
  if (split_tag(t, "sphere", &arg)) {
    if (std::isnan(arg) || arg == 1.0) return "sin(t)";
    if (!(arg > 0.0)) fail(ErrorKind::config_error, "sphere(k) needs k > 0");
    std::string s = format_double(std::sqrt(arg));
    return "sin(" + s + "*t)/" + s;
  }
  fail(ErrorKind::config_error, "unknown builtin '" + t +
                                    "' (euclidean, hyperbolic(a), sphere(k))");
}

Manifest parse_manifest(const std::string& text) {
  Manifest m;
  Diagnostics diag;
  std::set<std::string> seen;
  std::string section;
  bool have_g = false, have_builtin = false;
  int g_line = 0, lambda_line = 0;

  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        diag.add(lineno, "unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "manifold" && section != "model" && section != "run" &&
          section != "output")
        diag.add(lineno, "unknown section [" + section + "]");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      diag.add(lineno, "expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      diag.add(lineno, "empty key or value");
      continue;
    }
    std::string full = section + "." + key;
    if (!seen.insert(full).second) {
      diag.add(lineno, "duplicate key " + full);
      continue;
    }

    if (full == "manifold.n") {
      long long v = 0;
      if (!parse_int(value, &v) || v < 2 || v > 50)
        diag.add(lineno, "n must be an integer in [2, 50]");
      else
        m.n = static_cast<int>(v);
    } else if (full == "manifold.g") {
      if (!unquote(value, &m.g_source))
        diag.add(lineno, "warp expression must be double-quoted");
      else {
        have_g = true;
        g_line = lineno;
      }
    } else if (full == "manifold.builtin") {
      m.builtin = maybe_unquote(value);
      have_builtin = true;
      g_line = lineno;
    } else if (full == "manifold.L") {
      if (!parse_num(value, &m.L) || !(m.L > 0.0))
        diag.add(lineno, "L must be a positive number");
    } else if (full == "model.lambda") {
      if (!unquote(value, &m.lambda_source))
        diag.add(lineno, "bound expression must be double-quoted");
      else
        lambda_line = lineno;
    } else if (full == "model.T") {
      if (!parse_num(value, &m.T) || !(m.T > 0.0))
        diag.add(lineno, "T must be a positive number");
    } else if (full == "run.theorems") {
      m.theorems = split_list(value);
      if (m.theorems.empty()) diag.add(lineno, "empty theorem list");
      for (const auto& name : m.theorems) {
        try {
          theorem_id_from_name(name);
        } catch (const Error&) {
          diag.add(lineno, "unknown theorem '" + name + "'");
        }
      }
    } else if (full == "run.p" || full == "run.R" || full == "run.r") {
      std::vector<double> grid;
      bool ok = true;
      for (const auto& tok : split_list(value)) {
        double v = 0.0;
        if (!parse_num(tok, &v)) ok = false;
        grid.push_back(v);
      }
      if (!ok || !grid_positive(grid)) {
        diag.add(lineno, key + " must be a comma list of positive numbers");
      } else if (full == "run.p") {
        m.p_grid = grid;
      } else if (full == "run.R") {
        m.R_grid = grid;
      } else {
        m.r_grid = grid;
      }
    } else if (full == "run.tol") {
      if (!parse_num(value, &m.tol) || !(m.tol > 0.0) || m.tol > 1.0)
        diag.add(lineno, "tol must be in (0, 1]");
    } else if (full == "run.seed") {
      if (!parse_seed(value, &m.seed))
        diag.add(lineno, "seed must be a nonnegative integer");
    } else if (full == "output.dir") {
      m.out_dir = maybe_unquote(value);
    } else if (full == "output.json") {
      m.json_name = maybe_unquote(value);
    } else if (full == "output.csv") {
      m.csv_name = maybe_unquote(value);
    } else {
      diag.add(lineno, "unknown key " + full);
    }
  }

  if (have_g && have_builtin)
    diag.add(g_line, "give either g or builtin, not both");
  if (!have_g && !have_builtin)
    diag.add(0, "manifold needs a warp: g = \"...\" or builtin = ...");
  if (have_g) {
    try {
      RadialFunction::from_source(m.g_source);
    } catch (const Error& e) {
      diag.add(g_line, std::string("g: ") + e.what());
    }
  }
  if (have_builtin) {
    try {
      builtin_warp_source(m.builtin);
    } catch (const Error& e) {
      diag.add(g_line, e.what());
    }
  }
  try {
    RadialFunction::from_source(m.lambda_source);
  } catch (const Error& e) {
    diag.add(lambda_line, std::string("lambda: ") + e.what());
  }

  diag.raise_if_any();
  return m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io_error, "cannot read manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

RotSymManifold manifest_manifold(const Manifest& m) {
  std::string src =
      m.g_source.empty() ? builtin_warp_source(m.builtin) : m.g_source;
  bool closed = trim(m.builtin).rfind("sphere", 0) == 0;
  double L = m.L;
  if (L <= 0.0) {
    if (closed) {
      double arg = 1.0;
      split_tag(trim(m.builtin), "sphere", &arg);
      if (std::isnan(arg)) arg = 1.0;
      L = M_PI / std::sqrt(arg);
    } else {
      L = 1e6;
    }
  }
  return make_manifold(m.n, RadialFunction::from_source(src), L, closed);
}

ModelSpace manifest_model(const Manifest& m) {
  ModelSpace ms = solve_warp(RadialFunction::from_source(m.lambda_source), m.T);
  ms.n = m.n;
  return ms;
}

}  // namespace radcurv
