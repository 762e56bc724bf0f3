#include "kpwave/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "kpwave/digest.hpp"

namespace kpwave {

std::string_view to_string(SnapshotFormat f) { return f == SnapshotFormat::csv ? "csv" : "f64le"; }

SnapshotFormat parse_snapshot_format(std::string_view s) {
  if (s == "f64le") return SnapshotFormat::f64le;
  if (s == "csv") return SnapshotFormat::csv;
  throw ConfigError("unknown snapshot format '" + std::string(s) + "' (expected f64le or csv)");
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    if (!out.empty()) out += '\n';
    out += i.line ? "line " + std::to_string(i.line) + ": " + i.message : i.message;
  }
  return out.empty() ? "invalid configuration" : out;
}

}  // namespace

ConfigParseError::ConfigParseError(std::vector<ConfigIssue> issues)
    : ConfigError(join_issues(issues)), issues_(std::move(issues)) {}

namespace {

constexpr std::size_t kMaxSamples = std::size_t{1} << 26;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\v\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\v\f");
  return s.substr(first, last - first + 1);
}

std::string collapse_spaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::optional<double> parse_plain_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Accepts plain decimals and multiples of pi: "pi", "-pi", "4pi", "-4*pi", "0.5 * pi".
std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    std::string_view factor = trim(s.substr(0, s.size() - 2));
    if (!factor.empty() && factor.back() == '*') factor = trim(factor.substr(0, factor.size() - 1));
    double f = 1.0;
    if (factor == "-") {
      f = -1.0;
    } else if (!factor.empty() && factor != "+") {
      const auto v = parse_plain_double(factor);
      if (!v) return std::nullopt;
      f = *v;
    }
    return f * std::numbers::pi;
  }
  return parse_plain_double(s);
}

std::optional<std::size_t> parse_count(std::string_view s) {
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return static_cast<std::size_t>(v);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

using Key = std::pair<std::string, std::string>;  // (section, key)

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"", {"equation", "branch", "nu0"}},
      {"grid", {"nx", "ny", "xmin", "xmax", "ymin", "ymax"}},
      {"run",
       {"dt", "t_end", "initial", "kappa", "theta", "x0", "snapshots", "eps_reg", "zero_mode",
        "dealias", "diag_stride", "output", "format"}},
      {"material",
       {"lambda", "mu", "rho0", "alpha1", "alpha2", "gamma0", "gamma1", "gamma2", "A", "D", "nu0",
        "nu", "length", "epsilon"}},
  };
  return keys;
}

class Parser {
 public:
  explicit Parser(std::string_view text) { tokenize(text); }

  SimulationConfig parse() {
    SimulationConfig c;
    read_equation(c);
    read_grid(c);
    read_run(c);
    c.canonical_text = canonical_text();
    c.digest = sha256_hex(c.canonical_text);
    if (!issues_.empty()) {
      std::stable_sort(issues_.begin(), issues_.end(),
                       [](const ConfigIssue& a, const ConfigIssue& b) { return a.line < b.line; });
      throw ConfigParseError(std::move(issues_));
    }
    return c;
  }

 private:
  std::map<Key, Entry> entries_;
  std::map<std::string, std::size_t> section_lines_;
  std::vector<ConfigIssue> issues_;

  void issue(std::size_t line, std::string msg) { issues_.push_back({line, std::move(msg)}); }

  static std::string where(const std::string& section) {
    return section.empty() ? "at top level" : "in [" + section + "]";
  }

  void tokenize(std::string_view text) {
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view raw =
          text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
      const std::string_view line = trim(raw);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          issue(line_no, "malformed section header");
          continue;
        }
        const std::string name(trim(line.substr(1, line.size() - 2)));
        if (name.empty() || !allowed_keys().count(name)) {
          issue(line_no, "unknown section [" + name + "]");
          section = "\x01";  // swallow keys of the unknown section without extra noise
          continue;
        }
        if (section_lines_.count(name)) {
          issue(line_no, "section [" + name + "] repeated (first at line " +
                             std::to_string(section_lines_[name]) + ")");
        } else {
          section_lines_[name] = line_no;
        }
        section = name;
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        issue(line_no, "expected 'key = value'");
        continue;
      }
      const std::string key(trim(line.substr(0, eq)));
      const std::string value = collapse_spaces(trim(line.substr(eq + 1)));
      if (key.empty()) {
        issue(line_no, "missing key before '='");
        continue;
      }
      if (section == "\x01") continue;
      if (!allowed_keys().at(section).count(key)) {
        issue(line_no, "unknown key '" + key + "' " + where(section));
        continue;
      }
      if (value.empty()) {
        issue(line_no, "missing value for '" + key + "'");
        continue;
      }
      auto [it, inserted] = entries_.try_emplace({section, key}, Entry{value, line_no});
      if (!inserted) {
        issue(line_no, "duplicate key '" + key + "' (first at line " +
                           std::to_string(it->second.line) + ")");
      }
    }
  }

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto it = entries_.find({section, key});
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
  }

  std::size_t line_of(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    return e ? e->line : 0;
  }

  const Entry* require(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (!e) issue(section_lines_.count(section) ? section_lines_[section] : 0,
                  "missing required key '" + key + "' " + where(section));
    return e;
  }

  std::optional<double> number(const std::string& section, const std::string& key,
                               bool required) {
    const Entry* e = required ? require(section, key) : find(section, key);
    if (!e) return std::nullopt;
    const auto v = parse_number(e->value);
    if (!v) issue(e->line, "'" + key + "' is not a finite number: '" + e->value + "'");
    return v;
  }

  template <class Pred>
  std::optional<double> checked(const std::string& section, const std::string& key, bool required,
                                Pred ok, const char* requirement) {
    auto v = number(section, key, required);
    if (v && !ok(*v)) {
      issue(line_of(section, key), "'" + key + "' " + requirement + " (got " + fmt(*v) + ")");
      return std::nullopt;
    }
    return v;
  }

  std::optional<double> positive(const std::string& section, const std::string& key,
                                 bool required) {
    return checked(section, key, required, [](double v) { return v > 0.0; }, "must be positive");
  }

  void read_equation(SimulationConfig& c) {
    EquationKind kind = EquationKind::quadratic;
    bool kind_ok = false;
    if (const Entry* e = require("", "equation")) {
      try {
        kind = parse_equation_kind(e->value);
        kind_ok = true;
      } catch (const Error& ex) {
        issue(e->line, ex.what());
      }
    }

    const Entry* branch = find("", "branch");
    const bool has_material = section_lines_.count("material") > 0;
    if (branch && has_material) {
      issue(branch->line, "'branch' (line " + std::to_string(branch->line) +
                              ") conflicts with the [material] block (line " +
                              std::to_string(section_lines_["material"]) +
                              "); give exactly one sign source");
    }
    if (has_material && has("", "nu0")) {
      issue(line_of("", "nu0"), "top-level 'nu0' conflicts with the [material] block; set nu0 "
                                "inside [material]");
    }

    if (!kind_ok) return;

    if (has_material && !branch) {
      read_material(c, kind);
      return;
    }
    SignBranch b = SignBranch::plus;
    if (branch) {
      try {
        b = parse_sign_branch(branch->value);
      } catch (const Error& ex) {
        issue(branch->line, ex.what());
      }
    }
    c.spec = EquationSpec::canonical(kind, b);
    if (auto nu0 = positive("", "nu0", false)) c.spec.nu0 = *nu0;
  }

  void read_material(SimulationConfig& c, EquationKind kind) {
    const std::size_t header = section_lines_["material"];
    const std::set<std::string> quad_only = {"lambda", "alpha1", "alpha2", "gamma0", "gamma1",
                                             "gamma2"};
    const std::set<std::string> cubic_only = {"A", "D"};
    const auto& foreign = kind == EquationKind::quadratic ? cubic_only : quad_only;
    for (const auto& k : foreign) {
      if (const Entry* e = find("material", k)) {
        issue(e->line, "material key '" + k + "' does not apply to the " +
                           std::string(to_string(kind)) + " equation");
      }
    }

    // Dispersion: nu0 directly, or the physical nu with a length scale.
    const bool direct = has("material", "nu0");
    const bool physical = has("material", "nu") || has("material", "length");
    if (direct && physical) {
      issue(line_of("material", "nu0"), "give either 'nu0' or 'nu' with 'length', not both");
    } else if (!direct && !physical) {
      issue(header, "[material] needs 'nu0' or 'nu' with 'length'");
    }
    auto eps = checked("material", "epsilon", false,
                       [](double v) { return v > 0.0 && v < 1.0; }, "must lie in (0, 1)");
    double epsilon = 0.01;
    if (eps) {
      epsilon = *eps;
    } else if (!has("material", "epsilon")) {
      c.warnings.push_back("epsilon not set; using 0.01");
    }

    auto mu = number("material", "mu", true);
    auto rho0 = number("material", "rho0", true);
    std::optional<double> nu0;
    std::optional<double> nu;
    std::optional<double> length;
    if (direct) nu0 = number("material", "nu0", true);
    if (physical) {
      nu = number("material", "nu", true);
      length = number("material", "length", true);
    }

    if (kind == EquationKind::quadratic) {
      auto lambda = number("material", "lambda", true);
      TaylorConstants t;
      bool ok = lambda && mu && rho0 && (nu0 || (nu && length));
      const char* names[] = {"alpha1", "alpha2", "gamma0", "gamma1", "gamma2"};
      double* slots[] = {&t.alpha1, &t.alpha2, &t.gamma0, &t.gamma1, &t.gamma2};
      for (int i = 0; i < 5; ++i) {
        auto v = number("material", names[i], true);
        if (v) {
          *slots[i] = *v;
        } else {
          ok = false;
        }
      }
      if (!ok) return;
      try {
        const auto m = nu0 ? MaterialCompressible(*lambda, *mu, *rho0, t, *nu0)
                           : MaterialCompressible::with_physical_dispersion(
                                 *lambda, *mu, *rho0, t, *nu, *length, epsilon);
        const double beta = beta_quadratic(m);
        c.spec = equation_spec(kind, beta, m.nu0());
        c.material = MaterialSummary{wave_speeds(m).c_ell, beta, epsilon};
      } catch (const Error& ex) {
        issue(header, ex.what());
      }
    } else {
      auto a = number("material", "A", true);
      auto d = number("material", "D", true);
      if (!(a && d && mu && rho0 && (nu0 || (nu && length)))) return;
      try {
        const auto m = nu0 ? MaterialIncompressible(*mu, *rho0, *a, *d, *nu0)
                           : MaterialIncompressible::with_physical_dispersion(
                                 *mu, *rho0, *a, *d, *nu, *length, epsilon);
        const double beta3 = beta3_landau(m);
        c.spec = equation_spec(kind, beta3, m.nu0());
        c.material = MaterialSummary{shear_speed(m), beta3, epsilon};
      } catch (const Error& ex) {
        issue(header, ex.what());
      }
    }
  }

  std::optional<std::size_t> grid_count(const std::string& key) {
    const Entry* e = require("grid", key);
    if (!e) return std::nullopt;
    const auto n = parse_count(e->value);
    if (!n) {
      issue(e->line, "'" + key + "' is not a non-negative integer: '" + e->value + "'");
    } else if (*n < 16 || !is_power_of_two(*n)) {
      issue(e->line, "'" + key + "' must be a power of two >= 16 (got " + e->value + ")");
    } else {
      return n;
    }
    return std::nullopt;
  }

  void read_grid(SimulationConfig& c) {
    if (!section_lines_.count("grid")) {
      issue(0, "missing [grid] section");
      return;
    }
    auto nx = grid_count("nx");
    auto ny = grid_count("ny");
    if (nx && ny) {
      if (*nx > kMaxSamples / *ny) {
        issue(line_of("grid", "ny"), "grid has more than 2^26 samples");
      } else {
        c.nx = *nx;
        c.ny = *ny;
      }
    }
    auto x0 = number("grid", "xmin", true);
    auto x1 = number("grid", "xmax", true);
    auto y0 = number("grid", "ymin", true);
    auto y1 = number("grid", "ymax", true);
    if (x0 && x1) {
      if (!(*x1 > *x0)) issue(line_of("grid", "xmax"), "'xmax' must exceed 'xmin'");
      c.domain.x_min = *x0;
      c.domain.x_max = *x1;
    }
    if (y0 && y1) {
      if (!(*y1 > *y0)) issue(line_of("grid", "ymax"), "'ymax' must exceed 'ymin'");
      c.domain.y_min = *y0;
      c.domain.y_max = *y1;
    }
  }

  template <class T, class Fn>
  void choice(const std::string& key, T& slot, Fn parse) {
    const Entry* e = find("run", key);
    if (!e) return;
    try {
      slot = parse(e->value);
    } catch (const Error& ex) {
      issue(e->line, ex.what());
    }
  }

  void read_run(SimulationConfig& c) {
    if (!section_lines_.count("run")) {
      issue(0, "missing [run] section");
      return;
    }
    if (auto dt = positive("run", "dt", true)) c.dt = *dt;
    if (auto t = checked("run", "t_end", true, [](double v) { return v >= 0.0; },
                         "must be non-negative")) {
      c.t_end = *t;
    }
    if (auto eps = positive("run", "eps_reg", false)) c.eps_reg = *eps;

    const bool soliton_init = [&] {
      const Entry* e = require("run", "initial");
      if (!e) return false;
      if (e->value == "line_soliton") return true;
      try {
        c.initial = parse_initial_condition(e->value);
      } catch (const Error&) {
        issue(e->line, "unknown initial condition '" + e->value +
                           "' (expected soliton_quad, soliton_cubic, radial_quad, radial_cubic "
                           "or line_soliton)");
      }
      return false;
    }();
    if (soliton_init) {
      LineSolitonInitial s;
      if (auto k = positive("run", "kappa", false)) s.kappa = *k;
      if (auto th = number("run", "theta", false)) s.theta = *th;
      if (auto x0 = number("run", "x0", false)) s.x0 = *x0;
      c.initial = s;
    } else {
      for (const char* k : {"kappa", "theta", "x0"}) {
        if (const Entry* e = find("run", k)) {
          issue(e->line, std::string("'") + k + "' only applies to initial = line_soliton");
        }
      }
    }

    if (const Entry* e = find("run", "snapshots")) {
      std::string list = e->value;
      std::replace(list.begin(), list.end(), ',', ' ');
      std::istringstream is(list);
      std::string tok;
      bool ok = true;
      while (is >> tok) {
        const auto v = parse_number(tok);
        if (!v) {
          issue(e->line, "snapshot time '" + tok + "' is not a finite number");
          ok = false;
        } else if (*v < 0.0 || *v > c.t_end) {
          issue(e->line, "snapshot time " + tok + " lies outside [0, t_end]");
          ok = false;
        } else {
          c.snapshot_times.push_back(*v);
        }
      }
      if (ok && c.snapshot_times.empty()) issue(e->line, "'snapshots' lists no times");
      std::sort(c.snapshot_times.begin(), c.snapshot_times.end());
      c.snapshot_times.erase(std::unique(c.snapshot_times.begin(), c.snapshot_times.end()),
                             c.snapshot_times.end());
    }
    if (c.snapshot_times.empty()) {
      c.snapshot_times = c.t_end > 0.0 ? std::vector<double>{0.0, c.t_end} : std::vector<double>{0.0};
    }

    choice("zero_mode", c.zero_mode_policy, [](const std::string& v) {
      if (v == "project") return ZeroModePolicy::project;
      if (v == "regularize") return ZeroModePolicy::regularize;
      throw ConfigError("'zero_mode' must be project or regularize (got '" + v + "')");
    });
    choice("dealias", c.dealias, [](const std::string& v) {
      if (v == "off") return Dealias::off;
      if (v == "two_thirds") return Dealias::two_thirds;
      throw ConfigError("'dealias' must be off or two_thirds (got '" + v + "')");
    });
    choice("format", c.format, [](const std::string& v) { return parse_snapshot_format(v); });
    if (const Entry* e = find("run", "diag_stride")) {
      const auto n = parse_count(e->value);
      if (!n || *n == 0) {
        issue(e->line, "'diag_stride' must be a positive integer (got '" + e->value + "')");
      } else {
        c.diagnostics_stride = *n;
      }
    }
    if (const Entry* e = find("run", "output")) c.output_dir = e->value;
  }

  std::string canonical_text() const {
    std::string out;
    std::string current = "\x01";
    for (const auto& [key, entry] : entries_) {
      if (key.first != current) {
        current = key.first;
        if (!current.empty()) out += "[" + current + "]\n";
      }
      out += key.second + " = " + entry.value + "\n";
    }
    return out;
  }
};

}  // namespace

SimulationConfig parse_config(std::string_view text) {
  try {
    return Parser(text).parse();
  } catch (const ConfigParseError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigParseError({{0, ex.what()}});
  }
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigParseError({{0, "cannot open config file '" + path + "'"}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

SolverConfig to_solver_config(const SimulationConfig& c) {
  SolverConfig s;
  s.spec = c.spec;
  s.grid = make_grid(c.nx, c.ny, c.domain);
  s.dt = c.dt;
  s.t_end = c.t_end;
  s.eps_reg = c.eps_reg;
  s.zero_mode_policy = c.zero_mode_policy;
  s.dealias = c.dealias;
  s.snapshot_times = c.snapshot_times;
  s.diagnostics_stride = c.diagnostics_stride;
  s.digest = c.digest;
  return s;
}

Field2D sample_initial(const SimulationConfig& c, const SpectralGrid& grid) {
  if (const auto* ic = std::get_if<InitialCondition>(&c.initial)) return sample_initial(grid, *ic);
  const auto& s = std::get<LineSolitonInitial>(c.initial);
  return sample_soliton(grid, SolitonParams(c.spec.kind, s.kappa, s.theta, s.x0, c.spec.branch),
                        0.0);
}

}  // namespace kpwave
