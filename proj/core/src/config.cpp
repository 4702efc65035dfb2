#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "catlight/errors.hpp"
#include "catlight/experiments.hpp"

namespace catlight {

namespace {

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

using Section = std::map<std::string, std::string>;

std::map<std::string, Section> parse_ini(const std::string& text,
                                         std::vector<std::string>& issues) {
  std::map<std::string, Section> sections;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back("line " + std::to_string(lineno) + ": unterminated section header");
        continue;
      }
      current = trim(line.substr(1, line.size() - 2));
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (current.empty()) {
      issues.push_back("line " + std::to_string(lineno) + ": key '" + key +
                       "' outside any [section]");
      continue;
    }
    if (!sections[current].emplace(key, value).second) {
      issues.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return sections;
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_size(const std::string& s, std::size_t& out) {
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return false;
  out = static_cast<std::size_t>(v);
  return true;
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1" || s == "on" || s == "yes") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "off" || s == "no") {
    out = false;
    return true;
  }
  return false;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

// Either a comma list "a,b,c" or an inclusive range "start:step:end".
bool parse_double_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    double start = 0.0, step = 0.0, end = 0.0;
    if (parts.size() != 3 || !parse_double(parts[0], start) ||
        !parse_double(parts[1], step) || !parse_double(parts[2], end) ||
        !(step > 0.0) || end < start) {
      return false;
    }
    for (int k = 0;; ++k) {
      const double v = start + k * step;
      if (v > end + 0.5 * step) break;
      out.push_back(std::min(v, end));
    }
    return !out.empty();
  }
  for (const std::string& item : split(s, ',')) {
    double v = 0.0;
    if (!parse_double(item, v)) return false;
    out.push_back(v);
  }
  return !out.empty();
}

bool parse_light(const std::string& s, LightKind& out) {
  if (s == "cat") {
    out = LightKind::cat;
    return true;
  }
  if (s == "coherent") {
    out = LightKind::coherent;
    return true;
  }
  return false;
}

bool parse_mode(const std::string& s, RunMode& out) {
  if (s == "full") {
    out = RunMode::full;
    return true;
  }
  if (s == "xfa_sg") {
    out = RunMode::xfa_sg;
    return true;
  }
  if (s == "xfa_gp") {
    out = RunMode::xfa_gp;
    return true;
  }
  return false;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = std::pow(10.0, llo + f * (lhi - llo));
  }
  return out;
}

}  // namespace

ExperimentSpec spec_from_string(ExperimentKind kind, const std::string& text) {
  std::vector<std::string> issues;
  const auto sections = parse_ini(text, issues);
  const std::string wanted = to_string(kind);
  const auto it = sections.find(wanted);
  if (it == sections.end()) {
    issues.push_back("missing section [" + wanted + "]");
    throw ConfigError(issues);
  }

  ExperimentSpec spec = default_spec(kind);
  double gamma_min = 0.0, gamma_max = 0.0;
  std::size_t gamma_points = 0;
  bool have_log_sweep = false;

  for (const auto& [key, value] : it->second) {
    const auto bad = [&issues, &key = key, &value = value](const std::string& what) {
      issues.push_back("key '" + key + "': " + what + " (got '" + value + "')");
    };
    if (key == "delta") {
      if (!parse_double(value, spec.physics.delta)) bad("expected a number");
    } else if (key == "mu") {
      if (!parse_double(value, spec.physics.mu)) bad("expected a number");
    } else if (key == "omega") {
      if (!parse_double(value, spec.physics.omega)) bad("expected a number");
    } else if (key == "gamma") {
      if (!parse_double(value, spec.physics.gamma)) bad("expected a number");
    } else if (key == "cutoff") {
      if (!parse_size(value, spec.physics.cutoff)) bad("expected a nonnegative integer");
    } else if (key == "dt") {
      if (!parse_double(value, spec.physics.dt)) bad("expected a number");
    } else if (key == "t_max") {
      if (!parse_double(value, spec.physics.t_max)) bad("expected a number");
    } else if (key == "rwa") {
      if (!parse_bool(value, spec.physics.rwa)) bad("expected true/false");
    } else if (key == "light") {
      if (!parse_light(value, spec.light)) bad("expected cat or coherent");
    } else if (key == "lights") {
      spec.lights.clear();
      for (const std::string& item : split(value, ',')) {
        LightKind l{};
        if (!parse_light(item, l)) {
          bad("expected a comma list of cat/coherent");
          break;
        }
        spec.lights.push_back(l);
      }
    } else if (key == "alpha0") {
      double re = 0.0;
      if (!parse_double(value, re)) {
        bad("expected a number");
      } else {
        spec.alpha0 = Complex{re, spec.alpha0.imag()};
      }
    } else if (key == "alpha0_re") {
      double re = 0.0;
      if (!parse_double(value, re)) {
        bad("expected a number");
      } else {
        spec.alpha0 = Complex{re, spec.alpha0.imag()};
      }
    } else if (key == "alpha0_im") {
      double im = 0.0;
      if (!parse_double(value, im)) {
        bad("expected a number");
      } else {
        spec.alpha0 = Complex{spec.alpha0.real(), im};
      }
    } else if (key == "alpha0_list") {
      if (!parse_double_list(value, spec.alpha0_sweep)) {
        bad("expected a comma list or start:step:end range");
      }
    } else if (key == "gamma_list") {
      if (!parse_double_list(value, spec.gamma_sweep)) {
        bad("expected a comma list or start:step:end range");
      }
    } else if (key == "gamma_min") {
      if (!parse_double(value, gamma_min)) bad("expected a number");
      have_log_sweep = true;
    } else if (key == "gamma_max") {
      if (!parse_double(value, gamma_max)) bad("expected a number");
      have_log_sweep = true;
    } else if (key == "gamma_points") {
      if (!parse_size(value, gamma_points)) bad("expected a positive integer");
      have_log_sweep = true;
    } else if (key == "modes") {
      spec.modes.clear();
      for (const std::string& item : split(value, ',')) {
        RunMode m{};
        if (!parse_mode(item, m)) {
          bad("expected a comma list of full/xfa_sg/xfa_gp");
          break;
        }
        spec.modes.push_back(m);
      }
    } else if (key == "fit_floor") {
      if (!parse_double(value, spec.fit_floor)) bad("expected a number");
    } else if (key == "stride") {
      if (!parse_size(value, spec.stride)) bad("expected a positive integer");
    } else if (key == "output") {
      spec.output = value;
    } else {
      issues.push_back("unknown key '" + key + "' in section [" + wanted + "]");
    }
  }

  if (have_log_sweep) {
    if (gamma_min > 0.0 && gamma_max > gamma_min && gamma_points >= 2) {
      spec.gamma_sweep = logspace(gamma_min, gamma_max, gamma_points);
    } else {
      issues.push_back(
          "gamma_min/gamma_max/gamma_points must give a positive, increasing, "
          ">=2-point grid");
    }
  }

  if (!issues.empty()) throw ConfigError(issues);
  return spec;
}

ExperimentSpec spec_from_file(ExperimentKind kind, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return spec_from_string(kind, text.str());
}

}  // namespace catlight
