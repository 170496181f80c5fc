#include "curvedpipe/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

namespace {

using Value = std::variant<long long, double, bool, std::string>;

Error config_error(const std::string& msg) { return Error(ErrorCategory::config, msg); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

Value parse_value(const std::string& raw, const std::string& where) {
  const std::string s = trim(raw);
  if (s.empty()) throw config_error(where + ": missing value");
  if (s == "true") return true;
  if (s == "false") return false;
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') throw config_error(where + ": unterminated string");
    return s.substr(1, s.size() - 2);
  }
  std::string num;
  for (char c : s) {
    if (c != '_') num += c;
  }
  const char* begin = num.c_str();
  char* end = nullptr;
  errno = 0;
  const bool integral = num.find_first_of(".eEna") == std::string::npos;
  if (integral) {
    const long long v = std::strtoll(begin, &end, 10);
    if (end != begin && *end == '\0' && errno == 0) return v;
  } else {
    const double v = std::strtod(begin, &end);
    if (end != begin && *end == '\0' && errno == 0) return v;
  }
  throw config_error(where + ": cannot parse value '" + s + "'");
}

double as_double(const Value& v, const std::string& key) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<long long>(&v)) return static_cast<double>(*i);
  throw config_error(key + " must be a number");
}

int as_int(const Value& v, const std::string& key) {
  if (const auto* i = std::get_if<long long>(&v)) return static_cast<int>(*i);
  throw config_error(key + " must be an integer");
}

bool as_bool(const Value& v, const std::string& key) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  throw config_error(key + " must be true or false");
}

std::string as_string(const Value& v, const std::string& key) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw config_error(key + " must be a string");
}

}  // namespace

void RunConfig::validate() const {
  if (!(std::isfinite(delta) && delta >= 0.0 && delta < 1.0)) throw config_error("delta must lie in [0,1)");
  if (!(std::isfinite(reynolds) && reynolds >= 0.0)) throw config_error("reynolds must be >= 0");
  if (!std::isfinite(alpha)) throw config_error("alpha must be finite");
  if (!(std::isfinite(pstar) && pstar > 0.0)) throw config_error("pstar must be > 0");
  if (nr < 2) throw config_error("nr must be >= 2");
  if (ntheta < 4) throw config_error("ntheta must be >= 4");
  if (!(tol > 0.0)) throw config_error("tol must be > 0");
  if (max_iter < 1) throw config_error("max_iter must be >= 1");
  if (quadrature_degree != 2 && quadrature_degree != 4 && quadrature_degree != 6 &&
      quadrature_degree != 8) {
    throw config_error("quadrature_degree must be one of 2, 4, 6, 8");
  }
  if (!(census_epsilon > 0.0 && census_epsilon < 0.5)) throw config_error("census_epsilon must lie in (0,0.5)");
  if (!(schedule.d_reynolds > 0.0)) throw config_error("continuation.d_re must be > 0");
  if (!(schedule.d_alpha > 0.0)) throw config_error("continuation.d_alpha must be > 0");
  if (schedule.max_halvings < 0) throw config_error("continuation.max_halvings must be >= 0");
}

RunConfig parse_config_string(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::map<std::string, Value> seen;
  std::istringstream in(text);
  std::string line;
  std::string table;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw config_error(where + ": malformed table header");
      table = trim(s.substr(1, s.size() - 2));
      if (table != "continuation") throw config_error("unknown table [" + table + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw config_error(where + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string full = table.empty() ? key : table + "." + key;
    if (seen.count(full)) throw config_error("duplicate key " + full);
    seen[full] = parse_value(s.substr(eq + 1), where);
  }

  for (const auto& [key, v] : seen) {
    if (key == "delta") cfg.delta = as_double(v, key);
    else if (key == "reynolds") cfg.reynolds = as_double(v, key);
    else if (key == "alpha") cfg.alpha = as_double(v, key);
    else if (key == "pstar") cfg.pstar = as_double(v, key);
    else if (key == "nr") cfg.nr = as_int(v, key);
    else if (key == "ntheta") cfg.ntheta = as_int(v, key);
    else if (key == "tol") cfg.tol = as_double(v, key);
    else if (key == "max_iter") cfg.max_iter = as_int(v, key);
    else if (key == "quadrature_degree") cfg.quadrature_degree = as_int(v, key);
    else if (key == "census_epsilon") cfg.census_epsilon = as_double(v, key);
    else if (key == "output_dir") cfg.output_dir = as_string(v, key);
    else if (key == "continuation.enabled") cfg.continuation = as_bool(v, key);
    else if (key == "continuation.d_re") cfg.schedule.d_reynolds = as_double(v, key);
    else if (key == "continuation.d_alpha") cfg.schedule.d_alpha = as_double(v, key);
    else if (key == "continuation.max_halvings") cfg.schedule.max_halvings = as_int(v, key);
    else throw config_error("unknown key " + key);
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_string(buf.str(), path);
}

}  // namespace curvedpipe
