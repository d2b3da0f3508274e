#include "berry/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "berry/json_io.hpp"
#include "berry/oracle.hpp"

namespace berry {

void RunConfig::validate() const {
  if (m < 1) throw std::invalid_argument("--m must be >= 1");
  if (dim && *dim < 2) throw std::invalid_argument("--dim must be >= 2 or 'auto'");
  if (dim && m >= *dim) throw std::invalid_argument("--m must be smaller than --dim");
  DifferentiationPlan{h, richardson}.validate();
  if (samples < 1) throw std::invalid_argument("--samples must be positive");
  if (format != "json" && format != "csv") throw std::invalid_argument("--format must be json or csv");
  if (source != "closed" && source != "numeric") throw std::invalid_argument("--source must be closed or numeric");
  for (const auto& [name, value] : tolerances)
    if (!(value > 0.0)) throw std::invalid_argument("tolerance '" + name + "' must be positive");
}

double RunConfig::tolerance(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

std::vector<ParameterPoint> RunConfig::points() const {
  if (grid.empty()) return {{lambda, mu}};
  if (grid == "default") return default_grid();
  return read_grid_file(grid);
}

int RunConfig::dimension_for(const ParameterPoint& p) const { return dim ? *dim : default_dimension(p, m); }

std::vector<ParameterPoint> default_grid() {
  const cplx tilt = std::polar(1.0, std::numbers::pi / 4.0);
  const std::vector<cplx> values = {0.0, 0.5, 0.5 * tilt, 1.0, tilt};
  std::vector<ParameterPoint> grid;
  for (cplx l : values)
    for (cplx u : values) grid.push_back({l, u});
  return grid;
}

std::vector<ParameterPoint> read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open grid file '" + path + "'");
  std::vector<ParameterPoint> grid;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream fields(line);
    std::string l, u, extra;
    if (!(fields >> l)) continue;
    if (!(fields >> u) || (fields >> extra)) throw std::invalid_argument("grid line needs '<lambda> <mu>': " + line);
    grid.push_back({parse_complex(l), parse_complex(u)});
  }
  if (grid.empty()) throw std::invalid_argument("grid file '" + path + "' has no points");
  return grid;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key '" + key + "' expects a number, got '" + value + "'");
}

}  // namespace

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line needs 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "m") cfg.m = static_cast<int>(to_double(key, value));
    else if (key == "dim") cfg.dim = value == "auto" ? std::nullopt : std::optional<int>(static_cast<int>(to_double(key, value)));
    else if (key == "step") cfg.h = to_double(key, value);
    else if (key == "samples") cfg.samples = static_cast<int>(to_double(key, value));
    else if (key == "lambda") cfg.lambda = parse_complex(value);
    else if (key == "mu") cfg.mu = parse_complex(value);
    else if (key == "grid") cfg.grid = value;
    else if (key == "out") cfg.out = value;
    else if (key == "format") cfg.format = value;
    else if (key == "loop") cfg.loop = value;
    else if (key == "source") cfg.source = value;
    else if (key == "richardson") cfg.richardson = value == "true" || value == "1";
    else if (key.rfind("tolerance.", 0) == 0) cfg.tolerances[key.substr(10)] = to_double(key, value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

int thread_cap() {
  int cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("BERRY_HOLONOMY_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) cap = requested;
  }
  return cap;
}

}  // namespace berry
