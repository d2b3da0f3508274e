#include "berry/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"

#include "berry/holonomy.hpp"
#include "berry/json_io.hpp"
#include "berry/verify.hpp"
#include "parallel.hpp"

namespace berry {

namespace {

constexpr const char* kVersion = "0.1.0";

/// Flag values as typed; turned into a RunConfig after parsing so that a
/// config file can supply defaults that explicit flags override.
struct RawOptions {
  std::string config_file;
  std::string m, dim, step, samples, lambda, mu, grid, out, format, loop, source;
  std::vector<std::string> tolerances;
  bool richardson = false;
  bool comparison_mode = false;
};

void add_common_options(CLI::App& app, RawOptions& raw) {
  app.add_option("--config", raw.config_file, "key = value config file; flags override it");
  app.add_option("--m", raw.m, "degeneracy of the vacuum (default 2)");
  app.add_option("--dim", raw.dim, "Fock truncation, integer or 'auto'");
  app.add_option("--step", raw.step, "finite-difference step h (default 1e-4)");
  app.add_option("--samples", raw.samples, "default samples per loop piece");
  app.add_option("--lambda", raw.lambda, "displacement parameter, e.g. 0.3+0.1i");
  app.add_option("--mu", raw.mu, "squeeze parameter, e.g. 0.5i");
  app.add_option("--grid", raw.grid, "'default' or a file of '<lambda> <mu>' lines");
  app.add_option("--out", raw.out, "output file (default stdout)");
  app.add_option("--format", raw.format, "json or csv");
  app.add_option("--loop", raw.loop, "loop JSON file (holonomy)");
  app.add_option("--source", raw.source, "connection source for holonomy: closed or numeric");
  app.add_option("--tolerance", raw.tolerances, "tolerance override name=value (repeatable)");
  app.add_flag("--richardson", raw.richardson, "one level of Richardson extrapolation");
  app.add_flag("--comparison-mode", raw.comparison_mode, "omit the metadata block");
}

int to_int(const std::string& flag, const std::string& value) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw std::invalid_argument(flag + " expects an integer, got '" + value + "'");
  return v;
}

double to_real(const std::string& flag, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw std::invalid_argument(flag + " expects a number, got '" + value + "'");
  return v;
}

RunConfig build_config(const RawOptions& raw) {
  RunConfig cfg;
  if (!raw.config_file.empty()) apply_config_file(raw.config_file, cfg);
  if (!raw.m.empty()) cfg.m = to_int("--m", raw.m);
  if (!raw.dim.empty()) cfg.dim = raw.dim == "auto" ? std::nullopt : std::optional<int>(to_int("--dim", raw.dim));
  if (!raw.step.empty()) cfg.h = to_real("--step", raw.step);
  if (!raw.samples.empty()) cfg.samples = to_int("--samples", raw.samples);
  if (!raw.lambda.empty()) cfg.lambda = parse_complex(raw.lambda);
  if (!raw.mu.empty()) cfg.mu = parse_complex(raw.mu);
  if (!raw.grid.empty()) cfg.grid = raw.grid;
  if (!raw.out.empty()) cfg.out = raw.out;
  if (!raw.format.empty()) cfg.format = raw.format;
  if (!raw.loop.empty()) cfg.loop = raw.loop;
  if (!raw.source.empty()) cfg.source = raw.source;
  if (raw.richardson) cfg.richardson = true;
  if (raw.comparison_mode) cfg.comparison_mode = true;
  for (const auto& item : raw.tolerances) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--tolerance expects name=value, got '" + item + "'");
    cfg.tolerances[item.substr(0, eq)] = to_real("--tolerance", item.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

json config_json(const RunConfig& cfg) {
  json j = {{"m", cfg.m},
            {"dim", cfg.dim ? json(*cfg.dim) : json("auto")},
            {"h", cfg.h},
            {"samples", cfg.samples},
            {"grid", cfg.grid},
            {"lambda", encode(cfg.lambda)},
            {"mu", encode(cfg.mu)},
            {"format", cfg.format},
            {"loop", cfg.loop},
            {"source", cfg.source},
            {"richardson", cfg.richardson}};
  j["tolerances"] = json::object();
  for (const auto& [name, value] : cfg.tolerances) j["tolerances"][name] = value;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// ---- tables ---------------------------------------------------------------

/// A CSV table with one row per parameter point.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void append_matrix_header(std::vector<std::string>& header, const std::string& name, int m) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const std::string cell = name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      header.push_back(cell + ".re");
      header.push_back(cell + ".im");
    }
}

void append_matrix(std::vector<double>& row, const Matrix& x) {
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      row.push_back(x(i, j).real());
      row.push_back(x(i, j).imag());
    }
}

std::vector<std::string> point_header() { return {"lambda.re", "lambda.im", "mu.re", "mu.im"}; }

std::vector<double> point_row(const ParameterPoint& p) {
  return {p.lambda.real(), p.lambda.imag(), p.mu.real(), p.mu.imag()};
}

std::string render_csv(const Table& t) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (std::size_t k = 0; k < t.header.size(); ++k) s << (k ? "," : "") << t.header[k];
  s << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) s << (k ? "," : "") << row[k];
    s << '\n';
  }
  return s.str();
}

// ---- commands -------------------------------------------------------------

struct CommandResult {
  json payload;
  std::optional<Table> table;  // for --format csv
  int exit_code = kExitOk;
};

template <class Fn>
auto map_points(const std::vector<ParameterPoint>& pts, Fn&& fn) {
  using R = decltype(fn(pts.front()));
  std::vector<R> out(pts.size());
  detail::parallel_for(static_cast<int>(pts.size()), thread_cap(),
                       [&](int k) { out[static_cast<std::size_t>(k)] = fn(pts[static_cast<std::size_t>(k)]); });
  return out;
}

ConnectionMatrices connection_for(const ParameterPoint& p, const RunConfig& cfg, int& dim_used) {
  if (cfg.source == "closed") {
    dim_used = 0;
    return connection_closed(p, cfg.m);
  }
  dim_used = cfg.dimension_for(p);
  return connection_numeric(p, cfg.m, TruncatedSpace(dim_used), {cfg.h, cfg.richardson}).matrices;
}

CurvatureForm curvature_for(const ParameterPoint& p, const RunConfig& cfg, int& dim_used) {
  if (cfg.source == "closed") {
    dim_used = 0;
    return curvature_closed(p, cfg.m);
  }
  dim_used = cfg.dimension_for(p);
  return curvature_numeric(p, cfg.m, TruncatedSpace(dim_used), {cfg.h, cfg.richardson}).form;
}

CommandResult cmd_connection(const RunConfig& cfg) {
  const auto pts = cfg.points();
  struct Row {
    ConnectionMatrices a;
    int dim = 0;
  };
  const auto rows = map_points(pts, [&](const ParameterPoint& p) {
    Row r;
    r.a = connection_for(p, cfg, r.dim);
    return r;
  });

  CommandResult res;
  res.payload = {{"source", cfg.source}, {"points", json::array()}};
  Table t{point_header(), {}};
  append_matrix_header(t.header, "A_lambda", cfg.m);
  append_matrix_header(t.header, "A_mu", cfg.m);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    json entry = rows[k].a;
    entry["coefficients"] = coefficients(pts[k].mu);
    if (rows[k].dim) entry["D"] = rows[k].dim;
    res.payload["points"].push_back(std::move(entry));
    auto row = point_row(pts[k]);
    append_matrix(row, rows[k].a.a_lambda);
    append_matrix(row, rows[k].a.a_mu);
    t.rows.push_back(std::move(row));
  }
  res.table = std::move(t);
  return res;
}

CommandResult cmd_curvature(const RunConfig& cfg) {
  const auto pts = cfg.points();
  struct Row {
    CurvatureForm f;
    int dim = 0;
  };
  const auto rows = map_points(pts, [&](const ParameterPoint& p) {
    Row r;
    r.f = curvature_for(p, cfg, r.dim);
    return r;
  });

  CommandResult res;
  res.payload = {{"source", cfg.source}, {"points", json::array()}};
  Table t{point_header(), {}};
  for (const char* name : kTwoFormNames) append_matrix_header(t.header, std::string("F_") + name, cfg.m);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    json entry = rows[k].f;
    entry["F_squared"] = f_squared(pts[k], cfg.m);
    if (rows[k].dim) entry["D"] = rows[k].dim;
    res.payload["points"].push_back(std::move(entry));
    auto row = point_row(pts[k]);
    for (const Matrix& c : rows[k].f.c) append_matrix(row, c);
    t.rows.push_back(std::move(row));
  }
  res.table = std::move(t);
  return res;
}

CommandResult cmd_chern(const RunConfig& cfg) {
  const auto pts = cfg.points();
  const auto traces = map_points(pts, [&](const ParameterPoint& p) {
    int dim = 0;
    const CurvatureForm f = curvature_for(p, cfg, dim);
    const FourFormValue f2 = cfg.source == "closed" ? f_squared(p, cfg.m) : f_squared_from_wedge(f);
    return chern_trace_forms(f, f2);
  });

  constexpr double two_pi = 2.0 * std::numbers::pi;
  CommandResult res;
  res.payload = {{"source", cfg.source},
                 {"normalization", {{"ch1", "(i/2pi) tr F"}, {"ch2", "-tr(F^F)/(8 pi^2)"}}},
                 {"points", json::array()}};
  Table t{point_header(), {}};
  for (const char* name : kTwoFormNames) {
    t.header.push_back(std::string("ch1_") + name + ".re");
    t.header.push_back(std::string("ch1_") + name + ".im");
  }
  t.header.push_back("ch2.re");
  t.header.push_back("ch2.im");
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const ChernTraces& tr = traces[k];
    json ch1 = json::object();
    auto row = point_row(pts[k]);
    for (std::size_t c = 0; c < 6; ++c) {
      const cplx v = kI / two_pi * tr.tr_f[c];
      ch1[kTwoFormNames[c]] = encode(v);
      row.push_back(v.real());
      row.push_back(v.imag());
    }
    const cplx ch2 = -tr.tr_f2 / (8.0 * std::numbers::pi * std::numbers::pi);
    row.push_back(ch2.real());
    row.push_back(ch2.imag());
    res.payload["points"].push_back({{"point", pts[k]}, {"traces", tr}, {"ch1", ch1}, {"ch2", encode(ch2)}});
    t.rows.push_back(std::move(row));
  }
  res.table = std::move(t);
  return res;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  VerifyOutcome v = run_verification(cfg);
  CommandResult res;
  res.payload = std::move(v.payload);
  res.exit_code = v.pass ? kExitOk : kExitToleranceBreach;
  return res;
}

CommandResult cmd_holonomy(const RunConfig& cfg) {
  if (cfg.loop.empty()) throw std::invalid_argument("holonomy needs --loop <file>");
  std::ifstream in(cfg.loop);
  if (!in) throw std::invalid_argument("cannot open loop file '" + cfg.loop + "'");
  json loop_doc;
  try {
    loop_doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("loop file is not valid JSON: " + std::string(e.what()));
  }
  if (!loop_doc.contains("samples")) loop_doc["samples"] = cfg.samples;
  const LoopPath loop = loop_from_json(loop_doc);

  TransportOptions options;
  options.source = cfg.source == "closed" ? ConnectionSource::Closed : ConnectionSource::Numeric;
  options.dim = cfg.dim.value_or(0);
  options.plan = {cfg.h, cfg.richardson};
  const HolonomyResult h = parallel_transport(loop, cfg.m, options);

  Eigen::ComplexEigenSolver<Matrix> eig(h.w);
  std::vector<double> phases;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) phases.push_back(std::arg(eig.eigenvalues()(k)));
  std::sort(phases.begin(), phases.end());

  CommandResult res;
  res.payload = h;
  res.payload["m"] = cfg.m;
  res.payload["source"] = cfg.source;
  res.payload["samples"] = loop.samples();
  res.payload["eigenphases"] = phases;
  res.payload["unitarity_defect"] = max_abs(h.w.adjoint() * h.w - Matrix::Identity(cfg.m, cfg.m));
  res.payload["diagonal_abelian_phases"] = berry_phase_diagonal(loop, cfg.m);
  return res;
}

CommandResult cmd_irreducibility(const RunConfig& cfg) {
  std::vector<ParameterPoint> centers;
  if (cfg.grid.empty())
    centers = {{0.3, 0.4}, {cplx(0.1, 0.2), cplx(0.0, 0.8)}, {0.5, -0.3}};
  else
    centers = cfg.points();
  const int algebra = holonomy_algebra_dimension(centers, cfg.m);
  const int span = curvature_span_dimension(centers, cfg.m);
  CommandResult res;
  res.payload = {{"m", cfg.m},
                 {"centers", centers},
                 {"algebra_dim", algebra},
                 {"curvature_span_dim", span},
                 {"max_dim", cfg.m * cfg.m},
                 {"irreducible", algebra == cfg.m * cfg.m}};
  return res;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adiabatic connection, curvature and holonomy of the displaced-squeezed vacuum family",
               "berry_holonomy"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RawOptions raw;
  using Handler = CommandResult (*)(const RunConfig&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"connection", "connection matrices A_lambda, A_mu per grid point", cmd_connection},
      {"curvature", "curvature components per grid point", cmd_curvature},
      {"verify", "closed forms against the truncated-space oracle", cmd_verify},
      {"holonomy", "holonomy of a loop given by --loop", cmd_holonomy},
      {"irreducibility", "holonomy algebra and curvature span dimensions", cmd_irreducibility},
      {"chern", "trace (Chern character) forms per grid point", cmd_chern},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help, handler] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common_options(*sub, raw);
    subs[name] = sub;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }

  std::string command;
  Handler handler = nullptr;
  for (const auto& [name, help, h] : commands)
    if (subs[name]->parsed()) {
      command = name;
      handler = h;
    }

  try {
    const RunConfig cfg = build_config(raw);
    if (cfg.format == "csv" && (command == "verify" || command == "holonomy" || command == "irreducibility"))
      throw std::invalid_argument("--format csv is only available for connection, curvature and chern");
    CommandResult result = handler(cfg);

    std::string text;
    if (cfg.format == "csv") {
      text = render_csv(*result.table);
    } else {
      json doc = {{"command", command}, {"config", config_json(cfg)}, {"payload", std::move(result.payload)}};
      if (!cfg.comparison_mode) doc["metadata"] = {{"version", kVersion}, {"generated_at", utc_timestamp()}};
      text = doc.dump(2) + "\n";
    }
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot write '" + cfg.out + "'");
      file << text;
    }
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNonConvergence;
  }
}

}  // namespace berry
