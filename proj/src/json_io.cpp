#include "berry/json_io.hpp"

#include <cctype>

namespace berry {

json encode(cplx z) { return json::array({z.real(), z.imag()}); }

json encode(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(encode(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

cplx decode_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Matrix decode_matrix(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = decode_complex(j.at(i).at(k));
  return m;
}

namespace {

double parse_real(const std::string& text, const std::string& whole) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad complex number '" + whole + "'");
  }
  if (used != text.size()) throw std::invalid_argument("bad complex number '" + whole + "'");
  return value;
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw std::invalid_argument("empty complex number");
  if (text.back() != 'i' && text.back() != 'j') {
    const double re = parse_real(text, raw);
    if (text == "+" || text == "-") throw std::invalid_argument("bad complex number '" + raw + "'");
    return {re, 0.0};
  }
  text.pop_back();
  // split at the last sign that is not leading and not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(text, raw)};
  const std::string re_part = text.substr(0, split);
  if (re_part.empty()) throw std::invalid_argument("bad complex number '" + raw + "'");
  return {parse_real(re_part, raw), parse_real(text.substr(split), raw)};
}

void to_json(json& j, const ParameterPoint& p) { j = {{"lambda", encode(p.lambda)}, {"mu", encode(p.mu)}}; }

void from_json(const json& j, ParameterPoint& p) {
  p.lambda = j.contains("lambda") ? decode_complex(j.at("lambda")) : cplx{0.0};
  p.mu = j.contains("mu") ? decode_complex(j.at("mu")) : cplx{0.0};
}

void to_json(json& j, const IdentityReport& r) {
  j = {{"identity", r.identity},
       {"interior_dev", r.interior_dev},
       {"boundary_dev", r.boundary_dev},
       {"D", r.dim},
       {"buffer", r.buffer}};
}

void to_json(json& j, const BchReport& r) { j = {{"displacement", r.displacement}, {"squeeze", r.squeeze}}; }

void to_json(json& j, const SpectrumReport& r) {
  j = {{"matched_count", r.matched_count},
       {"max_dev", r.max_dev},
       {"boundary_dev", r.boundary_dev},
       {"kernel_dim_estimate", r.kernel_dim_estimate}};
}

void to_json(json& j, const ConnectionCoeffs& c) {
  j = {{"alpha", encode(c.alpha)}, {"beta", encode(c.beta)}, {"gamma", encode(c.gamma)}, {"zeta", encode(c.zeta)}};
}

void to_json(json& j, const ConnectionMatrices& c) {
  j = {{"point", c.point}, {"m", c.m}, {"A_lambda", encode(c.a_lambda)}, {"A_mu", encode(c.a_mu)}};
}

void to_json(json& j, const DerivativeIdentityReport& r) {
  j = {{"z", encode(r.z)}, {"h", r.h}, {"max_deviation", r.max_deviation}, {"identities", json::array()}};
  for (std::size_t k = 0; k < 3; ++k)
    j["identities"].push_back(
        {{"exact", encode(r.exact[k])}, {"numeric", encode(r.numeric[k])}, {"deviation", r.deviation[k]}});
}

void to_json(json& j, const CurvatureForm& f) {
  j = {{"point", f.point}, {"m", f.m}, {"components", json::object()}};
  for (std::size_t k = 0; k < 6; ++k) j["components"][kTwoFormNames[k]] = encode(f.c[k]);
}

void to_json(json& j, const FourFormValue& f) { j = {{"dlambda^dmu^dlambdabar^dmubar", encode(f.matrix)}}; }

void to_json(json& j, const ChernTraces& t) {
  j = {{"tr_F", json::object()}, {"tr_F2", encode(t.tr_f2)}};
  for (std::size_t k = 0; k < 6; ++k) j["tr_F"][kTwoFormNames[k]] = encode(t.tr_f[k]);
}

void to_json(json& j, const GlobalFormReport& r) {
  j = {{"dev_lambda_lambdabar", r.dev_lambda_lambdabar},
       {"dev_mu_mubar", r.dev_mu_mubar},
       {"max_deviation", r.max_deviation},
       {"D", r.dim},
       {"block", r.block}};
}

void to_json(json& j, const ConvergenceReport& r) {
  j = {{"dims", r.dims}, {"successive_diffs", r.successive_diffs}, {"converged", r.converged}};
}

void to_json(json& j, const HolonomyResult& r) {
  j = {{"W", encode(r.w)}, {"path_length", r.path_length}};
  j["algebra_dim"] = r.algebra_dim ? json(*r.algebra_dim) : json(nullptr);
}

void to_json(json& j, const SmallLoopReport& r) {
  j = {{"plane", r.plane},
       {"eps", r.eps},
       {"residual", r.residual},
       {"residual_half", r.residual_half},
       {"ratio", r.ratio},
       {"log_W_over_area", encode(r.log_w_over_area)},
       {"curvature", encode(r.curvature)}};
}

LoopPath loop_from_json(const json& j) {
  const int default_samples = j.value("samples", 256);
  if (!j.contains("pieces") || !j.at("pieces").is_array() || j.at("pieces").empty())
    throw std::invalid_argument("loop file needs a non-empty 'pieces' array");
  LoopPath path;
  bool first = true;
  for (const auto& piece : j.at("pieces")) {
    const std::string type = piece.at("type").get<std::string>();
    const int samples = piece.value("samples", default_samples);
    LoopPath next;
    if (type == "line") {
      next = LoopPath::segment(piece.at("from").get<ParameterPoint>(), piece.at("to").get<ParameterPoint>(), samples);
    } else if (type == "circle") {
      const std::string plane = piece.value("plane", "lambda");
      const auto center = piece.at("center").get<ParameterPoint>();
      const double radius = piece.at("radius").get<double>();
      if (plane == "lambda")
        next = LoopPath::lambda_circle(center, radius, samples);
      else if (plane == "mu")
        next = LoopPath::mu_circle(center, radius, samples);
      else
        throw std::invalid_argument("circle plane must be 'lambda' or 'mu'");
    } else {
      throw std::invalid_argument("unknown loop piece type '" + type + "'");
    }
    path = first ? next : path.then(next);
    first = false;
  }
  return path;
}

}  // namespace berry
