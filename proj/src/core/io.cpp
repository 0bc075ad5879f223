#include "core/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace lsilab {

namespace {

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json matrix_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(std::move(row));
  }
  return a;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(ErrorCode::ParseError, std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> number_list(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(number(e, what));
  return out;
}

Vector vector_from(const Json& j, const char* what) {
  const auto v = number_list(j, what);
  require(!v.empty(), ErrorCode::ParseError, std::string(what) + " must be non-empty");
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Matrix matrix_from(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::ParseError, std::string(what) + " must be a matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Matrix m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto row = number_list(j[static_cast<std::size_t>(i)], what);
    require(static_cast<Eigen::Index>(row.size()) == rows, ErrorCode::ParseError,
            std::string(what) + " must be square");
    for (Eigen::Index c = 0; c < rows; ++c) m(i, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

GaussianSpec gaussian_from(const Json& j) {
  return GaussianSpec(vector_from(field(j, "mean"), "mean"), matrix_from(field(j, "cov"), "cov"));
}

}  // namespace

Json density_to_json(const Density& d) {
  if (d.is_gaussian()) {
    return Json{{"type", "gaussian"},
                {"mean", vector_json(d.gaussian().mean())},
                {"cov", matrix_json(d.gaussian().cov())}};
  }
  if (d.is_mixture()) {
    Json comps = Json::array();
    for (const auto& c : d.mixture().components()) {
      comps.push_back(Json{{"mean", vector_json(c.mean())}, {"cov", matrix_json(c.cov())}});
    }
    return Json{{"type", "mixture"}, {"weights", d.mixture().weights()}, {"components", comps}};
  }
  const auto& g = d.grid();
  return Json{{"type", "grid"},
              {"lo", vector_json(g.lo())},
              {"hi", vector_json(g.hi())},
              {"shape", g.shape()},
              {"values", g.values()}};
}

Density density_from_json(const Json& j) {
  const auto& type = field(j, "type");
  if (!type.is_string()) fail(ErrorCode::ParseError, "\"type\" must be a string");
  const auto t = type.get<std::string>();
  if (t == "gaussian") return gaussian_from(j);
  if (t == "mixture") {
    const auto weights = number_list(field(j, "weights"), "weights");
    const auto& comps = field(j, "components");
    if (!comps.is_array()) fail(ErrorCode::ParseError, "\"components\" must be an array");
    std::vector<GaussianSpec> parts;
    for (const auto& c : comps) parts.push_back(gaussian_from(c));
    return MixtureSpec(weights, std::move(parts));
  }
  if (t == "grid") {
    const auto shape_d = number_list(field(j, "shape"), "shape");
    std::vector<int> shape;
    for (double s : shape_d) {
      require(s == std::floor(s) && s >= 1 && s <= 1e6, ErrorCode::ParseError,
              "shape entries must be positive integers");
      shape.push_back(static_cast<int>(s));
    }
    return GridField(vector_from(field(j, "lo"), "lo"), vector_from(field(j, "hi"), "hi"),
                     std::move(shape), number_list(field(j, "values"), "values"));
  }
  fail(ErrorCode::ParseError, "unknown density type \"" + t + "\"");
}

Density density_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return density_from_json(j);
}

Json report_to_json(const InequalityReport& r) {
  return Json{{"name", r.name},   {"lhs", r.lhs},
              {"rhs", r.rhs},     {"slack", r.slack},
              {"satisfied", r.satisfied}, {"tol", r.tol},
              {"estimated_error", r.estimated_error}, {"inputs", r.inputs}};
}

Json trace_to_json(const SemigroupTrace& trace) {
  Json rows = Json::array();
  for (const auto& r : trace.rows) {
    rows.push_back(Json{{"s", r.s},
                        {"integrand", r.integrand},
                        {"reversed_integrand", r.reversed_integrand},
                        {"forward_integrand", r.forward_integrand}});
  }
  return Json{{"f", trace.f_digest},
              {"t", trace.t},
              {"x", vector_json(trace.x)},
              {"identity_lhs", trace.identity_lhs},
              {"production_integral", trace.production_integral},
              {"reversed_bound", trace.reversed_bound},
              {"forward_bound", trace.forward_bound},
              {"s_grid", trace.s_grid()},
              {"rows", rows}};
}

std::string format_csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_to_csv(const SemigroupTrace& trace) {
  std::string out = "s,integrand,reversed_integrand,forward_integrand\n";
  for (const auto& r : trace.rows) {
    out += format_csv_number(r.s) + "," + format_csv_number(r.integrand) + "," +
           format_csv_number(r.reversed_integrand) + "," + format_csv_number(r.forward_integrand) +
           "\n";
  }
  return out;
}

std::string clt_to_csv(const std::vector<CltRow>& rows) {
  std::string out = "n,discrete_ent,discrete_grad_sq,gaussian_ent,gaussian_grad_sq,deficit_gap\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + format_csv_number(r.discrete_ent) + "," +
           format_csv_number(r.discrete_grad_sq) + "," + format_csv_number(r.gaussian_ent) + "," +
           format_csv_number(r.gaussian_grad_sq) + "," + format_csv_number(r.deficit_gap) + "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path);
  out << text;
  require(static_cast<bool>(out), ErrorCode::IoError, "write failed for " + path);
}

}  // namespace lsilab
