#include "lsilab/lsilab.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/catalog.hpp"
#include "core/corpus.hpp"
#include "core/discrete.hpp"
#include "core/error.hpp"
#include "core/functionals.hpp"
#include "core/inequalities.hpp"
#include "core/io.hpp"
#include "core/isoperimetry.hpp"
#include "core/semigroup.hpp"
#include "core/transforms.hpp"

using namespace lsilab;

struct lsilab_density {
  Density d;
};

struct lsilab_function {
  RelativeFunction f;
};

struct lsilab_corpus {
  Corpus c;
};

namespace {

thread_local std::string g_last_error;

lsilab_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return LSILAB_E_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return LSILAB_E_DIMENSION_MISMATCH;
    case ErrorCode::OutOfDomain: return LSILAB_E_OUT_OF_DOMAIN;
    case ErrorCode::InsufficientCoverage: return LSILAB_E_INSUFFICIENT_COVERAGE;
    case ErrorCode::ZeroMass: return LSILAB_E_ZERO_MASS;
    case ErrorCode::DivergentIntegral: return LSILAB_E_DIVERGENT_INTEGRAL;
    case ErrorCode::DegenerateSupport: return LSILAB_E_DEGENERATE_SUPPORT;
    case ErrorCode::SingularCovariance: return LSILAB_E_SINGULAR_COVARIANCE;
    case ErrorCode::UnsupportedDimension: return LSILAB_E_UNSUPPORTED_DIMENSION;
    case ErrorCode::UnsupportedRepresentation: return LSILAB_E_UNSUPPORTED_REPRESENTATION;
    case ErrorCode::NonPositiveInput: return LSILAB_E_NON_POSITIVE_INPUT;
    case ErrorCode::NonPositiveTrace: return LSILAB_E_NON_POSITIVE_TRACE;
    case ErrorCode::NonPositiveSample: return LSILAB_E_NON_POSITIVE_SAMPLE;
    case ErrorCode::RangeViolation: return LSILAB_E_RANGE_VIOLATION;
    case ErrorCode::OutOfRange: return LSILAB_E_OUT_OF_RANGE;
    case ErrorCode::ParseError: return LSILAB_E_PARSE;
    case ErrorCode::IoError: return LSILAB_E_IO;
  }
  return LSILAB_E_INTERNAL;
}

lsilab_status set_error(lsilab_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class Fn>
lsilab_status guarded(Fn&& fn) {
  try {
    fn();
    return LSILAB_OK;
  } catch (const Error& e) {
    return set_error(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LSILAB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LSILAB_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(LSILAB_E_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_truncated(char* dst, std::size_t cap, const std::string& src) {
  const std::size_t n = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

void fill_report(const InequalityReport& r, lsilab_report* out) {
  std::memset(out, 0, sizeof *out);
  copy_truncated(out->name, LSILAB_NAME_CAP, r.name);
  copy_truncated(out->inputs, LSILAB_INPUTS_CAP, r.inputs);
  out->lhs = r.lhs;
  out->rhs = r.rhs;
  out->slack = r.slack;
  out->tol = r.tol;
  out->estimated_error = r.estimated_error;
  out->satisfied = r.satisfied ? 1 : 0;
}

CheckOptions to_check(const lsilab_options* o) {
  CheckOptions c;
  if (o == nullptr) return c;
  if (o->hermite_points > 0) c.quadrature.hermite_points = o->hermite_points;
  if (o->box_points > 0) c.quadrature.box_points = o->box_points;
  switch (o->path) {
    case LSILAB_PATH_AUTO: c.path = Path::Automatic; break;
    case LSILAB_PATH_ANALYTIC: c.path = Path::Analytic; break;
    case LSILAB_PATH_QUADRATURE: c.path = Path::Quadrature; break;
    default: fail(ErrorCode::InvalidArgument, "unknown evaluation path");
  }
  if (o->has_tol) {
    require(std::isfinite(o->tol) && o->tol >= 0.0, ErrorCode::InvalidArgument,
            "tolerance must be finite and non-negative");
    c.tol = o->tol;
  }
  return c;
}

Vector to_vector(const double* p, int n) {
  need(p, "vector");
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  return Eigen::Map<const Vector>(p, n);
}

void write_matrix(const Matrix& m, double* out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
}

InequalityReport bobkov_with(const RelativeFunction& f, const lsilab_options* o) {
  CheckOptions c = to_check(o);
  const int requested_box = c.quadrature.box_points;
  const bool box_override = o != nullptr && o->box_points > 0;
  c.quadrature = bobkov_quadrature(f.dim());
  if (box_override) c.quadrature.box_points = requested_box;
  return check_bobkov(f, c);
}

const char* const kDensityCheckers[] = {
    "lsi", "reversed_lsi", "euclidean_lsi", "reversed_euclidean", "nj", "njj", "entropy_trace",
    "max_entropy_det", "amgm_spectrum", "bobkov", "intermediate_bound",
    "derived_reversed_euclidean", nullptr};

InequalityReport run_density_check(const std::string& name, const Density& d,
                                   const lsilab_options* o) {
  const CheckOptions c = to_check(o);
  if (name == "euclidean_lsi") return check_euclidean_lsi(d, c);
  if (name == "nj") return check_nj(d, c);
  if (name == "njj") return check_njj(d, c);
  if (name == "entropy_trace") return check_entropy_trace(d, c);
  if (name == "reversed_euclidean") return check_reversed_euclidean(d, c);
  if (name == "max_entropy_det") return check_max_entropy_det(d, c);
  if (name == "amgm_spectrum") return check_amgm_spectrum(d, c);
  if (name == "intermediate_bound") return intermediate_bound_check(d, c);
  if (name == "derived_reversed_euclidean") return derive_reversed_euclidean(d, c);
  if (name == "lsi") return check_lsi_gross(gauss_to_euclid_function(d), c);
  if (name == "reversed_lsi") return check_reversed_lsi(gauss_to_euclid_function(d), c);
  if (name == "bobkov") return bobkov_with(derived_bobkov_function(d), o);
  fail(ErrorCode::InvalidArgument, "unknown density checker: " + name);
}

}  // namespace

extern "C" {

const char* lsilab_version(void) { return "1.0.0"; }

const char* lsilab_status_name(lsilab_status status) {
  switch (status) {
    case LSILAB_OK: return "ok";
    case LSILAB_E_INVALID_ARGUMENT: return "invalid_argument";
    case LSILAB_E_DIMENSION_MISMATCH: return "dimension_mismatch";
    case LSILAB_E_OUT_OF_DOMAIN: return "out_of_domain";
    case LSILAB_E_INSUFFICIENT_COVERAGE: return "insufficient_coverage";
    case LSILAB_E_ZERO_MASS: return "zero_mass";
    case LSILAB_E_DIVERGENT_INTEGRAL: return "divergent_integral";
    case LSILAB_E_DEGENERATE_SUPPORT: return "degenerate_support";
    case LSILAB_E_SINGULAR_COVARIANCE: return "singular_covariance";
    case LSILAB_E_UNSUPPORTED_DIMENSION: return "unsupported_dimension";
    case LSILAB_E_UNSUPPORTED_REPRESENTATION: return "unsupported_representation";
    case LSILAB_E_NON_POSITIVE_INPUT: return "non_positive_input";
    case LSILAB_E_NON_POSITIVE_TRACE: return "non_positive_trace";
    case LSILAB_E_NON_POSITIVE_SAMPLE: return "non_positive_sample";
    case LSILAB_E_RANGE_VIOLATION: return "range_violation";
    case LSILAB_E_OUT_OF_RANGE: return "out_of_range";
    case LSILAB_E_PARSE: return "parse_error";
    case LSILAB_E_IO: return "io_error";
    case LSILAB_E_BUFFER_TOO_SMALL: return "buffer_too_small";
    case LSILAB_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* lsilab_last_error(void) { return g_last_error.c_str(); }

void lsilab_string_free(char* s) { std::free(s); }

void lsilab_options_init(lsilab_options* opts) {
  if (opts == nullptr) return;
  opts->hermite_points = kDefaultHermitePoints;
  opts->box_points = 0;
  opts->path = LSILAB_PATH_AUTO;
  opts->has_tol = 0;
  opts->tol = 0.0;
}

lsilab_status lsilab_report_to_json(const lsilab_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    const Json j{{"name", r->name},       {"lhs", r->lhs},
                 {"rhs", r->rhs},         {"slack", r->slack},
                 {"satisfied", r->satisfied != 0}, {"tol", r->tol},
                 {"estimated_error", r->estimated_error}, {"inputs", r->inputs}};
    *out = dup_string(j.dump());
  });
}

lsilab_status lsilab_density_from_json(const char* text, lsilab_density** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new lsilab_density{density_from_string(text)};
  });
}

lsilab_status lsilab_density_gaussian(const double* mean, const double* cov, int n,
                                      lsilab_density** out) {
  return guarded([&] {
    need(cov, "cov");
    need(out, "out");
    const Vector m = to_vector(mean, n);
    Matrix k(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) k(i, j) = cov[i * n + j];
    *out = new lsilab_density{GaussianSpec(m, k)};
  });
}

lsilab_status lsilab_density_to_json(const lsilab_density* d, char** out) {
  return guarded([&] {
    need(d, "density");
    need(out, "out");
    *out = dup_string(density_to_json(d->d).dump());
  });
}

lsilab_status lsilab_density_describe(const lsilab_density* d, char** out) {
  return guarded([&] {
    need(d, "density");
    need(out, "out");
    *out = dup_string(d->d.describe());
  });
}

int lsilab_density_dim(const lsilab_density* d) { return d == nullptr ? 0 : d->d.dim(); }

void lsilab_density_free(lsilab_density* d) { delete d; }

lsilab_status lsilab_density_whiten(const lsilab_density* d, lsilab_density** out) {
  return guarded([&] {
    need(d, "density");
    need(out, "out");
    *out = new lsilab_density{whiten(d->d)};
  });
}

lsilab_status lsilab_density_scale(const lsilab_density* d, double alpha, lsilab_density** out) {
  return guarded([&] {
    need(d, "density");
    need(out, "out");
    *out = new lsilab_density{scale_family(d->d, alpha)};
  });
}

lsilab_status lsilab_shannon_entropy(const lsilab_density* d, const lsilab_options* opts,
                                     double* value, double* error) {
  return guarded([&] {
    need(d, "density");
    need(value, "value");
    const auto v = shannon_entropy(d->d, to_check(opts).quadrature);
    *value = v.value;
    if (error) *error = v.estimated_error;
  });
}

lsilab_status lsilab_entropy_power(const lsilab_density* d, const lsilab_options* opts,
                                   double* value, double* error) {
  return guarded([&] {
    need(d, "density");
    need(value, "value");
    const auto v = entropy_power(d->d, to_check(opts).quadrature);
    *value = v.value;
    if (error) *error = v.estimated_error;
  });
}

lsilab_status lsilab_fisher_information(const lsilab_density* d, const lsilab_options* opts,
                                        double* value, double* error) {
  return guarded([&] {
    need(d, "density");
    need(value, "value");
    const auto v = fisher_scalar(d->d, to_check(opts).quadrature);
    *value = v.value;
    if (error) *error = v.estimated_error;
  });
}

lsilab_status lsilab_fisher_matrix(const lsilab_density* d, const lsilab_options* opts,
                                   double* out, double* error) {
  return guarded([&] {
    need(d, "density");
    need(out, "out");
    const auto v = fisher_matrix(d->d, to_check(opts).quadrature);
    write_matrix(v.value, out);
    if (error) *error = v.estimated_error;
  });
}

lsilab_status lsilab_covariance(const lsilab_density* d, double* out) {
  return guarded([&] {
    need(d, "density");
    need(out, "out");
    write_matrix(covariance(d->d).value, out);
  });
}

lsilab_status lsilab_mean(const lsilab_density* d, double* out) {
  return guarded([&] {
    need(d, "density");
    need(out, "out");
    const Vector m = mean(d->d);
    std::copy(m.data(), m.data() + m.size(), out);
  });
}

lsilab_status lsilab_function_exp(const double* slope, int n, double offset,
                                  lsilab_function** out) {
  return guarded([&] {
    need(out, "out");
    *out = new lsilab_function{RelativeFunction::exponential(to_vector(slope, n), offset)};
  });
}

lsilab_status lsilab_function_named(const char* name, int n, lsilab_function** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new lsilab_function{named_function(name, n)};
  });
}

lsilab_status lsilab_function_from_density(const lsilab_density* h, lsilab_function** out) {
  return guarded([&] {
    need(h, "density");
    need(out, "out");
    *out = new lsilab_function{gauss_to_euclid_function(h->d)};
  });
}

lsilab_status lsilab_function_halfspace(int n, double shift, double eps, lsilab_function** out) {
  return guarded([&] {
    need(out, "out");
    *out = new lsilab_function{halfspace_function(n, shift, eps)};
  });
}

lsilab_status lsilab_function_ridge(const double* direction, int n, double offset, double scale,
                                    int logistic, lsilab_function** out) {
  return guarded([&] {
    need(out, "out");
    const Vector u = to_vector(direction, n);
    *out = new lsilab_function{logistic ? logistic_ridge(u, offset, scale)
                                        : probit_ridge(u, offset, scale)};
  });
}

lsilab_status lsilab_function_bobkov_witness(const lsilab_density* g, lsilab_function** out) {
  return guarded([&] {
    need(g, "density");
    need(out, "out");
    *out = new lsilab_function{derived_bobkov_function(g->d)};
  });
}

int lsilab_function_dim(const lsilab_function* f) { return f == nullptr ? 0 : f->f.dim(); }

lsilab_status lsilab_function_name(const lsilab_function* f, char** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = dup_string(f->f.name());
  });
}

lsilab_status lsilab_function_value(const lsilab_function* f, const double* x, double* value) {
  return guarded([&] {
    need(f, "function");
    need(value, "value");
    *value = f->f.value(to_vector(x, f->f.dim()));
  });
}

void lsilab_function_free(lsilab_function* f) { delete f; }

lsilab_status lsilab_function_moments(const lsilab_function* f, const lsilab_options* opts,
                                      lsilab_moments* out, double* mean_gradient) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    const CheckOptions c = to_check(opts);
    const auto m = gamma_moments(f->f, c.quadrature, c.path);
    out->mass = m.mass;
    out->entropy = m.entropy;
    out->fisher = m.fisher;
    out->estimated_error = m.estimated_error;
    if (mean_gradient) std::copy(m.mean_gradient.data(), m.mean_gradient.data() + m.mean_gradient.size(), mean_gradient);
  });
}

lsilab_status lsilab_check_density(const char* name, const lsilab_density* d,
                                   const lsilab_options* opts, lsilab_report* out) {
  return guarded([&] {
    need(name, "name");
    need(d, "density");
    need(out, "out");
    fill_report(run_density_check(name, d->d, opts), out);
  });
}

lsilab_status lsilab_check_function(const char* name, const lsilab_function* f,
                                    const lsilab_options* opts, lsilab_report* out) {
  return guarded([&] {
    need(name, "name");
    need(f, "function");
    need(out, "out");
    const std::string n = name;
    if (n == "lsi") {
      fill_report(check_lsi_gross(f->f, to_check(opts)), out);
    } else if (n == "reversed_lsi") {
      fill_report(check_reversed_lsi(f->f, to_check(opts)), out);
    } else if (n == "bobkov") {
      fill_report(bobkov_with(f->f, opts), out);
    } else {
      fail(ErrorCode::InvalidArgument, "unknown function checker: " + n);
    }
  });
}

lsilab_status lsilab_check_amgm(const double* values, size_t count, const lsilab_options* opts,
                                lsilab_report* out) {
  return guarded([&] {
    need(values, "values");
    need(out, "out");
    fill_report(check_amgm(std::span<const double>(values, count), to_check(opts)), out);
  });
}

const char* const* lsilab_density_checker_names(void) { return kDensityCheckers; }

lsilab_status lsilab_equivalence_roundtrip(const lsilab_density* d, const lsilab_options* opts,
                                           lsilab_equivalence* out) {
  return guarded([&] {
    need(d, "density");
    need(out, "out");
    const auto b = equivalence_roundtrip(d->d, to_check(opts));
    fill_report(b.reversed_lsi, &out->reversed_lsi);
    fill_report(b.reversed_euclidean, &out->reversed_euclidean);
    fill_report(b.entropy_trace, &out->entropy_trace);
    fill_report(b.max_entropy_det, &out->max_entropy_det);
    fill_report(b.whitened_trace, &out->whitened_trace);
    out->transport_gap = b.transport_gap;
    out->transport_consistent = b.transport_consistent ? 1 : 0;
    out->verdicts_consistent = b.verdicts_consistent ? 1 : 0;
    out->ok = b.ok() ? 1 : 0;
  });
}

lsilab_status lsilab_optimal_alpha(double trace_cov, int n, double* alpha, double* bound) {
  return guarded([&] {
    const auto a = optimal_alpha(trace_cov, n);
    if (alpha) *alpha = a.alpha;
    if (bound) *bound = a.bound;
  });
}

lsilab_status lsilab_scaled_bound(double trace_cov, int n, double alpha, double* bound) {
  return guarded([&] {
    need(bound, "bound");
    *bound = scaled_intermediate_bound(trace_cov, n, alpha);
  });
}

lsilab_status lsilab_semigroup_run(const lsilab_function* f, double t, const double* x, int slices,
                                   int points, lsilab_semigroup_summary* summary,
                                   lsilab_semigroup_row* rows, size_t capacity,
                                   size_t* row_count) {
  bool too_small = false;
  const lsilab_status status = guarded([&] {
    need(f, "function");
    SemigroupOptions o;
    if (slices > 0) o.slices = slices;
    if (points > 0) o.points = points;
    const Vector xv = to_vector(x, f->f.dim());
    const bool at_origin = t == 1.0 && xv.isZero(0.0);
    SemigroupTrace trace;
    double ent = std::nan("");
    bool sandwich = false;
    if (at_origin) {
      const auto s = sandwich_at_origin(f->f, o);
      trace = s.trace;
      ent = s.functional_entropy;
      sandwich = s.lower_holds && s.upper_holds && s.identity_matches;
    } else {
      trace = interpolation_identity(f->f, t, xv, o);
      const double tol = identity_tolerance(trace);
      sandwich = trace.reversed_bound <= trace.identity_lhs + tol &&
                 trace.identity_lhs <= trace.forward_bound + tol;
    }
    if (row_count) *row_count = trace.rows.size();
    if (rows != nullptr) {
      if (capacity < trace.rows.size()) {
        too_small = true;
        return;
      }
      for (std::size_t i = 0; i < trace.rows.size(); ++i) {
        rows[i] = {trace.rows[i].s, trace.rows[i].integrand, trace.rows[i].reversed_integrand,
                   trace.rows[i].forward_integrand};
      }
    }
    if (summary) {
      summary->t = trace.t;
      summary->identity_lhs = trace.identity_lhs;
      summary->production_integral = trace.production_integral;
      summary->reversed_bound = trace.reversed_bound;
      summary->forward_bound = trace.forward_bound;
      summary->functional_entropy = ent;
      summary->tolerance = identity_tolerance(trace);
      summary->identity_ok = trace.identity_gap() <= summary->tolerance ? 1 : 0;
      summary->sandwich_ok = sandwich ? 1 : 0;
    }
  });
  if (status == LSILAB_OK && too_small) {
    return set_error(LSILAB_E_BUFFER_TOO_SMALL, "row buffer smaller than row_count");
  }
  return status;
}

lsilab_status lsilab_two_point_constant(double p, double* constant) {
  return guarded([&] {
    need(constant, "constant");
    *constant = bernoulli_optimal_constant(p);
  });
}

lsilab_status lsilab_scan_constant(double p, int grid_size, double* constant,
                                   double* argmin_ratio) {
  return guarded([&] {
    const auto s = scan_optimal_constant(p, grid_size > 0 ? grid_size : 201);
    if (constant) *constant = s.constant;
    if (argmin_ratio) *argmin_ratio = s.argmin_ratio;
  });
}

lsilab_status lsilab_two_point_ratio(double fp, double fm, double p, double* ratio) {
  return guarded([&] {
    need(ratio, "ratio");
    *ratio = two_point_sides(fp, fm, p).ratio();
  });
}

lsilab_status lsilab_check_two_point(double fp, double fm, double p, const lsilab_options* opts,
                                     lsilab_report* out) {
  return guarded([&] {
    need(out, "out");
    fill_report(check_two_point(fp, fm, p, to_check(opts)), out);
  });
}

lsilab_status lsilab_tensorization_check(const double* table, const double* p, int n,
                                         const lsilab_options* opts, lsilab_report* out) {
  return guarded([&] {
    need(table, "table");
    need(p, "p");
    need(out, "out");
    require(n >= 1 && n <= kMaxFullCubeDim, ErrorCode::UnsupportedDimension,
            "cube dimension must lie in [1, 16]");
    std::vector<double> values(table, table + (std::size_t{1} << n));
    std::vector<BernoulliMeasure> measures;
    for (int i = 0; i < n; ++i) measures.emplace_back(p[i]);
    fill_report(tensorization_check(CubeFunction::full(std::move(values), std::move(measures)),
                                    to_check(opts)),
                out);
  });
}

lsilab_status lsilab_clt(const lsilab_function* f, const int* n_list, size_t count,
                         lsilab_clt_row* rows) {
  return guarded([&] {
    need(f, "function");
    need(n_list, "n_list");
    need(rows, "rows");
    const auto out = clt_pipeline(f->f, std::span<const int>(n_list, count));
    for (std::size_t i = 0; i < out.size(); ++i) {
      rows[i] = {out[i].n, out[i].discrete_ent, out[i].discrete_grad_sq, out[i].gaussian_ent,
                 out[i].gaussian_grad_sq, out[i].deficit_gap};
    }
  });
}

double lsilab_gaussian_cdf(double x) { return gaussian_cdf(x); }

lsilab_status lsilab_gaussian_quantile(double t, double* x) {
  return guarded([&] {
    need(x, "x");
    *x = gaussian_quantile(t);
  });
}

lsilab_status lsilab_isoperimetric(double t, double* value) {
  return guarded([&] {
    need(value, "value");
    require(t >= 0.0 && t <= 1.0, ErrorCode::OutOfRange, "t must lie in [0, 1]");
    *value = isoperimetric_I(t);
  });
}

void lsilab_corpus_spec_init(lsilab_corpus_spec* spec) {
  if (spec == nullptr) return;
  const CorpusSpec d;
  spec->seed = d.seed;
  spec->count = d.count;
  spec->dimension = d.dimension;
  spec->family = d.family == CorpusFamily::Gaussian ? LSILAB_FAMILY_GAUSSIAN : LSILAB_FAMILY_MIXTURE;
  spec->max_components = d.max_components;
}

lsilab_status lsilab_corpus_generate(const lsilab_corpus_spec* spec, lsilab_corpus** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    CorpusSpec s;
    s.seed = spec->seed;
    s.count = spec->count;
    s.dimension = spec->dimension;
    s.family = spec->family == LSILAB_FAMILY_GAUSSIAN ? CorpusFamily::Gaussian : CorpusFamily::Mixture;
    s.max_components = spec->max_components;
    *out = new lsilab_corpus{Corpus{s, generate(s)}};
  });
}

lsilab_status lsilab_corpus_load(const char* path, lsilab_corpus** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new lsilab_corpus{load(path)};
  });
}

lsilab_status lsilab_corpus_save(const lsilab_corpus* c, const char* path) {
  return guarded([&] {
    need(c, "corpus");
    need(path, "path");
    save(c->c.densities, c->c.spec.value_or(CorpusSpec{}), path);
  });
}

lsilab_status lsilab_corpus_header(const lsilab_corpus* c, char** out) {
  return guarded([&] {
    need(c, "corpus");
    need(out, "out");
    if (!c->c.spec) {
      *out = dup_string("null");
      return;
    }
    *out = dup_string(Json{{"seed", c->c.spec->seed}, {"spec", corpus_spec_to_json(*c->c.spec)}}.dump());
  });
}

size_t lsilab_corpus_size(const lsilab_corpus* c) { return c == nullptr ? 0 : c->c.densities.size(); }

lsilab_status lsilab_corpus_get(const lsilab_corpus* c, size_t index, lsilab_density** out) {
  return guarded([&] {
    need(c, "corpus");
    need(out, "out");
    require(index < c->c.densities.size(), ErrorCode::OutOfRange, "corpus index out of range");
    *out = new lsilab_density{c->c.densities[index]};
  });
}

void lsilab_corpus_free(lsilab_corpus* c) { delete c; }

}  // extern "C"
