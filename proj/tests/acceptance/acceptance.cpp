// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: lsilab_acceptance <path to lsilab CLI>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/catalog.hpp"
#include "core/corpus.hpp"
#include "core/discrete.hpp"
#include "core/functionals.hpp"
#include "core/inequalities.hpp"
#include "core/isoperimetry.hpp"
#include "core/semigroup.hpp"
#include "core/transforms.hpp"

using namespace lsilab;

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

// Collects the first few problems so a failing line says why.
struct Verdict {
  bool ok = true;
  int failures = 0;
  std::string first;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (failures++ == 0) first = what;
    ok = false;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const std::vector<Density>& seed42_corpus() {
  static const std::vector<Density> items = generate(CorpusSpec{});
  return items;
}

// 1. exp(a.x) saturates both LSI forms.
Verdict saturation() {
  Verdict v;
  Rng rng(1001);
  double worst_analytic = 0.0, worst_quadrature = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = trial < 20 ? 1 : 2;
    Vector a(n);
    for (int i = 0; i < n; ++i) a(i) = rng.uniform(-2.0, 2.0);
    const auto f = exp_witness(a);
    for (Path path : {Path::Analytic, Path::Quadrature}) {
      CheckOptions opts;
      opts.path = path;
      const double bound = path == Path::Analytic ? 1e-6 : 1e-4;
      for (const auto& r : {check_lsi_gross(f, opts), check_reversed_lsi(f, opts)}) {
        const double rel = std::abs(r.slack) / r.rhs;
        (path == Path::Analytic ? worst_analytic : worst_quadrature) =
            std::max(path == Path::Analytic ? worst_analytic : worst_quadrature, rel);
        v.expect(r.rhs > 0.0 && rel <= bound, r.name + " a-trial " + std::to_string(trial) +
                                                 " |slack|/rhs " + fmt(rel));
      }
    }
  }
  v.note = "max |slack|/rhs analytic " + fmt(worst_analytic) + ", quadrature " + fmt(worst_quadrature);
  return v;
}

// 2. Gaussians saturate the determinant forms; trace forms show the
// anisotropy gap.
Verdict gaussian_chain() {
  Verdict v;
  Rng rng(1002);
  double worst = 0.0;
  auto run = [&](const GaussianSpec& g) {
    const int n = g.dim();
    const Eigen::SelfAdjointEigenSolver<Matrix> es(g.cov());
    const Vector lambda = es.eigenvalues();
    const double gm = std::exp(lambda.array().log().mean());
    const double trace_gap = lambda.mean() - gm;
    const double nj_gap = gm * lambda.array().inverse().sum() - n;
    const double errs[] = {check_max_entropy_det(g).slack, check_njj(g).slack,
                           check_entropy_trace(g).slack - trace_gap, check_nj(g).slack - nj_gap};
    for (double e : errs) {
      worst = std::max(worst, std::abs(e));
      v.expect(std::abs(e) <= 1e-7, "Gaussian n=" + std::to_string(n) + " deviation " + fmt(e));
    }
  };
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 2;
    Vector m(n), lambda(n);
    for (int i = 0; i < n; ++i) {
      m(i) = rng.uniform(-2.0, 2.0);
      lambda(i) = rng.uniform(0.25, 4.0);
    }
    Matrix r = Matrix::Identity(n, n);
    if (n == 2) {
      const double t = rng.uniform(0.0, kPi);
      r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    }
    const Matrix k = r * lambda.asDiagonal() * r.transpose();
    run(GaussianSpec(m, 0.5 * (k + k.transpose())));
  }
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 4.0;
  const GaussianSpec diag(Vector::Zero(2), d);
  const double s = check_entropy_trace(diag).slack;
  v.expect(std::abs(s - 0.5) <= 1e-7, "diag(1,4) trace slack " + fmt(s));
  run(diag);
  v.note = "max deviation " + fmt(worst) + ", diag(1,4) trace slack " + fmt(s);
  return v;
}

// 3. Every checker holds on the seed-42 corpus.
Verdict corpus_positivity() {
  Verdict v;
  const auto& corpus = seed42_corpus();
  v.expect(corpus.size() == 100, "corpus size");
  double min_slack = 1e300;
  std::string argmin;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Density& g = corpus[i];
    v.expect(g.is_mixture() && (g.dim() == 1 || g.dim() == 2), "corpus item shape");
    const auto ratio = gauss_to_euclid_function(g);
    CheckOptions bob;
    bob.quadrature = bobkov_quadrature(g.dim());
    const InequalityReport reports[] = {
        check_lsi_gross(ratio),        check_reversed_lsi(ratio),
        check_euclidean_lsi(g),        check_reversed_euclidean(g),
        check_nj(g),                   check_njj(g),
        check_entropy_trace(g),        check_max_entropy_det(g),
        check_amgm_spectrum(g),        check_bobkov(derived_bobkov_function(g), bob),
    };
    for (const auto& r : reports) {
      if (r.slack < min_slack) {
        min_slack = r.slack;
        argmin = r.name + " on item " + std::to_string(i);
      }
      v.expect(r.slack >= -1e-7, r.name + " item " + std::to_string(i) + " slack " + fmt(r.slack));
    }
  }
  v.note = "100 densities x 10 checkers, min slack " + fmt(min_slack) + " (" + argmin + ")";
  return v;
}

// 4. Scaling, whitening and the alpha optimisation agree with the direct
// forms.
Verdict equivalence() {
  Verdict v;
  double worst_derive = 0.0, worst_transport = 0.0;
  int worst_step = 0;
  const auto& corpus = seed42_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Density& h = corpus[i];
    const int n = h.dim();
    const auto derived = derive_reversed_euclidean(h);
    const auto direct = check_reversed_euclidean(h);
    const double d = std::max(std::abs(derived.lhs - direct.lhs), std::abs(derived.rhs - direct.rhs));
    worst_derive = std::max(worst_derive, d);
    v.expect(d <= 1e-8, "derive vs direct on item " + std::to_string(i) + ": " + fmt(d));

    // N(K^{-1/2} X) = N(X) / |K|^{1/n}: the trace slack of the whitened law
    // is the determinant slack divided by |K|^{1/n}.
    const auto whitened = check_entropy_trace(whiten(h));
    const auto det = check_max_entropy_det(h);
    const double t = std::abs(whitened.slack - det.slack / det.rhs);
    worst_transport = std::max(worst_transport, t);
    v.expect(t <= 1e-6, "whitened trace vs det on item " + std::to_string(i) + ": " + fmt(t));

    const double tr = covariance(h).value.trace();
    const double alpha_star = std::sqrt(tr / n);
    int best = -1;
    double best_bound = 0.0;
    for (int k = 0; k < 33; ++k) {
      const double alpha = alpha_star / 4.0 * std::pow(16.0, k / 32.0);
      // Intermediate bound on the rescaled law, moved back to h.
      const double bound = 0.5 * covariance(scale_family(h, alpha)).value.trace() +
                           0.5 * n * std::log(2.0 * kPi) + n * std::log(alpha);
      if (best < 0 || bound < best_bound) {
        best = k;
        best_bound = bound;
      }
    }
    worst_step = std::max(worst_step, std::abs(best - 16));
    v.expect(std::abs(best - 16) <= 1, "alpha scan minimum off by " + std::to_string(best - 16) +
                                           " steps on item " + std::to_string(i));
    v.expect(std::abs(optimal_alpha(tr, n).alpha - alpha_star) <= 1e-12 * alpha_star,
             "optimal_alpha closed form");
  }
  v.note = "derive gap " + fmt(worst_derive) + ", transport gap " + fmt(worst_transport) +
           ", alpha argmin within " + std::to_string(worst_step) + " grid steps";
  return v;
}

// 5. Heat-flow entropy identity and the two Cauchy-Schwarz bounds at (1, 0).
Verdict semigroup() {
  Verdict v;
  const double target = 0.5 * std::exp(0.5);
  std::ostringstream note;
  for (const char* name : {"exp", "tanh", "quad"}) {
    const auto f = named_function(name, 1);
    const auto s = sandwich_at_origin(f);
    const auto& tr = s.trace;
    const double gap = tr.identity_gap();
    v.expect(gap <= 1e-4 * (1.0 + std::abs(tr.identity_lhs)), std::string(name) + " identity gap " + fmt(gap));
    v.expect(tr.reversed_bound <= s.functional_entropy + 1e-12,
             std::string(name) + " reversed bound above Ent");
    v.expect(s.functional_entropy <= tr.forward_bound + 1e-12,
             std::string(name) + " Ent above forward bound");
    if (std::string(name) == "exp") {
      for (double x : {tr.reversed_bound, s.functional_entropy, tr.forward_bound, tr.identity_lhs}) {
        v.expect(std::abs(x - target) <= 1e-4, "exp collapse value " + fmt(x));
      }
    }
    note << name << ": gap " << fmt(gap) << " ";
  }
  v.note = note.str();
  return v;
}

// 6. Optimal two-point constant.
Verdict two_point() {
  Verdict v;
  const double half = scan_optimal_constant(0.5).constant;
  v.expect(half >= 0.124 && half <= 0.126, "scan(0.5) = " + fmt(half));
  double worst = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double p = k / 10.0;
    const double q = 1.0 - p;
    const double formula = k == 5 ? 0.125 : p * p * q * q * (std::log(q) - std::log(p)) / (q - p);
    const double d = std::abs(scan_optimal_constant(p).constant - formula);
    worst = std::max(worst, d);
    v.expect(d <= 1e-3, "p = " + fmt(p) + " scan vs formula " + fmt(d));
  }
  const double ratio = two_point_sides(1.01, 0.99, 0.5).ratio();
  v.expect(std::abs(ratio - 8.0) <= 1e-2, "probe ratio " + fmt(ratio));
  v.note = "scan(0.5) " + fmt(half) + ", max |scan - formula| " + fmt(worst) + ", probe ratio " +
           std::to_string(ratio);
  return v;
}

// 7. Tensorization on random tables.
Verdict tensorization() {
  Verdict v;
  Rng rng(1007);
  const double ps[] = {0.3, 0.5, 0.7};
  double min_slack = 1e300, worst_equality = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = rng.integer(2, 4);
    std::vector<BernoulliMeasure> mu;
    for (int i = 0; i < n; ++i) mu.emplace_back(ps[rng.integer(0, 2)]);
    std::vector<double> table(std::size_t{1} << n);
    for (auto& x : table) x = std::exp(rng.uniform(-3.0, 3.0));
    const double s = tensorization_check(CubeFunction::full(table, mu)).slack;
    min_slack = std::min(min_slack, s);
    v.expect(s >= -1e-12, "random table slack " + fmt(s));

    // Same measure, a function of one coordinate only.
    const int axis = rng.integer(0, n - 1);
    const double up = std::exp(rng.uniform(-3.0, 3.0)), down = std::exp(rng.uniform(-3.0, 3.0));
    for (std::size_t k = 0; k < table.size(); ++k) table[k] = (k >> axis) & 1U ? up : down;
    const double e = tensorization_check(CubeFunction::full(table, mu)).slack;
    worst_equality = std::max(worst_equality, std::abs(e));
    v.expect(std::abs(e) <= 1e-12, "single-coordinate slack " + fmt(e));
  }
  v.note = "min slack " + fmt(min_slack) + ", single-coordinate max |slack| " + fmt(worst_equality);
  return v;
}

// 8. Discrete entropy of exp on the cube converges under the CLT scaling.
Verdict clt() {
  Verdict v;
  const int ns[] = {4, 16, 64, 256, 1024};
  const auto rows = clt_pipeline(named_function("exp", 1), ns);
  const double target = 0.5 * std::exp(0.5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    v.expect(rows[i].discrete_ent > rows[i - 1].discrete_ent && rows[i].discrete_ent <= target,
             "discrete_ent not monotone toward the target at n = " + std::to_string(rows[i].n));
  }
  const double rel = std::abs(rows.back().discrete_ent - target) / target;
  v.expect(rel < 0.02, "relative gap at 1024: " + fmt(rel));
  v.expect(rows.back().deficit_gap < rows.front().deficit_gap, "deficit gap did not shrink");
  v.note = "relative gap at n=1024 " + fmt(rel) + ", deficit gap " + fmt(rows.front().deficit_gap) +
           " -> " + fmt(rows.back().deficit_gap);
  return v;
}

// 9. Gaussian CDF / quantile and Bobkov extremality of half-spaces.
Verdict isoperimetry() {
  Verdict v;
  Rng rng(1009);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double t = rng.uniform(0.0, 1.0);
    if (t <= 0.0) continue;
    const double e = std::abs(gaussian_cdf(gaussian_quantile(t)) - t);
    worst = std::max(worst, e);
  }
  v.expect(worst <= 1e-12, "round trip error " + fmt(worst));
  const double i_half = isoperimetric_I(0.5);
  v.expect(std::abs(i_half - 1.0 / std::sqrt(2.0 * kPi)) <= 1e-12, "I(1/2) = " + fmt(i_half));
  std::ostringstream note;
  for (int n : {1, 2}) {
    double last = 1e300;
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
      const auto r = check_bobkov(halfspace_function(n, 0.0, eps));
      const double gap = (r.rhs - r.lhs) / r.rhs;
      v.expect(gap < last, "half-space gap not decreasing at eps " + fmt(eps));
      last = gap;
    }
    v.expect(last <= 0.02, "relative gap at eps 0.05: " + fmt(last));
    note << "n=" << n << " gap(0.05) " << fmt(last) << " ";
  }
  v.note = "round trip " + fmt(worst) + ", " + note.str();
  return v;
}

struct Captured {
  int code = -1;
  std::string out;
};

Captured capture(const std::string& cmd) {
  Captured c;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return c;
  char buf[1 << 14];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) c.out.append(buf, n);
  const int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

// Everything before the metadata block, which carries timing and the worker
// count.
std::string strip_metadata(const std::string& json) {
  const auto at = json.rfind("\"metadata\"");
  return at == std::string::npos ? json : json.substr(0, at);
}

// 10. The CLI suite is byte-identical across runs and worker counts.
Verdict determinism(const std::string& cli) {
  Verdict v;
  if (cli.empty()) {
    v.expect(false, "no CLI path given");
    return v;
  }
  const std::string base = cli + " suite --seed 42";
  const auto a = capture(base + " --count 100 --jobs 1");
  const auto b = capture(base + " --count 100 --jobs 4");
  const auto c = capture(base + " --count 100 --jobs 4");
  const auto csv1 = capture(base + " --count 20 --jobs 1 --format csv");
  const auto csv3 = capture(base + " --count 20 --jobs 3 --format csv");
  v.expect(a.code == 0 && b.code == 0 && c.code == 0, "suite exit codes " + std::to_string(a.code) +
                                                          "/" + std::to_string(b.code));
  v.expect(a.out.size() > 1000 && a.out.find("\"metadata\"") != std::string::npos, "suite output");
  v.expect(strip_metadata(a.out) == strip_metadata(b.out), "jobs 1 vs jobs 4 differ");
  v.expect(strip_metadata(b.out) == strip_metadata(c.out), "repeated jobs 4 runs differ");
  v.expect(csv1.code == 0 && !csv1.out.empty() && csv1.out == csv3.out, "CSV output differs");
  v.note = "seed-42 suite, " + std::to_string(strip_metadata(a.out).size()) +
           " bytes identical across --jobs 1/4/4; CSV identical across --jobs 1/3";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* title;
    double budget_seconds;  // 0: no runtime bound
    std::function<Verdict()> run;
  };
  const Criterion criteria[] = {
      {1, "LSI saturation by exp(a.x)", 5.0, saturation},
      {2, "Gaussian saturation of the entropy chain", 5.0, gaussian_chain},
      {3, "corpus positivity of all checkers", 120.0, corpus_positivity},
      {4, "equivalence machinery", 0.0, equivalence},
      {5, "semigroup identity and sandwich", 30.0, semigroup},
      {6, "two-point constant", 30.0, two_point},
      {7, "tensorization", 10.0, tensorization},
      {8, "CLT convergence", 30.0, clt},
      {9, "isoperimetry", 10.0, isoperimetry},
      {10, "CLI determinism", 0.0, [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      v.expect(false, "runtime " + fmt(secs) + " s over the " + fmt(c.budget_seconds) + " s budget");
    }
    if (!v.ok) ++failed;
    std::printf("[%s] %2d %s (%.2f s): %s\n", v.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                v.ok ? v.note.c_str()
                     : (v.first + (v.failures > 1 ? " (+" + std::to_string(v.failures - 1) + " more)" : ""))
                           .c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
