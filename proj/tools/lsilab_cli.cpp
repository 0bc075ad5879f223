// lsilab command-line driver. Talks to the library only through lsilab.h.

#include <lsilab/lsilab.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

// Failures from the library surface as this exception and map to exit 2.
struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(lsilab_status s, const std::string& what) {
  if (s != LSILAB_OK) {
    throw ApiError(what + ": " + lsilab_status_name(s) + ": " + lsilab_last_error());
  }
}

struct DensityDeleter {
  void operator()(lsilab_density* d) const { lsilab_density_free(d); }
};
struct FunctionDeleter {
  void operator()(lsilab_function* f) const { lsilab_function_free(f); }
};
struct CorpusDeleter {
  void operator()(lsilab_corpus* c) const { lsilab_corpus_free(c); }
};
using DensityPtr = std::unique_ptr<lsilab_density, DensityDeleter>;
using FunctionPtr = std::unique_ptr<lsilab_function, FunctionDeleter>;
using CorpusPtr = std::unique_ptr<lsilab_corpus, CorpusDeleter>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  lsilab_string_free(s);
  return out;
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Options shared by every subcommand.
struct Common {
  std::string format = "json";
  std::string out;
  std::optional<double> tol;
  int nodes = 0;
  int grid = 0;
  int jobs = 1;
  std::string path = "auto";
};

lsilab_options make_options(const Common& c) {
  lsilab_options o;
  lsilab_options_init(&o);
  if (c.nodes > 0) o.hermite_points = c.nodes;
  if (c.grid > 0) o.box_points = c.grid;
  if (c.path == "analytic") {
    o.path = LSILAB_PATH_ANALYTIC;
  } else if (c.path == "quadrature") {
    o.path = LSILAB_PATH_QUADRATURE;
  }
  if (c.tol) {
    o.has_tol = 1;
    o.tol = *c.tol;
  }
  return o;
}

Json common_config(const Common& c) {
  Json j;
  j["format"] = c.format;
  j["out"] = c.out;
  j["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
  j["nodes"] = c.nodes > 0 ? c.nodes : 64;
  j["grid"] = c.grid > 0 ? Json(c.grid) : Json("default");
  j["path"] = c.path;
  return j;
}

Json report_json(const lsilab_report& r) {
  Json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["satisfied"] = r.satisfied != 0;
  j["tol"] = r.tol;
  j["estimated_error"] = r.estimated_error;
  j["inputs"] = r.inputs;
  return j;
}

const char* kReportCsvHeader = "name,lhs,rhs,slack,satisfied,tol,estimated_error,inputs";

std::string report_csv(const lsilab_report& r) {
  return csv_field(r.name) + "," + csv_number(r.lhs) + "," + csv_number(r.rhs) + "," +
         csv_number(r.slack) + "," + (r.satisfied ? "true" : "false") + "," + csv_number(r.tol) +
         "," + csv_number(r.estimated_error) + "," + csv_field(r.inputs);
}

std::string resolve_out(const std::string& out) {
  if (out.empty() || out == "-" || out.front() == '/') return out;
  const char* dir = std::getenv("LSILAB_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return out;
  std::string base = dir;
  if (base.back() != '/') base += '/';
  return base + out;
}

Json metadata(const Common& c, double seconds) {
  Json m;
  m["version"] = lsilab_version();
  m["jobs"] = c.jobs;
  m["elapsed_seconds"] = seconds;
  m["unix_time"] = static_cast<long long>(std::time(nullptr));
  return m;
}

void emit(const Common& c, const std::string& text) {
  const std::string path = resolve_out(c.out);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ApiError("cannot write " + path);
  f << text;
  if (!f) throw ApiError("write failed for " + path);
}

// Deterministic document layout: config, results, summary, then the
// metadata block, which is the only part allowed to differ between runs.
void emit_json(const Common& c, Json doc, double seconds) {
  doc["metadata"] = metadata(c, seconds);
  emit(c, doc.dump(2) + "\n");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

DensityPtr load_density(const std::string& path) {
  const std::string text = path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                       : read_file(path);
  lsilab_density* d = nullptr;
  check(lsilab_density_from_json(text.c_str(), &d), "reading " + path);
  return DensityPtr(d);
}

FunctionPtr named(const std::string& name, int n) {
  lsilab_function* f = nullptr;
  check(lsilab_function_named(name.c_str(), n, &f), "function " + name);
  return FunctionPtr(f);
}

std::vector<std::string> density_checkers() {
  std::vector<std::string> out;
  for (const char* const* p = lsilab_density_checker_names(); *p; ++p) out.emplace_back(*p);
  return out;
}

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs work(i) for i in [0, count) on `jobs` threads. Results are written by
// index, so the output order never depends on scheduling.
template <class Fn>
void parallel_for(int count, int jobs, Fn work) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) work(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ---- check ----

struct CheckArgs {
  std::string density;
  std::string function;
  int dim = 1;
  std::string inequality = "all";
  std::optional<double> alpha;
  std::vector<double> values;
};

int cmd_check(const Common& c, const CheckArgs& a) {
  const auto t0 = Clock::now();
  const lsilab_options opts = make_options(c);
  std::vector<lsilab_report> reports;
  Json config;
  config["subcommand"] = "check";

  if (a.inequality == "amgm") {
    if (a.values.empty()) throw ApiError("--values is required for amgm");
    lsilab_report r;
    check(lsilab_check_amgm(a.values.data(), a.values.size(), &opts, &r), "amgm");
    reports.push_back(r);
    config["values"] = a.values;
  } else if (!a.density.empty()) {
    DensityPtr d = load_density(a.density);
    if (a.alpha) {
      lsilab_density* scaled = nullptr;
      check(lsilab_density_scale(d.get(), *a.alpha, &scaled), "scaling");
      d.reset(scaled);
    }
    const auto names =
        a.inequality == "all" ? density_checkers() : std::vector<std::string>{a.inequality};
    for (const auto& name : names) {
      lsilab_report r;
      check(lsilab_check_density(name.c_str(), d.get(), &opts, &r), name);
      reports.push_back(r);
    }
    config["density"] = a.density;
    config["alpha"] = a.alpha ? Json(*a.alpha) : Json(nullptr);
  } else if (!a.function.empty()) {
    FunctionPtr f = named(a.function, a.dim);
    const std::vector<std::string> names =
        a.inequality == "all" ? std::vector<std::string>{"lsi", "reversed_lsi"}
                              : std::vector<std::string>{a.inequality};
    for (const auto& name : names) {
      lsilab_report r;
      check(lsilab_check_function(name.c_str(), f.get(), &opts, &r), name);
      reports.push_back(r);
    }
    config["function"] = a.function;
    config["dim"] = a.dim;
  } else {
    throw ApiError("one of --density, --function or --inequality amgm is required");
  }
  config["inequality"] = a.inequality;
  config.update(common_config(c));

  bool all_ok = true;
  for (const auto& r : reports) all_ok = all_ok && r.satisfied;

  if (c.format == "csv") {
    std::string text = std::string(kReportCsvHeader) + "\n";
    for (const auto& r : reports) text += report_csv(r) + "\n";
    emit(c, text);
  } else {
    Json doc;
    doc["config"] = config;
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    doc["results"] = arr;
    doc["summary"] = {{"satisfied", all_ok}, {"count", reports.size()}};
    emit_json(c, doc, since(t0));
  }
  return all_ok ? kExitOk : kExitViolation;
}

// ---- suite ----

struct SuiteArgs {
  std::string corpus;
  std::uint64_t seed = 42;
  int count = 100;
  int dim = 0;
  std::string family = "mixture";
  std::string save;
};

struct SuiteItem {
  std::string describe;
  std::vector<lsilab_report> reports;
  lsilab_equivalence equivalence{};
  std::string error;
};

int cmd_suite(const Common& c, const SuiteArgs& a) {
  const auto t0 = Clock::now();
  const lsilab_options opts = make_options(c);
  CorpusPtr corpus;
  Json config;
  config["subcommand"] = "suite";
  if (!a.corpus.empty()) {
    lsilab_corpus* raw = nullptr;
    check(lsilab_corpus_load(a.corpus.c_str(), &raw), "loading corpus");
    corpus.reset(raw);
    config["corpus"] = a.corpus;
  } else {
    lsilab_corpus_spec spec;
    lsilab_corpus_spec_init(&spec);
    spec.seed = a.seed;
    spec.count = a.count;
    spec.dimension = a.dim;
    if (a.family == "gaussian") {
      spec.family = LSILAB_FAMILY_GAUSSIAN;
    } else if (a.family == "mixture") {
      spec.family = LSILAB_FAMILY_MIXTURE;
    } else {
      throw ApiError("--family must be gaussian or mixture");
    }
    lsilab_corpus* raw = nullptr;
    check(lsilab_corpus_generate(&spec, &raw), "generating corpus");
    corpus.reset(raw);
    config["seed"] = a.seed;
    config["count"] = a.count;
    config["dim"] = a.dim;
    config["family"] = a.family;
  }
  config.update(common_config(c));
  config["corpus_header"] = Json::parse(take_string([&] {
    char* s = nullptr;
    check(lsilab_corpus_header(corpus.get(), &s), "corpus header");
    return s;
  }()));
  if (!a.save.empty()) check(lsilab_corpus_save(corpus.get(), a.save.c_str()), "saving corpus");

  const auto names = density_checkers();
  const int count = static_cast<int>(lsilab_corpus_size(corpus.get()));
  std::vector<SuiteItem> items(static_cast<std::size_t>(count));
  parallel_for(count, c.jobs, [&](int i) {
    SuiteItem& item = items[static_cast<std::size_t>(i)];
    lsilab_density* raw = nullptr;
    if (lsilab_corpus_get(corpus.get(), static_cast<std::size_t>(i), &raw) != LSILAB_OK) {
      item.error = lsilab_last_error();
      return;
    }
    DensityPtr d(raw);
    char* desc = nullptr;
    if (lsilab_density_describe(d.get(), &desc) == LSILAB_OK) item.describe = take_string(desc);
    for (const auto& name : names) {
      lsilab_report r;
      if (lsilab_check_density(name.c_str(), d.get(), &opts, &r) != LSILAB_OK) {
        item.error = name + ": " + lsilab_last_error();
        return;
      }
      item.reports.push_back(r);
    }
    if (lsilab_equivalence_roundtrip(d.get(), &opts, &item.equivalence) != LSILAB_OK) {
      item.error = std::string("equivalence: ") + lsilab_last_error();
    }
  });

  // Summary: min slack and violation count per checker, in checker order.
  Json per_check = Json::object();
  for (const auto& name : names) per_check[name] = {{"min_slack", nullptr}, {"violations", 0}};
  int violations = 0;
  int errors = 0;
  int equivalence_failures = 0;
  double max_transport_gap = 0.0;
  double min_slack = INFINITY;
  for (const auto& item : items) {
    if (!item.error.empty()) {
      ++errors;
      continue;
    }
    for (const auto& r : item.reports) {
      auto& s = per_check[r.name];
      if (s["min_slack"].is_null() || r.slack < s["min_slack"].get<double>()) s["min_slack"] = r.slack;
      if (!r.satisfied) {
        s["violations"] = s["violations"].get<int>() + 1;
        ++violations;
      }
      min_slack = std::min(min_slack, r.slack);
    }
    if (!item.equivalence.ok) ++equivalence_failures;
    max_transport_gap = std::max(max_transport_gap, item.equivalence.transport_gap);
  }

  if (c.format == "csv") {
    std::string text = std::string("index,density,") + kReportCsvHeader + "\n";
    for (int i = 0; i < count; ++i) {
      const auto& item = items[static_cast<std::size_t>(i)];
      for (const auto& r : item.reports) {
        text += std::to_string(i) + "," + csv_field(item.describe) + "," + report_csv(r) + "\n";
      }
    }
    emit(c, text);
  } else {
    Json results = Json::array();
    for (int i = 0; i < count; ++i) {
      const auto& item = items[static_cast<std::size_t>(i)];
      Json j;
      j["index"] = i;
      j["density"] = item.describe;
      if (!item.error.empty()) {
        j["error"] = item.error;
      } else {
        Json reps = Json::array();
        for (const auto& r : item.reports) reps.push_back(report_json(r));
        j["reports"] = reps;
        const auto& e = item.equivalence;
        j["equivalence"] = {{"reversed_lsi_slack", e.reversed_lsi.slack},
                            {"reversed_euclidean_slack", e.reversed_euclidean.slack},
                            {"entropy_trace_slack", e.entropy_trace.slack},
                            {"max_entropy_det_slack", e.max_entropy_det.slack},
                            {"whitened_trace_slack", e.whitened_trace.slack},
                            {"transport_gap", e.transport_gap},
                            {"transport_consistent", e.transport_consistent != 0},
                            {"verdicts_consistent", e.verdicts_consistent != 0}};
      }
      results.push_back(j);
    }
    Json doc;
    doc["config"] = config;
    doc["results"] = results;
    doc["summary"] = {{"densities", count},
                      {"violations", violations},
                      {"errors", errors},
                      {"equivalence_failures", equivalence_failures},
                      {"min_slack", std::isfinite(min_slack) ? Json(min_slack) : Json(nullptr)},
                      {"max_transport_gap", max_transport_gap},
                      {"per_checker", per_check}};
    emit_json(c, doc, since(t0));
  }
  if (errors > 0) return kExitInput;
  return violations == 0 && equivalence_failures == 0 ? kExitOk : kExitViolation;
}

// ---- saturate ----

struct SaturateArgs {
  std::vector<double> a;
  int dim = 1;
  std::uint64_t seed = 42;
  int count = 20;
};

// Top 53 bits of an mt19937_64 draw, mapped to [lo, hi).
std::vector<double> seeded_slopes(std::uint64_t seed, int count, int dim) {
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  for (int i = 0; i < count * dim; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out.push_back(-2.0 + 4.0 * u);
  }
  return out;
}

int cmd_saturate(const Common& c, const SaturateArgs& a) {
  const auto t0 = Clock::now();
  if (a.dim < 1 || a.dim > 3) throw ApiError("--dim must be 1, 2 or 3");
  std::vector<double> flat = a.a.empty() ? seeded_slopes(a.seed, a.count, a.dim) : a.a;
  if (flat.size() % static_cast<std::size_t>(a.dim) != 0) {
    throw ApiError("--a must hold a multiple of --dim values");
  }
  Json config;
  config["subcommand"] = "saturate";
  config["dim"] = a.dim;
  if (a.a.empty()) {
    config["seed"] = a.seed;
    config["count"] = a.count;
  } else {
    config["a"] = a.a;
  }
  config.update(common_config(c));

  struct Row {
    std::vector<double> a;
    std::string path;
    lsilab_report lsi;
    lsilab_report reversed;
    double rel_lsi;
    double rel_reversed;
    double tol;
    bool ok;
  };
  std::vector<Row> rows;
  bool all_ok = true;
  for (std::size_t k = 0; k < flat.size(); k += static_cast<std::size_t>(a.dim)) {
    std::vector<double> slope(flat.begin() + static_cast<long>(k),
                              flat.begin() + static_cast<long>(k) + a.dim);
    lsilab_function* raw = nullptr;
    check(lsilab_function_exp(slope.data(), a.dim, 0.0, &raw), "exp witness");
    FunctionPtr f(raw);
    for (const char* path : {"analytic", "quadrature"}) {
      Common pc = c;
      pc.path = path;
      pc.tol.reset();
      const lsilab_options o = make_options(pc);
      Row row{slope, path, {}, {}, 0.0, 0.0, 0.0, true};
      check(lsilab_check_function("lsi", f.get(), &o, &row.lsi), "lsi");
      check(lsilab_check_function("reversed_lsi", f.get(), &o, &row.reversed), "reversed_lsi");
      // Slacks are judged relative to the right-hand side, floored at 1.
      row.rel_lsi = std::abs(row.lsi.slack) / std::max(1.0, std::abs(row.lsi.rhs));
      row.rel_reversed = std::abs(row.reversed.slack) / std::max(1.0, std::abs(row.reversed.rhs));
      row.tol = c.tol ? *c.tol : (row.path == "analytic" ? 1e-6 : 1e-4);
      row.ok = row.rel_lsi <= row.tol && row.rel_reversed <= row.tol;
      all_ok = all_ok && row.ok;
      rows.push_back(row);
    }
  }

  if (c.format == "csv") {
    std::string text =
        "a,path,lsi_lhs,lsi_rhs,lsi_slack,reversed_lhs,reversed_rhs,reversed_slack,tol,ok\n";
    for (const auto& r : rows) {
      std::string a_text;
      for (std::size_t i = 0; i < r.a.size(); ++i) a_text += (i ? " " : "") + csv_number(r.a[i]);
      text += a_text + "," + r.path + "," + csv_number(r.lsi.lhs) + "," + csv_number(r.lsi.rhs) +
              "," + csv_number(r.lsi.slack) + "," + csv_number(r.reversed.lhs) + "," +
              csv_number(r.reversed.rhs) + "," + csv_number(r.reversed.slack) + "," +
              csv_number(r.tol) + "," + (r.ok ? "true" : "false") + "\n";
    }
    emit(c, text);
  } else {
    Json arr = Json::array();
    double worst = 0.0;
    for (const auto& r : rows) {
      worst = std::max({worst, r.rel_lsi, r.rel_reversed});
      arr.push_back({{"a", r.a},
                     {"path", r.path},
                     {"lsi", report_json(r.lsi)},
                     {"reversed_lsi", report_json(r.reversed)},
                     {"relative_slack", std::max(r.rel_lsi, r.rel_reversed)},
                     {"tol", r.tol},
                     {"ok", r.ok}});
    }
    Json doc;
    doc["config"] = config;
    doc["results"] = arr;
    doc["summary"] = {{"rows", rows.size()}, {"max_relative_slack", worst}, {"ok", all_ok}};
    emit_json(c, doc, since(t0));
  }
  return all_ok ? kExitOk : kExitViolation;
}

// ---- semigroup ----

struct SemigroupArgs {
  std::string function = "exp";
  double t = 1.0;
  std::vector<double> x;
  int slices = 32;
};

int cmd_semigroup(const Common& c, const SemigroupArgs& a) {
  const auto t0 = Clock::now();
  FunctionPtr f = named(a.function, 1);
  const int n = lsilab_function_dim(f.get());
  std::vector<double> x = a.x.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0) : a.x;
  if (static_cast<int>(x.size()) != n) throw ApiError("--x must have one entry per dimension");
  const int points = c.nodes > 0 ? c.nodes : 0;
  lsilab_semigroup_summary summary;
  std::size_t count = 0;
  check(lsilab_semigroup_run(f.get(), a.t, x.data(), a.slices, points, nullptr, nullptr, 0, &count),
        "semigroup");
  std::vector<lsilab_semigroup_row> rows(count);
  check(lsilab_semigroup_run(f.get(), a.t, x.data(), a.slices, points, &summary, rows.data(),
                             rows.size(), &count),
        "semigroup");
  const bool ok = summary.identity_ok && summary.sandwich_ok;

  if (c.format == "csv") {
    std::string text = "s,integrand,reversed_integrand,forward_integrand\n";
    for (const auto& r : rows) {
      text += csv_number(r.s) + "," + csv_number(r.integrand) + "," +
              csv_number(r.reversed_integrand) + "," + csv_number(r.forward_integrand) + "\n";
    }
    emit(c, text);
  } else {
    Json config;
    config["subcommand"] = "semigroup";
    config["function"] = a.function;
    config["t"] = a.t;
    config["x"] = x;
    config["slices"] = a.slices;
    config.update(common_config(c));
    Json arr = Json::array();
    std::vector<double> s_grid;
    for (const auto& r : rows) {
      s_grid.push_back(r.s);
      arr.push_back({{"s", r.s},
                     {"integrand", r.integrand},
                     {"reversed_integrand", r.reversed_integrand},
                     {"forward_integrand", r.forward_integrand}});
    }
    Json doc;
    doc["config"] = config;
    doc["results"] = {{"f", a.function},
                      {"t", summary.t},
                      {"x", x},
                      {"identity_lhs", summary.identity_lhs},
                      {"production_integral", summary.production_integral},
                      {"reversed_bound", summary.reversed_bound},
                      {"forward_bound", summary.forward_bound},
                      {"s_grid", s_grid},
                      {"rows", arr}};
    doc["summary"] = {
        {"identity_gap", std::abs(summary.identity_lhs - summary.production_integral)},
        {"tolerance", summary.tolerance},
        {"functional_entropy", std::isnan(summary.functional_entropy)
                                   ? Json(nullptr)
                                   : Json(summary.functional_entropy)},
        {"identity_ok", summary.identity_ok != 0},
        {"sandwich_ok", summary.sandwich_ok != 0}};
    emit_json(c, doc, since(t0));
  }
  return ok ? kExitOk : kExitViolation;
}

// ---- clt ----

struct CltArgs {
  std::string function = "exp";
  std::vector<int> n_list{4, 16, 64, 256, 1024};
};

int cmd_clt(const Common& c, const CltArgs& a) {
  const auto t0 = Clock::now();
  FunctionPtr f = named(a.function, 1);
  std::vector<lsilab_clt_row> rows(a.n_list.size());
  check(lsilab_clt(f.get(), a.n_list.data(), a.n_list.size(), rows.data()), "clt");
  if (c.format == "csv") {
    std::string text =
        "n,discrete_ent,discrete_grad_sq,gaussian_ent,gaussian_grad_sq,deficit_gap\n";
    for (const auto& r : rows) {
      text += std::to_string(r.n) + "," + csv_number(r.discrete_ent) + "," +
              csv_number(r.discrete_grad_sq) + "," + csv_number(r.gaussian_ent) + "," +
              csv_number(r.gaussian_grad_sq) + "," + csv_number(r.deficit_gap) + "\n";
    }
    emit(c, text);
    return kExitOk;
  }
  Json config;
  config["subcommand"] = "clt";
  config["function"] = a.function;
  config["n_list"] = a.n_list;
  config.update(common_config(c));
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"n", r.n},
                   {"discrete_ent", r.discrete_ent},
                   {"discrete_grad_sq", r.discrete_grad_sq},
                   {"gaussian_ent", r.gaussian_ent},
                   {"gaussian_grad_sq", r.gaussian_grad_sq},
                   {"deficit_gap", r.deficit_gap}});
  }
  Json doc;
  doc["config"] = config;
  doc["results"] = arr;
  if (!rows.empty()) {
    const auto& last = rows.back();
    doc["summary"] = {{"relative_entropy_gap",
                       std::abs(last.gaussian_ent - last.discrete_ent) / last.gaussian_ent}};
  }
  emit_json(c, doc, since(t0));
  return kExitOk;
}

// ---- constant ----

struct ConstantArgs {
  std::vector<double> p{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
};

int cmd_constant(const Common& c, const ConstantArgs& a) {
  const auto t0 = Clock::now();
  const double tol = c.tol ? *c.tol : 1e-3;
  const int grid = c.grid > 0 ? c.grid : 201;
  struct Row {
    double p, formula, scan, argmin;
    bool ok;
  };
  std::vector<Row> rows;
  bool all_ok = true;
  for (double p : a.p) {
    Row r{p, 0.0, 0.0, 0.0, false};
    check(lsilab_two_point_constant(p, &r.formula), "constant");
    check(lsilab_scan_constant(p, grid, &r.scan, &r.argmin), "scan");
    r.ok = std::abs(r.formula - r.scan) <= tol;
    all_ok = all_ok && r.ok;
    rows.push_back(r);
  }
  if (c.format == "csv") {
    std::string text = "p,formula,scan,abs_diff,argmin_ratio\n";
    for (const auto& r : rows) {
      text += csv_number(r.p) + "," + csv_number(r.formula) + "," + csv_number(r.scan) + "," +
              csv_number(std::abs(r.formula - r.scan)) + "," + csv_number(r.argmin) + "\n";
    }
    emit(c, text);
  } else {
    Json config;
    config["subcommand"] = "constant";
    config["p"] = a.p;
    config.update(common_config(c));
    config["grid"] = grid;
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"p", r.p},
                     {"formula", r.formula},
                     {"scan", r.scan},
                     {"abs_diff", std::abs(r.formula - r.scan)},
                     {"argmin_ratio", r.argmin},
                     {"ok", r.ok}});
    }
    Json doc;
    doc["config"] = config;
    doc["results"] = arr;
    doc["summary"] = {{"tol", tol}, {"ok", all_ok}};
    emit_json(c, doc, since(t0));
  }
  return all_ok ? kExitOk : kExitViolation;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "Output file (default stdout; relative paths honour LSILAB_OUTPUT_DIR)");
  sub->add_option("--tol", c.tol, "Tolerance override");
  sub->add_option("--nodes", c.nodes, "Gauss-Hermite nodes per axis")->check(CLI::Range(2, 256));
  sub->add_option("--grid", c.grid, "Box-rule points per axis, or scan grid size")
      ->check(CLI::Range(3, 100001));
  sub->add_option("--path", c.path, "Evaluation route")
      ->check(CLI::IsMember({"auto", "analytic", "quadrature"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for logarithmic Sobolev-type inequalities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lsilab_version()));

  Common common;

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "Run one or all checkers on a density or function");
  add_common(check_cmd, common);
  check_cmd->add_option("--density", ca.density, "Density spec JSON file ('-' for stdin)");
  check_cmd->add_option("--function", ca.function, "Named function (one, exp, tanh, quad, sq, sin, sin2)");
  check_cmd->add_option("--dim", ca.dim, "Dimension for --function")->check(CLI::Range(1, 3));
  check_cmd->add_option("--inequality", ca.inequality, "Checker name, or 'all'");
  check_cmd->add_option("--alpha", ca.alpha, "Check the law of X/alpha instead of X")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--values", ca.values, "Positive numbers for --inequality amgm")
      ->delimiter(',');

  SuiteArgs sa;
  auto* suite_cmd = app.add_subcommand("suite", "Run every checker over a density corpus");
  add_common(suite_cmd, common);
  suite_cmd->add_option("--corpus", sa.corpus, "Corpus file; otherwise one is generated");
  suite_cmd->add_option("--seed", sa.seed, "Corpus seed");
  suite_cmd->add_option("--count", sa.count, "Corpus size")->check(CLI::Range(1, 100000));
  suite_cmd->add_option("--dim", sa.dim, "1, 2, or 0 for mixed")->check(CLI::Range(0, 2));
  suite_cmd->add_option("--family", sa.family, "gaussian or mixture");
  suite_cmd->add_option("--save-corpus", sa.save, "Write the corpus used to this file");
  suite_cmd->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::Range(1, 256));

  SaturateArgs sat;
  auto* sat_cmd = app.add_subcommand("saturate", "Equality cases exp(a.x) of both LSI forms");
  add_common(sat_cmd, common);
  sat_cmd->add_option("--a", sat.a, "Slopes, dim values per witness")->delimiter(',');
  sat_cmd->add_option("--dim", sat.dim, "Dimension")->check(CLI::Range(1, 3));
  sat_cmd->add_option("--seed", sat.seed, "Seed for random slopes in [-2, 2]^dim");
  sat_cmd->add_option("--count", sat.count, "Number of random slopes")->check(CLI::Range(1, 10000));

  SemigroupArgs sg;
  auto* sg_cmd = app.add_subcommand("semigroup", "Heat-semigroup entropy interpolation trace");
  add_common(sg_cmd, common);
  sg_cmd->add_option("--function", sg.function, "Named one-dimensional function");
  sg_cmd->add_option("--t", sg.t, "Time")->check(CLI::NonNegativeNumber);
  sg_cmd->add_option("--x", sg.x, "Evaluation point")->delimiter(',');
  sg_cmd->add_option("--slices", sg.slices, "Simpson slices in s")->check(CLI::Range(2, 4096));

  CltArgs cl;
  auto* clt_cmd = app.add_subcommand("clt", "Discrete-cube entropy table under the central limit");
  add_common(clt_cmd, common);
  clt_cmd->add_option("--function", cl.function, "Named one-dimensional function");
  clt_cmd->add_option("--n-list", cl.n_list, "Cube dimensions")->delimiter(',');

  ConstantArgs co;
  auto* const_cmd = app.add_subcommand("constant", "Two-point constant: formula versus scan");
  add_common(const_cmd, common);
  const_cmd->add_option("--p", co.p, "Bernoulli parameters")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check_cmd) return cmd_check(common, ca);
    if (*suite_cmd) return cmd_suite(common, sa);
    if (*sat_cmd) return cmd_saturate(common, sat);
    if (*sg_cmd) return cmd_semigroup(common, sg);
    if (*clt_cmd) return cmd_clt(common, cl);
    if (*const_cmd) return cmd_constant(common, co);
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
