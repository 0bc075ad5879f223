#include "core/corpus.hpp"

#include <cmath>
#include <random>

#include "core/error.hpp"

namespace lsilab {

namespace {

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Inclusive on both ends.
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

GaussianSpec draw_gaussian(const CorpusSpec& spec, int n, Stream& rng) {
  Vector m(n);
  for (int i = 0; i < n; ++i) m(i) = rng.uniform(spec.mean_min, spec.mean_max);
  Vector lambda(n);
  for (int i = 0; i < n; ++i) lambda(i) = rng.uniform(spec.eigen_min, spec.eigen_max);
  Matrix cov = lambda.asDiagonal();
  if (n == 2) {
    const double theta = rng.uniform(0.0, kPi);
    Matrix r(2, 2);
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    cov = symmetrize(r * lambda.asDiagonal() * r.transpose());
  }
  return GaussianSpec(m, cov);
}

const char* family_name(CorpusFamily f) {
  return f == CorpusFamily::Gaussian ? "gaussian" : "mixture";
}

}  // namespace

void CorpusSpec::validate() const {
  require(count >= 1, ErrorCode::InvalidArgument, "corpus count must be >= 1");
  require(dimension == 0 || dimension == 1 || dimension == 2, ErrorCode::UnsupportedDimension,
          "corpus dimension must be 1, 2 or 0 (mixed)");
  require(max_components >= 2 && max_components <= 4, ErrorCode::InvalidArgument,
          "max_components must lie in [2, 4]");
  require(mean_min <= mean_max, ErrorCode::InvalidArgument, "empty mean range");
  require(eigen_min > 0.0 && eigen_min <= eigen_max, ErrorCode::InvalidArgument,
          "eigenvalue range must be positive and non-empty");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Density generate_item(const CorpusSpec& spec, std::uint64_t index) {
  spec.validate();
  Stream rng(splitmix64(spec.seed ^ splitmix64(index)));
  const int n = spec.dimension == 0 ? rng.integer(1, 2) : spec.dimension;
  if (spec.family == CorpusFamily::Gaussian) return draw_gaussian(spec, n, rng);

  const int k = rng.integer(2, spec.max_components);
  std::vector<double> weights(static_cast<std::size_t>(k));
  double total = 0.0;
  for (auto& w : weights) {
    w = rng.uniform(0.5, 1.5);
    total += w;
  }
  for (auto& w : weights) w /= total;
  std::vector<GaussianSpec> parts;
  for (int c = 0; c < k; ++c) parts.push_back(draw_gaussian(spec, n, rng));
  return MixtureSpec(std::move(weights), std::move(parts));
}

std::vector<Density> generate(const CorpusSpec& spec) {
  spec.validate();
  std::vector<Density> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) out.push_back(generate_item(spec, static_cast<std::uint64_t>(i)));
  return out;
}

Json corpus_spec_to_json(const CorpusSpec& spec) {
  return Json{{"seed", spec.seed},
              {"count", spec.count},
              {"dimension", spec.dimension},
              {"family", family_name(spec.family)},
              {"max_components", spec.max_components},
              {"mean_range", {spec.mean_min, spec.mean_max}},
              {"eigen_range", {spec.eigen_min, spec.eigen_max}}};
}

CorpusSpec corpus_spec_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "corpus spec must be an object");
  CorpusSpec s;
  try {
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("count")) s.count = j.at("count").get<int>();
    if (j.contains("dimension")) s.dimension = j.at("dimension").get<int>();
    if (j.contains("family")) {
      const auto f = j.at("family").get<std::string>();
      if (f == "gaussian") {
        s.family = CorpusFamily::Gaussian;
      } else if (f == "mixture") {
        s.family = CorpusFamily::Mixture;
      } else {
        fail(ErrorCode::ParseError, "unknown corpus family \"" + f + "\"");
      }
    }
    if (j.contains("max_components")) s.max_components = j.at("max_components").get<int>();
    if (j.contains("mean_range")) {
      s.mean_min = j.at("mean_range").at(0).get<double>();
      s.mean_max = j.at("mean_range").at(1).get<double>();
    }
    if (j.contains("eigen_range")) {
      s.eigen_min = j.at("eigen_range").at(0).get<double>();
      s.eigen_max = j.at("eigen_range").at(1).get<double>();
    }
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad corpus spec: ") + e.what());
  }
  s.validate();
  return s;
}

std::string corpus_to_string(const std::vector<Density>& densities, const CorpusSpec& spec) {
  Json arr = Json::array();
  arr.push_back(Json{{"seed", spec.seed}, {"spec", corpus_spec_to_json(spec)}});
  for (const auto& d : densities) arr.push_back(density_to_json(d));
  return arr.dump(1) + "\n";
}

Corpus corpus_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_array()) fail(ErrorCode::ParseError, "corpus file must be a JSON array");
  Corpus out;
  std::size_t start = 0;
  if (!j.empty() && j[0].is_object() && !j[0].contains("type")) {
    if (j[0].contains("spec")) out.spec = corpus_spec_from_json(j[0].at("spec"));
    start = 1;
  }
  for (std::size_t i = start; i < j.size(); ++i) out.densities.push_back(density_from_json(j[i]));
  return out;
}

void save(const std::vector<Density>& densities, const CorpusSpec& spec, const std::string& path) {
  write_text_file(path, corpus_to_string(densities, spec));
}

Corpus load(const std::string& path) { return corpus_from_string(read_text_file(path)); }

}  // namespace lsilab
