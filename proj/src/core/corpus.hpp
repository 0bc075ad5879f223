#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/density.hpp"
#include "core/io.hpp"

namespace lsilab {

enum class CorpusFamily { Gaussian, Mixture };

struct CorpusSpec {
  std::uint64_t seed = 42;
  int count = 100;
  // 1 or 2; 0 draws the dimension per item from {1, 2}.
  int dimension = 0;
  CorpusFamily family = CorpusFamily::Mixture;
  // Mixtures draw their component count uniformly from [2, max_components].
  int max_components = 4;
  double mean_min = -2.0;
  double mean_max = 2.0;
  double eigen_min = 0.25;
  double eigen_max = 4.0;

  void validate() const;
};

// Item i is drawn from its own mt19937_64 stream seeded with
// splitmix64(seed ^ splitmix64(i)), so changing `count` never perturbs
// earlier items. Uniforms take the top 53 bits of each draw.
std::vector<Density> generate(const CorpusSpec& spec);
Density generate_item(const CorpusSpec& spec, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

Json corpus_spec_to_json(const CorpusSpec& spec);
CorpusSpec corpus_spec_from_json(const Json& j);

struct Corpus {
  std::optional<CorpusSpec> spec;
  std::vector<Density> densities;
};

// File layout: a JSON array whose first element is the header
// {"seed": ..., "spec": {...}} followed by one density spec per item.
std::string corpus_to_string(const std::vector<Density>& densities, const CorpusSpec& spec);
Corpus corpus_from_string(const std::string& text);
void save(const std::vector<Density>& densities, const CorpusSpec& spec, const std::string& path);
Corpus load(const std::string& path);

}  // namespace lsilab
