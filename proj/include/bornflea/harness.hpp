#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "bornflea/csv.hpp"

namespace bornflea::harness {

enum class Experiment {
  Equidistribution,
  TwostateBorn,
  DoublewellBorn,
  Prop1Oscillator,
  SplittingCheck,
};

const char* to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

// A parsed configuration with every default resolved; `resolved` is the
// canonical form hashed into the provenance header.
struct ExperimentConfig {
  Experiment experiment;
  std::uint64_t seed = 0;
  std::string out;      // empty writes to stdout
  unsigned threads = 1;
  nlohmann::json resolved;
};

// Parses and validates; throws ConfigError whose message lists *every*
// violation with its field path, not only the first.
ExperimentConfig validate_config(const std::string& text);

// Dispatches to the owning module and renders the result table.  Identical
// (config, seed) pairs produce byte-identical output.
csv::Table run(const ExperimentConfig& cfg);

}  // namespace bornflea::harness
