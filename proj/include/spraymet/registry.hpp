#ifndef SPRAYMET_REGISTRY_HPP
#define SPRAYMET_REGISTRY_HPP

// Built-in example sprays with expected outcomes.  Variants are addressed
// as "name:variant" (e.g. "klein:n3", "affine2d_g:quadratic"); the bare
// name runs the default variant.

#include <string>
#include <vector>

#include "spraymet/scenario.hpp"

namespace spraymet {

struct RegistryEntry {
  std::string name;
  std::string description;
  std::vector<std::string> variants;  // first one is the default
};

const std::vector<RegistryEntry>& registry_entries();

// Accepts "name" or "name:variant".
Scenario registry_scenario(const std::string& key);

}  // namespace spraymet

#endif  // SPRAYMET_REGISTRY_HPP
