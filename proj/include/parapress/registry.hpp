// Built-in example maps used by the CLI and the acceptance suite.
#pragma once

#include "parapress/rational_map.hpp"

namespace parapress {

struct RegistryEntry {
  std::string name;
  std::string description;
  std::vector<Complex> numerator;    // ascending
  std::vector<Complex> denominator;
  Complex sample_start{2.0, 0.0};    // inverse-iteration anchor z0
  bool parabolic = false;
  double bowen_tol = 0.03;           // threshold for the parabolic root regime
};

const std::vector<RegistryEntry>& registry();
const RegistryEntry& get_example(const std::string& name);  // throws PreconditionError
RationalMap make_example(const std::string& name, const Config& cfg = default_config());

}  // namespace parapress
