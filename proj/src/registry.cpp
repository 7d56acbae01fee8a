#include "parapress/registry.hpp"

namespace parapress {

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = {
      {"square",
       "z^2: hyperbolic, J = unit circle",
       {{0, 0}, {0, 0}, {1, 0}},
       {{1, 0}},
       {2.0, 0.0},
       false,
       0.03},
      {"quad_parabolic",
       "z^2 + 1/4: parabolic fixed point 1/2, cauliflower Julia set",
       {{0.25, 0}, {0, 0}, {1, 0}},
       {{1, 0}},
       {2.0, 0.0},
       true,
       0.05},
      {"blaschke_parabolic",
       "(3z^2+1)/(z^2+3): parabolic fixed point 1, J = unit circle",
       {{1, 0}, {0, 0}, {3, 0}},
       {{3, 0}, {0, 0}, {1, 0}},
       {0.0, 2.0},
       true,
       0.03},
      {"cheb",
       "z^2 - 2: J = [-2, 2], critical point on J (precondition-failure demo)",
       {{-2, 0}, {0, 0}, {1, 0}},
       {{1, 0}},
       {1.9, 0.1},
       false,
       0.03},
  };
  return entries;
}

const RegistryEntry& get_example(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  std::string known;
  for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + e.name;
  throw PreconditionError("unknown example '" + name + "' (known: " + known + ")");
}

RationalMap make_example(const std::string& name, const Config& cfg) {
  const auto& e = get_example(name);
  return RationalMap(e.numerator, e.denominator, cfg);
}

}  // namespace parapress
