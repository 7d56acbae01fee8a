// Potentials on J(f) and Birkhoff sums.
#pragma once

#include <memory>

#include "parapress/metric.hpp"

namespace parapress {

enum class MetricChoice { euclidean, milnor };

class Potential {
 public:
  enum class Kind { geometric, constant, combination, pointwise };

  // phi_t(z) = -t log |f'(z)| (Euclidean metric).
  static Potential geometric(std::shared_ptr<const RationalMap> f, double t);
  // phi_t in the Milnor metric: -t log ||f'(z)||_psi.
  static Potential geometric_milnor(std::shared_ptr<const RationalMap> f, double t,
                                    std::shared_ptr<const MilnorMetric> metric);
  static Potential constant(double c);
  static Potential combination(std::vector<std::pair<double, Potential>> terms);
  // Nearest-neighbor lookup into a user table.
  static Potential pointwise(std::vector<std::pair<Complex, double>> table);

  // Throws NumericError when a geometric term sees |f'| below 1e-300.
  double operator()(Complex z) const;

  Kind kind() const { return kind_; }
  double geometric_t() const { return t_; }    // geometric kinds
  double constant_value() const { return t_; } // constant kind
  std::string spec_string() const;

 private:
  Potential() = default;
  Kind kind_ = Kind::constant;
  double t_ = 0.0;  // geometric weight or the constant value
  MetricChoice metric_choice_ = MetricChoice::euclidean;
  std::shared_ptr<const RationalMap> map_;
  std::shared_ptr<const MilnorMetric> metric_;
  std::shared_ptr<const std::vector<std::pair<Complex, double>>> table_;
  std::shared_ptr<const std::vector<std::pair<double, Potential>>> terms_;
};

// CLI potential grammar: "geometric:t=1.0", "const:c=0.3",
// "mix:0.5*geometric:t=1+0.5*const:c=0".
Potential parse_potential(const std::string& spec, std::shared_ptr<const RationalMap> f);

struct BirkhoffSum {
  double value = 0.0;
  int length = 0;
};

// S_n phi(z); evaluation failures rethrow with the failing orbit index.
BirkhoffSum birkhoff_sum(const RationalMap& f, const Potential& phi, Complex z, int n);

}  // namespace parapress
