// Artifact emission: JSON reports, CSV tables, SVG plots.  All output is
// byte-deterministic for a fixed config and seed.
#pragma once

#include "json.hpp"
#include "parapress/pressure.hpp"

namespace parapress {

inline const char* version_string() { return "0.1.0"; }

using Json = nlohmann::json;

Json to_json(const PressureEstimate& est);
Json to_json(const PeriodicOrbit& orbit);
Json to_json(const PreconditionReport& rep);
Json to_json(const ExpansionReport& rep);
Json to_json(const GluingResult& res);

void write_text_file(const std::string& path, const std::string& content);

// CSV cell formatting: %.17g round-trips doubles exactly.
std::string csv_number(double v);

struct SvgSeries {
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  std::string label;
};

struct SvgAnnotations {
  bool mark_intercept = false;
  double intercept_value = 0.0;  // horizontal marker at t = 0 level (log d)
  bool mark_root = false;
  double root_value = 0.0;       // vertical marker at t = h
};

// Minimal line plot with axes; enough for the pressure-curve figure.
std::string svg_line_plot(const std::vector<SvgSeries>& series, const std::string& x_label,
                          const std::string& y_label, const SvgAnnotations& ann = {});

// Scatter plot for point clouds.
std::string svg_scatter(const std::vector<Complex>& points, double radius = 0.7);

}  // namespace parapress
