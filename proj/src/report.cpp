#include "parapress/report.hpp"

#include <cstdio>
#include <fstream>

namespace parapress {

namespace {

Json point_json(const SpherePoint& p) {
  if (p.infinite) return "inf";
  return Json::array({p.value.real(), p.value.imag()});
}

}  // namespace

Json to_json(const PressureEstimate& est) {
  Json j;
  j["value"] = est.value;
  j["method"] = to_string(est.method);
  j["n"] = est.n;
  if (est.method == PressureMethod::separated) j["epsilon"] = est.epsilon;
  j["diagnostics"] = est.diagnostics;
  j["mode"] = to_string(est.mode);
  j["tail_width"] = est.tail_width;
  j["cauchy_ok"] = est.cauchy_ok;
  if (!est.note.empty()) j["note"] = est.note;
  return j;
}

Json to_json(const PeriodicOrbit& orbit) {
  Json pts = Json::array();
  for (const auto& p : orbit.points) pts.push_back(point_json(p));
  Json j;
  j["points"] = pts;
  j["period"] = orbit.period;
  j["multiplier"] = {orbit.multiplier.real(), orbit.multiplier.imag()};
  j["classification"] = to_string(orbit.cls);
  j["multiplicity"] = orbit.multiplicity;
  return j;
}

Json to_json(const PreconditionReport& rep) {
  Json j;
  j["critical_clearance"] = rep.critical_clearance;
  j["clearance_ok"] = rep.clearance_ok;
  j["omega_nonempty"] = rep.omega_nonempty;
  j["pass"] = rep.pass;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

Json to_json(const ExpansionReport& rep) {
  Json j;
  j["r_min_on_K"] = rep.r_min_on_K;
  j["global_min"] = rep.global_min;
  j["violation_count"] = rep.violations.size();
  Json v = Json::array();
  for (std::size_t i = 0; i < rep.violations.size() && i < 32; ++i)
    v.push_back({rep.violations[i].real(), rep.violations[i].imag()});
  j["violations"] = v;
  j["points_on_K"] = rep.points_on_K;
  j["mesh_proxy"] = rep.mesh_proxy;
  return j;
}

Json to_json(const GluingResult& res) {
  Json j;
  j["ok"] = res.ok;
  j["y"] = {res.y.real(), res.y.imag()};
  j["tau"] = res.tau;
  j["shadow_distances"] = res.shadow_distances;
  j["branch_codes"] = res.branch_codes;
  if (!res.ok) j["nearest_miss"] = res.nearest_miss;
  if (!res.note.empty()) j["note"] = res.note;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("cannot write " + path);
  out << content;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

struct PlotFrame {
  double xmin, xmax, ymin, ymax;
  static constexpr double W = 640, H = 440, L = 60, R = 20, T = 20, B = 45;
  double px(double x) const { return L + (x - xmin) / (xmax - xmin) * (W - L - R); }
  double py(double y) const { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); }
};

void svg_header(std::string& s, double w, double h) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                w, h, w, h);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string svg_line_plot(const std::vector<SvgSeries>& series, const std::string& x_label,
                          const std::string& y_label, const SvgAnnotations& ann) {
  PlotFrame fr{1e300, -1e300, 1e300, -1e300};
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      fr.xmin = std::min(fr.xmin, x);
      fr.xmax = std::max(fr.xmax, x);
      fr.ymin = std::min(fr.ymin, y);
      fr.ymax = std::max(fr.ymax, y);
    }
  if (fr.xmin >= fr.xmax) {
    fr.xmin -= 1;
    fr.xmax += 1;
  }
  if (fr.ymin >= fr.ymax) {
    fr.ymin -= 1;
    fr.ymax += 1;
  }
  double ypad = 0.08 * (fr.ymax - fr.ymin);
  fr.ymin -= ypad;
  fr.ymax += ypad;

  std::string s;
  svg_header(s, PlotFrame::W, PlotFrame::H);
  char buf[512];

  // Axes.
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                fr.px(fr.xmin), fr.py(fr.ymin), fr.px(fr.xmax), fr.py(fr.ymin));
  s += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                fr.px(fr.xmin), fr.py(fr.ymin), fr.px(fr.xmin), fr.py(fr.ymax));
  s += buf;
  // Zero line when it is inside the frame.
  if (fr.ymin < 0.0 && fr.ymax > 0.0) {
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#bbbbbb\" "
                  "stroke-dasharray=\"3,3\"/>\n",
                  fr.px(fr.xmin), fr.py(0.0), fr.px(fr.xmax), fr.py(0.0));
    s += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\">%s</text>\n",
                fr.px(0.5 * (fr.xmin + fr.xmax)), PlotFrame::H - 10.0, x_label.c_str());
  s += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"14\" y=\"%.1f\" font-size=\"13\" transform=\"rotate(-90 14 %.1f)\">%s"
                "</text>\n",
                fr.py(0.5 * (fr.ymin + fr.ymax)), fr.py(0.5 * (fr.ymin + fr.ymax)),
                y_label.c_str());
  s += buf;
  // Corner tick labels.
  std::snprintf(buf, sizeof(buf), "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">%s</text>\n",
                fr.px(fr.xmin), fr.py(fr.ymin) + 16.0, fmt(fr.xmin).c_str());
  s += buf;
  std::snprintf(buf, sizeof(buf), "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">%s</text>\n",
                fr.px(fr.xmax) - 24.0, fr.py(fr.ymin) + 16.0, fmt(fr.xmax).c_str());
  s += buf;

  if (ann.mark_intercept) {
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"4\" fill=\"#d62728\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" fill=\"#d62728\">log d = %s"
                  "</text>\n",
                  fr.px(0.0), fr.py(ann.intercept_value), fr.px(0.0) + 8.0,
                  fr.py(ann.intercept_value) - 6.0, fmt(ann.intercept_value).c_str());
    s += buf;
  }
  if (ann.mark_root) {
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#2ca02c\" "
                  "stroke-dasharray=\"4,3\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" fill=\"#2ca02c\">h = %s</text>\n",
                  fr.px(ann.root_value), fr.py(fr.ymin), fr.px(ann.root_value), fr.py(fr.ymax),
                  fr.px(ann.root_value) + 5.0, fr.py(fr.ymax) + 14.0, fmt(ann.root_value).c_str());
    s += buf;
  }

  for (const auto& sr : series) {
    std::string path = "<polyline fill=\"none\" stroke=\"" + sr.color + "\" stroke-width=\"1.6\" points=\"";
    for (const auto& [x, y] : sr.points) {
      std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", fr.px(x), fr.py(y));
      path += buf;
    }
    path += "\"/>\n";
    s += path;
  }
  // Legend.
  double ly = PlotFrame::T + 6.0;
  for (const auto& sr : series) {
    if (sr.label.empty()) continue;
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"14\" height=\"4\" fill=\"%s\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">%s</text>\n",
                  PlotFrame::W - 150.0, ly, sr.color.c_str(), PlotFrame::W - 130.0, ly + 6.0,
                  sr.label.c_str());
    s += buf;
    ly += 16.0;
  }
  s += "</svg>\n";
  return s;
}

std::string svg_scatter(const std::vector<Complex>& points, double radius) {
  PlotFrame fr{1e300, -1e300, 1e300, -1e300};
  for (const auto& z : points) {
    fr.xmin = std::min(fr.xmin, z.real());
    fr.xmax = std::max(fr.xmax, z.real());
    fr.ymin = std::min(fr.ymin, z.imag());
    fr.ymax = std::max(fr.ymax, z.imag());
  }
  if (fr.xmin >= fr.xmax) {
    fr.xmin -= 1;
    fr.xmax += 1;
  }
  if (fr.ymin >= fr.ymax) {
    fr.ymin -= 1;
    fr.ymax += 1;
  }
  std::string s;
  svg_header(s, PlotFrame::W, PlotFrame::H);
  char buf[128];
  for (const auto& z : points) {
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"#1f77b4\"/>\n",
                  fr.px(z.real()), fr.py(z.imag()), radius);
    s += buf;
  }
  s += "</svg>\n";
  return s;
}

}  // namespace parapress
