#include "parapress/potential.hpp"

#include <cmath>
#include <sstream>

namespace parapress {

Potential Potential::geometric(std::shared_ptr<const RationalMap> f, double t) {
  Potential p;
  p.kind_ = Kind::geometric;
  p.t_ = t;
  p.map_ = std::move(f);
  return p;
}

Potential Potential::geometric_milnor(std::shared_ptr<const RationalMap> f, double t,
                                      std::shared_ptr<const MilnorMetric> metric) {
  Potential p;
  p.kind_ = Kind::geometric;
  p.t_ = t;
  p.metric_choice_ = MetricChoice::milnor;
  p.map_ = std::move(f);
  p.metric_ = std::move(metric);
  return p;
}

Potential Potential::constant(double c) {
  Potential p;
  p.kind_ = Kind::constant;
  p.t_ = c;
  return p;
}

Potential Potential::combination(std::vector<std::pair<double, Potential>> terms) {
  Potential p;
  p.kind_ = Kind::combination;
  p.terms_ = std::make_shared<const std::vector<std::pair<double, Potential>>>(std::move(terms));
  return p;
}

Potential Potential::pointwise(std::vector<std::pair<Complex, double>> table) {
  if (table.empty()) throw PreconditionError("pointwise potential: empty table");
  Potential p;
  p.kind_ = Kind::pointwise;
  p.table_ = std::make_shared<const std::vector<std::pair<Complex, double>>>(std::move(table));
  return p;
}

double Potential::operator()(Complex z) const {
  switch (kind_) {
    case Kind::constant:
      return t_;
    case Kind::geometric: {
      double a;
      if (metric_choice_ == MetricChoice::milnor)
        a = derivative_norm(*metric_, *map_, z);
      else
        a = map_->abs_derivative(z);
      if (a < 1e-300)
        throw NumericError("near-critical evaluation of a geometric potential at " +
                           format_point(SpherePoint{z}));
      return -t_ * std::log(a);
    }
    case Kind::combination: {
      double s = 0.0;
      for (const auto& [w, q] : *terms_) s += w * q(z);
      return s;
    }
    case Kind::pointwise: {
      double best = std::numeric_limits<double>::infinity();
      double val = 0.0;
      for (const auto& [p, v] : *table_) {
        double d = std::abs(p - z);
        if (d < best) {
          best = d;
          val = v;
        }
      }
      return val;
    }
  }
  return 0.0;
}

std::string Potential::spec_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant: os << "const:c=" << t_; break;
    case Kind::geometric:
      os << "geometric:t=" << t_;
      if (metric_choice_ == MetricChoice::milnor) os << " (milnor)";
      break;
    case Kind::combination: {
      os << "mix:";
      bool first = true;
      for (const auto& [w, q] : *terms_) {
        if (!first) os << "+";
        os << w << "*" << q.spec_string();
        first = false;
      }
      break;
    }
    case Kind::pointwise: os << "pointwise[" << table_->size() << "]"; break;
  }
  return os.str();
}

namespace {

double parse_named_value(const std::string& term, const std::string& head, char key) {
  // "<head>:<key>=<value>"
  auto pos = term.find(':');
  if (pos == std::string::npos || term.substr(0, pos) != head)
    throw PreconditionError("potential spec: expected '" + head + ":...' in '" + term + "'");
  std::string rest = term.substr(pos + 1);
  if (rest.size() < 2 || rest[0] != key || rest[1] != '=')
    throw PreconditionError("potential spec: expected '" + std::string(1, key) + "=' in '" + term + "'");
  try {
    return std::stod(rest.substr(2));
  } catch (const std::exception&) {
    throw PreconditionError("potential spec: bad number in '" + term + "'");
  }
}

Potential parse_term(const std::string& term, const std::shared_ptr<const RationalMap>& f) {
  if (term.rfind("geometric:", 0) == 0)
    return Potential::geometric(f, parse_named_value(term, "geometric", 't'));
  if (term.rfind("const:", 0) == 0)
    return Potential::constant(parse_named_value(term, "const", 'c'));
  throw PreconditionError("potential spec: unknown term '" + term + "'");
}

}  // namespace

Potential parse_potential(const std::string& spec, std::shared_ptr<const RationalMap> f) {
  if (spec.rfind("mix:", 0) == 0) {
    std::vector<std::pair<double, Potential>> terms;
    std::string body = spec.substr(4);
    std::size_t start = 0;
    while (start < body.size()) {
      auto plus = body.find('+', start);
      std::string piece = body.substr(start, plus == std::string::npos ? plus : plus - start);
      auto star = piece.find('*');
      if (star == std::string::npos)
        throw PreconditionError("potential spec: mix term needs 'weight*term' in '" + piece + "'");
      double w;
      try {
        w = std::stod(piece.substr(0, star));
      } catch (const std::exception&) {
        throw PreconditionError("potential spec: bad weight in '" + piece + "'");
      }
      terms.emplace_back(w, parse_term(piece.substr(star + 1), f));
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    if (terms.empty()) throw PreconditionError("potential spec: empty mix");
    return Potential::combination(std::move(terms));
  }
  return parse_term(spec, f);
}

BirkhoffSum birkhoff_sum(const RationalMap& f, const Potential& phi, Complex z, int n) {
  if (n < 1) throw PreconditionError("birkhoff_sum: n must be >= 1");
  BirkhoffSum out;
  out.length = n;
  for (int k = 0; k < n; ++k) {
    try {
      out.value += phi(z);
    } catch (const NumericError& e) {
      throw NumericError("birkhoff_sum: evaluation failed at orbit index " + std::to_string(k) +
                         ": " + e.what());
    }
    if (k + 1 < n) z = f.eval_finite(z);
  }
  return out;
}

}  // namespace parapress
