#include <nlohmann/json.hpp>

#include "oodlab/distributions.hpp"
#include "oodlab/errors.hpp"

namespace oodlab {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json point_json(const Point& p) {
  if (p.is_discrete()) return p.index();
  return p.to_vector();
}

Point point_from(const json& j, const std::string& field) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    return Point::discrete(j.get<std::int64_t>());
  }
  if (j.is_number()) return Point{j.get<double>()};
  if (j.is_array() && !j.empty()) {
    std::vector<double> c;
    for (const auto& x : j) {
      if (!x.is_number()) throw InvalidArgument(field + ": coordinates must be numbers");
      c.push_back(x.get<double>());
    }
    return Point(c);
  }
  throw InvalidArgument(field + ": expected a number or a non-empty array");
}

// Continuous points may be written as bare numbers in 1-D; integer literals
// are continuous unless the field is documented as an index.
Point real_point_from(const json& j, const std::string& field) {
  if (j.is_number()) return Point{j.get<double>()};
  return point_from(j, field);
}

const json& field(const json& j, const char* name, const std::string& type) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw InvalidArgument(type + ": missing field '" + name + "'");
  }
  return *it;
}

double num(const json& j, const char* name, const std::string& type) {
  const json& v = field(j, name, type);
  if (!v.is_number()) throw InvalidArgument(type + ": field '" + name + "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& j, const char* name, const std::string& type) {
  const json& v = field(j, name, type);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw InvalidArgument(type + ": field '" + name + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::vector<double> numbers(const json& j, const char* name, const std::string& type) {
  const json& v = field(j, name, type);
  if (!v.is_array()) throw InvalidArgument(type + ": field '" + name + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw InvalidArgument(type + ": field '" + name + "' must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<Point> points(const json& j, const char* name, const std::string& type,
                          bool real) {
  const json& v = field(j, name, type);
  if (!v.is_array()) throw InvalidArgument(type + ": field '" + name + "' must be an array");
  std::vector<Point> out;
  for (const auto& x : v) {
    out.push_back(real ? real_point_from(x, type + "." + name)
                       : point_from(x, type + "." + name));
  }
  return out;
}

}  // namespace

json to_json(const DistributionSpec& spec) {
  json j = std::visit(
      Overloaded{
          [](const dist::UniformBox& b) { return json{{"lo", b.lo}, {"hi", b.hi}}; },
          [](const dist::UniformBall& b) {
            return json{{"center", point_json(b.center)}, {"radius", b.radius}};
          },
          [](const dist::UniformAnnulus& a) {
            return json{{"center", point_json(a.center)},
                        {"r_inner", a.r_inner},
                        {"r_outer", a.r_outer}};
          },
          [](const dist::HalfGaussian& g) {
            return json{{"mean", point_json(g.mean)}, {"sigma", g.sigma}, {"axis", g.axis}};
          },
          [](const dist::PointMass& p) {
            if (p.point.is_discrete()) return json{{"index", p.point.index()}};
            return json{{"point", point_json(p.point)}};
          },
          [](const dist::FiniteSupport& f) {
            json pts = json::array();
            for (const auto& p : f.points) pts.push_back(point_json(p));
            const bool discrete = f.points.front().is_discrete();
            return json{{discrete ? "indices" : "points", pts}, {"probs", f.probs}};
          },
          [](const dist::IntervalWithGap& g) {
            return json{{"x", g.x}, {"eps_gap", g.gap}, {"spike", g.spike}};
          },
          [](const dist::HeavyBoundaryCircle& c) { return json{{"lambda", c.lambda}}; },
          [](const dist::HeavyBoundaryWedgeGap& w) {
            return json{{"theta", w.theta},
                        {"eps_angle", w.eps_angle},
                        {"lambda", w.lambda},
                        {"spike", point_json(w.spike)}};
          },
          [](const dist::NaturalsGeom& g) { return json{{"n", g.n}, {"m", g.m}}; },
          [](const dist::HolderPiecewise1D& h) {
            json ivs = json::array();
            for (const auto& [lo, hi] : h.intervals) ivs.push_back({lo, hi});
            return json{{"intervals", ivs}, {"masses", h.masses}, {"grad_cap", h.grad_cap}};
          },
          [](const dist::RoundedPolygon& r) {
            json pts = json::array();
            for (const auto& p : r.centers) pts.push_back(point_json(p));
            return json{{"centers", pts}, {"radius", r.radius}};
          },
          [](const dist::Mixture& m) {
            json comps = json::array();
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              comps.push_back({{"weight", m.weights[i]}, {"spec", to_json(m.components[i])}});
            }
            return json{{"components", comps}};
          },
      },
      spec.variant());
  j["type"] = spec.type_name();
  return j;
}

DistributionSpec distribution_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("distribution: expected a JSON object");
  const json& tag = field(j, "type", "distribution");
  if (!tag.is_string()) throw InvalidArgument("distribution: 'type' must be a string");
  const std::string t = tag.get<std::string>();
  if (t == "uniform_box") {
    return DistributionSpec::uniform_box(numbers(j, "lo", t), numbers(j, "hi", t));
  }
  if (t == "uniform_ball") {
    return DistributionSpec::uniform_ball(real_point_from(field(j, "center", t), t),
                                          num(j, "radius", t));
  }
  if (t == "uniform_annulus") {
    return DistributionSpec::uniform_annulus(real_point_from(field(j, "center", t), t),
                                             num(j, "r_inner", t), num(j, "r_outer", t));
  }
  if (t == "half_gaussian") {
    const auto axis = j.contains("axis") ? integer(j, "axis", t) : 0;
    if (axis < 0) throw InvalidArgument(t + ": axis must be >= 0");
    return DistributionSpec::half_gaussian(real_point_from(field(j, "mean", t), t),
                                           num(j, "sigma", t),
                                           static_cast<std::size_t>(axis));
  }
  if (t == "point_mass") {
    if (j.contains("index")) {
      return DistributionSpec::point_mass(Point::discrete(integer(j, "index", t)));
    }
    return DistributionSpec::point_mass(real_point_from(field(j, "point", t), t));
  }
  if (t == "finite_support") {
    std::vector<Point> pts;
    if (j.contains("indices")) {
      for (const auto& x : field(j, "indices", t)) {
        if (!x.is_number_integer()) throw InvalidArgument(t + ": indices must be integers");
        pts.push_back(Point::discrete(x.get<std::int64_t>()));
      }
    } else {
      pts = points(j, "points", t, true);
    }
    return DistributionSpec::finite_support(std::move(pts), numbers(j, "probs", t));
  }
  if (t == "interval_with_gap") {
    return DistributionSpec::interval_with_gap(num(j, "x", t), num(j, "eps_gap", t),
                                               num(j, "spike", t));
  }
  if (t == "heavy_boundary_circle") {
    return DistributionSpec::heavy_boundary_circle(num(j, "lambda", t));
  }
  if (t == "heavy_boundary_wedge_gap") {
    return DistributionSpec::heavy_boundary_wedge_gap(
        num(j, "theta", t), num(j, "eps_angle", t), num(j, "lambda", t),
        real_point_from(field(j, "spike", t), t));
  }
  if (t == "naturals_geom") {
    return DistributionSpec::naturals_geom(integer(j, "n", t), integer(j, "m", t));
  }
  if (t == "holder_piecewise_1d") {
    std::vector<std::pair<double, double>> ivs;
    for (const auto& iv : field(j, "intervals", t)) {
      if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
        throw InvalidArgument(t + ": intervals must be [lo, hi] pairs");
      }
      ivs.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
    return DistributionSpec::holder_piecewise_1d(std::move(ivs), numbers(j, "masses", t),
                                                 num(j, "grad_cap", t));
  }
  if (t == "rounded_polygon") {
    return DistributionSpec::rounded_polygon(points(j, "centers", t, true),
                                             num(j, "radius", t));
  }
  if (t == "mixture") {
    std::vector<double> w;
    std::vector<DistributionSpec> comps;
    const json& cs = field(j, "components", t);
    if (!cs.is_array()) throw InvalidArgument(t + ": components must be an array");
    for (const auto& c : cs) {
      w.push_back(num(c, "weight", t + ".component"));
      comps.push_back(distribution_from_json(field(c, "spec", t + ".component")));
    }
    return DistributionSpec::mixture(std::move(w), std::move(comps));
  }
  throw InvalidArgument("distribution: unknown type '" + t + "'");
}

}  // namespace oodlab
