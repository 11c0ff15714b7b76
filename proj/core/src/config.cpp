#include "hexatop/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "hexatop/artifacts.hpp"

namespace hexatop {

namespace {

using nlohmann::json;

Axis axis_from(const std::string& s) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  if (s == "both") return Axis::both;
  throw std::invalid_argument("unknown direction: " + s);
}

SupportDescriptor parse_support(const json& j) {
  SupportDescriptor sd;
  sd.dir = axis_from(j.value("dir", std::string("both")));
  if (j.contains("edge")) {
    const std::string edge = j.at("edge");
    using K = SupportDescriptor::Kind;
    if (edge == "left") sd.kind = K::edge_min_x;
    else if (edge == "right") sd.kind = K::edge_max_x;
    else if (edge == "bottom") sd.kind = K::edge_min_y;
    else if (edge == "top") sd.kind = K::edge_max_y;
    else throw std::invalid_argument("unknown edge: " + edge);
  } else {
    sd.kind = SupportDescriptor::Kind::node;
    sd.anchor = NodeAnchor::nearest;
    sd.x = j.at("x");
    sd.y = j.at("y");
  }
  return sd;
}

PassiveDescriptor parse_passive(const json& j) {
  PassiveDescriptor pd;
  const std::string shape = j.at("shape");
  const json params = j.value("params", json::object());
  const auto param = [&](const char* key) -> double {
    if (params.contains(key)) return params.at(key);
    return j.at(key);  // allow flat keys too
  };
  if (shape == "circle") {
    pd.shape = PassiveDescriptor::Shape::circle;
    pd.cx = param("cx");
    pd.cy = param("cy");
    pd.radius = param("r");
  } else if (shape == "rect") {
    pd.shape = PassiveDescriptor::Shape::rect;
    pd.x0 = param("x0");
    pd.x1 = param("x1");
    pd.y0 = param("y0");
    pd.y1 = param("y1");
  } else {
    throw std::invalid_argument("unknown passive shape: " + shape);
  }
  pd.marker = j.at("marker");
  if (pd.marker != 1 && pd.marker != -1)
    throw std::invalid_argument("passive marker must be 1 (solid) or -1 (void)");
  pd.fractional = j.value("frac", false);
  return pd;
}

}  // namespace

ProblemSpec load_problem_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  json j;
  in >> j;

  const std::string problem = j.value("problem", std::string("custom"));
  ProblemSpec spec;
  if (problem != "custom") {
    spec = preset_problem(problem);
  } else {
    spec.name = "custom";
    spec.loads.clear();
    spec.supports.clear();
  }

  if (j.contains("hnex")) spec.mesh.hnex = j.at("hnex");
  if (j.contains("hney")) spec.mesh.hney = j.at("hney");
  if (j.contains("edge")) spec.mesh.edge = j.at("edge");
  if (j.contains("volfrac")) spec.volfrac = j.at("volfrac");
  if (j.contains("penal")) spec.penal = j.at("penal");
  if (j.contains("rfill")) spec.rfill = j.at("rfill");
  if (j.contains("filter")) spec.filter = filter_mode_from_string(j.at("filter"));
  if (j.contains("maxiter")) spec.maxiter = j.at("maxiter");
  if (j.contains("move")) spec.move = j.at("move");

  if (j.contains("loads")) {
    spec.loads.clear();
    for (const auto& jl : j.at("loads")) {
      LoadDescriptor ld;
      ld.anchor = NodeAnchor::nearest;
      ld.x = jl.at("x");
      ld.y = jl.at("y");
      ld.dir = axis_from(jl.value("dir", std::string("y")));
      ld.magnitude = jl.value("mag", -1.0);
      ld.load_case = jl.value("case", 1);
      spec.loads.push_back(ld);
    }
  }
  if (j.contains("supports")) {
    spec.supports.clear();
    for (const auto& js : j.at("supports")) spec.supports.push_back(parse_support(js));
  }
  if (j.contains("passive")) {
    spec.passive.clear();
    for (const auto& jp : j.at("passive")) spec.passive.push_back(parse_passive(jp));
  }

  if (spec.loads.empty()) throw std::runtime_error("config defines no loads");
  if (spec.supports.empty()) throw std::runtime_error("config defines no supports");
  return spec;
}

}  // namespace hexatop
