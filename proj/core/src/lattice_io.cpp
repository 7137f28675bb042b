#include "qgb/lattice.hpp"

namespace qgb {

Json graph_to_json(const QuadGraphB& g) {
  Json j;
  Json verts = Json::array();
  for (const auto& v : g.vertices()) {
    verts.push_back({{"name", v.name},
                     {"color", v.color == Color::Black ? "black" : "white"},
                     {"boundary", v.boundary}});
  }
  Json classes = Json::array();
  for (const auto& c : g.classes()) {
    Json cj = {{"name", c.name}, {"value", c.value.to_string()}};
    cj["partner"] = c.partner >= 0 ? Json(c.partner) : Json(nullptr);
    classes.push_back(cj);
  }
  Json faces = Json::array();
  for (const auto& f : g.faces()) {
    if (f.kind == FaceKind::Quad) {
      faces.push_back({{"kind", "quad"},
                       {"v", {f.v[0], f.v[1], f.v[2], f.v[3]}},
                       {"a", f.cls_a},
                       {"b", f.cls_b}});
    } else {
      faces.push_back({{"kind", "triangle"}, {"v", {f.v[0], f.v[1], f.v[2]}}, {"a", f.cls_a}});
    }
  }
  j["vertices"] = std::move(verts);
  j["classes"] = std::move(classes);
  j["faces"] = std::move(faces);
  return j;
}

QuadGraphB graph_from_json(const Json& j) {
  QuadGraphB g;
  try {
    for (const auto& v : j.at("vertices")) {
      std::string color = v.value("color", "black");
      if (color != "black" && color != "white") throw DomainError("vertex colour must be black or white");
      g.add_vertex(color == "black" ? Color::Black : Color::White, v.value("boundary", false),
                   v.value("name", std::string{}));
    }
    const auto& classes = j.at("classes");
    for (const auto& c : classes) {
      g.add_class(c.value("name", std::string{}), Scalar::parse(c.at("value").get<std::string>()));
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& p = classes[i].value("partner", Json(nullptr));
      if (!p.is_null()) g.pair_classes(static_cast<int>(i), p.get<int>());
    }
    auto check_class = [&](int c) {
      if (c < 0 || c >= static_cast<int>(g.classes().size())) throw DomainError("face refers to an unknown label class");
      return c;
    };
    for (const auto& f : j.at("faces")) {
      std::string kind = f.at("kind").get<std::string>();
      auto v = f.at("v").get<std::vector<int>>();
      if (kind == "quad") {
        if (v.size() != 4) throw DomainError("quad needs four vertices");
        g.add_quad(v[0], v[1], v[2], v[3], check_class(f.at("a").get<int>()),
                   check_class(f.at("b").get<int>()));
      } else if (kind == "triangle") {
        if (v.size() != 3) throw DomainError("triangle needs three vertices");
        g.add_triangle(v[0], v[1], v[2], check_class(f.at("a").get<int>()));
      } else {
        throw DomainError("unknown face kind '" + kind + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed graph JSON: ") + e.what());
  }
  return g;
}

Json field_to_json(const QuadGraphB& g, const FieldAssignment& field) {
  Json arr = Json::array();
  for (int v = 0; v < static_cast<int>(field.size()); ++v) {
    if (!field[v]) continue;
    arr.push_back({{"vertex", v}, {"name", g.vertices().at(v).name}, {"value", field[v]->to_string()}});
  }
  return arr;
}

FieldAssignment field_from_json(const QuadGraphB& g, const Json& j, FieldMode mode) {
  FieldAssignment field(g.vertex_count());
  try {
    for (const auto& e : j) {
      int v = e.at("vertex").get<int>();
      if (v < 0 || v >= g.vertex_count()) throw DomainError("field refers to an unknown vertex");
      field[v] = Scalar::parse(e.at("value").get<std::string>(), mode);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed field JSON: ") + e.what());
  }
  return field;
}

PropagationProblem problem_from_json(const Json& j) {
  PropagationProblem p;
  try {
    p.family = j.at("family").get<std::string>();
    p.row = j.value("row", std::string{});
    p.mu = Scalar::parse(j.value("mu", std::string("0")));
    p.graph = graph_from_json(j.at("graph"));
    FieldMode mode = bulk_equation(p.family).mode();
    if (mode == FieldMode::ComplexF64) {
      for (auto& c : p.graph.classes()) c.value = Scalar::real(c.value.to_double());
      p.mu = Scalar::real(p.mu.to_double());
    }
    p.initial = field_from_json(p.graph, j.at("initial"), mode);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed problem JSON: ") + e.what());
  }
  return p;
}

Json problem_to_json(const PropagationProblem& p) {
  Json j;
  j["family"] = p.family;
  if (!p.row.empty()) j["row"] = p.row;
  j["mu"] = p.mu.to_string();
  j["graph"] = graph_to_json(p.graph);
  j["initial"] = field_to_json(p.graph, p.initial);
  return j;
}

}  // namespace qgb
