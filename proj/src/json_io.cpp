#include "stackvol/json_io.hpp"

#include <fstream>
#include <sstream>

#include "stackvol/errors.hpp"

namespace stackvol {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& member(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) schema_error(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) schema_error(where, std::string("missing key \"") + key + "\"");
  return *it;
}

const Json* optional_member(const Json& doc, const char* key) {
  auto it = doc.find(key);
  return it == doc.end() ? nullptr : &*it;
}

std::string text(const Json& value, const std::string& where) {
  if (!value.is_string()) schema_error(where, "expected a string");
  return value.get<std::string>();
}

Rational rational(const Json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational(value.dump());
  if (!value.is_string()) schema_error(where, "expected a rational \"p/q\"");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const InputError& e) {
    schema_error(where, e.what());
  }
}

Index object_ref(const FiniteGroupoid& g, const Json& value, const std::string& where) {
  const std::string id = text(value, where);
  auto x = g.find_object(id);
  if (!x) schema_error(where, "unknown object \"" + id + "\"");
  return *x;
}

Index arrow_ref(const FiniteGroupoid& g, const Json& value, const std::string& where) {
  const std::string id = text(value, where);
  auto a = g.find_arrow(id);
  if (!a) schema_error(where, "unknown arrow \"" + id + "\"");
  return *a;
}

std::vector<std::string> id_list(const Json& value, const std::string& where) {
  if (!value.is_array()) schema_error(where, "expected an array of ids");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < value.size(); ++k) out.push_back(text(value[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

const Json& triple(const Json& list, std::size_t k, const std::string& where) {
  const Json& entry = list[k];
  if (!entry.is_array() || entry.size() != 3) schema_error(where + "[" + std::to_string(k) + "]", "expected a triple");
  return entry;
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string detail = e.what();
    if (auto pos = detail.find(": "); pos != std::string::npos) detail = detail.substr(pos + 2);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON: " + detail);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw InputError("failed writing '" + path + "'");
}

FiniteGroupoid groupoid_from_json(const Json& doc) {
  const auto objects = id_list(member(doc, "objects", "groupoid"), "objects");
  const Json& arrow_list = member(doc, "arrows", "groupoid");
  if (!arrow_list.is_array()) schema_error("arrows", "expected an array");

  std::unordered_map<std::string, Index> object_index;
  for (Index k = 0; k < objects.size(); ++k) object_index.emplace(objects[k], k);
  std::vector<Arrow> arrows;
  for (std::size_t k = 0; k < arrow_list.size(); ++k) {
    const std::string where = "arrows[" + std::to_string(k) + "]";
    const Json& a = arrow_list[k];
    Arrow arrow;
    arrow.id = text(member(a, "id", where), where + ".id");
    for (const char* side : {"l", "r"}) {
      const std::string id = text(member(a, side, where), where + "." + side);
      auto it = object_index.find(id);
      if (it == object_index.end()) schema_error(where + "." + side, "unknown object \"" + id + "\"");
      (side[0] == 'l' ? arrow.l : arrow.r) = it->second;
    }
    arrows.push_back(std::move(arrow));
  }
  FiniteGroupoid g = [&] {
    try {
      return FiniteGroupoid(objects, std::move(arrows));
    } catch (const InputError& e) {
      schema_error("groupoid", e.what());
    }
  }();

  if (const Json* ids = optional_member(doc, "identity")) {
    if (!ids->is_object()) schema_error("identity", "expected an object");
    for (const auto& [key, value] : ids->items()) {
      const std::string where = "identity." + key;
      auto x = g.find_object(key);
      if (!x) schema_error(where, "unknown object \"" + key + "\"");
      g.set_identity(*x, arrow_ref(g, value, where));
    }
  }
  if (const Json* inv = optional_member(doc, "inverse")) {
    if (!inv->is_object()) schema_error("inverse", "expected an object");
    for (const auto& [key, value] : inv->items()) {
      const std::string where = "inverse." + key;
      auto a = g.find_arrow(key);
      if (!a) schema_error(where, "unknown arrow \"" + key + "\"");
      g.set_inverse(*a, arrow_ref(g, value, where));
    }
  }
  if (const Json* comp = optional_member(doc, "compose")) {
    if (!comp->is_array()) schema_error("compose", "expected an array of triples");
    for (std::size_t k = 0; k < comp->size(); ++k) {
      const std::string where = "compose[" + std::to_string(k) + "]";
      const Json& t = triple(*comp, k, "compose");
      g.set_product(arrow_ref(g, t[0], where), arrow_ref(g, t[1], where), arrow_ref(g, t[2], where));
    }
  }
  return g;
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  Json doc;
  doc["objects"] = g.object_ids();
  Json arrows = Json::array();
  for (const auto& a : g.arrows()) {
    arrows.push_back({{"id", a.id}, {"l", g.object_id(a.l)}, {"r", g.object_id(a.r)}});
  }
  doc["arrows"] = std::move(arrows);
  Json identity = Json::object();
  for (Index x = 0; x < g.object_count(); ++x) {
    if (g.identity(x) != kNone) identity[g.object_id(x)] = g.arrow(g.identity(x)).id;
  }
  doc["identity"] = std::move(identity);
  Json inverse = Json::object();
  for (Index a = 0; a < g.arrow_count(); ++a) {
    if (g.inverse(a) != kNone) inverse[g.arrow(a).id] = g.arrow(g.inverse(a)).id;
  }
  doc["inverse"] = std::move(inverse);
  Json compose = Json::array();
  g.for_each_product([&](Index a, Index b, Index ab) {
    compose.push_back({g.arrow(a).id, g.arrow(b).id, g.arrow(ab).id});
  });
  doc["compose"] = std::move(compose);
  return doc;
}

WeightData weights_from_json(const Json& doc, const FiniteGroupoid& g) {
  WeightData w;
  for (const char* key : {"a", "b"}) {
    const Json& table = member(doc, key, "weights");
    if (!table.is_object()) schema_error(key, "expected an object keyed by object id");
    Section values(g.object_count());
    std::vector<bool> seen(g.object_count(), false);
    for (const auto& [id, value] : table.items()) {
      const std::string where = std::string(key) + "." + id;
      auto x = g.find_object(id);
      if (!x) schema_error(where, "unknown object \"" + id + "\"");
      values[*x] = rational(value, where);
      seen[*x] = true;
    }
    for (Index x = 0; x < g.object_count(); ++x) {
      if (!seen[x]) schema_error(key, "no value for object \"" + g.object_id(x) + "\"");
    }
    (key[0] == 'a' ? w.a : w.b) = std::move(values);
  }
  return w;
}

Json weights_to_json(const WeightData& w, const FiniteGroupoid& g) {
  Json doc;
  Json a = Json::object(), b = Json::object();
  for (Index x = 0; x < g.object_count(); ++x) {
    a[g.object_id(x)] = to_string(w.a[x]);
    b[g.object_id(x)] = to_string(w.b[x]);
  }
  doc["a"] = std::move(a);
  doc["b"] = std::move(b);
  return doc;
}

Bibundle bibundle_from_json(const Json& doc, const FiniteGroupoid& left, const FiniteGroupoid& right) {
  const auto elements = id_list(member(doc, "elements", "bibundle"), "elements");
  std::unordered_map<std::string, Index> element_index;
  for (Index k = 0; k < elements.size(); ++k) {
    if (!element_index.emplace(elements[k], k).second) schema_error("elements", "duplicate element \"" + elements[k] + "\"");
  }
  auto element_ref = [&](const Json& value, const std::string& where) {
    const std::string id = text(value, where);
    auto it = element_index.find(id);
    if (it == element_index.end()) schema_error(where, "unknown element \"" + id + "\"");
    return it->second;
  };
  std::vector<Index> anchors[2];
  const char* anchor_keys[2] = {"leftAnchor", "rightAnchor"};
  const FiniteGroupoid* sides[2] = {&left, &right};
  for (int s = 0; s < 2; ++s) {
    const Json& table = member(doc, anchor_keys[s], "bibundle");
    if (!table.is_object()) schema_error(anchor_keys[s], "expected an object keyed by element id");
    anchors[s].assign(elements.size(), kNone);
    for (const auto& [id, value] : table.items()) {
      const std::string where = std::string(anchor_keys[s]) + "." + id;
      auto it = element_index.find(id);
      if (it == element_index.end()) schema_error(where, "unknown element \"" + id + "\"");
      anchors[s][it->second] = object_ref(*sides[s], value, where);
    }
    for (Index b = 0; b < elements.size(); ++b) {
      if (anchors[s][b] == kNone) schema_error(anchor_keys[s], "no anchor for element \"" + elements[b] + "\"");
    }
  }
  Bibundle bundle(elements, anchors[0], anchors[1]);
  if (const Json* act = optional_member(doc, "leftAction")) {
    if (!act->is_array()) schema_error("leftAction", "expected an array of triples");
    for (std::size_t k = 0; k < act->size(); ++k) {
      const std::string where = "leftAction[" + std::to_string(k) + "]";
      const Json& t = triple(*act, k, "leftAction");
      bundle.set_left_action(arrow_ref(left, t[0], where), element_ref(t[1], where), element_ref(t[2], where));
    }
  }
  if (const Json* act = optional_member(doc, "rightAction")) {
    if (!act->is_array()) schema_error("rightAction", "expected an array of triples");
    for (std::size_t k = 0; k < act->size(); ++k) {
      const std::string where = "rightAction[" + std::to_string(k) + "]";
      const Json& t = triple(*act, k, "rightAction");
      bundle.set_right_action(element_ref(t[0], where), arrow_ref(right, t[1], where), element_ref(t[2], where));
    }
  }
  return bundle;
}

Json bibundle_to_json(const Bibundle& bundle, const FiniteGroupoid& left, const FiniteGroupoid& right) {
  Json doc;
  doc["elements"] = bundle.element_ids();
  Json la = Json::object(), ra = Json::object();
  for (Index b = 0; b < bundle.size(); ++b) {
    la[bundle.element_id(b)] = left.object_id(bundle.left_anchor(b));
    ra[bundle.element_id(b)] = right.object_id(bundle.right_anchor(b));
  }
  doc["leftAnchor"] = std::move(la);
  doc["rightAnchor"] = std::move(ra);
  Json lact = Json::array(), ract = Json::array();
  for (const auto& [g, b, gb] : bundle.left_entries()) {
    lact.push_back({left.arrow(g).id, bundle.element_id(b), bundle.element_id(gb)});
  }
  for (const auto& [b, h, bh] : bundle.right_entries()) {
    ract.push_back({bundle.element_id(b), right.arrow(h).id, bundle.element_id(bh)});
  }
  doc["leftAction"] = std::move(lact);
  doc["rightAction"] = std::move(ract);
  return doc;
}

}  // namespace stackvol
