#include "fracto/spacefile.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace fracto {

namespace {

std::vector<int> parse_key(const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error("malformed subset key '" + key + "'");
    out.push_back(std::stoi(item));
  }
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i] >= out[i + 1])
      throw Error("subset key '" + key + "' is not strictly ascending");
  return out;
}

std::string make_key(const std::vector<int>& elems) {
  std::string key;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) key += ",";
    key += std::to_string(elems[i]);
  }
  return key;
}

ConvPtr load_explicit(const GroundSpace& space, const json& entry,
                      const std::string& id) {
  if (!entry.contains("hull") || !entry["hull"].is_object())
    throw Error("explicit convexity " + id + " needs a hull object");
  const json& table = entry["hull"];
  BaseHull base;
  base.put(Bits(space.size), Bits(space.size));
  auto fetch = [&](const std::vector<int>& elems) {
    std::string key = make_key(elems);
    if (!table.contains(key))
      throw MissingEntry("explicit convexity " + id + " misses key '" + key +
                         "'");
    Bits value(space.size);
    for (const auto& v : table[key]) value.set(v.get<int>());
    base.put(Bits::of(space.size, elems), value);
  };
  // totality over all subsets of size <= n is required
  std::vector<int> stack;
  std::function<void(int, int)> rec = [&](int from, int remaining) {
    if (!stack.empty()) fetch(stack);
    if (remaining == 0) return;
    for (int e = from; e < space.size; ++e) {
      stack.push_back(e);
      rec(e + 1, remaining - 1);
      stack.pop_back();
    }
  };
  rec(0, space.arity);
  return make_convexity_ptr(space, base, id);
}

ConvPtr lift_if_needed(Convexity conv, int arity) {
  if (conv.space().arity == arity)
    return std::make_shared<Convexity>(std::move(conv));
  return std::make_shared<Convexity>(lift_arity(conv, arity));
}

Vec3 parse_vec(const json& v) {
  if (!v.is_array() || v.size() != 3) throw Error("expected a 3-vector");
  return Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

ConvPtr load_robinson(const GroundSpace& space, const json& entry,
                      const std::string& id) {
  if (!entry.contains("points") || !entry.contains("center"))
    throw Error("robinson convexity " + id + " needs points and center");
  std::vector<Vec3> pts;
  for (const auto& p : entry["points"]) pts.push_back(parse_vec(p));
  if (static_cast<int>(pts.size()) != space.size)
    throw Error("robinson points of " + id + " disagree with the space size");
  Vec3 center = parse_vec(entry["center"]);
  double tol = entry.value("tol", 0.0);
  SphereModel model(std::move(pts), {center}, tol > 0 ? tol : 0.25);
  auto conv = model.convexity(0);
  // rebuild under the requested id and arity
  GroundSpace binary(space.size, 2);
  auto h = [&](const std::vector<int>& sub) { return conv->cached_hull(Bits::of(space.size, sub)); };
  Convexity built = make_convexity(binary, BaseHull::from_function(binary, h), id);
  return lift_if_needed(std::move(built), space.arity);
}

}  // namespace

Registry load_space(const json& doc) {
  if (!doc.contains("n") || !doc.contains("size"))
    throw Error("space file needs 'n' and 'size'");
  GroundSpace space(doc["size"].get<int>(), doc["n"].get<int>());
  Registry reg(space);
  if (!doc.contains("convexities") || !doc["convexities"].is_array())
    throw Error("space file needs a 'convexities' array");
  for (const auto& entry : doc["convexities"]) {
    std::string id = entry.value("id", "");
    if (id.empty()) throw Error("every convexity needs an id");
    std::string kind = entry.value("kind", "");
    if (kind == "explicit") {
      reg.add(load_explicit(space, entry, id));
    } else if (kind == "interval") {
      if (space.arity < 2) throw Error("interval convexity needs n >= 2");
      reg.add(lift_if_needed(make_interval_convexity(space.size, id),
                             space.arity));
    } else if (kind == "permuted_interval") {
      if (space.arity < 2)
        throw Error("permuted_interval convexity needs n >= 2");
      if (!entry.contains("perm"))
        throw Error("permuted_interval " + id + " needs a perm");
      std::vector<int> perm;
      for (const auto& v : entry["perm"]) perm.push_back(v.get<int>());
      reg.add(lift_if_needed(make_permuted_interval_convexity(perm, id),
                             space.arity));
    } else if (kind == "robinson") {
      if (space.arity < 2) throw Error("robinson convexity needs n >= 2");
      reg.add(load_robinson(space, entry, id));
    } else {
      throw Error("unknown convexity kind '" + kind + "'");
    }
  }
  return reg;
}

Registry load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open space file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw Error("cannot parse " + path + ": " + e.what());
  }
  return load_space(doc);
}

json set_to_json(const Bits& s) {
  json arr = json::array();
  for (int e : s.elements()) arr.push_back(e);
  return arr;
}

json family_to_json(const SetFamily& fam) {
  json arr = json::array();
  for (const auto& s : fam.members()) arr.push_back(set_to_json(s));
  return arr;
}

json report_to_json(const Report& rep) {
  json j;
  j["name"] = rep.name;
  j["status"] = rep.status;
  json counts;
  for (const auto& [k, v] : rep.counts) counts[k] = v;
  j["counts"] = counts;
  j["witnesses"] = rep.witnesses;
  j["timing_ms"] = rep.timing_ms;
  j["seed"] = rep.seed;
  return j;
}

}  // namespace fracto
