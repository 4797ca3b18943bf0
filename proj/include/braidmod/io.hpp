#pragma once

#include <charconv>
#include <limits>
#include <string>

#include <json.hpp>

#include "braid.hpp"
#include "cabling.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "surface.hpp"

namespace braidmod {

using Json = nlohmann::json;

// Shortest round-trip decimal form.
inline std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string fmt_entropy(const ExtReal& h) {
  if (h.infinite) return "inf";
  if (h.value == 0.0) return "0";
  return fmt_double(h.value);
}

inline std::string fmt_module(const ExtReal& m) {
  if (m.infinite) return "inf";
  return fmt_double(m.value);
}

inline Json json_entropy(const ExtReal& h) {
  if (!h.infinite && h.value == 0.0) return Json("0");
  if (h.infinite) return Json("inf");
  return Json(h.value);
}

inline Json json_module(const ExtReal& m) {
  if (m.infinite) return Json("inf");
  return Json(m.value);
}

inline Json json_int(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
  return Json(v.str());
}

// ---- component trees ----

inline Json tree_to_json(const ComponentNode& node) {
  Json j;
  j["braid"] = to_text(node.braid);
  Json arr = Json::array();
  for (const Attachment& att : node.attachments) {
    Json a;
    a["orbit"] = att.orbit.positions;
    a["child"] = tree_to_json(att.child);
    arr.push_back(std::move(a));
  }
  j["attachments"] = std::move(arr);
  return j;
}

inline Json tree_to_json(const ComponentTree& tree) { return tree_to_json(tree.root); }

inline ComponentNode tree_node_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("braid") || !j["braid"].is_string())
    fail(Err::MalformedToken, "tree node needs a \"braid\" string");
  ComponentNode node;
  node.braid = parse_braid(j["braid"].get<std::string>());
  if (j.contains("attachments")) {
    const Json& arr = j["attachments"];
    if (!arr.is_array()) fail(Err::MalformedToken, "\"attachments\" must be an array");
    for (const Json& a : arr) {
      if (!a.is_object() || !a.contains("orbit") || !a.contains("child"))
        fail(Err::MalformedToken, "attachment needs \"orbit\" and \"child\"");
      Attachment att;
      const Json& ob = a["orbit"];
      if (!ob.is_array() || ob.empty()) fail(Err::MalformedToken, "\"orbit\" must be a nonempty array");
      for (const Json& x : ob) {
        if (!x.is_number_integer()) fail(Err::MalformedToken, "orbit entries must be integers");
        att.orbit.positions.push_back(x.get<int>());
      }
      att.child = tree_node_from_json(a["child"]);
      node.attachments.push_back(std::move(att));
    }
  }
  return node;
}

inline ComponentTree tree_from_json(const Json& j) { return ComponentTree{tree_node_from_json(j)}; }

// ---- polynomial loops ----

inline PolyLoop polyloop_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("samples"))
    fail(Err::MalformedToken, "loop needs \"degree\" and \"samples\"");
  if (!j["degree"].is_number_integer()) fail(Err::MalformedToken, "\"degree\" must be an integer");
  PolyLoop loop;
  loop.degree = j["degree"].get<int>();
  const Json& samples = j["samples"];
  if (!samples.is_array()) fail(Err::MalformedToken, "\"samples\" must be an array");
  for (const Json& s : samples) {
    if (!s.is_array()) fail(Err::MalformedToken, "sample must be an array of coefficients");
    std::vector<Cplx> coeffs;
    for (const Json& c : s) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
        fail(Err::MalformedToken, "coefficient must be [re, im]");
      coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    loop.samples.push_back(std::move(coeffs));
  }
  return loop;
}

inline Json polyloop_to_json(const PolyLoop& loop) {
  Json j;
  j["degree"] = loop.degree;
  Json samples = Json::array();
  for (const auto& s : loop.samples) {
    Json row = Json::array();
    for (const Cplx& c : s) row.push_back(Json::array({c.real(), c.imag()}));
    samples.push_back(std::move(row));
  }
  j["samples"] = std::move(samples);
  return j;
}

// ---- surface homomorphisms ----

inline SurfaceHom surfacehom_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("genus") || !j.contains("images"))
    fail(Err::MalformedToken, "surface map needs \"n\", \"genus\" and \"images\"");
  if (!j["n"].is_number_integer() || !j["genus"].is_number_integer())
    fail(Err::MalformedToken, "\"n\" and \"genus\" must be integers");
  SurfaceHom h;
  h.strands = j["n"].get<int>();
  h.genus = j["genus"].get<int>();
  const Json& images = j["images"];
  if (!images.is_array()) fail(Err::MalformedToken, "\"images\" must be an array");
  for (const Json& w : images) {
    if (!w.is_string()) fail(Err::MalformedToken, "image must be a braid string");
    h.images.push_back(parse_braid(w.get<std::string>()));
  }
  check_surface_hom(h);
  return h;
}

inline Json surfacehom_to_json(const SurfaceHom& h) {
  Json j;
  j["n"] = h.strands;
  j["genus"] = h.genus;
  Json images = Json::array();
  for (const BraidWord& w : h.images) images.push_back(to_text(w));
  j["images"] = std::move(images);
  return j;
}

}  // namespace braidmod
