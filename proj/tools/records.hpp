#pragma once

// Structured records for the command-line tool. One JSON object per line,
// fields in a fixed order: command, inputs, verdicts, key, then extras.

#include <optional>
#include <string>

#include "fintop/fintop.hpp"
#include "json.hpp"

namespace fintop::records {

using Json = nlohmann::ordered_json;

inline Json base(const std::string& command, Json inputs) {
  Json r;
  r["command"] = command;
  r["inputs"] = std::move(inputs);
  r["verdicts"] = Json::object();
  r["key"] = nullptr;
  return r;
}

inline Json square(const Square& sq) {
  Json j;
  j["i"] = render(sq.i);
  j["p"] = render(sq.p);
  j["f"] = render(sq.f);
  j["g"] = render(sq.g);
  return j;
}

inline Json optional_square(const std::optional<Square>& sq) {
  return sq ? square(*sq) : Json(nullptr);
}

inline Json assignment(const Map& f) {
  Json j = Json::object();
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    j[f.dom().label(x).display()] = f.cod().label(f(x)).display();
  }
  return j;
}

inline Json relations(const Space& x) {
  Json j = Json::array();
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (a != b && x.leq(a, b)) j.push_back({x.label(a).display(), x.label(b).display()});
    }
  }
  return j;
}

inline std::string subset_text(const Space& x, PointSet s) {
  std::string out = "{";
  bool first = true;
  for_each_point(s, [&](std::size_t p) {
    if (!first) out += ",";
    out += x.label(p).display();
    first = false;
  });
  return out + "}";
}

inline Json space_summary(const Space& x) {
  Json j;
  j["expr"] = render(x);
  Json pts = Json::array();
  for (std::size_t p = 0; p < x.size(); ++p) pts.push_back(x.label(p).display());
  j["points"] = pts;
  j["relations"] = relations(x);
  Json opens = Json::array();
  for (PointSet u : open_sets(x)) opens.push_back(subset_text(x, u));
  j["open_sets"] = opens;
  return j;
}

inline Json report(const VerificationReport& r) {
  Json inputs;
  inputs["predicate"] = r.predicate;
  inputs["bound"] = r.bound;
  Json rec = base("verify", inputs);
  rec["verdicts"]["passed"] = r.passed();
  rec["verdicts"]["instances_checked"] = r.instances_checked;
  rec["verdicts"]["direct_holds"] = r.direct_holds;
  rec["verdicts"]["mismatches"] = r.mismatch_count();
  rec["kind"] = r.map_predicate ? "map" : "space";
  Json forms = Json::array();
  for (const auto& f : r.forms) {
    Json fj;
    fj["id"] = f.id;
    fj["form"] = f.text;
    fj["class_expr"] = f.class_expr;
    fj["bounds_chain"] = f.bounds_chain;
    fj["caveat"] = f.caveat ? Json(*f.caveat) : Json(nullptr);
    fj["lifting_holds"] = f.lifting_holds;
    Json ms = Json::array();
    for (const auto& m : f.mismatches) {
      Json mj;
      mj["expr"] = m.expr;
      mj["key"] = m.key.hex();
      mj["direct"] = m.direct;
      mj["lifting"] = m.lifting;
      mj["counterexample"] = optional_square(m.counterexample);
      ms.push_back(mj);
    }
    fj["mismatches"] = ms;
    forms.push_back(fj);
  }
  rec["forms"] = forms;
  if (!r.extension_of.empty()) {
    rec["extension_of"] = r.extension_of;
    rec["extension"] = r.extension;
  }
  return rec;
}

}  // namespace fintop::records
