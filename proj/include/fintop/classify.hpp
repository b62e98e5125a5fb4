#pragma once

// Direct topological predicates on finite maps and spaces, and the registry
// pairing each predicate with its lifting-property formulation.
//
// The direct predicates quantify over subsets exactly as the textbook
// definitions do. They never call the lifting engine; the verification
// harness compares the two.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fintop/space.hpp"

namespace fintop {

enum class MapPredicate {
  surjective,
  injective,
  closed,
  open,
  induced_topology,
  final_topology,
  quotient,
  dense_image,
  fibrewise_T1,
  proper_finite,
  closed_inclusion,
  open_inclusion,
  open_and_induced,
  closed_and_induced,
};

enum class SpacePredicate {
  extremally_disconnected,
  T0,
  T1,
  hausdorff,
  regular_T3,
  normal_T4,
  connected,
  discrete,
  antidiscrete,
  empty,
  nonempty,
  nonempty_connected,
  nonempty_totally_disconnected,
};

inline constexpr std::array<MapPredicate, 14> kMapPredicates = {
    MapPredicate::surjective,       MapPredicate::injective,
    MapPredicate::closed,           MapPredicate::open,
    MapPredicate::induced_topology, MapPredicate::final_topology,
    MapPredicate::quotient,         MapPredicate::dense_image,
    MapPredicate::fibrewise_T1,     MapPredicate::proper_finite,
    MapPredicate::closed_inclusion, MapPredicate::open_inclusion,
    MapPredicate::open_and_induced, MapPredicate::closed_and_induced,
};

inline constexpr std::array<SpacePredicate, 13> kSpacePredicates = {
    SpacePredicate::extremally_disconnected,
    SpacePredicate::T0,
    SpacePredicate::T1,
    SpacePredicate::hausdorff,
    SpacePredicate::regular_T3,
    SpacePredicate::normal_T4,
    SpacePredicate::connected,
    SpacePredicate::discrete,
    SpacePredicate::antidiscrete,
    SpacePredicate::empty,
    SpacePredicate::nonempty,
    SpacePredicate::nonempty_connected,
    SpacePredicate::nonempty_totally_disconnected,
};

inline std::string_view to_string(MapPredicate p) {
  switch (p) {
    case MapPredicate::surjective: return "surjective";
    case MapPredicate::injective: return "injective";
    case MapPredicate::closed: return "closed";
    case MapPredicate::open: return "open";
    case MapPredicate::induced_topology: return "induced_topology";
    case MapPredicate::final_topology: return "final_topology";
    case MapPredicate::quotient: return "quotient";
    case MapPredicate::dense_image: return "dense_image";
    case MapPredicate::fibrewise_T1: return "fibrewise_T1";
    case MapPredicate::proper_finite: return "proper_finite";
    case MapPredicate::closed_inclusion: return "closed_inclusion";
    case MapPredicate::open_inclusion: return "open_inclusion";
    case MapPredicate::open_and_induced: return "open_and_induced";
    case MapPredicate::closed_and_induced: return "closed_and_induced";
  }
  return "?";
}

inline std::string_view to_string(SpacePredicate p) {
  switch (p) {
    case SpacePredicate::extremally_disconnected: return "extremally_disconnected";
    case SpacePredicate::T0: return "T0";
    case SpacePredicate::T1: return "T1";
    case SpacePredicate::hausdorff: return "hausdorff";
    case SpacePredicate::regular_T3: return "regular_T3";
    case SpacePredicate::normal_T4: return "normal_T4";
    case SpacePredicate::connected: return "connected";
    case SpacePredicate::discrete: return "discrete";
    case SpacePredicate::antidiscrete: return "antidiscrete";
    case SpacePredicate::empty: return "empty";
    case SpacePredicate::nonempty: return "nonempty";
    case SpacePredicate::nonempty_connected: return "nonempty_connected";
    case SpacePredicate::nonempty_totally_disconnected: return "nonempty_totally_disconnected";
  }
  return "?";
}

inline std::optional<MapPredicate> map_predicate_named(std::string_view name) {
  for (auto p : kMapPredicates) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

inline std::optional<SpacePredicate> space_predicate_named(std::string_view name) {
  for (auto p : kSpacePredicates) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

template <typename Pred, std::size_t N>
struct PredicateSet {
  std::array<bool, N> value{};

  bool operator[](Pred p) const { return value[static_cast<std::size_t>(p)]; }
  bool& operator[](Pred p) { return value[static_cast<std::size_t>(p)]; }

  friend bool operator==(const PredicateSet&, const PredicateSet&) = default;
};

using MapProperties = PredicateSet<MapPredicate, kMapPredicates.size()>;
using SpaceProperties = PredicateSet<SpacePredicate, kSpacePredicates.size()>;

namespace direct {

/// Calls fn(s) for every subset s of the points of x.
template <typename Fn>
void for_each_subset(const Space& x, Fn&& fn) {
  if (x.size() > 24) throw InputError("subset enumeration is limited to 24 points");
  const PointSet n = x.points();
  for (PointSet s = 0;; ++s) {
    fn(s);
    if (s == n) break;
  }
}

inline bool surjective(const Map& f) { return f.image() == f.cod().points(); }

inline bool injective(const Map& f) { return count(f.image()) == f.dom().size(); }

/// Images of closed sets are closed.
inline bool closed(const Map& f) {
  bool ok = true;
  for_each_subset(f.dom(), [&](PointSet s) {
    if (ok && is_closed(f.dom(), s)) ok = is_closed(f.cod(), f.image(s));
  });
  return ok;
}

/// Images of open sets are open.
inline bool open(const Map& f) {
  bool ok = true;
  for_each_subset(f.dom(), [&](PointSet s) {
    if (ok && is_open(f.dom(), s)) ok = is_open(f.cod(), f.image(s));
  });
  return ok;
}

/// Finite properness: specializations lift along f, i.e. every point in
/// the closure of f(x) is the image of a point in the closure of x. Agrees
/// with `closed` on finite maps but is computed without subset enumeration.
inline bool proper_finite(const Map& f) {
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    if (f.image(f.dom().closure_of(x)) != f.cod().closure_of(f(x))) return false;
  }
  return true;
}

/// Preorder criterion: x <= y iff f(x) <= f(y).
inline bool induced_topology(const Map& f) {
  const Space& x = f.dom();
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (x.leq(a, b) != f.cod().leq(f(a), f(b))) return false;
    }
  }
  return true;
}

/// Every open set of the domain is the preimage of an open set of the
/// codomain.
inline bool induced_topology_by_opens(const Map& f) {
  bool ok = true;
  for_each_subset(f.dom(), [&](PointSet u) {
    if (!ok || !is_open(f.dom(), u)) return;
    bool found = false;
    for_each_subset(f.cod(), [&](PointSet w) {
      if (!found && is_open(f.cod(), w) && f.preimage(w) == u) found = true;
    });
    ok = found;
  });
  return ok;
}

/// W is open in the codomain iff its preimage is open.
inline bool final_topology(const Map& f) {
  bool ok = true;
  for_each_subset(f.cod(), [&](PointSet w) {
    if (ok) ok = is_open(f.cod(), w) == is_open(f.dom(), f.preimage(w));
  });
  return ok;
}

inline bool dense_image(const Map& f) {
  return closure(f.cod(), f.image()) == f.cod().points();
}

/// No two distinct points of one fibre are related.
inline bool fibrewise_T1(const Map& f) {
  const Space& x = f.dom();
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (a != b && f(a) == f(b) && x.leq(a, b)) return false;
    }
  }
  return true;
}

inline bool closed_inclusion(const Map& f) {
  return injective(f) && induced_topology(f) && is_closed(f.cod(), f.image());
}

inline bool open_inclusion(const Map& f) {
  return injective(f) && induced_topology(f) && is_open(f.cod(), f.image());
}

/// The closure of every open set is open.
inline bool extremally_disconnected(const Space& x) {
  bool ok = true;
  for_each_subset(x, [&](PointSet u) {
    if (ok && is_open(x, u)) ok = is_open(x, closure(x, u));
  });
  return ok;
}

/// Distinct points are topologically distinguishable.
inline bool T0(const Space& x) {
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      if (x.leq(a, b) && x.leq(b, a)) return false;
    }
  }
  return true;
}

/// Points are closed.
inline bool T1(const Space& x) {
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (!is_closed(x, bit(a))) return false;
  }
  return true;
}

/// Smallest open set containing s.
inline PointSet open_hull(const Space& x, PointSet s) {
  PointSet out = 0;
  for_each_point(s, [&](std::size_t p) { out |= x.neighbourhood_of(p); });
  return out;
}

/// Distinct points have disjoint open neighbourhoods. In a finite space it
/// suffices to test the smallest ones.
inline bool hausdorff(const Space& x) {
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      if ((x.neighbourhood_of(a) & x.neighbourhood_of(b)) != 0) return false;
    }
  }
  return true;
}

/// A point and a closed set missing it have disjoint open neighbourhoods.
inline bool regular_T3(const Space& x) {
  bool ok = true;
  for_each_subset(x, [&](PointSet b) {
    if (!ok || !is_closed(x, b)) return;
    const PointSet vb = open_hull(x, b);
    for (std::size_t p = 0; p < x.size() && ok; ++p) {
      if (!contains(b, p) && (x.neighbourhood_of(p) & vb) != 0) ok = false;
    }
  });
  return ok;
}

/// Disjoint closed sets have disjoint open neighbourhoods.
inline bool normal_T4(const Space& x) {
  std::vector<PointSet> cs;
  for_each_subset(x, [&](PointSet s) {
    if (is_closed(x, s)) cs.push_back(s);
  });
  for (PointSet a : cs) {
    for (PointSet b : cs) {
      if ((a & b) == 0 && (open_hull(x, a) & open_hull(x, b)) != 0) return false;
    }
  }
  return true;
}

inline std::size_t component_count(const Space& x) {
  PointSet seen = 0;
  std::size_t comps = 0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (contains(seen, p)) continue;
    ++comps;
    PointSet comp = bit(p);
    for (PointSet prev = 0; prev != comp;) {
      prev = comp;
      for_each_point(prev, [&](std::size_t q) {
        comp |= x.closure_of(q) | x.neighbourhood_of(q);
      });
    }
    seen |= comp;
  }
  return comps;
}

inline bool connected(const Space& x) { return component_count(x) <= 1; }

/// Every connected component is a single point.
inline bool totally_disconnected(const Space& x) { return component_count(x) == x.size(); }

/// Every subset is open.
inline bool discrete(const Space& x) {
  bool ok = true;
  for_each_subset(x, [&](PointSet s) {
    if (ok) ok = is_open(x, s);
  });
  return ok;
}

/// The only open sets are the empty set and the whole space.
inline bool antidiscrete(const Space& x) {
  bool ok = true;
  for_each_subset(x, [&](PointSet s) {
    if (ok && s != 0 && s != x.points()) ok = !is_open(x, s);
  });
  return ok;
}

}  // namespace direct

inline MapProperties classify_map(const Map& f) {
  MapProperties p;
  p[MapPredicate::surjective] = direct::surjective(f);
  p[MapPredicate::injective] = direct::injective(f);
  p[MapPredicate::closed] = direct::closed(f);
  p[MapPredicate::open] = direct::open(f);
  p[MapPredicate::induced_topology] = direct::induced_topology(f);
  p[MapPredicate::final_topology] = direct::final_topology(f);
  p[MapPredicate::quotient] = p[MapPredicate::surjective] && p[MapPredicate::final_topology];
  p[MapPredicate::dense_image] = direct::dense_image(f);
  p[MapPredicate::fibrewise_T1] = direct::fibrewise_T1(f);
  p[MapPredicate::proper_finite] = direct::proper_finite(f);
  p[MapPredicate::closed_inclusion] = direct::closed_inclusion(f);
  p[MapPredicate::open_inclusion] = direct::open_inclusion(f);
  p[MapPredicate::open_and_induced] = p[MapPredicate::open] && p[MapPredicate::induced_topology];
  p[MapPredicate::closed_and_induced] =
      p[MapPredicate::closed] && p[MapPredicate::induced_topology];
  return p;
}

inline SpaceProperties classify_space(const Space& x) {
  SpaceProperties p;
  p[SpacePredicate::extremally_disconnected] = direct::extremally_disconnected(x);
  p[SpacePredicate::T0] = direct::T0(x);
  p[SpacePredicate::T1] = direct::T1(x);
  p[SpacePredicate::hausdorff] = direct::hausdorff(x);
  p[SpacePredicate::regular_T3] = direct::regular_T3(x);
  p[SpacePredicate::normal_T4] = direct::normal_T4(x);
  p[SpacePredicate::connected] = direct::connected(x);
  p[SpacePredicate::discrete] = direct::discrete(x);
  p[SpacePredicate::antidiscrete] = direct::antidiscrete(x);
  p[SpacePredicate::empty] = x.empty();
  p[SpacePredicate::nonempty] = !x.empty();
  p[SpacePredicate::nonempty_connected] = !x.empty() && p[SpacePredicate::connected];
  p[SpacePredicate::nonempty_totally_disconnected] =
      !x.empty() && direct::totally_disconnected(x);
  return p;
}

inline bool holds(const Map& f, MapPredicate p) { return classify_map(f)[p]; }
inline bool holds(const Space& x, SpacePredicate p) { return classify_space(x)[p]; }

// Registry ------------------------------------------------------------------

/// What a lifting form is applied to.
enum class Subject {
  map,                  // the map f itself
  empty_into,           // {} --> X
  to_point,             // X --> {o}
  each_point,           // {v} --> X, for every point of X
  some_point,           // {v} --> X, for at least one point of X
  each_injective_pair,  // {x,y} --> X, for every pair of distinct points
};

enum class FormKind {
  /// The subject belongs to the class given by `class_expr`.
  orthogonal,
  /// The subject is a base change of {c}-->{o->c} along some map to {o->c}.
  basechange,
};

struct LiftingForm {
  std::string id;
  Subject subject = Subject::map;
  FormKind kind = FormKind::orthogonal;
  /// Class expression in the text syntax, e.g. "{ {}-->{o} }^r".
  std::string class_expr;
  /// Human-readable statement of the form.
  std::string text;
};

struct Characterization {
  std::string predicate;
  bool is_map_predicate = true;
  std::vector<LiftingForm> forms;
  /// Non-empty for predicates whose lifting form is the conjunction of other
  /// registered predicates.
  std::vector<std::string> composite_of;
};

namespace detail {

inline std::string subject_text(Subject s) {
  switch (s) {
    case Subject::map: return "f";
    case Subject::empty_into: return "{}-->X";
    case Subject::to_point: return "X-->{o}";
    case Subject::each_point: return "{v}-->X";
    case Subject::some_point: return "{v}-->X";
    case Subject::each_injective_pair: return "{x,y}-->X";
  }
  return "?";
}

inline LiftingForm form(std::string id, Subject subject, std::string gen, std::string ops) {
  LiftingForm f;
  f.id = std::move(id);
  f.subject = subject;
  f.class_expr = "{ " + gen + " }^" + ops;
  std::string s = subject_text(subject);
  if (ops == "l") {
    f.text = s + " /_ " + gen;
  } else if (ops == "r") {
    f.text = gen + " /_ " + s;
  } else {
    f.text = s + " in " + f.class_expr;
  }
  if (subject == Subject::each_point) f.text += "  (for every point v)";
  if (subject == Subject::some_point) f.text += "  (for some point v)";
  if (subject == Subject::each_injective_pair) f.text += "  (for every injective {x,y}-->X)";
  return f;
}

inline std::vector<Characterization> build_registry() {
  std::vector<Characterization> r;
  auto map_pred = [&](std::string name, std::vector<LiftingForm> forms) {
    r.push_back({std::move(name), true, std::move(forms), {}});
  };
  auto space_pred = [&](std::string name, std::vector<LiftingForm> forms) {
    r.push_back({std::move(name), false, std::move(forms), {}});
  };
  const auto M = Subject::map;
  map_pred("surjective", {form("point_has_preimage", M, "{}-->{o}", "r"),
                          form("antidiscrete_split", M, "{a}-->{a<->b}", "l")});
  map_pred("injective", {form("glue_antidiscrete_pair", M, "{a<->b}-->{a=b}", "l")});
  map_pred("closed", {form("open_point_inclusion", M, "{o}-->{o->c}", "r")});
  map_pred("open", {form("closed_point_inclusion", M, "{c}-->{o->c}", "r")});
  map_pred("induced_topology", {form("glue_sierpinski", M, "{o->c}-->{o=c}", "l")});
  map_pred("final_topology", {form("sierpinski_to_antidiscrete", M, "{o->c}-->{o<->c}", "l")});
  r.push_back({"quotient", true, {}, {"surjective", "final_topology"}});
  map_pred("dense_image", {form("closed_point_inclusion", M, "{c}-->{o->c}", "l")});
  map_pred("fibrewise_T1", {form("glue_sierpinski", M, "{o->c}-->{o=c}", "r")});
  r.push_back({"proper_finite", true, {}, {"closed"}});
  {
    auto bc = LiftingForm{"basechange", M, FormKind::basechange, "",
                          "f is a base change of {c}-->{o->c} along some Y-->{o->c}"};
    map_pred("closed_inclusion",
             {form("glue_three_over_closed_point", M, "{z<->x<->y->c}-->{z=x<->y=c}", "l"),
              form("double_orthogonal_of_closed_point", M, "{c}-->{o->c}", "lr"), bc});
  }
  map_pred("open_inclusion",
           {form("glue_three_over_open_point", M, "{z<->x<->y<-c}-->{z=x<->y=c}", "l")});
  map_pred("open_and_induced", {form("glue_open_point", M, "{a<->b<-c}-->{a<->b=c}", "l")});
  map_pred("closed_and_induced", {form("glue_closed_point", M, "{a<->b->c}-->{a<->b=c}", "l")});

  space_pred("extremally_disconnected",
             {form("separate_two_opens", Subject::empty_into, "{u->a,b<-v}-->{u->a=b<-v}", "l")});
  space_pred("T0", {form("glue_antidiscrete_pair", Subject::to_point, "{a<->b}-->{a=b}", "r")});
  space_pred("T1", {form("glue_sierpinski", Subject::to_point, "{a->b}-->{a=b}", "r")});
  space_pred("hausdorff",
             {form("separate_pair", Subject::each_injective_pair, "{x->o<-y}-->{x=o=y}", "l")});
  space_pred("regular_T3",
             {form("separate_point_from_closed", Subject::each_point,
                   "{v->a<-w->b}-->{v=a=w->b}", "l")});
  space_pred("normal_T4",
             {form("separate_closed_sets", Subject::empty_into, "{a<-v->x<-w->b}-->{a<-v=x=w->b}",
                   "l"),
              form("separate_closed_sets_long", Subject::empty_into,
                   "{a<-v->v'<-x->w'<-w->b}-->{a<-v=v'=x=w'=w->b}", "l")});
  space_pred("connected", {form("split_into_two", Subject::to_point, "{a,b}-->{a=b}", "l")});
  space_pred("discrete", {form("lifts_along_surjections", Subject::empty_into, "{}-->{o}", "rl")});
  space_pred("antidiscrete",
             {form("lifts_along_injections", Subject::to_point, "{a<->b}-->{a=b}", "lr"),
              form("double_right_of_fold", Subject::to_point, "{a,b}-->{a=b}", "rr")});
  space_pred("nonempty_connected",
             {form("split_off_point", Subject::some_point, "{a}-->{a,b}", "l"),
              form("triple_orthogonal_of_point", Subject::some_point, "{}-->{o}", "rll")});
  space_pred("nonempty_totally_disconnected",
             {form("right_of_fold_lefts", Subject::to_point, "{a,b}-->{a=b}", "lr")});
  space_pred("empty", {form("double_left_of_point", Subject::to_point, "{}-->{o}", "ll")});
  space_pred("nonempty", {form("left_of_point", Subject::to_point, "{}-->{o}", "l")});
  return r;
}

}  // namespace detail

/// Every registered characterization, map predicates first.
inline const std::vector<Characterization>& characterizations() {
  static const std::vector<Characterization> registry = detail::build_registry();
  return registry;
}

/// Throws InputError for an unregistered name.
inline const Characterization& lifting_characterization(std::string_view name) {
  for (const auto& c : characterizations()) {
    if (c.predicate == name) return c;
  }
  throw InputError("no lifting characterization registered for '" + std::string(name) + "'");
}

}  // namespace fintop
