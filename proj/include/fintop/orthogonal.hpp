#pragma once

// Finite-restricted orthogonal classes and the direct-vs-lifting
// verification harness.
//
// An iterated class P^{s1 s2 ... sk} is evaluated by materializing every
// intermediate class P^{s1..sj}, j < k, as the census maps with at most
// b_j points per space, and testing the subject against the last
// materialized class directly. With one truncated step the result contains
// the true class; with more, the containment direction alternates and
// nothing is guaranteed. Reports carry the bounds used.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintop/canonical.hpp"
#include "fintop/census.hpp"
#include "fintop/classify.hpp"
#include "fintop/lifting.hpp"
#include "fintop/notation.hpp"
#include "fintop/space.hpp"

namespace fintop {

/// Census maps m (both spaces at most `bound` points) with m ⧄ g for every
/// generator (side left) or g ⧄ m (side right).
inline std::vector<Map> finite_orthogonal(const std::vector<Map>& gens, Side side,
                                          std::size_t bound) {
  if (bound > kMaxCensusMapBound) throw InputError("orthogonal bound is limited to 6 points");
  std::vector<Map> out;
  for (const Map& m : shared_census(bound, true).morphisms) {
    if (check_against_class(m, gens, side).holds) out.push_back(m);
  }
  return out;
}

/// Membership oracle for a parsed class expression.
class ClassEvaluator {
 public:
  /// `default_bound` applies to intermediate steps without an explicit
  /// `_{<k}`.
  ClassEvaluator(ClassExpr expr, std::size_t default_bound)
      : expr_(std::move(expr)), default_bound_(default_bound) {
    if (expr_.steps.empty()) throw InputError("class expression has no orthogonal step");
    for (std::size_t k = 0; k + 1 < expr_.steps.size(); ++k) {
      bounds_.push_back(step_bound(expr_.steps[k]));
      if (bounds_.back() > kMaxCensusMapBound) {
        throw InputError("orthogonal bound is limited to 6 points");
      }
    }
    tests_ = prefix_class(expr_.steps.size() - 1);
  }

  const ClassExpr& expr() const { return expr_; }

  /// Bounds used for the materialized intermediate classes, in order.
  const std::vector<std::size_t>& bounds_chain() const { return bounds_; }

  bool truncated() const { return !bounds_.empty(); }

  /// The materialized class the last step is taken against.
  const std::vector<Map>& test_class() const { return *tests_; }

  /// Largest point count allowed by the last step, if restricted.
  std::optional<std::size_t> final_limit() const {
    const auto& last = expr_.steps.back();
    if (!last.below) return std::nullopt;
    return *last.below == 0 ? 0 : *last.below - 1;
  }

  ClassVerdict membership(const Map& m) const {
    if (auto lim = final_limit(); lim && (m.dom().size() > *lim || m.cod().size() > *lim)) {
      ClassVerdict v;
      v.holds = false;
      return v;
    }
    return check_against_class(m, *tests_, expr_.steps.back().side);
  }

  bool is_member(const Map& m) const { return membership(m).holds; }

  /// Census members with at most `bound` points per space.
  std::vector<Map> members(std::size_t bound) const {
    std::vector<Map> out;
    for (const Map& m : shared_census(bound, true).morphisms) {
      if (is_member(m)) out.push_back(m);
    }
    return out;
  }

  std::optional<std::string> caveat() const {
    if (!truncated()) return std::nullopt;
    std::string s = "intermediate classes restricted to spaces with at most ";
    for (std::size_t k = 0; k < bounds_.size(); ++k) {
      if (k) s += ", ";
      s += std::to_string(bounds_[k]);
    }
    s += " points; ";
    s += bounds_.size() == 1
             ? "the computed class contains the true class on the same maps"
             : "containment in either direction is not guaranteed";
    return s;
  }

 private:
  std::size_t step_bound(const OrthogonalStep& st) const {
    if (st.below) return *st.below == 0 ? 0 : *st.below - 1;
    return default_bound_;
  }

  using ClassPtr = std::shared_ptr<const std::vector<Map>>;

  /// The class after the first `k` steps, materialized and memoized.
  ClassPtr prefix_class(std::size_t k) const {
    if (k == 0) return std::make_shared<const std::vector<Map>>(expr_.generators);
    std::string key;
    for (const Map& g : expr_.generators) key += canonical_form(g).hex() + ",";
    for (std::size_t j = 0; j < k; ++j) {
      key += expr_.steps[j].side == Side::left ? 'l' : 'r';
      key += std::to_string(bounds_[j]);
    }
    {
      std::lock_guard lock(cache_mutex());
      if (auto it = cache().find(key); it != cache().end()) return it->second;
    }
    auto prev = prefix_class(k - 1);
    auto cls = std::make_shared<const std::vector<Map>>(
        finite_orthogonal(*prev, expr_.steps[k - 1].side, bounds_[k - 1]));
    std::lock_guard lock(cache_mutex());
    return cache().try_emplace(key, cls).first->second;
  }

  static std::mutex& cache_mutex() {
    static std::mutex mu;
    return mu;
  }
  static std::map<std::string, ClassPtr>& cache() {
    static std::map<std::string, ClassPtr> c;
    return c;
  }

  ClassExpr expr_;
  std::size_t default_bound_;
  std::vector<std::size_t> bounds_;
  ClassPtr tests_;
};

// Lifting forms -------------------------------------------------------------

inline constexpr std::size_t kDefaultIntermediateBound = 3;
inline constexpr std::size_t kDefaultMapBound = 3;
inline constexpr std::size_t kDefaultSpaceBound = 4;

/// The maps a form is applied to for a space predicate.
inline std::vector<Map> subject_maps(Subject s, const Space& x) {
  switch (s) {
    case Subject::map:
      throw InputError("a map subject needs a map");
    case Subject::empty_into:
      return {Map::from_empty(x)};
    case Subject::to_point:
      return {Map::to_point(x)};
    case Subject::each_point:
    case Subject::some_point: {
      std::vector<Map> out;
      const Space v = Space::discrete({"v"});
      for (std::size_t p = 0; p < x.size(); ++p) out.emplace_back(v, x, std::vector<std::size_t>{p});
      return out;
    }
    case Subject::each_injective_pair: {
      std::vector<Map> out;
      const Space xy = Space::discrete({"x", "y"});
      for (std::size_t p = 0; p < x.size(); ++p) {
        for (std::size_t q = p + 1; q < x.size(); ++q) {
          out.emplace_back(xy, x, std::vector<std::size_t>{p, q});
        }
      }
      return out;
    }
  }
  return {};
}

struct FormOutcome {
  bool holds = true;
  /// First square without a lift, when the failure came from one.
  std::optional<Square> counterexample;
};

/// f is isomorphic over its codomain to the base change of
/// {c}-->{o->c} along some map cod(f) -> {o->c}.
inline bool is_closed_point_basechange(const Map& f) {
  static const Map point = parse_map("{c}-->{o->c}");
  const Space& y = f.cod();
  const Space& x = f.dom();
  bool found = false;
  for_each_monotone(y, point.cod(), [&](const std::vector<std::size_t>& ga) {
    const Map g(y, point.cod(), ga);
    const Pullback pb = pullback(g, point);
    if (pb.space.size() != x.size()) return true;
    // An isomorphism x -> pb.space over y.
    std::vector<PointSet> allowed(x.size(), 0);
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (std::size_t k = 0; k < pb.space.size(); ++k) {
        if (pb.first(k) == f(a)) allowed[a] |= bit(k);
      }
    }
    for_each_monotone(x, pb.space, allowed, [&](const std::vector<std::size_t>& phi) {
      PointSet hit = 0;
      for (auto k : phi) hit |= bit(k);
      if (hit != pb.space.points()) return true;
      for (std::size_t a = 0; a < x.size(); ++a) {
        for (std::size_t b = 0; b < x.size(); ++b) {
          if (pb.space.leq(phi[a], phi[b]) && !x.leq(a, b)) return true;
        }
      }
      found = true;
      return false;
    });
    return !found;
  });
  return found;
}

/// Evaluates lifting forms, sharing materialized classes between calls.
class FormEvaluator {
 public:
  explicit FormEvaluator(std::size_t intermediate_bound = kDefaultIntermediateBound)
      : bound_(intermediate_bound) {}

  const ClassEvaluator& evaluator(const LiftingForm& form) {
    auto it = evaluators_.find(form.class_expr);
    if (it == evaluators_.end()) {
      it = evaluators_.emplace(form.class_expr, ClassEvaluator(parse_class_expr(form.class_expr), bound_))
               .first;
    }
    return it->second;
  }

  FormOutcome on_map(const LiftingForm& form, const Map& f) {
    FormOutcome out;
    if (form.kind == FormKind::basechange) {
      out.holds = is_closed_point_basechange(f);
      return out;
    }
    if (form.subject != Subject::map) throw InputError("form '" + form.id + "' is a space form");
    auto v = evaluator(form).membership(f);
    out.holds = v.holds;
    if (!v.holds) out.counterexample = v.verdict.counterexample;
    return out;
  }

  FormOutcome on_space(const LiftingForm& form, const Space& x) {
    FormOutcome out;
    const auto& ev = evaluator(form);
    if (form.subject == Subject::some_point) {
      std::optional<Square> first_failure;
      for (const Map& m : subject_maps(form.subject, x)) {
        auto v = ev.membership(m);
        if (v.holds) return out;
        if (!first_failure) first_failure = v.verdict.counterexample;
      }
      out.holds = false;
      out.counterexample = first_failure;
      return out;
    }
    for (const Map& m : subject_maps(form.subject, x)) {
      auto v = ev.membership(m);
      if (!v.holds) {
        out.holds = false;
        out.counterexample = v.verdict.counterexample;
        return out;
      }
    }
    return out;
  }

  std::size_t intermediate_bound() const { return bound_; }

 private:
  std::size_t bound_;
  std::map<std::string, ClassEvaluator> evaluators_;
};

/// Lifting verdict of a predicate: its first form, or the conjunction of
/// its components' first forms for a composite.
inline FormOutcome lifting_verdict(FormEvaluator& ev, const Characterization& c, const Map& f) {
  if (c.composite_of.empty()) return ev.on_map(c.forms.front(), f);
  for (const auto& part : c.composite_of) {
    auto out = lifting_verdict(ev, lifting_characterization(part), f);
    if (!out.holds) return out;
  }
  return {};
}

inline FormOutcome lifting_verdict(FormEvaluator& ev, const Characterization& c, const Space& x) {
  return ev.on_space(c.forms.front(), x);
}

// Verification --------------------------------------------------------------

struct Mismatch {
  /// Subject in the text syntax.
  std::string expr;
  CanonicalKey key;
  bool direct = false;
  bool lifting = false;
  std::optional<Square> counterexample;
};

struct FormReport {
  std::string id;
  std::string text;
  std::string class_expr;
  std::vector<std::size_t> bounds_chain;
  std::optional<std::string> caveat;
  std::size_t lifting_holds = 0;
  std::vector<Mismatch> mismatches;
};

struct VerificationReport {
  std::string predicate;
  bool map_predicate = true;
  std::size_t bound = 0;
  std::size_t instances_checked = 0;
  std::size_t direct_holds = 0;
  std::vector<FormReport> forms;
  /// Subjects satisfying the lifting form but not the stricter reading
  /// named in `extension_of`.
  std::vector<std::string> extension;
  std::string extension_of;
  std::vector<std::string> notes;

  std::size_t mismatch_count() const {
    std::size_t n = 0;
    for (const auto& f : forms) n += f.mismatches.size();
    return n;
  }
  bool passed() const { return mismatch_count() == 0; }
};

inline std::size_t default_bound_for(const Characterization& c) {
  return c.is_map_predicate ? kDefaultMapBound : kDefaultSpaceBound;
}

/// Compares the direct predicate with every registered lifting form over
/// the census at `bound`.
inline VerificationReport verify_correspondence(std::string_view name, std::size_t bound,
                                                FormEvaluator& ev) {
  const Characterization& c = lifting_characterization(name);
  VerificationReport r;
  r.predicate = c.predicate;
  r.map_predicate = c.is_map_predicate;
  r.bound = bound;

  std::vector<LiftingForm> forms = c.forms;
  if (!c.composite_of.empty()) {
    LiftingForm comp;
    comp.id = "composite";
    comp.subject = Subject::map;
    for (const auto& part : c.composite_of) {
      if (!comp.text.empty()) comp.text += " and ";
      comp.text += lifting_characterization(part).forms.front().text;
    }
    forms.push_back(comp);
  }
  for (const auto& f : forms) {
    FormReport fr;
    fr.id = f.id;
    fr.text = f.text;
    fr.class_expr = f.class_expr;
    if (f.kind == FormKind::orthogonal && !f.class_expr.empty()) {
      const auto& ce = ev.evaluator(f);
      fr.bounds_chain = ce.bounds_chain();
      fr.caveat = ce.caveat();
    }
    r.forms.push_back(std::move(fr));
  }

  auto record = [&](std::size_t k, bool direct, const FormOutcome& out, const std::string& expr,
                    const CanonicalKey& key) {
    if (out.holds) ++r.forms[k].lifting_holds;
    if (out.holds != direct) {
      r.forms[k].mismatches.push_back({expr, key, direct, out.holds, out.counterexample});
    }
  };

  if (c.is_map_predicate) {
    const auto pred = *map_predicate_named(c.predicate);
    const Census& census = shared_census(bound, true);
    const bool final_reading = pred == MapPredicate::final_topology;
    if (final_reading) r.extension_of = "quotient";
    for (std::size_t m = 0; m < census.morphisms.size(); ++m) {
      const Map& f = census.morphisms[m];
      const auto props = classify_map(f);
      const bool direct = props[pred];
      ++r.instances_checked;
      if (direct) ++r.direct_holds;
      const std::string expr = render(f);
      for (std::size_t k = 0; k < forms.size(); ++k) {
        FormOutcome out = forms[k].id == "composite" ? lifting_verdict(ev, c, f)
                                                     : ev.on_map(forms[k], f);
        record(k, direct, out, expr, census.morphism_keys[m]);
        if (final_reading && k == 0 && out.holds && !props[MapPredicate::quotient]) {
          r.extension.push_back(expr);
        }
      }
    }
  } else {
    const auto pred = *space_predicate_named(c.predicate);
    const Census& census = shared_census(bound, false);
    for (std::size_t s = 0; s < census.spaces.size(); ++s) {
      const Space& x = census.spaces[s];
      const bool direct = classify_space(x)[pred];
      ++r.instances_checked;
      if (direct) ++r.direct_holds;
      const std::string expr = render(x);
      for (std::size_t k = 0; k < forms.size(); ++k) {
        record(k, direct, ev.on_space(forms[k], x), expr, census.space_keys[s]);
      }
    }
  }
  return r;
}

inline VerificationReport verify_correspondence(std::string_view name, std::size_t bound) {
  FormEvaluator ev;
  return verify_correspondence(name, bound, ev);
}

}  // namespace fintop
