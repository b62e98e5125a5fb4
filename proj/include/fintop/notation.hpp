#pragma once

// Text syntax for finite spaces, maps and orthogonal class expressions.
//
//   space := "{" [chain ("," chain)*] "}"
//   chain := label (rel label)*
//   rel   := "->" | "<-" | "<->" | "="
//   label := [A-Za-z][A-Za-z0-9']*
//   map   := space "-->" space
//   class := "{" [map ("," map)*] "}" step*
//   step  := "^" ops ["_" "{" "<" digits "}"]      ops := [lr]+ or "{" [lr]+ "}"
//
// Whitespace is ignored everywhere. `x->y` puts y in the closure of x,
// `x<-y` the reverse, `x<->y` both, and `x=y` glues the two labels into one
// point. A map sends each domain point to the codomain point carrying the
// same label.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fintop/space.hpp"

namespace fintop {

class ParseError : public InputError {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : InputError("parse error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset),
        reason_(what) {}

  std::size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

/// One orthogonal step: `l` takes the left orthogonal of the current class,
/// `r` the right one. `below` restricts the resulting class to maps between
/// spaces with fewer than that many points.
struct OrthogonalStep {
  Side side = Side::right;
  std::optional<std::size_t> below;

  friend bool operator==(const OrthogonalStep&, const OrthogonalStep&) = default;
};

struct ClassExpr {
  std::vector<Map> generators;
  std::vector<std::string> generator_text;
  std::vector<OrthogonalStep> steps;

  /// Operator string such as "rlr".
  std::string ops() const {
    std::string s;
    for (const auto& st : steps) s += st.side == Side::left ? 'l' : 'r';
    return s;
  }
};

namespace detail {

inline bool is_label_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\'';
}

enum class Rel { to, from, both, same };

struct LabelRef {
  std::string name;
  std::size_t offset;
};

struct RelRef {
  Rel rel;
  std::size_t offset;
  std::size_t lhs;  // index into labels of the chain list
  std::size_t rhs;
};

struct SpaceSyntax {
  std::vector<LabelRef> labels;  // occurrences, in text order
  std::vector<RelRef> rels;
  std::size_t open_offset = 0;
};

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  std::size_t pos() {
    skip_ws();
    return pos_;
  }

  bool lookahead(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!lookahead(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok, const char* what) {
    if (!accept(tok)) fail(std::string("expected ") + what);
  }

  /// Offset reported for a failure at the current position. Running off the
  /// end reports the last byte of input.
  std::size_t error_offset() {
    skip_ws();
    if (pos_ < text_.size()) return pos_;
    std::size_t last = text_.size();
    while (last > 0 && std::isspace(static_cast<unsigned char>(text_[last - 1])) != 0) --last;
    return last == 0 ? 0 : last - 1;
  }

  [[noreturn]] void fail(const std::string& what) {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(error_offset(), what + ", found end of input");
    throw ParseError(pos_, what + ", found '" + std::string(1, text_[pos_]) + "'");
  }

  std::optional<LabelRef> label() {
    skip_ws();
    if (pos_ >= text_.size() || !is_label_start(text_[pos_])) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_label_char(text_[pos_])) ++pos_;
    return LabelRef{std::string(text_.substr(start, pos_ - start)), start};
  }

  std::optional<std::size_t> number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > 1000) throw ParseError(start, "number too large");
      ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return value;
  }

  std::optional<std::pair<Rel, std::size_t>> relation() {
    skip_ws();
    const std::size_t at = pos_;
    // "-->" separates the two sides of a map and is never a relation.
    if (lookahead("-->")) return std::nullopt;
    if (accept("<->")) return std::pair{Rel::both, at};
    if (accept("->")) return std::pair{Rel::to, at};
    if (accept("<-")) return std::pair{Rel::from, at};
    if (accept("=")) return std::pair{Rel::same, at};
    return std::nullopt;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline SpaceSyntax parse_space_syntax(Cursor& cur) {
  SpaceSyntax syn;
  syn.open_offset = cur.pos();
  cur.expect("{", "'{'");
  if (cur.accept("}")) return syn;
  for (;;) {
    auto first = cur.label();
    if (!first) cur.fail("expected a label");
    syn.labels.push_back(*first);
    for (;;) {
      auto rel = cur.relation();
      if (!rel) break;
      auto next = cur.label();
      if (!next) cur.fail("expected a label after relation");
      syn.labels.push_back(*next);
      syn.rels.push_back({rel->first, rel->second, syn.labels.size() - 2, syn.labels.size() - 1});
    }
    if (cur.accept(",")) continue;
    if (cur.accept("}")) break;
    cur.fail("expected ',', '}' or a relation");
  }
  return syn;
}

struct BuiltSpace {
  Space space;
  // First offset at which each token occurs.
  std::map<std::string, std::size_t> first_offset;
};

inline BuiltSpace build_space(const SpaceSyntax& syn) {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  std::map<std::string, std::size_t> first_offset;
  std::vector<std::size_t> occ(syn.labels.size());
  for (std::size_t k = 0; k < syn.labels.size(); ++k) {
    const auto& l = syn.labels[k];
    auto [it, fresh] = index.emplace(l.name, names.size());
    if (fresh) {
      names.push_back(l.name);
      first_offset[l.name] = l.offset;
    }
    occ[k] = it->second;
  }
  std::vector<std::size_t> parent(names.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& r : syn.rels) {
    if (r.rel != Rel::same) continue;
    const auto a = find(occ[r.lhs]);
    const auto b = find(occ[r.rhs]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> point_of(names.size());
  std::map<std::size_t, std::size_t> root_to_point;
  std::vector<PointLabel> labels;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto root = find(i);
    auto [it, fresh] = root_to_point.emplace(root, labels.size());
    if (fresh) labels.emplace_back();
    labels[it->second].tokens.push_back(names[i]);
    point_of[i] = it->second;
  }
  if (labels.size() > kMaxPoints) {
    throw ParseError(syn.open_offset, "too many points");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& r : syn.rels) {
    if (r.rel == Rel::same) continue;
    const auto a = point_of[occ[r.lhs]];
    const auto b = point_of[occ[r.rhs]];
    if (a == b) {
      throw ParseError(r.offset, "relation between '" + syn.labels[r.lhs].name + "' and '" +
                                     syn.labels[r.rhs].name + "', which are glued by '='");
    }
    if (r.rel == Rel::to || r.rel == Rel::both) pairs.emplace_back(a, b);
    if (r.rel == Rel::from || r.rel == Rel::both) pairs.emplace_back(b, a);
  }
  return {Space::from_relation(std::move(labels), pairs), std::move(first_offset)};
}

inline Map build_map(const BuiltSpace& dom, const BuiltSpace& cod, std::size_t arrow_offset) {
  const Space& x = dom.space;
  const Space& y = cod.space;
  std::vector<std::size_t> assign(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    std::optional<std::size_t> target;
    for (const auto& t : x.label(p).tokens) {
      auto q = y.find(t);
      if (!q) {
        throw ParseError(dom.first_offset.at(t),
                         "domain label '" + t + "' does not occur in the codomain");
      }
      if (target && *target != *q) {
        throw ParseError(dom.first_offset.at(t), "labels of the glued point '" +
                                                     x.label(p).display() +
                                                     "' land on different codomain points");
      }
      target = q;
    }
    assign[p] = *target;
  }
  try {
    return Map(x, y, std::move(assign));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(arrow_offset, e.what());
  }
}

inline Map parse_map_at(Cursor& cur) {
  auto dom = build_space(parse_space_syntax(cur));
  const std::size_t arrow = cur.pos();
  cur.expect("-->", "'-->'");
  auto cod = build_space(parse_space_syntax(cur));
  return build_map(dom, cod, arrow);
}

}  // namespace detail

inline Space parse_space(std::string_view text) {
  detail::Cursor cur(text);
  auto built = detail::build_space(detail::parse_space_syntax(cur));
  if (!cur.at_end()) cur.fail("expected end of input");
  return std::move(built.space);
}

inline Map parse_map(std::string_view text) {
  detail::Cursor cur(text);
  auto m = detail::parse_map_at(cur);
  if (!cur.at_end()) cur.fail("expected end of input");
  return m;
}

inline ClassExpr parse_class_expr(std::string_view text) {
  detail::Cursor cur(text);
  ClassExpr out;
  cur.expect("{", "'{' opening the generator list");
  if (!cur.accept("}")) {
    for (;;) {
      const std::size_t start = cur.pos();
      out.generators.push_back(detail::parse_map_at(cur));
      const std::size_t end = cur.pos();
      std::string piece(text.substr(start, end - start));
      while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back())) != 0) {
        piece.pop_back();
      }
      out.generator_text.push_back(std::move(piece));
      if (cur.accept(",")) continue;
      if (cur.accept("}")) break;
      cur.fail("expected ',' or '}' in the generator list");
    }
  }
  while (cur.accept("^")) {
    const bool braced = cur.accept("{");
    const std::size_t at = cur.pos();
    auto ops = cur.label();
    if (!ops) cur.fail("expected orthogonal operators 'l' or 'r'");
    for (std::size_t k = 0; k < ops->name.size(); ++k) {
      const char c = ops->name[k];
      if (c != 'l' && c != 'r') {
        throw ParseError(at + k, std::string("unknown orthogonal operator '") + c + "'");
      }
      out.steps.push_back({c == 'l' ? Side::left : Side::right, std::nullopt});
    }
    if (braced) cur.expect("}", "'}' closing the operators");
    if (cur.accept("_")) {
      cur.expect("{", "'{' opening a size bound");
      cur.expect("<", "'<' in a size bound");
      const std::size_t num_at = cur.pos();
      auto n = cur.number();
      if (!n) cur.fail("expected a point count");
      if (*n == 0) throw ParseError(num_at, "size bound must be positive");
      cur.expect("}", "'}' closing a size bound");
      out.steps.back().below = *n;
    }
  }
  if (!cur.at_end()) cur.fail("expected '^' or end of input");
  return out;
}

// Rendering -----------------------------------------------------------------

namespace detail {

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !is_label_start(s[0])) return false;
  for (char c : s) {
    if (!is_label_char(c)) return false;
  }
  return true;
}

/// Hands out grammar-valid, pairwise distinct labels.
class LabelPool {
 public:
  std::string take(const std::string& wanted) {
    std::string base;
    for (char c : wanted) {
      if (is_label_char(c)) base += c;
    }
    if (!base.empty() && !is_label_start(base[0])) base = "p" + base;
    if (base.empty()) base = "p";
    if (used_.insert(base).second) return base;
    for (std::size_t k = 0;; ++k) {
      std::string cand = base + std::to_string(k);
      if (!is_label_start(cand[0])) cand = "p" + cand;
      if (used_.insert(cand).second) return cand;
    }
  }

  bool reserve(const std::string& name) { return used_.insert(name).second; }

 private:
  std::set<std::string> used_;
};

inline std::string render_with_names(const Space& x,
                                     const std::vector<std::vector<std::string>>& names) {
  const std::size_t n = x.size();
  std::vector<bool> written(n, false);
  // A glued point is spelled out with '=' on first mention only.
  auto point = [&](std::size_t p) {
    if (written[p]) return names[p].front();
    written[p] = true;
    std::string s;
    for (const auto& t : names[p]) {
      if (!s.empty()) s += '=';
      s += t;
    }
    return s;
  };
  // Classes of equivalent points, each represented by its smallest point.
  std::vector<std::size_t> rep(n);
  for (std::size_t p = 0; p < n; ++p) {
    const PointSet same = x.closure_of(p) & x.neighbourhood_of(p);
    rep[p] = static_cast<std::size_t>(std::countr_zero(same));
  }
  // Covering relations between classes.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t c = 0; c < n; ++c) {
    if (rep[c] != c) continue;
    for (std::size_t d = 0; d < n; ++d) {
      if (rep[d] != d || d == c || !x.leq(c, d) || x.leq(d, c)) continue;
      bool covering = true;
      for (std::size_t e = 0; e < n && covering; ++e) {
        if (rep[e] != e || e == c || e == d) continue;
        if (x.leq(c, e) && x.leq(e, d)) covering = false;
      }
      if (covering) edges.emplace_back(c, d);
    }
  }
  // Stitch edges into paths.
  std::vector<bool> used(edges.size(), false);
  std::vector<std::vector<std::size_t>> paths;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    std::vector<std::size_t> path{edges[k].first, edges[k].second};
    for (bool extended = true; extended;) {
      extended = false;
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (!used[j] && edges[j].first == path.back()) {
          used[j] = true;
          path.push_back(edges[j].second);
          extended = true;
          break;
        }
      }
    }
    paths.push_back(std::move(path));
  }
  std::vector<bool> in_path(n, false);
  for (const auto& [c, d] : edges) in_path[c] = in_path[d] = true;

  std::string out = "{";
  bool first = true;
  auto emit = [&](const std::string& s) {
    if (!first) out += ',';
    out += s;
    first = false;
  };
  for (std::size_t p = 0; p < n; ++p) {
    if (rep[p] != p) continue;
    bool has_equiv = false;
    for (std::size_t q = p + 1; q < n; ++q) has_equiv = has_equiv || rep[q] == p;
    if (in_path[p] && !has_equiv) continue;
    std::string chain = point(p);
    for (std::size_t q = p + 1; q < n; ++q) {
      if (rep[q] == p) chain += "<->" + point(q);
    }
    emit(chain);
  }
  for (const auto& path : paths) {
    std::string s;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k != 0) s += "->";
      s += point(path[k]);
    }
    emit(s);
  }
  out += '}';
  return out;
}

}  // namespace detail

inline std::string render(const Space& x) {
  detail::LabelPool pool;
  std::vector<std::vector<std::string>> names(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    for (const auto& t : x.label(p).tokens) names[p].push_back(pool.take(t));
  }
  return detail::render_with_names(x, names);
}

inline std::string render(const Map& f) {
  detail::LabelPool pool;
  const Space& x = f.dom();
  const Space& y = f.cod();
  std::vector<std::vector<std::string>> dom_names(x.size());
  std::vector<std::vector<std::string>> cod_names(y.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    for (const auto& t : x.label(p).tokens) {
      dom_names[p].push_back(pool.take(t));
      cod_names[f(p)].push_back(dom_names[p].back());
    }
  }
  for (std::size_t q = 0; q < y.size(); ++q) {
    if (!cod_names[q].empty()) continue;
    for (const auto& t : y.label(q).tokens) cod_names[q].push_back(pool.take(t));
  }
  return detail::render_with_names(x, dom_names) + "-->" + detail::render_with_names(y, cod_names);
}

inline std::string render(const ClassExpr& c) {
  std::string out = "{ ";
  for (std::size_t k = 0; k < c.generators.size(); ++k) {
    if (k != 0) out += ", ";
    out += k < c.generator_text.size() ? c.generator_text[k] : render(c.generators[k]);
  }
  out += " }";
  std::string group;
  for (const auto& st : c.steps) {
    group += st.side == Side::left ? 'l' : 'r';
    if (st.below) {
      out += "^" + group + "_{<" + std::to_string(*st.below) + "}";
      group.clear();
    }
  }
  if (!group.empty()) out += "^" + group;
  return out;
}

}  // namespace fintop
