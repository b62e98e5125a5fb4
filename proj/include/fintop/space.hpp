#pragma once

// Finite topological spaces stored as specialization preorders, and the
// continuous (= monotone) maps between them.
//
// Orientation: leq(x, y) holds iff y lies in the closure of {x}. A subset is
// closed iff it is down-closed along leq, and open iff its complement is
// closed. In the space written {a->b}, the point a is open and b is closed.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fintop {

/// Raised on malformed arguments: out-of-range points, mismatched domains,
/// non-monotone assignments and the like.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which side of a lifting problem a map sits on.
enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// A subset of the points of one space, as a bit mask.
using PointSet = std::uint64_t;

inline constexpr std::size_t kMaxPoints = 64;

constexpr PointSet bit(std::size_t i) { return PointSet{1} << i; }

constexpr PointSet all_points(std::size_t n) {
  return n >= kMaxPoints ? ~PointSet{0} : bit(n) - 1;
}

constexpr bool contains(PointSet s, std::size_t i) { return (s >> i) & 1U; }

constexpr std::size_t count(PointSet s) {
  return static_cast<std::size_t>(std::popcount(s));
}

/// Calls fn(i) for every i in s, in ascending order.
template <typename Fn>
void for_each_point(PointSet s, Fn&& fn) {
  while (s != 0) {
    const auto i = static_cast<std::size_t>(std::countr_zero(s));
    fn(i);
    s &= s - 1;
  }
}

/// The labels carried by one point. A point produced by gluing (`a=b`)
/// carries every label glued into it.
struct PointLabel {
  std::vector<std::string> tokens;

  PointLabel() = default;
  explicit PointLabel(std::string token) : tokens{std::move(token)} {}
  explicit PointLabel(std::vector<std::string> ts) : tokens(std::move(ts)) {}

  bool has(const std::string& token) const {
    return std::find(tokens.begin(), tokens.end(), token) != tokens.end();
  }

  /// Tokens joined with '=', the way a merged point is written.
  std::string display() const {
    std::string out;
    for (const auto& t : tokens) {
      if (!out.empty()) out += '=';
      out += t;
    }
    return out;
  }

  friend bool operator==(const PointLabel&, const PointLabel&) = default;
};

/// A finite topological space. Immutable; copies share storage.
class Space {
 public:
  /// The empty space.
  Space() : data_(empty_data()) {}

  /// Builds a space from per-point closure rows: row[x] is the closure of
  /// {x}. Throws InputError unless the rows describe a reflexive and
  /// transitive relation and the labels are pairwise disjoint.
  Space(std::vector<PointLabel> labels, std::vector<PointSet> closure_rows) {
    const std::size_t n = labels.size();
    if (n > kMaxPoints) {
      throw InputError("a space has at most " + std::to_string(kMaxPoints) + " points");
    }
    if (closure_rows.size() != n) {
      throw InputError("closure rows do not match the number of points");
    }
    const PointSet universe = all_points(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (labels[x].tokens.empty()) {
        throw InputError("point " + std::to_string(x) + " has no label");
      }
      if ((closure_rows[x] & ~universe) != 0) {
        throw InputError("closure row " + std::to_string(x) + " names a point out of range");
      }
      if (!contains(closure_rows[x], x)) {
        throw InputError("relation is not reflexive at point " + std::to_string(x));
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for_each_point(closure_rows[x], [&](std::size_t y) {
        if ((closure_rows[y] & ~closure_rows[x]) != 0) {
          throw InputError("relation is not transitive at points " + std::to_string(x) +
                           " and " + std::to_string(y));
        }
      });
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        for (const auto& t : labels[x].tokens) {
          if (labels[y].has(t)) {
            throw InputError("label '" + t + "' names two distinct points");
          }
        }
      }
    }
    auto d = std::make_shared<Data>();
    d->labels = std::move(labels);
    d->down = std::move(closure_rows);
    d->up.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      for_each_point(d->down[x], [&](std::size_t y) { d->up[y] |= bit(x); });
    }
    data_ = std::move(d);
  }

  /// Builds the smallest preorder containing the given pairs (x, y), each
  /// meaning y is in the closure of x.
  static Space from_relation(std::vector<PointLabel> labels,
                             const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    const std::size_t n = labels.size();
    if (n > kMaxPoints) {
      throw InputError("a space has at most " + std::to_string(kMaxPoints) + " points");
    }
    std::vector<PointSet> rows(n);
    for (std::size_t x = 0; x < n; ++x) rows[x] = bit(x);
    for (const auto& [x, y] : pairs) {
      if (x >= n || y >= n) throw InputError("relation names a point out of range");
      rows[x] |= bit(y);
    }
    // Warshall on bit rows.
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t x = 0; x < n; ++x) {
        if (contains(rows[x], k)) rows[x] |= rows[k];
      }
    }
    return Space(std::move(labels), std::move(rows));
  }

  /// Discrete space on the given labels.
  static Space discrete(const std::vector<std::string>& names) {
    std::vector<PointLabel> labels;
    for (const auto& n : names) labels.emplace_back(n);
    return from_relation(std::move(labels), {});
  }

  std::size_t size() const { return data_->labels.size(); }
  bool empty() const { return size() == 0; }
  PointSet points() const { return all_points(size()); }

  const PointLabel& label(std::size_t x) const { return data_->labels.at(x); }
  const std::vector<PointLabel>& labels() const { return data_->labels; }

  /// Closure of the single point x.
  PointSet closure_of(std::size_t x) const { return data_->down.at(x); }
  /// Smallest open set containing x: the points whose closure contains x.
  PointSet neighbourhood_of(std::size_t x) const { return data_->up.at(x); }

  bool leq(std::size_t x, std::size_t y) const { return contains(data_->down.at(x), y); }

  const std::vector<PointSet>& closure_rows() const { return data_->down; }
  const std::vector<PointSet>& neighbourhood_rows() const { return data_->up; }

  std::optional<std::size_t> find(const std::string& token) const {
    for (std::size_t x = 0; x < size(); ++x) {
      if (data_->labels[x].has(token)) return x;
    }
    return std::nullopt;
  }

  friend bool operator==(const Space& a, const Space& b) {
    return a.data_ == b.data_ ||
           (a.data_->labels == b.data_->labels && a.data_->down == b.data_->down);
  }

 private:
  struct Data {
    std::vector<PointLabel> labels;
    std::vector<PointSet> down;
    std::vector<PointSet> up;
  };

  static std::shared_ptr<const Data> empty_data() {
    static const auto empty = std::make_shared<const Data>();
    return empty;
  }

  std::shared_ptr<const Data> data_;
};

inline void check_subset(const Space& x, PointSet s) {
  if ((s & ~x.points()) != 0) {
    throw InputError("subset names a point outside the space");
  }
}

/// Points lying in the closure of some point of s.
inline PointSet closure(const Space& x, PointSet s) {
  check_subset(x, s);
  PointSet out = 0;
  for_each_point(s, [&](std::size_t p) { out |= x.closure_of(p); });
  return out;
}

/// Largest open subset of s.
inline PointSet interior(const Space& x, PointSet s) {
  check_subset(x, s);
  return x.points() & ~closure(x, x.points() & ~s);
}

inline bool is_closed(const Space& x, PointSet s) { return closure(x, s) == s; }

inline bool is_open(const Space& x, PointSet s) {
  check_subset(x, s);
  return is_closed(x, x.points() & ~s);
}

struct SubsetStatus {
  bool open = false;
  bool closed = false;
  bool clopen = false;
  bool dense = false;

  friend bool operator==(const SubsetStatus&, const SubsetStatus&) = default;
};

inline SubsetStatus subset_status(const Space& x, PointSet s) {
  SubsetStatus st;
  st.closed = is_closed(x, s);
  st.open = is_open(x, s);
  st.clopen = st.open && st.closed;
  st.dense = closure(x, s) == x.points();
  return st;
}

/// All open subsets, in increasing mask order.
inline std::vector<PointSet> open_sets(const Space& x) {
  std::vector<PointSet> out;
  const PointSet n = x.points();
  for (PointSet s = 0;; s = (s - n) & n) {  // subsets of n in increasing order
    if (is_open(x, s)) out.push_back(s);
    if (s == n) break;
  }
  return out;
}

inline std::vector<PointSet> closed_sets(const Space& x) {
  std::vector<PointSet> out;
  const PointSet n = x.points();
  for (PointSet s = 0;; s = (s - n) & n) {
    if (is_closed(x, s)) out.push_back(s);
    if (s == n) break;
  }
  return out;
}

/// A monotone map between finite spaces. Immutable.
class Map {
 public:
  /// The unique map from the empty space to the empty space.
  Map() = default;

  /// assign[x] is the image of domain point x. Throws InputError on a
  /// non-monotone or out-of-range assignment; the message names the
  /// violating pair.
  Map(Space dom, Space cod, std::vector<std::size_t> assign)
      : dom_(std::move(dom)), cod_(std::move(cod)), assign_(std::move(assign)) {
    if (assign_.size() != dom_.size()) {
      throw InputError("assignment length does not match the domain");
    }
    for (std::size_t x = 0; x < assign_.size(); ++x) {
      if (assign_[x] >= cod_.size()) {
        throw InputError("point " + std::to_string(x) + " is sent outside the codomain");
      }
    }
    for (std::size_t x = 0; x < assign_.size(); ++x) {
      for_each_point(dom_.closure_of(x), [&](std::size_t y) {
        if (!cod_.leq(assign_[x], assign_[y])) {
          throw InputError("map is not monotone: " + dom_.label(x).display() + " -> " +
                           dom_.label(y).display() + " is sent to " +
                           cod_.label(assign_[x]).display() + ", " +
                           cod_.label(assign_[y]).display());
        }
      });
    }
  }

  static Map identity(const Space& x) {
    std::vector<std::size_t> a(x.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
    return Map(x, x, std::move(a));
  }

  static Map from_empty(const Space& x) { return Map(Space(), x, {}); }

  /// The map to the one-point space labelled `o`.
  static Map to_point(const Space& x) {
    return Map(x, Space::discrete({"o"}), std::vector<std::size_t>(x.size(), 0));
  }

  const Space& dom() const { return dom_; }
  const Space& cod() const { return cod_; }
  const std::vector<std::size_t>& assignment() const { return assign_; }
  std::size_t operator()(std::size_t x) const { return assign_.at(x); }

  PointSet image(PointSet s) const {
    check_subset(dom_, s);
    PointSet out = 0;
    for_each_point(s, [&](std::size_t x) { out |= bit(assign_[x]); });
    return out;
  }
  PointSet image() const { return image(dom_.points()); }

  PointSet preimage(PointSet t) const {
    check_subset(cod_, t);
    PointSet out = 0;
    for (std::size_t x = 0; x < assign_.size(); ++x) {
      if (contains(t, assign_[x])) out |= bit(x);
    }
    return out;
  }

  friend bool operator==(const Map&, const Map&) = default;

 private:
  Space dom_;
  Space cod_;
  std::vector<std::size_t> assign_;
};

/// `f` followed by `g`, i.e. g∘f.
inline Map compose(const Map& f, const Map& g) {
  if (!(f.cod() == g.dom())) {
    throw InputError("cannot compose: codomain of the first map is not the domain of the second");
  }
  std::vector<std::size_t> a(f.dom().size());
  for (std::size_t x = 0; x < a.size(); ++x) a[x] = g(f(x));
  return Map(f.dom(), g.cod(), std::move(a));
}

struct Product {
  Space space;
  Map first;
  Map second;
};

inline std::string product_token(const PointLabel& a, const PointLabel& b, const std::string& sep) {
  return a.display() + sep + b.display();
}

/// Product with its two projections. Point (x, y) sits at index
/// x * |Y| + y and is labelled `x*y` (separator configurable).
inline Product product(const Space& x, const Space& y, const std::string& sep = "*") {
  const std::size_t n = x.size() * y.size();
  if (n > kMaxPoints) throw InputError("product has too many points");
  std::vector<PointLabel> labels;
  std::vector<PointSet> rows(n, 0);
  std::vector<std::size_t> p1(n), p2(n);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      const std::size_t k = i * y.size() + j;
      labels.emplace_back(product_token(x.label(i), y.label(j), sep));
      p1[k] = i;
      p2[k] = j;
      for (std::size_t i2 = 0; i2 < x.size(); ++i2) {
        if (!x.leq(i, i2)) continue;
        for (std::size_t j2 = 0; j2 < y.size(); ++j2) {
          if (y.leq(j, j2)) rows[k] |= bit(i2 * y.size() + j2);
        }
      }
    }
  }
  Space s(std::move(labels), std::move(rows));
  return {s, Map(s, x, std::move(p1)), Map(s, y, std::move(p2))};
}

struct Pullback {
  Space space;
  Map first;   // to dom(f)
  Map second;  // to dom(g)
};

/// Fibre product of f: X -> Z and g: Y -> Z: the subspace of X×Y on the
/// pairs with f(x) = g(y), in lexicographic pair order.
inline Pullback pullback(const Map& f, const Map& g, const std::string& sep = "*") {
  if (!(f.cod() == g.cod())) {
    throw InputError("pullback legs have different codomains");
  }
  const Space& x = f.dom();
  const Space& y = g.dom();
  std::vector<std::pair<std::size_t, std::size_t>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (f(i) == g(j)) pts.emplace_back(i, j);
    }
  }
  if (pts.size() > kMaxPoints) throw InputError("pullback has too many points");
  std::vector<PointLabel> labels;
  std::vector<PointSet> rows(pts.size(), 0);
  std::vector<std::size_t> p1, p2;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto [i, j] = pts[k];
    labels.emplace_back(product_token(x.label(i), y.label(j), sep));
    p1.push_back(i);
    p2.push_back(j);
    for (std::size_t k2 = 0; k2 < pts.size(); ++k2) {
      if (x.leq(i, pts[k2].first) && y.leq(j, pts[k2].second)) rows[k] |= bit(k2);
    }
  }
  Space s(std::move(labels), std::move(rows));
  return {s, Map(s, x, std::move(p1)), Map(s, y, std::move(p2))};
}

}  // namespace fintop
