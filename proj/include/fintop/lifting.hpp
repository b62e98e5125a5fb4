#pragma once

// Deciding the lifting property i ⧄ p between maps of finite spaces.
//
// For i: A -> B and p: X -> Y, i ⧄ p holds when every commuting square
//
//        f
//    A ------> X
//    |         |
//  i |         | p
//    v         v
//    B ------> Y
//        g
//
// (p∘f = g∘i) has a diagonal h: B -> X with h∘i = f and p∘h = g.
//
// Squares are enumerated as all monotone f, then all monotone g with g on
// the image of i forced by the square. A lift is searched by backtracking
// over the points of B in index order, drawing h(b) from the fibre over g(b)
// and fixing h(i(a)) = f(a) up front. Everything runs in lexicographic order,
// so verdicts, witnesses and counterexamples are deterministic.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintop/space.hpp"

namespace fintop {

/// Calls fn(assign) for every monotone assignment dom -> cod with
/// assign[x] in allowed[x], in lexicographic order. fn returns false to stop.
/// Returns false iff stopped early.
template <typename Fn>
bool for_each_monotone(const Space& dom, const Space& cod, const std::vector<PointSet>& allowed,
                       Fn&& fn) {
  const std::size_t n = dom.size();
  if (allowed.size() != n) throw InputError("constraint list does not match the domain");
  // Earlier points related to point k, in each direction.
  std::vector<PointSet> below(n), above(n);
  for (std::size_t k = 0; k < n; ++k) {
    const PointSet earlier = bit(k) - 1;
    below[k] = dom.neighbourhood_of(k) & earlier & ~bit(k);  // j with leq(j, k)
    above[k] = dom.closure_of(k) & earlier & ~bit(k);        // j with leq(k, j)
  }
  std::vector<std::size_t> assign(n, 0);
  const auto& cdown = cod.closure_rows();
  const auto& cup = cod.neighbourhood_rows();
  std::function<bool(std::size_t)> step = [&](std::size_t k) -> bool {
    if (k == n) return fn(static_cast<const std::vector<std::size_t>&>(assign));
    PointSet cand = allowed[k];
    for_each_point(below[k], [&](std::size_t j) { cand &= cdown[assign[j]]; });
    for_each_point(above[k], [&](std::size_t j) { cand &= cup[assign[j]]; });
    while (cand != 0) {
      assign[k] = static_cast<std::size_t>(std::countr_zero(cand));
      cand &= cand - 1;
      if (!step(k + 1)) return false;
    }
    return true;
  };
  return step(0);
}

template <typename Fn>
bool for_each_monotone(const Space& dom, const Space& cod, Fn&& fn) {
  return for_each_monotone(dom, cod, std::vector<PointSet>(dom.size(), cod.points()),
                           std::forward<Fn>(fn));
}

/// A commuting square with i on the left and p on the right.
struct Square {
  Map i;  // A -> B
  Map p;  // X -> Y
  Map f;  // A -> X
  Map g;  // B -> Y

  Square(Map i_, Map p_, Map f_, Map g_)
      : i(std::move(i_)), p(std::move(p_)), f(std::move(f_)), g(std::move(g_)) {
    if (!(f.dom() == i.dom()) || !(f.cod() == p.dom()) || !(g.dom() == i.cod()) ||
        !(g.cod() == p.cod())) {
      throw InputError("square maps do not fit together");
    }
    for (std::size_t a = 0; a < i.dom().size(); ++a) {
      if (p(f(a)) != g(i(a))) {
        throw InputError("square does not commute at point " + i.dom().label(a).display());
      }
    }
  }

  friend bool operator==(const Square&, const Square&) = default;
};

namespace detail {

inline std::vector<PointSet> fibres(const Map& p) {
  std::vector<PointSet> out(p.cod().size(), 0);
  for (std::size_t x = 0; x < p.dom().size(); ++x) out[p(x)] |= bit(x);
  return out;
}

/// First lift in lexicographic order for the square given by raw f and g.
inline std::optional<std::vector<std::size_t>> lift_raw(const Map& i, const Map& p,
                                                        const std::vector<PointSet>& fib,
                                                        const std::vector<std::size_t>& f,
                                                        const std::vector<std::size_t>& g) {
  const Space& b = i.cod();
  std::vector<PointSet> allowed(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) allowed[k] = fib[g[k]];
  for (std::size_t a = 0; a < f.size(); ++a) allowed[i(a)] &= bit(f[a]);
  for (auto m : allowed) {
    if (m == 0) return std::nullopt;
  }
  std::optional<std::vector<std::size_t>> found;
  for_each_monotone(b, p.dom(), allowed, [&](const std::vector<std::size_t>& h) {
    found = h;
    return false;
  });
  return found;
}

}  // namespace detail

/// Searches a diagonal for the square. Returns the lexicographically first
/// lift, or nothing when no assignment B -> X satisfies both triangles.
inline std::optional<Map> find_lift(const Square& sq) {
  const auto fib = detail::fibres(sq.p);
  auto h = detail::lift_raw(sq.i, sq.p, fib, sq.f.assignment(), sq.g.assignment());
  if (!h) return std::nullopt;
  return Map(sq.i.cod(), sq.p.dom(), std::move(*h));
}

struct LiftWitness {
  Square square;
  Map lift;
};

struct LiftVerdict {
  bool holds = true;
  std::size_t squares_checked = 0;
  /// First square without a lift, in enumeration order.
  std::optional<Square> counterexample;
  /// Every square with its lift; filled only on request.
  std::vector<LiftWitness> witnesses;
};

struct LiftOptions {
  bool collect_witnesses = false;
};

/// Decides i ⧄ p.
inline LiftVerdict check_lifting(const Map& i, const Map& p, LiftOptions opts = {}) {
  LiftVerdict v;
  const Space& a = i.dom();
  const Space& b = i.cod();
  const Space& x = p.dom();
  const Space& y = p.cod();
  const auto fib = detail::fibres(p);
  std::vector<PointSet> g_allowed(b.size());
  for_each_monotone(a, x, [&](const std::vector<std::size_t>& f) {
    for (std::size_t k = 0; k < b.size(); ++k) g_allowed[k] = y.points();
    for (std::size_t s = 0; s < a.size(); ++s) g_allowed[i(s)] &= bit(p(f[s]));
    return for_each_monotone(b, y, g_allowed, [&](const std::vector<std::size_t>& g) {
      ++v.squares_checked;
      auto h = detail::lift_raw(i, p, fib, f, g);
      if (!h) {
        v.holds = false;
        v.counterexample.emplace(i, p, Map(a, x, f), Map(b, y, g));
        return false;
      }
      if (opts.collect_witnesses) {
        v.witnesses.push_back(
            {Square(i, p, Map(a, x, f), Map(b, y, g)), Map(b, x, std::move(*h))});
      }
      return true;
    });
  });
  return v;
}

/// The left-orthogonal reading of check_lifting: does i lift against p?
inline LiftVerdict has_left_lifting(const Map& i, const Map& p, LiftOptions opts = {}) {
  return check_lifting(i, p, opts);
}

/// The right-orthogonal reading: does p lift against i? Same predicate.
inline LiftVerdict has_right_lifting(const Map& p, const Map& i, LiftOptions opts = {}) {
  return check_lifting(i, p, opts);
}

struct ClassVerdict {
  bool holds = true;
  /// Index of the first generator that fails, with its verdict.
  std::optional<std::size_t> failing_generator;
  LiftVerdict verdict;
};

/// side == left: m ⧄ g for every generator g. side == right: g ⧄ m.
template <typename Maps>
ClassVerdict check_against_class(const Map& m, const Maps& gens, Side side) {
  ClassVerdict out;
  std::size_t k = 0;
  for (const Map& g : gens) {
    auto v = side == Side::left ? check_lifting(m, g) : check_lifting(g, m);
    if (!v.holds) {
      out.holds = false;
      out.failing_generator = k;
      out.verdict = std::move(v);
      return out;
    }
    out.verdict.squares_checked += v.squares_checked;
    ++k;
  }
  return out;
}

}  // namespace fintop
