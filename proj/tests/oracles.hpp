#pragma once

// Independent reference implementations used only by the tests. They share
// nothing with the library beyond the Space and Map containers and avoid
// every pruning trick the library uses.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fintop/space.hpp"

namespace oracle {

using fintop::Map;
using fintop::Space;

/// All functions dom -> cod as index vectors, |cod|^|dom| of them.
inline std::vector<std::vector<std::size_t>> all_functions(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return {{}};
  if (m == 0) return {};
  std::vector<std::size_t> cur(n, 0);
  for (;;) {
    out.push_back(cur);
    std::size_t k = 0;
    while (k < n && ++cur[k] == m) cur[k++] = 0;
    if (k == n) break;
  }
  return out;
}

inline bool monotone(const Space& x, const Space& y, const std::vector<std::size_t>& a) {
  for (std::size_t p = 0; p < x.size(); ++p) {
    for (std::size_t q = 0; q < x.size(); ++q) {
      if (x.leq(p, q) && !y.leq(a[p], a[q])) return false;
    }
  }
  return true;
}

/// i ⧄ p by trying every function for f, g and h.
inline bool lifts(const Map& i, const Map& p) {
  const Space &a = i.dom(), &b = i.cod(), &x = p.dom(), &y = p.cod();
  const auto hs = all_functions(b.size(), x.size());
  for (const auto& f : all_functions(a.size(), x.size())) {
    if (!monotone(a, x, f)) continue;
    for (const auto& g : all_functions(b.size(), y.size())) {
      if (!monotone(b, y, g)) continue;
      bool commutes = true;
      for (std::size_t s = 0; s < a.size(); ++s) commutes = commutes && p(f[s]) == g[i(s)];
      if (!commutes) continue;
      bool found = false;
      for (const auto& h : hs) {
        if (!monotone(b, x, h)) continue;
        bool ok = true;
        for (std::size_t s = 0; s < a.size(); ++s) ok = ok && h[i(s)] == f[s];
        for (std::size_t t = 0; t < b.size(); ++t) ok = ok && p(h[t]) == g[t];
        if (ok) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

/// Every reflexive transitive relation on n points, as row bitmasks,
/// found by filtering all 2^(n*n) boolean matrices.
inline std::vector<std::vector<std::uint64_t>> all_preorders(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> out;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    auto rel = [&](std::size_t r, std::size_t c) { return (bits >> (r * n + c)) & 1U; };
    bool ok = true;
    for (std::size_t r = 0; r < n && ok; ++r) ok = rel(r, r) != 0;
    for (std::size_t r = 0; r < n && ok; ++r) {
      for (std::size_t s = 0; s < n && ok; ++s) {
        for (std::size_t t = 0; t < n && ok; ++t) {
          if (rel(r, s) && rel(s, t) && !rel(r, t)) ok = false;
        }
      }
    }
    if (!ok) continue;
    std::vector<std::uint64_t> rows(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (rel(r, c)) rows[r] |= std::uint64_t{1} << c;
      }
    }
    out.push_back(rows);
  }
  return out;
}

inline Space space_from_rows(const std::vector<std::uint64_t>& rows) {
  std::vector<fintop::PointLabel> labels;
  for (std::size_t k = 0; k < rows.size(); ++k) labels.emplace_back("p" + std::to_string(k));
  return Space(labels, rows);
}

/// Calls fn(perm) for every permutation of 0..n-1.
template <typename Fn>
bool for_each_permutation(std::size_t n, Fn&& fn) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (fn(perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline bool is_isomorphism(const Space& x, const Space& y, const std::vector<std::size_t>& perm) {
  for (std::size_t p = 0; p < x.size(); ++p) {
    for (std::size_t q = 0; q < x.size(); ++q) {
      if (x.leq(p, q) != y.leq(perm[p], perm[q])) return false;
    }
  }
  return true;
}

inline bool isomorphic(const Space& x, const Space& y) {
  if (x.size() != y.size()) return false;
  return for_each_permutation(x.size(), [&](const auto& perm) { return is_isomorphism(x, y, perm); });
}

/// f ≅ g: homeomorphisms u of domains and v of codomains with v∘f = g∘u.
inline bool isomorphic(const Map& f, const Map& g) {
  if (f.dom().size() != g.dom().size() || f.cod().size() != g.cod().size()) return false;
  return for_each_permutation(f.cod().size(), [&](const auto& v) {
    if (!is_isomorphism(f.cod(), g.cod(), v)) return false;
    return for_each_permutation(f.dom().size(), [&](const auto& u) {
      if (!is_isomorphism(f.dom(), g.dom(), u)) return false;
      for (std::size_t p = 0; p < f.dom().size(); ++p) {
        if (v[f(p)] != g(u[p])) return false;
      }
      return true;
    });
  });
}

/// Number of distinct labeled spaces obtained by permuting the points of x.
inline std::size_t orbit_size(const Space& x) {
  std::size_t automorphisms = 0;
  for_each_permutation(x.size(), [&](const auto& perm) {
    if (is_isomorphism(x, x, perm)) ++automorphisms;
    return false;
  });
  std::size_t fact = 1;
  for (std::size_t k = 2; k <= x.size(); ++k) fact *= k;
  return fact / automorphisms;
}

}  // namespace oracle
