#pragma once

// Enumeration of finite spaces and monotone maps up to isomorphism.
//
// Every space on n points arises from one on n-1 points by adding a point z
// whose strict closure D is a closed set and whose strict upper set U is an
// open set, with every point of U below every point of D. Extending one
// representative per class on n-1 points in all such ways and deduplicating
// by canonical key yields one representative per class on n points.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fintop/canonical.hpp"
#include "fintop/lifting.hpp"
#include "fintop/space.hpp"

namespace fintop {

inline constexpr std::size_t kMaxCensusSpaceBound = 7;
inline constexpr std::size_t kMaxCensusMapBound = 6;

namespace detail {

/// Calls fn(extended) for every one-point extension of x. The new point is
/// appended last.
template <typename Fn>
void for_each_extension(const Space& x, Fn&& fn) {
  const std::size_t n = x.size();
  const auto closed = closed_sets(x);
  const auto opens = open_sets(x);
  for (PointSet d : closed) {
    for (PointSet u : opens) {
      bool ok = true;
      for_each_point(u, [&](std::size_t p) { ok = ok && (d & ~x.closure_of(p)) == 0; });
      if (!ok) continue;
      std::vector<PointSet> rows(x.closure_rows());
      for_each_point(u, [&](std::size_t p) { rows[p] |= bit(n); });
      rows.push_back(d | bit(n));
      fn(std::move(rows));
    }
  }
}

inline std::vector<PointLabel> letter_labels(std::size_t n) {
  std::vector<PointLabel> out;
  for (std::size_t k = 0; k < n; ++k) out.emplace_back(std::string(1, static_cast<char>('a' + k)));
  return out;
}

inline std::size_t count_labeled(const Space& x, std::size_t remaining) {
  if (remaining == 0) return 1;
  std::size_t total = 0;
  auto labels = letter_labels(x.size() + 1);
  for_each_extension(x, [&](std::vector<PointSet> rows) {
    total += count_labeled(Space(labels, std::move(rows)), remaining - 1);
  });
  return total;
}

}  // namespace detail

/// Number of topologies on a labeled n-point set.
inline std::size_t labeled_topology_count(std::size_t n) {
  if (n > kMaxCensusSpaceBound) throw InputError("labeled count is limited to 7 points");
  return detail::count_labeled(Space(), n);
}

/// One representative per homeomorphism class on exactly n points, points
/// in canonical order and labelled a, b, c, ...; sorted by canonical key.
inline std::vector<Space> spaces_of_size(std::size_t n) {
  if (n > kMaxCensusSpaceBound) throw InputError("space enumeration is limited to 7 points");
  std::vector<Space> level{Space()};
  for (std::size_t k = 1; k <= n; ++k) {
    std::map<CanonicalKey, Space> next;
    const auto labels = detail::letter_labels(k);
    for (const Space& x : level) {
      detail::for_each_extension(x, [&](std::vector<PointSet> rows) {
        Space y(labels, std::move(rows));
        auto lab = canonical_labeling(y);
        if (next.contains(lab.key)) return;
        Space c = canonical_space(y, lab);
        next.emplace(std::move(lab.key), Space(labels, c.closure_rows()));
      });
    }
    level.clear();
    for (auto& [key, s] : next) level.push_back(std::move(s));
  }
  return level;
}

/// Representatives of every class with at most n points, sorted by key
/// (hence by point count first).
inline std::vector<Space> enumerate_spaces(std::size_t n) {
  if (n > kMaxCensusSpaceBound) throw InputError("space enumeration is limited to 7 points");
  std::vector<Space> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto level = spaces_of_size(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

/// All monotone maps x -> y in lexicographic order of assignments.
inline std::vector<Map> enumerate_maps(const Space& x, const Space& y) {
  std::vector<Map> out;
  for_each_monotone(x, y, [&](const std::vector<std::size_t>& a) {
    out.emplace_back(x, y, a);
    return true;
  });
  return out;
}

/// Deduplicated spaces and maps up to a point bound.
struct Census {
  std::size_t bound = 0;
  std::vector<Space> spaces;
  std::vector<CanonicalKey> space_keys;
  std::vector<CanonicalLabeling> labelings;
  /// Empty unless built with maps.
  std::vector<Map> morphisms;
  std::vector<CanonicalKey> morphism_keys;
  bool has_morphisms = false;

  /// Index of the census space isomorphic to x.
  std::optional<std::size_t> locate(const Space& x) const {
    const auto key = canonical_form(x);
    auto it = std::lower_bound(space_keys.begin(), space_keys.end(), key);
    if (it == space_keys.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - space_keys.begin());
  }

  /// Index of the census morphism isomorphic to f.
  std::optional<std::size_t> locate(const Map& f) const {
    auto it = morphism_index_.find(canonical_form(f));
    if (it == morphism_index_.end()) return std::nullopt;
    return it->second;
  }

  static Census build(std::size_t bound, bool with_maps) {
    if (bound > kMaxCensusSpaceBound) throw InputError("census bound is limited to 7 points");
    if (with_maps && bound > kMaxCensusMapBound) {
      throw InputError("map census bound is limited to 6 points");
    }
    Census c;
    c.bound = bound;
    c.spaces = enumerate_spaces(bound);
    for (const auto& s : c.spaces) {
      c.labelings.push_back(canonical_labeling(s));
      c.space_keys.push_back(c.labelings.back().key);
    }
    if (!with_maps) return c;
    c.has_morphisms = true;
    std::map<CanonicalKey, Map> found;
    for (std::size_t i = 0; i < c.spaces.size(); ++i) {
      for (std::size_t j = 0; j < c.spaces.size(); ++j) {
        for_each_monotone(c.spaces[i], c.spaces[j], [&](const std::vector<std::size_t>& a) {
          Map m(c.spaces[i], c.spaces[j], a);
          auto key = canonical_form(m, c.labelings[i], c.labelings[j]);
          found.try_emplace(std::move(key), std::move(m));
          return true;
        });
      }
    }
    for (auto& [key, m] : found) {
      c.morphism_index_.emplace(key, c.morphisms.size());
      c.morphism_keys.push_back(key);
      c.morphisms.push_back(std::move(m));
    }
    return c;
  }

 private:
  std::map<CanonicalKey, std::size_t> morphism_index_;
};

/// Process-wide census, built once per (bound, with_maps) and shared.
inline const Census& shared_census(std::size_t bound, bool with_maps) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, bool>, std::unique_ptr<const Census>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{bound, with_maps}];
  if (!slot) slot = std::make_unique<const Census>(Census::build(bound, with_maps));
  return *slot;
}

}  // namespace fintop
