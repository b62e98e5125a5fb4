#pragma once

// Isomorphism-invariant keys for finite spaces and maps.
//
// Spaces are canonicalized by individualization-refinement: points are
// coloured by an equitable refinement of the specialization preorder, ties
// are broken by individualizing each point of the first non-singleton cell in
// turn, and the leaf ordering with the smallest adjacency code wins. Every
// ordering reaching the smallest code is kept; they form one coset of the
// automorphism group, which is what map keys minimize over.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "fintop/space.hpp"

namespace fintop {

/// Two spaces (or two maps) have equal keys iff they are isomorphic. Keys
/// of spaces sort by point count first.
struct CanonicalKey {
  std::string bytes;

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
      out += digits[c >> 4];
      out += digits[c & 15];
    }
    return out;
  }

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalLabeling {
  CanonicalKey key;
  /// Each ordering lists the points of the space by canonical position.
  std::vector<std::vector<std::size_t>> orderings;
};

namespace detail {

/// Refines a colouring until it is equitable. Colours are canonical ranks
/// 0..k-1, derived only from the preorder and the incoming ranks.
inline std::vector<std::size_t> refine(const Space& x, std::vector<std::size_t> colour) {
  const std::size_t n = x.size();
  {
    auto values = colour;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (auto& c : colour) {
      c = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), c) - values.begin());
    }
  }
  std::size_t ncolours = n == 0 ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
  for (;;) {
    std::vector<std::vector<std::size_t>> sig(n);
    for (std::size_t p = 0; p < n; ++p) {
      auto& s = sig[p];
      s.assign(1 + 2 * ncolours, 0);
      s[0] = colour[p];
      for_each_point(x.closure_of(p) & ~bit(p), [&](std::size_t q) { ++s[1 + colour[q]]; });
      for_each_point(x.neighbourhood_of(p) & ~bit(p),
                     [&](std::size_t q) { ++s[1 + ncolours + colour[q]]; });
    }
    auto distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::size_t> next(n);
    for (std::size_t p = 0; p < n; ++p) {
      next[p] = static_cast<std::size_t>(
          std::lower_bound(distinct.begin(), distinct.end(), sig[p]) - distinct.begin());
    }
    const bool stable = distinct.size() == ncolours;
    colour = std::move(next);
    ncolours = distinct.size();
    if (stable) return colour;
  }
}

inline std::string space_code(const Space& x, const std::vector<std::size_t>& order) {
  const std::size_t n = x.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
  std::string code;
  code += static_cast<char>(n);
  const std::size_t row_bytes = (n + 7) / 8;
  for (std::size_t k = 0; k < n; ++k) {
    std::string row(row_bytes, '\0');
    for_each_point(x.closure_of(order[k]), [&](std::size_t q) {
      const std::size_t j = pos[q];
      row[j / 8] = static_cast<char>(static_cast<unsigned char>(row[j / 8]) | (0x80U >> (j % 8)));
    });
    code += row;
  }
  return code;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const Space& x) : x_(x) {}

  CanonicalLabeling run() {
    std::vector<std::size_t> colour(x_.size(), 0);
    search(refine(x_, std::move(colour)));
    CanonicalLabeling out;
    if (x_.empty()) {
      out.key.bytes = space_code(x_, {});
      out.orderings.push_back({});
    } else {
      out.key.bytes = std::move(best_);
      out.orderings = std::move(orderings_);
    }
    return out;
  }

 private:
  void search(const std::vector<std::size_t>& colour) {
    const std::size_t n = x_.size();
    if (n == 0) return;
    std::vector<std::size_t> cell_size(n, 0);
    for (auto c : colour) ++cell_size[c];
    std::size_t target = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    }
    if (target == n) {
      std::vector<std::size_t> order(n);
      for (std::size_t p = 0; p < n; ++p) order[colour[p]] = p;
      std::string code = space_code(x_, order);
      if (orderings_.empty() || code < best_) {
        best_ = std::move(code);
        orderings_.clear();
        orderings_.push_back(std::move(order));
      } else if (code == best_) {
        orderings_.push_back(std::move(order));
      }
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (colour[v] != target) continue;
      std::vector<std::size_t> split(n);
      for (std::size_t p = 0; p < n; ++p) {
        split[p] = 2 * colour[p] + ((colour[p] == target && p != v) ? 1 : 0);
      }
      search(refine(x_, std::move(split)));
    }
  }

  const Space& x_;
  std::string best_;
  std::vector<std::vector<std::size_t>> orderings_;
};

}  // namespace detail

inline CanonicalLabeling canonical_labeling(const Space& x) {
  return detail::Canonicalizer(x).run();
}

inline CanonicalKey canonical_form(const Space& x) { return canonical_labeling(x).key; }

/// Key of a map given canonical labelings of its domain and codomain.
inline CanonicalKey canonical_form(const Map& f, const CanonicalLabeling& dom,
                                   const CanonicalLabeling& cod) {
  const std::size_t n = f.dom().size();
  std::string best;
  bool first = true;
  std::vector<std::size_t> cod_pos(f.cod().size());
  std::string code(n, '\0');
  for (const auto& co : cod.orderings) {
    for (std::size_t k = 0; k < co.size(); ++k) cod_pos[co[k]] = k;
    for (const auto& dor : dom.orderings) {
      for (std::size_t k = 0; k < n; ++k) code[k] = static_cast<char>(cod_pos[f(dor[k])]);
      if (first || code < best) {
        best = code;
        first = false;
      }
    }
  }
  CanonicalKey key;
  key.bytes += 'M';
  key.bytes += static_cast<char>(dom.key.bytes.size() >> 8);
  key.bytes += static_cast<char>(dom.key.bytes.size() & 0xff);
  key.bytes += dom.key.bytes;
  key.bytes += cod.key.bytes;
  key.bytes += best;
  return key;
}

inline CanonicalKey canonical_form(const Map& f) {
  return canonical_form(f, canonical_labeling(f.dom()), canonical_labeling(f.cod()));
}

/// The canonical relabelling of x: points reordered by the first canonical
/// ordering, labels kept.
inline Space canonical_space(const Space& x, const CanonicalLabeling& lab) {
  const auto& order = lab.orderings.front();
  std::vector<std::size_t> pos(x.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  std::vector<PointLabel> labels;
  std::vector<PointSet> rows;
  for (std::size_t k = 0; k < order.size(); ++k) {
    labels.push_back(x.label(order[k]));
    PointSet r = 0;
    for_each_point(x.closure_of(order[k]), [&](std::size_t q) { r |= bit(pos[q]); });
    rows.push_back(r);
  }
  return Space(std::move(labels), std::move(rows));
}

inline bool isomorphic(const Space& a, const Space& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

inline bool isomorphic(const Map& f, const Map& g) {
  return canonical_form(f) == canonical_form(g);
}

}  // namespace fintop
