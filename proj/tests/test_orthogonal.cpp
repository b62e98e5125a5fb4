#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fintop/fintop.hpp"
#include "oracles.hpp"

using namespace fintop;

namespace {

std::set<CanonicalKey> keys_of(const std::vector<Map>& maps) {
  std::set<CanonicalKey> out;
  for (const Map& m : maps) out.insert(canonical_form(m));
  return out;
}

std::set<CanonicalKey> census_where(std::size_t bound, MapPredicate p) {
  std::set<CanonicalKey> out;
  for (const Map& m : shared_census(bound, true).morphisms) {
    if (holds(m, p)) out.insert(canonical_form(m));
  }
  return out;
}

}  // namespace

TEST(Census, SpaceCounts) {
  EXPECT_EQ(enumerate_spaces(1).size(), 2U);
  EXPECT_EQ(enumerate_spaces(2).size(), 5U);
  EXPECT_EQ(enumerate_spaces(3).size(), 14U);
  EXPECT_EQ(enumerate_spaces(4).size(), 47U);
  EXPECT_THROW(enumerate_spaces(8), InputError);
}

TEST(Census, LabeledCountsMatchMatrixFilter) {
  for (std::size_t n = 0; n <= 4; ++n) {
    EXPECT_EQ(labeled_topology_count(n), oracle::all_preorders(n).size()) << n;
  }
  EXPECT_EQ(labeled_topology_count(5), 6942U);
}

TEST(Census, OrbitSumsRecoverLabeledCounts) {
  for (std::size_t n = 0; n <= 5; ++n) {
    std::size_t sum = 0;
    for (const Space& x : spaces_of_size(n)) sum += oracle::orbit_size(x);
    EXPECT_EQ(sum, labeled_topology_count(n)) << n;
  }
}

TEST(Census, RepresentativesAreDistinctAndSorted) {
  const Census& c = shared_census(4, true);
  EXPECT_TRUE(std::is_sorted(c.space_keys.begin(), c.space_keys.end()));
  EXPECT_EQ(std::set<CanonicalKey>(c.space_keys.begin(), c.space_keys.end()).size(), c.spaces.size());
  EXPECT_EQ(std::set<CanonicalKey>(c.morphism_keys.begin(), c.morphism_keys.end()).size(),
            c.morphisms.size());
  for (std::size_t k = 0; k < c.spaces.size(); ++k) {
    EXPECT_EQ(canonical_form(c.spaces[k]), c.space_keys[k]);
  }
}

TEST(Census, MapClassesMatchPermutationSearch) {
  const Census& c = shared_census(2, true);
  std::vector<Map> all;
  for (const Space& x : c.spaces) {
    for (const Space& y : c.spaces) {
      for (const Map& m : enumerate_maps(x, y)) all.push_back(m);
    }
  }
  // Greedy partition of all maps into isomorphism classes by the oracle.
  std::vector<Map> classes;
  for (const Map& m : all) {
    const bool seen = std::any_of(classes.begin(), classes.end(),
                                  [&](const Map& r) { return oracle::isomorphic(m, r); });
    if (!seen) classes.push_back(m);
  }
  EXPECT_EQ(classes.size(), c.morphisms.size());
  for (const Map& m : all) EXPECT_TRUE(c.locate(m)) << render(m);
}

TEST(Census, SoundRelationsAndMaps) {
  const Census& c = shared_census(3, true);
  for (const Map& m : c.morphisms) {
    EXPECT_TRUE(oracle::monotone(m.dom(), m.cod(), m.assignment()));
  }
}

TEST(EnumerateMaps, Examples) {
  EXPECT_EQ(enumerate_maps(parse_space("{o}"), parse_space("{o->c}")).size(), 2U);
  EXPECT_EQ(enumerate_maps(parse_space("{a,b}"), parse_space("{a,b}")).size(), 4U);
  const auto m = enumerate_maps(parse_space("{a->b}"), parse_space("{a,b}"));
  ASSERT_EQ(m.size(), 2U);
  for (const Map& f : m) EXPECT_EQ(f(0), f(1));
}

TEST(FiniteOrthogonal, Surjections) {
  const auto cls = finite_orthogonal({parse_map("{}-->{o}")}, Side::right, 2);
  EXPECT_EQ(keys_of(cls), census_where(2, MapPredicate::surjective));
}

TEST(FiniteOrthogonal, DenseImage) {
  const auto cls = finite_orthogonal({parse_map("{c}-->{o->c}")}, Side::left, 2);
  EXPECT_EQ(keys_of(cls), census_where(2, MapPredicate::dense_image));
}

TEST(FiniteOrthogonal, Injections) {
  const auto cls = finite_orthogonal({parse_map("{a<->b}-->{a=b}")}, Side::left, 2);
  EXPECT_EQ(keys_of(cls), census_where(2, MapPredicate::injective));
}

TEST(FiniteOrthogonal, SurjectionsAtBoundThree) {
  const auto cls = finite_orthogonal({parse_map("{}-->{o}")}, Side::right, 3);
  EXPECT_EQ(keys_of(cls), census_where(3, MapPredicate::surjective));
}

TEST(FiniteOrthogonal, BoundGuard) {
  EXPECT_THROW(finite_orthogonal({parse_map("{}-->{o}")}, Side::right, 7), InputError);
}

TEST(ClassEvaluator, SingleStepMatchesFiniteOrthogonal) {
  const ClassEvaluator ev(parse_class_expr("{ {c}-->{o->c} }^l"), 2);
  EXPECT_FALSE(ev.truncated());
  EXPECT_FALSE(ev.caveat());
  EXPECT_EQ(keys_of(ev.members(2)), census_where(2, MapPredicate::dense_image));
}

TEST(ClassEvaluator, IteratedCarriesBoundsAndCaveat) {
  const ClassEvaluator ev(parse_class_expr("{ {o}-->{o->c} }^r_{<3}^lr"), 2);
  EXPECT_EQ(ev.bounds_chain(), (std::vector<std::size_t>{2, 2}));
  ASSERT_TRUE(ev.caveat());
  EXPECT_NE(ev.caveat()->find("not guaranteed"), std::string::npos);

  const ClassEvaluator one(parse_class_expr("{ {}-->{o} }^rl"), 3);
  EXPECT_EQ(one.bounds_chain(), std::vector<std::size_t>{3});
  EXPECT_NE(one.caveat()->find("contains"), std::string::npos);
}

TEST(ClassEvaluator, TruncatedClassContainsTrueClass) {
  // With one truncated step the computed class only grows with the bound.
  const auto coarse = keys_of(ClassEvaluator(parse_class_expr("{ {}-->{o} }^rl"), 1).members(2));
  const auto fine = keys_of(ClassEvaluator(parse_class_expr("{ {}-->{o} }^rl"), 2).members(2));
  for (const auto& k : fine) EXPECT_TRUE(coarse.contains(k));
}

TEST(Verify, Examples) {
  EXPECT_TRUE(verify_correspondence("surjective", 3).passed());
  EXPECT_TRUE(verify_correspondence("extremally_disconnected", 4).passed());
  const auto fin = verify_correspondence("final_topology", 3);
  EXPECT_TRUE(fin.passed());
  EXPECT_EQ(fin.extension_of, "quotient");
  for (const auto& e : fin.extension) {
    const Map f = parse_map(e);
    EXPECT_TRUE(direct::final_topology(f));
    EXPECT_FALSE(direct::surjective(f));
  }
  EXPECT_FALSE(fin.extension.empty());
  EXPECT_THROW(verify_correspondence("compact", 3), InputError);
}

TEST(Verify, InstanceCountsMatchCensus) {
  EXPECT_EQ(verify_correspondence("injective", 2).instances_checked,
            shared_census(2, true).morphisms.size());
  EXPECT_EQ(verify_correspondence("T0", 3).instances_checked, shared_census(3, false).spaces.size());
  const auto vac = verify_correspondence("surjective", 0);
  EXPECT_EQ(vac.instances_checked, 1U);
  EXPECT_TRUE(vac.passed());
}

TEST(Verify, MismatchesCarryCounterexamples) {
  const auto r = verify_correspondence("empty", 2);
  ASSERT_FALSE(r.passed());
  for (const auto& f : r.forms) {
    for (const auto& m : f.mismatches) {
      if (!m.lifting) {
        ASSERT_TRUE(m.counterexample) << m.expr;
        EXPECT_FALSE(find_lift(*m.counterexample));
      }
    }
  }
}

TEST(FiniteShadows, SurjectiveClosedMapsAreFinal) {
  std::size_t checked = 0;
  for (const Map& f : shared_census(4, true).morphisms) {
    if (direct::surjective(f) && direct::closed(f)) {
      ++checked;
      EXPECT_TRUE(direct::final_topology(f)) << render(f);
    }
  }
  EXPECT_GT(checked, 0U);
}

TEST(FiniteShadows, GluingGeneratorIsProperQuotient) {
  const auto p = classify_map(parse_map("{u->a,b<-v}-->{u->a=b<-v}"));
  EXPECT_TRUE(p[MapPredicate::surjective] && p[MapPredicate::closed] && p[MapPredicate::final_topology]);
}

TEST(Basechange, ClosedInclusions) {
  EXPECT_TRUE(is_closed_point_basechange(parse_map("{b}-->{a->b}")));
  EXPECT_FALSE(is_closed_point_basechange(parse_map("{a}-->{a->b}")));
  EXPECT_TRUE(is_closed_point_basechange(Map::from_empty(parse_space("{a,b}"))));
  EXPECT_FALSE(is_closed_point_basechange(parse_map("{a,b}-->{a=b}")));
}
