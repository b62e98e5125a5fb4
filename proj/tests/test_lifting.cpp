#include <gtest/gtest.h>

#include "fintop/fintop.hpp"
#include "oracles.hpp"

using namespace fintop;

namespace {

std::vector<Map> maps_up_to(std::size_t n) {
  std::vector<Map> out;
  const auto spaces = enumerate_spaces(n);
  for (const Space& x : spaces) {
    for (const Space& y : spaces) {
      for (const Map& m : enumerate_maps(x, y)) out.push_back(m);
    }
  }
  return out;
}

bool is_valid_lift(const Square& sq, const Map& h) {
  if (!(h.dom() == sq.i.cod()) || !(h.cod() == sq.p.dom())) return false;
  return compose(sq.i, h) == sq.f && compose(h, sq.p) == sq.g;
}

}  // namespace

TEST(FindLift, IdentityAlwaysLifts) {
  const Map p = parse_map("{u->a,b<-v}-->{u->a=b<-v}");
  const Space a = parse_space("{x->y}");
  for (const Map& f : enumerate_maps(a, p.dom())) {
    const Map i = Map::identity(a);
    const Square sq(i, p, f, compose(f, p));
    auto h = find_lift(sq);
    ASSERT_TRUE(h);
    EXPECT_EQ(*h, f);
  }
}

TEST(FindLift, MissingPreimage) {
  const Map i = parse_map("{}-->{o}");
  const Map p = parse_map("{a}-->{a<->b}");
  const Map f = Map::from_empty(p.dom());
  const Map g(i.cod(), p.cod(), {*p.cod().find("b")});
  EXPECT_FALSE(find_lift(Square(i, p, f, g)));
}

TEST(FindLift, ClosedPointOverPoint) {
  const Map i = parse_map("{c}-->{o->c}");
  const Map p = Map::to_point(parse_space("{o->c}"));
  const Map f(i.dom(), p.dom(), {*p.dom().find("c")});
  const Map g(i.cod(), p.cod(), {0, 0});
  auto h = find_lift(Square(i, p, f, g));
  ASSERT_TRUE(h);
  EXPECT_TRUE(is_valid_lift(Square(i, p, f, g), *h));
}

TEST(FindLift, RejectsNonCommutingSquare) {
  const Map i = parse_map("{}-->{o}");
  const Map p = parse_map("{a}-->{a<->b}");
  const Map g(i.cod(), p.cod(), {0});
  const Map wrong(parse_space("{q}"), p.dom(), {0});
  EXPECT_THROW(Square(i, p, wrong, g), InputError);
  const Map f(parse_space("{c}"), parse_space("{x,y}"), {0});
  const Map i2 = parse_map("{c}-->{o->c}");
  const Map p2(parse_space("{x,y}"), parse_space("{s,t}"), {0, 1});
  const Map g2(i2.cod(), p2.cod(), {1, 1});
  EXPECT_THROW(Square(i2, p2, f, g2), InputError);
}

TEST(CheckLifting, Examples) {
  EXPECT_TRUE(check_lifting(parse_map("{}-->{o}"), parse_map("{a,b}-->{a=b}")).holds);

  const auto v = check_lifting(parse_map("{}-->{x->a<-y}"), parse_map("{u->a,b<-v}-->{u->a=b<-v}"));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.counterexample);
  EXPECT_FALSE(direct::extremally_disconnected(parse_space("{x->a<-y}")));

  EXPECT_TRUE(check_lifting(parse_map("{}-->{o->c}"), parse_map("{u->a,b<-v}-->{u->a=b<-v}")).holds);
}

TEST(CheckLifting, CounterexampleCommutesAndHasNoLift) {
  const auto v = check_lifting(parse_map("{}-->{x->a<-y}"), parse_map("{u->a,b<-v}-->{u->a=b<-v}"));
  ASSERT_TRUE(v.counterexample);
  const Square& sq = *v.counterexample;
  EXPECT_EQ(compose(sq.f, sq.p), compose(sq.i, sq.g));
  EXPECT_FALSE(find_lift(sq));
}

TEST(CheckLifting, WitnessesAreSound) {
  const auto maps = maps_up_to(2);
  for (const Map& i : maps) {
    for (const Map& p : maps) {
      const auto v = check_lifting(i, p, {.collect_witnesses = true});
      for (const auto& w : v.witnesses) EXPECT_TRUE(is_valid_lift(w.square, w.lift));
      if (v.holds) EXPECT_EQ(v.witnesses.size(), v.squares_checked);
    }
  }
}

TEST(CheckLifting, AgreesWithNaiveEnumerator) {
  const auto maps = maps_up_to(2);
  std::size_t holds = 0, pairs = 0;
  for (const Map& i : maps) {
    for (const Map& p : maps) {
      const bool fast = check_lifting(i, p).holds;
      EXPECT_EQ(fast, oracle::lifts(i, p)) << render(i) << " /_ " << render(p);
      holds += fast ? 1 : 0;
      ++pairs;
    }
  }
  EXPECT_GT(holds, 0U);
  EXPECT_LT(holds, pairs);
}

TEST(CheckLifting, LeftAndRightReadingsAgree) {
  const auto maps = maps_up_to(2);
  for (const Map& i : maps) {
    for (const Map& p : maps) {
      EXPECT_EQ(has_left_lifting(i, p).holds, has_right_lifting(p, i).holds);
    }
  }
}

TEST(CheckLifting, Deterministic) {
  const Map i = parse_map("{}-->{x->a<-y}");
  const Map p = parse_map("{u->a,b<-v}-->{u->a=b<-v}");
  const auto a = check_lifting(i, p);
  const auto b = check_lifting(i, p);
  EXPECT_EQ(a.squares_checked, b.squares_checked);
  ASSERT_TRUE(a.counterexample && b.counterexample);
  EXPECT_EQ(*a.counterexample, *b.counterexample);
}

TEST(CheckAgainstClass, Examples) {
  const std::vector<Map> point{parse_map("{}-->{o}")};
  EXPECT_TRUE(check_against_class(parse_map("{a,b}-->{a=b}"), point, Side::right).holds);

  const auto v = check_against_class(parse_map("{a}-->{a<->b}"), point, Side::right);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.failing_generator, std::optional<std::size_t>(0));

  const Map c = parse_map("{c}-->{o->c}");
  const auto self = check_against_class(c, std::vector<Map>{c}, Side::left);
  EXPECT_EQ(self.holds, oracle::lifts(c, c));
}

TEST(CheckAgainstClass, ReportsFirstFailingGenerator) {
  const std::vector<Map> gens{parse_map("{a,b}-->{a=b}"), parse_map("{}-->{o}")};
  const auto v = check_against_class(parse_map("{a}-->{a<->b}"), gens, Side::right);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.failing_generator, std::optional<std::size_t>(1));
}

TEST(ForEachMonotone, CountsMatchFilteredFunctions) {
  const auto spaces = enumerate_spaces(3);
  for (const Space& x : spaces) {
    for (const Space& y : spaces) {
      std::size_t expected = 0;
      for (const auto& a : oracle::all_functions(x.size(), y.size())) {
        expected += oracle::monotone(x, y, a) ? 1 : 0;
      }
      EXPECT_EQ(enumerate_maps(x, y).size(), expected);
    }
  }
}
