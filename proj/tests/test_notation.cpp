#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "fintop/fintop.hpp"

using namespace fintop;

namespace {

std::size_t strict_relations(const Space& x) {
  std::size_t n = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < x.size(); ++b) n += (a != b && x.leq(a, b)) ? 1 : 0;
  }
  return n;
}

std::size_t error_offset(const std::string& text) {
  try {
    if (text.find("-->") != std::string::npos) {
      parse_map(text);
    } else {
      parse_space(text);
    }
  } catch (const ParseError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "no parse error for " << text;
  return 0;
}

}  // namespace

TEST(ParseSpace, Examples) {
  const Space s = parse_space("{a->b}");
  ASSERT_EQ(s.size(), 2U);
  EXPECT_TRUE(s.leq(*s.find("a"), *s.find("b")));
  EXPECT_FALSE(s.leq(*s.find("b"), *s.find("a")));

  const Space ad = parse_space("{a<->b}");
  EXPECT_TRUE(ad.leq(0, 1) && ad.leq(1, 0));

  const Space v = parse_space("{u->a,b<-v}");
  EXPECT_EQ(v.size(), 4U);
  EXPECT_TRUE(v.leq(*v.find("u"), *v.find("a")));
  EXPECT_TRUE(v.leq(*v.find("v"), *v.find("b")));
  EXPECT_EQ(strict_relations(v), 2U);
}

TEST(ParseSpace, DisplayChain) {
  const std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> chain = {
      {"{a,b}", {2, 0}}, {"{a->b}", {2, 1}}, {"{a<->b}", {2, 2}}, {"{a=b}", {1, 0}}};
  for (const auto& [text, counts] : chain) {
    const Space x = parse_space(text);
    EXPECT_EQ(x.size(), counts.first) << text;
    EXPECT_EQ(strict_relations(x), counts.second) << text;
  }
}

TEST(ParseSpace, GluingAndTransitivity) {
  const Space x = parse_space("{a<->b=c=d}");
  EXPECT_EQ(x.size(), 2U);
  const std::size_t p = *x.find("b");
  EXPECT_EQ(*x.find("c"), p);
  EXPECT_EQ(*x.find("d"), p);
  EXPECT_EQ(x.label(p).tokens.size(), 3U);

  const Space t = parse_space("{a->b->c}");
  EXPECT_TRUE(t.leq(*t.find("a"), *t.find("c")));
  EXPECT_EQ(parse_space("{ }").size(), 0U);
  EXPECT_EQ(parse_space(" { a -> b } ").size(), 2U);
}

TEST(ParseSpace, Errors) {
  EXPECT_EQ(error_offset("{a->"), 3U);
  EXPECT_THROW(parse_space("{a->b"), ParseError);
  EXPECT_THROW(parse_space("a->b}"), ParseError);
  EXPECT_THROW(parse_space("{a->->b}"), ParseError);
  EXPECT_THROW(parse_space("{1a}"), ParseError);
  EXPECT_THROW(parse_space("{a,}"), ParseError);
  EXPECT_THROW(parse_space("{a->b, a=b}"), ParseError);  // relation inside a glued point
  EXPECT_THROW(parse_space("{a}{b}"), ParseError);
  EXPECT_EQ(error_offset("{a=>b}"), 3U);
}

TEST(ParseSpace, NeverCrashesOnGarbage) {
  const std::string alphabet = "{}<->=,abc' \t-";
  std::mt19937 rng(3);
  for (int k = 0; k < 5000; ++k) {
    std::string s;
    const int len = static_cast<int>(rng() % 14);
    for (int j = 0; j < len; ++j) s += alphabet[rng() % alphabet.size()];
    try {
      parse_space(s);
      parse_map(s);
    } catch (const ParseError& e) {
      EXPECT_LE(e.offset(), s.size());
    } catch (const InputError&) {
    }
    try {
      parse_class_expr(s);
    } catch (const InputError&) {
    }
  }
}

TEST(ParseMap, Examples) {
  const Map f = parse_map("{u->a,b<-v}-->{u->a=b<-v}");
  EXPECT_EQ(f.dom().size(), 4U);
  EXPECT_EQ(f.cod().size(), 3U);
  EXPECT_EQ(f(*f.dom().find("a")), f(*f.dom().find("b")));
  EXPECT_TRUE(direct::surjective(f));

  const Map g = parse_map("{o}-->{o->c}");
  EXPECT_EQ(g(0), *g.cod().find("o"));

  const Map h = parse_map("{a<->b}-->{a=b}");
  EXPECT_EQ(h.cod().size(), 1U);
}

TEST(ParseMap, Errors) {
  EXPECT_THROW(parse_map("{a,b}-->{a}"), ParseError);         // unmatched label
  EXPECT_THROW(parse_map("{a->b}-->{a,b}"), ParseError);      // not monotone
  EXPECT_THROW(parse_map("{a}-->{b}-->{c}"), ParseError);
  EXPECT_THROW(parse_map("{a}"), ParseError);
  try {
    parse_map("{a->b}-->{b->a}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(e.reason().find("a"), std::string::npos);
    EXPECT_NE(e.reason().find("b"), std::string::npos);
  }
}

TEST(ParseClassExpr, Examples) {
  const ClassExpr a = parse_class_expr("{ {}-->{o} }^r");
  ASSERT_EQ(a.generators.size(), 1U);
  EXPECT_EQ(a.generators[0].dom().size(), 0U);
  EXPECT_EQ(a.ops(), "r");

  const ClassExpr b = parse_class_expr("{ {o}-->{o->c} }^r_{<5}^lr");
  ASSERT_EQ(b.steps.size(), 3U);
  EXPECT_EQ(b.ops(), "rlr");
  EXPECT_EQ(b.steps[0].below, std::optional<std::size_t>(5));
  EXPECT_FALSE(b.steps[1].below);
  EXPECT_FALSE(b.steps[2].below);

  const ClassExpr c = parse_class_expr("{ {a<->b}-->{a=b}, {o->c}-->{o=c} }^lr");
  EXPECT_EQ(c.generators.size(), 2U);
  EXPECT_EQ(c.ops(), "lr");

  EXPECT_EQ(parse_class_expr("{ {}-->{o} }^{rl}").ops(), "rl");
}

TEST(ParseClassExpr, Errors) {
  EXPECT_THROW(parse_class_expr("{ {}-->{o} }^x"), ParseError);
  EXPECT_THROW(parse_class_expr("{ {}-->{o} "), ParseError);
  EXPECT_TRUE(parse_class_expr("{ {}-->{o} }").steps.empty());
  EXPECT_THROW(parse_class_expr("{ {}-->{o} }_{<3}"), ParseError);
  EXPECT_THROW(parse_class_expr("{ {}-->{o} }^r_{<}"), ParseError);
}

TEST(Render, Examples) {
  EXPECT_EQ(render(Space()), "{}");
  const Space s = parse_space("{o->c}");
  EXPECT_EQ(render(s), "{o->c}");
  const Space p = product(s, s).space;
  EXPECT_EQ(canonical_form(parse_space(render(p))), canonical_form(p));
  EXPECT_EQ(render(parse_class_expr("{ {o}-->{o->c} }^r_{<5}^lr")), "{ {o}-->{o->c} }^r_{<5}^lr");
}

TEST(Render, RoundTripSpaces) {
  for (const Space& x : enumerate_spaces(4)) {
    const Space back = parse_space(render(x));
    EXPECT_EQ(canonical_form(back), canonical_form(x)) << render(x);
  }
}

TEST(Render, RoundTripMaps) {
  for (const Map& f : shared_census(3, true).morphisms) {
    const Map back = parse_map(render(f));
    EXPECT_EQ(canonical_form(back), canonical_form(f)) << render(f);
  }
}

TEST(Render, RoundTripGluedLabels) {
  for (const char* text : {"{a<->b=c=d}", "{v=a=w->b}", "{x->y, z<->w=q}"}) {
    const Space x = parse_space(text);
    EXPECT_EQ(canonical_form(parse_space(render(x))), canonical_form(x)) << text;
  }
}

TEST(Corpus, EveryExpressionParsesAndRoundTrips) {
  for (const auto& text : corpus::kSpaces) {
    const Space x = parse_space(text);
    EXPECT_EQ(canonical_form(parse_space(render(x))), canonical_form(x)) << text;
  }
  for (const auto& text : corpus::kMaps) {
    const Map f = parse_map(text);
    EXPECT_EQ(canonical_form(parse_map(render(f))), canonical_form(f)) << text;
  }
  for (const auto& text : corpus::kClasses) {
    const ClassExpr c = parse_class_expr(text);
    const ClassExpr back = parse_class_expr(render(c));
    EXPECT_EQ(back.ops(), c.ops()) << text;
    EXPECT_EQ(back.steps, c.steps) << text;
    ASSERT_EQ(back.generators.size(), c.generators.size());
    for (std::size_t k = 0; k < c.generators.size(); ++k) {
      EXPECT_EQ(canonical_form(back.generators[k]), canonical_form(c.generators[k]));
    }
  }
  EXPECT_GE(corpus::kSpaces.size() + corpus::kMaps.size() + corpus::kClasses.size(), 25U);
}

TEST(Corpus, ShorthandIsRejected) {
  for (const auto& text : corpus::kShorthand) EXPECT_THROW(parse_map(text), ParseError) << text;
}
