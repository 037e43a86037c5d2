#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

namespace xduce {
namespace {

struct Fixture {
  AlphabetRef regs = make_alphabet_ref(Alphabet{"X", "Y", "Z"});
  AlphabetRef out = make_alphabet_ref(Alphabet{"a", "b"});
};

TEST(Assignments, FromWordsAndDagger) {
  Fixture f;
  auto a = RegAssignment::from_words(f.regs, f.out,
                                     {{Symbol("X"), Word::parse("a X")},
                                      {Symbol("Y"), Word::parse("Y b X")},
                                      {Symbol("Z"), Word{}}});
  auto v = a.dagger({Word::parse("b"), Word::parse("a"), Word::parse("a a")});
  EXPECT_EQ(v[0].str(), "a b");
  EXPECT_EQ(v[1].str(), "a b b");
  EXPECT_TRUE(v[2].empty());
  EXPECT_FALSE(is_copyless(a));
  EXPECT_EQ(a.image_word(1).str(), "Y b X");
}

TEST(Assignments, RejectsMalformedInput) {
  Fixture f;
  EXPECT_THROW(RegAssignment::from_words(f.regs, f.out, {{Symbol("X"), Word::parse("c")}}), ValidationError);
  EXPECT_THROW(RegAssignment::from_words(f.regs, f.out, {{Symbol("X"), Word::parse("a")}}), ValidationError);
  EXPECT_THROW(RegAssignment(make_alphabet_ref(Alphabet{"a"}), f.out, {{}}), ValidationError);
  auto other = make_alphabet_ref(Alphabet{"X", "Y"});
  EXPECT_THROW(compose_assignments(RegAssignment::identity(f.regs, f.out), RegAssignment::identity(other, f.out)),
               AlphabetMismatch);
}

TEST(Assignments, IdentityIsUnit) {
  Fixture f;
  testing::Rng rng(11);
  auto id = RegAssignment::identity(f.regs, f.out);
  for (int i = 0; i < 200; ++i) {
    auto a = testing::random_assignment(rng, f.regs, f.out);
    EXPECT_EQ(compose_assignments(id, a), a);
    EXPECT_EQ(compose_assignments(a, id), a);
  }
}

TEST(MonoidLaws, CompositionIsAssociative) {
  Fixture f;
  testing::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    auto a = testing::random_assignment(rng, f.regs, f.out);
    auto b = testing::random_assignment(rng, f.regs, f.out);
    auto c = testing::random_assignment(rng, f.regs, f.out);
    ASSERT_EQ(compose_assignments(compose_assignments(a, b), c), compose_assignments(a, compose_assignments(b, c)));
  }
}

TEST(MonoidLaws, DaggerReversesComposition) {
  Fixture f;
  testing::Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    auto a = testing::random_assignment(rng, f.regs, f.out);
    auto b = testing::random_assignment(rng, f.regs, f.out);
    auto v = testing::random_values(rng, *f.regs, *f.out);
    ASSERT_EQ(compose_assignments(a, b).dagger(v), b.dagger(a.dagger(v)));
  }
}

TEST(MonoidLaws, EraseIsAMorphism) {
  Fixture f;
  testing::Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    auto a = testing::random_assignment(rng, f.regs, f.out);
    auto b = testing::random_assignment(rng, f.regs, f.out);
    ASSERT_EQ(erase(compose_assignments(a, b)), compose_shapes(erase(a), erase(b)));
  }
  EXPECT_EQ(erase(RegAssignment::identity(f.regs, f.out)), Shape::identity(f.regs));
}

TEST(MonoidLaws, CopylessClosedUnderComposition) {
  Fixture f;
  testing::Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    auto a = testing::random_copyless(rng, f.regs, f.out);
    auto b = testing::random_copyless(rng, f.regs, f.out);
    ASSERT_TRUE(is_copyless(a));
    ASSERT_TRUE(is_copyless(compose_assignments(a, b)));
  }
}

TEST(MonoidLaws, WreathProductIsAssociative) {
  Fixture f;
  testing::Rng rng(5);
  constexpr std::size_t kStates = 3;
  auto random_element = [&] {
    WreathElement<RegAssignment> e;
    for (std::size_t q = 0; q < kStates; ++q)
      e.map.emplace_back(testing::pick(rng, kStates), testing::random_assignment(rng, f.regs, f.out, 2));
    return e;
  };
  for (int i = 0; i < 1000; ++i) {
    auto u = random_element(), v = random_element(), w = random_element();
    ASSERT_EQ(wreath_compose(wreath_compose(u, v), w), wreath_compose(u, wreath_compose(v, w)));
  }
  auto unit = WreathElement<RegAssignment>::identity(kStates, RegAssignment::identity(f.regs, f.out));
  auto u = random_element();
  EXPECT_EQ(wreath_compose(unit, u), u);
  EXPECT_EQ(wreath_compose(u, unit), u);
}

TEST(Shapes, CopylessEnumerationCounts) {
  // Arrangements of k labelled registers into n ordered lists: 1, 2, 11, 106 for n = k = 0..3.
  const std::vector<std::size_t> expected{1, 2, 11, 106};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    std::vector<std::string> names;
    for (std::size_t r = 0; r < n; ++r) names.push_back("R" + std::to_string(r));
    auto shapes = enumerate_copyless_shapes(make_alphabet_ref(Alphabet::from_names(names)));
    EXPECT_EQ(shapes.size(), expected[n]) << n;
    std::set<Shape> distinct(shapes.begin(), shapes.end());
    EXPECT_EQ(distinct.size(), shapes.size());
    for (const Shape& s : shapes) EXPECT_TRUE(s.copyless());
  }
  auto five = make_alphabet_ref(Alphabet{"A", "B", "C", "D", "E"});
  EXPECT_THROW(enumerate_copyless_shapes(five), SizeError);
}

TEST(Shapes, LabelSplitRoundTrips) {
  Fixture f;
  testing::Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    auto a = testing::random_copyless(rng, f.regs, f.out);
    ShapeLabels sl = shape_label_split(a);
    EXPECT_EQ(sl.shape, erase(a));
    for (std::size_t r = 0; r < a.size(); ++r) EXPECT_EQ(sl.labels[r].size(), sl.shape.image(r).size() + 1);
    EXPECT_EQ(shape_label_join(sl), a);
  }
  auto copying = RegAssignment::from_words(f.regs, f.out,
                                           {{Symbol("X"), Word::parse("X X")},
                                            {Symbol("Y"), Word{}},
                                            {Symbol("Z"), Word{}}});
  EXPECT_THROW(shape_label_split(copying), ValidationError);
}

TEST(Idempotents, PowerOfAShape) {
  auto regs = make_alphabet_ref(Alphabet{"X", "Y", "Z"});
  // A 3-cycle: the third power is the identity.
  Shape cycle(regs, {{1}, {2}, {0}});
  EXPECT_EQ(idempotent_power(cycle, compose_shapes), 3u);
  Shape drop(regs, {{}, {0}, {1}});
  EXPECT_EQ(idempotent_power(drop, compose_shapes), 3u);
  EXPECT_EQ(monoid_power(cycle, 3, Shape::identity(regs), compose_shapes), Shape::identity(regs));
}

}  // namespace
}  // namespace xduce
