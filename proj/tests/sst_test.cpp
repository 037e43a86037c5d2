#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

namespace xduce {
namespace {

using testing::Rng;

TEST(SstRun, PrefixesExample) {
  Sst t = prefixes_sst(corpus::digits());
  EXPECT_EQ(t(Word::parse("1 2 3 4")).str(), "_4 3 2 1 _3 2 1 _2 1 _1");
  EXPECT_EQ(t(Word{}).str(), "");
  EXPECT_EQ(t(Word::parse("2")).str(), "_2");
  EXPECT_THROW(t(Word::parse("5")), AlphabetMismatch);
}

TEST(SstRun, IteratedReverse) {
  Sst t = corpus::idreverse();
  EXPECT_EQ(t(Word::parse("a b # c d")).str(), "b a # d c");
  EXPECT_EQ(t(Word::parse("# #")).str(), "# #");
  EXPECT_EQ(t(Word::parse("a b c")).str(), "c b a");
}

TEST(SstRun, SequentialMachinesAgreeWithTheirSstForm) {
  auto fig2 = corpus::fig2();
  EXPECT_EQ(fig2(Word::parse("a c b c")).str(), "a a b b");
  EXPECT_EQ(fig2(Word::parse("c")).str(), "a");
  Sst t = sequential_to_sst(fig2);
  for (const Word& w : words_up_to(fig2.input(), 5)) EXPECT_EQ(t(w), fig2(w)) << w.str();
  EXPECT_TRUE(check_copyless(t));
}

TEST(SstBuilder, UnmentionedRegistersKeepTheirValue) {
  Sst t = SstBuilder(corpus::ab(), corpus::ab(), Alphabet{"X", "Y"}, {"q"}, "q")
              .init("Y", "b b")
              .on("q", "a", "q", {{"X", "X a"}})
              .on("q", "b", "q")
              .out("q", "X Y")
              .build();
  EXPECT_EQ(t(Word::parse("a b a")).str(), "a a b b");
}

TEST(SstBuilder, RejectsIncompleteOrInvalidMachines) {
  SstBuilder b(corpus::ab(), corpus::ab(), Alphabet{"X"}, {"q"}, "q");
  b.on("q", "a", "q");
  EXPECT_THROW(b.build(), ValidationError);
  EXPECT_THROW(b.on("q", "a", "q", {{"Z", "a"}}), ValidationError);
  EXPECT_THROW(b.on("q", "a", "nowhere"), ValidationError);
  EXPECT_THROW(SstBuilder(corpus::ab(), corpus::ab(), Alphabet{"a"}, {"q"}, "q").on_all("q", "q").build(),
               ValidationError);
}

TEST(Copyless, PrefixesCopiesX) {
  Sst t = prefixes_sst(corpus::digits());
  EXPECT_FALSE(check_copyless(t));
  EXPECT_EQ(copied_registers(t), std::vector<Symbol>{Symbol("X")});
  EXPECT_TRUE(check_copyless(corpus::idreverse()));
  EXPECT_TRUE(copied_registers(corpus::idreverse()).empty());
}

TEST(Layering, PrefixesIsOneLayered) {
  Sst t = prefixes_sst(corpus::digits());
  EXPECT_FALSE(infer_layering(t, 0).has_value());
  auto p = infer_layering(t, 1);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->str(), "{X}|{Y}");
  EXPECT_TRUE(check_layered(t, *p));
  EXPECT_FALSE(check_layered(t, LayerPartition{{{Symbol("Y")}, {Symbol("X")}}}));
  EXPECT_THROW(check_layered(t, LayerPartition{{{Symbol("X")}}}), ValidationError);
}

TEST(Layering, CopylessMeansZeroLayered) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    Sst t = testing::random_sst(rng, corpus::ab(), corpus::ab(), 2, 3, testing::pick(rng, 2) == 0);
    EXPECT_EQ(infer_layering(t, 0).has_value(), check_copyless(t));
    EXPECT_EQ(check_layered(t, single_block(*t.registers())), check_copyless(t));
  }
}

TEST(Layering, SearchBoundIsEnforced) {
  std::vector<std::string> names;
  for (int i = 0; i < 21; ++i) names.push_back("R" + std::to_string(i));
  Alphabet regs = Alphabet::from_names(names);
  EXPECT_THROW(infer_layering_images(regs, {}, 1), SizeError);
  EXPECT_TRUE(infer_layering_images(regs, {}, 0).has_value());
}

TEST(TransitionMonoid, ImageComputesTheRun) {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    Sst t = testing::random_sst(rng, corpus::ab(), corpus::ab(), 3, 2, false);
    Word w = testing::random_word(rng, t.input(), 6);
    auto e = transition_image(t, w);
    const std::size_t q = e.next(t.initial());
    auto values = e.payload(t.initial()).dagger(t.initial_values());
    EXPECT_EQ(RegAssignment::substitute(t.final_output(q), values), t(w));
    EXPECT_EQ(q, t.state_after(w, t.initial()));
  }
}

TEST(TransitionMonoid, ImageIsMultiplicative) {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    Sst t = testing::random_sst(rng, corpus::ab(), corpus::ab(), 3, 2, true);
    Word u = testing::random_word(rng, t.input(), 4), v = testing::random_word(rng, t.input(), 4);
    EXPECT_EQ(transition_image(t, u + v), wreath_compose(transition_image(t, u), transition_image(t, v)));
    EXPECT_EQ(erased_transition_image(t, u + v),
              wreath_compose(erased_transition_image(t, u), erased_transition_image(t, v)));
    EXPECT_EQ(erased_transition_image(t, u), erase(transition_image(t, u)));
  }
}

TEST(Combinators, ConditionalAndConcat) {
  Rng rng(24);
  Dfa even = corpus::even_length(corpus::ab());
  for (int i = 0; i < 50; ++i) {
    Sst f = testing::random_sst(rng, corpus::ab(), corpus::ab(), 2, 2, true);
    Sst g = testing::random_sst(rng, corpus::ab(), corpus::ab(), 3, 1, true);
    Sst c = conditional_combine(f, g, even);
    Sst k = concat_combine(f, g);
    EXPECT_TRUE(check_copyless(c));
    for (const Word& w : words_up_to(corpus::ab(), 5)) {
      ASSERT_EQ(c(w), even.accepts(w) ? f(w) : g(w));
      ASSERT_EQ(k(w), f(w) + g(w));
    }
  }
  EXPECT_THROW(concat_combine(identity_sst(corpus::ab()), identity_sst(corpus::digits())), AlphabetMismatch);
}

TEST(Copyless, OutputIsLinear) {
  Rng rng(25);
  for (int i = 0; i < 100; ++i) {
    Sst t = testing::random_sst(rng, corpus::ab(), corpus::ab(), 2, 3, true);
    const std::size_t c = std::max<std::size_t>(emission_constant(t), 1);
    for (int j = 0; j < 20; ++j) {
      Word w = testing::random_word(rng, t.input(), 12);
      EXPECT_LE(t(w).size(), c * w.size() + c);
    }
  }
}

/// Oracle for the extractor: the j-th label of r in psi(s)(q) when phi(s)(q) = alpha.
Word expected_label(const Sst& t, std::size_t q, std::size_t r, const Shape& alpha, std::size_t j, const Word& s) {
  auto e = transition_image(t, s);
  if (erase(e.payload(q)) != alpha) return Word{};
  return shape_label_split(e.payload(q)).labels[r][j];
}

void check_extractor(const Sst& t) {
  std::set<Shape> shapes;
  for (const Word& s : words_up_to(t.input(), 3))
    for (std::size_t q = 0; q < t.num_states(); ++q) shapes.insert(erase(transition_image(t, s).payload(q)));
  std::size_t checked = 0;
  for (std::size_t q = 0; q < t.num_states(); ++q)
    for (const Shape& alpha : shapes)
      for (std::size_t r = 0; r < t.num_registers(); ++r)
        for (std::size_t j = 0; j <= alpha.image(r).size(); ++j) {
          Sst x = shape_label_extractor(t, q, (*t.registers())[r], alpha, j);
          ASSERT_TRUE(check_copyless(x));
          for (const Word& s : words_up_to(t.input(), 5)) {
            ASSERT_EQ(x(s), expected_label(t, q, r, alpha, j, s)) << s.str();
            ++checked;
          }
        }
  EXPECT_GT(checked, 0u);
}

TEST(ShapeLabelExtractor, MatchesSplitOfTheTransitionImage) {
  for (const auto& m : corpus::analysis_machines())
    if (m.name == "swap" || m.name == "idreverse") check_extractor(m.machine);
}

TEST(ShapeLabelExtractor, RejectsCopyingMachines) {
  Sst t = prefixes_sst(corpus::ab());
  EXPECT_THROW(shape_label_extractor(t, 0, Symbol("X"), Shape::identity(t.registers()), 0), ValidationError);
}

}  // namespace
}  // namespace xduce
