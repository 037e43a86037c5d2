#include <gtest/gtest.h>

#include "test_util.hpp"

namespace xduce {
namespace {

Word a_pow(std::size_t n) { return Word{Symbol("a")}.repeated(n); }

TEST(Hdt0lRun, Doubling) {
  Hdt0lSystem s = corpus::doubling();
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(s(a_pow(n)).size(), std::size_t{1} << n);
}

TEST(Hdt0lRun, DescendingBlocks) {
  EXPECT_EQ(corpus::descending_blocks()(a_pow(4)).str(), "b a a a b a a b a b");
  EXPECT_EQ(corpus::descending_blocks()(Word{}).str(), "");
}

TEST(Hdt0lRun, SquareLength) {
  for (std::size_t n = 0; n <= 7; ++n) EXPECT_EQ(corpus::square_length()(a_pow(n)).size(), n * n);
}

TEST(Hdt0lRun, RulesApplyRightToLeft) {
  // h_a appends b, h_b doubles: the last input letter acts first.
  Hdt0lSystem s = Hdt0lBuilder(corpus::ab(), corpus::ab(), Alphabet{"X", "B"}, "X")
                      .rule("a", "X", "X B")
                      .rule("b", "X", "X X")
                      .final("X", "a")
                      .final("B", "b")
                      .build();
  EXPECT_EQ(s(Word::parse("a b")).str(), "a b a b");
  EXPECT_EQ(s(Word::parse("b a")).str(), "a a b");
}

TEST(Hdt0lValidation, RejectsBadMorphisms) {
  Alphabet d{"X"};
  FreeMorphism to_out(d, corpus::ab(), std::vector<Word>{Word::parse("a")});
  EXPECT_THROW(Hdt0lSystem(corpus::unary(), corpus::ab(), d, Word::parse("X"), {to_out}, to_out), ValidationError);
  EXPECT_THROW(Hdt0lSystem(corpus::unary(), corpus::ab(), d, Word::parse("Y"), {FreeMorphism::identity(d)}, to_out),
               AlphabetMismatch);
  EXPECT_THROW(Hdt0lSystem(corpus::ab(), corpus::ab(), d, Word::parse("X"), {FreeMorphism::identity(d)}, to_out),
               ValidationError);
}

void expect_same(const std::function<Word(const Word&)>& f, const std::function<Word(const Word&)>& g,
                 const Alphabet& in, std::size_t len) {
  for (const Word& w : words_up_to(in, len)) ASSERT_EQ(f(w), g(w)) << w.str();
}

TEST(Translation, Hdt0lToSst) {
  for (const Hdt0lSystem& s : {corpus::doubling(), corpus::descending_blocks(), corpus::square_length()}) {
    Sst t = hdt0l_to_sst(s);
    EXPECT_EQ(t.num_states(), 1u);
    expect_same(s, t, s.input(), 6);
  }
}

TEST(Translation, SstToHdt0lBlockCount) {
  Sst id = identity_sst(corpus::ab());
  LayeredHdt0l h0 = sst_to_hdt0l(id, 0);
  EXPECT_EQ(h0.blocks.blocks.size(), 2u);
  EXPECT_TRUE(check_layered_hdt0l(h0.system, h0.blocks));
  expect_same(id, h0.system, id.input(), 5);

  Sst pre = prefixes_sst(corpus::ab());
  LayeredHdt0l h1 = sst_to_hdt0l(pre, 1);
  EXPECT_EQ(h1.blocks.blocks.size(), 3u);
  EXPECT_TRUE(check_layered_hdt0l(h1.system, h1.blocks));
  expect_same(pre, h1.system, pre.input(), 5);

  EXPECT_THROW(sst_to_hdt0l(pre, 0), ValidationError);
}

TEST(Translation, LayeredHdt0lToSstInverts) {
  for (const auto& [t, k] : std::vector<std::pair<Sst, std::size_t>>{
           {identity_sst(corpus::ab()), 0},
           {reverse_sst(corpus::ab()), 0},
           {corpus::idreverse(Alphabet{"a", "#"}), 0},
           {sequential_to_sst(corpus::fig2()), 0},
           {prefixes_sst(corpus::ab()), 1}}) {
    LayeredHdt0l h = sst_to_hdt0l(t, k);
    LayeredSst back = layered_hdt0l_to_sst(h.system, h.blocks);
    EXPECT_EQ(back.blocks.blocks.size(), k + 1);
    EXPECT_TRUE(check_layered(back.machine, back.blocks));
    expect_same(t, back.machine, t.input(), 5);
  }
}

TEST(Translation, StateBoundIsEnforced) {
  LayeredHdt0l h = sst_to_hdt0l(sequential_to_sst(corpus::fig2()), 0);
  EXPECT_THROW(layered_hdt0l_to_sst(h.system, h.blocks, 1), SizeError);
}

TEST(Translation, RandomCopylessRoundTrip) {
  testing::Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    Sst t = testing::random_sst(rng, corpus::ab(), corpus::ab(), 2, 2, true);
    LayeredHdt0l h = sst_to_hdt0l(t, 0);
    expect_same(t, h.system, t.input(), 5);
    LayeredSst back = layered_hdt0l_to_sst(h.system, h.blocks);
    expect_same(t, back.machine, t.input(), 5);
  }
}

TEST(Layering, Hdt0lInference) {
  auto d = infer_layering_hdt0l(corpus::doubling(), 0);
  EXPECT_FALSE(d.has_value());
  EXPECT_FALSE(infer_layering_hdt0l(corpus::doubling(), 3).has_value());
  auto sq = infer_layering_hdt0l(corpus::square_length(), 2);
  ASSERT_TRUE(sq.has_value());
  EXPECT_TRUE(check_layered_hdt0l(corpus::square_length(), *sq));
}

/// Blocks of at most `len` letters, at most `count` of them, joined by sep.
std::vector<Word> separated_words(const Alphabet& a, Symbol sep, std::size_t count, std::size_t len) {
  std::vector<Word> blocks = words_up_to(a, len);
  std::vector<Word> out(blocks);
  std::vector<Word> frontier(blocks);
  for (std::size_t n = 2; n <= count; ++n) {
    std::vector<Word> next;
    for (const Word& u : frontier)
      for (const Word& b : blocks) next.push_back(u + Word{sep} + b);
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

Word blockwise(const Hdt0lSystem& s, Symbol sep, const Word& w) {
  Word out, cur;
  for (Symbol c : w) {
    if (c == sep) {
      out = out + s(cur) + Word{sep};
      cur = Word{};
    } else {
      cur.push_back(c);
    }
  }
  return out + s(cur);
}

TEST(MapHdt0l, MatchesBlockwiseSemantics) {
  const Symbol sep("|");
  for (const Hdt0lSystem& s : {corpus::doubling(), corpus::descending_blocks(), sst_to_hdt0l(prefixes_sst(corpus::ab()), 1).system}) {
    Hdt0lSystem m = map_hdt0l(s, sep);
    for (const Word& w : separated_words(s.input(), sep, 3, 3)) ASSERT_EQ(m(w), blockwise(s, sep, w)) << w.str();
  }
  EXPECT_THROW(map_hdt0l(corpus::doubling(), Symbol("a")), ValidationError);
}

TEST(MapHdt0l, LayeredVariantAddsOneBlock) {
  const Symbol sep("|");
  for (std::size_t k : {0u, 1u}) {
    Sst t = k == 0 ? reverse_sst(corpus::ab()) : prefixes_sst(corpus::ab());
    LayeredHdt0l h = sst_to_hdt0l(t, k);
    LayeredHdt0l m = map_hdt0l_layered(h.system, h.blocks, sep);
    EXPECT_EQ(m.blocks.blocks.size(), h.blocks.blocks.size() + 1);
    EXPECT_TRUE(check_layered_hdt0l(m.system, m.blocks));
    for (const Word& w : separated_words(t.input(), sep, 3, 2)) ASSERT_EQ(m.system(w), blockwise(h.system, sep, w));
    LayeredSst back = layered_hdt0l_to_sst(m.system, m.blocks);
    EXPECT_EQ(back.blocks.blocks.size(), k + 2);
    for (const Word& w : separated_words(t.input(), sep, 2, 2)) ASSERT_EQ(back.machine(w), m.system(w));
  }
}

TEST(MapHdt0l, DisjointInitialWord) {
  Hdt0lSystem s = corpus::square_length();
  auto p = infer_layering_hdt0l(s, 2);
  ASSERT_TRUE(p.has_value());
  LayeredHdt0l d = disjointify_initial_word(s, *p);
  std::set<Symbol> seen(d.system.initial_word().begin(), d.system.initial_word().end());
  EXPECT_EQ(seen.size(), d.system.initial_word().size());
  EXPECT_TRUE(check_layered_hdt0l(d.system, d.blocks));
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(d.system(a_pow(n)), s(a_pow(n)));
}

}  // namespace
}  // namespace xduce
