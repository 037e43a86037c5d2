#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "test_util.hpp"

namespace xduce {
namespace {

using corpus::ab;

struct Trivial {
  int operator()(const Word&) const { return 0; }
};

TEST(Splits, TrivialMonoidCounts) {
  Word s = Word::parse("a b a");
  auto splits = enumerate_r_splits(s, Trivial{}, 1);
  EXPECT_EQ(splits.size(), 6u);
  EXPECT_TRUE(enumerate_r_splits(Word{}, Trivial{}, 1).empty());
  EXPECT_EQ(enumerate_r_splits(s, Trivial{}, 3).size(), 1u);
  EXPECT_TRUE(enumerate_r_splits(s, Trivial{}, 4).empty());
  for (const auto& cuts : splits) EXPECT_TRUE(is_r_split(s, cuts, Trivial{}));
  EXPECT_FALSE(is_r_split(s, {2, 1}, Trivial{}));
  EXPECT_THROW(is_r_split(s, {1}, Trivial{}), ValidationError);
  EXPECT_THROW(enumerate_r_splits(s, Trivial{}, 0), ValidationError);
  EXPECT_THROW(enumerate_r_splits(Word{Symbol("a")}.repeated(15), Trivial{}, 1), SizeError);
}

TEST(Splits, EnumerationMatchesDefinition) {
  Sst t = corpus::idreverse(Alphabet{"a", "#"});
  TripleTable table(t);
  auto phi = [&](const Word& x) { return table.nu(x); };
  for (const Word& s : words_up_to(t.input(), 6))
    for (std::size_t r = 1; r <= 2; ++r) {
      auto found = enumerate_r_splits(s, phi, r);
      std::set<std::vector<std::size_t>> got(found.begin(), found.end());
      // Brute force over all increasing cut tuples.
      std::size_t expected = 0;
      std::vector<std::size_t> cuts;
      std::function<void(std::size_t)> go = [&](std::size_t from) {
        if (cuts.size() == r + 1) {
          if (is_r_split(s, cuts, phi)) {
            ++expected;
            EXPECT_TRUE(got.contains(cuts));
          }
          return;
        }
        for (std::size_t c = from; c <= s.size(); ++c) {
          cuts.push_back(c);
          go(c + 1);
          cuts.pop_back();
        }
      };
      go(0);
      EXPECT_EQ(found.size(), expected);
    }
}

TEST(LetterPresence, CompositionIsAMorphism) {
  testing::Rng rng(41);
  auto regs = make_alphabet_ref(Alphabet{"X", "Y", "Z"});
  auto out = make_alphabet_ref(ab());
  for (int i = 0; i < 1000; ++i) {
    auto a = testing::random_assignment(rng, regs, out), b = testing::random_assignment(rng, regs, out);
    auto c = testing::random_assignment(rng, regs, out);
    ASSERT_EQ(cl01_class(compose_assignments(a, b)), cl01_compose(cl01_class(a), cl01_class(b)));
    ASSERT_EQ(cl01_compose(cl01_compose(cl01_class(a), cl01_class(b)), cl01_class(c)),
              cl01_compose(cl01_class(a), cl01_compose(cl01_class(b), cl01_class(c))));
  }
  EXPECT_EQ(cl01_class(RegAssignment::identity(regs, out)), cl01_identity(regs));
}

TEST(TripleTables, NuIsMultiplicative) {
  for (const auto& m : corpus::analysis_machines()) {
    TripleTable table(m.machine);
    EXPECT_EQ(table.nu(Word{}), table.unit());
    for (const Word& u : words_up_to(m.machine.input(), 4))
      for (const Word& v : words_up_to(m.machine.input(), 4))
        ASSERT_EQ(table.nu(u + v), n_compose(table.nu(u), table.nu(v))) << m.name;
    for (const Word& u : words_up_to(m.machine.input(), 4))
      EXPECT_LT(table.index_of(table.nu(u)), table.elements().size());
  }
}

TEST(TripleTables, ConstantMachineProducesNothing) {
  Sst t = constant_sst(ab(), ab(), Word::parse("a b a"));
  TripleTable table(t);
  EXPECT_TRUE(table.producing_triples(Symbol("a")).empty());
  for (const Word& s : words_up_to(ab(), 5))
    EXPECT_FALSE(has_producing_r_split(table, s, {Symbol("a"), Symbol("b")}, 1));
}

TEST(TripleTables, IdentityProducesOnItsLetter) {
  Sst t = identity_sst(corpus::unary());
  TripleTable table(t);
  EXPECT_FALSE(table.producing_triples(Symbol("a")).empty());
  const std::vector<Symbol> a{Symbol("a")};
  EXPECT_FALSE(has_producing_r_split(table, Word::parse("a a a"), a, 2));
  EXPECT_TRUE(has_producing_r_split(table, Word::parse("a a a a"), a, 2));
  EXPECT_FALSE(has_producing_r_split(table, Word::parse("a a"), a, 3));
  EXPECT_TRUE(has_producing_r_split(t, Word::parse("a a a"), a, 1));
}

TEST(TripleTables, ElementBound) {
  Sst t = corpus::idreverse(Alphabet{"a", "#"});
  EXPECT_THROW(TripleTable(t, 1), SizeError);
}

TEST(Dichotomy, AnalysisMachines) {
  for (const auto& m : corpus::analysis_machines()) {
    DichotomyReport rep = check_dichotomy(m.machine, m.letter, 6, 6);
    EXPECT_TRUE(rep.pass) << m.name << ": " << rep.counterexample;
    EXPECT_GT(rep.splits, 0u) << m.name;
  }
}

TEST(Dichotomy, IdentityAndIteratedReverse) {
  DichotomyReport id = check_dichotomy(identity_sst(ab()), Symbol("a"), 6);
  EXPECT_TRUE(id.pass) << id.counterexample;
  EXPECT_GT(id.producing, 0u);
  DichotomyReport ir = check_dichotomy(corpus::idreverse(Alphabet{"a", "b", "#"}), Symbol("#"), 5);
  EXPECT_TRUE(ir.pass) << ir.counterexample;
  EXPECT_GT(ir.producing, 0u);
}

TEST(Dichotomy, RandomCopylessMachines) {
  testing::Rng rng(42);
  for (int i = 0; i < 30; ++i) {
    Sst t = testing::random_sst(rng, ab(), ab(), 2, 2, true);
    DichotomyReport rep = check_dichotomy(t, Symbol("a"), 5, 4);
    EXPECT_TRUE(rep.pass) << rep.counterexample;
  }
}

TEST(Pumping, MonotoneMultipumping) {
  // Along a 2-split the count of c never drops when an exponent grows.
  for (const auto& m : corpus::analysis_machines()) {
    TripleTable table(m.machine);
    auto phi = [&](const Word& x) { return table.nu(x); };
    for (const Word& s : words_up_to(m.machine.input(), 4))
      for (const auto& cuts : enumerate_r_splits(s, phi, 2)) {
        Word u = s.substr(0, cuts[0]);
        Word v1 = s.substr(cuts[0], cuts[1] - cuts[0]);
        Word v2 = s.substr(cuts[1], cuts[2] - cuts[1]);
        Word w = s.substr(cuts[2], s.size() - cuts[2]);
        auto count = [&](std::size_t i, std::size_t j) {
          return count_occurrences(m.machine(u + v1.repeated(i) + v2.repeated(j) + w), m.letter);
        };
        for (std::size_t i = 1; i <= 4; ++i)
          for (std::size_t j = 1; j <= 4; ++j) {
            if (i < 4) ASSERT_LE(count(i, j), count(i + 1, j)) << m.name << " " << s.str();
            if (j < 4) ASSERT_LE(count(i, j), count(i, j + 1)) << m.name << " " << s.str();
          }
      }
  }
}

}  // namespace
}  // namespace xduce
