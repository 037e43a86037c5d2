#pragma once

// Named machines and expressions used by the tests, the CLI and the bundled
// corpus directory.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "xduce/cfp.hpp"
#include "xduce/cfpt.hpp"
#include "xduce/hdt0l.hpp"
#include "xduce/io.hpp"
#include "xduce/sequences.hpp"
#include "xduce/sst.hpp"
#include "xduce/symbol.hpp"

namespace xduce::corpus {

/// X <- X Y #, Y <- eps on '#'; Y <- c Y otherwise; output X Y.
inline Sst idreverse(const Alphabet& sigma) {
  const Symbol hash("#");
  if (!sigma.contains(hash)) throw ValidationError("iterated reverse needs '#' in the alphabet");
  SstBuilder b(sigma, sigma, Alphabet{"X", "Y"}, {"q"}, "q");
  for (Symbol c : sigma) {
    if (c == hash) b.on("q", "#", "q", {{"X", "X Y #"}, {"Y", ""}});
    else b.on("q", c.name(), "q", {{"Y", c.name() + " Y"}});
  }
  b.out("q", "X Y");
  return b.build();
}

inline Sst idreverse() { return idreverse(Alphabet{"a", "b", "c", "d", "#"}); }

/// Replaces each c by the closest non-c letter on its left, or a if there is none.
inline SequentialTransducer fig2() {
  return SequentialBuilder(Alphabet{"a", "b", "c"}, Alphabet{"a", "b"}, {"1", "2"}, "1")
      .on("1", "a", "1", "a")
      .on("1", "c", "1", "a")
      .on("1", "b", "2", "b")
      .on("2", "b", "2", "b")
      .on("2", "c", "2", "b")
      .on("2", "a", "1", "a")
      .final("1", "")
      .final("2", "")
      .build();
}

inline Alphabet digits() { return Alphabet{"1", "2", "3", "4"}; }
inline Alphabet unary() { return Alphabet{"a"}; }
inline Alphabet ab() { return Alphabet{"a", "b"}; }

/// d = X, h_a(X) = X X, h'(X) = a: a^n -> a^(2^n).
inline Hdt0lSystem doubling() {
  return Hdt0lBuilder(unary(), unary(), Alphabet{"X"}, "X").rule("a", "X", "X X").final("X", "a").build();
}

// ---------------------------------------------------------------------------
// Witness functions

/// a^n -> (a^n b)^(n+1), as a CbS of two regular functions.
inline CfpExpr block_power() {
  Sst outer = SstBuilder(unary(), unary(), Alphabet{"X"}, {"q"}, "q")
                  .init("X", "a")
                  .on("q", "a", "q", {{"X", "a X"}})
                  .out("q", "X")
                  .build();
  Sst inner = SstBuilder(unary(), ab(), Alphabet{"X"}, {"q"}, "q")
                  .on("q", "a", "q", {{"X", "a X"}})
                  .out("q", "X b")
                  .build();
  return CfpExpr::cbs(CfpExpr::reg(outer), {{Symbol("a"), CfpExpr::reg(inner)}});
}

/// w -> w^|w|.
inline CfpExpr self_power(const Alphabet& g) {
  const Symbol i = fresh_symbol("i", {&g});
  std::map<Symbol, Word> img;
  for (Symbol c : g) img[c] = Word{i};
  return CfpExpr::cbs(CfpExpr::reg(morphism_sst(g, Alphabet({i}), img)), {{i, CfpExpr::reg(identity_sst(g))}});
}

/// a^n # w -> (w #)^n over {a, b, #}.
inline CfpExpr hash_power() {
  const Alphabet g{"a", "b", "#"};
  SequentialBuilder count(g, Alphabet{"i"}, {"before", "after"}, "before");
  count.on("before", "a", "before", "i").on("before", "b", "before", "").on("before", "#", "after", "");
  for (Symbol c : g) count.on("after", c.name(), "after", "");
  count.final("before", "").final("after", "");
  SequentialBuilder tail(g, g, {"before", "after"}, "before");
  for (Symbol c : g) {
    tail.on("before", c.name(), c.name() == "#" ? "after" : "before", "");
    tail.on("after", c.name(), "after", c.name());
  }
  tail.final("before", "").final("after", "#");
  return CfpExpr::cbs(CfpExpr::reg(count.build()), {{Symbol("i"), CfpExpr::reg(tail.build())}});
}

/// a^n -> b a^(n-1) b a^(n-2) ... b a b: the prefixes machine over {a} with _a written b.
inline Hdt0lSystem descending_blocks() {
  return Hdt0lBuilder(unary(), ab(), Alphabet{"X", "Y", "A", "B"}, "Y")
      .rule("a", "Y", "B X Y")
      .rule("a", "X", "A X")
      .final("X", "")
      .final("Y", "")
      .final("A", "a")
      .final("B", "b")
      .build();
}

/// a^n -> a^(n^2) as a layered HDT0L system.
inline Hdt0lSystem square_length() {
  return Hdt0lBuilder(unary(), unary(), Alphabet{"S", "N", "o"}, "S")
      .rule("a", "S", "S N N o")
      .rule("a", "N", "N o")
      .final("S", "")
      .final("N", "")
      .final("o", "a")
      .build();
}

// ---------------------------------------------------------------------------
// Pebble transducers

inline Cfpt identity_cfpt(const Alphabet& g, const Alphabet& out) {
  CfptBuilder b(g, out, 1, {"q"}, "q");
  b.rule("q", "<", "q", StackAction::Right);
  for (Symbol c : g) b.rule("q", c.name(), "q", StackAction::Right, c.name());
  b.rule("q", ">", "q", StackAction::Pop);
  return b.build();
}

inline Cfpt identity_cfpt(const Alphabet& g) { return identity_cfpt(g, g); }

inline Cfpt reverse_cfpt(const Alphabet& g) {
  CfptBuilder b(g, g, 1, {"go", "back"}, "go");
  b.rule("go", "<", "go", StackAction::Right);
  for (Symbol c : g) {
    b.rule("go", c.name(), "go", StackAction::Right);
    b.rule("back", c.name(), "back", StackAction::Left, c.name());
  }
  b.rule("go", ">", "back", StackAction::Left);
  b.rule("back", "<", "back", StackAction::Pop);
  return b.build();
}

inline Cfpt constant_cfpt(const Alphabet& g, const Alphabet& out, const Word& value) {
  return CfptBuilder(g, out, 1, {"q"}, "q").rule("q", "<", "q", StackAction::Pop, value.str()).build();
}

/// Per input letter c, emits pattern(c).
inline Cfpt letterwise_cfpt(const Alphabet& g, const Alphabet& out, const std::function<Word(Symbol)>& pattern) {
  CfptBuilder b(g, out, 1, {"q"}, "q");
  b.rule("q", "<", "q", StackAction::Right);
  for (Symbol c : g) b.rule("q", c.name(), "q", StackAction::Right, pattern(c).str());
  b.rule("q", ">", "q", StackAction::Pop);
  return b.build();
}

struct CfptCbs {
  std::string name;
  Cfpt outer;
  std::map<Symbol, Cfpt> subs;
};

/// cfsquaring: outer c -> c #, # -> identity, c -> _c.
inline CfptCbs cfsquaring_cfpt(const Alphabet& g) {
  const Symbol hash = cfsquaring_separator(g);
  Alphabet marks = alphabet_union(g, Alphabet({hash}));
  Alphabet out = alphabet_union(g, underline_alphabet(g));
  CfptCbs c{"cfsquaring", letterwise_cfpt(g, marks, [&](Symbol x) { return Word{x, hash}; }), {}};
  c.subs.emplace(hash, identity_cfpt(g, out));
  for (Symbol x : g) c.subs.emplace(x, constant_cfpt(g, out, Word{underlined(x)}));
  return c;
}

inline CfptCbs self_power_cfpt(const Alphabet& g) {
  const Symbol i = fresh_symbol("i", {&g});
  CfptCbs c{"self_power", letterwise_cfpt(g, Alphabet({i}), [&](Symbol) { return Word{i}; }), {}};
  c.subs.emplace(i, identity_cfpt(g));
  return c;
}

/// Reverse outer; a -> identity, b -> reverse.
inline CfptCbs reverse_mix_cfpt() {
  CfptCbs c{"reverse_mix", reverse_cfpt(ab()), {}};
  c.subs.emplace(Symbol("a"), identity_cfpt(ab()));
  c.subs.emplace(Symbol("b"), reverse_cfpt(ab()));
  return c;
}

inline std::vector<CfptCbs> cfpt_cases() {
  return {cfsquaring_cfpt(ab()), self_power_cfpt(ab()), reverse_mix_cfpt()};
}

// ---------------------------------------------------------------------------
// Copyless machines for the producing-triple checks, with a letter to count.

struct CountedMachine {
  std::string name;
  Sst machine;
  Symbol letter;
};

inline std::vector<CountedMachine> analysis_machines() {
  Sst swap = SstBuilder(ab(), ab(), Alphabet{"X", "Y"}, {"even", "odd"}, "even")
                 .on("even", "a", "odd", {{"X", "Y a"}, {"Y", "X"}})
                 .on("odd", "a", "even", {{"X", "Y a"}, {"Y", "X"}})
                 .on("even", "b", "even", {{"Y", "b Y"}})
                 .on("odd", "b", "odd", {{"Y", "b Y"}})
                 .out("even", "X Y")
                 .out("odd", "Y")
                 .build();
  return {
      {"identity", identity_sst(ab()), Symbol("a")},
      {"reverse", reverse_sst(ab()), Symbol("b")},
      {"idreverse", idreverse(Alphabet{"a", "#"}), Symbol("#")},
      {"idreverse_letters", idreverse(Alphabet{"a", "#"}), Symbol("a")},
      {"constant", constant_sst(ab(), ab(), Word::parse("a b a")), Symbol("a")},
      {"fig2", sequential_to_sst(fig2()), Symbol("a")},
      {"swap", swap, Symbol("a")},
  };
}

// ---------------------------------------------------------------------------
// Unary examples

/// a^n -> a b b a ... cycling through three states.
inline SequentialTransducer unary_cycle() {
  return SequentialBuilder(unary(), ab(), {"p", "q", "r"}, "p")
      .on("p", "a", "q", "a")
      .on("q", "a", "r", "b b")
      .on("r", "a", "q", "a")
      .final("q", "b")
      .final("r", "a b")
      .build();
}

inline Dfa even_length(const Alphabet& g) {
  return Dfa(g, {"even", "odd"}, 0, {true, false},
             {std::vector<std::size_t>(g.size(), 1), std::vector<std::size_t>(g.size(), 0)});
}

/// Even lengths: cfsquaring; odd lengths: the identity followed by the cycle machine.
inline CfpExpr unary_mix() {
  CfpExpr sq = build_cfsquaring(unary());
  CfpExpr tail = CfpExpr::concat(CfpExpr::reg(identity_sst(unary())), CfpExpr::reg(unary_cycle()));
  return CfpExpr::cond(even_length(unary()), sq, tail);
}

struct NamedSst {
  std::string name;
  Sst machine;
};

struct NamedExpr {
  std::string name;
  CfpExpr expr;
};

inline std::vector<NamedSst> unary_machines() {
  return {{"identity_a", identity_sst(unary())},
          {"constant_a", constant_sst(unary(), ab(), Word::parse("b a"))},
          {"cycle_a", sequential_to_sst(unary_cycle())},
          {"double_a", sequential_to_sst(SequentialBuilder(unary(), unary(), {"q"}, "q").on("q", "a", "q", "a a").build())},
          {"successor_a", block_power().outer().machine()}};
}

inline std::vector<NamedExpr> unary_exprs() {
  std::vector<NamedExpr> out{{"cfsquaring_a", build_cfsquaring(unary())},
                             {"block_power", block_power()},
                             {"self_power_a", self_power(unary())},
                             {"unary_mix", unary_mix()}};
  for (std::size_t k = 0; k <= 3; ++k) out.push_back({"cfpow" + std::to_string(k) + "_a", build_cfpow(k, unary())});
  return out;
}

// ---------------------------------------------------------------------------
// The bundled corpus

inline std::vector<io::Document> bundled() {
  using io::make_document;
  std::vector<io::Document> docs;
  auto add = [&](io::Document d) { docs.push_back(std::move(d)); };

  io::Document prefixes = make_document("prefixes", prefixes_sst(digits()), "1234 -> _4321_321_21_1");
  prefixes.layers = LayerPartition{{{Symbol("X")}, {Symbol("Y")}}};
  add(prefixes);
  add(make_document("prefixes_ab", prefixes_sst(ab())));
  add(make_document("idreverse", idreverse(), "iterated reverse: u1#...#un -> rev(u1)#...#rev(un)"));
  add(make_document("idreverse_a", idreverse(Alphabet{"a", "#"})));
  add(make_document("fig2", fig2(), "each c becomes the closest non-c letter on its left, a by default"));
  add(make_document("identity_ab", identity_sst(ab())));
  add(make_document("reverse_ab", reverse_sst(ab())));
  for (const auto& m : analysis_machines())
    if (m.name == "swap" || m.name == "constant") add(make_document(m.name + "_ab", m.machine));
  add(make_document("doubling", doubling(), "a^n -> a^(2^n)"));
  add(make_document("descending_blocks", descending_blocks(), "a^n -> b a^(n-1) b ... b a b"));
  add(make_document("square_length", square_length(), "a^n -> a^(n^2)"));
  LayeredHdt0l ph = sst_to_hdt0l(prefixes_sst(ab()), 1);
  io::Document phd = make_document("prefixes_hdt0l", ph.system);
  phd.layers = ph.blocks;
  add(phd);

  add(make_document("cfsquaring", build_cfsquaring(Alphabet{"1", "2", "3"}), "123 -> _1123_2123_3123"));
  add(make_document("cfsquaring_ab", build_cfsquaring(ab())));
  add(make_document("squaring_pipeline", build_squaring_pipeline(digits()), "squaring with underlining"));
  add(make_document("cfpow3", build_cfpow(3, ab())));
  add(make_document("cfpow3_pipeline", build_cfpow_pipeline(3, ab())));
  add(make_document("cfpow_stripper2", cfpow_stripper(2, ab())));
  add(make_document("self_power_ab", self_power(ab()), "w -> w^|w|"));
  add(make_document("hash_power", hash_power(), "a^n # w -> (w #)^n"));
  for (const auto& m : unary_machines()) add(make_document(m.name, m.machine));
  for (const auto& e : unary_exprs()) add(make_document(e.name, e.expr));
  add(make_document("unary_cycle", unary_cycle()));

  add(make_document("cfpt_identity_ab", identity_cfpt(ab())));
  add(make_document("cfpt_reverse_ab", reverse_cfpt(ab())));
  CfptCbs sq = cfsquaring_cfpt(ab());
  add(make_document("cfpt_cfsquaring_outer", sq.outer, "a b -> a # b #"));
  add(make_document("cfpt_cfsquaring_copy", sq.subs.at(cfsquaring_separator(ab()))));
  add(make_document("cfpt_underline_a", sq.subs.at(Symbol("a"))));
  add(make_document("cfpt_underline_b", sq.subs.at(Symbol("b"))));
  for (const auto& c : cfpt_cases())
    add(make_document("cfpt_" + c.name, cbs_compose_cfpt(c.outer, c.subs)));

  add(make_document("even_length_a", even_length(unary())));
  add(make_document("pwe_example", PolyWordExpr::cat(PolyWordExpr::lit("u"), PolyWordExpr::star(PolyWordExpr::lit("v")))));
  add(make_document("family_cfsquaring_a", extract_cfp_family(build_cfsquaring(unary()))));
  add(make_document("morphism_example", FreeMorphism(ab(), ab(), std::map<Symbol, Word>{{Symbol("a"), Word::parse("a b")},
                                                                                       {Symbol("b"), Word{}}})));
  add(make_document("assignment_example",
                    RegAssignment::from_words(make_alphabet_ref(Alphabet{"X", "Y"}), make_alphabet_ref(ab()),
                                              {{Symbol("X"), Word::parse("X a Y")}, {Symbol("Y"), Word::parse("b")}})));
  return docs;
}

}  // namespace xduce::corpus
