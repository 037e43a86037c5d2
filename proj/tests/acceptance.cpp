// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "test_util.hpp"

namespace xduce {
namespace {

using corpus::ab;
using Fn = std::function<Word(const Word&)>;

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

/// All sub-alphabets of at most two letters (the whole alphabet if smaller).
std::vector<Alphabet> two_letter_slices(const Alphabet& in) {
  if (in.size() <= 2) return {in};
  std::vector<Alphabet> out;
  for (std::size_t i = 0; i < in.size(); ++i)
    for (std::size_t j = i + 1; j < in.size(); ++j) out.push_back(Alphabet(std::vector<Symbol>{in[i], in[j]}));
  return out;
}

std::optional<std::string> differs(const Fn& f, const Fn& g, const Alphabet& in, std::size_t len) {
  for (const Alphabet& slice : two_letter_slices(in))
    for (const Word& w : words_up_to(slice, len))
      if (f(w) != g(w)) return "'" + w.str() + "': " + f(w).str() + " vs " + g(w).str();
  return std::nullopt;
}

Word a_pow(std::size_t n) { return Word{Symbol("a")}.repeated(n); }

// 1 -----------------------------------------------------------------------

Outcome prefixes_example() {
  Word got = prefixes_sst(corpus::digits())(Word::parse("1 2 3 4"));
  const std::string want = "_4 3 2 1 _3 2 1 _2 1 _1";
  if (got.str() != want) return fail("got " + got.str());
  return {true, want};
}

// 2 -----------------------------------------------------------------------

Outcome squaring_examples() {
  Word sq = build_cfsquaring(Alphabet{"1", "2", "3"})(Word::parse("1 2 3"));
  if (sq.str() != "_1 1 2 3 _2 1 2 3 _3 1 2 3") return fail("cfsquaring gave " + sq.str());
  Word p = build_squaring_pipeline(corpus::digits())(Word::parse("1 2 3 4"));
  if (p.str() != "_1 2 3 4 1 _2 3 4 1 2 _3 4 1 2 3 _4") return fail("pipeline gave " + p.str());
  return {true, "both exact"};
}

// 3 -----------------------------------------------------------------------

std::optional<std::string> sst_round_trip(const Sst& t, std::optional<LayerPartition> layers) {
  for (std::size_t k = 0; !layers && k <= 3; ++k) layers = infer_layering(t, k);
  if (!layers) return std::nullopt;
  LayeredHdt0l h = sst_to_hdt0l(t, *layers);
  if (auto d = differs(t, h.system, t.input(), 5)) return "to hdt0l " + *d;
  LayeredSst back = layered_hdt0l_to_sst(h.system, h.blocks);
  if (auto d = differs(t, back.machine, t.input(), 5)) return "back to sst " + *d;
  return std::nullopt;
}

Outcome translation_round_trips() {
  std::size_t machines = 0, unlayered = 0;
  for (const io::Document& doc : corpus::bundled()) {
    std::optional<std::string> bad;
    if (const auto* t = std::get_if<Sst>(&doc.value)) {
      bool layered = doc.layers.has_value();
      for (std::size_t k = 0; !layered && k <= 3; ++k) layered = infer_layering(*t, k).has_value();
      if (!layered) ++unlayered;
      bad = sst_round_trip(*t, doc.layers);
    } else if (const auto* m = std::get_if<SequentialTransducer>(&doc.value)) {
      Sst t = sequential_to_sst(*m);
      bad = differs(*m, t, m->input(), 5);
      if (!bad) bad = sst_round_trip(t, std::nullopt);
    } else if (const auto* s = std::get_if<Hdt0lSystem>(&doc.value)) {
      bad = differs(*s, hdt0l_to_sst(*s), s->input(), 5);
      std::optional<LayerPartition> p = doc.layers;
      for (std::size_t k = 0; !p && k <= 3; ++k) p = infer_layering_hdt0l(*s, k);
      if (!bad && p) bad = differs(*s, layered_hdt0l_to_sst(*s, *p).machine, s->input(), 5);
    } else {
      continue;
    }
    ++machines;
    if (bad) return fail(doc.name + " " + *bad);
  }
  return {true, std::to_string(machines) + " machines, " + std::to_string(unlayered) + " SSTs without a 3-layering"};
}

// 4 -----------------------------------------------------------------------

Outcome layer_offset() {
  struct Case {
    Sst machine;
    std::size_t k;
  };
  for (const Case& c : {Case{reverse_sst(ab()), 0}, Case{identity_sst(ab()), 0}, Case{prefixes_sst(corpus::digits()), 1},
                        Case{prefixes_sst(ab()), 1}}) {
    auto p = infer_layering(c.machine, c.k);
    if (!p) return fail("no " + std::to_string(c.k) + "-layering");
    LayeredHdt0l h = sst_to_hdt0l(c.machine, *p);
    if (h.blocks.blocks.size() != c.k + 2 || !check_layered_hdt0l(h.system, h.blocks))
      return fail("k=" + std::to_string(c.k) + " gave " + std::to_string(h.blocks.blocks.size()) + " blocks");
    LayeredSst back = layered_hdt0l_to_sst(h.system, h.blocks);
    if (back.blocks.blocks.size() != c.k + 1 || !check_layered(back.machine, back.blocks))
      return fail("inverse of k=" + std::to_string(c.k) + " is not " + std::to_string(c.k) + "-layered");
    if (auto d = differs(c.machine, back.machine, c.machine.input(), 5)) return fail("inverse differs at " + *d);
  }
  return {true, "k=0 and k=1"};
}

// 5 -----------------------------------------------------------------------

std::vector<Word> separated_words(const Alphabet& a, Symbol sep, std::size_t count, std::size_t len) {
  std::vector<Word> blocks = words_up_to(a, len);
  std::vector<Word> out(blocks), frontier(blocks);
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

Outcome map_construction() {
  const Symbol sep("|");
  std::size_t inputs = 0;
  for (const io::Document& doc : corpus::bundled()) {
    const auto* s = std::get_if<Hdt0lSystem>(&doc.value);
    if (!s) continue;
    Hdt0lSystem m = map_hdt0l(*s, sep);
    for (const Alphabet& slice : two_letter_slices(s->input()))
      for (const Word& w : separated_words(slice, sep, 3, 3)) {
        ++inputs;
        if (m(w) != blockwise(*s, sep, w)) return fail(doc.name + " at '" + w.str() + "'");
      }
  }
  return {true, std::to_string(inputs) + " inputs"};
}

// 6 -----------------------------------------------------------------------

Outcome cfpt_cbs() {
  std::string names;
  bool squaring = false;
  for (const auto& c : corpus::cfpt_cases()) {
    Cfpt composed = cbs_compose_cfpt(c.outer, c.subs);
    if (composed.pebbles() != 2) return fail(c.name + " has " + std::to_string(composed.pebbles()) + " pebbles");
    for (const Word& w : words_up_to(ab(), 4))
      if (composed(w) != cbs_eval_cfpt(c.outer, c.subs, w)) return fail(c.name + " at '" + w.str() + "'");
    squaring = squaring || c.name == "cfsquaring";
    names += (names.empty() ? "" : ", ") + c.name;
  }
  if (!squaring) return fail("no cfsquaring case");
  return {true, names};
}

// 7 -----------------------------------------------------------------------

Outcome dichotomy() {
  std::size_t machines = 0, splits = 0, producing = 0;
  for (const auto& m : corpus::analysis_machines()) {
    if (!check_copyless(m.machine)) continue;
    DichotomyReport rep = check_dichotomy(m.machine, m.letter, 7, 6);
    if (!rep.pass) return fail(m.name + ": " + rep.counterexample);
    ++machines;
    splits += rep.splits;
    producing += rep.producing;
  }
  if (machines < 4) return fail("only " + std::to_string(machines) + " copyless machines");
  return {true, std::to_string(machines) + " machines, " + std::to_string(splits) + " splits, " +
                    std::to_string(producing) + " producing"};
}

// 8 -----------------------------------------------------------------------

Outcome pumping_extraction() {
  const Symbol a("a");
  for (const auto& m : corpus::unary_machines()) {
    PumpingFamily fam = extract_pumping_family(m.machine);
    if (auto n = family_mismatch(fam, m.machine, a, kBaseCheck)) return fail(m.name + " at n=" + std::to_string(*n));
    if (fam.star_height() > 1) return fail(m.name + " star height " + std::to_string(fam.star_height()));
  }
  bool squaring = false;
  for (const auto& e : corpus::unary_exprs()) {
    PumpingFamily fam = extract_cfp_family(e.expr);
    if (auto n = family_mismatch(fam, e.expr, a, kCfpCheck)) return fail(e.name + " at n=" + std::to_string(*n));
    if (fam.star_height() > rank_bound(e.expr) + 1)
      return fail(e.name + " star height " + std::to_string(fam.star_height()));
    squaring = squaring || e.name == "cfsquaring_a";
  }
  if (!squaring) return fail("cfsquaring over {a} missing");
  return {true, std::to_string(corpus::unary_machines().size()) + " machines, " +
                    std::to_string(corpus::unary_exprs().size()) + " expressions"};
}

// 9 -----------------------------------------------------------------------

Outcome growth_degrees() {
  auto degree = [](const Fn& f) { return growth_degree(f, unary_samples(corpus::unary()), 16).degree; };
  for (const auto& m : corpus::unary_machines()) {
    const bool constant = m.name == "constant_a";
    auto d = degree(m.machine);
    if (d != std::optional<std::size_t>(constant ? 0 : 1)) return fail(m.name + " has degree " + (d ? std::to_string(*d) : "none"));
  }
  if (auto d = degree(build_cfsquaring(corpus::unary())); d != 2u) return fail("cfsquaring");
  if (auto d = degree(build_cfpow_pipeline(3, corpus::unary())); d != 3u) return fail("cfpow(3) pipeline");
  return {true, "1 / 2 / 3"};
}

// 10 ----------------------------------------------------------------------

Outcome poly_uniformity() {
  std::vector<PolyWordExpr> exprs;
  for (const io::Document& doc : corpus::bundled()) {
    if (const auto* e = std::get_if<PolyWordExpr>(&doc.value)) exprs.push_back(*e);
    if (const auto* f = std::get_if<PumpingFamily>(&doc.value)) exprs.insert(exprs.end(), f->exprs.begin(), f->exprs.end());
  }
  for (const auto& m : corpus::unary_machines()) {
    PumpingFamily f = extract_pumping_family(m.machine);
    exprs.insert(exprs.end(), f.exprs.begin(), f.exprs.end());
  }
  for (const auto& e : corpus::unary_exprs()) {
    PumpingFamily f = extract_cfp_family(e.expr);
    exprs.insert(exprs.end(), f.exprs.begin(), f.exprs.end());
  }
  for (const PolyWordExpr& e : exprs)
    for (Symbol c : pwe_letters(e)) {
      PolySet polys = poly_uniform_sets(e, c);
      for (std::size_t n = 0; n <= 10; ++n)
        for (std::size_t k : beta_blocks(eval_pwe(e, n), c))
          if (!poly_set_contains(polys, n, k))
            return fail(e.str() + " letter " + c.name() + " n=" + std::to_string(n) + " block " + std::to_string(k));
    }
  Hdt0lSystem s = corpus::descending_blocks();
  for (std::size_t n = 2; n <= 10; ++n)
    if (beta_blocks(s(a_pow(n)), Symbol("a")).size() < n - 1) return fail("descending_blocks at n=" + std::to_string(n));
  return {true, std::to_string(exprs.size()) + " expressions"};
}

// 11 ----------------------------------------------------------------------

Outcome cfpow_pipeline() {
  for (std::size_t k = 0; k <= 3; ++k) {
    Pipeline p = build_cfpow_pipeline(k, ab());
    CfpExpr e = build_cfpow(k, ab());
    for (const Word& w : words_up_to(ab(), 4))
      if (p(w) != e(w)) return fail("k=" + std::to_string(k) + " at '" + w.str() + "'");
  }
  return {true, "k = 0..3"};
}

// 12 ----------------------------------------------------------------------

Outcome extractor() {
  std::size_t checked = 0;
  for (const auto& m : corpus::analysis_machines()) {
    if (m.name != "swap" && m.name != "idreverse") continue;
    const Sst& t = m.machine;
    std::vector<WreathElement<RegAssignment>> images;
    const std::vector<Word> inputs = words_up_to(t.input(), 5);
    for (const Word& s : inputs) images.push_back(transition_image(t, s));
    std::set<Shape> shapes;
    for (std::size_t i = 0; i < inputs.size() && inputs[i].size() <= 3; ++i)
      for (std::size_t q = 0; q < t.num_states(); ++q) shapes.insert(erase(images[i].payload(q)));
    for (std::size_t q = 0; q < t.num_states(); ++q)
      for (const Shape& alpha : shapes)
        for (std::size_t r = 0; r < t.num_registers(); ++r)
          for (std::size_t j = 0; j <= alpha.image(r).size(); ++j) {
            Sst x = shape_label_extractor(t, q, (*t.registers())[r], alpha, j);
            for (std::size_t i = 0; i < inputs.size(); ++i) {
              const RegAssignment& psi = images[i].payload(q);
              Word want = erase(psi) == alpha ? shape_label_split(psi).labels[r][j] : Word{};
              ++checked;
              if (x(inputs[i]) != want) return fail(m.name + " at '" + inputs[i].str() + "'");
            }
          }
  }
  return {true, std::to_string(checked) + " comparisons"};
}

// 13 ----------------------------------------------------------------------

Outcome monoid_laws() {
  constexpr int kCases = 1000;
  testing::Rng rng(2024);
  auto regs = make_alphabet_ref(Alphabet{"X", "Y", "Z"});
  auto out = make_alphabet_ref(ab());
  auto rand = [&] { return testing::random_assignment(rng, regs, out); };
  for (int i = 0; i < kCases; ++i) {
    auto a = rand(), b = rand(), c = rand();
    if (compose_assignments(compose_assignments(a, b), c) != compose_assignments(a, compose_assignments(b, c)))
      return fail("associativity");
    auto v = testing::random_values(rng, *regs, *out);
    if (compose_assignments(a, b).dagger(v) != b.dagger(a.dagger(v))) return fail("dagger");
    if (erase(compose_assignments(a, b)) != compose_shapes(erase(a), erase(b))) return fail("erase");
  }
  constexpr std::size_t kStates = 3;
  auto element = [&] {
    WreathElement<RegAssignment> e;
    for (std::size_t q = 0; q < kStates; ++q) e.map.emplace_back(testing::pick(rng, kStates), rand());
    return e;
  };
  for (int i = 0; i < kCases; ++i) {
    auto u = element(), v = element(), w = element();
    if (wreath_compose(wreath_compose(u, v), w) != wreath_compose(u, wreath_compose(v, w))) return fail("wreath");
  }
  return {true, std::to_string(kCases) + " cases per law"};
}

struct Criterion {
  const char* title;
  double limit_ms;
  Outcome (*run)();
};

}  // namespace
}  // namespace xduce

int main() {
  using namespace xduce;
  const Criterion criteria[] = {
      {"prefixes example", 1, prefixes_example},
      {"cfsquaring and squaring pipeline examples", 1, squaring_examples},
      {"translation round trips", 10000, translation_round_trips},
      {"layer offset of sst_to_hdt0l and its inverse", 1000, layer_offset},
      {"map_hdt0l equals blockwise semantics", 5000, map_construction},
      {"CFPT composition by substitution", 10000, cfpt_cbs},
      {"producing-triple dichotomy and pumping", 60000, dichotomy},
      {"pumping family extraction", 30000, pumping_extraction},
      {"growth degrees", 5000, growth_degrees},
      {"block lengths are polynomially uniform", 5000, poly_uniformity},
      {"cfpow pipeline equals cfpow", 20000, cfpow_pipeline},
      {"shape label extractor", 20000, extractor},
      {"monoid laws", 5000, monoid_laws},
  };
  int failures = 0, index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && ms > c.limit_ms) o = fail("took longer than " + std::to_string(static_cast<long>(c.limit_ms)) + " ms");
    if (!o.ok) ++failures;
    std::printf("[%s] %2d: %s (%.3f ms) - %s\n", o.ok ? "PASS" : "FAIL", index, c.title, ms, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
