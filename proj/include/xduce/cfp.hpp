#pragma once

// Comparison-free polyregular expressions: regular functions closed under
// composition by substitution (CbS), conditionals and concatenation.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "xduce/cfpt.hpp"
#include "xduce/core.hpp"
#include "xduce/error.hpp"
#include "xduce/hdt0l.hpp"
#include "xduce/sst.hpp"
#include "xduce/symbol.hpp"

namespace xduce {

enum class CfpKind { Reg, Cbs, Cond, Concat };

/// Immutable expression tree; copies share nodes.
class CfpExpr {
  struct Node {
    CfpKind kind;
    Alphabet input;
    Alphabet output;
    std::optional<Sst> machine;
    std::vector<CfpExpr> children;   // Cbs: outer; Cond: then, else; Concat: left, right
    std::map<Symbol, CfpExpr> subs;  // Cbs only
    std::optional<Dfa> lang;         // Cond only
  };

 public:
  CfpExpr() = default;

  static CfpExpr reg(Sst machine) {
    if (!check_copyless(machine)) throw ValidationError("regular base functions must be copyless SSTs");
    auto n = std::make_shared<Node>();
    n->kind = CfpKind::Reg;
    n->input = machine.input();
    n->output = *machine.output();
    n->machine = std::move(machine);
    return CfpExpr(std::move(n));
  }

  static CfpExpr reg(const SequentialTransducer& s) { return reg(sequential_to_sst(s)); }

  /// w -> subs[i1](w) ... subs[im](w) where i1...im = outer(w).
  static CfpExpr cbs(CfpExpr outer, std::map<Symbol, CfpExpr> subs) {
    auto n = std::make_shared<Node>();
    n->kind = CfpKind::Cbs;
    n->input = outer.input();
    for (Symbol i : outer.output())
      if (!subs.contains(i)) throw ValidationError("CbS has no substitution for letter '" + i.name() + "'");
    for (const auto& [i, e] : subs) {
      if (!e.input().same_set(n->input)) throw AlphabetMismatch("CbS substitutions must read the outer input alphabet");
      n->output = alphabet_union(n->output, e.output());
    }
    n->children.push_back(std::move(outer));
    n->subs = std::move(subs);
    return CfpExpr(std::move(n));
  }

  /// w -> then(w) if w is in lang, otherwise otherwise(w).
  static CfpExpr cond(Dfa lang, CfpExpr then, CfpExpr otherwise) {
    if (!then.input().same_set(otherwise.input()) || !lang.alphabet().same_set(then.input()))
      throw AlphabetMismatch("conditional branches and language must share the input alphabet");
    auto n = std::make_shared<Node>();
    n->kind = CfpKind::Cond;
    n->input = then.input();
    n->output = alphabet_union(then.output(), otherwise.output());
    n->lang = std::move(lang);
    n->children = {std::move(then), std::move(otherwise)};
    return CfpExpr(std::move(n));
  }

  /// w -> left(w) right(w).
  static CfpExpr concat(CfpExpr left, CfpExpr right) {
    if (!left.input().same_set(right.input())) throw AlphabetMismatch("concatenated functions must share the input");
    auto n = std::make_shared<Node>();
    n->kind = CfpKind::Concat;
    n->input = left.input();
    n->output = alphabet_union(left.output(), right.output());
    n->children = {std::move(left), std::move(right)};
    return CfpExpr(std::move(n));
  }

  bool valid() const { return node_ != nullptr; }
  CfpKind kind() const { return node_->kind; }
  const Alphabet& input() const { return node_->input; }
  const Alphabet& output() const { return node_->output; }
  const Sst& machine() const { return *node_->machine; }
  const CfpExpr& outer() const { return node_->children.at(0); }
  const std::map<Symbol, CfpExpr>& subs() const { return node_->subs; }
  const Dfa& lang() const { return *node_->lang; }
  const CfpExpr& then_branch() const { return node_->children.at(0); }
  const CfpExpr& else_branch() const { return node_->children.at(1); }
  const CfpExpr& left() const { return node_->children.at(0); }
  const CfpExpr& right() const { return node_->children.at(1); }

  Word operator()(const Word& w) const {
    switch (kind()) {
      case CfpKind::Reg: return machine()(w);
      case CfpKind::Cbs: {
        std::map<Symbol, Word> cache;
        Word out;
        for (Symbol i : outer()(w)) {
          auto it = cache.find(i);
          if (it == cache.end()) it = cache.emplace(i, subs().at(i)(w)).first;
          out.append(it->second);
        }
        return out;
      }
      case CfpKind::Cond: return lang().accepts(w) ? then_branch()(w) : else_branch()(w);
      case CfpKind::Concat: return left()(w) + right()(w);
    }
    return {};
  }

 private:
  explicit CfpExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline Word eval_cfp(const CfpExpr& e, const Word& w) {
  require_word_over(e.input(), w, "cfp input");
  return e(w);
}

/// Upper bound on the rank: regular functions 0, CbS 1 + outer + max of substitutions.
inline std::size_t rank_bound(const CfpExpr& e) {
  switch (e.kind()) {
    case CfpKind::Reg: return 0;
    case CfpKind::Cbs: {
      std::size_t m = 0;
      for (const auto& [i, s] : e.subs()) m = std::max(m, rank_bound(s));
      return 1 + rank_bound(e.outer()) + m;
    }
    case CfpKind::Cond: return std::max(rank_bound(e.then_branch()), rank_bound(e.else_branch()));
    case CfpKind::Concat: return std::max(rank_bound(e.left()), rank_bound(e.right()));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Small regular functions

/// Single-state copyless SST computing the letter-to-word morphism `image`.
inline Sst morphism_sst(const Alphabet& input, const Alphabet& output, const std::map<Symbol, Word>& image) {
  auto out = make_alphabet_ref(output);
  auto regs = make_alphabet_ref(Alphabet({fresh_symbol("X", {&output})}));
  std::vector<SstTransition> row;
  for (Symbol c : input) {
    Image img{Atom::r(0)};
    auto it = image.find(c);
    if (it == image.end()) throw ValidationError("morphism_sst: no image for '" + c.name() + "'");
    for (Symbol x : it->second) img.push_back(Atom::sym(x));
    row.push_back({0, RegAssignment(regs, out, {img})});
  }
  return Sst(input, out, {"q"}, 0, regs, {Word{}}, {std::move(row)}, {{Atom::r(0)}});
}

inline Sst identity_sst(const Alphabet& input, const Alphabet& output) {
  std::map<Symbol, Word> image;
  for (Symbol c : input) image[c] = Word{c};
  return morphism_sst(input, output, image);
}

inline Sst identity_sst(const Alphabet& input) { return identity_sst(input, input); }

/// Constant function with value `value` (and no registers).
inline Sst constant_sst(const Alphabet& input, const Alphabet& output, const Word& value) {
  auto out = make_alphabet_ref(output);
  auto regs = make_alphabet_ref(Alphabet{});
  std::vector<SstTransition> row;
  for (std::size_t c = 0; c < input.size(); ++c) row.push_back({0, RegAssignment(regs, out, {})});
  Image img;
  for (Symbol x : value) img.push_back(Atom::sym(x));
  return Sst(input, out, {"q"}, 0, regs, {}, {std::move(row)}, {std::move(img)});
}

/// w -> reverse of w.
inline Sst reverse_sst(const Alphabet& input) {
  auto out = make_alphabet_ref(input);
  auto regs = make_alphabet_ref(Alphabet({fresh_symbol("X", {&input})}));
  std::vector<SstTransition> row;
  for (Symbol c : input) row.push_back({0, RegAssignment(regs, out, {{Atom::sym(c), Atom::r(0)}})});
  return Sst(input, out, {"q"}, 0, regs, {Word{}}, {std::move(row)}, {{Atom::r(0)}});
}

// ---------------------------------------------------------------------------
// Pipelines

using Stage = std::variant<Sst, Hdt0lSystem, SequentialTransducer, CfpExpr, Cfpt>;

inline const Alphabet& stage_input(const Stage& s) {
  return std::visit(
      [](const auto& m) -> const Alphabet& { return m.input(); }, s);
}

inline const Alphabet& stage_output(const Stage& s) {
  return std::visit(
      [](const auto& m) -> const Alphabet& {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Sst>)
          return *m.output();
        else
          return m.output();
      },
      s);
}

inline Word run_stage(const Stage& s, const Word& w) {
  return std::visit([&](const auto& m) { return m(w); }, s);
}

/// Semantic composition of machines, applied left to right.
class Pipeline {
 public:
  Pipeline() = default;
  explicit Pipeline(std::vector<Stage> stages) : stages_(std::move(stages)) {
    if (stages_.empty()) throw ValidationError("a pipeline needs at least one stage");
    for (std::size_t i = 1; i < stages_.size(); ++i)
      for (Symbol c : stage_output(stages_[i - 1]))
        if (!stage_input(stages_[i]).contains(c))
          throw AlphabetMismatch("pipeline stage " + std::to_string(i) + " cannot read letter '" + c.name() +
                                 "' written by the previous stage");
  }

  const std::vector<Stage>& stages() const { return stages_; }
  const Alphabet& input() const { return stage_input(stages_.front()); }
  const Alphabet& output() const { return stage_output(stages_.back()); }

  Word operator()(const Word& w) const {
    Word x = w;
    for (const Stage& s : stages_) x = run_stage(s, x);
    return x;
  }

  /// Stages [from, to) as their own pipeline.
  Pipeline slice(std::size_t from, std::size_t to) const {
    return Pipeline(std::vector<Stage>(stages_.begin() + static_cast<std::ptrdiff_t>(from),
                                       stages_.begin() + static_cast<std::ptrdiff_t>(to)));
  }

 private:
  std::vector<Stage> stages_;
};

// ---------------------------------------------------------------------------
// Named constructions

/// The separator used by cfsquaring over `g` (fresh with respect to g).
inline Symbol cfsquaring_separator(const Alphabet& g) { return fresh_symbol("#", {&g}); }

/// w1...wn -> _w1 w1...wn _w2 w1...wn ... _wn w1...wn, as a single CbS over
/// the sequential function w -> w1 # ... wn #.
inline CfpExpr build_cfsquaring(const Alphabet& g) {
  const Symbol sep = cfsquaring_separator(g);
  Alphabet outer_out = alphabet_union(g, Alphabet({sep}));
  Alphabet out = alphabet_union(g, underline_alphabet(g));
  std::map<Symbol, Word> image;
  for (Symbol c : g) image[c] = Word{c, sep};
  std::map<Symbol, CfpExpr> subs;
  subs[sep] = CfpExpr::reg(identity_sst(g, out));
  for (Symbol c : g) subs[c] = CfpExpr::reg(constant_sst(g, out, Word{underlined(c)}));
  return CfpExpr::cbs(CfpExpr::reg(morphism_sst(g, outer_out, image)), std::move(subs));
}

/// cfpow^(k): cfpow^(0) = eps and cfpow^(n+1)(w) = (n,w1) cfpow^(n)(w) ... (n,w|w|) cfpow^(n)(w),
/// with (n,c) spelled "n:c".
inline CfpExpr build_cfpow(std::size_t k, const Alphabet& g) {
  if (k == 0) return CfpExpr::reg(constant_sst(g, Alphabet{}, Word{}));
  if (k == 1) {
    std::map<Symbol, Word> image;
    for (Symbol c : g) image[c] = Word{indexed(0, c)};
    return CfpExpr::reg(morphism_sst(g, product_alphabet(1, g), image));
  }
  const Alphabet level = product_alphabet(k, g);
  Alphabet top;
  {
    std::vector<Symbol> t;
    for (Symbol c : g) t.push_back(indexed(k - 1, c));
    top = Alphabet(std::move(t));
  }
  const Symbol box = fresh_symbol("#", {&level});
  std::map<Symbol, Word> image;
  for (Symbol c : g) image[c] = Word{indexed(k - 1, c), box};
  std::map<Symbol, CfpExpr> subs;
  for (Symbol c : top) subs[c] = CfpExpr::reg(constant_sst(g, top, Word{c}));
  subs[box] = build_cfpow(k - 1, g);
  return CfpExpr::cbs(CfpExpr::reg(morphism_sst(g, alphabet_union(top, Alphabet({box})), image)), std::move(subs));
}

/// Letter-to-letter relabelling as a one-state sequential transducer.
inline SequentialTransducer relabel_sequential(const Alphabet& input, const Alphabet& output,
                                               const std::map<Symbol, Symbol>& map) {
  std::vector<SequentialTransition> row;
  for (Symbol c : input) row.push_back({0, Word{map.at(c)}});
  return SequentialTransducer(input, output, {"q"}, 0, {std::move(row)}, {Word{}});
}

/// The two-state stripping transducer turning
/// cfsquaring over {0..k} x G applied to cfpow^(k+1) into cfpow^(k+2).
///
/// In state o, an underlined (k,a) becomes (k+1,a), plain letters are copied
/// and an underlined (m,a) with m < k is dropped while moving to state i;
/// in state i everything is dropped until an underlined (k,a), which becomes
/// (k+1,a) and returns to o.
inline SequentialTransducer cfpow_stripper(std::size_t k, const Alphabet& g) {
  const Alphabet plain = product_alphabet(k + 1, g);
  const Alphabet input = alphabet_union(plain, underline_alphabet(plain));
  const Alphabet output = product_alphabet(k + 2, g);
  std::vector<std::vector<SequentialTransition>> delta(2);
  for (Symbol x : input) {
    const bool under = !plain.contains(x);
    const Symbol base = under ? plain[underline_alphabet(plain).index_of(x)] : x;
    const std::size_t level = plain.index_of(base) / g.size();
    const Symbol a = g[plain.index_of(base) % g.size()];
    if (under && level == k) {
      delta[0].push_back({0, Word{indexed(k + 1, a)}});
      delta[1].push_back({0, Word{indexed(k + 1, a)}});
    } else if (under) {
      delta[0].push_back({1, Word{}});
      delta[1].push_back({1, Word{}});
    } else {
      delta[0].push_back({0, Word{base}});
      delta[1].push_back({1, Word{}});
    }
  }
  return SequentialTransducer(input, output, {"o", "i"}, 0, std::move(delta), {Word{}, Word{}});
}

/// cfpow^(k) as sequential functions and cfsquaring stages.
inline Pipeline build_cfpow_pipeline(std::size_t k, const Alphabet& g) {
  if (k == 0) return Pipeline({Stage{CfpExpr::reg(constant_sst(g, Alphabet{}, Word{}))}});
  if (k == 1) {
    std::map<Symbol, Symbol> m;
    for (Symbol c : g) m[c] = indexed(0, c);
    return Pipeline({Stage{relabel_sequential(g, product_alphabet(1, g), m)}});
  }
  std::vector<Stage> stages;
  CfpExpr sq = build_cfsquaring(g);
  std::map<Symbol, Symbol> m;
  for (Symbol c : g) {
    m[c] = indexed(0, c);
    m[underlined(c)] = indexed(1, c);
  }
  stages.emplace_back(sq);
  stages.emplace_back(relabel_sequential(sq.output(), product_alphabet(2, g), m));
  for (std::size_t j = 1; j + 2 <= k; ++j) {
    stages.emplace_back(build_cfsquaring(product_alphabet(j + 1, g)));
    stages.emplace_back(cfpow_stripper(j, g));
  }
  return Pipeline(std::move(stages));
}

/// w -> w1...wn with every letter repeated after an underlined marker, as
/// two single-state 1-layered SSTs (the first one is the prefixes machine).
inline Sst prefixes_sst(const Alphabet& g);
inline Sst squaring_second_stage(const Alphabet& g);

inline Pipeline build_squaring_pipeline(const Alphabet& g) {
  return Pipeline({Stage{prefixes_sst(g)}, Stage{squaring_second_stage(g)}});
}

/// 1234 -> _4 3 2 1 _3 2 1 _2 1 _1 (registers X, Y; X <- cX, Y <- _c X Y).
inline Sst prefixes_sst(const Alphabet& g) {
  Alphabet out = alphabet_union(g, underline_alphabet(g));
  SstBuilder b(g, out, Alphabet{"X", "Y"}, {"q"}, "q");
  for (Symbol c : g) b.on("q", c.name(), "q", {{"X", c.name() + " X"}, {"Y", underlined(c).name() + " X Y"}});
  b.out("q", "Y");
  return b.build();
}

/// Second squaring stage: plain letters are prepended to Y, an underlined _c
/// prepends c to X and _c X to Y.
inline Sst squaring_second_stage(const Alphabet& g) {
  Alphabet io = alphabet_union(g, underline_alphabet(g));
  SstBuilder b(io, io, Alphabet{"X", "Y"}, {"q"}, "q");
  for (Symbol c : g) {
    b.on("q", c.name(), "q", {{"Y", c.name() + " Y"}});
    b.on("q", underlined(c).name(), "q", {{"X", c.name() + " X"}, {"Y", underlined(c).name() + " X Y"}});
  }
  b.out("q", "Y");
  return b.build();
}

// ---------------------------------------------------------------------------
// Growth

struct GrowthReport {
  std::optional<std::size_t> degree;  // empty: no degree <= dmax fits
  std::size_t dmax = 0;
  std::size_t period = 1;             // residue classes mod period were fitted separately
  std::vector<std::size_t> lengths;   // lengths[n-1] = |f(sample(n))|
};

namespace detail {

/// Least d whose d-th finite difference is constant on its second half (over at least two values).
inline std::optional<std::size_t> difference_degree(std::vector<long long> diff, std::size_t dmax) {
  for (std::size_t d = 0; d <= dmax && diff.size() >= 2; ++d) {
    const std::size_t from = diff.size() / 2;
    if (diff.size() - from >= 2 &&
        std::all_of(diff.begin() + static_cast<std::ptrdiff_t>(from), diff.end(),
                    [&](long long x) { return x == diff.back(); }))
      return d;
    std::vector<long long> next;
    for (std::size_t i = 1; i < diff.size(); ++i) next.push_back(diff[i] - diff[i - 1]);
    diff = std::move(next);
  }
  return std::nullopt;
}

}  // namespace detail

/// Degree of n -> |f(sample(n))| for n = 1..max_n. Lengths are allowed to be
/// quasi-polynomial: for period p = 1..max_period every residue class mod p
/// is fitted on its own, and the first period where all classes fit wins.
inline GrowthReport growth_degree(const std::function<Word(const Word&)>& f,
                                  const std::function<Word(std::size_t)>& sample, std::size_t max_n = 16,
                                  std::size_t dmax = 6, std::size_t max_period = 4) {
  GrowthReport r;
  r.dmax = dmax;
  for (std::size_t n = 1; n <= max_n; ++n) r.lengths.push_back(f(sample(n)).size());
  for (std::size_t p = 1; p <= max_period; ++p) {
    std::optional<std::size_t> worst = 0;
    for (std::size_t res = 0; res < p && worst; ++res) {
      std::vector<long long> sub;
      for (std::size_t i = res; i < r.lengths.size(); i += p) sub.push_back(static_cast<long long>(r.lengths[i]));
      auto d = detail::difference_degree(std::move(sub), dmax);
      worst = d ? std::optional<std::size_t>(std::max(*worst, *d)) : std::nullopt;
    }
    if (worst) {
      r.degree = worst;
      r.period = p;
      return r;
    }
  }
  return r;
}

/// Default sample family: n copies of the first input letter.
inline std::function<Word(std::size_t)> unary_samples(const Alphabet& input) {
  if (input.empty()) throw ValidationError("growth sampling needs a non-empty input alphabet");
  Symbol a = input[0];
  return [a](std::size_t n) { return Word{a}.repeated(n); };
}

}  // namespace xduce
