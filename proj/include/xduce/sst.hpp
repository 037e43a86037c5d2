#pragma once

// Streaming string transducers and sequential transducers.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xduce/core.hpp"
#include "xduce/error.hpp"
#include "xduce/monoid.hpp"
#include "xduce/symbol.hpp"

namespace xduce {

/// A name based on `base` that occurs in none of `avoid` (primes are appended).
inline Symbol fresh_symbol(std::string base, const std::vector<const Alphabet*>& avoid) {
  for (;;) {
    Symbol s(base);
    bool clash = false;
    for (const Alphabet* a : avoid) clash = clash || a->contains(s);
    if (!clash) return s;
    base += "'";
  }
}

/// Fresh names for a list of bases; the results are distinct from each other as well.
inline Alphabet fresh_alphabet(const std::vector<std::string>& bases, const std::vector<const Alphabet*>& avoid) {
  std::vector<Symbol> out;
  std::set<Symbol> taken;
  for (const std::string& b : bases) {
    std::string name = b;
    for (;;) {
      Symbol s = fresh_symbol(name, avoid);
      if (!taken.contains(s)) {
        taken.insert(s);
        out.push_back(s);
        break;
      }
      name = s.name() + "'";
    }
  }
  return Alphabet(std::move(out));
}

inline std::size_t state_index(const std::vector<std::string>& states, const std::string& name) {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw ValidationError("unknown state '" + name + "'");
  return static_cast<std::size_t>(it - states.begin());
}

inline void require_distinct_states(const std::vector<std::string>& states) {
  std::set<std::string> seen(states.begin(), states.end());
  if (seen.size() != states.size()) throw ValidationError("duplicate state names");
  if (states.empty()) throw ValidationError("a machine needs at least one state");
}

struct SstTransition {
  std::size_t next = 0;
  RegAssignment assign;
};

/// Ordered register blocks R_0, ..., R_k.
struct LayerPartition {
  std::vector<std::vector<Symbol>> blocks;

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i) out += "|";
      out += "{";
      for (std::size_t j = 0; j < blocks[i].size(); ++j) out += (j ? "," : "") + blocks[i][j].name();
      out += "}";
    }
    return out;
  }
};

/// Deterministic streaming string transducer.
class Sst {
 public:
  Sst() = default;

  Sst(Alphabet input, AlphabetRef output, std::vector<std::string> states, std::size_t initial, AlphabetRef registers,
      std::vector<Word> initial_values, std::vector<std::vector<SstTransition>> delta, std::vector<Image> final_output)
      : input_(std::move(input)),
        output_(std::move(output)),
        states_(std::move(states)),
        initial_(initial),
        registers_(std::move(registers)),
        initial_values_(std::move(initial_values)),
        delta_(std::move(delta)),
        final_(std::move(final_output)) {
    require_distinct_states(states_);
    if (initial_ >= states_.size()) throw ValidationError("initial state out of range");
    if (!registers_->disjoint_from(*output_)) throw ValidationError("registers must be disjoint from output letters");
    if (initial_values_.size() != registers_->size()) throw ValidationError("every register needs an initial value");
    for (const Word& w : initial_values_) require_word_over(*output_, w, "initial value");
    if (delta_.size() != states_.size() || final_.size() != states_.size())
      throw ValidationError("transition and output tables must cover every state");
    for (const auto& row : delta_) {
      if (row.size() != input_.size()) throw ValidationError("transition function must be total");
      for (const SstTransition& t : row) {
        if (t.next >= states_.size()) throw ValidationError("transition to unknown state");
        if (t.assign.size() != registers_->size() || !detail::same_alphabet(t.assign.registers(), registers_) ||
            !detail::same_alphabet(t.assign.output(), output_))
          throw ValidationError("transition assignment over the wrong registers");
      }
    }
    for (const Image& img : final_)
      for (const Atom& a : img)
        if (a.reg ? a.id >= registers_->size() : !output_->contains(Symbol::from_id(a.id)))
          throw ValidationError("output function uses an unknown register or letter");
  }

  const Alphabet& input() const { return input_; }
  const AlphabetRef& output() const { return output_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t initial() const { return initial_; }
  const AlphabetRef& registers() const { return registers_; }
  std::size_t num_registers() const { return registers_->size(); }
  const std::vector<Word>& initial_values() const { return initial_values_; }
  const SstTransition& transition(std::size_t q, std::size_t letter) const { return delta_[q][letter]; }
  const SstTransition& transition(std::size_t q, Symbol c) const { return delta_[q][input_.index_of(c)]; }
  const std::vector<std::vector<SstTransition>>& delta() const { return delta_; }
  const Image& final_output(std::size_t q) const { return final_[q]; }
  const std::vector<Image>& final_outputs() const { return final_; }

  std::size_t letter(Symbol c) const {
    std::size_t i = input_.find(c);
    if (i == input_.size()) throw AlphabetMismatch("SST input: symbol '" + c.name() + "' is outside the alphabet");
    return i;
  }

  /// State reached from q after reading w.
  std::size_t state_after(const Word& w, std::size_t q) const {
    for (Symbol c : w) q = delta_[q][letter(c)].next;
    return q;
  }

  Word operator()(const Word& w) const {
    std::size_t q = initial_;
    std::vector<Word> values = initial_values_;
    for (Symbol c : w) {
      const SstTransition& t = delta_[q][letter(c)];
      values = t.assign.dagger(values);
      q = t.next;
    }
    return RegAssignment::substitute(final_[q], values);
  }

  RegAssignment identity_assignment() const { return RegAssignment::identity(registers_, output_); }

  /// Output function of state q rendered as a word over R u S.
  Word final_word(std::size_t q) const {
    Word w;
    for (const Atom& a : final_[q]) w.push_back(a.reg ? (*registers_)[a.id] : Symbol::from_id(a.id));
    return w;
  }

 private:
  Alphabet input_;
  AlphabetRef output_;
  std::vector<std::string> states_;
  std::size_t initial_ = 0;
  AlphabetRef registers_;
  std::vector<Word> initial_values_;
  std::vector<std::vector<SstTransition>> delta_;
  std::vector<Image> final_;
};

inline Word run_sst(const Sst& t, const Word& w) { return t(w); }

/// String-keyed construction helper. Registers without an explicit image in
/// a transition keep their value (identity image); unspecified initial values
/// and outputs are empty.
class SstBuilder {
 public:
  SstBuilder(const Alphabet& input, const Alphabet& output, const Alphabet& registers,
             std::vector<std::string> states, const std::string& initial)
      : input_(input),
        output_(make_alphabet_ref(output)),
        registers_(make_alphabet_ref(registers)),
        states_(std::move(states)),
        initial_(state_index(states_, initial)),
        initial_values_(registers.size()),
        final_(states_.size()) {
    require_distinct_states(states_);
    delta_.assign(states_.size(), std::vector<std::optional<SstTransition>>(input_.size()));
  }

  SstBuilder& init(const std::string& reg, const std::string& value) {
    initial_values_[registers_->index_of(Symbol(reg))] = Word::parse(value);
    return *this;
  }

  SstBuilder& on(const std::string& from, const std::string& letter, const std::string& to,
                 const std::map<std::string, std::string>& images = {}) {
    std::map<Symbol, Word> words;
    for (Symbol r : *registers_) words[r] = Word{r};
    for (const auto& [r, w] : images) {
      if (!registers_->contains(Symbol(r))) throw ValidationError("'" + r + "' is not a register");
      words[Symbol(r)] = Word::parse(w);
    }
    delta_[state_index(states_, from)][input_.index_of(Symbol(letter))] =
        SstTransition{state_index(states_, to), RegAssignment::from_words(registers_, output_, words)};
    return *this;
  }

  /// Same transition for every input letter.
  SstBuilder& on_all(const std::string& from, const std::string& to, const std::map<std::string, std::string>& images = {}) {
    for (Symbol c : input_) on(from, c.name(), to, images);
    return *this;
  }

  SstBuilder& out(const std::string& state, const std::string& word) {
    final_[state_index(states_, state)] = RegAssignment::parse_image(*registers_, *output_, Word::parse(word));
    return *this;
  }

  Sst build() const {
    std::vector<std::vector<SstTransition>> delta;
    for (std::size_t q = 0; q < states_.size(); ++q) {
      std::vector<SstTransition> row;
      for (std::size_t c = 0; c < input_.size(); ++c) {
        if (!delta_[q][c])
          throw ValidationError("missing transition from '" + states_[q] + "' on '" + input_[c].name() + "'");
        row.push_back(*delta_[q][c]);
      }
      delta.push_back(std::move(row));
    }
    return Sst(input_, output_, states_, initial_, registers_, initial_values_, std::move(delta), final_);
  }

 private:
  Alphabet input_;
  AlphabetRef output_;
  AlphabetRef registers_;
  std::vector<std::string> states_;
  std::size_t initial_;
  std::vector<Word> initial_values_;
  std::vector<std::vector<std::optional<SstTransition>>> delta_;
  std::vector<Image> final_;
};

// ---------------------------------------------------------------------------
// Copylessness and layering

inline bool check_copyless(const Sst& t) {
  for (const auto& row : t.delta())
    for (const SstTransition& tr : row)
      if (!is_copyless(tr.assign)) return false;
  return true;
}

/// Registers used more than once by some transition.
inline std::vector<Symbol> copied_registers(const Sst& t) {
  std::set<std::uint32_t> bad;
  for (const auto& row : t.delta())
    for (const SstTransition& tr : row) {
      std::vector<int> uses(t.num_registers(), 0);
      for (const Image& img : tr.assign.images())
        for (const Atom& a : img)
          if (a.reg && ++uses[a.id] > 1) bad.insert(a.id);
    }
  std::vector<Symbol> out;
  for (std::uint32_t r : bad) out.push_back((*t.registers())[r]);
  return out;
}

/// layer[r] for every register index; throws if blocks do not partition R.
inline std::vector<std::size_t> layer_of(const Alphabet& registers, const LayerPartition& p) {
  std::vector<std::size_t> layer(registers.size(), p.blocks.size());
  for (std::size_t i = 0; i < p.blocks.size(); ++i)
    for (Symbol r : p.blocks[i]) {
      std::size_t idx = registers.find(r);
      if (idx == registers.size()) throw ValidationError("partition mentions unknown register '" + r.name() + "'");
      if (layer[idx] != p.blocks.size()) throw ValidationError("register '" + r.name() + "' is in two blocks");
      layer[idx] = i;
    }
  for (std::size_t r = 0; r < registers.size(); ++r)
    if (layer[r] == p.blocks.size())
      throw ValidationError("partition misses register '" + registers[r].name() + "'");
  return layer;
}

/// Both layering conditions for one family of images indexed by registers.
inline bool images_layered(const std::vector<Image>& images, const std::vector<std::size_t>& layer) {
  const std::size_t n = images.size();
  std::vector<int> uses(n, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (const Atom& a : images[r]) {
      if (!a.reg) continue;
      if (layer[a.id] > layer[r]) return false;
      if (layer[a.id] == layer[r] && ++uses[a.id] > 1) return false;
    }
  return true;
}

inline bool check_layered(const Sst& t, const LayerPartition& p) {
  auto layer = layer_of(*t.registers(), p);
  for (const auto& row : t.delta())
    for (const SstTransition& tr : row)
      if (!images_layered(tr.assign.images(), layer)) return false;
  return true;
}

/// Largest number of candidate layer maps the exhaustive search will try.
inline constexpr std::size_t kLayeringBound = std::size_t{1} << 20;

/// Exhaustive search for a partition into k+1 blocks; generic over the list of
/// image families that must all be layered.
inline std::optional<LayerPartition> infer_layering_images(const Alphabet& registers,
                                                           const std::vector<const std::vector<Image>*>& families,
                                                           std::size_t k, std::size_t bound = kLayeringBound) {
  const std::size_t n = registers.size();
  // More than n non-empty blocks is impossible and empty blocks can always be dropped.
  const std::size_t layers = std::min(k + 1, std::max<std::size_t>(n, 1));
  std::size_t candidates = 1;
  for (std::size_t i = 0; i < n; ++i)
    if ((candidates *= layers) > bound)
      throw SizeError("infer_layering: more than " + std::to_string(bound) + " candidate partitions of " +
                      std::to_string(n) + " letters");
  std::vector<std::size_t> layer(n, 0);
  for (;;) {
    bool ok = true;
    for (const auto* f : families)
      if (!images_layered(*f, layer)) {
        ok = false;
        break;
      }
    if (ok) {
      LayerPartition p;
      p.blocks.resize(k + 1);
      for (std::size_t r = 0; r < n; ++r) p.blocks[layer[r]].push_back(registers[r]);
      return p;
    }
    std::size_t i = 0;
    while (i < n && ++layer[i] == layers) layer[i++] = 0;
    if (i == n) return std::nullopt;
  }
}

inline std::optional<LayerPartition> infer_layering(const Sst& t, std::size_t k, std::size_t bound = kLayeringBound) {
  std::vector<const std::vector<Image>*> families;
  for (const auto& row : t.delta())
    for (const SstTransition& tr : row) families.push_back(&tr.assign.images());
  return infer_layering_images(*t.registers(), families, k, bound);
}

/// Trivial single-block partition.
inline LayerPartition single_block(const Alphabet& registers) {
  return LayerPartition{{registers.symbols()}};
}

// ---------------------------------------------------------------------------
// Sequential transducers

struct SequentialTransition {
  std::size_t next = 0;
  Word emit;
};

/// Deterministic one-way transducer with outputs on transitions and final outputs.
class SequentialTransducer {
 public:
  SequentialTransducer() = default;

  SequentialTransducer(Alphabet input, Alphabet output, std::vector<std::string> states, std::size_t initial,
                       std::vector<std::vector<SequentialTransition>> delta, std::vector<Word> final_output)
      : input_(std::move(input)),
        output_(std::move(output)),
        states_(std::move(states)),
        initial_(initial),
        delta_(std::move(delta)),
        final_(std::move(final_output)) {
    require_distinct_states(states_);
    if (initial_ >= states_.size()) throw ValidationError("initial state out of range");
    if (delta_.size() != states_.size() || final_.size() != states_.size())
      throw ValidationError("transition and final tables must cover every state");
    for (const auto& row : delta_) {
      if (row.size() != input_.size()) throw ValidationError("transition function must be total");
      for (const auto& t : row) {
        if (t.next >= states_.size()) throw ValidationError("transition to unknown state");
        require_word_over(output_, t.emit, "emitted word");
      }
    }
    for (const Word& w : final_) require_word_over(output_, w, "final output");
  }

  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t initial() const { return initial_; }
  const SequentialTransition& transition(std::size_t q, std::size_t letter) const { return delta_[q][letter]; }
  const std::vector<std::vector<SequentialTransition>>& delta() const { return delta_; }
  const Word& final_output(std::size_t q) const { return final_[q]; }
  const std::vector<Word>& final_outputs() const { return final_; }

  Word operator()(const Word& w) const {
    std::size_t q = initial_;
    Word out;
    for (Symbol c : w) {
      std::size_t i = input_.find(c);
      if (i == input_.size())
        throw AlphabetMismatch("sequential input: symbol '" + c.name() + "' is outside the alphabet");
      out.append(delta_[q][i].emit);
      q = delta_[q][i].next;
    }
    out.append(final_[q]);
    return out;
  }

 private:
  Alphabet input_;
  Alphabet output_;
  std::vector<std::string> states_;
  std::size_t initial_ = 0;
  std::vector<std::vector<SequentialTransition>> delta_;
  std::vector<Word> final_;
};

class SequentialBuilder {
 public:
  SequentialBuilder(Alphabet input, Alphabet output, std::vector<std::string> states, const std::string& initial)
      : input_(std::move(input)), output_(std::move(output)), states_(std::move(states)) {
    initial_ = state_index(states_, initial);
    delta_.assign(states_.size(), std::vector<std::optional<SequentialTransition>>(input_.size()));
    final_.assign(states_.size(), Word{});
  }

  SequentialBuilder& on(const std::string& from, const std::string& letter, const std::string& to,
                        const std::string& emit) {
    delta_[state_index(states_, from)][input_.index_of(Symbol(letter))] =
        SequentialTransition{state_index(states_, to), Word::parse(emit)};
    return *this;
  }

  SequentialBuilder& final(const std::string& state, const std::string& word) {
    final_[state_index(states_, state)] = Word::parse(word);
    return *this;
  }

  SequentialTransducer build() const {
    std::vector<std::vector<SequentialTransition>> delta;
    for (std::size_t q = 0; q < states_.size(); ++q) {
      std::vector<SequentialTransition> row;
      for (std::size_t c = 0; c < input_.size(); ++c) {
        if (!delta_[q][c])
          throw ValidationError("missing transition from '" + states_[q] + "' on '" + input_[c].name() + "'");
        row.push_back(*delta_[q][c]);
      }
      delta.push_back(std::move(row));
    }
    return SequentialTransducer(input_, output_, states_, initial_, std::move(delta), final_);
  }

 private:
  Alphabet input_;
  Alphabet output_;
  std::vector<std::string> states_;
  std::size_t initial_ = 0;
  std::vector<std::vector<std::optional<SequentialTransition>>> delta_;
  std::vector<Word> final_;
};

/// Same states, one register X accumulating the output.
inline Sst sequential_to_sst(const SequentialTransducer& s) {
  auto output = make_alphabet_ref(s.output());
  auto registers = make_alphabet_ref(Alphabet({fresh_symbol("X", {&s.output()})}));
  std::vector<std::vector<SstTransition>> delta;
  for (const auto& row : s.delta()) {
    std::vector<SstTransition> out_row;
    for (const auto& t : row) {
      Image img{Atom::r(0)};
      for (Symbol c : t.emit) img.push_back(Atom::sym(c));
      out_row.push_back({t.next, RegAssignment(registers, output, {img})});
    }
    delta.push_back(std::move(out_row));
  }
  std::vector<Image> final_output;
  for (const Word& w : s.final_outputs()) {
    Image img{Atom::r(0)};
    for (Symbol c : w) img.push_back(Atom::sym(c));
    final_output.push_back(std::move(img));
  }
  return Sst(s.input(), output, s.states(), s.initial(), registers, {Word{}}, std::move(delta), std::move(final_output));
}

// ---------------------------------------------------------------------------
// Product constructions

namespace detail {

inline Image shift_image(const Image& img, std::uint32_t offset) {
  Image out = img;
  for (Atom& a : out)
    if (a.reg) a.id += offset;
  return out;
}

inline void require_same_signature(const Sst& f, const Sst& g) {
  if (!f.input().same_set(g.input())) throw AlphabetMismatch("machines read different input alphabets");
  if (!f.output()->same_set(*g.output())) throw AlphabetMismatch("machines write different output alphabets");
}

/// Registers of f and g side by side, renamed "L:r" / "R:r" away from the output letters.
inline AlphabetRef paired_registers(const Sst& f, const Sst& g) {
  std::vector<std::string> names;
  for (Symbol r : *f.registers()) names.push_back("L:" + r.name());
  for (Symbol r : *g.registers()) names.push_back("R:" + r.name());
  return make_alphabet_ref(fresh_alphabet(names, {f.output().get()}));
}

/// Reachable product of f, g and an optional DFA; `output(qf, qg, ql)` picks the final image.
template <class OutputFn>
Sst product_sst(const Sst& f, const Sst& g, const Dfa* dfa, OutputFn output_fn) {
  require_same_signature(f, g);
  const Alphabet& input = f.input();
  AlphabetRef output = f.output();
  AlphabetRef registers = paired_registers(f, g);
  const auto offset = static_cast<std::uint32_t>(f.num_registers());

  using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;
  std::map<Triple, std::size_t> index;
  std::vector<Triple> states;
  std::queue<Triple> todo;
  auto intern = [&](const Triple& t) {
    auto [it, inserted] = index.try_emplace(t, states.size());
    if (inserted) {
      states.push_back(t);
      todo.push(t);
    }
    return it->second;
  };
  intern({f.initial(), g.initial(), dfa ? dfa->initial() : 0});

  std::vector<std::vector<SstTransition>> delta;
  while (!todo.empty()) {
    auto [qf, qg, ql] = todo.front();
    todo.pop();
    std::vector<SstTransition> row;
    for (std::size_t c = 0; c < input.size(); ++c) {
      const SstTransition& tf = f.transition(qf, c);
      const SstTransition& tg = g.transition(qg, g.input().index_of(input[c]));
      std::size_t nl = dfa ? dfa->next(ql, input[c]) : 0;
      std::vector<Image> images;
      for (const Image& img : tf.assign.images()) images.push_back(img);
      for (const Image& img : tg.assign.images()) images.push_back(shift_image(img, offset));
      std::size_t next = intern({tf.next, tg.next, nl});
      row.push_back({next, RegAssignment(registers, output, std::move(images))});
    }
    delta.push_back(std::move(row));
  }

  std::vector<std::string> names;
  std::vector<Image> final_output;
  for (const auto& [qf, qg, ql] : states) {
    std::string name = f.states()[qf] + "," + g.states()[qg];
    if (dfa) name += "," + dfa->states()[ql];
    names.push_back(name);
    final_output.push_back(output_fn(qf, qg, ql, offset));
  }
  std::vector<Word> init = f.initial_values();
  init.insert(init.end(), g.initial_values().begin(), g.initial_values().end());
  return Sst(input, output, std::move(names), 0, registers, std::move(init), std::move(delta), std::move(final_output));
}

}  // namespace detail

/// w -> f(w) if w is in L, g(w) otherwise.
inline Sst conditional_combine(const Sst& f, const Sst& g, const Dfa& lang) {
  if (!lang.alphabet().same_set(f.input())) throw AlphabetMismatch("language and machines read different alphabets");
  return detail::product_sst(f, g, &lang, [&](std::size_t qf, std::size_t qg, std::size_t ql, std::uint32_t offset) {
    return lang.is_accepting(ql) ? f.final_output(qf) : detail::shift_image(g.final_output(qg), offset);
  });
}

/// w -> f(w) g(w).
inline Sst concat_combine(const Sst& f, const Sst& g) {
  return detail::product_sst(f, g, nullptr, [&](std::size_t qf, std::size_t qg, std::size_t, std::uint32_t offset) {
    Image img = f.final_output(qf);
    Image right = detail::shift_image(g.final_output(qg), offset);
    img.insert(img.end(), right.begin(), right.end());
    return img;
  });
}

// ---------------------------------------------------------------------------
// Transition monoid images

/// psi(w): for each state q, the state reached and the composed assignment.
inline WreathElement<RegAssignment> transition_image(const Sst& t, const Word& w) {
  auto e = WreathElement<RegAssignment>::identity(t.num_states(), t.identity_assignment());
  for (Symbol c : w) {
    std::size_t i = t.letter(c);
    for (auto& [q, m] : e.map) {
      const SstTransition& tr = t.transition(q, i);
      m = compose_assignments(m, tr.assign);
      q = tr.next;
    }
  }
  return e;
}

/// phi(w): the erased variant of transition_image.
inline WreathElement<Shape> erased_transition_image(const Sst& t, const Word& w) {
  auto e = WreathElement<Shape>::identity(t.num_states(), Shape::identity(t.registers()));
  for (Symbol c : w) {
    std::size_t i = t.letter(c);
    for (auto& [q, m] : e.map) {
      const SstTransition& tr = t.transition(q, i);
      m = compose_shapes(m, erase(tr.assign));
      q = tr.next;
    }
  }
  return e;
}

inline WreathElement<Shape> erase(const WreathElement<RegAssignment>& e) {
  WreathElement<Shape> out;
  for (const auto& [q, m] : e.map) out.map.emplace_back(q, erase(m));
  return out;
}

/// The letter-wise generators psi(c).
inline std::vector<WreathElement<RegAssignment>> transition_generators(const Sst& t) {
  std::vector<WreathElement<RegAssignment>> out;
  for (Symbol c : t.input()) out.push_back(transition_image(t, Word{c}));
  return out;
}

/// Copyless SST computing, on input s, the j-th label of register r in the
/// assignment psi(s)(q), provided the erased assignment phi(s)(q) equals alpha;
/// otherwise it outputs the empty word.
///
/// States are pairs (current state, current shape), reachable from (q, id).
/// For every reachable shape beta there is a block of registers (beta, r', i)
/// holding the i-th label of r'; only the block of the current shape is live.
inline Sst shape_label_extractor(const Sst& t, std::size_t q, Symbol r, const Shape& alpha, std::size_t j) {
  if (!check_copyless(t)) throw ValidationError("shape_label_extractor needs a copyless SST");
  const std::size_t ri = t.registers()->index_of(r);
  if (alpha.size() != t.num_registers()) throw ValidationError("shape is over the wrong registers");
  if (j > alpha.image(ri).size()) throw ValidationError("label index exceeds |alpha(r)|");
  const Alphabet& input = t.input();
  const std::size_t nreg = t.num_registers();

  using Node = std::pair<std::size_t, Shape>;
  std::map<Node, std::size_t> index;
  std::vector<Node> nodes;
  std::map<Shape, std::size_t> shape_block;  // shape -> first register index of its block
  std::vector<Shape> shapes;
  std::queue<std::size_t> todo;
  auto intern = [&](const Node& n) {
    auto [it, inserted] = index.try_emplace(n, nodes.size());
    if (inserted) {
      nodes.push_back(n);
      todo.push(it->second);
      if (!shape_block.contains(n.second)) {
        shape_block.emplace(n.second, 0);
        shapes.push_back(n.second);
      }
    }
    return it->second;
  };
  intern({q, Shape::identity(t.registers())});

  struct Pending {
    std::size_t from;
    std::size_t letter;
    std::size_t to;
  };
  std::vector<Pending> edges;
  while (!todo.empty()) {
    std::size_t n = todo.front();
    todo.pop();
    auto [p, beta] = nodes[n];
    for (std::size_t c = 0; c < input.size(); ++c) {
      const SstTransition& tr = t.transition(p, c);
      edges.push_back({n, c, intern({tr.next, compose_shapes(beta, erase(tr.assign))})});
    }
  }

  // Register layout: for each shape, for each r', |beta(r')|+1 registers.
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> label_base(shapes.size(), std::vector<std::size_t>(nreg));
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    shape_block[shapes[s]] = s;
    for (std::size_t x = 0; x < nreg; ++x) {
      label_base[s][x] = names.size();
      for (std::size_t i = 0; i <= shapes[s].image(x).size(); ++i)
        names.push_back("s" + std::to_string(s) + "." + (*t.registers())[x].name() + "." + std::to_string(i));
    }
  }
  AlphabetRef output = t.output();
  AlphabetRef registers = make_alphabet_ref(fresh_alphabet(names, {output.get()}));

  std::vector<std::vector<SstTransition>> delta(nodes.size(), std::vector<SstTransition>(input.size()));
  for (const Pending& e : edges) {
    const auto& [p, beta] = nodes[e.from];
    const std::size_t sb = shape_block[beta];
    const std::size_t tb = shape_block[nodes[e.to].second];
    const SstTransition& tr = t.transition(p, e.letter);
    std::vector<Image> images(registers->size());
    // New labels of x: gamma(x) = v0 s1 v1 ... sm vm with the labels of each s_i spliced in.
    for (std::size_t x = 0; x < nreg; ++x) {
      std::vector<Image> labels(1);
      for (const Atom& a : tr.assign.image(x)) {
        if (!a.reg) {
          labels.back().push_back(a);
          continue;
        }
        const std::size_t len = beta.image(a.id).size();
        for (std::size_t i = 0; i <= len; ++i) {
          if (i) labels.emplace_back();
          labels.back().push_back(Atom::r(label_base[sb][a.id] + i));
        }
      }
      for (std::size_t i = 0; i < labels.size(); ++i) images[label_base[tb][x] + i] = std::move(labels[i]);
    }
    delta[e.from][e.letter] = SstTransition{e.to, RegAssignment(registers, output, std::move(images))};
  }

  std::vector<std::string> state_names;
  std::vector<Image> final_output;
  for (const auto& [p, beta] : nodes) {
    state_names.push_back(t.states()[p] + "/" + beta.str());
    if (beta == alpha)
      final_output.push_back({Atom::r(label_base[shape_block[beta]][ri] + j)});
    else
      final_output.emplace_back();
  }
  return Sst(input, output, std::move(state_names), 0, registers, std::vector<Word>(registers->size()),
             std::move(delta), std::move(final_output));
}

/// Constant C with |t(w)| <= C |w| + C for copyless t: the most letters one
/// transition writes, or the initial values plus one final output.
inline std::size_t emission_constant(const Sst& t) {
  auto letters = [](const Image& img) {
    return static_cast<std::size_t>(std::count_if(img.begin(), img.end(), [](const Atom& a) { return !a.reg; }));
  };
  std::size_t step = 0;
  for (const auto& row : t.delta())
    for (const SstTransition& tr : row) {
      std::size_t total = 0;
      for (const Image& img : tr.assign.images()) total += letters(img);
      step = std::max(step, total);
    }
  std::size_t init = 0;
  for (const Word& w : t.initial_values()) init += w.size();
  std::size_t fin = 0;
  for (const Image& img : t.final_outputs()) fin = std::max(fin, letters(img));
  return std::max(step, init + fin);
}

}  // namespace xduce
