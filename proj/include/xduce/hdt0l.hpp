#pragma once

// HDT0L systems and their translations to and from streaming string transducers.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "xduce/core.hpp"
#include "xduce/error.hpp"
#include "xduce/monoid.hpp"
#include "xduce/sst.hpp"
#include "xduce/symbol.hpp"

namespace xduce {

/// w1...wn -> h'(h_{w1}(...h_{wn}(d)...)).
class Hdt0lSystem {
 public:
  Hdt0lSystem() = default;

  /// rules[i] is the endomorphism of the working alphabet for input letter i.
  Hdt0lSystem(Alphabet input, Alphabet output, Alphabet working, Word initial, std::vector<FreeMorphism> rules,
              FreeMorphism final_morphism)
      : input_(std::move(input)),
        output_(std::move(output)),
        working_(std::move(working)),
        initial_(std::move(initial)),
        rules_(std::move(rules)),
        final_(std::move(final_morphism)) {
    require_word_over(working_, initial_, "initial word");
    if (rules_.size() != input_.size()) throw ValidationError("HDT0L system needs one morphism per input letter");
    for (const FreeMorphism& h : rules_)
      if (!(h.source() == working_) || !h.target().same_set(working_))
        throw ValidationError("HDT0L rules must be endomorphisms of the working alphabet");
    if (!(final_.source() == working_) || !final_.target().same_set(output_))
      throw ValidationError("final morphism must map the working alphabet to the output alphabet");
  }

  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  const Alphabet& working() const { return working_; }
  const Word& initial_word() const { return initial_; }
  const FreeMorphism& rule(std::size_t letter) const { return rules_[letter]; }
  const FreeMorphism& rule(Symbol c) const { return rules_[input_.index_of(c)]; }
  const std::vector<FreeMorphism>& rules() const { return rules_; }
  const FreeMorphism& final_morphism() const { return final_; }

  Word operator()(const Word& w) const {
    Word x = initial_;
    for (std::size_t i = w.size(); i-- > 0;) {
      std::size_t c = input_.find(w[i]);
      if (c == input_.size())
        throw AlphabetMismatch("HDT0L input: symbol '" + w[i].name() + "' is outside the alphabet");
      x = rules_[c](x);
    }
    return final_(x);
  }

 private:
  Alphabet input_;
  Alphabet output_;
  Alphabet working_;
  Word initial_;
  std::vector<FreeMorphism> rules_;
  FreeMorphism final_;
};

inline Word run_hdt0l(const Hdt0lSystem& s, const Word& w) { return s(w); }

/// String-keyed construction helper; letters without an explicit image are fixed.
class Hdt0lBuilder {
 public:
  Hdt0lBuilder(Alphabet input, Alphabet output, Alphabet working, const std::string& initial)
      : input_(std::move(input)), output_(std::move(output)), working_(std::move(working)) {
    initial_ = Word::parse(initial);
    for (std::size_t c = 0; c < input_.size(); ++c) {
      std::vector<Word> images;
      for (Symbol x : working_) images.push_back(Word{x});
      rules_.push_back(std::move(images));
    }
    final_.assign(working_.size(), Word{});
  }

  Hdt0lBuilder& rule(const std::string& letter, const std::string& x, const std::string& image) {
    rules_[input_.index_of(Symbol(letter))][working_.index_of(Symbol(x))] = Word::parse(image);
    return *this;
  }

  Hdt0lBuilder& final(const std::string& x, const std::string& image) {
    final_[working_.index_of(Symbol(x))] = Word::parse(image);
    return *this;
  }

  Hdt0lSystem build() const {
    std::vector<FreeMorphism> rules;
    for (const auto& images : rules_) rules.emplace_back(working_, working_, images);
    return Hdt0lSystem(input_, output_, working_, initial_, std::move(rules),
                       FreeMorphism(working_, output_, final_));
  }

 private:
  Alphabet input_;
  Alphabet output_;
  Alphabet working_;
  Word initial_;
  std::vector<std::vector<Word>> rules_;
  std::vector<Word> final_;
};

namespace detail {

/// Images of an endomorphism as register images (letters of the working alphabet as registers).
inline std::vector<Image> endo_images(const FreeMorphism& h) {
  std::vector<Image> out;
  for (const Word& w : h.images()) {
    Image img;
    for (Symbol x : w) img.push_back(Atom::r(h.source().index_of(x)));
    out.push_back(std::move(img));
  }
  return out;
}

}  // namespace detail

inline bool check_layered_hdt0l(const Hdt0lSystem& s, const LayerPartition& blocks) {
  auto layer = layer_of(s.working(), blocks);
  for (const FreeMorphism& h : s.rules())
    if (!images_layered(detail::endo_images(h), layer)) return false;
  return true;
}

/// Partition of the working alphabet into k+1 blocks, if one exists.
inline std::optional<LayerPartition> infer_layering_hdt0l(const Hdt0lSystem& s, std::size_t k,
                                                          std::size_t bound = kLayeringBound) {
  std::vector<std::vector<Image>> images;
  for (const FreeMorphism& h : s.rules()) images.push_back(detail::endo_images(h));
  std::vector<const std::vector<Image>*> families;
  for (const auto& f : images) families.push_back(&f);
  return infer_layering_images(s.working(), families, k, bound);
}

/// Single-state SST with one register per working letter (renamed away from the output letters).
inline Sst hdt0l_to_sst(const Hdt0lSystem& s) {
  AlphabetRef output = make_alphabet_ref(s.output());
  AlphabetRef registers = make_alphabet_ref(fresh_alphabet(s.working().names(), {&s.output()}));
  std::vector<SstTransition> row;
  for (const FreeMorphism& h : s.rules())
    row.push_back({0, RegAssignment(registers, output, detail::endo_images(h))});
  std::vector<Word> init;
  for (const Word& w : s.final_morphism().images()) init.push_back(w);
  Image out;
  for (Symbol x : s.initial_word()) out.push_back(Atom::r(s.working().index_of(x)));
  return Sst(s.input(), output, {"q"}, 0, registers, std::move(init), {std::move(row)}, {std::move(out)});
}

/// The same partition expressed over the registers of hdt0l_to_sst(s).
inline LayerPartition rename_partition(const Alphabet& from, const Alphabet& to, const LayerPartition& p) {
  LayerPartition out;
  for (const auto& block : p.blocks) {
    std::vector<Symbol> b;
    for (Symbol x : block) b.push_back(to[from.index_of(x)]);
    out.blocks.push_back(std::move(b));
  }
  return out;
}

struct LayeredHdt0l {
  Hdt0lSystem system;
  LayerPartition blocks;
};

/// k-layered SST (partition of its registers into k+1 blocks) to a
/// (k+1)-layered HDT0L system (k+2 blocks).
///
/// First the output letters are moved into registers "u:c" forming a new
/// bottom layer; then every (register, state) pair becomes a working letter
/// "r@q" whose image collects the contributions of all predecessor states.
inline LayeredHdt0l sst_to_hdt0l(const Sst& t, const LayerPartition& partition) {
  if (!check_layered(t, partition)) throw ValidationError("SST is not layered with respect to the given partition");
  const Alphabet& sigma = *t.output();
  const std::size_t ns = sigma.size();
  const std::size_t nr = t.num_registers();
  const std::size_t nq = t.num_states();
  auto reg_layer = layer_of(*t.registers(), partition);

  // Registers of T': 0..ns-1 hold the letters, ns.. are the original registers.
  auto rprime = [&](const Atom& a) -> std::size_t { return a.reg ? ns + a.id : sigma.index_of(Symbol::from_id(a.id)); };
  std::vector<std::string> base_names;
  for (Symbol c : sigma) base_names.push_back("u:" + c.name());
  for (Symbol r : *t.registers()) base_names.push_back(r.name());
  Alphabet rnames = fresh_alphabet(base_names, {});
  const std::size_t nrp = ns + nr;

  // State order: initial first, then declaration order.
  std::vector<std::size_t> order{t.initial()};
  for (std::size_t q = 0; q < nq; ++q)
    if (q != t.initial()) order.push_back(q);

  std::vector<std::string> delta_names;
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t r = 0; r < nrp; ++r) delta_names.push_back(rnames[r].name() + "@" + t.states()[q]);
  Alphabet working = fresh_alphabet(delta_names, {});
  auto letter = [&](std::size_t r, std::size_t q) { return working[q * nrp + r]; };

  Word d;
  for (std::size_t q : order)
    for (const Atom& a : t.final_output(q)) d.push_back(letter(rprime(a), q));

  std::vector<FreeMorphism> rules;
  for (std::size_t c = 0; c < t.input().size(); ++c) {
    std::vector<Word> images(working.size());
    for (std::size_t p : order) {
      const SstTransition& tr = t.transition(p, c);
      for (std::size_t r = 0; r < nrp; ++r) {
        Word& img = images[tr.next * nrp + r];
        if (r < ns) {
          img.push_back(letter(r, p));
        } else {
          for (const Atom& a : tr.assign.image(r - ns)) img.push_back(letter(rprime(a), p));
        }
      }
    }
    rules.emplace_back(working, working, std::move(images));
  }

  std::vector<Word> final_images(working.size());
  for (std::size_t r = 0; r < nrp; ++r)
    final_images[t.initial() * nrp + r] = r < ns ? Word{sigma[r]} : t.initial_values()[r - ns];

  LayerPartition blocks;
  blocks.blocks.resize(partition.blocks.size() + 1);
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t r = 0; r < nrp; ++r) blocks.blocks[r < ns ? 0 : reg_layer[r - ns] + 1].push_back(letter(r, q));

  LayeredHdt0l out{Hdt0lSystem(t.input(), sigma, working, std::move(d), std::move(rules),
                               FreeMorphism(working, sigma, std::move(final_images))),
                   std::move(blocks)};
  if (!check_layered_hdt0l(out.system, out.blocks))
    throw Error("sst_to_hdt0l produced a system that fails its layering check");
  return out;
}

/// Infers a k-layering of t first.
inline LayeredHdt0l sst_to_hdt0l(const Sst& t, std::size_t k) {
  auto p = infer_layering(t, k);
  if (!p) throw ValidationError("SST is not " + std::to_string(k) + "-layered");
  return sst_to_hdt0l(t, *p);
}

inline constexpr std::size_t kShapeStateBound = 100000;

struct LayeredSst {
  Sst machine;
  LayerPartition blocks;
};

/// (k+1)-layered HDT0L system (blocks D_0, ..., D_{k+1}) to a k-layered SST.
///
/// States are the copyless shapes over D_0 reachable from the identity, which
/// record h_{w1} o ... o h_{wn} restricted to D_0; registers D_1 u ... u D_{k+1}
/// hold h'(h_{w1}(...h_{wn}(r)...)).
inline LayeredSst layered_hdt0l_to_sst(const Hdt0lSystem& s, const LayerPartition& blocks,
                                       std::size_t state_bound = kShapeStateBound) {
  if (blocks.blocks.empty()) throw ValidationError("partition needs at least one block");
  if (!check_layered_hdt0l(s, blocks)) throw ValidationError("system is not layered with respect to the partition");
  Alphabet base(blocks.blocks[0]);
  std::vector<Symbol> upper;
  for (std::size_t i = 1; i < blocks.blocks.size(); ++i)
    upper.insert(upper.end(), blocks.blocks[i].begin(), blocks.blocks[i].end());
  AlphabetRef output = make_alphabet_ref(s.output());
  std::vector<std::string> upper_names;
  for (Symbol x : upper) upper_names.push_back(x.name());
  Alphabet upper_alpha(upper);
  AlphabetRef registers = make_alphabet_ref(fresh_alphabet(upper_names, {&s.output()}));
  AlphabetRef d0ref = make_alphabet_ref(base);

  // Per input letter: h_c restricted to D_0 as a shape, and h_c on upper letters.
  std::vector<Shape> hc0;
  for (const FreeMorphism& h : s.rules()) {
    std::vector<std::vector<std::uint32_t>> images;
    for (Symbol x : base) {
      std::vector<std::uint32_t> img;
      for (Symbol y : h.image(x)) img.push_back(static_cast<std::uint32_t>(base.index_of(y)));
      images.push_back(std::move(img));
    }
    hc0.emplace_back(d0ref, std::move(images));
  }

  std::map<Shape, std::size_t> index;
  std::vector<Shape> states;
  std::queue<std::size_t> todo;
  auto intern = [&](const Shape& a) {
    auto [it, inserted] = index.try_emplace(a, states.size());
    if (inserted) {
      if (states.size() >= state_bound)
        throw SizeError("layered_hdt0l_to_sst: more than " + std::to_string(state_bound) + " reachable shapes");
      states.push_back(a);
      todo.push(it->second);
    }
    return it->second;
  };
  intern(Shape::identity(d0ref));

  // (h' o alpha)^subst on a word over D: D_0 letters become constants, upper letters registers.
  auto evaluate = [&](const Shape& alpha, const Word& w) {
    Image img;
    for (Symbol y : w) {
      std::size_t i = base.find(y);
      if (i == base.size()) {
        img.push_back(Atom::r(upper_alpha.index_of(y)));
        continue;
      }
      for (std::uint32_t z : alpha.image(i))
        for (Symbol c : s.final_morphism().image(base[z])) img.push_back(Atom::sym(c));
    }
    return img;
  };

  std::vector<std::vector<SstTransition>> delta_table;
  while (!todo.empty()) {
    std::size_t n = todo.front();
    todo.pop();
    Shape alpha = states[n];
    std::vector<SstTransition> row;
    for (std::size_t c = 0; c < s.input().size(); ++c) {
      std::size_t next = intern(compose_shapes(alpha, hc0[c]));
      std::vector<Image> images;
      for (Symbol r : upper) images.push_back(evaluate(alpha, s.rule(c).image(r)));
      row.push_back({next, RegAssignment(registers, output, std::move(images))});
    }
    delta_table.push_back(std::move(row));
  }

  std::vector<std::string> names;
  std::vector<Image> final_output;
  for (std::size_t n = 0; n < states.size(); ++n) {
    names.push_back("<" + states[n].str() + ">");
    final_output.push_back(evaluate(states[n], s.initial_word()));
  }
  std::vector<Word> init;
  for (Symbol r : upper) init.push_back(s.final_morphism().image(r));

  LayerPartition out_blocks;
  for (std::size_t i = 1; i < blocks.blocks.size(); ++i) {
    std::vector<Symbol> b;
    for (Symbol x : blocks.blocks[i]) b.push_back((*registers)[upper_alpha.index_of(x)]);
    out_blocks.blocks.push_back(std::move(b));
  }
  if (out_blocks.blocks.empty()) out_blocks.blocks.emplace_back();
  return {Sst(s.input(), output, std::move(names), 0, registers, std::move(init), std::move(delta_table),
              std::move(final_output)),
          std::move(out_blocks)};
}

/// map(f): w1 # ... # wn -> f(w1) # ... # f(wn).
///
/// The working alphabet is D u S u {#, X}; the start word is X d. Reading #
/// flushes the current copy of d through h' and starts a new one.
inline Hdt0lSystem map_hdt0l(const Hdt0lSystem& s, Symbol sep) {
  if (s.input().contains(sep) || s.output().contains(sep))
    throw ValidationError("separator '" + sep.name() + "' collides with the input or output alphabet");
  Alphabet out_letters = alphabet_union(s.output(), Alphabet({sep}));
  Alphabet renamed = fresh_alphabet(s.working().names(), {&out_letters});
  Alphabet x_alpha({fresh_symbol("X", {&out_letters, &renamed})});
  std::vector<Symbol> letters = renamed.symbols();
  letters.insert(letters.end(), out_letters.begin(), out_letters.end());
  letters.push_back(x_alpha[0]);
  Alphabet working(letters);
  const std::size_t nd = renamed.size();
  const Symbol X = x_alpha[0];

  auto rename = [&](const Word& w) {
    Word out;
    for (Symbol y : w) out.push_back(renamed[s.working().index_of(y)]);
    return out;
  };
  Word d = rename(s.initial_word());
  Word start{X};
  start.append(d);

  std::vector<Symbol> input_letters = s.input().symbols();
  input_letters.push_back(sep);
  Alphabet input(input_letters);

  std::vector<FreeMorphism> rules;
  for (const FreeMorphism& h : s.rules()) {
    std::vector<Word> images;
    for (std::size_t i = 0; i < nd; ++i) images.push_back(rename(h.image_at(i)));
    for (Symbol c : out_letters) images.push_back(Word{c});
    images.push_back(Word{X});
    rules.emplace_back(working, working, std::move(images));
  }
  {
    std::vector<Word> images;
    for (std::size_t i = 0; i < nd; ++i) images.push_back(s.final_morphism().image_at(i));
    for (Symbol c : out_letters) images.push_back(Word{c});
    Word xi{X};
    xi.append(d);
    xi.push_back(sep);
    images.push_back(std::move(xi));
    rules.emplace_back(working, working, std::move(images));
  }
  std::vector<Word> final_images;
  for (std::size_t i = 0; i < nd; ++i) final_images.push_back(s.final_morphism().image_at(i));
  for (Symbol c : out_letters) final_images.push_back(Word{c});
  final_images.emplace_back();
  return Hdt0lSystem(std::move(input), out_letters, std::move(working), std::move(start), std::move(rules),
                     FreeMorphism(Alphabet(letters), out_letters, std::move(final_images)));
}

/// Equivalent system whose initial word uses every letter at most once: the
/// working alphabet becomes D x {1..n} (spelled "x.i"), one copy per position of d.
inline LayeredHdt0l disjointify_initial_word(const Hdt0lSystem& s, const LayerPartition& blocks) {
  const std::size_t n = s.initial_word().size();
  const std::size_t nd = s.working().size();
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i)
    for (Symbol x : s.working()) names.push_back(x.name() + "." + std::to_string(i));
  Alphabet working = fresh_alphabet(names, {});
  auto copy = [&](Symbol x, std::size_t i) { return working[i * nd + s.working().index_of(x)]; };

  Word d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(copy(s.initial_word()[i], i));
  std::vector<FreeMorphism> rules;
  for (const FreeMorphism& h : s.rules()) {
    std::vector<Word> images;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t x = 0; x < nd; ++x) {
        Word w;
        for (Symbol y : h.image_at(x)) w.push_back(copy(y, i));
        images.push_back(std::move(w));
      }
    rules.emplace_back(working, working, std::move(images));
  }
  std::vector<Word> final_images;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < nd; ++x) final_images.push_back(s.final_morphism().image_at(x));
  auto layer = layer_of(s.working(), blocks);
  LayerPartition out_blocks;
  out_blocks.blocks.resize(blocks.blocks.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < nd; ++x) out_blocks.blocks[layer[x]].push_back(working[i * nd + x]);
  return {Hdt0lSystem(s.input(), s.output(), working, std::move(d), std::move(rules),
                      FreeMorphism(working, s.output(), std::move(final_images))),
          std::move(out_blocks)};
}

/// map(f) for a layered system, with a layering of the result.
///
/// The output letters and the separator, which the flush morphism may copy
/// freely, form a new bottom block; the working letters keep their relative
/// order above it and X joins the top block. With k+1 input blocks the result
/// therefore has k+2 blocks.
inline LayeredHdt0l map_hdt0l_layered(const Hdt0lSystem& s, const LayerPartition& blocks, Symbol sep) {
  LayeredHdt0l dj = disjointify_initial_word(s, blocks);
  Hdt0lSystem m = map_hdt0l(dj.system, sep);
  const std::size_t nd = dj.system.working().size();
  const std::size_t no = dj.system.output().size() + 1;
  auto layer = layer_of(dj.system.working(), dj.blocks);
  LayerPartition out;
  out.blocks.resize(dj.blocks.blocks.size() + 1);
  for (std::size_t i = 0; i < nd; ++i) out.blocks[layer[i] + 1].push_back(m.working()[i]);
  for (std::size_t i = 0; i < no; ++i) out.blocks[0].push_back(m.working()[nd + i]);
  out.blocks.back().push_back(m.working()[nd + no]);
  if (!check_layered_hdt0l(m, out)) throw Error("map_hdt0l_layered produced an invalid layering");
  return {std::move(m), std::move(out)};
}

}  // namespace xduce
