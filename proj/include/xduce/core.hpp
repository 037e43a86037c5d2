#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xduce/error.hpp"
#include "xduce/symbol.hpp"

namespace xduce {

/// |w|_pi, the number of letters of w that belong to pi.
inline std::size_t count_occurrences(const Word& w, const std::vector<Symbol>& pi) {
  std::size_t n = 0;
  for (Symbol s : w)
    for (Symbol p : pi)
      if (s == p) {
        ++n;
        break;
      }
  return n;
}

inline std::size_t count_occurrences(const Word& w, Symbol c) {
  std::size_t n = 0;
  for (Symbol s : w) n += (s == c);
  return n;
}

/// Checked variant: pi and w must live over `alphabet`.
inline std::size_t count_occurrences(const Alphabet& alphabet, const Word& w, const std::vector<Symbol>& pi) {
  for (Symbol p : pi)
    if (!alphabet.contains(p)) throw ValidationError("count_occurrences: '" + p.name() + "' is not in the alphabet");
  require_word_over(alphabet, w);
  return count_occurrences(w, pi);
}

/// A morphism of free monoids, given by the image of each source letter.
class FreeMorphism {
 public:
  FreeMorphism() = default;

  FreeMorphism(Alphabet source, Alphabet target, std::vector<Word> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.size())
      throw ValidationError("morphism must give exactly one image per source letter");
    for (const Word& w : images_) require_word_over(target_, w, "morphism image");
  }

  FreeMorphism(Alphabet source, Alphabet target, const std::map<Symbol, Word>& images)
      : FreeMorphism(source, target, ordered_images(source, images)) {}

  static FreeMorphism identity(const Alphabet& a) {
    std::vector<Word> images;
    for (Symbol s : a) images.push_back(Word{s});
    return FreeMorphism(a, a, std::move(images));
  }

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  const Word& image(Symbol s) const { return images_[source_.index_of(s)]; }
  const Word& image_at(std::size_t i) const { return images_[i]; }
  const std::vector<Word>& images() const { return images_; }

  Word operator()(const Word& w) const {
    Word out;
    for (Symbol s : w) {
      std::size_t i = source_.find(s);
      if (i == source_.size()) throw ValidationError("morphism has no image for '" + s.name() + "'");
      out.append(images_[i]);
    }
    return out;
  }

  /// (g.after(f))(w) = g(f(w)).
  FreeMorphism after(const FreeMorphism& f) const {
    std::vector<Word> images;
    for (const Word& w : f.images_) images.push_back((*this)(w));
    return FreeMorphism(f.source_, target_, std::move(images));
  }

  friend bool operator==(const FreeMorphism&, const FreeMorphism&) = default;

 private:
  static std::vector<Word> ordered_images(const Alphabet& source, const std::map<Symbol, Word>& images) {
    std::vector<Word> out;
    for (Symbol s : source) {
      auto it = images.find(s);
      if (it == images.end()) throw ValidationError("morphism has no image for '" + s.name() + "'");
      out.push_back(it->second);
    }
    if (images.size() != source.size()) throw ValidationError("morphism has images for letters outside its source");
    return out;
  }

  Alphabet source_;
  Alphabet target_;
  std::vector<Word> images_;
};

inline Word apply_morphism(const FreeMorphism& h, const Word& w) { return h(w); }

/// Complete deterministic automaton.
class Dfa {
 public:
  Dfa() = default;

  /// delta[q][i] is the successor of q on alphabet[i].
  Dfa(Alphabet alphabet, std::vector<std::string> states, std::size_t initial, std::vector<bool> accepting,
      std::vector<std::vector<std::size_t>> delta)
      : alphabet_(std::move(alphabet)),
        states_(std::move(states)),
        initial_(initial),
        accepting_(std::move(accepting)),
        delta_(std::move(delta)) {
    if (states_.empty()) throw ValidationError("DFA needs at least one state");
    if (initial_ >= states_.size()) throw ValidationError("DFA initial state out of range");
    if (accepting_.size() != states_.size() || delta_.size() != states_.size())
      throw ValidationError("DFA tables do not match the state count");
    for (const auto& row : delta_) {
      if (row.size() != alphabet_.size()) throw ValidationError("DFA transition function must be total");
      for (std::size_t t : row)
        if (t >= states_.size()) throw ValidationError("DFA transition to unknown state");
    }
  }

  /// Language of all words.
  static Dfa universal(const Alphabet& a) {
    return Dfa(a, {"all"}, 0, {true}, {std::vector<std::size_t>(a.size(), 0)});
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t initial() const { return initial_; }
  bool is_accepting(std::size_t q) const { return accepting_[q]; }
  const std::vector<bool>& accepting() const { return accepting_; }
  std::size_t next(std::size_t q, Symbol s) const { return delta_[q][alphabet_.index_of(s)]; }
  std::size_t next_at(std::size_t q, std::size_t letter) const { return delta_[q][letter]; }
  const std::vector<std::vector<std::size_t>>& delta() const { return delta_; }

  std::size_t run(const Word& w) const {
    std::size_t q = initial_;
    for (Symbol s : w) {
      std::size_t i = alphabet_.find(s);
      if (i == alphabet_.size()) throw AlphabetMismatch("DFA input: symbol '" + s.name() + "' is outside the alphabet");
      q = delta_[q][i];
    }
    return q;
  }

  bool accepts(const Word& w) const { return accepting_[run(w)]; }

 private:
  Alphabet alphabet_;
  std::vector<std::string> states_;
  std::size_t initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<std::vector<std::size_t>> delta_;
};

inline bool dfa_accepts(const Dfa& d, const Word& w) { return d.accepts(w); }

}  // namespace xduce
