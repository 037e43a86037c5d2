#pragma once

// Symbols, alphabets and words.
//
// Symbols are arbitrary non-empty strings, interned once per process so that
// words compare letter by letter in O(1). Composite alphabets (underlined
// copies, disjoint unions, products with an index set) are built with a fixed
// name mangling:
//
//   underline      x  ->  "_x"
//   disjoint union x  ->  "L:x" / "R:x"
//   product        x  ->  "i:x"   (i a natural number)

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xduce/error.hpp"

namespace xduce {

namespace detail {

class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = ids_.try_emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
  }

  const std::string& name(std::uint32_t id) const {
    std::shared_lock lock(mutex_);
    return names_[id];
  }

 private:
  SymbolTable() { names_.emplace_back(); }  // id 0 is the invalid symbol

  mutable std::shared_mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

}  // namespace detail

/// An interned symbol name.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name) {
    if (name.empty()) throw ValidationError("symbol names must be non-empty");
    id_ = detail::SymbolTable::instance().intern(name);
  }

  /// Rebuilds a symbol from id(); the id must come from an existing symbol.
  static Symbol from_id(std::uint32_t id) {
    Symbol s;
    s.id_ = id;
    return s;
  }

  const std::string& name() const { return detail::SymbolTable::instance().name(id_); }
  std::uint32_t id() const { return id_; }
  bool valid() const { return id_ != 0; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

 private:
  std::uint32_t id_ = 0;
};

inline Symbol underlined(Symbol s) { return Symbol("_" + s.name()); }
inline Symbol left_tagged(Symbol s) { return Symbol("L:" + s.name()); }
inline Symbol right_tagged(Symbol s) { return Symbol("R:" + s.name()); }
inline Symbol indexed(std::size_t i, Symbol s) { return Symbol(std::to_string(i) + ":" + s.name()); }

}  // namespace xduce

template <>
struct std::hash<xduce::Symbol> {
  std::size_t operator()(xduce::Symbol s) const noexcept { return std::hash<std::uint32_t>{}(s.id()); }
};

namespace xduce {

/// Ordered list of distinct symbols.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (!symbols_[i].valid()) throw ValidationError("alphabet contains an invalid symbol");
      if (!index_.try_emplace(symbols_[i], i).second)
        throw ValidationError("duplicate symbol '" + symbols_[i].name() + "' in alphabet");
    }
  }

  Alphabet(std::initializer_list<std::string_view> names) : Alphabet(from_names(names)) {}

  template <class Range>
  static Alphabet from_names(const Range& names) {
    std::vector<Symbol> symbols;
    for (const auto& n : names) symbols.emplace_back(std::string_view(n));
    return Alphabet(std::move(symbols));
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  bool contains(Symbol s) const { return index_.contains(s); }

  std::size_t index_of(Symbol s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw AlphabetMismatch("symbol '" + s.name() + "' is not in the alphabet");
    return it->second;
  }

  /// Index of s, or size() when absent.
  std::size_t find(Symbol s) const {
    auto it = index_.find(s);
    return it == index_.end() ? symbols_.size() : it->second;
  }

  bool same_set(const Alphabet& other) const {
    if (size() != other.size()) return false;
    for (Symbol s : symbols_)
      if (!other.contains(s)) return false;
    return true;
  }

  bool disjoint_from(const Alphabet& other) const {
    for (Symbol s : symbols_)
      if (other.contains(s)) return false;
    return true;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(s.name());
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<Symbol, std::size_t> index_;
};

inline Alphabet underline_alphabet(const Alphabet& a) {
  std::vector<Symbol> out;
  for (Symbol s : a) out.push_back(underlined(s));
  return Alphabet(std::move(out));
}

inline Alphabet disjoint_union(const Alphabet& a, const Alphabet& b) {
  std::vector<Symbol> out;
  for (Symbol s : a) out.push_back(left_tagged(s));
  for (Symbol s : b) out.push_back(right_tagged(s));
  return Alphabet(std::move(out));
}

/// {0,...,n-1} x a, enumerated index-major.
inline Alphabet product_alphabet(std::size_t n, const Alphabet& a) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < n; ++i)
    for (Symbol s : a) out.push_back(indexed(i, s));
  return Alphabet(std::move(out));
}

/// Union preserving the order of first occurrence.
inline Alphabet alphabet_union(const Alphabet& a, const Alphabet& b) {
  std::vector<Symbol> out = a.symbols();
  for (Symbol s : b)
    if (!a.contains(s)) out.push_back(s);
  return Alphabet(std::move(out));
}

/// Finite sequence of symbols.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Symbol> letters) : letters_(letters) {}

  /// Parses space-separated symbol tokens; the empty string gives the empty word.
  static Word parse(std::string_view text) {
    std::vector<Symbol> letters;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\n') ++j;
      if (j > i) letters.emplace_back(text.substr(i, j - i));
      i = j;
    }
    return Word(std::move(letters));
  }

  /// Each character of text is one symbol.
  static Word from_chars(std::string_view text) {
    std::vector<Symbol> letters;
    for (char c : text) letters.emplace_back(std::string_view(&c, 1));
    return Word(std::move(letters));
  }

  template <class Range>
  static Word from_names(const Range& names) {
    std::vector<Symbol> letters;
    for (const auto& n : names) letters.emplace_back(std::string_view(n));
    return Word(std::move(letters));
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Symbol operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  const std::vector<Symbol>& letters() const { return letters_; }
  std::span<const Symbol> span() const { return letters_; }

  void push_back(Symbol s) { letters_.push_back(s); }
  void append(const Word& w) { letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end()); }
  void append(std::span<const Symbol> w) { letters_.insert(letters_.end(), w.begin(), w.end()); }

  Word substr(std::size_t from, std::size_t count) const {
    return Word(std::vector<Symbol>(letters_.begin() + static_cast<std::ptrdiff_t>(from),
                                    letters_.begin() + static_cast<std::ptrdiff_t>(from + count)));
  }

  Word repeated(std::size_t n) const {
    Word out;
    out.letters_.reserve(letters_.size() * n);
    for (std::size_t i = 0; i < n; ++i) out.append(*this);
    return out;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(letters_.size());
    for (Symbol s : letters_) out.push_back(s.name());
    return out;
  }

  /// Space-separated rendering, the inverse of parse().
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += ' ';
      out += letters_[i].name();
    }
    return out;
  }

  friend Word operator+(Word a, const Word& b) {
    a.append(b);
    return a;
  }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> letters_;
};

inline void require_word_over(const Alphabet& a, const Word& w, std::string_view what = "word") {
  for (Symbol s : w)
    if (!a.contains(s))
      throw AlphabetMismatch(std::string(what) + ": symbol '" + s.name() + "' is outside the alphabet");
}

/// All words over a of length at most max_len, shortest first.
inline std::vector<Word> words_up_to(const Alphabet& a, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (Symbol s : a) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace xduce

template <>
struct std::hash<xduce::Word> {
  std::size_t operator()(const xduce::Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (xduce::Symbol s : w) h = (h ^ s.id()) * 1099511628211ull;
    return h;
  }
};
