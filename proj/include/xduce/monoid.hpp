#pragma once

// Register-assignment monoids.
//
// A register assignment over registers R and output letters S maps every
// register to a word over R and S. Assignments compose by substitution:
// (a * b)(r) is b(r) with every register s replaced by a(s), so that the
// induced valuation update satisfies dagger(a * b) = dagger(b) o dagger(a).
// In other words a happens first.
//
// Shapes are assignments without output letters. The wreath product M wr Q
// pairs a state map with a payload of M per state.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xduce/core.hpp"
#include "xduce/error.hpp"
#include "xduce/symbol.hpp"

namespace xduce {

using AlphabetRef = std::shared_ptr<const Alphabet>;

inline AlphabetRef make_alphabet_ref(Alphabet a) { return std::make_shared<const Alphabet>(std::move(a)); }

/// One letter of a register image: either register number `id` or output symbol with id `id`.
struct Atom {
  bool reg = false;
  std::uint32_t id = 0;

  static Atom r(std::size_t index) { return Atom{true, static_cast<std::uint32_t>(index)}; }
  static Atom sym(Symbol s) { return Atom{false, s.id()}; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

using Image = std::vector<Atom>;

namespace detail {

inline Symbol symbol_of(const Atom& a) { return Symbol::from_id(a.id); }

inline bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b) { return a == b || (a && b && *a == *b); }

}  // namespace detail

/// Register assignment R -> (S u R)*.
class RegAssignment {
 public:
  RegAssignment() = default;

  RegAssignment(AlphabetRef registers, AlphabetRef output, std::vector<Image> images)
      : registers_(std::move(registers)), output_(std::move(output)), images_(std::move(images)) {
    if (!registers_ || !output_) throw ValidationError("assignment needs register and output alphabets");
    if (!registers_->disjoint_from(*output_))
      throw ValidationError("register names must be disjoint from output letters");
    if (images_.size() != registers_->size()) throw ValidationError("assignment must be total on its registers");
    for (const Image& img : images_)
      for (const Atom& a : img) {
        if (a.reg && a.id >= registers_->size()) throw ValidationError("assignment mentions an unknown register");
        if (!a.reg && !output_->contains(detail::symbol_of(a)))
          throw ValidationError("assignment mentions a letter outside the output alphabet");
      }
  }

  /// Skips validation; for results of operations on already valid assignments.
  struct Trusted {};
  RegAssignment(Trusted, AlphabetRef registers, AlphabetRef output, std::vector<Image> images)
      : registers_(std::move(registers)), output_(std::move(output)), images_(std::move(images)) {}

  /// Builds images from words over R u S; every register must be mapped.
  static RegAssignment from_words(AlphabetRef registers, AlphabetRef output, const std::map<Symbol, Word>& words) {
    std::vector<Image> images(registers->size());
    std::vector<bool> seen(registers->size(), false);
    for (const auto& [r, w] : words) {
      std::size_t i = registers->find(r);
      if (i == registers->size()) throw ValidationError("'" + r.name() + "' is not a register");
      images[i] = parse_image(*registers, *output, w);
      seen[i] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw ValidationError("register '" + (*registers)[i].name() + "' has no image");
    return RegAssignment(std::move(registers), std::move(output), std::move(images));
  }

  static Image parse_image(const Alphabet& registers, const Alphabet& output, const Word& w) {
    Image img;
    for (Symbol s : w) {
      std::size_t i = registers.find(s);
      if (i != registers.size())
        img.push_back(Atom::r(i));
      else if (output.contains(s))
        img.push_back(Atom::sym(s));
      else
        throw ValidationError("'" + s.name() + "' is neither a register nor an output letter");
    }
    return img;
  }

  static RegAssignment identity(AlphabetRef registers, AlphabetRef output) {
    std::vector<Image> images;
    for (std::size_t i = 0; i < registers->size(); ++i) images.push_back({Atom::r(i)});
    return RegAssignment(std::move(registers), std::move(output), std::move(images));
  }

  const AlphabetRef& registers() const { return registers_; }
  const AlphabetRef& output() const { return output_; }
  std::size_t size() const { return images_.size(); }
  const Image& image(std::size_t r) const { return images_[r]; }
  const std::vector<Image>& images() const { return images_; }

  Word image_word(std::size_t r) const {
    Word w;
    for (const Atom& a : images_[r]) w.push_back(a.reg ? (*registers_)[a.id] : detail::symbol_of(a));
    return w;
  }

  /// New valuation: every image with registers replaced by their old values.
  std::vector<Word> dagger(const std::vector<Word>& values) const {
    if (values.size() != images_.size()) throw ValidationError("valuation must give a value to every register");
    std::vector<Word> out(images_.size());
    for (std::size_t r = 0; r < images_.size(); ++r) out[r] = substitute(images_[r], values);
    return out;
  }

  /// Evaluates an arbitrary image (for instance an output word) under a valuation.
  static Word substitute(const Image& img, const std::vector<Word>& values) {
    std::vector<Symbol> letters;
    for (const Atom& a : img) {
      if (a.reg)
        letters.insert(letters.end(), values[a.id].begin(), values[a.id].end());
      else
        letters.push_back(Symbol::from_id(a.id));
    }
    return Word(std::move(letters));
  }

  /// a^subst applied to an image: registers replaced by their images under a.
  Image subst(const Image& img) const {
    Image out;
    for (const Atom& a : img) {
      if (a.reg)
        out.insert(out.end(), images_[a.id].begin(), images_[a.id].end());
      else
        out.push_back(a);
    }
    return out;
  }

  friend bool operator==(const RegAssignment& a, const RegAssignment& b) {
    return a.images_ == b.images_ && detail::same_alphabet(a.registers_, b.registers_) &&
           detail::same_alphabet(a.output_, b.output_);
  }
  friend bool operator<(const RegAssignment& a, const RegAssignment& b) { return a.images_ < b.images_; }

 private:
  AlphabetRef registers_;
  AlphabetRef output_;
  std::vector<Image> images_;
};

inline void require_compatible(const RegAssignment& a, const RegAssignment& b) {
  if (!detail::same_alphabet(a.registers(), b.registers()) || !detail::same_alphabet(a.output(), b.output()))
    throw AlphabetMismatch("assignments over different registers or output letters");
}

/// a * b = a^subst o b.
inline RegAssignment compose_assignments(const RegAssignment& a, const RegAssignment& b) {
  require_compatible(a, b);
  std::vector<Image> images;
  images.reserve(b.size());
  for (const Image& img : b.images()) images.push_back(a.subst(img));
  return RegAssignment(RegAssignment::Trusted{}, a.registers(), a.output(), std::move(images));
}

inline std::vector<Word> dagger_apply(const RegAssignment& a, const std::vector<Word>& values) {
  return a.dagger(values);
}

inline bool images_copyless(const std::vector<Image>& images, std::size_t num_registers) {
  std::vector<int> uses(num_registers, 0);
  for (const Image& img : images)
    for (const Atom& a : img)
      if (a.reg && ++uses[a.id] > 1) return false;
  return true;
}

inline bool is_copyless(const RegAssignment& a) { return images_copyless(a.images(), a.size()); }

/// Register assignment without output letters.
class Shape {
 public:
  Shape() = default;
  Shape(AlphabetRef registers, std::vector<std::vector<std::uint32_t>> images)
      : registers_(std::move(registers)), images_(std::move(images)) {
    if (!registers_ || images_.size() != registers_->size())
      throw ValidationError("shape must be total on its registers");
    for (const auto& img : images_)
      for (std::uint32_t r : img)
        if (r >= images_.size()) throw ValidationError("shape mentions an unknown register");
  }

  static Shape identity(AlphabetRef registers) {
    std::vector<std::vector<std::uint32_t>> images;
    for (std::uint32_t i = 0; i < registers->size(); ++i) images.push_back({i});
    return Shape(std::move(registers), std::move(images));
  }

  const AlphabetRef& registers() const { return registers_; }
  std::size_t size() const { return images_.size(); }
  const std::vector<std::uint32_t>& image(std::size_t r) const { return images_[r]; }
  const std::vector<std::vector<std::uint32_t>>& images() const { return images_; }

  bool copyless() const {
    std::vector<int> uses(images_.size(), 0);
    for (const auto& img : images_)
      for (std::uint32_t r : img)
        if (++uses[r] > 1) return false;
    return true;
  }

  std::string str() const {
    std::string out;
    for (std::size_t r = 0; r < images_.size(); ++r) {
      if (r) out += ", ";
      out += (*registers_)[r].name() + "->";
      if (images_[r].empty()) out += "eps";
      for (std::size_t i = 0; i < images_[r].size(); ++i) out += (i ? " " : "") + (*registers_)[images_[r][i]].name();
    }
    return out;
  }

  friend bool operator==(const Shape& a, const Shape& b) { return a.images_ == b.images_; }
  friend auto operator<=>(const Shape& a, const Shape& b) { return a.images_ <=> b.images_; }

 private:
  AlphabetRef registers_;
  std::vector<std::vector<std::uint32_t>> images_;
};

inline Shape compose_shapes(const Shape& a, const Shape& b) {
  if (a.size() != b.size()) throw AlphabetMismatch("shapes over different registers");
  std::vector<std::vector<std::uint32_t>> images;
  images.reserve(b.size());
  for (const auto& img : b.images()) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s : img) out.insert(out.end(), a.image(s).begin(), a.image(s).end());
    images.push_back(std::move(out));
  }
  return Shape(a.registers(), std::move(images));
}

/// Deletes output letters.
inline Shape erase(const RegAssignment& a) {
  std::vector<std::vector<std::uint32_t>> images;
  for (const Image& img : a.images()) {
    std::vector<std::uint32_t> out;
    for (const Atom& x : img)
      if (x.reg) out.push_back(x.id);
    images.push_back(std::move(out));
  }
  return Shape(a.registers(), std::move(images));
}

/// Every copyless shape over `registers`.
inline std::vector<Shape> enumerate_copyless_shapes(const AlphabetRef& registers, std::size_t bound = 4) {
  const std::size_t n = registers->size();
  if (n > bound) throw SizeError("enumerate_copyless_shapes: " + std::to_string(n) + " registers exceed bound " +
                                 std::to_string(bound));
  std::vector<Shape> out;
  std::vector<std::vector<std::uint32_t>> images(n);
  // Registers are placed one by one; each either goes unused or is inserted at
  // some position of some image, which reaches every arrangement exactly once.
  std::function<void(std::uint32_t)> place = [&](std::uint32_t r) {
    if (r == n) {
      out.emplace_back(registers, images);
      return;
    }
    place(r + 1);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t pos = 0; pos <= images[t].size(); ++pos) {
        images[t].insert(images[t].begin() + static_cast<std::ptrdiff_t>(pos), r);
        place(r + 1);
        images[t].erase(images[t].begin() + static_cast<std::ptrdiff_t>(pos));
      }
  };
  place(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Shape together with the words between consecutive registers of each image.
struct ShapeLabels {
  Shape shape;
  AlphabetRef output;
  std::vector<std::vector<Word>> labels;  // labels[r].size() == shape.image(r).size() + 1

  friend bool operator==(const ShapeLabels& a, const ShapeLabels& b) {
    return a.shape == b.shape && a.labels == b.labels;
  }
};

inline ShapeLabels shape_label_split(const RegAssignment& a) {
  if (!is_copyless(a)) throw ValidationError("shape_label_split needs a copyless assignment");
  ShapeLabels sl{erase(a), a.output(), {}};
  for (const Image& img : a.images()) {
    std::vector<Word> parts(1);
    for (const Atom& x : img) {
      if (x.reg)
        parts.emplace_back();
      else
        parts.back().push_back(Symbol::from_id(x.id));
    }
    sl.labels.push_back(std::move(parts));
  }
  return sl;
}

inline RegAssignment shape_label_join(const ShapeLabels& sl) {
  const Shape& s = sl.shape;
  if (sl.labels.size() != s.size()) throw ValidationError("one label list per register is required");
  std::vector<Image> images;
  for (std::size_t r = 0; r < s.size(); ++r) {
    const auto& parts = sl.labels[r];
    if (parts.size() != s.image(r).size() + 1)
      throw ValidationError("register '" + (*s.registers())[r].name() + "' needs |shape(r)|+1 labels");
    Image img;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) img.push_back(Atom::r(s.image(r)[i - 1]));
      for (Symbol c : parts[i]) img.push_back(Atom::sym(c));
    }
    images.push_back(std::move(img));
  }
  return RegAssignment(s.registers(), sl.output, std::move(images));
}

/// Element of M wr Q: each state goes to a next state and a payload.
template <class P>
struct WreathElement {
  std::vector<std::pair<std::size_t, P>> map;

  std::size_t num_states() const { return map.size(); }
  std::size_t next(std::size_t q) const { return map[q].first; }
  const P& payload(std::size_t q) const { return map[q].second; }

  static WreathElement identity(std::size_t num_states, const P& unit) {
    WreathElement e;
    for (std::size_t q = 0; q < num_states; ++q) e.map.emplace_back(q, unit);
    return e;
  }

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
  friend auto operator<=>(const WreathElement&, const WreathElement&) = default;
};

/// (u * v)(q) = (next_v(next_u(q)), payload_u(q) * payload_v(next_u(q))).
template <class P, class Mul>
WreathElement<P> wreath_compose(const WreathElement<P>& u, const WreathElement<P>& v, Mul mul) {
  if (u.num_states() != v.num_states()) throw AlphabetMismatch("wreath elements over different state sets");
  WreathElement<P> out;
  out.map.reserve(u.map.size());
  for (const auto& [q1, m1] : u.map) {
    const auto& [q2, m2] = v.map[q1];
    out.map.emplace_back(q2, mul(m1, m2));
  }
  return out;
}

inline WreathElement<Shape> wreath_compose(const WreathElement<Shape>& u, const WreathElement<Shape>& v) {
  return wreath_compose(u, v, compose_shapes);
}

inline WreathElement<RegAssignment> wreath_compose(const WreathElement<RegAssignment>& u,
                                                   const WreathElement<RegAssignment>& v) {
  return wreath_compose(u, v, compose_assignments);
}

inline constexpr std::size_t kIdempotentCap = 1000000;

/// Least m >= 1 such that x^m is idempotent.
template <class T, class Mul>
std::size_t idempotent_power(const T& x, Mul mul, std::size_t cap = kIdempotentCap) {
  T power = x;
  for (std::size_t m = 1; m <= cap; ++m) {
    if (mul(power, power) == power) return m;
    power = mul(power, x);
  }
  throw SizeError("idempotent_power: no idempotent power found within " + std::to_string(cap) + " steps");
}

template <class T, class Mul>
T monoid_power(const T& x, std::size_t n, const T& unit, Mul mul) {
  T out = unit;
  for (std::size_t i = 0; i < n; ++i) out = mul(out, x);
  return out;
}

}  // namespace xduce
