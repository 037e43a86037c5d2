#pragma once

// Producing triples and splits.
//
// For a copyless SST, two copyless assignments are identified when they have
// the same shape and, register by register, the same set of output letters.
// This quotient is finite; wreathed with the states it gives a finite monoid
// N(f) and a morphism nu_f from input words into it. A 1-split u v w (with
// nu(u) = nu(uv) and nu(w) = nu(vw)) is producing for an output letter c when
// removing v strictly decreases the number of c's in the output; whether this
// happens is a function of (nu(u), nu(v), nu(w)) alone.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xduce/core.hpp"
#include "xduce/error.hpp"
#include "xduce/monoid.hpp"
#include "xduce/sst.hpp"
#include "xduce/symbol.hpp"

namespace xduce {

/// Class of a copyless assignment: its shape and the letters present in each image.
struct Cl01Element {
  Shape shape;
  std::vector<std::uint64_t> presence;  // bit i: output letter i occurs in the image of the register

  friend bool operator==(const Cl01Element&, const Cl01Element&) = default;
  friend auto operator<=>(const Cl01Element& a, const Cl01Element& b) {
    if (auto c = a.shape <=> b.shape; c != 0) return c;
    return a.presence <=> b.presence;
  }
};

inline Cl01Element cl01_identity(const AlphabetRef& registers) {
  return {Shape::identity(registers), std::vector<std::uint64_t>(registers->size(), 0)};
}

inline Cl01Element cl01_class(const RegAssignment& a) {
  const Alphabet& sigma = *a.output();
  if (sigma.size() > 64) throw SizeError("letter-presence classes support at most 64 output letters");
  Cl01Element e{erase(a), std::vector<std::uint64_t>(a.size(), 0)};
  for (std::size_t r = 0; r < a.size(); ++r)
    for (const Atom& x : a.image(r))
      if (!x.reg) e.presence[r] |= std::uint64_t{1} << sigma.index_of(Symbol::from_id(x.id));
  return e;
}

/// Class of a * b: the letters of b(r) plus those of a(s) for every s in b(r).
inline Cl01Element cl01_compose(const Cl01Element& a, const Cl01Element& b) {
  Cl01Element out{compose_shapes(a.shape, b.shape), b.presence};
  for (std::size_t r = 0; r < b.shape.size(); ++r)
    for (std::uint32_t s : b.shape.image(r)) out.presence[r] |= a.presence[s];
  return out;
}

using NElement = WreathElement<Cl01Element>;

inline NElement n_compose(const NElement& u, const NElement& v) { return wreath_compose(u, v, cl01_compose); }

/// The finite monoid N(f), nu_f on letters, and the producing-triple predicate.
class TripleTable {
 public:
  static constexpr std::size_t kElementBound = 20000;
  static constexpr std::size_t kMaterializeBound = 64;

  explicit TripleTable(const Sst& t, std::size_t element_bound = kElementBound) : t_(t) {
    if (!check_copyless(t)) throw ValidationError("producing triples are defined for copyless SSTs");
    unit_ = NElement::identity(t.num_states(), cl01_identity(t.registers()));
    for (std::size_t c = 0; c < t.input().size(); ++c) {
      NElement e;
      for (std::size_t q = 0; q < t.num_states(); ++q) {
        const SstTransition& tr = t.transition(q, c);
        e.map.emplace_back(tr.next, cl01_class(tr.assign));
      }
      generators_.push_back(std::move(e));
    }
    // Generated submonoid, by breadth-first right multiplication.
    intern(unit_);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      for (const NElement& g : generators_) {
        intern(n_compose(elements_[i], g));
        if (elements_.size() > element_bound)
          throw SizeError("N(f) has more than " + std::to_string(element_bound) + " reachable elements");
      }
    }
    output_bits_.resize(t.num_states());
    for (std::size_t q = 0; q < t.num_states(); ++q)
      for (const Atom& a : t.final_output(q))
        if (a.reg) output_bits_[q].push_back(a.id);
  }

  const Sst& machine() const { return t_; }
  const std::vector<NElement>& elements() const { return elements_; }
  const std::vector<NElement>& generators() const { return generators_; }
  const NElement& unit() const { return unit_; }

  std::size_t index_of(const NElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw ValidationError("element is not in the generated submonoid");
    return it->second;
  }

  NElement nu(const Word& w) const {
    NElement e = unit_;
    for (Symbol c : w) e = n_compose(e, generators_[t_.letter(c)]);
    return e;
  }

  /// Producing criterion for output letter c.
  bool producing(const NElement& mu, const NElement& mv, const NElement& mw, Symbol c) const {
    std::size_t ci = t_.output()->find(c);
    if (ci == t_.output()->size()) return false;
    const std::uint64_t bit = std::uint64_t{1} << ci;
    const std::size_t q1 = mu.next(t_.initial());
    const auto& [q2, gamma] = mw.map[q1];
    const Cl01Element& beta = mv.payload(q1);
    for (std::uint32_t s : output_bits_[q2])
      for (std::uint32_t r : gamma.shape.image(s))
        if (beta.presence[r] & bit) return true;
    return false;
  }

  bool producing_any(const NElement& mu, const NElement& mv, const NElement& mw, const std::vector<Symbol>& pi) const {
    return std::any_of(pi.begin(), pi.end(), [&](Symbol c) { return producing(mu, mv, mw, c); });
  }

  /// Index triples (i, j, k) of reachable elements with e_i e_j = e_i, e_j e_k = e_k
  /// that are producing for c. Only built for small monoids.
  std::vector<std::array<std::size_t, 3>> producing_triples(Symbol c) const {
    const std::size_t n = elements_.size();
    if (n > kMaterializeBound)
      throw SizeError("P(f,c) is only listed for monoids with at most " + std::to_string(kMaterializeBound) +
                      " elements");
    std::vector<std::array<std::size_t, 3>> out;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!(n_compose(elements_[i], elements_[j]) == elements_[i])) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (n_compose(elements_[j], elements_[k]) == elements_[k] &&
              producing(elements_[i], elements_[j], elements_[k], c))
            out.push_back({i, j, k});
      }
    return out;
  }

 private:
  void intern(const NElement& e) {
    if (index_.try_emplace(e, elements_.size()).second) elements_.push_back(e);
  }

  Sst t_;
  NElement unit_;
  std::vector<NElement> generators_;
  std::vector<NElement> elements_;
  std::map<NElement, std::size_t> index_;
  std::vector<std::vector<std::uint32_t>> output_bits_;
};

inline TripleTable build_triple_table(const Sst& t) { return TripleTable(t); }

// ---------------------------------------------------------------------------
// Splits

/// cuts c_0 < ... < c_r split s into u = s[0,c_0), v_i = s[c_{i-1},c_i), w = s[c_r,|s|).
template <class Phi>
bool is_r_split(const Word& s, const std::vector<std::size_t>& cuts, Phi phi) {
  if (cuts.size() < 2) throw ValidationError("an r-split needs r+1 >= 2 cut positions");
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] > s.size()) throw ValidationError("cut position beyond the word");
    if (i && cuts[i] <= cuts[i - 1]) return false;
  }
  const auto left = phi(s.substr(0, cuts[0]));
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (!(phi(s.substr(0, cuts[i])) == left)) return false;
  const auto right = phi(s.substr(cuts.back(), s.size() - cuts.back()));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (!(phi(s.substr(cuts[i], s.size() - cuts[i])) == right)) return false;
  return true;
}

inline constexpr std::size_t kSplitWordBound = 14;

template <class Phi>
std::vector<std::vector<std::size_t>> enumerate_r_splits(const Word& s, Phi phi, std::size_t r,
                                                         std::size_t bound = kSplitWordBound) {
  if (s.size() > bound)
    throw SizeError("enumerate_r_splits: word length " + std::to_string(s.size()) + " exceeds bound " +
                    std::to_string(bound));
  std::vector<std::vector<std::size_t>> out;
  if (r == 0) throw ValidationError("r-splits need r >= 1");
  // Precompute phi on prefixes and suffixes.
  using T = decltype(phi(s));
  std::vector<T> pre, suf;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    pre.push_back(phi(s.substr(0, i)));
    suf.push_back(phi(s.substr(i, s.size() - i)));
  }
  std::vector<std::size_t> cuts;
  std::function<void(std::size_t)> go = [&](std::size_t from) {
    if (cuts.size() == r + 1) {
      for (std::size_t i = 1; i < cuts.size(); ++i)
        if (!(pre[cuts[i]] == pre[cuts[0]])) return;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (!(suf[cuts[i]] == suf[cuts.back()])) return;
      out.push_back(cuts);
      return;
    }
    for (std::size_t c = from; c <= s.size(); ++c) {
      cuts.push_back(c);
      go(c + 1);
      cuts.pop_back();
    }
  };
  go(0);
  return out;
}

struct DichotomyReport {
  bool pass = true;
  std::size_t words = 0;
  std::size_t splits = 0;
  std::size_t producing = 0;
  std::size_t pumping_checks = 0;
  std::string counterexample;
};

/// Checks, for every 1-split u v w of every word up to max_len, that the
/// prediction from (nu(u), nu(v), nu(w)) matches the brute-force counts, and
/// that producing splits pump: |f(u v^n w)|_c >= n for n <= pump_max.
inline DichotomyReport check_dichotomy(const Sst& t, Symbol c, std::size_t max_len, std::size_t pump_max = 6) {
  TripleTable table(t);
  DichotomyReport rep;
  auto count = [&](const Word& w) { return count_occurrences(t(w), c); };
  for (const Word& s : words_up_to(t.input(), max_len)) {
    ++rep.words;
    auto phi = [&](const Word& x) { return table.nu(x); };
    for (const auto& cuts : enumerate_r_splits(s, phi, 1, std::max(max_len, kSplitWordBound))) {
      ++rep.splits;
      Word u = s.substr(0, cuts[0]);
      Word v = s.substr(cuts[0], cuts[1] - cuts[0]);
      Word w = s.substr(cuts[1], s.size() - cuts[1]);
      const bool predicted = table.producing(table.nu(u), table.nu(v), table.nu(w), c);
      const std::size_t with = count(s), without = count(u + w);
      const bool ok = predicted ? with > without : with == without;
      if (!ok) {
        rep.pass = false;
        rep.counterexample = "u='" + u.str() + "' v='" + v.str() + "' w='" + w.str() + "' predicted " +
                             (predicted ? "producing" : "non-producing") + ", counts " + std::to_string(with) +
                             " vs " + std::to_string(without);
        return rep;
      }
      if (predicted) {
        ++rep.producing;
        for (std::size_t n = 1; n <= pump_max; ++n) {
          ++rep.pumping_checks;
          if (count(u + v.repeated(n) + w) < n) {
            rep.pass = false;
            rep.counterexample = "pumping u='" + u.str() + "' v='" + v.str() + "' w='" + w.str() + "' n=" +
                                 std::to_string(n);
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

/// Whether s has an r-split according to nu_f all of whose triples
/// (nu(u v_1..v_{i-1}), nu(v_i), nu(v_{i+1}..v_r w)) are producing for some letter of pi.
inline bool has_producing_r_split(const TripleTable& table, const Word& s, const std::vector<Symbol>& pi, std::size_t r,
                                  std::size_t bound = kSplitWordBound) {
  if (r > s.size()) return false;
  auto phi = [&](const Word& x) { return table.nu(x); };
  for (const auto& cuts : enumerate_r_splits(s, phi, r, bound)) {
    bool all = true;
    for (std::size_t i = 1; i < cuts.size() && all; ++i) {
      NElement mu = table.nu(s.substr(0, cuts[i - 1]));
      NElement mv = table.nu(s.substr(cuts[i - 1], cuts[i] - cuts[i - 1]));
      NElement mw = table.nu(s.substr(cuts[i], s.size() - cuts[i]));
      all = table.producing_any(mu, mv, mw, pi);
    }
    if (all) return true;
  }
  return false;
}

inline bool has_producing_r_split(const Sst& t, const Word& s, const std::vector<Symbol>& pi, std::size_t r) {
  return has_producing_r_split(TripleTable(t), s, pi, r);
}

}  // namespace xduce
