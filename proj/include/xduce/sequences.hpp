#pragma once

// Unary-input transductions.
//
// A polynomial word expression is built from literals, concatenation and a
// star whose semantics depends on a parameter n: [[e*]](n) = ([[e]](n))^n.
// A function f on a* is described by a pumping family: a period p, the
// explicit values s(0..p-1), and expressions e_0..e_{p-1} with
// [[e_m]](n) = s((n+1)p + m).

#include <boost/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xduce/cfp.hpp"
#include "xduce/core.hpp"
#include "xduce/error.hpp"
#include "xduce/monoid.hpp"
#include "xduce/sst.hpp"
#include "xduce/symbol.hpp"

namespace xduce {

enum class PweKind { Lit, Cat, Star };

class PolyWordExpr {
  struct Node {
    PweKind kind;
    Word word;
    std::vector<PolyWordExpr> args;
  };

 public:
  PolyWordExpr() : PolyWordExpr(lit(Word{})) {}

  static PolyWordExpr lit(Word w) { return PolyWordExpr(std::make_shared<Node>(Node{PweKind::Lit, std::move(w), {}})); }
  static PolyWordExpr lit(const std::string& w) { return lit(Word::parse(w)); }
  static PolyWordExpr cat(PolyWordExpr a, PolyWordExpr b) {
    return PolyWordExpr(std::make_shared<Node>(Node{PweKind::Cat, {}, {std::move(a), std::move(b)}}));
  }
  /// Right-nested concatenation; the empty list gives the empty literal.
  static PolyWordExpr cat(const std::vector<PolyWordExpr>& parts) {
    if (parts.empty()) return lit(Word{});
    PolyWordExpr out = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) out = cat(parts[i], out);
    return out;
  }
  static PolyWordExpr star(PolyWordExpr e) {
    return PolyWordExpr(std::make_shared<Node>(Node{PweKind::Star, {}, {std::move(e)}}));
  }

  PweKind kind() const { return node_->kind; }
  const Word& word() const { return node_->word; }
  const PolyWordExpr& left() const { return node_->args.at(0); }
  const PolyWordExpr& right() const { return node_->args.at(1); }
  const PolyWordExpr& body() const { return node_->args.at(0); }

  friend bool operator==(const PolyWordExpr& a, const PolyWordExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case PweKind::Lit: return a.word() == b.word();
      case PweKind::Cat: return a.left() == b.left() && a.right() == b.right();
      case PweKind::Star: return a.body() == b.body();
    }
    return false;
  }

  std::string str() const {
    switch (kind()) {
      case PweKind::Lit: return "[" + word().str() + "]";
      case PweKind::Cat: return left().str() + "." + right().str();
      case PweKind::Star: return "(" + body().str() + ")*";
    }
    return {};
  }

 private:
  explicit PolyWordExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline Word eval_pwe(const PolyWordExpr& e, std::size_t n) {
  switch (e.kind()) {
    case PweKind::Lit: return e.word();
    case PweKind::Cat: return eval_pwe(e.left(), n) + eval_pwe(e.right(), n);
    case PweKind::Star: return eval_pwe(e.body(), n).repeated(n);
  }
  return {};
}

inline std::size_t star_height(const PolyWordExpr& e) {
  switch (e.kind()) {
    case PweKind::Lit: return 0;
    case PweKind::Cat: return std::max(star_height(e.left()), star_height(e.right()));
    case PweKind::Star: return 1 + star_height(e.body());
  }
  return 0;
}

/// Letters occurring in literals.
inline std::set<Symbol> pwe_letters(const PolyWordExpr& e) {
  std::set<Symbol> out;
  switch (e.kind()) {
    case PweKind::Lit: out.insert(e.word().begin(), e.word().end()); break;
    case PweKind::Cat: {
      out = pwe_letters(e.left());
      auto r = pwe_letters(e.right());
      out.insert(r.begin(), r.end());
      break;
    }
    case PweKind::Star: out = pwe_letters(e.body()); break;
  }
  return out;
}

/// Splits every literal into single letters.
inline PolyWordExpr normalize_literals(const PolyWordExpr& e) {
  switch (e.kind()) {
    case PweKind::Lit: {
      if (e.word().size() <= 1) return e;
      std::vector<PolyWordExpr> parts;
      for (Symbol c : e.word()) parts.push_back(PolyWordExpr::lit(Word{c}));
      return PolyWordExpr::cat(parts);
    }
    case PweKind::Cat: return PolyWordExpr::cat(normalize_literals(e.left()), normalize_literals(e.right()));
    case PweKind::Star: return PolyWordExpr::star(normalize_literals(e.body()));
  }
  return e;
}

/// e[(e'_i)]: each letter i of e replaced by e'_i, so that the result denotes
/// n -> CbS([[e]], ([[e'_i]]))(n).
inline PolyWordExpr substitute_pwe(const PolyWordExpr& e, const std::map<Symbol, PolyWordExpr>& subs) {
  switch (e.kind()) {
    case PweKind::Lit: {
      if (e.word().size() > 1) return substitute_pwe(normalize_literals(e), subs);
      if (e.word().size() == 0) return e;
      auto it = subs.find(e.word()[0]);
      if (it == subs.end()) throw ValidationError("substitute_pwe: no expression for letter '" + e.word()[0].name() + "'");
      return it->second;
    }
    case PweKind::Cat: return PolyWordExpr::cat(substitute_pwe(e.left(), subs), substitute_pwe(e.right(), subs));
    case PweKind::Star: return PolyWordExpr::star(substitute_pwe(e.body(), subs));
  }
  return e;
}

inline PolyWordExpr power_cat(const PolyWordExpr& e, std::size_t times) {
  return PolyWordExpr::cat(std::vector<PolyWordExpr>(times, e));
}

/// Expression denoting n -> [[e]](c n + d).
inline PolyWordExpr stretch_pwe(const PolyWordExpr& e, std::size_t c, std::size_t d) {
  if (c == 0) throw ValidationError("stretch_pwe needs c >= 1");
  switch (e.kind()) {
    case PweKind::Lit: return e;
    case PweKind::Cat: return PolyWordExpr::cat(stretch_pwe(e.left(), c, d), stretch_pwe(e.right(), c, d));
    case PweKind::Star: {
      PolyWordExpr b = stretch_pwe(e.body(), c, d);
      PolyWordExpr looped = PolyWordExpr::star(power_cat(b, c));
      return d == 0 ? looped : PolyWordExpr::cat(looped, power_cat(b, d));
    }
  }
  return e;
}

// ---------------------------------------------------------------------------

struct PumpingFamily {
  std::size_t period = 1;
  std::vector<Word> initial;         // s(0) .. s(period-1)
  std::vector<PolyWordExpr> exprs;   // exprs[m] at n is s((n+1) period + m)

  void validate() const {
    if (period == 0) throw ValidationError("a pumping family needs a positive period");
    if (initial.size() != period || exprs.size() != period)
      throw ValidationError("a pumping family needs exactly `period` initial words and expressions");
  }

  Word value(std::size_t i) const {
    if (i < period) return initial[i];
    return eval_pwe(exprs[i % period], i / period - 1);
  }

  std::size_t star_height() const {
    std::size_t h = 0;
    for (const auto& e : exprs) h = std::max(h, xduce::star_height(e));
    return h;
  }
};

/// Largest index checked by the self-check for parameter values up to max_n.
inline std::size_t family_check_limit(const PumpingFamily& fam, std::size_t max_n) {
  return (max_n + 2) * fam.period - 1;
}

/// First index i <= (max_n+1)p + p - 1 where the family disagrees with f(a^i), if any.
template <class F>
std::optional<std::size_t> family_mismatch(const PumpingFamily& fam, F f, Symbol a, std::size_t max_n) {
  for (std::size_t i = 0; i <= family_check_limit(fam, max_n); ++i)
    if (fam.value(i) != f(Word{a}.repeated(i))) return i;
  return std::nullopt;
}

namespace detail {

inline Symbol unary_letter(const Alphabet& input) {
  if (input.size() != 1) throw AlphabetMismatch("pumping families need a one-letter input alphabet");
  return input[0];
}

template <class F>
void self_check(const PumpingFamily& fam, F f, Symbol a, std::size_t max_n, const char* what) {
  if (auto bad = family_mismatch(fam, f, a, max_n))
    throw Error(std::string(what) + ": extracted family disagrees with direct evaluation at a^" + std::to_string(*bad));
}

}  // namespace detail

inline constexpr std::size_t kBaseCheck = 8;
inline constexpr std::size_t kCfpCheck = 6;

/// Pumping family of a copyless SST over a one-letter alphabet.
///
/// With m the idempotent power of the erased letter image and q_k the state
/// after a^{2m+k}, the assignment gamma of a^m at q_k has an idempotent
/// copyless shape, so every register is either dead (its image has no
/// registers) or live with gamma(r) = u_r r v_r, u_r and v_r made of dead
/// registers and letters. Hence, with U_r = gamma(u_r) and V_r = gamma(v_r),
/// the value of r after a^{2m+k+mn} is U_r^n w(r) V_r^n. The period is 2m so
/// that both parities of n are expressible.
inline PumpingFamily extract_pumping_family(const Sst& t, std::size_t check_n = kBaseCheck) {
  const Symbol a = detail::unary_letter(t.input());
  if (!check_copyless(t)) throw ValidationError("extract_pumping_family needs a copyless SST");

  const WreathElement<Shape> x = erased_transition_image(t, Word{a});
  const std::size_t m = idempotent_power(x, [](const auto& u, const auto& v) { return wreath_compose(u, v); });
  const Word am = Word{a}.repeated(m);
  const WreathElement<RegAssignment> psi_m = transition_image(t, am);

  PumpingFamily fam;
  fam.period = 2 * m;
  for (std::size_t i = 0; i < fam.period; ++i) fam.initial.push_back(t(Word{a}.repeated(i)));

  // Valuation and state after a^{2m+k}.
  std::vector<PolyWordExpr> odd_exprs, even_exprs;
  std::size_t q = t.initial();
  std::vector<Word> values = t.initial_values();
  auto step = [&](std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      const SstTransition& tr = t.transition(q, 0);
      values = tr.assign.dagger(values);
      q = tr.next;
    }
  };
  step(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    if (k) step(1);
    if (psi_m.next(q) != q) throw Error("extract_pumping_family: state not recurrent after the anchor");
    const RegAssignment& gamma = psi_m.payload(q);
    const Shape shape = erase(gamma);

    std::vector<bool> dead(t.num_registers());
    for (std::size_t r = 0; r < dead.size(); ++r) dead[r] = shape.image(r).empty();
    auto constant_of = [&](const Image& img) {
      Word w;
      for (const Atom& at : img) {
        if (!at.reg) w.push_back(Symbol::from_id(at.id));
        else if (dead[at.id]) w.append(gamma.image_word(at.id));
        else throw Error("extract_pumping_family: shape of the period is not idempotent");
      }
      return w;
    };

    // Per live register r: (U_r, V_r).
    std::vector<std::pair<Word, Word>> uv(t.num_registers());
    for (std::size_t r = 0; r < dead.size(); ++r) {
      if (dead[r]) continue;
      const Image& img = gamma.image(r);
      auto self = std::find_if(img.begin(), img.end(), [&](const Atom& at) { return at.reg && at.id == r; });
      if (self == img.end()) throw Error("extract_pumping_family: shape of the period is not idempotent");
      uv[r] = {constant_of(Image(img.begin(), self)), constant_of(Image(self + 1, img.end()))};
    }

    auto build = [&](bool odd) {
      std::vector<PolyWordExpr> parts;
      Word pending;
      auto flush = [&] {
        if (!pending.empty()) parts.push_back(PolyWordExpr::lit(pending));
        pending = Word{};
      };
      auto pumped = [&](const Word& w) {
        PolyWordExpr lw = PolyWordExpr::lit(w);
        PolyWordExpr twice = PolyWordExpr::star(PolyWordExpr::lit(w + w));
        return odd ? PolyWordExpr::cat(twice, lw) : twice;
      };
      for (const Atom& at : t.final_output(q)) {
        if (!at.reg) {
          pending.push_back(Symbol::from_id(at.id));
        } else if (dead[at.id]) {
          pending.append(values[at.id]);
        } else {
          const auto& [u, v] = uv[at.id];
          if (!u.empty()) {
            flush();
            parts.push_back(pumped(u));
          }
          pending.append(values[at.id]);
          if (!v.empty()) {
            flush();
            parts.push_back(pumped(v));
          }
        }
      }
      flush();
      return PolyWordExpr::cat(parts);
    };
    even_exprs.push_back(build(false));
    odd_exprs.push_back(build(true));
  }
  fam.exprs = even_exprs;
  fam.exprs.insert(fam.exprs.end(), odd_exprs.begin(), odd_exprs.end());
  fam.validate();
  detail::self_check(fam, [&](const Word& w) { return t(w); }, a, check_n, "extract_pumping_family");
  return fam;
}

namespace detail {

/// Expression for s((n+1) P + j) given a family of period p dividing P.
inline PolyWordExpr resynchronize(const PumpingFamily& fam, std::size_t P, std::size_t j) {
  const std::size_t c = P / fam.period;
  const std::size_t q = j / fam.period, jo = j % fam.period;
  return stretch_pwe(fam.exprs[jo], c, c + q - 1);
}

/// Tail and cycle length of the run of a DFA on a, aa, aaa, ...
inline std::pair<std::size_t, std::size_t> rho_shape(const Dfa& d) {
  std::map<std::size_t, std::size_t> seen;
  std::size_t q = d.initial();
  for (std::size_t i = 0;; ++i) {
    auto [it, fresh] = seen.emplace(q, i);
    if (!fresh) return {it->second, i - it->second};
    q = d.next_at(q, 0);
  }
}

inline PumpingFamily extract_cfp(const CfpExpr& e, Symbol a) {
  const auto f = [&](const Word& w) { return e(w); };
  auto finish = [&](std::size_t P, std::vector<PolyWordExpr> exprs) {
    PumpingFamily fam;
    fam.period = P;
    for (std::size_t i = 0; i < P; ++i) fam.initial.push_back(f(Word{a}.repeated(i)));
    fam.exprs = std::move(exprs);
    fam.validate();
    return fam;
  };
  switch (e.kind()) {
    case CfpKind::Reg: return extract_pumping_family(e.machine(), 0);
    case CfpKind::Cbs: {
      PumpingFamily outer = extract_cfp(e.outer(), a);
      std::map<Symbol, PumpingFamily> subs;
      std::size_t P = outer.period;
      for (const auto& [i, g] : e.subs()) {
        subs.emplace(i, extract_cfp(g, a));
        P = std::lcm(P, subs.at(i).period);
      }
      std::vector<PolyWordExpr> exprs;
      for (std::size_t j = 0; j < P; ++j) {
        std::map<Symbol, PolyWordExpr> sj;
        for (const auto& [i, fam] : subs) sj.emplace(i, resynchronize(fam, P, j));
        exprs.push_back(substitute_pwe(normalize_literals(resynchronize(outer, P, j)), sj));
      }
      return finish(P, std::move(exprs));
    }
    case CfpKind::Cond: {
      PumpingFamily yes = extract_cfp(e.then_branch(), a), no = extract_cfp(e.else_branch(), a);
      auto [tail, cycle] = rho_shape(e.lang());
      std::size_t L = std::lcm(std::lcm(yes.period, no.period), cycle);
      std::size_t P = L * std::max<std::size_t>(1, (tail + L - 1) / L);
      std::vector<PolyWordExpr> exprs;
      for (std::size_t j = 0; j < P; ++j) {
        const bool accepted = e.lang().accepts(Word{a}.repeated(P + j));
        exprs.push_back(resynchronize(accepted ? yes : no, P, j));
      }
      return finish(P, std::move(exprs));
    }
    case CfpKind::Concat: {
      PumpingFamily l = extract_cfp(e.left(), a), r = extract_cfp(e.right(), a);
      std::size_t P = std::lcm(l.period, r.period);
      std::vector<PolyWordExpr> exprs;
      for (std::size_t j = 0; j < P; ++j)
        exprs.push_back(PolyWordExpr::cat(resynchronize(l, P, j), resynchronize(r, P, j)));
      return finish(P, std::move(exprs));
    }
  }
  throw Error("unknown expression kind");
}

}  // namespace detail

/// Pumping family of a cfp expression over a one-letter alphabet, built by
/// induction on the expression and checked against direct evaluation.
inline PumpingFamily extract_cfp_family(const CfpExpr& e, std::size_t check_n = kCfpCheck) {
  const Symbol a = detail::unary_letter(e.input());
  PumpingFamily fam = detail::extract_cfp(e, a);
  detail::self_check(fam, [&](const Word& w) { return e(w); }, a, check_n, "extract_cfp_family");
  return fam;
}

// ---------------------------------------------------------------------------
// Block lengths and polynomial sets

/// {k : w = x c^k y, x not ending with c, y not starting with c}.
inline std::set<std::size_t> beta_blocks(const Word& w, Symbol c) {
  std::set<std::size_t> out;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i <= n; ++i)
    if ((i == 0 || w[i - 1] != c) && (i == n || w[i] != c)) {
      out.insert(0);
      break;
    }
  for (std::size_t i = 0; i < n;) {
    if (w[i] != c) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && w[j] == c) ++j;
    out.insert(j - i);
    i = j;
  }
  return out;
}

using Rational = boost::rational<long long>;

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(Rational v) { return Poly({v}); }
  static Poly x() { return Poly({0, 1}); }

  const std::vector<Rational>& coefficients() const { return c_; }
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }

  Rational operator()(Rational n) const {
    Rational v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * n + c_[i];
    return v;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }
  Poly times_x() const {
    if (c_.empty()) return *this;
    std::vector<Rational> c{0};
    c.insert(c.end(), c_.begin(), c_.end());
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly&, const Poly&) = default;
  friend bool operator<(const Poly& a, const Poly& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == Rational(0)) continue;
      if (!out.empty()) out += " + ";
      std::string coef = std::to_string(c_[i].numerator());
      if (c_[i].denominator() != 1) coef += "/" + std::to_string(c_[i].denominator());
      if (i == 0) out += coef;
      else out += (c_[i] == Rational(1) ? std::string() : coef) + (i == 1 ? "X" : "X^" + std::to_string(i));
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Rational(0)) c_.pop_back();
  }
  std::vector<Rational> c_;
};

using PolySet = std::set<Poly>;

inline PolySet poly_sum(const PolySet& a, const PolySet& b) {
  PolySet out;
  for (const Poly& p : a)
    for (const Poly& q : b) out.insert(p + q);
  return out;
}

inline PolySet poly_union(PolySet a, const PolySet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

inline bool poly_set_contains(const PolySet& s, std::size_t n, std::size_t value) {
  const Rational at(static_cast<long long>(n)), v(static_cast<long long>(value));
  return std::any_of(s.begin(), s.end(), [&](const Poly& p) { return p(at) == v; });
}

namespace detail {

// A: block lengths; lead/trail: length of the leading/trailing c-run when the
// value is not in c*; full: the length when it is.
struct BlockPolys {
  PolySet all, lead, trail, full;
};

inline BlockPolys block_polys(const PolyWordExpr& e, Symbol c) {
  const Poly zero;
  switch (e.kind()) {
    case PweKind::Lit: {
      const Word& w = e.word();
      BlockPolys b;
      for (std::size_t k : beta_blocks(w, c)) b.all.insert(Poly::constant(static_cast<long long>(k)));
      b.all.insert(zero);
      std::size_t lead = 0, trail = 0;
      while (lead < w.size() && w[lead] == c) ++lead;
      if (lead == w.size()) {
        b.full.insert(Poly::constant(static_cast<long long>(w.size())));
      } else {
        while (w[w.size() - 1 - trail] == c) ++trail;
        b.lead.insert(Poly::constant(static_cast<long long>(lead)));
        b.trail.insert(Poly::constant(static_cast<long long>(trail)));
      }
      return b;
    }
    case PweKind::Cat: {
      BlockPolys l = block_polys(e.left(), c), r = block_polys(e.right(), c), b;
      b.full = poly_sum(l.full, r.full);
      b.lead = poly_union(l.lead, poly_sum(l.full, r.lead));
      b.trail = poly_union(r.trail, poly_sum(l.trail, r.full));
      b.all = poly_union(l.all, r.all);
      b.all = poly_union(b.all, poly_sum(l.trail, r.lead));
      b.all = poly_union(b.all, poly_sum(l.full, r.lead));
      b.all = poly_union(b.all, poly_sum(l.trail, r.full));
      b.all = poly_union(b.all, b.full);
      return b;
    }
    case PweKind::Star: {
      BlockPolys in = block_polys(e.body(), c), b;
      b.full.insert(zero);
      for (const Poly& p : in.full) b.full.insert(p.times_x());
      b.lead = in.lead;
      b.trail = in.trail;
      b.all = poly_union(in.all, poly_sum(in.trail, in.lead));
      for (const Poly& p : in.all) b.all.insert(p.times_x());
      b.all = poly_union(b.all, b.full);
      return b;
    }
  }
  return {};
}

}  // namespace detail

/// Finite set A of polynomials with beta_c([[e]](n)) contained in {P(n) : P in A} for all n.
inline PolySet poly_uniform_sets(const PolyWordExpr& e, Symbol c) { return detail::block_polys(e, c).all; }

}  // namespace xduce
