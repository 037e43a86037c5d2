#pragma once

// Comparison-free pebble transducers.
//
// The input w is read between end markers, "<" w ">", with positions
// 0 .. |w|+1. A configuration is a state and a stack of pebble positions;
// the machine starts with the single pebble on "<". Transitions are chosen by
// the state and the letters under all pebbles, and then act on the topmost
// pebble only. A pushed pebble always starts on "<". The run ends when the
// last pebble is popped.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <algorithm>
#include <tuple>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "xduce/core.hpp"
#include "xduce/error.hpp"
#include "xduce/sst.hpp"
#include "xduce/symbol.hpp"

namespace xduce {

enum class StackAction { Stay, Left, Right, Push, Pop };

inline std::string action_name(StackAction a) {
  switch (a) {
    case StackAction::Stay: return "stay";
    case StackAction::Left: return "left";
    case StackAction::Right: return "right";
    case StackAction::Push: return "push";
    case StackAction::Pop: return "pop";
  }
  return "?";
}

inline StackAction parse_action(const std::string& s) {
  if (s == "stay") return StackAction::Stay;
  if (s == "left") return StackAction::Left;
  if (s == "right") return StackAction::Right;
  if (s == "push") return StackAction::Push;
  if (s == "pop") return StackAction::Pop;
  throw ValidationError("unknown stack action '" + s + "'");
}

inline const Symbol& left_marker() {
  static const Symbol s("<");
  return s;
}
inline const Symbol& right_marker() {
  static const Symbol s(">");
  return s;
}

struct CfptRule {
  std::size_t next = 0;
  StackAction action = StackAction::Stay;
  Word emit;
};

inline constexpr std::size_t kDefaultBudget = 1000000;

/// Step budget: XDUCE_BUDGET if set to a positive integer, else 10^6.
inline std::size_t default_cfpt_budget() {
  if (const char* env = std::getenv("XDUCE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultBudget;
}

struct CfptRun {
  bool terminated = false;
  Word output;
  std::size_t steps = 0;
};

/// k-pebble comparison-free transducer with partial per-height tables.
class Cfpt {
 public:
  using Key = std::vector<std::uint32_t>;  // letters under pebbles 1..p as extended-letter indices

  Cfpt() = default;

  /// tables[p-1] maps (state, letters under the p pebbles) to a rule.
  Cfpt(Alphabet input, Alphabet output, std::size_t k, std::vector<std::string> states, std::size_t initial,
       std::vector<std::map<std::pair<std::size_t, Key>, CfptRule>> tables)
      : input_(std::move(input)),
        output_(std::move(output)),
        k_(k),
        states_(std::move(states)),
        initial_(initial),
        tables_(std::move(tables)) {
    if (k_ == 0) throw ValidationError("a CFPT needs at least one pebble");
    require_distinct_states(states_);
    if (initial_ >= states_.size()) throw ValidationError("initial state out of range");
    if (input_.contains(left_marker()) || input_.contains(right_marker()))
      throw ValidationError("end markers '<' and '>' cannot be input letters");
    if (tables_.size() != k_) throw ValidationError("a k-CFPT needs exactly k transition tables");
    for (std::size_t p = 1; p <= k_; ++p)
      for (const auto& [key, rule] : tables_[p - 1]) {
        if (key.first >= states_.size() || rule.next >= states_.size())
          throw ValidationError("CFPT table mentions an unknown state");
        if (key.second.size() != p) throw ValidationError("CFPT table entry with the wrong number of letters");
        for (std::uint32_t c : key.second)
          if (c >= extended_size()) throw ValidationError("CFPT table entry with an unknown letter");
        require_word_over(output_, rule.emit, "CFPT emission");
      }
  }

  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  std::size_t pebbles() const { return k_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t initial() const { return initial_; }
  const std::vector<std::map<std::pair<std::size_t, Key>, CfptRule>>& tables() const { return tables_; }

  /// Extended letters: 0 is "<", 1..|input| the input letters, |input|+1 is ">".
  std::size_t extended_size() const { return input_.size() + 2; }
  Symbol extended_symbol(std::uint32_t i) const {
    if (i == 0) return left_marker();
    if (i == input_.size() + 1) return right_marker();
    return input_[i - 1];
  }
  std::uint32_t extended_index(Symbol s) const {
    if (s == left_marker()) return 0;
    if (s == right_marker()) return static_cast<std::uint32_t>(input_.size() + 1);
    return static_cast<std::uint32_t>(input_.index_of(s) + 1);
  }

  const CfptRule* rule(std::size_t q, const Key& letters) const {
    const auto& table = tables_[letters.size() - 1];
    auto it = table.find({q, letters});
    return it == table.end() ? nullptr : &it->second;
  }

  CfptRun run(const Word& w, std::size_t budget) const {
    std::vector<std::uint32_t> tape{0};
    for (Symbol c : w) {
      std::size_t i = input_.find(c);
      if (i == input_.size()) throw AlphabetMismatch("CFPT input: symbol '" + c.name() + "' is outside the alphabet");
      tape.push_back(static_cast<std::uint32_t>(i + 1));
    }
    tape.push_back(static_cast<std::uint32_t>(input_.size() + 1));
    const std::size_t last = tape.size() - 1;

    CfptRun result;
    std::vector<std::size_t> stack{0};
    std::size_t q = initial_;
    Key letters;
    while (!stack.empty()) {
      if (result.steps == budget) return result;
      ++result.steps;
      letters.clear();
      for (std::size_t pos : stack) letters.push_back(tape[pos]);
      const CfptRule* r = rule(q, letters);
      if (!r) throw Error("CFPT has no transition from state '" + states_[q] + "' on " + describe(letters));
      result.output.append(r->emit);
      q = r->next;
      std::size_t& top = stack.back();
      switch (r->action) {
        case StackAction::Stay: break;
        case StackAction::Left:
          if (top == 0) throw Error("CFPT moved left of '<'");
          --top;
          break;
        case StackAction::Right:
          if (top == last) throw Error("CFPT moved right of '>'");
          ++top;
          break;
        case StackAction::Push:
          if (stack.size() == k_) throw Error("CFPT pushed beyond its pebble count");
          stack.push_back(0);
          break;
        case StackAction::Pop: stack.pop_back(); break;
      }
    }
    result.terminated = true;
    return result;
  }

  Word operator()(const Word& w) const { return run_checked(w, default_cfpt_budget()); }

  Word run_checked(const Word& w, std::size_t budget) const {
    CfptRun r = run(w, budget);
    if (!r.terminated)
      throw BudgetExhausted("CFPT did not terminate within " + std::to_string(budget) + " steps on '" + w.str() + "'");
    return std::move(r.output);
  }

  std::string describe(const Key& letters) const {
    std::string out = "(";
    for (std::size_t i = 0; i < letters.size(); ++i) out += (i ? "," : "") + extended_symbol(letters[i]).name();
    return out + ")";
  }

 private:
  Alphabet input_;
  Alphabet output_;
  std::size_t k_ = 1;
  std::vector<std::string> states_;
  std::size_t initial_ = 0;
  std::vector<std::map<std::pair<std::size_t, Key>, CfptRule>> tables_;
};

inline CfptRun run_cfpt(const Cfpt& t, const Word& w, std::size_t budget = default_cfpt_budget()) {
  return t.run(w, budget);
}

/// Entries whose action is not allowed: left on "<", right on ">", push with all pebbles in use.
inline std::vector<std::string> validate_cfpt(const Cfpt& t) {
  std::vector<std::string> out;
  const std::uint32_t right_end = static_cast<std::uint32_t>(t.input().size() + 1);
  for (std::size_t p = 1; p <= t.pebbles(); ++p)
    for (const auto& [key, rule] : t.tables()[p - 1]) {
      std::uint32_t top = key.second.back();
      std::string why;
      if (rule.action == StackAction::Left && top == 0) why = "moves left on '<'";
      if (rule.action == StackAction::Right && top == right_end) why = "moves right on '>'";
      if (rule.action == StackAction::Push && p == t.pebbles()) why = "pushes with all pebbles in use";
      if (!why.empty())
        out.push_back("state '" + t.states()[key.first] + "', letters " + t.describe(key.second) + ", action " +
                      action_name(rule.action) + ": " + why);
    }
  return out;
}

/// All extended-letter tuples of length p.
inline std::vector<Cfpt::Key> letter_tuples(std::size_t extended_size, std::size_t p) {
  std::vector<Cfpt::Key> out{{}};
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<Cfpt::Key> next;
    for (const auto& t : out)
      for (std::uint32_t c = 0; c < extended_size; ++c) {
        auto u = t;
        u.push_back(c);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

/// Name-based construction helper.
class CfptBuilder {
 public:
  CfptBuilder(Alphabet input, Alphabet output, std::size_t k, std::vector<std::string> states,
              const std::string& initial)
      : proto_(std::move(input), std::move(output), k, states, state_index(states, initial),
               std::vector<std::map<std::pair<std::size_t, Cfpt::Key>, CfptRule>>(k)),
        tables_(k) {}

  /// letters: space-separated symbols (use "<" and ">" for the markers).
  CfptBuilder& rule(const std::string& state, const std::string& letters, const std::string& next,
                    StackAction action, const std::string& emit = "") {
    Cfpt::Key key;
    for (Symbol s : Word::parse(letters)) key.push_back(proto_.extended_index(s));
    return rule(state_index(proto_.states(), state), key, state_index(proto_.states(), next), action, Word::parse(emit));
  }

  CfptBuilder& rule(std::size_t state, const Cfpt::Key& key, std::size_t next, StackAction action, Word emit) {
    if (key.empty() || key.size() > proto_.pebbles()) throw ValidationError("CFPT rule with a bad number of letters");
    tables_[key.size() - 1][{state, key}] = CfptRule{next, action, std::move(emit)};
    return *this;
  }

  /// Adds a rule for every tuple of length p for which `make` returns one.
  template <class Fn>
  CfptBuilder& rules(std::size_t p, const std::string& state, Fn make) {
    std::size_t q = state_index(proto_.states(), state);
    for (const auto& key : letter_tuples(proto_.extended_size(), p)) {
      std::vector<Symbol> letters;
      for (std::uint32_t c : key) letters.push_back(proto_.extended_symbol(c));
      if (std::optional<std::tuple<std::string, StackAction, std::string>> r = make(letters))
        rule(q, key, state_index(proto_.states(), std::get<0>(*r)), std::get<1>(*r), Word::parse(std::get<2>(*r)));
    }
    return *this;
  }

  const Cfpt& prototype() const { return proto_; }

  Cfpt build() const {
    return Cfpt(proto_.input(), proto_.output(), proto_.pebbles(), proto_.states(), proto_.initial(), tables_);
  }

 private:
  Cfpt proto_;
  std::vector<std::map<std::pair<std::size_t, Cfpt::Key>, CfptRule>> tables_;
};

namespace detail {

/// Every transition made silent, or emitting exactly one letter with a stay.
inline Cfpt normalize_emissions(const Cfpt& f) {
  std::vector<std::string> states = f.states();
  std::vector<std::map<std::pair<std::size_t, Cfpt::Key>, CfptRule>> tables(f.pebbles());
  for (std::size_t p = 1; p <= f.pebbles(); ++p)
    for (const auto& [key, rule] : f.tables()[p - 1]) {
      const std::size_t m = rule.emit.size();
      if (m == 0 || (m == 1 && rule.action == StackAction::Stay)) {
        tables[p - 1][key] = rule;
        continue;
      }
      // q --c1/stay--> s1 --c2/stay--> ... sm --eps/action--> next
      std::size_t from = key.first;
      for (std::size_t i = 0; i < m; ++i) {
        std::string base = f.states()[key.first] + "~" + f.describe(key.second) + "~" + std::to_string(i + 1);
        while (std::find(states.begin(), states.end(), base) != states.end()) base += "'";
        states.push_back(base);
        std::size_t to = states.size() - 1;
        tables[p - 1][{from, key.second}] = CfptRule{to, StackAction::Stay, Word{rule.emit[i]}};
        from = to;
      }
      tables[p - 1][{from, key.second}] = CfptRule{rule.next, rule.action, Word{}};
    }
  return Cfpt(f.input(), f.output(), f.pebbles(), std::move(states), f.initial(), std::move(tables));
}

}  // namespace detail

/// CFPT for CbS(f, (g_i)): w -> g_{i1}(w) ... g_{im}(w) where i1...im = f(w).
///
/// f is normalized so that it emits at most one letter per transition and only
/// with a stay. Such an emission of i at height p becomes a push that starts
/// g_i on the new pebble; g_i's final pop hands control back to f. Subroutine
/// states are tagged with f's resume state, f's height and i.
inline Cfpt cbs_compose_cfpt(const Cfpt& f_in, const std::map<Symbol, Cfpt>& gs) {
  if (gs.empty()) throw ValidationError("cbs_compose_cfpt needs at least one substitution");
  const Cfpt f = detail::normalize_emissions(f_in);
  std::size_t l = 0;
  Alphabet output;
  for (Symbol i : f.output()) {
    auto it = gs.find(i);
    if (it == gs.end()) throw AlphabetMismatch("no substitution for letter '" + i.name() + "'");
  }
  for (const auto& [i, g] : gs) {
    if (!(g.input() == f.input())) throw AlphabetMismatch("substituted CFPTs must read the outer input alphabet");
    l = std::max(l, g.pebbles());
    output = alphabet_union(output, g.output());
  }
  const std::size_t k = f.pebbles();
  const std::size_t total = k + l;

  std::vector<std::string> states = f.states();
  std::vector<std::map<std::pair<std::size_t, Cfpt::Key>, CfptRule>> tables(total);

  // Subroutine blocks, created on demand: (resume state, f height, i) -> first state index.
  std::map<std::tuple<std::size_t, std::size_t, Symbol>, std::size_t> blocks;
  std::vector<std::tuple<std::size_t, std::size_t, Symbol>> pending;
  auto block = [&](std::size_t resume, std::size_t height, Symbol i) {
    auto key = std::make_tuple(resume, height, i);
    auto it = blocks.find(key);
    if (it != blocks.end()) return it->second;
    const Cfpt& g = gs.at(i);
    std::size_t first = states.size();
    for (const std::string& r : g.states())
      states.push_back(f.states()[resume] + "/" + std::to_string(height) + "/" + i.name() + "/" + r);
    blocks.emplace(key, first);
    pending.push_back(key);
    return first;
  };

  for (std::size_t p = 1; p <= k; ++p)
    for (const auto& [key, rule] : f.tables()[p - 1]) {
      if (rule.emit.empty()) {
        tables[p - 1][key] = rule;
        continue;
      }
      const Symbol i = rule.emit[0];
      std::size_t first = block(rule.next, p, i);
      tables[p - 1][key] = CfptRule{first + gs.at(i).initial(), StackAction::Push, Word{}};
    }

  // Outer letters under f's pebbles are irrelevant to the subroutine.
  const std::size_t ext = f.extended_size();
  for (const auto& [resume, height, i] : pending) {
    const Cfpt& g = gs.at(i);
    const std::size_t first = blocks.at({resume, height, i});
    const auto prefixes = letter_tuples(ext, height);
    for (std::size_t h = 1; h <= g.pebbles(); ++h)
      for (const auto& [key, rule] : g.tables()[h - 1]) {
        CfptRule out = rule;
        if (rule.action == StackAction::Pop && h == 1)
          out.next = resume;
        else
          out.next = first + rule.next;
        for (const auto& prefix : prefixes) {
          Cfpt::Key full = prefix;
          full.insert(full.end(), key.second.begin(), key.second.end());
          tables[height + h - 1][{first + key.first, full}] = out;
        }
      }
  }
  return Cfpt(f.input(), output, total, std::move(states), f.initial(), std::move(tables));
}

/// Reference semantics of CbS on CFPTs, evaluated recursively.
inline Word cbs_eval_cfpt(const Cfpt& f, const std::map<Symbol, Cfpt>& gs, const Word& w,
                          std::size_t budget = default_cfpt_budget()) {
  Word out;
  for (Symbol i : f.run_checked(w, budget)) {
    auto it = gs.find(i);
    if (it == gs.end()) throw AlphabetMismatch("no substitution for letter '" + i.name() + "'");
    out.append(it->second.run_checked(w, budget));
  }
  return out;
}

}  // namespace xduce
