#pragma once

// JSON documents.
//
// Alphabets and words are arrays of symbol names. Every document carries a
// "type" tag and may carry "name", "description" and, for machines, "layers"
// (an ordered list of blocks of register or working letters).

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "xduce/cfp.hpp"
#include "xduce/cfpt.hpp"
#include "xduce/core.hpp"
#include "xduce/error.hpp"
#include "xduce/hdt0l.hpp"
#include "xduce/monoid.hpp"
#include "xduce/sequences.hpp"
#include "xduce/sst.hpp"
#include "xduce/symbol.hpp"

namespace xduce::io {

using json = nlohmann::json;

using Payload = std::variant<Sst, SequentialTransducer, Hdt0lSystem, Cfpt, CfpExpr, Pipeline, PolyWordExpr,
                             PumpingFamily, Dfa, FreeMorphism, RegAssignment>;

struct Document {
  std::string name;
  std::string description;
  Payload value;
  std::optional<LayerPartition> layers;
};

inline std::string type_tag(const Payload& p) {
  static const char* const tags[] = {"sst",  "sequential", "hdt0l", "cfpt",     "cfp_expr",  "pipeline",
                                     "pwe",  "family",     "dfa",   "morphism", "assignment"};
  return tags[p.index()];
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ValidationError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("missing field '") + key + "'");
  return *it;
}

inline std::vector<std::string> strings(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const json& x : j) {
    if (!x.is_string()) throw ValidationError(std::string(what) + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw ValidationError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::size_t state_of(const std::vector<std::string>& states, const json& j) {
  if (!j.is_string()) throw ValidationError("state names must be strings");
  return state_index(states, j.get<std::string>());
}

}  // namespace detail

inline json to_json(const Alphabet& a) { return a.names(); }
inline json to_json(const Word& w) { return w.names(); }

inline Alphabet alphabet_from_json(const json& j) {
  auto names = detail::strings(j, "alphabet");
  Alphabet a = Alphabet::from_names(names);
  if (a.size() != names.size()) throw ValidationError("alphabet lists a symbol twice");
  return a;
}

inline Word word_from_json(const json& j) { return Word::from_names(detail::strings(j, "word")); }

inline json image_json(const Word& w) { return to_json(w); }

// --- morphisms, DFAs, assignments -------------------------------------------

inline json to_json(const FreeMorphism& h) {
  json img = json::object();
  for (std::size_t i = 0; i < h.source().size(); ++i) img[h.source()[i].name()] = to_json(h.image_at(i));
  return {{"src", to_json(h.source())}, {"tgt", to_json(h.target())}, {"image", img}};
}

inline FreeMorphism morphism_from_json(const json& j) {
  Alphabet src = alphabet_from_json(detail::field(j, "src")), tgt = alphabet_from_json(detail::field(j, "tgt"));
  std::map<Symbol, Word> img;
  for (const auto& [k, v] : detail::field(j, "image").items()) {
    if (!src.contains(Symbol(k))) throw ValidationError("morphism image for unknown letter '" + k + "'");
    img[Symbol(k)] = word_from_json(v);
  }
  for (Symbol c : src)
    if (!img.contains(c)) throw ValidationError("morphism has no image for '" + c.name() + "'");
  return FreeMorphism(src, tgt, img);
}

inline json to_json(const Dfa& d) {
  json delta = json::object(), acc = json::array();
  for (std::size_t q = 0; q < d.states().size(); ++q) {
    if (d.accepting()[q]) acc.push_back(d.states()[q]);
    json row = json::object();
    for (std::size_t c = 0; c < d.alphabet().size(); ++c) row[d.alphabet()[c].name()] = d.states()[d.delta()[q][c]];
    delta[d.states()[q]] = row;
  }
  return {{"alphabet", to_json(d.alphabet())}, {"states", d.states()}, {"initial", d.states()[d.initial()]},
          {"accepting", acc}, {"delta", delta}};
}

inline Dfa dfa_from_json(const json& j) {
  Alphabet a = alphabet_from_json(detail::field(j, "alphabet"));
  auto states = detail::strings(detail::field(j, "states"), "states");
  require_distinct_states(states);
  std::vector<bool> acc(states.size(), false);
  for (const std::string& s : detail::strings(detail::field(j, "accepting"), "accepting"))
    acc[state_index(states, s)] = true;
  std::vector<std::vector<std::size_t>> delta(states.size(), std::vector<std::size_t>(a.size()));
  const json& dj = detail::field(j, "delta");
  for (std::size_t q = 0; q < states.size(); ++q) {
    const json& row = detail::field(dj, states[q].c_str());
    for (std::size_t c = 0; c < a.size(); ++c) delta[q][c] = detail::state_of(states, detail::field(row, a[c].name().c_str()));
  }
  return Dfa(a, states, detail::state_of(states, detail::field(j, "initial")), acc, delta);
}

inline json to_json(const RegAssignment& a) {
  json img = json::object();
  for (std::size_t r = 0; r < a.size(); ++r) img[(*a.registers())[r].name()] = to_json(a.image_word(r));
  return {{"registers", to_json(*a.registers())}, {"output_alphabet", to_json(*a.output())}, {"image", img}};
}

inline RegAssignment assignment_from_json(const json& j) {
  AlphabetRef regs = make_alphabet_ref(alphabet_from_json(detail::field(j, "registers")));
  AlphabetRef out = make_alphabet_ref(alphabet_from_json(detail::field(j, "output_alphabet")));
  std::map<Symbol, Word> words;
  for (const auto& [k, v] : detail::field(j, "image").items()) words[Symbol(k)] = word_from_json(v);
  return RegAssignment::from_words(regs, out, words);
}

// --- layers -----------------------------------------------------------------

inline json to_json(const LayerPartition& p) {
  json out = json::array();
  for (const auto& b : p.blocks) {
    json block = json::array();
    for (Symbol s : b) block.push_back(s.name());
    out.push_back(block);
  }
  return out;
}

inline LayerPartition layers_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("layers must be an array of blocks");
  LayerPartition p;
  for (const json& b : j) {
    std::vector<Symbol> block;
    for (const std::string& s : detail::strings(b, "layer block")) block.emplace_back(s);
    p.blocks.push_back(std::move(block));
  }
  return p;
}

// --- SSTs and sequential transducers ----------------------------------------

inline json to_json(const Sst& t) {
  json init = json::object(), trans = json::object(), out = json::object();
  const Alphabet& regs = *t.registers();
  for (std::size_t r = 0; r < regs.size(); ++r) init[regs[r].name()] = to_json(t.initial_values()[r]);
  for (std::size_t q = 0; q < t.num_states(); ++q) {
    json row = json::object();
    for (std::size_t c = 0; c < t.input().size(); ++c) {
      const SstTransition& tr = t.transition(q, c);
      json assign = json::object();
      for (std::size_t r = 0; r < regs.size(); ++r) assign[regs[r].name()] = to_json(tr.assign.image_word(r));
      row[t.input()[c].name()] = {{"next", t.states()[tr.next]}, {"assign", assign}};
    }
    trans[t.states()[q]] = row;
    out[t.states()[q]] = to_json(t.final_word(q));
  }
  return {{"type", "sst"},
          {"input_alphabet", to_json(t.input())},
          {"output_alphabet", to_json(*t.output())},
          {"states", t.states()},
          {"initial", t.states()[t.initial()]},
          {"registers", to_json(regs)},
          {"initial_values", init},
          {"transitions", trans},
          {"output", out}};
}

/// Registers missing from an "assign" object keep their value; missing
/// initial values are empty; states without "output" get the empty output.
inline Sst sst_from_json(const json& j) {
  Alphabet in = alphabet_from_json(detail::field(j, "input_alphabet"));
  AlphabetRef out = make_alphabet_ref(alphabet_from_json(detail::field(j, "output_alphabet")));
  auto states = detail::strings(detail::field(j, "states"), "states");
  require_distinct_states(states);
  AlphabetRef regs = make_alphabet_ref(alphabet_from_json(detail::field(j, "registers")));
  std::vector<Word> init(regs->size());
  if (j.contains("initial_values"))
    for (const auto& [k, v] : j.at("initial_values").items()) {
      std::size_t r = regs->find(Symbol(k));
      if (r == regs->size()) throw ValidationError("initial value for unknown register '" + k + "'");
      init[r] = word_from_json(v);
    }
  std::vector<std::vector<SstTransition>> delta(states.size());
  const json& tj = detail::field(j, "transitions");
  for (std::size_t q = 0; q < states.size(); ++q) {
    const json& row = detail::field(tj, states[q].c_str());
    for (const auto& [k, v] : row.items())
      if (!in.contains(Symbol(k))) throw ValidationError("transition on unknown letter '" + k + "'");
    for (Symbol c : in) {
      const json& tr = detail::field(row, c.name().c_str());
      std::vector<Image> images;
      for (std::size_t r = 0; r < regs->size(); ++r) images.push_back({Atom::r(r)});
      if (tr.contains("assign"))
        for (const auto& [k, v] : tr.at("assign").items()) {
          std::size_t r = regs->find(Symbol(k));
          if (r == regs->size()) throw ValidationError("assignment to unknown register '" + k + "'");
          images[r] = RegAssignment::parse_image(*regs, *out, word_from_json(v));
        }
      delta[q].push_back({detail::state_of(states, detail::field(tr, "next")), RegAssignment(regs, out, images)});
    }
  }
  std::vector<Image> final(states.size());
  if (j.contains("output"))
    for (const auto& [k, v] : j.at("output").items())
      final[state_index(states, k)] = RegAssignment::parse_image(*regs, *out, word_from_json(v));
  return Sst(in, out, states, detail::state_of(states, detail::field(j, "initial")), regs, init, delta, final);
}

inline json to_json(const SequentialTransducer& s) {
  json trans = json::object(), fin = json::object();
  for (std::size_t q = 0; q < s.states().size(); ++q) {
    json row = json::object();
    for (std::size_t c = 0; c < s.input().size(); ++c) {
      const auto& tr = s.transition(q, c);
      row[s.input()[c].name()] = {{"next", s.states()[tr.next]}, {"emit", to_json(tr.emit)}};
    }
    trans[s.states()[q]] = row;
    fin[s.states()[q]] = to_json(s.final_output(q));
  }
  return {{"type", "sequential"},
          {"input_alphabet", to_json(s.input())},
          {"output_alphabet", to_json(s.output())},
          {"states", s.states()},
          {"initial", s.states()[s.initial()]},
          {"transitions", trans},
          {"final", fin}};
}

inline SequentialTransducer sequential_from_json(const json& j) {
  Alphabet in = alphabet_from_json(detail::field(j, "input_alphabet"));
  Alphabet out = alphabet_from_json(detail::field(j, "output_alphabet"));
  auto states = detail::strings(detail::field(j, "states"), "states");
  require_distinct_states(states);
  std::vector<std::vector<SequentialTransition>> delta(states.size());
  const json& tj = detail::field(j, "transitions");
  for (std::size_t q = 0; q < states.size(); ++q) {
    const json& row = detail::field(tj, states[q].c_str());
    for (Symbol c : in) {
      const json& tr = detail::field(row, c.name().c_str());
      delta[q].push_back({detail::state_of(states, detail::field(tr, "next")),
                          tr.contains("emit") ? word_from_json(tr.at("emit")) : Word{}});
    }
  }
  std::vector<Word> fin(states.size());
  if (j.contains("final"))
    for (const auto& [k, v] : j.at("final").items()) fin[state_index(states, k)] = word_from_json(v);
  return SequentialTransducer(in, out, states, detail::state_of(states, detail::field(j, "initial")), delta, fin);
}

// --- HDT0L systems ----------------------------------------------------------

inline json to_json(const Hdt0lSystem& s) {
  json rules = json::object(), fin = json::object();
  for (std::size_t c = 0; c < s.input().size(); ++c) {
    json r = json::object();
    for (std::size_t x = 0; x < s.working().size(); ++x) r[s.working()[x].name()] = to_json(s.rule(c).image_at(x));
    rules[s.input()[c].name()] = r;
  }
  for (std::size_t x = 0; x < s.working().size(); ++x)
    fin[s.working()[x].name()] = to_json(s.final_morphism().image_at(x));
  return {{"type", "hdt0l"},
          {"input_alphabet", to_json(s.input())},
          {"output_alphabet", to_json(s.output())},
          {"working_alphabet", to_json(s.working())},
          {"initial_word", to_json(s.initial_word())},
          {"rules", rules},
          {"final", fin}};
}

/// Letters missing from a rule are fixed; letters missing from "final" are erased.
inline Hdt0lSystem hdt0l_from_json(const json& j) {
  Alphabet in = alphabet_from_json(detail::field(j, "input_alphabet"));
  Alphabet out = alphabet_from_json(detail::field(j, "output_alphabet"));
  Alphabet work = alphabet_from_json(detail::field(j, "working_alphabet"));
  const json& rj = detail::field(j, "rules");
  std::vector<FreeMorphism> rules;
  for (Symbol c : in) {
    std::map<Symbol, Word> img;
    for (Symbol x : work) img[x] = Word{x};
    if (rj.contains(c.name()))
      for (const auto& [k, v] : rj.at(c.name()).items()) {
        if (!work.contains(Symbol(k))) throw ValidationError("rule for unknown working letter '" + k + "'");
        img[Symbol(k)] = word_from_json(v);
      }
    rules.emplace_back(work, work, img);
  }
  std::map<Symbol, Word> fin;
  for (Symbol x : work) fin[x] = Word{};
  for (const auto& [k, v] : detail::field(j, "final").items()) {
    if (!work.contains(Symbol(k))) throw ValidationError("final image for unknown working letter '" + k + "'");
    fin[Symbol(k)] = word_from_json(v);
  }
  return Hdt0lSystem(in, out, work, word_from_json(detail::field(j, "initial_word")), rules, FreeMorphism(work, out, fin));
}

// --- pebble transducers -----------------------------------------------------

inline json to_json(const Cfpt& t) {
  json tables = json::object();
  for (std::size_t p = 1; p <= t.pebbles(); ++p) {
    json tp = json::object();
    for (const auto& [key, rule] : t.tables()[p - 1]) {
      std::string letters;
      for (std::size_t i = 0; i < key.second.size(); ++i)
        letters += (i ? "," : "") + t.extended_symbol(key.second[i]).name();
      tp[t.states()[key.first]][letters] = {
          {"next", t.states()[rule.next]}, {"action", action_name(rule.action)}, {"emit", to_json(rule.emit)}};
    }
    tables[std::to_string(p)] = tp;
  }
  return {{"type", "cfpt"},
          {"input_alphabet", to_json(t.input())},
          {"output_alphabet", to_json(t.output())},
          {"k", t.pebbles()},
          {"states", t.states()},
          {"initial", t.states()[t.initial()]},
          {"tables", tables}};
}

inline Cfpt cfpt_from_json(const json& j) {
  Alphabet in = alphabet_from_json(detail::field(j, "input_alphabet"));
  Alphabet out = alphabet_from_json(detail::field(j, "output_alphabet"));
  const json& kj = detail::field(j, "k");
  if (!kj.is_number_unsigned() || kj.get<std::size_t>() == 0) throw ValidationError("k must be a positive integer");
  const std::size_t k = kj.get<std::size_t>();
  auto states = detail::strings(detail::field(j, "states"), "states");
  CfptBuilder b(in, out, k, states, detail::string_field(j, "initial"));
  for (const auto& [pk, tp] : detail::field(j, "tables").items()) {
    std::size_t p = 0;
    try {
      p = std::stoul(pk);
    } catch (const std::exception&) {
      throw ValidationError("table index '" + pk + "' is not a number");
    }
    if (p == 0 || p > k) throw ValidationError("table index " + pk + " outside 1.." + std::to_string(k));
    for (const auto& [state, row] : tp.items())
      for (const auto& [letters, rule] : row.items()) {
        Cfpt::Key key;
        std::stringstream ss(letters);
        for (std::string tok; std::getline(ss, tok, ',');) key.push_back(b.prototype().extended_index(Symbol(tok)));
        if (key.size() != p) throw ValidationError("table " + pk + " entry '" + letters + "' has the wrong arity");
        b.rule(state_index(states, state), key, detail::state_of(states, detail::field(rule, "next")),
               parse_action(detail::string_field(rule, "action")),
               rule.contains("emit") ? word_from_json(rule.at("emit")) : Word{});
      }
  }
  return b.build();
}

// --- expressions ------------------------------------------------------------

inline json to_json(const CfpExpr& e);

inline json to_json(const CfpExpr& e) {
  switch (e.kind()) {
    case CfpKind::Reg: return {{"type", "cfp_expr"}, {"node", "reg"}, {"machine", to_json(e.machine())}};
    case CfpKind::Cbs: {
      json subs = json::object();
      for (const auto& [i, g] : e.subs()) subs[i.name()] = to_json(g);
      return {{"type", "cfp_expr"}, {"node", "cbs"}, {"outer", to_json(e.outer())}, {"subs", subs}};
    }
    case CfpKind::Cond:
      return {{"type", "cfp_expr"}, {"node", "cond"}, {"dfa", to_json(e.lang())},
              {"then", to_json(e.then_branch())}, {"else", to_json(e.else_branch())}};
    case CfpKind::Concat:
      return {{"type", "cfp_expr"}, {"node", "concat"}, {"left", to_json(e.left())}, {"right", to_json(e.right())}};
  }
  return {};
}

inline CfpExpr cfp_from_json(const json& j) {
  const std::string node = detail::string_field(j, "node");
  if (node == "reg") {
    const json& m = detail::field(j, "machine");
    if (m.value("type", "sst") == "sequential") return CfpExpr::reg(sequential_from_json(m));
    return CfpExpr::reg(sst_from_json(m));
  }
  if (node == "cbs") {
    std::map<Symbol, CfpExpr> subs;
    for (const auto& [k, v] : detail::field(j, "subs").items()) subs.emplace(Symbol(k), cfp_from_json(v));
    return CfpExpr::cbs(cfp_from_json(detail::field(j, "outer")), subs);
  }
  if (node == "cond")
    return CfpExpr::cond(dfa_from_json(detail::field(j, "dfa")), cfp_from_json(detail::field(j, "then")),
                         cfp_from_json(detail::field(j, "else")));
  if (node == "concat")
    return CfpExpr::concat(cfp_from_json(detail::field(j, "left")), cfp_from_json(detail::field(j, "right")));
  throw ValidationError("unknown cfp_expr node '" + node + "'");
}

inline json to_json(const PolyWordExpr& e) {
  switch (e.kind()) {
    case PweKind::Lit: return {{"type", "pwe"}, {"node", "lit"}, {"word", to_json(e.word())}};
    case PweKind::Cat: return {{"type", "pwe"}, {"node", "cat"}, {"left", to_json(e.left())}, {"right", to_json(e.right())}};
    case PweKind::Star: return {{"type", "pwe"}, {"node", "star"}, {"body", to_json(e.body())}};
  }
  return {};
}

inline PolyWordExpr pwe_from_json(const json& j) {
  const std::string node = detail::string_field(j, "node");
  if (node == "lit") return PolyWordExpr::lit(word_from_json(detail::field(j, "word")));
  if (node == "cat") return PolyWordExpr::cat(pwe_from_json(detail::field(j, "left")), pwe_from_json(detail::field(j, "right")));
  if (node == "star") return PolyWordExpr::star(pwe_from_json(detail::field(j, "body")));
  throw ValidationError("unknown pwe node '" + node + "'");
}

inline json to_json(const PumpingFamily& f) {
  json init = json::array(), exprs = json::array();
  for (const Word& w : f.initial) init.push_back(to_json(w));
  for (const auto& e : f.exprs) exprs.push_back(to_json(e));
  return {{"type", "family"}, {"period", f.period}, {"initial", init}, {"exprs", exprs}};
}

inline PumpingFamily family_from_json(const json& j) {
  PumpingFamily f;
  const json& p = detail::field(j, "period");
  if (!p.is_number_unsigned()) throw ValidationError("period must be a positive integer");
  f.period = p.get<std::size_t>();
  for (const json& w : detail::field(j, "initial")) f.initial.push_back(word_from_json(w));
  for (const json& e : detail::field(j, "exprs")) f.exprs.push_back(pwe_from_json(e));
  f.validate();
  return f;
}

inline json to_json(const Poly& p) {
  json out = json::array();
  for (const Rational& c : p.coefficients()) {
    if (c.denominator() == 1) out.push_back(c.numerator());
    else out.push_back(std::to_string(c.numerator()) + "/" + std::to_string(c.denominator()));
  }
  return out;
}

inline json to_json(const PolySet& s) {
  json out = json::array();
  for (const Poly& p : s) out.push_back(to_json(p));
  return out;
}

// --- stages and pipelines ---------------------------------------------------

inline json stage_to_json(const Stage& s) {
  return std::visit([](const auto& x) { return to_json(x); }, s);
}

inline Stage stage_from_json(const json& j) {
  const std::string type = detail::string_field(j, "type");
  if (type == "sst") return sst_from_json(j);
  if (type == "hdt0l") return hdt0l_from_json(j);
  if (type == "sequential") return sequential_from_json(j);
  if (type == "cfp_expr") return cfp_from_json(j);
  if (type == "cfpt") return cfpt_from_json(j);
  throw ValidationError("'" + type + "' documents cannot be pipeline stages");
}

inline json to_json(const Pipeline& p) {
  json stages = json::array();
  for (const Stage& s : p.stages()) stages.push_back(stage_to_json(s));
  return {{"type", "pipeline"}, {"stages", stages}};
}

inline Pipeline pipeline_from_json(const json& j) {
  std::vector<Stage> stages;
  for (const json& s : detail::field(j, "stages")) stages.push_back(stage_from_json(s));
  return Pipeline(std::move(stages));
}

// --- documents --------------------------------------------------------------

inline json to_json(const Document& d) {
  json j = std::visit(
      [](const auto& x) {
        json out = to_json(x);
        return out;
      },
      d.value);
  j["type"] = type_tag(d.value);
  if (!d.name.empty()) j["name"] = d.name;
  if (!d.description.empty()) j["description"] = d.description;
  if (d.layers) j["layers"] = to_json(*d.layers);
  return j;
}

inline Document document_from_json(const json& j) {
  Document d;
  const std::string type = detail::string_field(j, "type");
  if (type == "sst") d.value = sst_from_json(j);
  else if (type == "sequential") d.value = sequential_from_json(j);
  else if (type == "hdt0l") d.value = hdt0l_from_json(j);
  else if (type == "cfpt") d.value = cfpt_from_json(j);
  else if (type == "cfp_expr") d.value = cfp_from_json(j);
  else if (type == "pipeline") d.value = pipeline_from_json(j);
  else if (type == "pwe") d.value = pwe_from_json(j);
  else if (type == "family") d.value = family_from_json(j);
  else if (type == "dfa") d.value = dfa_from_json(j);
  else if (type == "morphism") d.value = morphism_from_json(j);
  else if (type == "assignment") d.value = assignment_from_json(j);
  else throw ValidationError("unknown document type '" + type + "'");
  d.name = j.value("name", "");
  d.description = j.value("description", "");
  if (j.contains("layers")) d.layers = layers_from_json(j.at("layers"));
  return d;
}

inline Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return document_from_json(j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed document: ") + e.what());
  }
}

inline std::string serialize(const Document& d) { return to_json(d).dump(2); }

inline Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

inline void save_document(const Document& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize(d) << "\n";
}

template <class T>
Document make_document(std::string name, T value, std::string description = "") {
  return Document{std::move(name), std::move(description), Payload(std::move(value)), std::nullopt};
}

}  // namespace xduce::io
