// xduce: command-line front end.
//
// Exit codes: 0 success, 1 parse or validation error, 2 alphabet mismatch or
// inapplicable operation, 3 step budget or size bound exhausted, 4 a check
// reported FAIL.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xduce/xduce.hpp"

namespace {

using namespace xduce;
using io::json;

struct Evaluable {
  Alphabet input;
  std::function<Word(const Word&)> fn;
};

Evaluable evaluable(const io::Document& d, std::size_t budget) {
  return std::visit(
      [&](const auto& x) -> Evaluable {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cfpt>)
          return {x.input(), [x, budget](const Word& w) { return x.run_checked(w, budget); }};
        else if constexpr (std::is_same_v<T, Sst> || std::is_same_v<T, SequentialTransducer> ||
                           std::is_same_v<T, Hdt0lSystem> || std::is_same_v<T, CfpExpr> ||
                           std::is_same_v<T, Pipeline>)
          return {x.input(), [x](const Word& w) { return x(w); }};
        else
          throw AlphabetMismatch("'" + io::type_tag(d.value) + "' documents do not denote word functions");
      },
      d.value);
}

struct Output {
  bool as_json = false;

  void emit(const json& j, const std::string& text) const {
    if (as_json) std::cout << j.dump(2) << "\n";
    else std::cout << text << "\n";
  }
};

std::string partition_text(const LayerPartition& p) { return p.str(); }

// --- run ----------------------------------------------------------------------

int cmd_run(const std::string& file, const std::string& input, std::optional<std::size_t> budget,
            std::optional<std::size_t> n, const Output& out) {
  io::Document d = io::load_document(file);
  Word result;
  if (auto* e = std::get_if<PolyWordExpr>(&d.value)) {
    if (!n) throw ValidationError("expressions need --n");
    result = eval_pwe(*e, *n);
  } else if (auto* f = std::get_if<PumpingFamily>(&d.value)) {
    if (!n) throw ValidationError("families need --n (the index)");
    result = f->value(*n);
  } else {
    Evaluable ev = evaluable(d, budget.value_or(default_cfpt_budget()));
    Word w = Word::parse(input);
    require_word_over(ev.input, w, "input");
    result = ev.fn(w);
  }
  out.emit({{"output", io::to_json(result)}}, result.str());
  return 0;
}

// --- check --------------------------------------------------------------------

int cmd_check(const std::string& file, const std::string& property, const Output& out) {
  io::Document d = io::load_document(file);
  bool pass = false;
  std::string detail;
  json report;
  if (property == "copyless") {
    const Sst* t = std::get_if<Sst>(&d.value);
    if (!t) throw AlphabetMismatch("copyless applies to SST documents");
    std::vector<std::string> copied;
    for (Symbol r : copied_registers(*t)) copied.push_back(r.name());
    pass = copied.empty();
    detail = pass ? "" : "copied registers: " + Word::from_names(copied).str();
    report["copied"] = copied;
  } else if (property.rfind("layered:", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(property.substr(8));
    } catch (const std::exception&) {
      throw ValidationError("layered:K needs a number");
    }
    std::optional<LayerPartition> p;
    if (const Sst* t = std::get_if<Sst>(&d.value)) p = infer_layering(*t, k);
    else if (const Hdt0lSystem* s = std::get_if<Hdt0lSystem>(&d.value)) p = infer_layering_hdt0l(*s, k);
    else throw AlphabetMismatch("layered:K applies to SST and HDT0L documents");
    pass = p.has_value();
    detail = pass ? "partition " + partition_text(*p) : "no " + std::to_string(k) + "-layering";
    if (p) report["partition"] = io::to_json(*p);
  } else if (property == "cfpt-legal") {
    const Cfpt* t = std::get_if<Cfpt>(&d.value);
    if (!t) throw AlphabetMismatch("cfpt-legal applies to CFPT documents");
    auto issues = validate_cfpt(*t);
    pass = issues.empty();
    for (const auto& s : issues) detail += (detail.empty() ? "" : "; ") + s;
    report["violations"] = issues;
  } else {
    throw AlphabetMismatch("unknown property '" + property + "'");
  }
  report["property"] = property;
  report["result"] = pass ? "PASS" : "FAIL";
  out.emit(report, std::string(pass ? "PASS" : "FAIL") + (detail.empty() ? "" : " " + detail));
  return pass ? 0 : 4;
}

// --- translate ------------------------------------------------------------------

constexpr std::size_t kSmokeLength = 4;
constexpr std::size_t kMaxInferredLayers = 3;

void smoke(const std::function<Word(const Word&)>& a, const std::function<Word(const Word&)>& b, const Alphabet& in) {
  std::size_t len = 0;
  for (std::size_t count = 1; len < kSmokeLength && count * in.size() <= 2000; ++len) count *= in.size();
  for (const Word& w : words_up_to(in, len))
    if (a(w) != b(w)) throw Error("translation disagrees with the source on '" + w.str() + "'");
}

int cmd_translate(const std::string& file, const std::string& to, std::optional<std::size_t> layers) {
  io::Document d = io::load_document(file);
  io::Document result;
  result.name = d.name.empty() ? "" : d.name + "_" + to;
  if (to == "hdt0l") {
    Sst t;
    if (const Sst* s = std::get_if<Sst>(&d.value)) t = *s;
    else if (const auto* q = std::get_if<SequentialTransducer>(&d.value)) t = sequential_to_sst(*q);
    else throw AlphabetMismatch("translation to hdt0l needs an SST or sequential document");
    std::optional<LayerPartition> p;
    if (layers) p = infer_layering(t, *layers);
    else if (d.layers && check_layered(t, *d.layers)) p = d.layers;
    else
      for (std::size_t k = 0; k <= kMaxInferredLayers && !p; ++k) p = infer_layering(t, k);
    if (!p) throw AlphabetMismatch("the SST is not layered; only layered SSTs translate to HDT0L systems");
    LayeredHdt0l h = sst_to_hdt0l(t, *p);
    smoke(t, h.system, t.input());
    result.value = h.system;
    result.layers = h.blocks;
  } else if (to == "sst") {
    if (const auto* q = std::get_if<SequentialTransducer>(&d.value)) {
      Sst t = sequential_to_sst(*q);
      smoke(*q, t, q->input());
      result.value = t;
    } else if (const Hdt0lSystem* s = std::get_if<Hdt0lSystem>(&d.value)) {
      std::optional<LayerPartition> p;
      if (layers) p = infer_layering_hdt0l(*s, *layers);
      else if (d.layers && check_layered_hdt0l(*s, *d.layers)) p = d.layers;
      if (p) {
        LayeredSst t = layered_hdt0l_to_sst(*s, *p);
        smoke(*s, t.machine, s->input());
        result.value = t.machine;
        result.layers = t.blocks;
      } else {
        if (layers) throw AlphabetMismatch("the system is not " + std::to_string(*layers) + "-layered");
        Sst t = hdt0l_to_sst(*s);
        smoke(*s, t, s->input());
        result.value = t;
      }
    } else {
      throw AlphabetMismatch("translation to sst needs an HDT0L or sequential document");
    }
  } else {
    throw AlphabetMismatch("unsupported target '" + to + "'");
  }
  std::cout << io::serialize(result) << "\n";
  return 0;
}

// --- cbs ------------------------------------------------------------------------

CfpExpr as_expr(const io::Document& d) {
  if (const auto* e = std::get_if<CfpExpr>(&d.value)) return *e;
  if (const auto* t = std::get_if<Sst>(&d.value)) return CfpExpr::reg(*t);
  if (const auto* s = std::get_if<SequentialTransducer>(&d.value)) return CfpExpr::reg(*s);
  throw AlphabetMismatch("'" + io::type_tag(d.value) + "' documents cannot be CbS operands");
}

int cmd_cbs(const std::string& outer_file, const std::vector<std::string>& subs, bool as_cfpt) {
  io::Document outer = io::load_document(outer_file);
  std::map<Symbol, io::Document> docs;
  for (const std::string& s : subs) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("--sub expects LETTER=FILE, got '" + s + "'");
    docs.emplace(Symbol(s.substr(0, eq)), io::load_document(s.substr(eq + 1)));
  }
  io::Document result;
  if (as_cfpt) {
    const Cfpt* f = std::get_if<Cfpt>(&outer.value);
    if (!f) throw AlphabetMismatch("--as cfpt needs a CFPT outer document");
    std::map<Symbol, Cfpt> gs;
    for (const auto& [i, d] : docs) {
      const Cfpt* g = std::get_if<Cfpt>(&d.value);
      if (!g) throw AlphabetMismatch("--as cfpt needs CFPT substitutions");
      gs.emplace(i, *g);
    }
    for (Symbol i : f->output())
      if (!gs.contains(i)) throw AlphabetMismatch("no substitution for letter '" + i.name() + "'");
    Cfpt c = cbs_compose_cfpt(*f, gs);
    smoke(c, [&](const Word& w) { return cbs_eval_cfpt(*f, gs, w); }, c.input());
    result.value = c;
  } else {
    CfpExpr f = as_expr(outer);
    std::map<Symbol, CfpExpr> gs;
    for (const auto& [i, d] : docs) gs.emplace(i, as_expr(d));
    for (Symbol i : f.output())
      if (!gs.contains(i)) throw AlphabetMismatch("no substitution for letter '" + i.name() + "'");
    for (auto it = gs.begin(); it != gs.end();)
      it = f.output().contains(it->first) ? std::next(it) : gs.erase(it);
    result.value = CfpExpr::cbs(f, gs);
  }
  std::cout << io::serialize(result) << "\n";
  return 0;
}

// --- sequences, growth, triples, rank, splits ----------------------------------

int cmd_seq_extract(const std::string& file, std::optional<std::size_t> max_check, const Output& out) {
  io::Document d = io::load_document(file);
  PumpingFamily fam;
  std::function<Word(const Word&)> f;
  std::size_t check = 0;
  auto unary = [](const Alphabet& a) {
    if (a.size() != 1) throw AlphabetMismatch("seq-extract needs a one-letter input alphabet");
  };
  if (const auto* t = std::get_if<Sst>(&d.value)) {
    unary(t->input());
    check = max_check.value_or(kBaseCheck);
    fam = extract_pumping_family(*t, check);
    f = *t;
  } else if (const auto* s = std::get_if<SequentialTransducer>(&d.value)) {
    unary(s->input());
    check = max_check.value_or(kBaseCheck);
    fam = extract_pumping_family(sequential_to_sst(*s), check);
    f = *s;
  } else if (const auto* e = std::get_if<CfpExpr>(&d.value)) {
    unary(e->input());
    check = max_check.value_or(kCfpCheck);
    fam = extract_cfp_family(*e, check);
    f = *e;
  } else {
    throw AlphabetMismatch("seq-extract applies to SST, sequential and cfp_expr documents");
  }
  const Alphabet in = evaluable(d, default_cfpt_budget()).input;
  const std::string verdict = family_mismatch(fam, f, in[0], check) ? "FAIL" : "PASS";
  json j = io::to_json(fam);
  json report{{"family", j}, {"check", verdict}, {"max_n", check}, {"star_height", fam.star_height()}};
  out.emit(report, j.dump(2) + "\n" + verdict + " (indices up to " + std::to_string(family_check_limit(fam, check)) +
                       ", star-height " + std::to_string(fam.star_height()) + ")");
  return verdict == "PASS" ? 0 : 4;
}

int cmd_growth(const std::string& file, std::size_t max_n, const Output& out) {
  io::Document d = io::load_document(file);
  Evaluable ev = evaluable(d, default_cfpt_budget());
  GrowthReport rep = growth_degree(ev.fn, unary_samples(ev.input), max_n);
  json j{{"lengths", rep.lengths}, {"max_n", max_n}, {"period", rep.period}};
  j["degree"] = rep.degree ? json(*rep.degree) : json(nullptr);
  out.emit(j, rep.degree ? "degree " + std::to_string(*rep.degree) : "degree undetermined (above " +
                                                                          std::to_string(rep.dmax) + ")");
  return 0;
}

int cmd_triples(const std::string& file, const std::string& letter, std::size_t max_len, const Output& out) {
  io::Document d = io::load_document(file);
  Sst t;
  if (const Sst* s = std::get_if<Sst>(&d.value)) t = *s;
  else if (const auto* q = std::get_if<SequentialTransducer>(&d.value)) t = sequential_to_sst(*q);
  else throw AlphabetMismatch("triples applies to SST and sequential documents");
  if (!check_copyless(t)) throw AlphabetMismatch("triples needs a copyless SST");
  if (!t.output()->contains(Symbol(letter))) throw AlphabetMismatch("'" + letter + "' is not an output letter");
  TripleTable table(t);
  DichotomyReport rep = check_dichotomy(t, Symbol(letter), max_len);
  json j{{"result", rep.pass ? "PASS" : "FAIL"}, {"monoid_size", table.elements().size()}, {"words", rep.words},
         {"splits", rep.splits}, {"producing", rep.producing}, {"pumping_checks", rep.pumping_checks}};
  if (!rep.pass) j["counterexample"] = rep.counterexample;
  std::ostringstream text;
  text << (rep.pass ? "PASS" : "FAIL") << " |N(f)|=" << table.elements().size() << " words=" << rep.words
       << " splits=" << rep.splits << " producing=" << rep.producing;
  if (!rep.pass) text << "\ncounterexample: " << rep.counterexample;
  out.emit(j, text.str());
  return rep.pass ? 0 : 4;
}

int cmd_rank(const std::string& file, const Output& out) {
  io::Document d = io::load_document(file);
  std::size_t r = 0;
  if (const auto* e = std::get_if<CfpExpr>(&d.value)) r = rank_bound(*e);
  else if (const Sst* t = std::get_if<Sst>(&d.value)) {
    if (!check_copyless(*t)) throw AlphabetMismatch("rank bounds are only known for copyless SSTs and expressions");
  } else if (!std::holds_alternative<SequentialTransducer>(d.value)) {
    throw AlphabetMismatch("rank applies to cfp_expr, SST and sequential documents");
  }
  out.emit({{"rank_bound", r}}, std::to_string(r));
  return 0;
}

int cmd_split_scan(const std::string& file, const std::string& word, const std::string& letters, std::size_t r,
                   const Output& out) {
  io::Document d = io::load_document(file);
  Sst t;
  if (const Sst* s = std::get_if<Sst>(&d.value)) t = *s;
  else if (const auto* q = std::get_if<SequentialTransducer>(&d.value)) t = sequential_to_sst(*q);
  else throw AlphabetMismatch("split-scan applies to SST and sequential documents");
  TripleTable table(t);
  Word s = Word::parse(word);
  require_word_over(t.input(), s, "word");
  std::vector<Symbol> pi;
  for (Symbol c : Word::parse(letters)) {
    if (!t.output()->contains(c)) throw AlphabetMismatch("'" + c.name() + "' is not an output letter");
    pi.push_back(c);
  }
  auto phi = [&](const Word& x) { return table.nu(x); };
  auto splits = enumerate_r_splits(s, phi, r);
  const bool producing = has_producing_r_split(table, s, pi, r);
  json js = json::array();
  for (const auto& c : splits) js.push_back(c);
  out.emit({{"splits", js}, {"producing", producing}},
           std::to_string(splits.size()) + " " + std::to_string(r) + "-splits; producing: " + (producing ? "yes" : "no"));
  return 0;
}

int cmd_corpus(const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::size_t n = 0;
  for (const io::Document& d : corpus::bundled()) {
    io::save_document(d, (std::filesystem::path(dir) / (d.name + ".json")).string());
    ++n;
  }
  std::cout << "wrote " << n << " documents to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"String transducers for comparison-free polyregular functions"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.as_json, "Machine-readable output");

  std::string file, input, property, to, letter, word, letters, dir;
  std::optional<std::size_t> budget, n, layers, max_check;
  std::size_t max_n = 16, max_len = 5, r = 1;
  std::vector<std::string> subs;
  bool as_cfpt = false;
  std::string as;

  auto* run = app.add_subcommand("run", "Evaluate a document on an input word");
  run->add_option("file", file)->required();
  run->add_option("--input", input, "Space-separated symbols");
  run->add_option("--budget", budget, "CFPT step budget");
  run->add_option("--n", n, "Parameter for pwe and family documents");

  auto* check = app.add_subcommand("check", "Check copyless, layered:K or cfpt-legal");
  check->add_option("file", file)->required();
  check->add_option("--property", property)->required();

  auto* translate = app.add_subcommand("translate", "Translate between SSTs and HDT0L systems");
  translate->add_option("file", file)->required();
  translate->add_option("--to", to)->required();
  translate->add_option("--layers", layers);

  auto* cbs = app.add_subcommand("cbs", "Compose by substitution");
  cbs->add_option("outer", file)->required();
  cbs->add_option("--sub", subs, "LETTER=FILE");
  cbs->add_option("--as", as, "cfpt to compose pebble transducers");

  auto* seq = app.add_subcommand("seq-extract", "Pumping family of a unary function");
  seq->add_option("file", file)->required();
  seq->add_option("--max-check", max_check);

  auto* growth = app.add_subcommand("growth", "Polynomial growth degree on a^n");
  growth->add_option("file", file)->required();
  growth->add_option("--max-n", max_n);

  auto* triples = app.add_subcommand("triples", "Producing-triple dichotomy check");
  triples->add_option("file", file)->required();
  triples->add_option("--letter", letter)->required();
  triples->add_option("--max-len", max_len);

  auto* rank = app.add_subcommand("rank", "Rank upper bound");
  rank->add_option("file", file)->required();

  auto* scan = app.add_subcommand("split-scan", "r-splits of a word and producing-split search");
  scan->add_option("file", file)->required();
  scan->add_option("--word", word)->required();
  scan->add_option("--letters", letters)->required();
  scan->add_option("--r", r);

  auto* corp = app.add_subcommand("corpus", "Write the bundled corpus");
  corp->add_option("--out", dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (const char* env = std::getenv("XDUCE_BUDGET"); env && !budget) budget = std::stoul(env);
    if (*run) return cmd_run(file, input, budget, n, out);
    if (*check) return cmd_check(file, property, out);
    if (*translate) return cmd_translate(file, to, layers);
    if (*cbs) {
      if (!as.empty() && as != "cfpt") throw AlphabetMismatch("--as only supports cfpt");
      as_cfpt = as == "cfpt";
      return cmd_cbs(file, subs, as_cfpt);
    }
    if (*seq) return cmd_seq_extract(file, max_check, out);
    if (*growth) return cmd_growth(file, max_n, out);
    if (*triples) return cmd_triples(file, letter, max_len, out);
    if (*rank) return cmd_rank(file, out);
    if (*scan) return cmd_split_scan(file, word, letters, r, out);
    if (*corp) return cmd_corpus(dir);
  } catch (const AlphabetMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
