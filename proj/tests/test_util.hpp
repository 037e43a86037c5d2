#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "xduce/xduce.hpp"

namespace xduce::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline Word random_word(Rng& rng, const Alphabet& a, std::size_t max_len) {
  Word w;
  const std::size_t len = pick(rng, max_len + 1);
  for (std::size_t i = 0; i < len; ++i) w.push_back(a[pick(rng, a.size())]);
  return w;
}

/// Each register occurs at most once over all images.
inline RegAssignment random_copyless(Rng& rng, const AlphabetRef& regs, const AlphabetRef& out,
                                     std::size_t max_letters = 2) {
  std::vector<Image> images(regs->size());
  for (std::size_t r = 0; r < regs->size(); ++r) {
    const std::size_t slot = pick(rng, regs->size() + 1);
    if (slot < regs->size()) images[slot].push_back(Atom::r(r));
  }
  for (Image& img : images) {
    std::shuffle(img.begin(), img.end(), rng);
    const std::size_t extra = pick(rng, max_letters + 1);
    for (std::size_t i = 0; i < extra; ++i)
      img.insert(img.begin() + static_cast<std::ptrdiff_t>(pick(rng, img.size() + 1)), Atom::sym((*out)[pick(rng, out->size())]));
  }
  return RegAssignment(regs, out, images);
}

/// Arbitrary (possibly copying) assignment.
inline RegAssignment random_assignment(Rng& rng, const AlphabetRef& regs, const AlphabetRef& out,
                                       std::size_t max_len = 3) {
  std::vector<Image> images(regs->size());
  for (Image& img : images) {
    const std::size_t len = pick(rng, max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
      if (pick(rng, 2)) img.push_back(Atom::r(pick(rng, regs->size())));
      else img.push_back(Atom::sym((*out)[pick(rng, out->size())]));
    }
  }
  return RegAssignment(regs, out, images);
}

inline Image random_image(Rng& rng, const AlphabetRef& regs, const AlphabetRef& out, std::size_t max_len = 3) {
  Image img;
  const std::size_t len = pick(rng, max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    if (pick(rng, 2)) img.push_back(Atom::r(pick(rng, regs->size())));
    else img.push_back(Atom::sym((*out)[pick(rng, out->size())]));
  }
  return img;
}

inline std::vector<Word> random_values(Rng& rng, const Alphabet& regs, const Alphabet& out) {
  std::vector<Word> v;
  for (std::size_t r = 0; r < regs.size(); ++r) v.push_back(random_word(rng, out, 3));
  return v;
}

/// Random SST with the given numbers of states and registers.
inline Sst random_sst(Rng& rng, const Alphabet& in, const Alphabet& out_letters, std::size_t states,
                      std::size_t registers, bool copyless) {
  std::vector<std::string> names;
  for (std::size_t q = 0; q < states; ++q) names.push_back("q" + std::to_string(q));
  std::vector<std::string> rnames;
  for (std::size_t r = 0; r < registers; ++r) rnames.push_back("R" + std::to_string(r));
  AlphabetRef regs = make_alphabet_ref(Alphabet::from_names(rnames));
  AlphabetRef out = make_alphabet_ref(out_letters);
  std::vector<Word> init = random_values(rng, *regs, *out);
  std::vector<std::vector<SstTransition>> delta(states);
  for (auto& row : delta)
    for (std::size_t c = 0; c < in.size(); ++c)
      row.push_back({pick(rng, states), copyless ? random_copyless(rng, regs, out) : random_assignment(rng, regs, out)});
  std::vector<Image> final;
  for (std::size_t q = 0; q < states; ++q) {
    if (copyless) {
      Image img;
      for (std::size_t r = 0; r < registers; ++r)
        if (pick(rng, 2)) img.push_back(Atom::r(r));
      std::shuffle(img.begin(), img.end(), rng);
      if (pick(rng, 2)) img.push_back(Atom::sym((*out)[pick(rng, out->size())]));
      final.push_back(img);
    } else {
      final.push_back(random_image(rng, regs, out));
    }
  }
  return Sst(in, out, names, 0, regs, init, delta, final);
}

inline PolyWordExpr random_pwe(Rng& rng, const Alphabet& a, std::size_t depth) {
  const std::size_t choice = depth == 0 ? 0 : pick(rng, 3);
  if (choice == 0) return PolyWordExpr::lit(random_word(rng, a, 3));
  if (choice == 1) return PolyWordExpr::cat(random_pwe(rng, a, depth - 1), random_pwe(rng, a, depth - 1));
  return PolyWordExpr::star(random_pwe(rng, a, depth - 1));
}

inline std::string corpus_path(const std::string& name) { return std::string(XDUCE_CORPUS_DIR) + "/" + name + ".json"; }

}  // namespace xduce::testing
