#pragma once

// Evaluators for recurrence systems: catenative (word-valued), compositional
// (homomorphism-valued), regular (classifier-driven with shift words) and
// polynomial (integer-valued).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lvl3/morphism.hpp"
#include "lvl3/polynomial.hpp"

namespace lvl3 {

namespace detail {

inline void require_index(const Alphabet& indices, const Symbol& i) {
  if (!indices.contains(i)) throw std::domain_error("unknown index '" + i + "'");
}

inline void require_word(const Alphabet& input, const Word& w) {
  for (const auto& a : w)
    if (!input.contains(a)) throw std::domain_error("letter '" + a + "' outside the input alphabet");
}

}  // namespace detail

/// f_i(aw) = f_{α(i,a,1)}(w) ⋯ f_{α(i,a,ℓ)}(w), with f_i(ε) given.
struct CatenativeSystem {
  Alphabet indices;
  Alphabet input;
  Alphabet output;
  std::map<std::pair<Symbol, Symbol>, Word> rules;  // (i, a) ↦ α(i,a,·) ∈ I*
  std::map<Symbol, Word> base;                      // f_i(ε) ∈ B*

  const Word& rule(const Symbol& i, const Symbol& a) const {
    auto it = rules.find({i, a});
    if (it == rules.end()) throw std::domain_error("no rule for " + i + "(" + a + " w)");
    return it->second;
  }

  void validate() const {
    for (const auto& i : indices) {
      auto b = base.find(i);
      if (b == base.end()) throw std::domain_error("no base value for '" + i + "'");
      if (!output.contains_word(b->second)) throw std::domain_error("base value of '" + i + "' leaves the output alphabet");
      for (const auto& a : input)
        for (const auto& j : rule(i, a)) detail::require_index(indices, j);
    }
  }
};

/// Values of every index at every suffix, computed from the right end of w.
inline std::vector<Word> eval_catenative_all(const CatenativeSystem& sys, const Word& w) {
  detail::require_word(sys.input, w);
  std::vector<Word> cur(sys.indices.size());
  for (std::size_t i = 0; i < sys.indices.size(); ++i) {
    auto it = sys.base.find(sys.indices[i]);
    if (it == sys.base.end()) throw std::domain_error("no base value for '" + sys.indices[i] + "'");
    cur[i] = it->second;
  }
  for (std::size_t pos = w.size(); pos-- > 0;) {
    std::vector<Word> next(sys.indices.size());
    for (std::size_t i = 0; i < sys.indices.size(); ++i)
      for (const auto& j : sys.rule(sys.indices[i], w[pos])) {
        const Word& v = cur[sys.indices.index_of(j)];
        next[i].insert(next[i].end(), v.begin(), v.end());
      }
    cur = std::move(next);
  }
  return cur;
}

inline Word eval_catenative(const CatenativeSystem& sys, const Symbol& i, const Word& w) {
  detail::require_index(sys.indices, i);
  return eval_catenative_all(sys, w)[sys.indices.index_of(i)];
}

/// H_i(aw) = H_{α(i,a,1)}(w) ∘ ⋯ ∘ H_{α(i,a,ℓ)}(w), leftmost factor applied first.
struct CompositionalSystem {
  Alphabet indices;
  Alphabet input;
  Alphabet working;                                 // C
  std::map<std::pair<Symbol, Symbol>, Word> rules;  // (i, a) ↦ α(i,a,·)
  std::map<Symbol, Homomorphism> base;              // H_i(ε) ∈ HOM(C*, C*)

  const Word& rule(const Symbol& i, const Symbol& a) const {
    auto it = rules.find({i, a});
    if (it == rules.end()) throw std::domain_error("no rule for " + i + "(" + a + " w)");
    return it->second;
  }

  void validate() const {
    for (const auto& i : indices) {
      auto b = base.find(i);
      if (b == base.end()) throw std::domain_error("no base value for '" + i + "'");
      if (!b->second.source().same_letters(working) || !b->second.target().subset_of(working))
        throw std::domain_error("base value of '" + i + "' is not an endomorphism of the working alphabet");
      for (const auto& a : input)
        for (const auto& j : rule(i, a)) detail::require_index(indices, j);
    }
  }
};

inline Homomorphism eval_compositional(const CompositionalSystem& sys, const Symbol& i, const Word& w) {
  detail::require_index(sys.indices, i);
  detail::require_word(sys.input, w);
  std::vector<Homomorphism> cur;
  for (const auto& j : sys.indices) cur.push_back(sys.base.at(j));
  for (std::size_t pos = w.size(); pos-- > 0;) {
    std::vector<Homomorphism> next;
    for (const auto& j : sys.indices) {
      Homomorphism h = Homomorphism::identity(sys.working);
      for (const auto& f : sys.rule(j, w[pos])) h = compose(h, cur[sys.indices.index_of(f)]);
      next.push_back(std::move(h));
    }
    cur = std::move(next);
  }
  return cur[sys.indices.index_of(i)];
}

/// h(H_i(w)(c)).
inline Word eval_level3(const CompositionalSystem& sys, const Symbol& i, const Word& w, const Homomorphism& final_map,
                        const Symbol& seed) {
  if (!sys.working.contains(seed)) throw std::domain_error("seed '" + seed + "' not in the working alphabet");
  return final_map.apply(eval_compositional(sys, i, w).apply(Word{seed}));
}

// ---------------------------------------------------------------------------
// Regular systems

/// Complete deterministic automaton over A; the class of a word is the state
/// it reaches from `start`.
struct Classifier {
  Alphabet states;
  Symbol start;
  std::map<std::pair<Symbol, Symbol>, Symbol> next;  // (state, letter) ↦ state

  /// Single-class classifier (the trivial congruence).
  static Classifier trivial(const Alphabet& input, const Symbol& name = "all") {
    Classifier c{Alphabet{name}, name, {}};
    for (const auto& a : input) c.next[{name, a}] = name;
    return c;
  }

  void validate(const Alphabet& input) const {
    if (!states.contains(start)) throw std::domain_error("classifier start state '" + start + "' undeclared");
    for (const auto& q : states)
      for (const auto& a : input) {
        auto it = next.find({q, a});
        if (it == next.end()) throw std::domain_error("classifier is not complete at (" + q + ", " + a + ")");
        if (!states.contains(it->second)) throw std::domain_error("classifier target '" + it->second + "' undeclared");
      }
  }

  Symbol classify(const Word& w, std::size_t from = 0) const {
    Symbol q = start;
    for (std::size_t i = from; i < w.size(); ++i) q = next.at({q, w[i]});
    return q;
  }
};

struct RegularFactor {
  Symbol index;
  Word shift;  // u in f_index(u·w)
  friend bool operator==(const RegularFactor&, const RegularFactor&) = default;
};

/// f_i(aw) = ∏_j f_{α(i,a,d,j)}(u_{i,a,d,j} w) where d is the class of w.
struct RegularSystem {
  Alphabet indices;
  Alphabet input;
  Alphabet output;
  Classifier classifier;
  std::map<std::tuple<Symbol, Symbol, Symbol>, std::vector<RegularFactor>> rules;  // (i, a, d)
  std::map<Symbol, Word> base;

  const std::vector<RegularFactor>& rule(const Symbol& i, const Symbol& a, const Symbol& d) const {
    auto it = rules.find({i, a, d});
    if (it == rules.end()) throw std::domain_error("no rule for " + i + "(" + a + " w) @" + d);
    return it->second;
  }

  void validate() const {
    classifier.validate(input);
    for (const auto& i : indices) {
      if (!base.count(i)) throw std::domain_error("no base value for '" + i + "'");
      for (const auto& a : input)
        for (const auto& d : classifier.states)
          for (const auto& f : rule(i, a, d)) {
            detail::require_index(indices, f.index);
            detail::require_word(input, f.shift);
          }
    }
  }

  /// Single-class, shift-free system equivalent to a catenative one.
  static RegularSystem from_catenative(const CatenativeSystem& cat) {
    RegularSystem r{cat.indices, cat.input, cat.output, Classifier::trivial(cat.input), {}, cat.base};
    for (const auto& [key, word] : cat.rules) {
      std::vector<RegularFactor> fs;
      for (const auto& j : word) fs.push_back({j, {}});
      r.rules[{key.first, key.second, r.classifier.start}] = std::move(fs);
    }
    return r;
  }
};

inline bool is_strict(const RegularSystem& sys) {
  for (const auto& [_, fs] : sys.rules)
    for (const auto& f : fs)
      if (!f.shift.empty()) return false;
  return true;
}

struct RegularOutcome {
  bool exhausted = false;
  Word value;  // meaningful when !exhausted
  std::size_t steps = 0;
};

/// Rewrites f_i(w) left to right; every rule application costs one unit of fuel.
inline RegularOutcome eval_regular(const RegularSystem& sys, const Symbol& i, const Word& w, std::size_t fuel) {
  detail::require_index(sys.indices, i);
  detail::require_word(sys.input, w);
  RegularOutcome out;
  std::vector<std::pair<Symbol, Word>> pending{{i, w}};  // stack, top = leftmost term
  while (!pending.empty()) {
    auto [j, v] = std::move(pending.back());
    pending.pop_back();
    if (v.empty()) {
      const Word& b = sys.base.at(j);
      out.value.insert(out.value.end(), b.begin(), b.end());
      continue;
    }
    if (out.steps >= fuel) {
      out.exhausted = true;
      out.value.clear();
      return out;
    }
    ++out.steps;
    const Symbol d = sys.classifier.classify(v, 1);
    const auto& factors = sys.rule(j, v.front(), d);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      Word arg = it->shift;
      arg.insert(arg.end(), v.begin() + 1, v.end());
      pending.emplace_back(it->index, std::move(arg));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial systems

enum class Ring { Naturals, Integers };

/// f_i(aw) = P_{i,a}(f_1(w), …, f_n(w)); variable j stands for index j.
struct PolynomialSystem {
  Alphabet indices;
  Alphabet input;
  Ring ring = Ring::Naturals;
  std::map<std::pair<Symbol, Symbol>, ZPoly> rules;
  std::vector<Integer> base;  // in index order

  const ZPoly& rule(const Symbol& i, const Symbol& a) const {
    auto it = rules.find({i, a});
    if (it == rules.end()) throw std::domain_error("no rule for " + i + "(" + a + " w)");
    return it->second;
  }

  void validate() const {
    if (base.size() != indices.size()) throw std::domain_error("base vector size differs from the number of indices");
    for (const auto& i : indices)
      for (const auto& a : input) {
        const ZPoly& p = rule(i, a);
        if (p.span() > indices.size()) throw std::domain_error("rule for " + i + " uses an undeclared variable");
        if (ring == Ring::Naturals)
          for (const auto& [_, c] : p.terms())
            if (c < 0) throw std::domain_error("negative coefficient in an ℕ-system (rule for " + i + ")");
      }
    if (ring == Ring::Naturals)
      for (const auto& b : base)
        if (b < 0) throw std::domain_error("negative base value in an ℕ-system");
  }

  VariableNames names() const {
    Word ix = indices.letters();
    return [ix](std::size_t i) { return i < ix.size() ? ix[i] : default_variable_name(i); };
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& [_, p] : rules) d = std::max<std::size_t>(d, p.total_degree());
    return d;
  }
};

/// (f_1(w), …, f_n(w)).
inline std::vector<Integer> eval_polynomial_vector(const PolynomialSystem& sys, const Word& w) {
  detail::require_word(sys.input, w);
  std::vector<Integer> cur = sys.base;
  for (std::size_t pos = w.size(); pos-- > 0;) {
    std::vector<Integer> next(sys.indices.size());
    for (std::size_t i = 0; i < sys.indices.size(); ++i) next[i] = sys.rule(sys.indices[i], w[pos]).eval(cur);
    cur = std::move(next);
  }
  return cur;
}

inline Integer eval_polynomial(const PolynomialSystem& sys, const Symbol& i, const Word& w) {
  detail::require_index(sys.indices, i);
  return eval_polynomial_vector(sys, w)[sys.indices.index_of(i)];
}

}  // namespace lvl3
