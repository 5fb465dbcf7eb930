#pragma once

// Independent reference computations for the test suite. None of these call
// the evaluators under test; they only read the data fields of the systems.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lvl3/lvl3.hpp"

namespace oracle {

using lvl3::Integer;
using lvl3::Symbol;
using lvl3::Word;

// F_0 = F_1 = 1.
inline Integer fibonacci(unsigned long n) {
  Integer a = 1, b = 1;
  for (unsigned long i = 0; i < n; ++i) {
    Integer c = a + b;
    a = b;
    b = c;
  }
  return a;
}

inline Integer factorial(unsigned long n) {
  Integer r = 1;
  for (unsigned long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Word letters(const std::string& s) {
  Word w;
  for (char c : s) w.emplace_back(1, c);
  return w;
}

// Every word over `alphabet` of length ≤ n, shortest first, then in alphabet order.
inline std::vector<Word> words_up_to(const Word& alphabet, std::size_t n) {
  std::vector<Word> out{Word{}};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t to = out.size();
    for (std::size_t k = from; k < to; ++k)
      for (const auto& a : alphabet) {
        Word w = out[k];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    from = to;
  }
  return out;
}

// Catenative value by direct recursion on the first letter, no suffix sharing.
inline Word catenative(const lvl3::CatenativeSystem& s, const Symbol& i, const Word& w, std::size_t from = 0) {
  if (from == w.size()) return s.base.at(i);
  Word out;
  for (const auto& j : s.rules.at({i, w[from]})) {
    Word part = catenative(s, j, w, from + 1);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline Word substitute_letters(const std::map<Symbol, Word>& images, const Word& w) {
  Word out;
  for (const auto& s : w) {
    const Word& img = images.at(s);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

// h(H^{a_n}(...H^{a_1}(c))) letter by letter.
inline Word hdt0l(const lvl3::HDT0LSystem& s, const Word& w) {
  Word cur{s.seed};
  for (const auto& a : w) {
    std::map<Symbol, Word> img;
    for (const auto& c : s.working) img[c] = s.tables.at(a).image(c);
    cur = substitute_letters(img, cur);
  }
  std::map<Symbol, Word> fin;
  for (const auto& c : s.working) fin[c] = s.final_map.image(c);
  return substitute_letters(fin, cur);
}

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), std::vector<Integer>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline IntMatrix to_rows(const lvl3::Matrix& m) {
  IntMatrix out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

// L0 · M_{w_1} ⋯ M_{w_n} · C0, left to right.
inline Integer series(const lvl3::LinearRepresentation& r, const Word& w) {
  IntMatrix row = to_rows(r.initial);
  for (const auto& a : w) row = multiply(row, to_rows(r.transitions.at(a)));
  return multiply(row, to_rows(r.final))[0][0];
}

// Polynomial system value by recursion on the first letter.
inline std::vector<Integer> polynomial(const lvl3::PolynomialSystem& s, const Word& w, std::size_t from = 0) {
  if (from == w.size()) return s.base;
  std::vector<Integer> tail = polynomial(s, w, from + 1);
  std::vector<Integer> out;
  for (const auto& i : s.indices) {
    Integer v = 0;
    for (const auto& [m, c] : s.rules.at({i, w[from]}).terms()) {
      Integer t = c;
      for (std::size_t x = 0; x < m.span(); ++x)
        for (std::uint32_t e = 0; e < m[x]; ++e) t *= tail[x];
      v += t;
    }
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Run-length words over single-character letters for the n^n example.

using Rle = std::vector<std::pair<char, Integer>>;

inline void append(Rle& w, char c, const Integer& n) {
  if (n == 0) return;
  if (!w.empty() && w.back().first == c)
    w.back().second += n;
  else
    w.emplace_back(c, n);
}

inline void append(Rle& w, const Rle& v) {
  for (const auto& [c, n] : v) append(w, c, n);
}

inline Integer length(const Rle& w) {
  Integer n = 0;
  for (const auto& [_, k] : w) n += k;
  return n;
}

inline std::string expand(const Rle& w) {
  std::string out;
  for (const auto& [c, n] : w) out.append(n.get_ui(), c);
  return out;
}

// A morphism on {x, y} as the run-length images of x and y.
struct RleMap {
  Rle x, y;
};

inline Rle apply(const RleMap& m, const Rle& w) {
  Rle out;
  for (const auto& [c, n] : w) {
    const Rle& img = c == 'x' ? m.x : m.y;
    if (img.size() == 1) {
      append(out, img[0].first, img[0].second * n);
    } else {
      for (Integer k = 0; k < n; ++k) append(out, img);
    }
  }
  return out;
}

// f then g.
inline RleMap then(const RleMap& f, const RleMap& g) { return {apply(g, f.x), apply(g, f.y)}; }

// Unmemoized unfolding of H(a w) = H∘H, H(b w) = P∘H∘K', H(c w) = H∘K over
// the letters of w, with K, K', P constant.
inline RleMap unfold_h(const std::string& w, std::size_t from = 0) {
  const RleMap id{{{'x', 1}}, {{'y', 1}}};
  const RleMap k{{{'x', 1}}, {{'x', 1}, {'y', 1}}};
  const RleMap kp{{{'x', 1}}, {}};
  const RleMap p{{{'y', 1}}, {{'x', 1}}};
  if (from == w.size()) return id;
  switch (w[from]) {
    case 'a': return then(unfold_h(w, from + 1), unfold_h(w, from + 1));
    case 'b': return then(then(p, unfold_h(w, from + 1)), kp);
    default: return then(unfold_h(w, from + 1), k);
  }
}

// a^n b c^n.
inline std::string f_word(std::size_t n) { return std::string(n, 'a') + "b" + std::string(n, 'c'); }

// Counts of x and y in the images of x and y, tracked as a 2×2 matrix
// N[s][t] = #t in H(s), composed by matrix product.
inline IntMatrix count_h(const std::string& w, std::size_t from = 0) {
  const IntMatrix id{{1, 0}, {0, 1}};
  const IntMatrix k{{1, 0}, {1, 1}};
  const IntMatrix kp{{1, 0}, {0, 0}};
  const IntMatrix p{{0, 1}, {1, 0}};
  if (from == w.size()) return id;
  IntMatrix tail = count_h(w, from + 1);
  switch (w[from]) {
    case 'a': return multiply(tail, tail);
    case 'b': return multiply(multiply(p, tail), kp);
    default: return multiply(tail, k);
  }
}

// ---------------------------------------------------------------------------
// Multivariate division over Q with an explicit term list, for checking
// reductions independently of the library's sorted-term reducer.

inline lvl3::QPoly remainder(lvl3::QPoly p, const std::vector<lvl3::QPoly>& divisors, const lvl3::MonomialOrder& ord) {
  using lvl3::Monomial;
  using lvl3::QPoly;
  auto lead = [&](const QPoly& q) {
    const Monomial* best = nullptr;
    for (const auto& [m, _] : q.terms())
      if (!best || ord.greater(m, *best)) best = &m;
    return *best;
  };
  QPoly r;
  while (!p.is_zero()) {
    const Monomial lm = lead(p);
    const lvl3::Rational lc = p.coefficient(lm);
    bool divided = false;
    for (const auto& g : divisors) {
      if (g.is_zero()) continue;
      const Monomial lg = lead(g);
      if (!lg.divides(lm)) continue;
      p -= g.times_term(lm / lg, lc / g.coefficient(lg));
      divided = true;
      break;
    }
    if (!divided) {
      r.add_term(lm, lc);
      p -= QPoly(lm, lc);
    }
  }
  return r;
}

}  // namespace oracle
