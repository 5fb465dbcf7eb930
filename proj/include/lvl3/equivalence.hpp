#pragma once

// Equality of polynomial recurrence sequences (and of their fraction
// presentations), decided through an ascending chain of polynomial ideals,
// plus a degree-bounded Zariski closure of the reachable value set.

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvl3/groebner.hpp"
#include "lvl3/recurrence.hpp"

namespace lvl3 {

struct EquivalenceOptions {
  MonomialOrder order;
  std::size_t max_generators = 400;
  GroebnerBudget groebner;
  std::size_t max_layer_words = std::size_t(1) << 22;  // words held per BFS layer
};

/// The per-letter maps φ_a = (P_{1,a}, …, P_{n,a}) lifted to ℚ.
inline std::map<Symbol, std::vector<QPoly>> letter_maps(const PolynomialSystem& sys) {
  std::map<Symbol, std::vector<QPoly>> out;
  for (const auto& a : sys.input) {
    auto& v = out[a];
    for (const auto& i : sys.indices) v.push_back(QPoly::convert(sys.rule(i, a)));
  }
  return out;
}

inline std::vector<Rational> rational_point(const std::vector<Integer>& v) { return {v.begin(), v.end()}; }

struct ZeronessReport {
  bool zero = false;
  Word witness;                  // t(f(witness)) ≠ 0 when !zero; not necessarily minimal
  std::size_t nonzero_start = 0; // which starting polynomial the witness refutes
  std::vector<QPoly> invariant;  // reduced basis of the closed ideal when zero
  std::size_t generators = 0;
};

/// Decides whether every polynomial in `start` vanishes at f(w) for all w.
///
/// Grows I = ⟨start⟩ by g∘φ_a for every generator g and letter a until
/// closed. Every generator g is t∘φ_u for a tracked word u, and is tested
/// at the base point; a closed ideal whose generators all vanish at the base
/// point vanishes on the whole reachable set.
inline ZeronessReport zeroness(const PolynomialSystem& sys, const std::vector<QPoly>& start, const EquivalenceOptions& opt = {}) {
  sys.validate();
  const auto maps = letter_maps(sys);
  const auto base = rational_point(sys.base);
  ZeronessReport rep;

  struct Gen {
    QPoly p;
    Word word;
    std::size_t origin;
  };
  std::deque<Gen> queue;
  std::vector<QPoly> basis;
  for (std::size_t s = 0; s < start.size(); ++s)
    if (!start[s].is_zero()) queue.push_back({start[s], {}, s});
  std::vector<QPoly> gens;
  for (const auto& g : queue) gens.push_back(g.p);
  basis = groebner(gens, opt.order, opt.groebner);

  while (!queue.empty()) {
    Gen g = std::move(queue.front());
    queue.pop_front();
    if (g.p.eval(base) != 0) {
      rep.witness = g.word;
      rep.nonzero_start = g.origin;
      rep.generators = gens.size();
      return rep;
    }
    for (const auto& a : sys.input) {
      QPoly h = g.p.substitute(maps.at(a));
      if (normal_form(h, basis, opt.order).is_zero()) continue;
      if (gens.size() >= opt.max_generators) throw BudgetExceeded("zeroness: generator budget exceeded");
      gens.push_back(h);
      std::vector<QPoly> next = basis;
      next.push_back(h);
      basis = groebner(next, opt.order, opt.groebner);
      Word w = g.word;
      w.push_back(a);
      queue.push_back({std::move(h), std::move(w), g.origin});
    }
  }
  rep.zero = true;
  rep.invariant = std::move(basis);
  rep.generators = gens.size();
  return rep;
}

/// Words of length n in lexicographic order (input-alphabet order), with their value vectors.
struct Layer {
  std::vector<Word> words;
  std::vector<std::vector<Integer>> values;
};

inline Layer next_layer(const PolynomialSystem& sys, const Layer& cur) {
  Layer out;
  for (const auto& a : sys.input)
    for (std::size_t k = 0; k < cur.words.size(); ++k) {
      Word w{a};
      w.insert(w.end(), cur.words[k].begin(), cur.words[k].end());
      std::vector<Integer> v(sys.indices.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = sys.rule(sys.indices[i], a).eval(cur.values[k]);
      out.words.push_back(std::move(w));
      out.values.push_back(std::move(v));
    }
  return out;
}

/// Shortest, then lexicographically least, w with t(f(w)) ≠ 0, searching up to `max_length`.
inline std::optional<Word> minimal_witness(const PolynomialSystem& sys, const ZPoly& t, std::size_t max_length,
                                           const EquivalenceOptions& opt = {}) {
  Layer layer{{Word{}}, {sys.base}};
  for (std::size_t len = 0;; ++len) {
    for (std::size_t k = 0; k < layer.words.size(); ++k)
      if (t.eval(layer.values[k]) != 0) return layer.words[k];
    if (len == max_length) return std::nullopt;
    if (layer.words.size() * std::max<std::size_t>(sys.input.size(), 1) > opt.max_layer_words)
      throw BudgetExceeded("witness search: layer budget exceeded");
    layer = next_layer(sys, layer);
  }
}

enum class Decision { Equal, NotEqual };

struct EquivalenceResult {
  Decision verdict = Decision::Equal;
  Word witness;                  // minimal when NotEqual
  std::vector<QPoly> invariant;  // certificate basis when Equal
  std::size_t generators = 0;
};

/// Decides t(f(w)) = 0 for all w; a NotEqual verdict carries the minimal witness.
inline EquivalenceResult decide_zero(const PolynomialSystem& sys, const ZPoly& t, const EquivalenceOptions& opt = {}) {
  ZeronessReport z = zeroness(sys, {QPoly::convert(t)}, opt);
  EquivalenceResult r;
  r.generators = z.generators;
  if (z.zero) {
    r.invariant = std::move(z.invariant);
    return r;
  }
  auto w = minimal_witness(sys, t, z.witness.size(), opt);
  if (!w) throw std::logic_error("zeroness witness did not reproduce under direct evaluation");
  r.verdict = Decision::NotEqual;
  r.witness = std::move(*w);
  return r;
}

/// Indices of `b` follow those of `a`; names get a side prefix.
inline PolynomialSystem disjoint_union(const PolynomialSystem& a, const PolynomialSystem& b) {
  if (!a.input.same_letters(b.input)) throw std::domain_error("systems do not share an input alphabet");
  PolynomialSystem out;
  out.input = a.input;
  out.ring = (a.ring == Ring::Integers || b.ring == Ring::Integers) ? Ring::Integers : Ring::Naturals;
  const std::size_t na = a.indices.size();
  std::vector<std::size_t> shift(b.indices.size());
  for (const auto& i : a.indices) out.indices.add("1." + i);
  for (std::size_t k = 0; k < b.indices.size(); ++k) shift[k] = out.indices.add("2." + b.indices[k]);
  std::vector<std::size_t> ident(na);
  for (std::size_t k = 0; k < na; ++k) ident[k] = k;
  for (const auto& x : out.input) {
    for (const auto& i : a.indices) out.rules[{"1." + i, x}] = a.rule(i, x).shift_variables(ident);
    for (const auto& i : b.indices) out.rules[{"2." + i, x}] = b.rule(i, x).shift_variables(shift);
  }
  out.base = a.base;
  out.base.insert(out.base.end(), b.base.begin(), b.base.end());
  return out;
}

inline EquivalenceResult decide_equal(const PolynomialSystem& a, const Symbol& ia, const PolynomialSystem& b, const Symbol& ib,
                                      const EquivalenceOptions& opt = {}) {
  detail::require_index(a.indices, ia);
  detail::require_index(b.indices, ib);
  PolynomialSystem u = disjoint_union(a, b);
  ZPoly t = ZPoly::variable(a.indices.index_of(ia)) - ZPoly::variable(a.indices.size() + b.indices.index_of(ib));
  return decide_zero(u, t, opt);
}

/// f(w) = (g(w) − h(w)) / (f′(w) − g′(w)), all four read from one system.
/// Denominators are assumed nonzero everywhere and never checked.
struct FractionPresentation {
  PolynomialSystem system;
  Symbol g, h, fp, gp;

  void validate() const {
    system.validate();
    for (const auto* s : {&g, &h, &fp, &gp}) detail::require_index(system.indices, *s);
  }

  Rational value(const Word& w) const {
    auto v = eval_polynomial_vector(system, w);
    const auto& ix = system.indices;
    Integer num = v[ix.index_of(g)] - v[ix.index_of(h)];
    Integer den = v[ix.index_of(fp)] - v[ix.index_of(gp)];
    if (den == 0) throw std::domain_error("fraction presentation has a zero denominator at " + show(w));
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
};

/// Zeroness of (g₁−h₁)(f₂′−g₂′) − (g₂−h₂)(f₁′−g₁′) on the combined system.
inline EquivalenceResult decide_equal_fractions(const FractionPresentation& p, const FractionPresentation& q,
                                                const EquivalenceOptions& opt = {}) {
  p.validate();
  q.validate();
  PolynomialSystem u = disjoint_union(p.system, q.system);
  const std::size_t off = p.system.indices.size();
  auto x1 = [&](const Symbol& s) { return ZPoly::variable(p.system.indices.index_of(s)); };
  auto x2 = [&](const Symbol& s) { return ZPoly::variable(off + q.system.indices.index_of(s)); };
  ZPoly t = (x1(p.g) - x1(p.h)) * (x2(q.fp) - x2(q.gp)) - (x2(q.g) - x2(q.h)) * (x1(p.fp) - x1(p.gp));
  return decide_zero(u, t, opt);
}

// ---------------------------------------------------------------------------
// Zariski closure

struct ClosureOptions {
  unsigned degree = 2;           // candidate invariants have total degree ≤ degree
  std::size_t initial_samples = 0;  // 0: a few more than the number of candidate monomials
  EquivalenceOptions equivalence;
};

/// Monomials of total degree ≤ d in n variables, graded then lexicographic.
inline std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(n, 0);
  auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
    if (var == n) {
      out.emplace_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, d);
  std::stable_sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  return out;
}

namespace detail {

// Basis of {c : Σ_j c_j·row_j-th entry = 0 for every row}.
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (k != r && rows[k][c] != 0) {
        const Rational f = rows[k][c];
        for (std::size_t j = c; j < cols; ++j) rows[k][j] -= f * rows[r][j];
      }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -rows[k][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

struct ClosureResult {
  Ideal ideal;
  std::size_t samples = 0;
  std::size_t refinements = 0;
};

/// Vanishing ideal of the reachable set, exact in total degree ≤ opt.degree:
/// every returned generator vanishes on every f(w), and every polynomial of
/// degree ≤ opt.degree vanishing on all f(w) lies in the returned ideal.
inline ClosureResult zariski_closure(const PolynomialSystem& sys, const ClosureOptions& opt = {}) {
  sys.validate();
  const std::size_t n = sys.indices.size();
  const auto monos = monomials_up_to(n, opt.degree);
  const std::size_t want = opt.initial_samples ? opt.initial_samples : monos.size() + 4;

  std::set<std::vector<Integer>, bool (*)(const std::vector<Integer>&, const std::vector<Integer>&)> seen(
      [](const std::vector<Integer>& a, const std::vector<Integer>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](const Integer& x, const Integer& y) { return cmp(x, y) < 0; });
      });
  std::vector<std::vector<Integer>> samples;
  auto add = [&](const std::vector<Integer>& v) {
    if (seen.insert(v).second) samples.push_back(v);
  };
  Layer layer{{Word{}}, {sys.base}};
  for (std::size_t len = 0; len < 64 && samples.size() < want; ++len) {
    for (const auto& v : layer.values) add(v);
    if (sys.input.empty() || layer.words.size() * sys.input.size() > 4096) break;
    layer = next_layer(sys, layer);
  }

  ClosureResult res;
  for (;;) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& s : samples) {
      std::vector<Rational> row;
      for (const auto& m : monos) {
        Integer v = 1;
        for (std::size_t i = 0; i < m.span(); ++i)
          for (std::uint32_t e = 0; e < m[i]; ++e) v *= s[i];
        row.emplace_back(v);
      }
      rows.push_back(std::move(row));
    }
    std::vector<QPoly> cands;
    for (const auto& c : detail::nullspace(std::move(rows), monos.size())) {
      QPoly p;
      for (std::size_t j = 0; j < monos.size(); ++j)
        if (c[j] != 0) p.add_term(monos[j], c[j]);
      cands.push_back(std::move(p));
    }
    ZeronessReport z = zeroness(sys, cands, opt.equivalence);
    if (z.zero) {
      res.ideal = Ideal(std::move(cands), opt.equivalence.order, opt.equivalence.groebner);
      res.samples = samples.size();
      return res;
    }
    const std::size_t before = samples.size();
    add(eval_polynomial_vector(sys, z.witness));
    if (samples.size() == before) throw std::logic_error("zariski_closure: refuting point already sampled");
    ++res.refinements;
  }
}

}  // namespace lvl3
