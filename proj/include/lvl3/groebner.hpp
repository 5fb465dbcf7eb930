#pragma once

// Buchberger's algorithm over ℚ with the product and chain criteria, reduced
// bases, normal forms, elimination and ideal intersection.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lvl3/polynomial.hpp"

namespace lvl3 {

/// Thrown when a computation would exceed its resource limits. Never
/// accompanied by a partial answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OrderKind { Grevlex, Lex, Block };

/// Variable 0 is the largest variable in every order. Block compares the
/// masked variables by grevlex first, then the rest by grevlex.
struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  std::vector<bool> first_block;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {OrderKind::Lex, {}}; }
  static MonomialOrder block(std::vector<bool> eliminated) { return {OrderKind::Block, std::move(eliminated)}; }

  /// Sign of a − b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case OrderKind::Lex: {
        const std::size_t n = std::max(a.span(), b.span());
        for (std::size_t i = 0; i < n; ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      }
      case OrderKind::Grevlex:
        return grevlex_part(a, b, nullptr, true);
      case OrderKind::Block: {
        int c = grevlex_part(a, b, &first_block, true);
        return c ? c : grevlex_part(a, b, &first_block, false);
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string name() const {
    switch (kind) {
      case OrderKind::Lex: return "lex";
      case OrderKind::Grevlex: return "grevlex";
      case OrderKind::Block: return "block";
    }
    return "?";
  }

 private:
  bool in_block(const std::vector<bool>* mask, std::size_t i, bool want) const {
    if (!mask) return true;
    const bool b = i < mask->size() && (*mask)[i];
    return b == want;
  }

  int grevlex_part(const Monomial& a, const Monomial& b, const std::vector<bool>* mask, bool want) const {
    const std::size_t n = std::max(a.span(), b.span());
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (in_block(mask, i, want)) {
        da += a[i];
        db += b[i];
      }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = n; i-- > 0;)
      if (in_block(mask, i, want) && a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }
};

inline MonomialOrder parse_order(const std::string& name) {
  if (name == "grevlex") return MonomialOrder::grevlex();
  if (name == "lex") return MonomialOrder::lex();
  throw std::invalid_argument("unknown monomial order '" + name + "' (expected grevlex or lex)");
}

struct GroebnerBudget {
  std::size_t max_basis = 2000;       // elements alive during Buchberger
  std::size_t max_reductions = 200000;  // S-polynomials reduced
};

namespace detail {

struct Term {
  Monomial m;
  Rational c;
};

// Terms strictly descending in the order; no zero coefficients.
using Sorted = std::vector<Term>;

inline Sorted sorted(const QPoly& p, const MonomialOrder& ord) {
  Sorted out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) out.push_back({m, c});
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return ord.greater(a.m, b.m); });
  return out;
}

inline QPoly unsorted(const Sorted& s) {
  QPoly p;
  for (const auto& t : s) p.add_term(t.m, t.c);
  return p;
}

inline void make_monic(Sorted& s) {
  if (s.empty() || s.front().c == 1) return;
  const Rational inv = 1 / s.front().c;
  for (auto& t : s) t.c *= inv;
}

// p − c·m·g, with m·g order-compatible so both sequences stay sorted.
inline Sorted sub_multiple(const Sorted& p, const Rational& c, const Monomial& m, const Sorted& g, const MonomialOrder& ord) {
  Sorted out;
  out.reserve(p.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial mg = m * g[j].m;
    if (i == p.size()) {
      out.push_back({std::move(mg), -c * g[j].c});
      ++j;
      continue;
    }
    const int cmp = ord.compare(p[i].m, mg);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(mg), -c * g[j].c});
      ++j;
    } else {
      Rational v = p[i].c - c * g[j].c;
      if (v != 0) out.push_back({p[i].m, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Full reduction of p by the (monic-led or not) divisors.
inline Sorted reduce(Sorted p, const std::vector<const Sorted*>& divisors, const MonomialOrder& ord) {
  Sorted rem;
  while (!p.empty()) {
    const Term& lt = p.front();
    const Sorted* hit = nullptr;
    for (const Sorted* g : divisors)
      if (!g->empty() && g->front().m.divides(lt.m)) {
        hit = g;
        break;
      }
    if (hit) {
      p = sub_multiple(p, lt.c / hit->front().c, lt.m / hit->front().m, *hit, ord);
    } else {
      rem.push_back(lt);
      p.erase(p.begin());
    }
  }
  return rem;
}

inline Sorted spoly(const Sorted& f, const Sorted& g, const MonomialOrder& ord) {
  const Monomial l = Monomial::lcm(f.front().m, g.front().m);
  Sorted a = sub_multiple(Sorted{}, -1 / f.front().c, l / f.front().m, f, ord);
  return sub_multiple(a, 1 / g.front().c, l / g.front().m, g, ord);
}

inline std::vector<QPoly> interreduce(std::vector<Sorted> g, const MonomialOrder& ord) {
  for (auto& s : g) make_monic(s);
  std::sort(g.begin(), g.end(), [&](const Sorted& a, const Sorted& b) { return ord.greater(b.front().m, a.front().m); });
  // Minimal: drop any element whose leading monomial a smaller kept one divides.
  std::vector<Sorted> kept;
  for (auto& s : g) {
    bool redundant = false;
    for (const auto& k : kept)
      if (k.front().m.divides(s.front().m)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::vector<const Sorted*> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(&kept[j]);
    Sorted tail(kept[i].begin() + 1, kept[i].end());
    Sorted red = reduce(std::move(tail), others, ord);
    red.insert(red.begin(), kept[i].front());
    kept[i] = std::move(red);
  }
  std::vector<QPoly> out;
  for (const auto& s : kept) out.push_back(unsorted(s));
  return out;
}

}  // namespace detail

inline Monomial leading_monomial(const QPoly& p, const MonomialOrder& ord) {
  if (p.is_zero()) throw std::domain_error("zero polynomial has no leading monomial");
  const Monomial* best = nullptr;
  for (const auto& [m, _] : p.terms())
    if (!best || ord.greater(m, *best)) best = &m;
  return *best;
}

inline Rational leading_coefficient(const QPoly& p, const MonomialOrder& ord) { return p.coefficient(leading_monomial(p, ord)); }

/// Terms printed from the largest monomial down.
inline std::string to_string(const QPoly& p, const MonomialOrder& ord, const VariableNames& names = default_variable_name) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : detail::sorted(p, ord)) {
    Rational c = t.c;
    const bool neg = c < 0;
    if (neg) c = -c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.m.span(); ++i)
      if (t.m[i]) {
        if (!mono.empty()) mono += "*";
        mono += names(i);
        if (t.m[i] > 1) mono += "^" + std::to_string(t.m[i]);
      }
    if (mono.empty()) out += c.get_str();
    else if (c == 1) out += mono;
    else out += c.get_str() + "*" + mono;
  }
  return out;
}

/// Remainder of multivariate division by `basis`; coefficients of the
/// divisors' leading terms need not be 1.
inline QPoly normal_form(const QPoly& p, const std::vector<QPoly>& basis, const MonomialOrder& ord = {}) {
  std::vector<detail::Sorted> gs;
  for (const auto& g : basis)
    if (!g.is_zero()) gs.push_back(detail::sorted(g, ord));
  std::vector<const detail::Sorted*> ptrs;
  for (const auto& g : gs) ptrs.push_back(&g);
  return detail::unsorted(detail::reduce(detail::sorted(p, ord), ptrs, ord));
}

inline QPoly s_polynomial(const QPoly& f, const QPoly& g, const MonomialOrder& ord = {}) {
  if (f.is_zero() || g.is_zero()) return QPoly();
  return detail::unsorted(detail::spoly(detail::sorted(f, ord), detail::sorted(g, ord), ord));
}

/// Reduced, monic Gröbner basis sorted by increasing leading monomial.
/// The zero ideal yields an empty basis; the unit ideal yields {1}.
inline std::vector<QPoly> groebner(const std::vector<QPoly>& gens, const MonomialOrder& ord = {}, const GroebnerBudget& budget = {}) {
  using detail::Sorted;
  std::vector<Sorted> g;
  for (const auto& p : gens)
    if (!p.is_zero()) {
      g.push_back(detail::sorted(p, ord));
      detail::make_monic(g.back());
    }
  for (const auto& s : g)
    if (s.front().m.is_one()) return {QPoly(1)};

  std::vector<bool> alive(g.size(), true);
  std::set<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});

  auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) != 0; };

  std::size_t reductions = 0;
  while (!pending.empty()) {
    // Normal selection strategy: smallest lcm first.
    auto pick = pending.begin();
    Monomial best = Monomial::lcm(g[pick->first].front().m, g[pick->second].front().m);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = Monomial::lcm(g[it->first].front().m, g[it->second].front().m);
      if (ord.greater(best, l)) {
        best = std::move(l);
        pick = it;
      }
    }
    const auto [i, j] = *pick;
    pending.erase(pick);
    if (!alive[i] || !alive[j]) continue;
    const Monomial& li = g[i].front().m;
    const Monomial& lj = g[j].front().m;
    if (Monomial::coprime(li, lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k)
      if (k != i && k != j && alive[k] && g[k].front().m.divides(best) && !is_pending(i, k) && !is_pending(j, k)) chain = true;
    if (chain) continue;

    if (++reductions > budget.max_reductions) throw BudgetExceeded("Gröbner basis: reduction budget exceeded");
    std::vector<const Sorted*> divisors;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (alive[k]) divisors.push_back(&g[k]);
    Sorted r = detail::reduce(detail::spoly(g[i], g[j], ord), divisors, ord);
    if (r.empty()) continue;
    detail::make_monic(r);
    if (r.front().m.is_one()) return {QPoly(1)};
    const std::size_t n = g.size();
    g.push_back(std::move(r));
    alive.push_back(true);
    std::size_t live = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (alive[k]) {
        pending.insert({k, n});
        ++live;
      }
    if (live + 1 > budget.max_basis) throw BudgetExceeded("Gröbner basis: basis size budget exceeded");
  }
  std::vector<Sorted> out;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (alive[k]) out.push_back(std::move(g[k]));
  return detail::interreduce(std::move(out), ord);
}

/// Generators with the reduced basis for `order` computed on construction.
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(std::vector<QPoly> gens, MonomialOrder order = {}, const GroebnerBudget& budget = {})
      : gens_(std::move(gens)), order_(std::move(order)), basis_(groebner(gens_, order_, budget)) {}

  const std::vector<QPoly>& generators() const { return gens_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<QPoly>& basis() const { return basis_; }

  bool is_zero() const { return basis_.empty(); }
  bool is_unit() const { return basis_.size() == 1 && basis_.front().is_constant(); }

  bool contains(const QPoly& p) const { return normal_form(p, basis_, order_).is_zero(); }

  bool contains(const Ideal& j) const {
    for (const auto& g : j.basis())
      if (!contains(g)) return false;
    return true;
  }

  /// Mutual containment.
  bool same_ideal(const Ideal& other) const { return contains(other) && other.contains(*this); }

 private:
  std::vector<QPoly> gens_;
  MonomialOrder order_;
  std::vector<QPoly> basis_;
};

inline bool ideal_membership(const QPoly& p, const Ideal& i) { return i.contains(p); }

/// I ∩ ℚ[remaining variables]; variable indices are kept unchanged.
inline Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& drop, const GroebnerBudget& budget = {}) {
  if (drop.empty()) return ideal;
  std::vector<bool> mask;
  for (auto v : drop) {
    if (mask.size() <= v) mask.resize(v + 1, false);
    mask[v] = true;
  }
  std::vector<QPoly> kept;
  for (auto& p : groebner(ideal.generators(), MonomialOrder::block(mask), budget)) {
    bool uses = false;
    for (auto v : drop) uses = uses || p.uses(v);
    if (!uses) kept.push_back(std::move(p));
  }
  return Ideal(std::move(kept), ideal.order(), budget);
}

/// t·I + (1 − t)·J with a fresh variable t, then t eliminated.
inline Ideal ideal_intersect(const Ideal& a, const Ideal& b, const GroebnerBudget& budget = {}) {
  std::size_t t = 0;
  for (const auto* side : {&a.generators(), &b.generators()})
    for (const auto& p : *side) t = std::max(t, p.span());
  const QPoly tv = QPoly::variable(t);
  std::vector<QPoly> gens;
  for (const auto& p : a.generators()) gens.push_back(tv * p);
  for (const auto& p : b.generators()) gens.push_back((QPoly(1) - tv) * p);
  return eliminate(Ideal(std::move(gens), a.order(), budget), {t}, budget);
}

}  // namespace lvl3
