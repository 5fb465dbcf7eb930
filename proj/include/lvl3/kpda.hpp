#pragma once

// k-iterated pushdown automata: structural checks, the computation relation,
// a generation-mode runner and the associated grammar (derivations).

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lvl3/pushdown.hpp"

namespace lvl3 {

/// pop_j or push_j(h).
struct Operation {
  enum class Kind { Pop, Push };
  Kind kind = Kind::Pop;
  int level = 1;
  Word pushed;

  static Operation pop(int j) { return {Kind::Pop, j, {}}; }
  static Operation push(int j, Word h) {
    if (h.empty()) throw std::domain_error("push_j needs a non-empty word");
    return {Kind::Push, j, std::move(h)};
  }

  Store apply(const Store& s) const {
    return kind == Kind::Pop ? lvl3::pop(level, s) : lvl3::push(level, pushed, s);
  }

  std::string to_string() const {
    std::string out = (kind == Kind::Pop ? "pop_" : "push_") + std::to_string(level);
    if (kind == Kind::Push) out += "(" + join(pushed, " ") + ")";
    return out;
  }

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// δ is keyed by (state, read letter or ε, topsyms).
struct TransitionKey {
  Symbol state;
  std::optional<Symbol> read;
  Word top;
  friend auto operator<=>(const TransitionKey&, const TransitionKey&) = default;
};

struct Move {
  Symbol target;
  Operation op;
  friend bool operator==(const Move&, const Move&) = default;
};

struct KPda {
  int k = 1;
  Alphabet states;
  Alphabet terminals;
  GradedAlphabet gamma;
  std::map<TransitionKey, std::vector<Move>> delta;

  // Data used by run(): initial/final state q0, bottom symbols γ_1..γ_{k-1}
  // and the input alphabet A ⊆ Γ_k.
  Symbol initial;
  Word bottoms;
  Alphabet input;

  void add(Symbol from, std::optional<Symbol> read, Word top, Symbol to, Operation op) {
    if (top.empty() || static_cast<int>(top.size()) > k)
      throw std::domain_error("topsyms key must have length in [1," + std::to_string(k) + "]");
    if (op.level < 1 || op.level > k) throw std::domain_error("operation level out of range: " + op.to_string());
    delta[TransitionKey{std::move(from), std::move(read), std::move(top)}].push_back(Move{std::move(to), std::move(op)});
  }

  const std::vector<Move>* moves(const Symbol& q, const std::optional<Symbol>& read, const Word& top) const {
    auto it = delta.find(TransitionKey{q, read, top});
    return it == delta.end() ? nullptr : &it->second;
  }
};

// ---------------------------------------------------------------------------
// Structural checks

/// Card δ(q,ε,γ) ≤ 1, Card δ(q,b,γ) ≤ 1, and an ε-move excludes reading moves.
inline bool validate_deterministic(const KPda& m) {
  std::map<std::pair<Symbol, Word>, std::pair<std::size_t, std::size_t>> counts;  // (eps, reading)
  for (const auto& [key, moves] : m.delta) {
    if (moves.size() > 1) return false;
    auto& c = counts[{key.state, key.top}];
    (key.read ? c.second : c.first) += moves.size();
  }
  for (const auto& [_, c] : counts)
    if (c.first == 1 && c.second > 0) return false;
  return true;
}

/// Σ_{b̄ ∈ {ε} ∪ B} Card δ(q, b̄, γ) ≤ 1 for every (q, γ).
inline bool validate_strongly_deterministic(const KPda& m) {
  std::map<std::pair<Symbol, Word>, std::size_t> counts;
  for (const auto& [key, moves] : m.delta)
    if ((counts[{key.state, key.top}] += moves.size()) > 1) return false;
  return true;
}

inline bool validate_level_partitioned(const KPda& m) {
  if (m.gamma.height() != m.k) return false;
  for (const auto& [key, moves] : m.delta) {
    for (std::size_t i = 0; i < key.top.size(); ++i)
      if (m.gamma.level_of(key.top[i]) != static_cast<int>(i) + 1) return false;
    for (const auto& mv : moves)
      if (mv.op.kind == Operation::Kind::Push)
        for (const auto& s : mv.op.pushed)
          if (m.gamma.level_of(s) != mv.op.level) return false;
  }
  for (std::size_t i = 0; i < m.bottoms.size(); ++i)
    if (m.gamma.level_of(m.bottoms[i]) != static_cast<int>(i) + 1) return false;
  for (const auto& a : m.input)
    if (m.gamma.level_of(a) != m.k) return false;
  return true;
}

struct NormalFormReport {
  bool level_partitioned = false;  // (LP)
  bool read_letter = false;        // (RL) reading moves are exactly δ(p,b,S) = (q, pop_1), S ∈ Γ_1
  bool push_increment = false;     // (PI) every push writes a word of length 2
  std::vector<std::string> issues;

  bool ok() const { return level_partitioned && read_letter && push_increment; }
};

inline NormalFormReport validate_normal_form(const KPda& m) {
  NormalFormReport r;
  r.level_partitioned = validate_level_partitioned(m);
  if (!r.level_partitioned) r.issues.push_back("LP: a symbol occurs outside its level");
  r.read_letter = true;
  r.push_increment = true;
  for (const auto& [key, moves] : m.delta) {
    for (const auto& mv : moves) {
      if (key.read) {
        const bool shape = key.top.size() == 1 && mv.op == Operation::pop(1) &&
                           (m.gamma.height() == 0 || m.gamma.level_of(key.top[0]) == 1);
        if (!shape) {
          r.read_letter = false;
          r.issues.push_back("RL: reading move " + key.state + "," + *key.read + "," + join(key.top, " ") + " -> " +
                             mv.op.to_string());
        }
      }
      if (mv.op.kind == Operation::Kind::Push && mv.op.pushed.size() != 2) {
        r.push_increment = false;
        r.issues.push_back("PI: " + mv.op.to_string() + " pushes " + std::to_string(mv.op.pushed.size()) + " symbols");
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Computations

/// Generation-mode configuration: the emitted word grows as letters are read.
struct Configuration {
  Symbol state;
  Word emitted;
  Store store;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// All successors of `c`. The empty store has topsyms ε, which is never a key.
inline std::vector<Configuration> step(const KPda& m, const Configuration& c) {
  std::vector<Configuration> out;
  const Word top = topsyms(c.store);
  if (top.empty()) return out;
  auto emit = [&](const std::optional<Symbol>& read) {
    if (const auto* moves = m.moves(c.state, read, top))
      for (const auto& mv : *moves) {
        Configuration next{mv.target, c.emitted, mv.op.apply(c.store)};
        if (read) next.emitted.push_back(*read);
        out.push_back(std::move(next));
      }
  };
  emit(std::nullopt);
  for (const auto& b : m.terminals) emit(b);
  return out;
}

/// γ_1[γ_2[...γ_{k-1}[w]...]] as a level-k store.
inline Store initial_store(const KPda& m, const Word& w) {
  if (static_cast<int>(m.bottoms.size()) != m.k - 1)
    throw std::invalid_argument("machine needs " + std::to_string(m.k - 1) + " bottom symbols");
  Store s = Store::of_letters(w);
  for (int i = m.k - 2; i >= 0; --i) {
    std::vector<Entry> es;
    es.push_back(Entry{m.bottoms[static_cast<std::size_t>(i)], std::move(s)});
    s = Store(m.k - i, std::move(es));
  }
  return s;
}

struct RunOutcome {
  enum class Status { Accepted, Stuck, FuelExhausted };
  Status status = Status::Stuck;
  Configuration last;
  std::size_t steps = 0;

  bool accepted() const { return status == Status::Accepted; }
  const Word& output() const { return last.emitted; }
};

inline constexpr std::size_t default_fuel = 1'000'000;

/// Runs a strongly deterministic machine from (q0, ε, γ_1[...[w]...]) and
/// collects the emitted word. Accepted iff it halts in (q0, ·, ε).
inline RunOutcome run(const KPda& m, const Word& w, std::size_t fuel = default_fuel,
                      std::vector<Configuration>* trace = nullptr) {
  if (!validate_strongly_deterministic(m)) throw std::invalid_argument("run requires a strongly deterministic machine");
  if (!m.input.empty() && !m.input.contains_word(w)) throw std::domain_error("input word outside the input alphabet");
  RunOutcome r;
  r.last = Configuration{m.initial, {}, initial_store(m, w)};
  if (trace) trace->push_back(r.last);
  for (;;) {
    if (r.last.store.empty()) {
      r.status = r.last.state == m.initial ? RunOutcome::Status::Accepted : RunOutcome::Status::Stuck;
      return r;
    }
    if (r.steps >= fuel) {
      r.status = RunOutcome::Status::FuelExhausted;
      return r;
    }
    auto next = step(m, r.last);
    if (next.empty()) {
      r.status = RunOutcome::Status::Stuck;
      return r;
    }
    if (next.size() > 1) throw std::logic_error("strongly deterministic machine produced several successors");
    r.last = std::move(next.front());
    ++r.steps;
    if (trace) trace->push_back(r.last);
  }
}

// ---------------------------------------------------------------------------
// Derivations of the associated grammar

using FormItem = std::variant<Symbol, VariableTerm>;  // terminal or variable
using SententialForm = std::vector<FormItem>;

inline std::string to_string(const SententialForm& f) {
  if (f.empty()) return "eps";
  std::string out;
  for (const auto& it : f) {
    if (const auto* t = std::get_if<Symbol>(&it))
      out += *t;
    else
      out += to_string(std::get<VariableTerm>(it));
  }
  return out;
}

/// Right-hand sides of all productions with left-hand side `v`: transition
/// rules (p,ω,q) → b̄ (p',ω',q) and (p,ω,q) → b̄, and decompositions
/// (p,ηη',q) → (p,η,r)(r,η',q).
inline std::vector<SententialForm> productions(const KPda& m, const VariableTerm& v) {
  std::vector<SententialForm> out;
  const Word top = topsyms(v.term);
  if (!top.empty()) {
    auto add = [&](const std::optional<Symbol>& read) {
      const auto* moves = m.moves(v.from, read, top);
      if (!moves) return;
      for (const auto& mv : *moves) {
        Store next = mv.op.apply(v.term);
        SententialForm rhs;
        if (read) rhs.emplace_back(*read);
        if (!next.empty())
          rhs.emplace_back(VariableTerm{mv.target, std::move(next), v.to});
        else if (mv.target != v.to)
          continue;
        out.push_back(std::move(rhs));
      }
    };
    add(std::nullopt);
    for (const auto& b : m.terminals) add(b);
  }
  const auto& es = v.term.entries();
  for (std::size_t cut = 1; cut < es.size(); ++cut) {
    Store left(v.term.level(), std::vector<Entry>(es.begin(), es.begin() + static_cast<std::ptrdiff_t>(cut)));
    Store right(v.term.level(), std::vector<Entry>(es.begin() + static_cast<std::ptrdiff_t>(cut), es.end()));
    for (const auto& r : m.states)
      out.push_back(SententialForm{VariableTerm{v.from, left, r}, VariableTerm{r, right, v.to}});
  }
  return out;
}

/// One-step successors of a sentential form (rewriting any single variable).
inline std::vector<SententialForm> derive_step(const KPda& m, const SententialForm& f) {
  std::vector<SententialForm> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto* v = std::get_if<VariableTerm>(&f[i]);
    if (!v) continue;
    for (auto& rhs : productions(m, *v)) {
      SententialForm g(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(i));
      g.insert(g.end(), rhs.begin(), rhs.end());
      g.insert(g.end(), f.begin() + static_cast<std::ptrdiff_t>(i) + 1, f.end());
      out.push_back(std::move(g));
    }
  }
  return out;
}

inline SententialForm as_form(const VariableWord& w) {
  SententialForm f;
  for (const auto& v : w) f.emplace_back(v);
  return f;
}

/// All sentential forms derivable from `start` in at most `depth` steps,
/// sorted by their printed form.
inline std::vector<SententialForm> derive(const KPda& m, const VariableWord& start, std::size_t depth) {
  std::map<std::string, SententialForm> seen;
  std::vector<SententialForm> frontier{as_form(start)};
  seen.emplace(to_string(frontier.front()), frontier.front());
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<SententialForm> next;
    for (const auto& f : frontier)
      for (auto& g : derive_step(m, f)) {
        auto key = to_string(g);
        if (seen.emplace(key, g).second) next.push_back(std::move(g));
      }
    frontier = std::move(next);
  }
  std::vector<SententialForm> out;
  out.reserve(seen.size());
  for (auto& [_, f] : seen) out.push_back(std::move(f));
  return out;
}

/// Yes / No are definitive (No means the bounded search space was exhausted);
/// Unknown means the bound was hit first.
enum class Verdict { Yes, No, Unknown };

/// (p, u, ω) ⊢* (q, ε, ε), by breadth-first search over recognition-mode configurations.
inline Verdict computes(const KPda& m, const Symbol& p, const Word& u, const Store& omega, const Symbol& q,
                        std::size_t bound) {
  struct Conf {
    Symbol state;
    std::size_t pos;
    Store store;
    bool operator<(const Conf& b) const {
      if (state != b.state) return state < b.state;
      if (pos != b.pos) return pos < b.pos;
      return store < b.store;
    }
  };
  std::set<Conf> seen;
  std::vector<Conf> frontier{{p, 0, omega}};
  seen.insert(frontier.front());
  for (std::size_t d = 0;; ++d) {
    std::vector<Conf> next;
    for (const auto& c : frontier) {
      if (c.store.empty()) {
        if (c.pos == u.size() && c.state == q) return Verdict::Yes;
        continue;
      }
      const Word top = topsyms(c.store);
      auto go = [&](const std::optional<Symbol>& read, std::size_t adv) {
        if (const auto* moves = m.moves(c.state, read, top))
          for (const auto& mv : *moves) {
            Conf n{mv.target, c.pos + adv, mv.op.apply(c.store)};
            if (seen.insert(n).second) next.push_back(std::move(n));
          }
      };
      go(std::nullopt, 0);
      if (c.pos < u.size()) go(u[c.pos], 1);
    }
    if (next.empty()) return Verdict::No;
    if (d >= bound) return Verdict::Unknown;
    frontier = std::move(next);
  }
}

/// (p, ω, q) →* u, by breadth-first search over leftmost derivations whose
/// terminal prefix agrees with u.
inline Verdict derives(const KPda& m, const Symbol& p, const Store& omega, const Symbol& q, const Word& u,
                       std::size_t bound) {
  struct Form {
    std::size_t matched;
    SententialForm rest;
  };
  auto normalize = [&](Form f) -> std::optional<Form> {
    std::size_t i = 0;
    while (i < f.rest.size()) {
      const auto* t = std::get_if<Symbol>(&f.rest[i]);
      if (!t) break;
      if (f.matched >= u.size() || u[f.matched] != *t) return std::nullopt;
      ++f.matched;
      ++i;
    }
    f.rest.erase(f.rest.begin(), f.rest.begin() + static_cast<std::ptrdiff_t>(i));
    std::size_t terminals = 0;
    for (const auto& it : f.rest) terminals += std::holds_alternative<Symbol>(it);
    if (f.matched + terminals > u.size()) return std::nullopt;
    return f;
  };
  std::set<std::string> seen;
  std::vector<Form> frontier;
  if (auto f = normalize(Form{0, {VariableTerm{p, omega, q}}})) frontier.push_back(std::move(*f));
  for (std::size_t d = 0;; ++d) {
    std::vector<Form> next;
    for (const auto& f : frontier) {
      if (f.rest.empty()) {
        if (f.matched == u.size()) return Verdict::Yes;
        continue;
      }
      const auto& v = std::get<VariableTerm>(f.rest.front());
      for (auto& rhs : productions(m, v)) {
        Form g{f.matched, std::move(rhs)};
        g.rest.insert(g.rest.end(), f.rest.begin() + 1, f.rest.end());
        auto n = normalize(std::move(g));
        if (!n) continue;
        if (seen.insert(std::to_string(n->matched) + "|" + to_string(n->rest)).second) next.push_back(std::move(*n));
      }
    }
    if (next.empty()) return Verdict::No;
    if (d >= bound) return Verdict::Unknown;
    frontier = std::move(next);
  }
}

struct AgreementReport {
  Verdict derivation = Verdict::Unknown;
  Verdict computation = Verdict::Unknown;
  bool vacuous = false;  // ω = ε: (p, ε, q) is not a variable

  bool inconclusive() const { return !vacuous && (derivation == Verdict::Unknown || computation == Verdict::Unknown); }
  bool agree() const { return vacuous || inconclusive() || derivation == computation; }
};

/// Compares (p,ω,q) →* u with (p,u,ω) ⊢* (q,ε,ε) under a common search bound.
inline AgreementReport check_derivation_computation_agreement(const KPda& m, const Symbol& p, const Store& omega,
                                                              const Symbol& q, const Word& u, std::size_t bound) {
  AgreementReport r;
  if (omega.empty()) {
    r.vacuous = true;
    return r;
  }
  r.derivation = derives(m, p, omega, q, u, bound);
  r.computation = computes(m, p, u, omega, q, bound);
  return r;
}

}  // namespace lvl3
