#pragma once

// Iterated pushdown stores (k-pds), their elementary operations, bracket
// serialization, graded terms and substitution of undeterminates.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lvl3/word.hpp"

namespace lvl3 {

struct Entry;

/// A level-j store: a sequence of entries symbol[body] where every body is a
/// level-(j-1) store. Level 1 is the outermost level of the store.
class Store {
 public:
  Store() = default;
  explicit Store(int level) : level_(level) {
    if (level < 0) throw std::domain_error("negative store level");
  }
  Store(int level, std::vector<Entry> entries);

  /// Level-1 store whose entries are the letters of `w`.
  static Store of_letters(const Word& w);

  int level() const { return level_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Number of symbol occurrences at every depth.
  std::size_t weight() const;

  friend bool operator==(const Store& a, const Store& b);
  friend bool operator<(const Store& a, const Store& b);

 private:
  int level_ = 0;
  std::vector<Entry> entries_;
};

struct Entry {
  Symbol symbol;
  Store body;

  friend bool operator==(const Entry& a, const Entry& b) {
    return a.symbol == b.symbol && a.body == b.body;
  }
};

inline Store::Store(int level, std::vector<Entry> entries) : level_(level), entries_(std::move(entries)) {
  if (level_ == 0 && !entries_.empty()) throw std::domain_error("level-0 store must be empty");
  for (const auto& e : entries_)
    if (e.body.level() != level_ - 1)
      throw std::domain_error("entry '" + e.symbol + "' has body of level " + std::to_string(e.body.level()) +
                              " inside a level-" + std::to_string(level_) + " store");
}

inline Store Store::of_letters(const Word& w) {
  std::vector<Entry> es;
  es.reserve(w.size());
  for (const auto& s : w) es.push_back(Entry{s, Store(0)});
  return Store(1, std::move(es));
}

inline std::size_t Store::weight() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += 1 + e.body.weight();
  return n;
}

inline bool operator==(const Store& a, const Store& b) {
  return a.level_ == b.level_ && a.entries_ == b.entries_;
}

inline bool operator<(const Store& a, const Store& b) {
  if (a.level_ != b.level_) return a.level_ < b.level_;
  const auto n = std::min(a.entries_.size(), b.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.symbol != y.symbol) return x.symbol < y.symbol;
    if (x.body == y.body) continue;
    return x.body < y.body;
  }
  return a.entries_.size() < b.entries_.size();
}

/// Leftmost symbol of each level, outermost first; stops at the first empty store.
inline Word topsyms(const Store& s) {
  Word out;
  const Store* cur = &s;
  while (!cur->empty()) {
    out.push_back(cur->entries().front().symbol);
    cur = &cur->entries().front().body;
  }
  return out;
}

namespace detail {

inline void check_level(int j, const Store& s) {
  if (j < 1 || j > s.level())
    throw std::domain_error("operation level " + std::to_string(j) + " outside [1," + std::to_string(s.level()) + "]");
}

}  // namespace detail

/// pop_j: removes the leftmost entry of the leftmost level-j store.
/// An empty leftmost level-j store leaves `s` unchanged.
inline Store pop(int j, const Store& s) {
  detail::check_level(j, s);
  if (s.empty()) return s;
  std::vector<Entry> es = s.entries();
  if (j == 1) {
    es.erase(es.begin());
  } else {
    es.front().body = pop(j - 1, es.front().body);
  }
  return Store(s.level(), std::move(es));
}

/// push_j(h): replaces the head γ[d] of the leftmost level-j store by
/// h1[d]...hn[d]. An empty leftmost level-j store leaves `s` unchanged.
inline Store push(int j, const Word& h, const Store& s) {
  detail::check_level(j, s);
  if (h.empty()) throw std::domain_error("push of the empty word");
  if (s.empty()) return s;
  std::vector<Entry> es;
  es.reserve(s.size() + h.size());
  if (j == 1) {
    const Store& body = s.entries().front().body;
    for (const auto& sym : h) es.push_back(Entry{sym, body});
    es.insert(es.end(), s.entries().begin() + 1, s.entries().end());
  } else {
    es = s.entries();
    es.front().body = push(j - 1, h, es.front().body);
  }
  return Store(s.level(), std::move(es));
}

// ---------------------------------------------------------------------------
// Bracket serialization

struct StoreFormat {
  /// Separate adjacent entries by a single space. Required for re-parsing
  /// without an alphabet, since identifiers are maximal alphanumeric runs.
  bool spaced = true;
  /// Short notation: drop every empty body, not only the innermost ones.
  bool elide_empty = false;
};

namespace detail {

inline void serialize_into(const Store& s, const StoreFormat& fmt, std::string& out) {
  bool first = true;
  for (const auto& e : s.entries()) {
    if (!first && fmt.spaced) out += ' ';
    first = false;
    out += e.symbol;
    if (e.body.level() == 0) continue;
    if (e.body.empty() && fmt.elide_empty) continue;
    out += '[';
    serialize_into(e.body, fmt, out);
    out += ']';
  }
}

}  // namespace detail

/// Bracketed text. Innermost [ε] brackets are always elided; other empty
/// bodies print as "[]" unless `fmt.elide_empty` is set.
inline std::string serialize(const Store& s, const StoreFormat& fmt = {}) {
  std::string out;
  detail::serialize_into(s, fmt, out);
  return out;
}

/// Text with no separators, e.g. A1[A2[A3C3]B2[D3C3]]B1[B2[B3D3]].
inline std::string serialize_compact(const Store& s) { return serialize(s, StoreFormat{false, false}); }

enum class HatKind { Letter, Open, Close };

struct HatToken {
  HatKind kind;
  Symbol letter;  // only for HatKind::Letter
  friend bool operator==(const HatToken&, const HatToken&) = default;
};

/// The store as a word over Γ ∪ {x, x̄}: each entry with a non-innermost body
/// is written symbol x body x̄.
inline std::vector<HatToken> hat_word(const Store& s) {
  std::vector<HatToken> out;
  for (const auto& e : s.entries()) {
    out.push_back({HatKind::Letter, e.symbol});
    if (e.body.level() == 0) continue;
    out.push_back({HatKind::Open, {}});
    auto inner = hat_word(e.body);
    out.insert(out.end(), inner.begin(), inner.end());
    out.push_back({HatKind::Close, {}});
  }
  return out;
}

/// Renders a Γ̂-word with the letters x and x̄ (U+0304 combining macron).
inline std::string render_hat_word(const std::vector<HatToken>& w) {
  std::string out;
  for (const auto& t : w) {
    switch (t.kind) {
      case HatKind::Letter: out += t.letter; break;
      case HatKind::Open: out += "x"; break;
      case HatKind::Close: out += "x̄"; break;
    }
  }
  return out;
}

class StoreParseError : public std::runtime_error {
 public:
  StoreParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("at offset " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class StoreParser {
 public:
  StoreParser(std::string_view text, const Alphabet* alphabet) : text_(text), alphabet_(alphabet) {}

  Store parse(int level) {
    Store s = parse_store(level);
    skip_ws();
    if (pos_ != text_.size()) throw StoreParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return s;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::vector<Symbol> identifiers() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string_view run = text_.substr(start, pos_ - start);
    if (!alphabet_) return {Symbol(run)};
    try {
      return parse_word(run, *alphabet_);
    } catch (const std::domain_error& e) {
      throw StoreParseError(start, e.what());
    }
  }

  Store parse_store(int level) {
    std::vector<Entry> es;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || !ident_char(text_[pos_])) break;
      if (level == 0) throw StoreParseError(pos_, "symbol nested below the innermost level");
      auto syms = identifiers();
      for (std::size_t i = 0; i < syms.size(); ++i) es.push_back(Entry{syms[i], Store(level - 1)});
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '[') {
        if (level == 1) throw StoreParseError(pos_, "bracket below the innermost level");
        ++pos_;
        es.back().body = parse_store(level - 1);
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ']') throw StoreParseError(pos_, "expected ']'");
        ++pos_;
      }
    }
    return Store(level, std::move(es));
  }

  std::string_view text_;
  const Alphabet* alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses bracketed text as a level-`level` store. Bodies may be omitted
/// (short notation). With `alphabet`, runs of identifier characters are
/// split into alphabet symbols, which admits the compact notation.
inline Store parse_store(std::string_view text, int level, const Alphabet* alphabet = nullptr) {
  return detail::StoreParser(text, alphabet).parse(level);
}

// ---------------------------------------------------------------------------
// Graded alphabets and terms

/// Γ = Γ_1 ∪ ... ∪ Γ_k, pairwise disjoint.
class GradedAlphabet {
 public:
  GradedAlphabet() = default;
  explicit GradedAlphabet(std::vector<Word> levels) : levels_(std::move(levels)) {
    for (std::size_t i = 0; i < levels_.size(); ++i)
      for (const auto& s : levels_[i]) {
        auto [it, ok] = level_of_.emplace(s, static_cast<int>(i) + 1);
        if (!ok && it->second != static_cast<int>(i) + 1)
          throw std::invalid_argument("symbol '" + s + "' occurs in two levels");
      }
  }

  int height() const { return static_cast<int>(levels_.size()); }
  const Word& level(int i) const { return levels_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<Word>& levels() const { return levels_; }

  std::optional<int> level_of(const Symbol& s) const {
    auto it = level_of_.find(s);
    if (it == level_of_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Symbol& s) const { return level_of_.count(s) != 0; }

 private:
  std::vector<Word> levels_;
  std::map<Symbol, int> level_of_;
};

struct GradedReport {
  bool ok = true;
  std::string violation;  // first violation, empty when ok
  explicit operator bool() const { return ok; }
};

namespace detail {

inline bool graded_walk(const Store& s, int level_offset, int depth, const GradedAlphabet& gamma,
                        const GradedAlphabet& undet, std::string& why) {
  const int expected = level_offset + depth;
  for (const auto& e : s.entries()) {
    if (auto lv = gamma.level_of(e.symbol)) {
      if (*lv != expected) {
        why = e.symbol + " occurs at level " + std::to_string(expected) + " but belongs to level " + std::to_string(*lv);
        return false;
      }
    } else if (auto uv = undet.level_of(e.symbol)) {
      if (!e.body.empty()) {
        why = e.symbol + " occurs at a non-leaf position";
        return false;
      }
      if (*uv != expected) {
        why = e.symbol + " occurs at level " + std::to_string(expected) + " but belongs to level " + std::to_string(*uv);
        return false;
      }
    } else {
      why = "unknown symbol " + e.symbol;
      return false;
    }
    if (!graded_walk(e.body, level_offset, depth + 1, gamma, undet, why)) return false;
  }
  return true;
}

}  // namespace detail

/// True iff the level-j store `t` is a graded term over (Γ, 𝒰) of height k:
/// a symbol at depth d lies in Γ_{k-j+d} or 𝒰_{k-j+d}, and undeterminates are leaves.
inline GradedReport is_graded(const Store& t, const GradedAlphabet& gamma, const GradedAlphabet& undet = {}) {
  GradedReport r;
  const int k = std::max(gamma.height(), undet.height());
  if (t.level() > k) {
    r.ok = false;
    r.violation = "store level " + std::to_string(t.level()) + " exceeds alphabet height " + std::to_string(k);
    return r;
  }
  r.ok = detail::graded_walk(t, k - t.level(), 1, gamma, undet, r.violation);
  return r;
}

using Bindings = std::map<Symbol, Store>;

/// Replaces every bound undeterminate leaf by the entries of its binding.
/// A binding must have the level of the store in which the undeterminate occurs.
inline Store substitute(const Store& t, const Bindings& bindings) {
  if (bindings.empty()) return t;
  std::vector<Entry> es;
  es.reserve(t.size());
  for (const auto& e : t.entries()) {
    auto it = bindings.find(e.symbol);
    if (it == bindings.end()) {
      es.push_back(Entry{e.symbol, substitute(e.body, bindings)});
      continue;
    }
    if (!e.body.empty()) throw std::domain_error("undeterminate " + e.symbol + " is not a leaf");
    if (it->second.level() != t.level())
      throw std::domain_error("binding for " + e.symbol + " has level " + std::to_string(it->second.level()) +
                              ", expected " + std::to_string(t.level()));
    es.insert(es.end(), it->second.entries().begin(), it->second.entries().end());
  }
  return Store(t.level(), std::move(es));
}

/// A variable (p, ω, q) of the grammar associated with an automaton.
struct VariableTerm {
  Symbol from;
  Store term;
  Symbol to;
  friend bool operator==(const VariableTerm&, const VariableTerm&) = default;
};

using VariableWord = std::vector<VariableTerm>;

inline std::string to_string(const VariableTerm& v, const StoreFormat& fmt = {}) {
  return "(" + v.from + "," + serialize(v.term, fmt) + "," + v.to + ")";
}

inline std::string to_string(const VariableWord& w, const StoreFormat& fmt = {}) {
  std::string out;
  for (const auto& v : w) out += to_string(v, fmt);
  return out;
}

inline VariableWord substitute(const VariableWord& w, const Bindings& bindings) {
  VariableWord out;
  out.reserve(w.size());
  for (const auto& v : w) {
    if (v.term.empty()) throw std::domain_error("variable with empty store");
    out.push_back(VariableTerm{v.from, substitute(v.term, bindings), v.to});
  }
  return out;
}

}  // namespace lvl3
