#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lvl3 {

using Symbol = std::string;
using Word = std::vector<Symbol>;

using Integer = mpz_class;
using Rational = mpq_class;

/// Concatenation of the letters of `w`, separated by `sep`.
inline std::string join(const Word& w, std::string_view sep = "") {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += w[i];
  }
  return out;
}

/// Human-facing rendering: space-free, `eps` for the empty word.
inline std::string show(const Word& w) { return w.empty() ? std::string("eps") : join(w); }

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Word repeat(const Symbol& s, std::size_t n) { return Word(n, s); }

// Finite ordered alphabet. Declaration order is significant: it fixes matrix
// indices and the lexicographic order used by witness searches.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::initializer_list<Symbol> letters) {
    for (const auto& s : letters) add(s);
  }
  explicit Alphabet(const Word& letters) {
    for (const auto& s : letters) add(s);
  }

  /// Appends `s` unless already present; returns its index.
  std::size_t add(const Symbol& s) {
    auto [it, inserted] = index_.emplace(s, letters_.size());
    if (inserted) letters_.push_back(s);
    return it->second;
  }

  bool contains(const Symbol& s) const { return index_.count(s) != 0; }

  std::size_t index_of(const Symbol& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw std::domain_error("letter '" + s + "' not in alphabet");
    return it->second;
  }

  std::optional<std::size_t> find(const Symbol& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Symbol& operator[](std::size_t i) const { return letters_[i]; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Word& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  bool contains_word(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [this](const Symbol& s) { return contains(s); });
  }

  bool subset_of(const Alphabet& other) const { return other.contains_word(letters_); }

  /// Same letter set, ignoring order.
  bool same_letters(const Alphabet& other) const {
    return size() == other.size() && subset_of(other);
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.letters_ == b.letters_; }

 private:
  Word letters_;
  std::map<Symbol, std::size_t> index_;
};

/// Splits `text` into letters of `alphabet`: whitespace-separated tokens are
/// taken as-is when present, otherwise the greedy longest match is used.
/// "eps" and "" denote the empty word.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word out;
  if (text.empty() || text == "eps") return out;
  if (text.find_first_of(" \t") != std::string_view::npos) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
      if (j > i) {
        Symbol s(text.substr(i, j - i));
        if (!alphabet.contains(s)) throw std::domain_error("letter '" + s + "' not in alphabet");
        out.push_back(std::move(s));
      }
      i = j;
    }
    return out;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t best = 0;
    for (const auto& s : alphabet)
      if (s.size() > best && text.substr(i, s.size()) == s) best = s.size();
    if (best == 0)
      throw std::domain_error("cannot split '" + std::string(text) + "' at offset " + std::to_string(i));
    out.emplace_back(text.substr(i, best));
    i += best;
  }
  return out;
}

}  // namespace lvl3
