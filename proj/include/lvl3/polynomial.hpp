#pragma once

// Sparse multivariate polynomials with exact coefficients. Variables are
// indices 0, 1, ...; names are supplied only when printing or parsing.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lvl3/word.hpp"

namespace lvl3 {

/// Exponent vector with trailing zeros trimmed, so that polynomials over
/// different variable sets combine by union.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

  static Monomial variable(std::size_t i, std::uint32_t e = 1) {
    std::vector<std::uint32_t> v(i + 1, 0);
    v[i] = e;
    return Monomial(std::move(v));
  }

  std::uint32_t operator[](std::size_t i) const { return i < exps_.size() ? exps_[i] : 0; }
  std::size_t span() const { return exps_.size(); }  // one past the largest variable used
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  bool is_one() const { return exps_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> v(std::max(a.span(), b.span()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return Monomial(std::move(v));
  }

  bool divides(const Monomial& b) const {
    if (span() > b.span()) return false;
    for (std::size_t i = 0; i < span(); ++i)
      if (exps_[i] > b[i]) return false;
    return true;
  }

  /// b / a, assuming a divides b.
  friend Monomial operator/(const Monomial& b, const Monomial& a) {
    std::vector<std::uint32_t> v(b.span());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = b[i] - a[i];
    return Monomial(std::move(v));
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> v(std::max(a.span(), b.span()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(a[i], b[i]);
    return Monomial(std::move(v));
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < std::min(a.span(), b.span()); ++i)
      if (a[i] && b[i]) return false;
    return true;
  }

  bool uses(std::size_t var) const { return (*this)[var] != 0; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Storage order only (lexicographic on exponent vectors); monomial orders
  // for Gröbner computations live in groebner.hpp.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

 private:
  void trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }
  std::vector<std::uint32_t> exps_;
};

using VariableNames = std::function<std::string(std::size_t)>;

inline std::string default_variable_name(std::size_t i) { return "X" + std::to_string(i + 1); }

template <class Coeff>
class Polynomial {
 public:
  using Terms = std::map<Monomial, Coeff>;

  Polynomial() = default;
  Polynomial(const Coeff& c) {  // NOLINT: constants convert implicitly
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  Polynomial(long c) : Polynomial(Coeff(c)) {}  // NOLINT
  Polynomial(const Monomial& m, const Coeff& c) {
    if (c != 0) terms_.emplace(m, c);
  }

  static Polynomial variable(std::size_t i) { return Polynomial(Monomial::variable(i), Coeff(1)); }

  template <class Other>
  static Polynomial convert(const Polynomial<Other>& p) {
    Polynomial out;
    for (const auto& [m, c] : p.terms()) out.terms_.emplace(m, Coeff(c));
    return out;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  std::size_t size() const { return terms_.size(); }

  Coeff constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, _] : terms_) d = std::max(d, m.degree());
    return d;
  }

  /// One past the largest variable index occurring.
  std::size_t span() const {
    std::size_t s = 0;
    for (const auto& [m, _] : terms_) s = std::max(s, m.span());
    return s;
  }

  bool uses(std::size_t var) const {
    for (const auto& [m, _] : terms_)
      if (m.uses(var)) return true;
    return false;
  }

  void add_term(const Monomial& m, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, Coeff(-c));
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, Coeff(-c));
    return out;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, Coeff(ca * cb));
    return out;
  }

  /// Multiplication by the term c·m.
  Polynomial times_term(const Monomial& m, const Coeff& c) const {
    Polynomial out;
    if (c == 0) return out;
    for (const auto& [mm, cc] : terms_) out.terms_.emplace(mm * m, Coeff(cc * c));
    return out;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result(Coeff(1));
    Polynomial base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  /// Value at a point; variables beyond the point's size are an error.
  template <class T>
  T eval(std::span<const T> point) const {
    if (span() > point.size()) throw std::domain_error("evaluation point has too few coordinates");
    T total = 0;
    for (const auto& [m, c] : terms_) {
      T t = T(c);
      for (std::size_t i = 0; i < m.span(); ++i)
        for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
      total += t;
    }
    return total;
  }

  template <class T>
  T eval(const std::vector<T>& point) const {
    return eval(std::span<const T>(point));
  }

  /// p(q_0, q_1, ...): substitutes images[i] for variable i.
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (span() > images.size()) throw std::domain_error("substitution has too few images");
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
      auto& cache = powers[i];
      if (cache.empty()) cache.emplace_back(Coeff(1));
      while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
      return cache[e];
    };
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      Polynomial t{Coeff(c)};
      for (std::size_t i = 0; i < m.span(); ++i)
        if (m[i]) t = t * power(i, m[i]);
      out += t;
    }
    return out;
  }

  /// Renames variable i to map[i].
  Polynomial shift_variables(const std::vector<std::size_t>& map) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      std::vector<std::uint32_t> v;
      for (std::size_t i = 0; i < m.span(); ++i)
        if (m[i]) {
          if (v.size() <= map.at(i)) v.resize(map.at(i) + 1, 0);
          v[map.at(i)] += m[i];
        }
      out.add_term(Monomial(std::move(v)), c);
    }
    return out;
  }

  /// Terms printed from highest to lowest total degree, ties by storage order reversed.
  std::string to_string(const VariableNames& names = default_variable_name) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Monomial, Coeff>> ts(terms_.begin(), terms_.end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
      if (a.first.degree() != b.first.degree()) return a.first.degree() > b.first.degree();
      return b.first < a.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : ts) {
      Coeff mag = c < 0 ? Coeff(-c) : c;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < m.span(); ++i) {
        if (!m[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += names(i);
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      if (mono.empty()) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += mono;
      }
    }
    return out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  Terms terms_;
};

using ZPoly = Polynomial<Integer>;
using QPoly = Polynomial<Rational>;

// ---------------------------------------------------------------------------
// Text syntax: + - * ^, parentheses, integer literals, identifiers.

class PolynomialParseError : public std::runtime_error {
 public:
  PolynomialParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("at offset " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Maps an identifier to a variable index, or throws std::out_of_range.
using VariableResolver = std::function<std::size_t(const std::string&)>;

namespace detail {

template <class Coeff>
class PolyParser {
 public:
  PolyParser(std::string_view text, VariableResolver resolve) : text_(text), resolve_(std::move(resolve)) {}

  Polynomial<Coeff> parse() {
    auto p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw PolynomialParseError(pos_, msg); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial<Coeff> expr() {
    Polynomial<Coeff> p;
    bool negate = accept('-');
    if (!negate) accept('+');
    p = term();
    if (negate) p = -p;
    for (;;) {
      if (accept('+'))
        p += term();
      else if (accept('-'))
        p -= term();
      else
        return p;
    }
  }

  Polynomial<Coeff> term() {
    auto p = factor();
    while (accept('*')) p = p * factor();
    return p;
  }

  Polynomial<Coeff> factor() {
    auto p = atom();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      p = p.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return p;
  }

  Polynomial<Coeff> atom() {
    skip();
    if (accept('(')) {
      auto p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (pos_ >= text_.size()) fail("unexpected end of polynomial");
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (accept('/')) {
        skip();
        const std::size_t den = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den == pos_) fail("expected denominator");
        if constexpr (std::is_same_v<Coeff, Rational>) {
          Rational q(std::string(text_.substr(start, pos_ - start)));
          q.canonicalize();
          return Polynomial<Coeff>(q);
        } else {
          fail("fractions need rational coefficients");
        }
      }
      return Polynomial<Coeff>(Coeff(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      // `name(w)` is accepted as a synonym for `name` in recurrence rules.
      skip();
      if (text_.substr(pos_, 3) == "(w)") pos_ += 3;
      try {
        return Polynomial<Coeff>::variable(resolve_(name));
      } catch (const std::out_of_range&) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
    }
    fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view text_;
  VariableResolver resolve_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class Coeff>
Polynomial<Coeff> parse_polynomial(std::string_view text, const VariableResolver& resolve) {
  return detail::PolyParser<Coeff>(text, resolve).parse();
}

/// Resolver over a fixed list of names.
inline VariableResolver resolver_for(const std::vector<std::string>& names) {
  return [names](const std::string& s) -> std::size_t {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return i;
    throw std::out_of_range(s);
  };
}

inline VariableNames names_from(const std::vector<std::string>& names) {
  return [names](std::size_t i) { return i < names.size() ? names[i] : default_variable_name(i); };
}

}  // namespace lvl3
