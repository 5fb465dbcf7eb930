#pragma once

// Word homomorphisms over finite alphabets, HDT0L systems and linear
// (matrix) representations of ℕ-valued rational series.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lvl3/word.hpp"

namespace lvl3 {

/// Total map from letters of `source` to words over `target`, extended to words.
class Homomorphism {
 public:
  Homomorphism() = default;

  Homomorphism(Alphabet source, Alphabet target, std::map<Symbol, Word> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    for (const auto& s : source_) {
      auto it = images_.find(s);
      if (it == images_.end()) throw std::domain_error("homomorphism has no image for '" + s + "'");
      if (!target_.contains_word(it->second))
        throw std::domain_error("image of '" + s + "' leaves the target alphabet");
    }
    for (const auto& [s, _] : images_)
      if (!source_.contains(s)) throw std::domain_error("image given for '" + s + "' outside the source alphabet");
  }

  /// Endomorphism of `alphabet` with the given images (letters in declaration order).
  static Homomorphism endo(const Alphabet& alphabet, const std::vector<Word>& images) {
    if (images.size() != alphabet.size()) throw std::domain_error("endomorphism arity mismatch");
    std::map<Symbol, Word> m;
    for (std::size_t i = 0; i < images.size(); ++i) m[alphabet[i]] = images[i];
    return Homomorphism(alphabet, alphabet, std::move(m));
  }

  static Homomorphism identity(const Alphabet& alphabet) {
    std::map<Symbol, Word> m;
    for (const auto& s : alphabet) m[s] = Word{s};
    return Homomorphism(alphabet, alphabet, std::move(m));
  }

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }

  const Word& image(const Symbol& s) const {
    auto it = images_.find(s);
    if (it == images_.end()) throw std::domain_error("letter '" + s + "' outside the homomorphism source");
    return it->second;
  }

  Word apply(const Word& w) const {
    Word out;
    for (const auto& s : w) {
      const Word& img = image(s);
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  Word operator()(const Word& w) const { return apply(w); }

  /// Extensional equality: same source letters, same images.
  friend bool operator==(const Homomorphism& a, const Homomorphism& b) {
    return a.source_.same_letters(b.source_) && a.images_ == b.images_;
  }

  /// `{x -> x y; y -> eps}` in source-alphabet order.
  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < source_.size(); ++i) {
      if (i) out += "; ";
      const Word& img = images_.at(source_[i]);
      out += source_[i] + " -> " + (img.empty() ? std::string("eps") : join(img, " "));
    }
    return out + "}";
  }

 private:
  Alphabet source_;
  Alphabet target_;
  std::map<Symbol, Word> images_;
};

inline Word apply(const Homomorphism& h, const Word& w) { return h.apply(w); }

/// f ∘ g with f applied first: z ↦ g(f(z)).
inline Homomorphism compose(const Homomorphism& f, const Homomorphism& g) {
  if (!f.target().subset_of(g.source()))
    throw std::domain_error("composition: target of the first map is not contained in the source of the second");
  std::map<Symbol, Word> m;
  for (const auto& z : f.source()) m[z] = g.apply(f.image(z));
  return Homomorphism(f.source(), g.target(), std::move(m));
}

/// f(w) = h(H^w(c)) with H^{uv}(c) = H^v(H^u(c)).
struct HDT0LSystem {
  Alphabet input;    // A
  Alphabet working;  // C
  std::map<Symbol, Homomorphism> tables;  // H^a : C* → C*
  Homomorphism final_map;                 // h : C* → B*
  Symbol seed;                            // c

  const Alphabet& output() const { return final_map.target(); }

  void validate() const {
    if (!working.contains(seed)) throw std::domain_error("seed '" + seed + "' not in the working alphabet");
    for (const auto& a : input) {
      auto it = tables.find(a);
      if (it == tables.end()) throw std::domain_error("no table for input letter '" + a + "'");
      if (!it->second.source().same_letters(working) || !it->second.target().subset_of(working))
        throw std::domain_error("table for '" + a + "' is not an endomorphism of the working alphabet");
    }
    if (!final_map.source().same_letters(working)) throw std::domain_error("final map must be defined on the working alphabet");
  }

  /// DT0L: final map is the identity on C.
  static HDT0LSystem dt0l(Alphabet input, Alphabet working, std::map<Symbol, Homomorphism> tables, Symbol seed) {
    HDT0LSystem s{std::move(input), working, std::move(tables), Homomorphism::identity(working), std::move(seed)};
    s.validate();
    return s;
  }
};

/// H^w(c), applying the table of the first letter of w first.
inline Word image_of_word(const HDT0LSystem& sys, const Word& w) {
  Word cur{sys.seed};
  for (const auto& a : w) {
    auto it = sys.tables.find(a);
    if (it == sys.tables.end()) throw std::domain_error("letter '" + a + "' has no table");
    cur = it->second.apply(cur);
  }
  return cur;
}

inline Word eval(const HDT0LSystem& sys, const Word& w) { return sys.final_map.apply(image_of_word(sys, w)); }

// ---------------------------------------------------------------------------
// Matrices over ℤ

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Integer> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::domain_error("matrix dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
      }
    return out;
  }

  bool nonnegative() const {
    for (const auto& x : data_)
      if (x < 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Occurrence counts of each letter of `alphabet` in `w`.
inline std::vector<Integer> parikh(const Word& w, const Alphabet& alphabet) {
  std::vector<Integer> v(alphabet.size());
  for (const auto& s : w) v[alphabet.index_of(s)] += 1;
  return v;
}

/// Row V lists the letter counts of h(V); rows follow the source alphabet,
/// columns the target alphabet.
inline Matrix incidence(const Homomorphism& h, const Alphabet& columns) {
  Matrix m(h.source().size(), columns.size());
  for (std::size_t r = 0; r < h.source().size(); ++r)
    for (const auto& s : h.image(h.source()[r])) m(r, columns.index_of(s)) += 1;
  return m;
}

inline Matrix incidence(const Homomorphism& h) { return incidence(h, h.target()); }

/// w ↦ L0 · M_{w1} ⋯ M_{wn} · C0.
struct LinearRepresentation {
  Alphabet input;
  std::size_t dim = 0;
  Matrix initial;  // 1 × d
  std::map<Symbol, Matrix> transitions;
  Matrix final;    // d × 1

  void validate() const {
    if (initial.rows() != 1 || initial.cols() != dim) throw std::domain_error("initial row must be 1 x " + std::to_string(dim));
    if (final.rows() != dim || final.cols() != 1) throw std::domain_error("final column must be " + std::to_string(dim) + " x 1");
    for (const auto& a : input) {
      auto it = transitions.find(a);
      if (it == transitions.end()) throw std::domain_error("no matrix for letter '" + a + "'");
      if (it->second.rows() != dim || it->second.cols() != dim) throw std::domain_error("matrix for '" + a + "' has wrong size");
    }
  }

  const Matrix& matrix(const Symbol& a) const {
    auto it = transitions.find(a);
    if (it == transitions.end()) throw std::domain_error("no matrix for letter '" + a + "'");
    return it->second;
  }
};

/// Matrix image M_{w1} ⋯ M_{wn} of a word.
inline Matrix matrix_of(const LinearRepresentation& rep, const Word& w) {
  Matrix m = Matrix::identity(rep.dim);
  for (const auto& a : w) m = m * rep.matrix(a);
  return m;
}

inline Integer linear_eval(const LinearRepresentation& rep, const Word& w) {
  Matrix row = rep.initial;
  for (const auto& a : w) row = row * rep.matrix(a);
  return (row * rep.final)(0, 0);
}

}  // namespace lvl3
