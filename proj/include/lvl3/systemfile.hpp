#pragma once

// Text format for named declarations (homomorphisms, recurrence systems,
// HDT0L systems, linear representations, k-pda, pipelines and fraction
// presentations), with a printer whose output parses back to the same file.
//
//   # comment
//   hom NAME : {x -> x y; y -> eps}
//   KIND NAME {
//     statement            (statements end at a newline or a top-level ';')
//   }

#include <cctype>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lvl3/kpda.hpp"
#include "lvl3/lowering.hpp"
#include "lvl3/recurrence.hpp"

namespace lvl3 {

class SystemFileError : public std::runtime_error {
 public:
  SystemFileError(std::size_t line, const std::string& msg)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class DeclKind { Hom, Cat, Comp, Reg, Poly, Hdt0l, Linrep, Pda, Pipeline, Frac };

inline std::string kind_name(DeclKind k) {
  switch (k) {
    case DeclKind::Hom: return "hom";
    case DeclKind::Cat: return "cat";
    case DeclKind::Comp: return "comp";
    case DeclKind::Reg: return "reg";
    case DeclKind::Poly: return "poly";
    case DeclKind::Hdt0l: return "hdt0l";
    case DeclKind::Linrep: return "linrep";
    case DeclKind::Pda: return "pda";
    case DeclKind::Pipeline: return "pipeline";
    case DeclKind::Frac: return "frac";
  }
  return "?";
}

struct CompositionalDecl {
  CompositionalSystem system;
  Homomorphism final_map;  // identity when not given
  Symbol seed;
  bool has_final = false;
};

/// Stages are applied left to right; each is `decl.index` or a bare declaration name.
struct PipelineDecl {
  std::vector<std::string> stages;
};

struct FractionDecl {
  std::string system;
  Symbol g, h, fp, gp;
};

struct SystemFile {
  std::vector<std::pair<DeclKind, std::string>> order;
  std::map<std::string, Homomorphism> homs;
  std::map<std::string, CatenativeSystem> cats;
  std::map<std::string, CompositionalDecl> comps;
  std::map<std::string, RegularSystem> regs;
  std::map<std::string, PolynomialSystem> polys;
  std::map<std::string, HDT0LSystem> hdt0ls;
  std::map<std::string, LinearRepresentation> linreps;
  std::map<std::string, KPda> pdas;
  std::map<std::string, PipelineDecl> pipelines;
  std::map<std::string, FractionDecl> fracs;

  std::optional<DeclKind> kind_of(const std::string& name) const {
    for (const auto& [k, n] : order)
      if (n == name) return k;
    return std::nullopt;
  }

  FractionPresentation fraction(const std::string& name) const {
    const FractionDecl& d = fracs.at(name);
    return FractionPresentation{polys.at(d.system), d.g, d.h, d.fp, d.gp};
  }
};

namespace file_detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

struct Statement {
  std::string text;
  std::size_t line;
};

struct RawDecl {
  std::string kind, name;
  std::size_t line = 0;
  std::string literal;  // hom
  std::vector<Statement> body;
};

// Splits a brace body into statements at depth-0 ';' and newlines.
inline std::vector<Statement> split_statements(const std::string& body, std::size_t first_line) {
  std::vector<Statement> out;
  std::string cur;
  std::size_t line = first_line, start_line = first_line;
  int depth = 0;
  auto flush = [&] {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back({t, start_line});
    cur.clear();
    start_line = line;
  };
  for (char c : body) {
    if (c == '{' || c == '[' || c == '(') ++depth;
    if (c == '}' || c == ']' || c == ')') --depth;
    if (c == '\n') {
      if (depth == 0) {
        flush();
        ++line;
        start_line = line;
        continue;
      }
      ++line;
      cur += ' ';
      continue;
    }
    if (c == ';' && depth == 0) {
      flush();
      continue;
    }
    if (cur.empty() && std::isspace(static_cast<unsigned char>(c))) {
      start_line = line;
      continue;
    }
    cur += c;
  }
  flush();
  return out;
}

inline std::vector<RawDecl> split_declarations(std::string_view text) {
  std::string clean;
  clean.reserve(text.size());
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (!comment) clean += c;
  }
  std::vector<RawDecl> out;
  std::size_t i = 0, line = 1;
  auto skip_ws = [&] {
    while (i < clean.size() && std::isspace(static_cast<unsigned char>(clean[i]))) {
      if (clean[i] == '\n') ++line;
      ++i;
    }
  };
  auto ident = [&]() {
    std::size_t s = i;
    while (i < clean.size() && (is_ident_char(clean[i]) || clean[i] == '-')) ++i;
    return clean.substr(s, i - s);
  };
  auto balanced = [&](char open, char close, std::size_t decl_line) {
    if (i >= clean.size() || clean[i] != open) throw SystemFileError(line, std::string("expected '") + open + "'");
    int depth = 0;
    std::size_t s = i;
    for (; i < clean.size(); ++i) {
      if (clean[i] == '\n') ++line;
      if (clean[i] == open) ++depth;
      if (clean[i] == close && --depth == 0) break;
    }
    if (i >= clean.size()) throw SystemFileError(decl_line, "unterminated block");
    ++i;
    return clean.substr(s + 1, i - s - 2);
  };
  for (;;) {
    skip_ws();
    if (i >= clean.size()) break;
    RawDecl d;
    d.line = line;
    d.kind = ident();
    if (d.kind.empty()) throw SystemFileError(line, std::string("unexpected '") + clean[i] + "'");
    skip_ws();
    d.name = ident();
    if (d.name.empty()) throw SystemFileError(line, "expected a name after '" + d.kind + "'");
    skip_ws();
    if (d.kind == "hom") {
      if (i < clean.size() && (clean[i] == ':' || clean[i] == '=')) ++i;
      skip_ws();
      d.literal = "{" + balanced('{', '}', d.line) + "}";
    } else {
      const std::size_t body_line = line;
      std::string body = balanced('{', '}', d.line);
      d.body = split_statements(body, body_line);
    }
    out.push_back(std::move(d));
  }
  return out;
}

// Letters of a token: itself when known, else a greedy split over `known`,
// else (open alphabets only) the token as a new letter.
inline Word split_token(const std::string& tok, const Alphabet& known, bool closed, std::size_t line) {
  if (tok == "eps") return {};
  if (known.contains(tok)) return {tok};
  try {
    if (!known.empty()) return parse_word(tok, known);
  } catch (const std::domain_error&) {
  }
  if (closed) throw SystemFileError(line, "'" + tok + "' is not a word over {" + join(known.letters(), " ") + "}");
  return {tok};
}

inline Word parse_letters_word(const std::string& text, const Alphabet& known, bool closed, std::size_t line) {
  Word out;
  for (const auto& t : tokens(text)) {
    Word part = split_token(t, known, closed, line);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline Alphabet alphabet_of(const std::string& text) {
  Alphabet a;
  for (const auto& t : tokens(text)) a.add(t);
  return a;
}

// `{x -> x y; y -> eps}` as (letter, image text) pairs.
inline std::vector<std::pair<Symbol, std::string>> hom_entries(const std::string& literal, std::size_t line) {
  std::string t = trim(literal);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw SystemFileError(line, "expected a homomorphism literal {x -> ...; ...}");
  std::vector<std::pair<Symbol, std::string>> out;
  std::string inner = t.substr(1, t.size() - 2);
  std::size_t s = 0;
  while (s <= inner.size()) {
    std::size_t e = inner.find(';', s);
    if (e == std::string::npos) e = inner.size();
    std::string part = trim(std::string_view(inner).substr(s, e - s));
    if (!part.empty()) {
      auto arrow = part.find("->");
      if (arrow == std::string::npos) throw SystemFileError(line, "expected 'letter -> image' in '" + part + "'");
      std::string lhs = trim(std::string_view(part).substr(0, arrow));
      if (lhs.empty() || tokens(lhs).size() != 1) throw SystemFileError(line, "bad homomorphism letter '" + lhs + "'");
      out.emplace_back(lhs, trim(std::string_view(part).substr(arrow + 2)));
    }
    s = e + 1;
  }
  return out;
}

/// Homomorphism from a literal; the source is the declared letters (or the
/// literal's keys), the target is `target` when closed, else the letters used.
inline Homomorphism hom_from_literal(const std::string& literal, const Alphabet* source, const Alphabet& target, bool closed,
                                     std::size_t line) {
  auto entries = hom_entries(literal, line);
  Alphabet src;
  if (source) src = *source;
  else
    for (const auto& [l, _] : entries) src.add(l);
  Alphabet known = closed ? target : src;
  if (!closed)
    for (const auto& l : target) known.add(l);
  std::map<Symbol, Word> images;
  Alphabet used;
  for (const auto& [l, rhs] : entries) {
    if (images.count(l)) throw SystemFileError(line, "letter '" + l + "' mapped twice");
    Word w = parse_letters_word(rhs, known, closed, line);
    for (const auto& s : w) {
      used.add(s);
      known.add(s);
    }
    images[l] = std::move(w);
  }
  try {
    return Homomorphism(src, closed ? target : used, std::move(images));
  } catch (const std::domain_error& e) {
    throw SystemFileError(line, e.what());
  }
}

struct Equation {
  Symbol name;
  std::optional<Word> arg;  // letters before w; nullopt for eps
  std::optional<Symbol> cls;
  std::string rhs;
};

inline std::optional<Equation> equation(const std::string& s, std::size_t line) {
  static const std::regex re(R"(^([A-Za-z_][A-Za-z0-9_']*)\s*\(([^)]*)\)\s*(?:@\s*([A-Za-z0-9_']+))?\s*=\s*(.*)$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  Equation eq{m[1], Word{}, std::nullopt, trim(m[4].str())};
  if (m[3].matched) eq.cls = m[3].str();
  std::string arg = trim(m[2].str());
  if (arg == "eps" || arg.empty()) {
    eq.arg = std::nullopt;
    return eq;
  }
  auto ts = tokens(arg);
  if (ts.size() == 1 && ts[0].size() > 1 && ts[0].back() == 'w') ts = {ts[0].substr(0, ts[0].size() - 1), "w"};
  if (ts.empty() || ts.back() != "w") throw SystemFileError(line, "argument must be 'eps' or end in 'w': '" + arg + "'");
  ts.pop_back();
  eq.arg = Word(ts.begin(), ts.end());
  return eq;
}

struct TermRef {
  Symbol index;
  Word shift;
};

// `f(w) g(b w)` or `eps`.
inline std::vector<TermRef> term_product(const std::string& rhs, std::size_t line) {
  std::vector<TermRef> out;
  if (trim(rhs) == "eps") return out;
  static const std::regex term(R"(\s*([A-Za-z_][A-Za-z0-9_']*)\s*\(([^)]*)\)\s*)");
  auto it = rhs.cbegin();
  std::smatch m;
  while (it != rhs.cend()) {
    if (!std::regex_search(it, rhs.cend(), m, term, std::regex_constants::match_continuous))
      throw SystemFileError(line, "expected a product of terms NAME(w), got '" + std::string(it, rhs.cend()) + "'");
    auto ts = tokens(m[2].str());
    if (ts.empty() || ts.back() != "w") throw SystemFileError(line, "term argument must end in 'w'");
    ts.pop_back();
    out.push_back({m[1], Word(ts.begin(), ts.end())});
    it = m[0].second;
  }
  return out;
}

inline std::optional<std::pair<std::string, std::string>> key_value(const std::string& s) {
  static const std::regex re(R"(^([A-Za-z][A-Za-z0-9_]*)\s*:\s*(.*)$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  return std::make_pair(m[1].str(), trim(m[2].str()));
}

inline Matrix matrix_literal(const std::string& text, std::size_t line) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw SystemFileError(line, "expected a matrix literal [..; ..]");
  std::vector<std::vector<Integer>> rows;
  std::stringstream ss(t.substr(1, t.size() - 2));
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<Integer> r;
    for (const auto& tok : tokens(row)) {
      try {
        r.emplace_back(tok);
      } catch (const std::invalid_argument&) {
        throw SystemFileError(line, "bad integer '" + tok + "'");
      }
    }
    if (!r.empty()) rows.push_back(std::move(r));
  }
  if (rows.empty()) throw SystemFileError(line, "empty matrix");
  std::vector<Integer> data;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw SystemFileError(line, "ragged matrix");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), rows.front().size(), std::move(data));
}

// Index names from equation left-hand sides in order of appearance.
inline Alphabet collect_indices(const std::vector<Statement>& body, const std::string& declared, std::size_t line) {
  if (!declared.empty()) return alphabet_of(declared);
  Alphabet ix;
  for (const auto& st : body)
    if (!key_value(st.text))
      if (auto eq = equation(st.text, st.line)) ix.add(eq->name);
  if (ix.empty()) throw SystemFileError(line, "no equations");
  return ix;
}

struct Body {
  std::map<std::string, std::pair<std::string, std::size_t>> keys;
  std::vector<std::pair<Equation, std::size_t>> equations;
  std::vector<Statement> other;

  std::string get(const std::string& k) const {
    auto it = keys.find(k);
    return it == keys.end() ? std::string() : it->second.first;
  }
  std::size_t line_of(const std::string& k, std::size_t fallback) const {
    auto it = keys.find(k);
    return it == keys.end() ? fallback : it->second.second;
  }
};

inline Body classify(const RawDecl& d, const std::vector<std::string>& allowed_keys) {
  Body b;
  for (const auto& st : d.body) {
    if (auto kv = key_value(st.text)) {
      if (std::find(allowed_keys.begin(), allowed_keys.end(), kv->first) == allowed_keys.end())
        throw SystemFileError(st.line, "unknown key '" + kv->first + "' in " + d.kind + " '" + d.name + "'");
      if (b.keys.count(kv->first)) throw SystemFileError(st.line, "duplicate key '" + kv->first + "'");
      b.keys[kv->first] = {kv->second, st.line};
    } else if (auto eq = equation(st.text, st.line)) {
      b.equations.emplace_back(std::move(*eq), st.line);
    } else {
      b.other.push_back(st);
    }
  }
  return b;
}

inline void no_other(const Body& b, const RawDecl& d) {
  if (!b.other.empty()) throw SystemFileError(b.other.front().line, "cannot parse '" + b.other.front().text + "' in " + d.kind + " '" + d.name + "'");
}

inline Symbol single_letter(const Equation& eq, const Alphabet& input, std::size_t line) {
  if (!eq.arg || eq.arg->size() != 1) throw SystemFileError(line, "rule argument must be one letter followed by w");
  Word w = split_token(eq.arg->front(), input, true, line);
  if (w.size() != 1) throw SystemFileError(line, "rule argument must be one input letter");
  return w.front();
}

inline Alphabet input_from(const Body& b, std::size_t line) {
  if (b.keys.count("input")) return alphabet_of(b.get("input"));
  Alphabet in;
  for (const auto& [eq, l] : b.equations)
    if (eq.arg)
      for (const auto& t : *eq.arg) in.add(t);
  (void)line;
  return in;
}

template <class F>
auto wrap(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SystemFileError&) {
    throw;
  } catch (const std::exception& e) {
    throw SystemFileError(line, e.what());
  }
}

}  // namespace file_detail

// ---------------------------------------------------------------------------
// Parser

class SystemFileParser {
 public:
  SystemFile parse(std::string_view text) {
    for (auto& d : file_detail::split_declarations(text)) declare(d);
    check_references();
    return std::move(file_);
  }

 private:
  using Body = file_detail::Body;

  void declare(const file_detail::RawDecl& d) {
    if (file_.kind_of(d.name)) throw SystemFileError(d.line, "duplicate declaration '" + d.name + "'");
    DeclKind k;
    if (d.kind == "hom") {
      k = DeclKind::Hom;
      file_.homs.emplace(d.name, file_detail::hom_from_literal(d.literal, nullptr, Alphabet{}, false, d.line));
    } else if (d.kind == "cat") {
      k = DeclKind::Cat;
      file_.cats.emplace(d.name, cat(d));
    } else if (d.kind == "comp") {
      k = DeclKind::Comp;
      file_.comps.emplace(d.name, comp(d));
    } else if (d.kind == "reg") {
      k = DeclKind::Reg;
      file_.regs.emplace(d.name, reg(d));
    } else if (d.kind == "poly") {
      k = DeclKind::Poly;
      file_.polys.emplace(d.name, poly(d));
    } else if (d.kind == "hdt0l") {
      k = DeclKind::Hdt0l;
      file_.hdt0ls.emplace(d.name, hdt0l(d));
    } else if (d.kind == "linrep") {
      k = DeclKind::Linrep;
      file_.linreps.emplace(d.name, linrep(d));
    } else if (d.kind == "pda") {
      k = DeclKind::Pda;
      file_.pdas.emplace(d.name, pda(d));
    } else if (d.kind == "pipeline") {
      k = DeclKind::Pipeline;
      file_.pipelines.emplace(d.name, pipeline(d));
    } else if (d.kind == "frac") {
      k = DeclKind::Frac;
      file_.fracs.emplace(d.name, frac(d));
    } else {
      throw SystemFileError(d.line, "unknown declaration kind '" + d.kind + "'");
    }
    file_.order.emplace_back(k, d.name);
    lines_[d.name] = d.line;
  }

  CatenativeSystem cat(const file_detail::RawDecl& d) {
    using namespace file_detail;
    Body b = classify(d, {"input", "output", "indices"});
    no_other(b, d);
    CatenativeSystem s;
    s.indices = collect_indices(d.body, b.get("indices"), d.line);
    s.input = input_from(b, d.line);
    const bool closed = b.keys.count("output") != 0;
    s.output = alphabet_of(b.get("output"));
    for (const auto& [eq, line] : b.equations) {
      if (!s.indices.contains(eq.name)) throw SystemFileError(line, "unknown index '" + eq.name + "'");
      if (eq.cls) throw SystemFileError(line, "class annotations are only allowed in reg systems");
      if (!eq.arg) {
        if (s.base.count(eq.name)) throw SystemFileError(line, "duplicate base value for '" + eq.name + "'");
        Word w = parse_letters_word(eq.rhs, s.output, closed, line);
        for (const auto& l : w) s.output.add(l);
        s.base[eq.name] = std::move(w);
      } else {
        Symbol a = single_letter(eq, s.input, line);
        Word rule;
        for (const auto& t : term_product(eq.rhs, line)) {
          if (!t.shift.empty()) throw SystemFileError(line, "shifted arguments are only allowed in reg systems");
          if (!s.indices.contains(t.index)) throw SystemFileError(line, "unknown index '" + t.index + "'");
          rule.push_back(t.index);
        }
        if (!s.rules.emplace(std::make_pair(eq.name, a), std::move(rule)).second)
          throw SystemFileError(line, "duplicate rule for " + eq.name + "(" + a + " w)");
      }
    }
    wrap(d.line, [&] { s.validate(); });
    return s;
  }

  Homomorphism hom_value(const std::string& text, const Alphabet& working, std::size_t line) {
    std::string t = file_detail::trim(text);
    if (t == "id") return Homomorphism::identity(working);
    if (!t.empty() && t.front() == '{') return file_detail::hom_from_literal(t, &working, working, true, line);
    auto it = file_.homs.find(t);
    if (it == file_.homs.end()) throw SystemFileError(line, "unknown homomorphism '" + t + "'");
    return file_detail::wrap(line, [&] {
      std::map<Symbol, Word> m;
      for (const auto& l : working) m[l] = it->second.image(l);
      return Homomorphism(working, working, std::move(m));
    });
  }

  // Final maps keep an open target.
  Homomorphism final_value(const std::string& text, const Alphabet& working, const Alphabet& output, bool closed, std::size_t line) {
    std::string t = file_detail::trim(text);
    if (t == "id") return Homomorphism::identity(working);
    if (!t.empty() && t.front() == '{') return file_detail::hom_from_literal(t, &working, output, closed, line);
    auto it = file_.homs.find(t);
    if (it == file_.homs.end()) throw SystemFileError(line, "unknown homomorphism '" + t + "'");
    return it->second;
  }

  Alphabet working_from(const Body& b, const std::vector<std::string>& hom_texts, std::size_t line) {
    if (b.keys.count("alphabet")) return file_detail::alphabet_of(b.get("alphabet"));
    for (const auto& t : hom_texts) {
      std::string s = file_detail::trim(t);
      if (!s.empty() && s.front() == '{') {
        Alphabet a;
        for (const auto& [l, _] : file_detail::hom_entries(s, line)) a.add(l);
        return a;
      }
      if (file_.homs.count(s)) return file_.homs.at(s).source();
    }
    throw SystemFileError(line, "cannot infer the working alphabet; add 'alphabet:'");
  }

  CompositionalDecl comp(const file_detail::RawDecl& d) {
    using namespace file_detail;
    Body b = classify(d, {"input", "alphabet", "indices", "seed", "final", "output"});
    no_other(b, d);
    CompositionalDecl out;
    CompositionalSystem& s = out.system;
    s.indices = collect_indices(d.body, b.get("indices"), d.line);
    s.input = input_from(b, d.line);
    std::vector<std::string> base_texts;
    for (const auto& [eq, _] : b.equations)
      if (!eq.arg) base_texts.push_back(eq.rhs);
    s.working = working_from(b, base_texts, d.line);
    for (const auto& [eq, line] : b.equations) {
      if (!s.indices.contains(eq.name)) throw SystemFileError(line, "unknown index '" + eq.name + "'");
      if (eq.cls) throw SystemFileError(line, "class annotations are only allowed in reg systems");
      if (!eq.arg) {
        if (s.base.count(eq.name)) throw SystemFileError(line, "duplicate base value for '" + eq.name + "'");
        s.base.emplace(eq.name, hom_value(eq.rhs, s.working, line));
      } else {
        Symbol a = single_letter(eq, s.input, line);
        Word rule;
        for (const auto& t : term_product(eq.rhs, line)) {
          if (!t.shift.empty()) throw SystemFileError(line, "shifted arguments are only allowed in reg systems");
          if (!s.indices.contains(t.index)) throw SystemFileError(line, "unknown index '" + t.index + "'");
          rule.push_back(t.index);
        }
        if (!s.rules.emplace(std::make_pair(eq.name, a), std::move(rule)).second)
          throw SystemFileError(line, "duplicate rule for " + eq.name + "(" + a + " w)");
      }
    }
    out.seed = b.keys.count("seed") ? b.get("seed") : s.working[0];
    if (!s.working.contains(out.seed)) throw SystemFileError(b.line_of("seed", d.line), "seed '" + out.seed + "' not in the working alphabet");
    out.has_final = b.keys.count("final") != 0;
    out.final_map = out.has_final ? final_value(b.get("final"), s.working, alphabet_of(b.get("output")), b.keys.count("output") != 0,
                                                b.line_of("final", d.line))
                                  : Homomorphism::identity(s.working);
    if (!out.final_map.source().same_letters(s.working))
      throw SystemFileError(b.line_of("final", d.line), "final map must be defined on the working alphabet");
    wrap(d.line, [&] { s.validate(); });
    return out;
  }

  RegularSystem reg(const file_detail::RawDecl& d) {
    using namespace file_detail;
    Body b = classify(d, {"input", "output", "indices", "start", "classes"});
    RegularSystem s;
    s.indices = collect_indices(d.body, b.get("indices"), d.line);
    s.input = input_from(b, d.line);
    const bool closed = b.keys.count("output") != 0;
    s.output = alphabet_of(b.get("output"));

    static const std::regex delta_re(R"(^delta\s+(\S+)\s+(\S+)\s*->\s*(\S+)$)");
    bool has_classifier = false;
    for (const auto& st : b.other) {
      std::smatch m;
      if (!std::regex_match(st.text, m, delta_re)) throw SystemFileError(st.line, "cannot parse '" + st.text + "' in reg '" + d.name + "'");
      has_classifier = true;
      s.classifier.states.add(m[1]);
      s.classifier.states.add(m[3]);
      if (!s.classifier.next.emplace(std::make_pair(m[1].str(), m[2].str()), m[3].str()).second)
        throw SystemFileError(st.line, "duplicate classifier transition");
    }
    if (b.keys.count("classes"))
      for (const auto& c : tokens(b.get("classes"))) s.classifier.states.add(c);
    if (has_classifier) {
      s.classifier.start = b.keys.count("start") ? b.get("start") : s.classifier.states[0];
      s.classifier.states.add(s.classifier.start);
    } else {
      s.classifier = Classifier::trivial(s.input);
    }

    for (const auto& [eq, line] : b.equations) {
      if (!s.indices.contains(eq.name)) throw SystemFileError(line, "unknown index '" + eq.name + "'");
      if (!eq.arg) {
        if (eq.cls) throw SystemFileError(line, "base values take no class annotation");
        Word w = parse_letters_word(eq.rhs, s.output, closed, line);
        for (const auto& l : w) s.output.add(l);
        s.base[eq.name] = std::move(w);
        continue;
      }
      Symbol a = single_letter(eq, s.input, line);
      std::vector<RegularFactor> fs;
      for (const auto& t : term_product(eq.rhs, line)) {
        if (!s.indices.contains(t.index)) throw SystemFileError(line, "unknown index '" + t.index + "'");
        Word shift;
        for (const auto& tok : t.shift) {
          Word part = split_token(tok, s.input, true, line);
          shift.insert(shift.end(), part.begin(), part.end());
        }
        fs.push_back({t.index, std::move(shift)});
      }
      std::vector<Symbol> classes;
      if (eq.cls) {
        if (!has_classifier) throw SystemFileError(line, "class annotation without a classifier");
        if (!s.classifier.states.contains(*eq.cls)) throw SystemFileError(line, "unknown class '" + *eq.cls + "'");
        classes.push_back(*eq.cls);
      } else {
        classes = s.classifier.states.letters();
      }
      for (const auto& c : classes)
        if (!s.rules.emplace(std::make_tuple(eq.name, a, c), fs).second)
          throw SystemFileError(line, "duplicate rule for " + eq.name + "(" + a + " w) @" + c);
    }
    wrap(d.line, [&] { s.validate(); });
    return s;
  }

  static VariableResolver poly_resolver(const Alphabet& indices) {
    return [indices](const std::string& name) -> std::size_t {
      if (auto i = indices.find(name)) return *i;
      if (name.size() > 1 && name[0] == 'X' && std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        std::size_t k = std::stoul(name.substr(1));
        if (k >= 1 && k <= indices.size()) return k - 1;
      }
      throw std::out_of_range(name);
    };
  }

  PolynomialSystem poly(const file_detail::RawDecl& d) {
    using namespace file_detail;
    Body b = classify(d, {"input", "indices", "ring"});
    no_other(b, d);
    PolynomialSystem s;
    s.indices = collect_indices(d.body, b.get("indices"), d.line);
    s.input = input_from(b, d.line);
    const std::string ring = b.get("ring");
    if (ring == "Z") s.ring = Ring::Integers;
    else if (ring.empty() || ring == "N") s.ring = Ring::Naturals;
    else throw SystemFileError(b.line_of("ring", d.line), "ring must be N or Z");
    s.base.assign(s.indices.size(), Integer(0));
    std::vector<bool> has_base(s.indices.size(), false);
    const auto resolver = poly_resolver(s.indices);
    for (const auto& [eq, line] : b.equations) {
      if (!s.indices.contains(eq.name)) throw SystemFileError(line, "unknown index '" + eq.name + "'");
      if (eq.cls) throw SystemFileError(line, "class annotations are only allowed in reg systems");
      ZPoly p;
      try {
        p = parse_polynomial<Integer>(eq.rhs, resolver);
      } catch (const PolynomialParseError& e) {
        throw SystemFileError(line, e.what());
      }
      if (!eq.arg) {
        if (!p.is_constant()) throw SystemFileError(line, "base value of '" + eq.name + "' must be a constant");
        const std::size_t i = s.indices.index_of(eq.name);
        if (has_base[i]) throw SystemFileError(line, "duplicate base value for '" + eq.name + "'");
        has_base[i] = true;
        s.base[i] = p.constant_term();
      } else {
        Symbol a = single_letter(eq, s.input, line);
        if (!s.rules.emplace(std::make_pair(eq.name, a), std::move(p)).second)
          throw SystemFileError(line, "duplicate rule for " + eq.name + "(" + a + " w)");
      }
    }
    for (std::size_t i = 0; i < s.indices.size(); ++i)
      if (!has_base[i]) throw SystemFileError(d.line, "no base value for '" + s.indices[i] + "'");
    wrap(d.line, [&] { s.validate(); });
    return s;
  }

  HDT0LSystem hdt0l(const file_detail::RawDecl& d) {
    using namespace file_detail;
    Body b = classify(d, {"input", "alphabet", "output", "final", "seed"});
    static const std::regex table_re(R"(^table\s+(\S+)\s*=\s*(.*)$)");
    std::vector<std::string> texts;
    HDT0LSystem s;
    std::vector<std::tuple<Symbol, std::string, std::size_t>> raw;
    for (const auto& st : b.other) {
      std::smatch m;
      if (!std::regex_match(st.text, m, table_re)) throw SystemFileError(st.line, "cannot parse '" + st.text + "' in hdt0l '" + d.name + "'");
      raw.emplace_back(m[1].str(), trim(m[2].str()), st.line);
      texts.push_back(trim(m[2].str()));
    }
    if (!b.equations.empty()) throw SystemFileError(b.equations.front().second, "hdt0l systems take 'table' statements, not equations");
    s.working = working_from(b, texts, d.line);
    if (b.keys.count("input")) s.input = alphabet_of(b.get("input"));
    else
      for (const auto& [a, _, __] : raw) s.input.add(a);
    for (const auto& [a, text, line] : raw) {
      if (!s.input.contains(a)) throw SystemFileError(line, "table for '" + a + "' outside the input alphabet");
      if (s.tables.count(a)) throw SystemFileError(line, "duplicate table for '" + a + "'");
      s.tables.emplace(a, hom_value(text, s.working, line));
    }
    s.final_map = b.keys.count("final") ? final_value(b.get("final"), s.working, alphabet_of(b.get("output")), b.keys.count("output") != 0,
                                                      b.line_of("final", d.line))
                                        : Homomorphism::identity(s.working);
    s.seed = b.keys.count("seed") ? b.get("seed") : s.working[0];
    wrap(d.line, [&] { s.validate(); });
    return s;
  }

  LinearRepresentation linrep(const file_detail::RawDecl& d) {
    using namespace file_detail;
    Body b = classify(d, {"input", "dim", "initial", "final"});
    if (!b.equations.empty()) throw SystemFileError(b.equations.front().second, "linrep takes 'matrix' statements, not equations");
    static const std::regex matrix_re(R"(^matrix\s+(\S+)\s*=\s*(.*)$)");
    LinearRepresentation r;
    for (const auto& st : b.other) {
      std::smatch m;
      if (!std::regex_match(st.text, m, matrix_re)) throw SystemFileError(st.line, "cannot parse '" + st.text + "' in linrep '" + d.name + "'");
      if (!r.transitions.emplace(m[1].str(), matrix_literal(m[2].str(), st.line)).second)
        throw SystemFileError(st.line, "duplicate matrix for '" + m[1].str() + "'");
      if (!b.keys.count("input")) r.input.add(m[1]);
    }
    if (b.keys.count("input")) r.input = alphabet_of(b.get("input"));
    if (!b.keys.count("initial") || !b.keys.count("final")) throw SystemFileError(d.line, "linrep needs 'initial:' and 'final:'");
    r.initial = matrix_literal(b.get("initial"), b.line_of("initial", d.line));
    Matrix fin = matrix_literal(b.get("final"), b.line_of("final", d.line));
    if (fin.rows() == 1 && fin.cols() > 1) {
      Matrix col(fin.cols(), 1);
      for (std::size_t i = 0; i < fin.cols(); ++i) col(i, 0) = fin(0, i);
      fin = col;
    }
    r.final = fin;
    r.dim = b.keys.count("dim") ? std::stoul(b.get("dim")) : r.initial.cols();
    wrap(d.line, [&] { r.validate(); });
    return r;
  }

  KPda pda(const file_detail::RawDecl& d) {
    using namespace file_detail;
    std::vector<std::string> keys{"level", "states", "terminals", "start", "bottom", "input"};
    for (int j = 1; j <= 9; ++j) keys.push_back("gamma" + std::to_string(j));
    Body b = classify(d, keys);
    if (!b.equations.empty()) throw SystemFileError(b.equations.front().second, "pda takes transitions 'q, read, top -> q2, op'");
    KPda m;
    m.k = b.keys.count("level") ? std::stoi(b.get("level")) : 1;
    if (m.k < 1 || m.k > 9) throw SystemFileError(b.line_of("level", d.line), "level must be in [1, 9]");
    std::vector<Word> levels;
    for (int j = 1; j <= m.k; ++j) levels.push_back(tokens(b.get("gamma" + std::to_string(j))));
    m.gamma = wrap(d.line, [&] { return GradedAlphabet(levels); });
    m.states = alphabet_of(b.get("states"));
    m.terminals = alphabet_of(b.get("terminals"));
    m.input = alphabet_of(b.get("input"));
    m.bottoms = tokens(b.get("bottom"));
    m.initial = b.keys.count("start") ? b.get("start") : (m.states.empty() ? std::string("q0") : m.states[0]);
    static const std::regex tr(R"(^(\S+)\s*,\s*(\S+)\s*,\s*(.+?)\s*->\s*(\S+)\s*,\s*(pop_([0-9]+)|push_([0-9]+)\s*\((.*)\))\s*$)");
    for (const auto& st : b.other) {
      std::smatch mm;
      if (!std::regex_match(st.text, mm, tr)) throw SystemFileError(st.line, "cannot parse transition '" + st.text + "'");
      std::optional<Symbol> read;
      if (mm[2] != "eps") read = mm[2].str();
      Operation op = mm[6].matched ? Operation::pop(std::stoi(mm[6])) : Operation::push(std::stoi(mm[7]), tokens(mm[8].str()));
      m.states.add(mm[1]);
      m.states.add(mm[4]);
      if (read) m.terminals.add(*read);
      wrap(st.line, [&] { m.add(mm[1], read, tokens(mm[3].str()), mm[4], op); });
    }
    m.states.add(m.initial);
    if (static_cast<int>(m.bottoms.size()) != m.k - 1)
      throw SystemFileError(b.line_of("bottom", d.line), "a level-" + std::to_string(m.k) + " machine needs " + std::to_string(m.k - 1) + " bottom symbols");
    return m;
  }

  PipelineDecl pipeline(const file_detail::RawDecl& d) {
    using namespace file_detail;
    Body b = classify(d, {"stages"});
    no_other(b, d);
    if (!b.equations.empty()) throw SystemFileError(b.equations.front().second, "pipeline takes only 'stages:'");
    PipelineDecl p{tokens(b.get("stages"))};
    if (p.stages.empty()) throw SystemFileError(d.line, "pipeline needs at least one stage");
    return p;
  }

  FractionDecl frac(const file_detail::RawDecl& d) {
    using namespace file_detail;
    Body b = classify(d, {"system", "num", "den"});
    no_other(b, d);
    FractionDecl f;
    f.system = b.get("system");
    auto it = file_.polys.find(f.system);
    if (it == file_.polys.end()) throw SystemFileError(b.line_of("system", d.line), "unknown poly system '" + f.system + "'");
    auto diff = [&](const std::string& key, Symbol& x, Symbol& y) {
      static const std::regex re(R"(^\s*(\S+)\s*-\s*(\S+)\s*$)");
      std::smatch m;
      std::string v = b.get(key);
      if (!std::regex_match(v, m, re)) throw SystemFileError(b.line_of(key, d.line), "'" + key + ":' must read 'A - B'");
      x = m[1];
      y = m[2];
      for (const auto* s : {&x, &y})
        if (!it->second.indices.contains(*s)) throw SystemFileError(b.line_of(key, d.line), "unknown index '" + *s + "'");
    };
    diff("num", f.g, f.h);
    diff("den", f.fp, f.gp);
    return f;
  }

  void check_references();

  SystemFile file_;
  std::map<std::string, std::size_t> lines_;
};

// ---------------------------------------------------------------------------
// Targets and evaluation

/// Either a word or an integer.
using Value = std::variant<Word, Integer>;

inline std::string show(const Value& v) {
  if (const auto* w = std::get_if<Word>(&v)) return show(*w);
  return std::get<Integer>(v).get_str();
}

struct Target {
  DeclKind kind;
  std::string decl;
  Symbol index;  // empty for kinds evaluated as a whole

  std::string to_string() const { return index.empty() ? decl : decl + "." + index; }
};

inline bool indexed(DeclKind k) {
  return k == DeclKind::Cat || k == DeclKind::Comp || k == DeclKind::Reg || k == DeclKind::Poly;
}

inline const Alphabet* indices_of(const SystemFile& f, DeclKind k, const std::string& n) {
  switch (k) {
    case DeclKind::Cat: return &f.cats.at(n).indices;
    case DeclKind::Comp: return &f.comps.at(n).system.indices;
    case DeclKind::Reg: return &f.regs.at(n).indices;
    case DeclKind::Poly: return &f.polys.at(n).indices;
    default: return nullptr;
  }
}

inline bool is_literal_variant(const std::string& name) {
  return name.size() > 8 && name.compare(name.size() - 8, 8, "_literal") == 0;
}

/// `decl.index`, a declaration name, or an index name, which resolves to
/// the first non-literal declaration having it. With `paper_literal`, a declaration
/// `X_literal` is preferred over `X`.
inline Target resolve_target(const SystemFile& f, const std::string& text, bool paper_literal = false) {
  auto prefer = [&](const std::string& decl) {
    if (paper_literal && f.kind_of(decl + "_literal")) return decl + "_literal";
    return decl;
  };
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string decl = prefer(text.substr(0, dot));
    Symbol ix = text.substr(dot + 1);
    auto k = f.kind_of(decl);
    if (!k) throw std::invalid_argument("unknown declaration '" + decl + "'");
    const Alphabet* ixs = indices_of(f, *k, decl);
    if (!ixs) throw std::invalid_argument("'" + decl + "' is a " + kind_name(*k) + " and has no indices");
    if (!ixs->contains(ix)) throw std::invalid_argument("'" + decl + "' has no index '" + ix + "'");
    return {*k, decl, ix};
  }
  if (auto k = f.kind_of(prefer(text))) {
    const std::string decl = prefer(text);
    if (!indexed(*k)) return {*k, decl, {}};
    const Alphabet* ixs = indices_of(f, *k, decl);
    if (ixs->contains(text)) return {*k, decl, text};
    if (ixs->size() == 1) return {*k, decl, (*ixs)[0]};
    throw std::invalid_argument("'" + decl + "' has several indices; write " + decl + ".INDEX");
  }
  std::vector<Target> hits;
  for (const auto& [k, n] : f.order)
    if (indexed(k) && !is_literal_variant(n) && indices_of(f, k, n)->contains(text)) hits.push_back({k, n, text});
  if (hits.empty()) throw std::invalid_argument("unknown target '" + text + "'");
  const std::string decl = prefer(hits.front().decl);
  const DeclKind k = *f.kind_of(decl);
  const Alphabet* ixs = indices_of(f, k, decl);
  if (!ixs || !ixs->contains(text)) throw std::invalid_argument("'" + decl + "' lacks index '" + text + "'");
  return {k, decl, text};
}

/// Input alphabet of a target (for pipelines, of the first stage).
inline Alphabet input_alphabet(const SystemFile& f, const Target& t, bool paper_literal = false) {
  switch (t.kind) {
    case DeclKind::Hom: return f.homs.at(t.decl).source();
    case DeclKind::Cat: return f.cats.at(t.decl).input;
    case DeclKind::Comp: return f.comps.at(t.decl).system.input;
    case DeclKind::Reg: return f.regs.at(t.decl).input;
    case DeclKind::Poly: return f.polys.at(t.decl).input;
    case DeclKind::Hdt0l: return f.hdt0ls.at(t.decl).input;
    case DeclKind::Linrep: return f.linreps.at(t.decl).input;
    case DeclKind::Pda: {
      const KPda& m = f.pdas.at(t.decl);
      return m.input.empty() ? Alphabet(m.gamma.level(m.k)) : m.input;
    }
    case DeclKind::Pipeline:
      return input_alphabet(f, resolve_target(f, f.pipelines.at(t.decl).stages.front(), paper_literal), paper_literal);
    case DeclKind::Frac: return f.polys.at(f.fracs.at(t.decl).system).input;
  }
  return {};
}

/// A run that could not produce a value: fuel exhaustion or a rejecting pda run.
class NoValue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  std::size_t fuel = default_fuel;
  bool paper_literal = false;
  std::vector<std::pair<std::string, Value>>* stages = nullptr;  // intermediate values of pipelines
};

inline Value evaluate(const SystemFile& f, const Target& t, const Word& w, const EvalOptions& opt = {});

inline Value evaluate_value(const SystemFile& f, const Target& t, const Value& in, const EvalOptions& opt) {
  const Word* w = std::get_if<Word>(&in);
  if (!w) throw std::domain_error("stage " + t.to_string() + " expects a word, got the integer " + show(in));
  return evaluate(f, t, *w, opt);
}

inline Value evaluate(const SystemFile& f, const Target& t, const Word& w, const EvalOptions& opt) {
  switch (t.kind) {
    case DeclKind::Hom: return f.homs.at(t.decl).apply(w);
    case DeclKind::Cat: return eval_catenative(f.cats.at(t.decl), t.index, w);
    case DeclKind::Comp: {
      const CompositionalDecl& c = f.comps.at(t.decl);
      return eval_level3(c.system, t.index, w, c.final_map, c.seed);
    }
    case DeclKind::Reg: {
      auto r = eval_regular(f.regs.at(t.decl), t.index, w, opt.fuel);
      if (r.exhausted) throw NoValue("FuelExhausted after " + std::to_string(r.steps) + " steps");
      return r.value;
    }
    case DeclKind::Poly: return eval_polynomial(f.polys.at(t.decl), t.index, w);
    case DeclKind::Hdt0l: return eval(f.hdt0ls.at(t.decl), w);
    case DeclKind::Linrep: return linear_eval(f.linreps.at(t.decl), w);
    case DeclKind::Pda: {
      auto r = run(f.pdas.at(t.decl), w, opt.fuel);
      if (r.status == RunOutcome::Status::FuelExhausted) throw NoValue("FuelExhausted after " + std::to_string(r.steps) + " steps");
      if (r.status == RunOutcome::Status::Stuck) throw NoValue("Stuck after " + std::to_string(r.steps) + " steps in state " + r.last.state);
      return r.output();
    }
    case DeclKind::Pipeline: {
      Value cur = w;
      for (const auto& s : f.pipelines.at(t.decl).stages) {
        Target st = resolve_target(f, s, opt.paper_literal);
        cur = evaluate_value(f, st, cur, opt);
        if (opt.stages) opt.stages->emplace_back(st.to_string(), cur);
      }
      return cur;
    }
    case DeclKind::Frac: {
      Rational r = f.fraction(t.decl).value(w);
      if (r.get_den() != 1) throw NoValue("non-integral value " + r.get_str());
      return Integer(r.get_num());
    }
  }
  throw std::logic_error("unreachable");
}

inline void SystemFileParser::check_references() {
  for (const auto& [name, p] : file_.pipelines)
    for (const auto& s : p.stages) {
      try {
        Target t = resolve_target(file_, s);
        if (t.kind == DeclKind::Pipeline && t.decl == name) throw std::invalid_argument("pipeline refers to itself");
      } catch (const std::invalid_argument& e) {
        throw SystemFileError(lines_.at(name), "pipeline '" + name + "': " + e.what());
      }
    }
}

inline SystemFile parse_system_file(std::string_view text) { return SystemFileParser().parse(text); }

// ---------------------------------------------------------------------------
// Printer

namespace file_detail {

inline std::string word_text(const Word& w) { return w.empty() ? "eps" : join(w, " "); }

inline std::string matrix_text(const Matrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? " " : "") + m(r, c).get_str();
  }
  return out + "]";
}

inline std::string terms_text(const Word& indices) {
  if (indices.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) out += (i ? " " : "") + indices[i] + "(w)";
  return out;
}

}  // namespace file_detail

inline std::string print_cat(const std::string& name, const CatenativeSystem& s) {
  using namespace file_detail;
  std::string o = "cat " + name + " {\n";
  o += "  input: " + join(s.input.letters(), " ") + "\n";
  o += "  output: " + join(s.output.letters(), " ") + "\n";
  o += "  indices: " + join(s.indices.letters(), " ") + "\n";
  for (const auto& i : s.indices) o += "  " + i + "(eps) = " + word_text(s.base.at(i)) + "\n";
  for (const auto& i : s.indices)
    for (const auto& a : s.input) o += "  " + i + "(" + a + " w) = " + terms_text(s.rule(i, a)) + "\n";
  return o + "}\n";
}

inline std::string print_comp(const std::string& name, const CompositionalDecl& c) {
  using namespace file_detail;
  const auto& s = c.system;
  std::string o = "comp " + name + " {\n";
  o += "  input: " + join(s.input.letters(), " ") + "\n";
  o += "  alphabet: " + join(s.working.letters(), " ") + "\n";
  o += "  indices: " + join(s.indices.letters(), " ") + "\n";
  for (const auto& i : s.indices) o += "  " + i + "(eps) = " + s.base.at(i).to_string() + "\n";
  for (const auto& i : s.indices)
    for (const auto& a : s.input) o += "  " + i + "(" + a + " w) = " + terms_text(s.rule(i, a)) + "\n";
  o += "  seed: " + c.seed + "\n";
  if (c.has_final) o += "  final: " + c.final_map.to_string() + "\n";
  return o + "}\n";
}

inline std::string print_reg(const std::string& name, const RegularSystem& s) {
  using namespace file_detail;
  std::string o = "reg " + name + " {\n";
  o += "  input: " + join(s.input.letters(), " ") + "\n";
  o += "  output: " + join(s.output.letters(), " ") + "\n";
  o += "  indices: " + join(s.indices.letters(), " ") + "\n";
  o += "  classes: " + join(s.classifier.states.letters(), " ") + "\n";
  o += "  start: " + s.classifier.start + "\n";
  for (const auto& q : s.classifier.states)
    for (const auto& a : s.input) o += "  delta " + q + " " + a + " -> " + s.classifier.next.at({q, a}) + "\n";
  for (const auto& i : s.indices) o += "  " + i + "(eps) = " + word_text(s.base.at(i)) + "\n";
  for (const auto& i : s.indices)
    for (const auto& a : s.input)
      for (const auto& d : s.classifier.states) {
        o += "  " + i + "(" + a + " w) @" + d + " = ";
        const auto& fs = s.rule(i, a, d);
        if (fs.empty()) o += "eps";
        for (std::size_t k = 0; k < fs.size(); ++k)
          o += (k ? " " : "") + fs[k].index + "(" + (fs[k].shift.empty() ? "" : join(fs[k].shift, " ") + " ") + "w)";
        o += "\n";
      }
  return o + "}\n";
}

inline std::string print_poly(const std::string& name, const PolynomialSystem& s) {
  std::string o = "poly " + name + " {\n";
  o += "  input: " + join(s.input.letters(), " ") + "\n";
  o += std::string("  ring: ") + (s.ring == Ring::Integers ? "Z" : "N") + "\n";
  o += "  indices: " + join(s.indices.letters(), " ") + "\n";
  for (std::size_t i = 0; i < s.indices.size(); ++i) o += "  " + s.indices[i] + "(eps) = " + s.base[i].get_str() + "\n";
  for (const auto& i : s.indices)
    for (const auto& a : s.input) o += "  " + i + "(" + a + " w) = " + s.rule(i, a).to_string(s.names()) + "\n";
  return o + "}\n";
}

inline std::string print_hdt0l(const std::string& name, const HDT0LSystem& s) {
  std::string o = "hdt0l " + name + " {\n";
  o += "  input: " + join(s.input.letters(), " ") + "\n";
  o += "  alphabet: " + join(s.working.letters(), " ") + "\n";
  for (const auto& a : s.input) o += "  table " + a + " = " + s.tables.at(a).to_string() + "\n";
  o += "  output: " + join(s.output().letters(), " ") + "\n";
  o += "  final: " + s.final_map.to_string() + "\n";
  o += "  seed: " + s.seed + "\n";
  return o + "}\n";
}

inline std::string print_linrep(const std::string& name, const LinearRepresentation& r) {
  using namespace file_detail;
  std::string o = "linrep " + name + " {\n";
  o += "  input: " + join(r.input.letters(), " ") + "\n";
  o += "  dim: " + std::to_string(r.dim) + "\n";
  o += "  initial: " + matrix_text(r.initial) + "\n";
  for (const auto& a : r.input) o += "  matrix " + a + " = " + matrix_text(r.matrix(a)) + "\n";
  o += "  final: " + matrix_text(r.final) + "\n";
  return o + "}\n";
}

inline std::string print_pda(const std::string& name, const KPda& m) {
  std::string o = "pda " + name + " {\n";
  o += "  level: " + std::to_string(m.k) + "\n";
  o += "  states: " + join(m.states.letters(), " ") + "\n";
  o += "  terminals: " + join(m.terminals.letters(), " ") + "\n";
  for (int j = 1; j <= m.k; ++j) o += "  gamma" + std::to_string(j) + ": " + join(m.gamma.level(j), " ") + "\n";
  o += "  start: " + m.initial + "\n";
  if (!m.bottoms.empty()) o += "  bottom: " + join(m.bottoms, " ") + "\n";
  if (!m.input.empty()) o += "  input: " + join(m.input.letters(), " ") + "\n";
  for (const auto& [key, moves] : m.delta)
    for (const auto& mv : moves)
      o += "  " + key.state + ", " + (key.read ? *key.read : std::string("eps")) + ", " + join(key.top, " ") + " -> " + mv.target + ", " +
           mv.op.to_string() + "\n";
  return o + "}\n";
}

inline std::string print_file(const SystemFile& f) {
  std::string o;
  for (const auto& [k, n] : f.order) {
    if (!o.empty()) o += "\n";
    switch (k) {
      case DeclKind::Hom: o += "hom " + n + " : " + f.homs.at(n).to_string() + "\n"; break;
      case DeclKind::Cat: o += print_cat(n, f.cats.at(n)); break;
      case DeclKind::Comp: o += print_comp(n, f.comps.at(n)); break;
      case DeclKind::Reg: o += print_reg(n, f.regs.at(n)); break;
      case DeclKind::Poly: o += print_poly(n, f.polys.at(n)); break;
      case DeclKind::Hdt0l: o += print_hdt0l(n, f.hdt0ls.at(n)); break;
      case DeclKind::Linrep: o += print_linrep(n, f.linreps.at(n)); break;
      case DeclKind::Pda: o += print_pda(n, f.pdas.at(n)); break;
      case DeclKind::Pipeline: o += "pipeline " + n + " {\n  stages: " + join(f.pipelines.at(n).stages, " ") + "\n}\n"; break;
      case DeclKind::Frac: {
        const auto& d = f.fracs.at(n);
        o += "frac " + n + " {\n  system: " + d.system + "\n  num: " + d.g + " - " + d.h + "\n  den: " + d.fp + " - " + d.gp + "\n}\n";
        break;
      }
    }
  }
  return o;
}

}  // namespace lvl3
