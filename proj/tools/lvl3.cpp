// Command-line driver: evaluation, equality decisions, lowerings, pipelines,
// pda runs and Gröbner bases over system files.
//
// Exit status: 0 success or Equal, 1 negative verdict (NotEqual, non-member,
// rejected run, fuel exhausted), 2 errors and exceeded budgets.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lvl3/lvl3.hpp"

namespace fs = std::filesystem;
using namespace lvl3;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path data_dir() {
  if (const char* env = std::getenv("LVL3_DATA")) return env;
  return LVL3_DATA_DIR;
}

// The path as given, then data/<arg>.l3, then the unique data file starting with <arg>.
fs::path resolve_file(const std::string& arg) {
  if (fs::is_regular_file(arg)) return arg;
  const fs::path dir = data_dir();
  if (fs::is_regular_file(dir / (arg + ".l3"))) return dir / (arg + ".l3");
  std::vector<fs::path> hits;
  if (fs::is_directory(dir))
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".l3" && e.path().stem().string().rfind(arg, 0) == 0) hits.push_back(e.path());
  if (hits.size() == 1) return hits.front();
  if (hits.empty()) throw Usage("no such system file: " + arg);
  std::string all;
  for (const auto& h : hits) all += " " + h.stem().string();
  throw Usage("ambiguous system file '" + arg + "':" + all);
}

SystemFile load(const std::string& arg) {
  fs::path p = resolve_file(arg);
  std::ifstream in(p);
  if (!in) throw Usage("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_system_file(ss.str());
  } catch (const SystemFileError& e) {
    throw SystemFileError(e.line(), p.filename().string() + ": " + e.what());
  }
}

// A decimal argument means a^n when the input alphabet is one non-digit letter.
Word input_word(const std::string& arg, const Alphabet& input) {
  const bool numeric = !arg.empty() && std::all_of(arg.begin(), arg.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (numeric && input.size() == 1 && !std::isdigit(static_cast<unsigned char>(input[0][0])))
    return repeat(input[0], std::stoul(arg));
  return parse_word(arg, input);
}

std::string render(const Value& v, bool as_length) {
  if (as_length)
    if (const auto* w = std::get_if<Word>(&v)) return std::to_string(w->size());
  return show(v);
}

struct Common {
  std::size_t fuel = default_fuel;
  bool paper_literal = false;
  std::string order = "grevlex";
  std::size_t budget = 400;
};

int print_evaluation(const Common& c, const SystemFile& f, const Target& t, const std::string& arg, bool as_length, bool staged) {
  Word w = input_word(arg, input_alphabet(f, t, c.paper_literal));
  std::vector<std::pair<std::string, Value>> stages;
  EvalOptions opt{c.fuel, c.paper_literal, staged ? &stages : nullptr};
  try {
    Value v = evaluate(f, t, w, opt);
    if (staged && !stages.empty())
      for (const auto& [name, val] : stages) std::cout << name << ": " << render(val, as_length) << "\n";
    else
      std::cout << render(v, as_length) << "\n";
  } catch (const NoValue& e) {
    std::cout << e.what() << "\n";
    return kNegative;
  }
  return kOk;
}

int cmd_eval(const Common& c, const std::string& file, const std::string& target, const std::string& arg, bool as_length, bool staged) {
  SystemFile f = load(file);
  return print_evaluation(c, f, resolve_target(f, target, c.paper_literal), arg, as_length, staged);
}

EquivalenceOptions equivalence_options(const Common& c) {
  EquivalenceOptions o;
  o.order = parse_order(c.order);
  o.max_generators = c.budget;
  return o;
}

int cmd_equiv(const Common& c, const std::string& fa, const std::string& ta, const std::string& fb, const std::string& tb) {
  SystemFile a = load(fa), b = load(fb);
  Target x = resolve_target(a, ta, c.paper_literal), y = resolve_target(b, tb, c.paper_literal);
  EquivalenceResult r;
  if (x.kind == DeclKind::Poly && y.kind == DeclKind::Poly) {
    r = decide_equal(a.polys.at(x.decl), x.index, b.polys.at(y.decl), y.index, equivalence_options(c));
  } else if (x.kind == DeclKind::Frac && y.kind == DeclKind::Frac) {
    r = decide_equal_fractions(a.fraction(x.decl), b.fraction(y.decl), equivalence_options(c));
  } else {
    throw Usage("equiv compares two poly indices or two frac declarations");
  }
  if (r.verdict == Decision::Equal) {
    std::cout << "Equal\n";
    return kOk;
  }
  std::cout << "NotEqual " << show(r.witness) << "\n";
  return kNegative;
}

std::string fresh(const SystemFile& f, const std::string& base) {
  std::string n = base;
  for (int k = 2; f.kind_of(n); ++k) n = base + std::to_string(k);
  return n;
}

int cmd_lower(const Common& c, const std::string& file, const std::string& target, const std::string& to, const std::string& with,
              std::string name) {
  SystemFile f = load(file);
  Target t = resolve_target(f, target, c.paper_literal);
  auto need = [&](DeclKind k) {
    if (t.kind != k) throw Usage("--to " + to + " needs a " + kind_name(k) + " target, got " + kind_name(t.kind));
  };
  if (name.empty()) name = fresh(f, t.decl + "_" + to);
  if (to == "hdt0l") {
    need(DeclKind::Cat);
    std::cout << print_hdt0l(name, catenative_to_hdt0l(f.cats.at(t.decl), t.index));
  } else if (to == "cat") {
    need(DeclKind::Hdt0l);
    const HDT0LSystem& h = f.hdt0ls.at(t.decl);
    std::cout << "# value: " << name << "." << h.seed << "\n" << print_cat(name, hdt0l_to_catenative(h));
  } else if (to == "linrep") {
    need(DeclKind::Hdt0l);
    std::cout << print_linrep(name, unary_lowering(f.hdt0ls.at(t.decl)));
  } else if (to == "pipeline") {
    need(DeclKind::Comp);
    const CompositionalDecl& d = f.comps.at(t.decl);
    Level3Mapping m = compositional_to_pipeline(d.system, t.index, d.final_map, d.seed);
    std::cout << print_cat(name + "_g", m.first()) << "\n"
              << print_hdt0l(name + "_h", m.second()) << "\n"
              << "pipeline " << name << " {\n  stages: " << name << "_g." << t.index << " " << name << "_h\n}\n";
  } else if (to == "poly") {
    need(DeclKind::Cat);
    if (with.empty()) throw Usage("--to poly needs --with LINREP");
    Target r = resolve_target(f, with, c.paper_literal);
    if (r.kind != DeclKind::Linrep) throw Usage("--with must name a linrep");
    SeriesLowering s = series_to_polynomial_system(f.cats.at(t.decl), t.index, f.linreps.at(r.decl));
    std::cout << "# value: " << name << ".out\n" << print_poly(name, s.with_output_index("out"));
  } else if (to == "skolem") {
    need(DeclKind::Poly);
    if (with.empty()) throw Usage("--to skolem needs --with POLY.INDEX");
    Target r = resolve_target(f, with, c.paper_literal);
    if (r.kind != DeclKind::Poly) throw Usage("--with must name a poly index");
    SkolemProduct s = skolem_product_system(f.polys.at(t.decl), t.index, f.polys.at(r.decl), r.index);
    std::cout << "# value: " << name << "." << s.accumulator << "\n" << print_poly(name, s.system);
  } else {
    throw Usage("unknown lowering target '" + to + "' (hdt0l, cat, linrep, pipeline, poly, skolem)");
  }
  return kOk;
}

int cmd_compose(const Common& c, const std::string& file, const std::string& arg, const std::vector<std::string>& stages, bool as_length,
                bool staged) {
  SystemFile f = load(file);
  const std::string name = fresh(f, "compose");
  f.pipelines[name] = PipelineDecl{stages};
  f.order.emplace_back(DeclKind::Pipeline, name);
  for (const auto& s : stages) resolve_target(f, s, c.paper_literal);
  return print_evaluation(c, f, Target{DeclKind::Pipeline, name, {}}, arg, as_length, staged);
}

int cmd_run_pda(const Common& c, const std::string& file, const std::vector<std::string>& args, bool trace) {
  SystemFile f = load(file);
  std::string machine, word;
  if (args.size() == 2) {
    machine = args[0];
    word = args[1];
  } else if (args.size() == 1) {
    if (f.pdas.size() != 1) throw Usage("file declares several pda; name one");
    machine = f.pdas.begin()->first;
    word = args[0];
  } else {
    throw Usage("run-pda FILE [PDA] WORD");
  }
  auto it = f.pdas.find(machine);
  if (it == f.pdas.end()) throw Usage("no pda named '" + machine + "'");
  const KPda& m = it->second;
  Alphabet in = m.input.empty() ? Alphabet(m.gamma.level(m.k)) : m.input;
  std::vector<Configuration> log;
  RunOutcome r = run(m, input_word(word, in), c.fuel, trace ? &log : nullptr);
  for (const auto& conf : log)
    std::cout << conf.state << " | " << show(conf.emitted) << " | " << (conf.store.empty() ? "eps" : serialize(conf.store)) << "\n";
  switch (r.status) {
    case RunOutcome::Status::Accepted: std::cout << show(r.output()) << "\n"; return kOk;
    case RunOutcome::Status::Stuck: std::cout << "Stuck after " << r.steps << " steps in state " << r.last.state << "\n"; return kNegative;
    case RunOutcome::Status::FuelExhausted: std::cout << "FuelExhausted after " << r.steps << " steps\n"; return kNegative;
  }
  return kError;
}

std::vector<std::string> variables_in(const std::vector<std::string>& texts) {
  std::vector<std::string> out;
  for (const auto& t : texts)
    for (std::size_t i = 0; i < t.size();) {
      if (std::isalpha(static_cast<unsigned char>(t[i])) || t[i] == '_') {
        std::size_t j = i;
        while (j < t.size() && (std::isalnum(static_cast<unsigned char>(t[j])) || t[j] == '_' || t[j] == '\'')) ++j;
        std::string v = t.substr(i, j - i);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        i = j;
      } else {
        ++i;
      }
    }
  return out;
}

int cmd_groebner(const Common& c, const std::vector<std::string>& polys, std::string vars, const std::string& member) {
  std::vector<std::string> names;
  if (!vars.empty()) {
    for (char& ch : vars)
      if (ch == ',') ch = ' ';
    std::istringstream ss(vars);
    for (std::string v; ss >> v;) names.push_back(v);
  } else {
    auto all = polys;
    if (!member.empty()) all.push_back(member);
    names = variables_in(all);
  }
  const auto resolve = resolver_for(names);
  std::vector<QPoly> gens;
  for (const auto& p : polys) gens.push_back(parse_polynomial<Rational>(p, resolve));
  const MonomialOrder ord = parse_order(c.order);
  GroebnerBudget budget;
  budget.max_basis = c.budget;
  const auto basis = groebner(gens, ord, budget);
  if (!member.empty()) {
    QPoly p = parse_polynomial<Rational>(member, resolve);
    QPoly r = normal_form(p, basis, ord);
    if (r.is_zero()) {
      std::cout << "member\n";
      return kOk;
    }
    std::cout << "not a member; remainder " << to_string(r, ord, names_from(names)) << "\n";
    return kNegative;
  }
  if (basis.empty()) std::cout << "0\n";
  for (auto it = basis.rbegin(); it != basis.rend(); ++it) std::cout << to_string(*it, ord, names_from(names)) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate, compare and lower recurrence systems, HDT0L systems and higher-order pushdown automata."};
  app.require_subcommand(1);
  Common c;
  app.add_option("--fuel", c.fuel, "Step budget for regular systems and pda runs")->capture_default_str();
  app.add_option("--budget", c.budget, "Generator budget for equality decisions, basis budget for groebner")->capture_default_str();
  app.add_option("--order", c.order, "Monomial order: grevlex or lex")->capture_default_str();
  app.add_flag("--paper-literal", c.paper_literal, "Prefer declarations named NAME_literal");

  std::string file, file2, target, target2, arg, to, with, name, vars, member;
  bool as_length = false, staged = false, trace = false;
  std::vector<std::string> list;

  auto* eval = app.add_subcommand("eval", "Evaluate a target at a word (or a^n for unary inputs)");
  eval->add_option("file", file)->required();
  eval->add_option("target", target, "decl.index, a declaration, or a unique index name")->required();
  eval->add_option("arg", arg, "word or count")->required();
  eval->add_flag("--as-length", as_length, "Print the length of a word value");
  eval->add_flag("--staged", staged, "Print every pipeline stage");

  auto* equiv = app.add_subcommand("equiv", "Decide equality of two poly indices or two frac declarations");
  equiv->add_option("fileA", file)->required();
  equiv->add_option("targetA", target)->required();
  equiv->add_option("fileB", file2)->required();
  equiv->add_option("targetB", target2)->required();

  auto* lower = app.add_subcommand("lower", "Convert a declaration and print the result as a system file");
  lower->add_option("file", file)->required();
  lower->add_option("target", target)->required();
  lower->add_option("--to", to, "hdt0l | cat | linrep | pipeline | poly | skolem")->required();
  lower->add_option("--with", with, "linrep (for poly) or poly index (for skolem)");
  lower->add_option("--name", name, "Name of the emitted declaration");

  auto* compose = app.add_subcommand("compose", "Evaluate the composition of stages, left to right");
  compose->add_option("file", file)->required();
  compose->add_option("arg", arg, "word or count")->required();
  compose->add_option("stages", list, "decl.index or declaration names")->required();
  compose->add_flag("--as-length", as_length, "Print the length of a word value");
  compose->add_flag("--staged", staged, "Print every stage");

  auto* runpda = app.add_subcommand("run-pda", "Run a strongly deterministic pda in generation mode");
  runpda->add_option("file", file)->required();
  runpda->add_option("args", list, "[PDA] WORD")->required();
  runpda->add_flag("--trace", trace, "Print every configuration");

  auto* gb = app.add_subcommand("groebner", "Reduced Gröbner basis of polynomials over Q");
  gb->add_option("polys", list)->required();
  gb->add_option("--vars", vars, "Variables, largest first (default: order of appearance)");
  gb->add_option("--member", member, "Test membership instead of printing the basis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (*eval) return cmd_eval(c, file, target, arg, as_length, staged);
    if (*equiv) return cmd_equiv(c, file, target, file2, target2);
    if (*lower) return cmd_lower(c, file, target, to, with, name);
    if (*compose) return cmd_compose(c, file, arg, list, as_length, staged);
    if (*runpda) return cmd_run_pda(c, file, list, trace);
    if (*gb) return cmd_groebner(c, list, vars, member);
  } catch (const BudgetExceeded& e) {
    std::cout << "BudgetExceeded: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
