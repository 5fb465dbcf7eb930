#pragma once

// Conversions between representations: catenative systems and HDT0L systems,
// DT0L-then-HDT0L pipelines, unary HDT0L systems to linear representations,
// linear representations along a DT0L to polynomial systems, and the
// product-accumulator construction for the Skolem-type zero search.

#include <stdexcept>
#include <string>
#include <vector>

#include "lvl3/morphism.hpp"
#include "lvl3/recurrence.hpp"

namespace lvl3 {

/// C = I, H^a(i) = α(i,a,·), h(i) = f_i(ε), seed i0.
inline HDT0LSystem catenative_to_hdt0l(const CatenativeSystem& sys, const Symbol& i0) {
  detail::require_index(sys.indices, i0);
  std::map<Symbol, Homomorphism> tables;
  for (const auto& a : sys.input) {
    std::map<Symbol, Word> img;
    for (const auto& i : sys.indices) img[i] = sys.rule(i, a);
    tables.emplace(a, Homomorphism(sys.indices, sys.indices, std::move(img)));
  }
  std::map<Symbol, Word> fin;
  for (const auto& i : sys.indices) fin[i] = sys.base.at(i);
  HDT0LSystem out{sys.input, sys.indices, std::move(tables), Homomorphism(sys.indices, sys.output, std::move(fin)), i0};
  out.validate();
  return out;
}

/// Index set C; f_V(ε) = h(V), rule (V, a) = H^a(V). The seed index computes eval(sys, ·).
inline CatenativeSystem hdt0l_to_catenative(const HDT0LSystem& sys) {
  sys.validate();
  CatenativeSystem out{sys.working, sys.input, sys.output(), {}, {}};
  for (const auto& v : sys.working) {
    out.base[v] = sys.final_map.image(v);
    for (const auto& a : sys.input) out.rules[{v, a}] = sys.tables.at(a).image(v);
  }
  return out;
}

/// w ↦ h-system evaluated on the word g_{i0}(w).
class Level3Mapping {
 public:
  Level3Mapping(CatenativeSystem g, Symbol i0, HDT0LSystem h) : g_(std::move(g)), i0_(std::move(i0)), h_(std::move(h)) {
    detail::require_index(g_.indices, i0_);
    h_.validate();
    if (!g_.output.same_letters(h_.input))
      throw std::domain_error("pipeline: output alphabet of the DT0L stage differs from the input alphabet of the HDT0L stage");
  }

  const CatenativeSystem& first() const { return g_; }
  const Symbol& first_index() const { return i0_; }
  const HDT0LSystem& second() const { return h_; }

  Word stage_one(const Word& w) const { return eval_catenative(g_, i0_, w); }
  Word stage_two(const Word& u) const { return lvl3::eval(h_, u); }
  Word eval(const Word& w) const { return stage_two(stage_one(w)); }

 private:
  CatenativeSystem g_;
  Symbol i0_;
  HDT0LSystem h_;
};

inline Level3Mapping compose_level3(const CatenativeSystem& g, const Symbol& i0, const HDT0LSystem& h) {
  return Level3Mapping(g, i0, h);
}

/// DT0L over I with g_i(ε) = i and the HDT0L with tables H^j = H_j(ε);
/// evaluates to h(H_{i0}(w)(c)).
inline Level3Mapping compositional_to_pipeline(const CompositionalSystem& sys, const Symbol& i0,
                                               const Homomorphism& final_map, const Symbol& seed) {
  sys.validate();
  CatenativeSystem g{sys.indices, sys.input, sys.indices, sys.rules, {}};
  for (const auto& i : sys.indices) g.base[i] = Word{i};
  std::map<Symbol, Homomorphism> tables;
  for (const auto& i : sys.indices) tables.emplace(i, sys.base.at(i));
  return Level3Mapping(std::move(g), i0, HDT0LSystem{sys.indices, sys.working, std::move(tables), final_map, seed});
}

/// M_a = incidence of H^a (rows and columns in working-alphabet order),
/// L0 = unit row at the seed, C0[V] = |h(V)|.
inline LinearRepresentation unary_lowering(const HDT0LSystem& sys) {
  sys.validate();
  if (sys.output().size() != 1) throw std::domain_error("unary_lowering needs a one-letter output alphabet");
  const std::size_t d = sys.working.size();
  LinearRepresentation rep{sys.input, d, Matrix(1, d), {}, Matrix(d, 1)};
  rep.initial(0, sys.working.index_of(sys.seed)) = 1;
  for (std::size_t v = 0; v < d; ++v) rep.final(v, 0) = sys.final_map.image(sys.working[v]).size();
  for (const auto& a : sys.input) {
    Matrix m(d, d);
    const Homomorphism& h = sys.tables.at(a);
    for (std::size_t v = 0; v < d; ++v)
      for (const auto& s : h.image(sys.working[v])) m(v, sys.working.index_of(s)) += 1;
    rep.transitions.emplace(a, std::move(m));
  }
  return rep;
}

/// Polynomial system whose variable (i,k,l) tracks entry (k,l) of the matrix
/// image of g_i(w), plus the linear form reading off L0·M(g_{i0}(w))·C0.
struct SeriesLowering {
  PolynomialSystem system;
  Symbol seed_index;
  std::size_t dim = 0;
  ZPoly output;  // K, linear in the variables of seed_index

  std::size_t variable(std::size_t i, std::size_t k, std::size_t l) const { return (i * dim + k) * dim + l; }

  Integer value(const Word& w) const { return output.eval(eval_polynomial_vector(system, w)); }

  /// The system extended by an index equal to K at every word:
  /// its rule for a is K∘φ_a and its base value is K(base).
  PolynomialSystem with_output_index(const Symbol& name) const {
    PolynomialSystem out = system;
    if (out.indices.contains(name)) throw std::domain_error("index '" + name + "' already exists");
    std::vector<ZPoly> images;
    for (const auto& a : out.input) {
      images.clear();
      for (const auto& i : system.indices) images.push_back(system.rule(i, a));
      out.rules[{name, a}] = output.substitute(images);
    }
    out.indices.add(name);
    out.base.push_back(output.eval(system.base));
    return out;
  }
};

inline std::string lowering_variable_name(const Symbol& i, std::size_t k, std::size_t l) {
  return i + "_" + std::to_string(k + 1) + "_" + std::to_string(l + 1);
}

inline SeriesLowering series_to_polynomial_system(const CatenativeSystem& g, const Symbol& i0, const LinearRepresentation& rep) {
  rep.validate();
  detail::require_index(g.indices, i0);
  if (!g.output.subset_of(rep.input))
    throw std::domain_error("series lowering: DT0L output letters lack matrices in the linear representation");
  const std::size_t d = rep.dim;
  const std::size_t n = g.indices.size();

  SeriesLowering out;
  out.seed_index = i0;
  out.dim = d;
  PolynomialSystem& ps = out.system;
  ps.input = g.input;
  bool nonneg = rep.initial.nonnegative() && rep.final.nonnegative();
  for (const auto& [_, m] : rep.transitions) nonneg = nonneg && m.nonnegative();
  ps.ring = nonneg ? Ring::Naturals : Ring::Integers;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) ps.indices.add(lowering_variable_name(g.indices[i], k, l));

  for (std::size_t i = 0; i < n; ++i) {
    Matrix base = matrix_of(rep, g.base.at(g.indices[i]));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) ps.base.push_back(base(k, l));
  }

  for (std::size_t i = 0; i < n; ++i)
    for (const auto& a : g.input) {
      // Symbolic product, row-major d×d, starting from the identity.
      std::vector<ZPoly> acc(d * d);
      for (std::size_t k = 0; k < d; ++k) acc[k * d + k] = ZPoly(1);
      for (const auto& j : g.rule(g.indices[i], a)) {
        const std::size_t jx = g.indices.index_of(j);
        std::vector<ZPoly> next(d * d);
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t m = 0; m < d; ++m) {
            if (acc[k * d + m].is_zero()) continue;
            for (std::size_t l = 0; l < d; ++l)
              next[k * d + l] += acc[k * d + m] * ZPoly::variable(out.variable(jx, m, l));
          }
        acc = std::move(next);
      }
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) ps.rules[{ps.indices[out.variable(i, k, l)], a}] = std::move(acc[k * d + l]);
    }

  const std::size_t s = g.indices.index_of(i0);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      Integer c = rep.initial(0, k) * rep.final(l, 0);
      if (c != 0) out.output += ZPoly(Monomial::variable(out.variable(s, k, l)), c);
    }
  return out;
}

inline bool is_linear(const PolynomialSystem& sys) { return sys.max_degree() <= 1; }

/// State u ⊕ v ⊕ w with w' = w·(u_next − v_next) and w(ε) = u(ε) − v(ε),
/// so w(aⁿ) = ∏_{i≤n} (u(aⁱ) − v(aⁱ)).
struct SkolemProduct {
  PolynomialSystem system;
  Symbol accumulator;
};

inline SkolemProduct skolem_product_system(const PolynomialSystem& u, const Symbol& iu, const PolynomialSystem& v, const Symbol& iv) {
  u.validate();
  v.validate();
  if (u.input.size() != 1 || !u.input.same_letters(v.input)) throw std::domain_error("skolem product needs one shared unary input alphabet");
  if (!is_linear(u) || !is_linear(v)) throw std::domain_error("skolem product needs linear systems");
  detail::require_index(u.indices, iu);
  detail::require_index(v.indices, iv);
  const Symbol& a = u.input[0];
  const std::size_t nu = u.indices.size(), nv = v.indices.size();

  SkolemProduct out;
  PolynomialSystem& ps = out.system;
  ps.input = u.input;
  ps.ring = Ring::Integers;
  std::vector<std::size_t> umap(nu), vmap(nv);
  for (std::size_t i = 0; i < nu; ++i) umap[i] = ps.indices.add("u_" + u.indices[i]);
  for (std::size_t i = 0; i < nv; ++i) vmap[i] = ps.indices.add("v_" + v.indices[i]);
  out.accumulator = "prod";
  for (int n = 2; ps.indices.contains(out.accumulator); ++n) out.accumulator = "prod" + std::to_string(n);
  const std::size_t wx = ps.indices.add(out.accumulator);

  for (std::size_t i = 0; i < nu; ++i) ps.rules[{ps.indices[umap[i]], a}] = u.rule(u.indices[i], a).shift_variables(umap);
  for (std::size_t i = 0; i < nv; ++i) ps.rules[{ps.indices[vmap[i]], a}] = v.rule(v.indices[i], a).shift_variables(vmap);
  ZPoly diff = ps.rules.at({ps.indices[umap[u.indices.index_of(iu)]], a});
  diff -= ps.rules.at({ps.indices[vmap[v.indices.index_of(iv)]], a});
  ps.rules[{out.accumulator, a}] = ZPoly::variable(wx) * diff;

  ps.base = u.base;
  ps.base.insert(ps.base.end(), v.base.begin(), v.base.end());
  ps.base.push_back(u.base[u.indices.index_of(iu)] - v.base[v.indices.index_of(iv)]);
  return out;
}

}  // namespace lvl3
