#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assoc/algebra.hpp"
#include "assoc/scheme.hpp"

namespace assoc {

// A morphism of association schemes: f on points and g on relations making
// g(R(x, y)) = R'(f(x), f(y)). Surjective when f is onto.
struct SchemeMorphism {
  SchemePtr source, target;
  std::vector<int> f;
  std::vector<int> g;
  bool surjective = false;

  long fiber_size() const {
    return source->num_points() / target->num_points();
  }
};

struct MorphismCheck {
  std::optional<SchemeMorphism> morphism;
  std::string error;
  std::vector<std::string> witness;  // point labels involved
  bool ok() const { return morphism.has_value(); }
};

// Checks the commuting square exhaustively, records surjectivity of f, and
// (when surjective) the constant-fiber law.
MorphismCheck verify_morphism(const SchemePtr& src, const SchemePtr& tgt,
                              const std::vector<int>& f,
                              const std::vector<int>& g);

// Same, with f and g given by target labels (indexed by source order).
// Unknown labels raise input_error (ill-typed map).
MorphismCheck verify_morphism_labels(const SchemePtr& src,
                                     const SchemePtr& tgt,
                                     const std::vector<std::string>& f_labels,
                                     const std::vector<std::string>& g_labels);

SchemeMorphism identity_morphism(const SchemePtr& s);

// m2 after m1 (m1: X -> X', m2: X' -> X'').
SchemeMorphism compose_morphism(const SchemeMorphism& m1,
                                const SchemeMorphism& m2);

// The canonical digit-drop truncation between consecutive kernel, ordered
// Hamming, or thin-abelian levels.
SchemeMorphism make_truncation(const SchemePtr& src, const SchemePtr& tgt);

// Pullback Psi(a)(x, z) = a(f(x), f(z)); coefficientwise a_i = a_{g(i)}.
// Ring morphism for the Hadamard product, and for the convolution product
// when the morphism is surjective.
template <class S>
AlgebraElement<S> psi(const SchemeMorphism& m, const AlgebraElement<S>& a) {
  if (!same_scheme(a.scheme, m.target))
    throw input_error("psi: element does not live on the morphism target");
  AlgebraElement<S> out{m.source, {}};
  out.coeff.resize(m.source->num_relations());
  for (int i = 0; i < m.source->num_relations(); ++i)
    out.coeff[i] = a.coeff[m.g[i]];
  return out;
}

// A partial function between labeled finite sets; surjective when every
// target element has nonempty preimage.
struct PartialSurjection {
  std::vector<std::string> source_set, target_set;
  std::vector<int> map;  // source index -> target index, -1 outside domain

  bool surjective() const;
  std::vector<int> domain() const;
  std::vector<int> preimage(int target_index) const;
  int source_index(const std::string& label) const;
  int target_index(const std::string& label) const;
};

PartialSurjection identity_partial(const std::vector<std::string>& set);

// q after p (p: A -> B, q: B -> C); requires p.target_set == q.source_set.
PartialSurjection compose_partial(const PartialSurjection& p,
                                  const PartialSurjection& q);

// The J functor on a surjective morphism of commutative schemes: decomposes
// each pulled-back idempotent Psi(E_{j'}) into primitive idempotents of the
// source and returns J(source) -> J(target), j in S_{j'} mapped to j'.
// Membership is read off Hilbert-Schmidt pairings (Psi(E_{j'}), E_j) = m_j.
PartialSurjection functor_j(const SchemeMorphism& m);

}  // namespace assoc
