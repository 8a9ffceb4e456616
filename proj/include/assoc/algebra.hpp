#pragma once

#include <complex>

#include <Eigen/Core>

#include "assoc/cyclotomic.hpp"
#include "assoc/rational.hpp"
#include "assoc/scheme.hpp"

namespace assoc {

inline std::complex<double> conj(const std::complex<double>& z) {
  return std::conj(z);
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Cyc> {
  static constexpr bool exact = true;
  static Cyc from_rat(const Rat& r) { return Cyc(r); }
  static bool is_zero(const Cyc& v, double /*tol*/) { return v.is_zero(); }
  static double abs_approx(const Cyc& v) { return std::abs(v.to_complex()); }
};

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static Rat from_rat(const Rat& r) { return r; }
  static bool is_zero(const Rat& v, double /*tol*/) { return v == 0; }
  static double abs_approx(const Rat& v) { return std::fabs(to_double(v)); }
};

template <>
struct scalar_traits<std::complex<double>> {
  static constexpr bool exact = false;
  static std::complex<double> from_rat(const Rat& r) {
    return {to_double(r), 0.0};
  }
  static bool is_zero(const std::complex<double>& v, double tol) {
    return std::abs(v) <= tol;
  }
  static double abs_approx(const std::complex<double>& v) {
    return std::abs(v);
  }
};

// An element sum_i c_i A_i of the Bose-Mesner algebra, stored by its
// coefficient vector over I.
//
// Normalization used repo-wide: the convolution product carries the 1/|X|
// factor, (a * b)(x,z) = (1/|X|) sum_y a(x,y) b(y,z), so the convolution unit
// is E_X = |X| A_{i0} and the primitive idempotents E_j are |X| times the
// classical ones. Eigenvalues p_i(j) are the classical P_i(j) divided by |X|,
// while q_j(i) agrees with the classical dual eigenmatrix Q.
template <class S>
struct AlgebraElement {
  SchemePtr scheme;
  Eigen::Matrix<S, Eigen::Dynamic, 1> coeff;

  S value(int x, int y) const { return coeff[scheme->rel(x, y)]; }
};

template <class S>
AlgebraElement<S> algebra_zero(const SchemePtr& s) {
  AlgebraElement<S> a{s, {}};
  a.coeff.setConstant(s->num_relations(), S(0));
  return a;
}

// The basis element A_i.
template <class S>
AlgebraElement<S> adjacency_element(const SchemePtr& s, int i) {
  auto a = algebra_zero<S>(s);
  a.coeff[i] = S(1);
  return a;
}

// Convolution unit E_X = |X| A_{i0}.
template <class S>
AlgebraElement<S> convolution_unit(const SchemePtr& s) {
  auto a = algebra_zero<S>(s);
  a.coeff[s->identity()] = scalar_traits<S>::from_rat(Rat(s->num_points()));
  return a;
}

// All-ones matrix J_X = sum_i A_i (the Hadamard unit).
template <class S>
AlgebraElement<S> allones_element(const SchemePtr& s) {
  AlgebraElement<S> a{s, {}};
  a.coeff.setConstant(s->num_relations(), S(1));
  return a;
}

inline void require_same_scheme(const SchemePtr& a, const SchemePtr& b) {
  if (!same_scheme(a, b))
    throw input_error("algebra elements live on different schemes");
}

template <class S>
AlgebraElement<S> hadamard(const AlgebraElement<S>& a,
                           const AlgebraElement<S>& b) {
  require_same_scheme(a.scheme, b.scheme);
  AlgebraElement<S> out{a.scheme, a.coeff};
  for (int i = 0; i < out.coeff.size(); ++i) out.coeff[i] = a.coeff[i] * b.coeff[i];
  return out;
}

// Convolution via intersection numbers:
// (A_i * A_j) = (1/|X|) sum_k p_{ij}^k A_k.
template <class S>
AlgebraElement<S> convolve(const AlgebraElement<S>& a,
                           const AlgebraElement<S>& b) {
  require_same_scheme(a.scheme, b.scheme);
  const Scheme& s = *a.scheme;
  const IntersectionTensor& t = s.intersection_numbers();
  const int r = s.num_relations();
  auto out = algebra_zero<S>(a.scheme);
  const S inv_n = scalar_traits<S>::from_rat(Rat(1, s.num_points()));
  for (int i = 0; i < r; ++i) {
    if (scalar_traits<S>::is_zero(a.coeff[i], 0.0)) continue;
    for (int j = 0; j < r; ++j) {
      if (scalar_traits<S>::is_zero(b.coeff[j], 0.0)) continue;
      const S prod = a.coeff[i] * b.coeff[j];
      for (int k = 0; k < r; ++k) {
        long pijk = t.at(k, i, j);
        if (pijk != 0)
          out.coeff[k] += prod * scalar_traits<S>::from_rat(Rat(pijk));
      }
    }
  }
  for (int k = 0; k < r; ++k) out.coeff[k] = out.coeff[k] * inv_n;
  return out;
}

// Module action (a * h)(x) = (1/|X|) sum_y a(x,y) h(y); E_X acts as identity.
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, 1> act(
    const AlgebraElement<S>& a,
    const Eigen::Matrix<S, Eigen::Dynamic, 1>& h) {
  const Scheme& s = *a.scheme;
  const int n = s.num_points();
  if (h.size() != n) throw input_error("act: function has wrong domain size");
  Eigen::Matrix<S, Eigen::Dynamic, 1> out;
  out.setConstant(n, S(0));
  const S inv_n = scalar_traits<S>::from_rat(Rat(1, n));
  for (int x = 0; x < n; ++x) {
    S acc(0);
    for (int y = 0; y < n; ++y) acc += a.coeff[s.rel(x, y)] * h[y];
    out[x] = acc * inv_n;
  }
  return out;
}

// Dense matrix of the element (rows/cols in point order).
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> to_matrix(
    const AlgebraElement<S>& a) {
  const Scheme& s = *a.scheme;
  const int n = s.num_points();
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m(x, y) = a.coeff[s.rel(x, y)];
  return m;
}

// Normalized trace (1/|X|) sum_x a(x,x); equals the coefficient at i0.
template <class S>
S normalized_trace(const AlgebraElement<S>& a) {
  return a.coeff[a.scheme->identity()];
}

// Hilbert-Schmidt inner product (A,B) = (1/|X|^2) sum_{x,y} A(x,y) conj(B(x,y))
// = sum_i (k_i/|X|) a_i conj(b_i).
template <class S>
S hs_inner(const AlgebraElement<S>& a, const AlgebraElement<S>& b) {
  require_same_scheme(a.scheme, b.scheme);
  const Scheme& s = *a.scheme;
  S acc(0);
  for (int i = 0; i < s.num_relations(); ++i)
    acc += a.coeff[i] * conj(b.coeff[i]) *
           scalar_traits<S>::from_rat(rat(s.valency(i), s.num_points()));
  return acc;
}

}  // namespace assoc
