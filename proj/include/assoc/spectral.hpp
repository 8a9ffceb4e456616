#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "assoc/algebra.hpp"
#include "assoc/cyclotomic.hpp"
#include "assoc/scheme.hpp"

namespace assoc {

// Full spectral data of a commutative scheme: primitive idempotents (through
// their coefficient rows q_j), eigenmatrices, multiplicities and valencies.
//
// Conventions: j0 is always index 0 with label "triv" and E_{j0} = J_X;
// E_j = sum_i q_j(i) A_i; A_i = sum_j p_i(j) E_j. See algebra.hpp for the
// normalization of the convolution product.
template <class S>
struct EigData {
  long num_points = 0;
  std::vector<std::string> i_labels;
  std::vector<std::string> j_labels;
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> p;  // |I| x |J|, p_i(j)
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> q;  // |J| x |I|, q_j(i)
  std::vector<long> m;
  std::vector<long> k;

  int num_i() const { return static_cast<int>(i_labels.size()); }
  int num_j() const { return static_cast<int>(j_labels.size()); }
  int j0() const { return 0; }
  int j_index(const std::string& label) const;
};

using ExactEig = std::shared_ptr<const EigData<Cyc>>;
using FloatEig = std::shared_ptr<const EigData<std::complex<double>>>;

enum class SpectralRoute {
  kAuto,          // best available exact route, per construction structure
  kClosedForm,    // kernel scheme closed forms
  kCharacters,    // translation-scheme character sums
  kTensor,        // extension-of-length-s symmetrized tensor formulas
  kRegularExact,  // eigenspace splitting of the regular representation
  kFloat          // dense floating diagonalization
};

struct SpectralOptions {
  SpectralRoute route = SpectralRoute::kAuto;
  std::uint64_t seed = 0;  // base seed for the floating path
  int max_retries = 8;     // seed redraws on eigenvalue collision
  bool verify = true;      // run the invariant battery on the result
};

// Exact spectral data, or nullptr when no exact route applies to this scheme
// (irrational eigenvalues). Throws input_error on non-commutative schemes.
// Results are cached on the scheme.
ExactEig spectral_data_exact(const SchemePtr& s, const SpectralOptions& = {});

// Floating spectral data (1e-9 contract). When an exact route exists the
// result is its numeric image unless route == kFloat forces the dense path.
FloatEig spectral_data_float(const SchemePtr& s, const SpectralOptions& = {});

struct SpectralAny {
  ExactEig exact;  // preferred when set
  FloatEig flt;
  bool is_exact() const { return exact != nullptr; }
};

SpectralAny spectral_data(const SchemePtr& s, const SpectralOptions& = {});

// Invariant battery: multiplicity/valency sums, q_{j0} = 1, m_j = q_j(i0),
// biorthogonality p q = id = q p, both eigenmatrix orthogonalities, and
// idempotency of every E_j under convolution. Returns "" when all hold
// (exactly for exact scalars, within tol otherwise).
template <class S>
std::string check_eigdata(const Scheme& s, const EigData<S>& e,
                          double tol = 1e-9);

// E_j as an algebra element (coefficient row j of q).
template <class S>
AlgebraElement<S> idempotent_element(const SchemePtr& s, const EigData<S>& e,
                                     int j) {
  AlgebraElement<S> a{s, {}};
  a.coeff = e.q.row(j).transpose();
  return a;
}

// The eigenmatrix values of the kernel scheme k(n, v) in closed form.
Rat kernel_p(long n, long v, long i /*1..n, 0 = infinity*/, long j);
Rat kernel_q(long v, long j, long i /*1..n, 0 = infinity*/);
long kernel_m(long v, long j);
long kernel_k(long n, long v, long i);

}  // namespace assoc
