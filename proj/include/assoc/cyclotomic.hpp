#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "assoc/rational.hpp"

namespace assoc {

// Exact element of the cyclotomic field Q(zeta_N), stored as a polynomial in
// zeta_N reduced modulo the N-th cyclotomic polynomial. Values that reduce to
// rationals are renormalized to order 1, so purely rational computations never
// pay for polynomial arithmetic. Mixed-order operands are lifted to the lcm
// order.
class Cyc {
 public:
  Cyc() : order_(1), c_(1, Rat(0)) {}
  Cyc(const Rat& r) : order_(1), c_(1, r) {}  // NOLINT(runtime/explicit)
  Cyc(long n) : order_(1), c_(1, Rat(n)) {}   // NOLINT(runtime/explicit)
  Cyc(int n) : order_(1), c_(1, Rat(n)) {}    // NOLINT(runtime/explicit)

  // zeta_order^k
  static Cyc root(long order, long k);
  // sum_r counts[r] * zeta_order^r
  static Cyc power_sum(long order, const std::vector<Rat>& counts);
  static Cyc from_coeffs(long order, std::vector<Rat> coeffs);

  long order() const { return order_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational() const;  // requires is_rational()

  Cyc conj() const;
  std::complex<double> to_complex() const;
  std::string str() const;

  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  Cyc& operator*=(const Rat& r);
  Cyc& operator/=(const Rat& r);

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  friend Cyc operator*(Cyc a, const Rat& r) { return a *= r; }
  friend Cyc operator*(const Rat& r, Cyc a) { return a *= r; }
  friend Cyc operator/(Cyc a, const Rat& r) { return a /= r; }
  friend Cyc operator-(const Cyc& a) { return Cyc(Rat(0)) - a; }

  friend bool operator==(const Cyc& a, const Cyc& b);
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  // Deterministic total order on values (lift to common order, lexicographic
  // on canonical coefficients). Not compatible with the complex modulus; used
  // only for canonical sorting.
  static bool lex_less(const Cyc& a, const Cyc& b);

 private:
  void normalize();
  Cyc lifted(long target_order) const;

  long order_;
  std::vector<Rat> c_;  // ascending powers of zeta_order, size deg(Phi_order)
};

// Monic integer coefficients of the N-th cyclotomic polynomial, ascending
// powers; cached.
const std::vector<Int>& cyclotomic_polynomial(long n);

inline Cyc conj(const Cyc& a) { return a.conj(); }
inline Rat conj(const Rat& a) { return a; }

}  // namespace assoc

namespace Eigen {

// Cyc is complex-valued but declared IsComplex = 0: Eigen's conjugation
// machinery is bypassed and conjugates are always taken explicitly via
// assoc::conj. Do not call .adjoint()/.norm() on Cyc matrices.
template <>
struct NumTraits<assoc::Cyc> : GenericNumTraits<assoc::Cyc> {
  typedef assoc::Cyc Real;
  typedef assoc::Cyc NonInteger;
  typedef assoc::Cyc Nested;
  typedef assoc::Cyc Literal;
  static inline Real epsilon() { return Real(assoc::Rat(0)); }
  static inline Real dummy_precision() { return Real(assoc::Rat(0)); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 300,
    MulCost = 600
  };
};

}  // namespace Eigen

namespace assoc {

using CycMatrix = Eigen::Matrix<Cyc, Eigen::Dynamic, Eigen::Dynamic>;
using CycVector = Eigen::Matrix<Cyc, Eigen::Dynamic, 1>;

}  // namespace assoc
