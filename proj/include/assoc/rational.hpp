#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <string>

namespace assoc {

// Exact rational scalar used throughout the exact arithmetic path.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// v^e for e >= 0, and 1/v^-e for e < 0.
inline Rat rat_pow(long base, long exp) {
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp < 0 ? -exp : exp));
  if (exp >= 0) return Rat(p);
  Rat r(Int(1), p);
  r.canonicalize();
  return r;
}

// "p/q" when q != 1, "p" otherwise.
inline std::string to_string(const Rat& r) {
  return r.get_str();
}

std::optional<Rat> parse_rat(const std::string& s);

inline double to_double(const Rat& r) { return r.get_d(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

}  // namespace assoc

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace assoc {

using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

}  // namespace assoc
