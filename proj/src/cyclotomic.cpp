#include "assoc/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace assoc {

namespace {

// Exact division of integer polynomials, num / den with den monic.
std::vector<Int> poly_div_exact(const std::vector<Int>& num,
                                const std::vector<Int>& den) {
  std::vector<Int> rem = num;
  std::vector<Int> quot(num.size() - den.size() + 1, Int(0));
  for (long i = static_cast<long>(rem.size()) - 1;
       i >= static_cast<long>(den.size()) - 1; --i) {
    Int c = rem[i];
    if (c == 0) continue;
    long shift = i - (static_cast<long>(den.size()) - 1);
    quot[shift] = c;
    for (size_t k = 0; k < den.size(); ++k) rem[shift + k] -= c * den[k];
  }
  for (const Int& r : rem)
    if (r != 0) throw std::logic_error("cyclotomic division not exact");
  return quot;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(long n) {
  static std::map<long, std::vector<Int>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up.
  for (long m = 1; m <= n; ++m) {
    if (n % m != 0 || cache.count(m)) continue;
    std::vector<Int> num(m + 1, Int(0));
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d)
      if (m % d == 0) num = poly_div_exact(num, cache.at(d));
    cache.emplace(m, std::move(num));
  }
  return cache.at(n);
}

namespace {

// Remainder of a rational polynomial modulo Phi_n, padded to deg(Phi_n).
std::vector<Rat> reduce_mod_phi(std::vector<Rat> poly, long n) {
  const std::vector<Int>& phi = cyclotomic_polynomial(n);
  const long deg = static_cast<long>(phi.size()) - 1;
  for (long i = static_cast<long>(poly.size()) - 1; i >= deg; --i) {
    Rat c = poly[i];
    if (c == 0) continue;
    long shift = i - deg;
    for (long k = 0; k <= deg; ++k) poly[shift + k] -= c * Rat(phi[k]);
  }
  poly.resize(deg);
  return poly;
}

}  // namespace

void Cyc::normalize() {
  if (order_ == 1) return;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return;
  Rat c0 = c_.empty() ? Rat(0) : c_[0];
  order_ = 1;
  c_.assign(1, c0);
}

Cyc Cyc::lifted(long target) const {
  if (target == order_) return *this;
  if (target % order_ != 0) throw std::logic_error("cyclotomic lift order");
  long step = target / order_;
  std::vector<Rat> poly((c_.size() - 1) * step + 1, Rat(0));
  for (size_t k = 0; k < c_.size(); ++k) poly[k * step] = c_[k];
  Cyc out;
  out.order_ = target;
  out.c_ = reduce_mod_phi(std::move(poly), target);
  return out;
}

Cyc Cyc::root(long order, long k) {
  if (order < 1) throw std::invalid_argument("root order must be positive");
  k %= order;
  if (k < 0) k += order;
  std::vector<Rat> poly(k + 1, Rat(0));
  poly[k] = Rat(1);
  return from_coeffs(order, std::move(poly));
}

Cyc Cyc::power_sum(long order, const std::vector<Rat>& counts) {
  std::vector<Rat> poly(counts.begin(), counts.end());
  return from_coeffs(order, std::move(poly));
}

Cyc Cyc::from_coeffs(long order, std::vector<Rat> coeffs) {
  Cyc out;
  out.order_ = order;
  out.c_ = reduce_mod_phi(std::move(coeffs), order);
  out.normalize();
  return out;
}

bool Cyc::is_zero() const {
  for (const Rat& c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::rational() const {
  if (!is_rational()) throw std::logic_error("cyclotomic value not rational");
  return c_.empty() ? Rat(0) : c_[0];
}

Cyc Cyc::conj() const {
  if (order_ == 1) return *this;
  // complex conjugation sends zeta to zeta^(order-1)
  std::vector<Rat> poly((c_.size() - 1) * (order_ - 1) + 1, Rat(0));
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) poly[k * (order_ - 1)] += c_[k];
  Cyc out;
  out.order_ = order_;
  out.c_ = reduce_mod_phi(std::move(poly), order_);
  out.normalize();
  return out;
}

std::complex<double> Cyc::to_complex() const {
  std::complex<double> acc(0.0, 0.0);
  const double tau = 2.0 * M_PI / static_cast<double>(order_);
  for (size_t k = 0; k < c_.size(); ++k) {
    double v = to_double(c_[k]);
    if (v == 0.0) continue;
    acc += v * std::complex<double>(std::cos(tau * k), std::sin(tau * k));
  }
  return acc;
}

std::string Cyc::str() const {
  if (is_rational()) return rational().get_str();
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[k].get_str();
    if (k > 0) os << "*z" << order_ << "^" << k;
  }
  os << ")";
  return os.str();
}

Cyc& Cyc::operator+=(const Cyc& o) {
  long n = std::lcm(order_, o.order_);
  Cyc a = lifted(n), b = o.lifted(n);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  a.normalize();
  return *this = a;
}

Cyc& Cyc::operator-=(const Cyc& o) {
  long n = std::lcm(order_, o.order_);
  Cyc a = lifted(n), b = o.lifted(n);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
  a.normalize();
  return *this = a;
}

Cyc& Cyc::operator*=(const Cyc& o) {
  long n = std::lcm(order_, o.order_);
  Cyc a = lifted(n), b = o.lifted(n);
  std::vector<Rat> prod(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  Cyc out;
  out.order_ = n;
  out.c_ = reduce_mod_phi(std::move(prod), n);
  out.normalize();
  return *this = out;
}

Cyc& Cyc::operator*=(const Rat& r) {
  for (Rat& c : c_) c *= r;
  normalize();
  return *this;
}

Cyc& Cyc::operator/=(const Rat& r) {
  if (r == 0) throw std::invalid_argument("division by zero");
  for (Rat& c : c_) c /= r;
  return *this;
}

bool operator==(const Cyc& a, const Cyc& b) {
  long n = std::lcm(a.order_, b.order_);
  Cyc x = a.lifted(n), y = b.lifted(n);
  return x.c_ == y.c_;
}

bool Cyc::lex_less(const Cyc& a, const Cyc& b) {
  long n = std::lcm(a.order_, b.order_);
  Cyc x = a.lifted(n), y = b.lifted(n);
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] != y.c_[i]) return x.c_[i] < y.c_[i];
  }
  return false;
}

}  // namespace assoc
