#pragma once

#include <algorithm>
#include <cassert>
#include <complex>
#include <map>
#include <memory>
#include <sstream>
#include <utility>
#include <vector>

#include "planet/errors.hpp"
#include "planet/rational.hpp"

namespace planet {

namespace detail {

/// Dense univariate polynomial over Q, coefficient c[i] on x^i.  Only what the
/// cyclotomic machinery needs: exact division, remainder, extended gcd.
struct PolyQ {
  std::vector<Rational> c;

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }

  static PolyQ monomial(int d, Rational a = Rational(1)) {
    PolyQ p;
    p.c.assign(d + 1, Rational(0));
    p.c[d] = std::move(a);
    return p;
  }

  PolyQ operator+(const PolyQ& o) const {
    PolyQ r;
    r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
  }
  PolyQ operator-(const PolyQ& o) const {
    PolyQ r;
    r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    r.trim();
    return r;
  }
  PolyQ operator*(const PolyQ& o) const {
    if (is_zero() || o.is_zero()) return {};
    PolyQ r;
    r.c.assign(c.size() + o.c.size() - 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
  }

  /// Division with remainder; divisor must be nonzero.
  static void divmod(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r) {
    assert(!b.is_zero());
    q = {};
    r = a;
    r.trim();
    while (!r.is_zero() && r.deg() >= b.deg()) {
      int shift = r.deg() - b.deg();
      Rational f = r.c.back() / b.c.back();
      if (q.deg() < shift) q.c.resize(shift + 1, Rational(0));
      q.c[shift] += f;
      for (size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] -= f * b.c[i];
      r.trim();
    }
    q.trim();
  }
};

inline int totient(int n) {
  int result = n, m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

/// Coefficients of the n-th cyclotomic polynomial, computed by dividing
/// x^n - 1 by the cyclotomic polynomials of the proper divisors of n.
inline PolyQ cyclotomic_poly(int n, std::map<int, PolyQ>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  PolyQ num = PolyQ::monomial(n);
  num.c[0] = Rational(-1);  // x^n - 1
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    PolyQ q, r;
    PolyQ::divmod(num, cyclotomic_poly(d, cache), q, r);
    assert(r.is_zero());
    num = q;
  }
  cache[n] = num;
  return num;
}

}  // namespace detail

class CyclotomicField;
using FieldPtr = std::shared_ptr<const CyclotomicField>;

/// The field Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1) with
/// arithmetic modulo the N-th cyclotomic polynomial.  Immutable; shared by all
/// values of a session.
class CyclotomicField : public std::enable_shared_from_this<CyclotomicField> {
 public:
  static FieldPtr make(int n) {
    if (n < 1) throw DomainError("cyclotomic conductor must be >= 1, got " + std::to_string(n));
    if (n > 512) throw DomainError("cyclotomic conductor too large: " + std::to_string(n));
    return FieldPtr(new CyclotomicField(n));
  }

  int conductor() const { return n_; }
  int degree() const { return deg_; }

  /// Monic modulus Phi_N, size degree()+1.
  const std::vector<Rational>& modulus() const { return phi_; }

  /// zeta^j reduced into the power basis, j in [0, max(2*deg-2, N-1)].
  const std::vector<Rational>& power_row(int j) const {
    assert(j >= 0 && j < static_cast<int>(rows_.size()));
    return rows_[j];
  }
  int max_power() const { return static_cast<int>(rows_.size()) - 1; }

  /// Numeric embedding zeta |-> exp(2*pi*i/N).
  std::complex<double> zeta_numeric(long j) const {
    long r = j % n_;
    if (r < 0) r += n_;
    return zpow_[static_cast<size_t>(r)];
  }

 private:
  explicit CyclotomicField(int n) : n_(n), deg_(detail::totient(n)) {
    std::map<int, detail::PolyQ> cache;
    detail::PolyQ phi = detail::cyclotomic_poly(n, cache);
    assert(phi.deg() == deg_);
    phi_ = phi.c;

    int top = std::max(2 * deg_ - 2, n_ - 1);
    rows_.reserve(top + 1);
    std::vector<Rational> row(deg_, Rational(0));
    row[0] = 1;  // deg_ >= 1 always
    rows_.push_back(row);
    for (int j = 1; j <= top; ++j) {
      std::vector<Rational> next(deg_, Rational(0));
      // Multiply the previous row by x, folding x^deg back via the modulus.
      Rational carry = row[deg_ - 1];
      for (int i = deg_ - 1; i >= 1; --i) next[i] = row[i - 1];
      next[0] = 0;
      if (carry != 0) {
        for (int i = 0; i < deg_; ++i) next[i] -= carry * phi_[i];
      }
      rows_.push_back(next);
      row = std::move(next);
    }

    zpow_.resize(n_);
    const double tau = 6.283185307179586476925286766559;
    for (int j = 0; j < n_; ++j) {
      double a = tau * j / n_;
      zpow_[j] = {std::cos(a), std::sin(a)};
    }
  }

  int n_;
  int deg_;
  std::vector<Rational> phi_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::complex<double>> zpow_;
};

/// An element of Q(zeta_N): phi(N) rational coordinates in the power basis.
class Cyclo {
 public:
  Cyclo() = default;  // detached zero; usable only as a placeholder

  explicit Cyclo(FieldPtr f) : f_(std::move(f)), c_(f_->degree(), Rational(0)) {}
  Cyclo(FieldPtr f, Rational r) : Cyclo(std::move(f)) { c_[0] = std::move(r); }
  Cyclo(FieldPtr f, std::vector<Rational> coords) : f_(std::move(f)), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != f_->degree())
      throw InputError("cyclotomic element needs " + std::to_string(f_->degree()) +
                       " coordinates, got " + std::to_string(c_.size()));
  }

  static Cyclo zeta(const FieldPtr& f, long k) {
    long n = f->conductor();
    long r = k % n;
    if (r < 0) r += n;
    Cyclo out(f);
    out.c_ = f->power_row(static_cast<int>(r));
    return out;
  }

  const FieldPtr& field() const { return f_; }
  const std::vector<Rational>& coords() const { return c_; }
  bool attached() const { return static_cast<bool>(f_); }

  bool is_zero() const {
    for (const auto& x : c_) {
      if (x != 0) return false;
    }
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i) {
      if (c_[i] != 0) return false;
    }
    return true;
  }
  const Rational& rational_part() const { return c_[0]; }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    check_compat(a, b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    check_compat(a, b);
    Cyclo r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    check_compat(a, b);
    Cyclo r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    check_compat(a, b);
    const int d = a.f_->degree();
    std::vector<Rational> conv(2 * d - 1, Rational(0));
    for (int i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (b.c_[j] == 0) continue;
        conv[i + j] += a.c_[i] * b.c_[j];
      }
    }
    Cyclo r(a.f_);
    for (int i = 0; i < d; ++i) r.c_[i] = conv[i];
    for (int i = d; i < 2 * d - 1; ++i) {
      if (conv[i] == 0) continue;
      const auto& row = a.f_->power_row(i);
      for (int j = 0; j < d; ++j) r.c_[j] += conv[i] * row[j];
    }
    return r;
  }
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  /// Multiplicative inverse via the extended Euclidean algorithm against the
  /// field modulus.
  Cyclo inverse() const {
    if (is_zero()) throw DegenerateInputError("division by zero in cyclotomic field");
    if (is_rational()) {
      Cyclo r(f_);
      r.c_[0] = Rational(1) / c_[0];
      return r;
    }
    detail::PolyQ a;
    a.c = c_;
    a.trim();
    detail::PolyQ m;
    m.c = f_->modulus();

    // Invariants: r0 = s0*a mod m cofactor bookkeeping on s only.
    detail::PolyQ r0 = a, r1 = m;
    detail::PolyQ s0 = detail::PolyQ::monomial(0), s1 = {};
    while (!r1.is_zero()) {
      detail::PolyQ q, rem;
      detail::PolyQ::divmod(r0, r1, q, rem);
      detail::PolyQ s2 = s0 - q * s1;
      r0 = r1; r1 = rem;
      s0 = s1; s1 = s2;
    }
    // r0 = gcd = nonzero constant (modulus is irreducible over Q).
    assert(r0.deg() == 0);
    Rational g = r0.c[0];
    detail::PolyQ inv_poly = s0;
    for (auto& x : inv_poly.c) x /= g;
    detail::PolyQ q, rem;
    detail::PolyQ::divmod(inv_poly, m, q, rem);
    Cyclo r(f_);
    for (size_t i = 0; i < rem.c.size(); ++i) r.c_[i] = rem.c[i];
    return r;
  }
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
  Cyclo& operator/=(const Cyclo& o) { return *this = *this / o; }

  std::complex<double> numeric() const {
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      acc += to_double(c_[i]) * f_->zeta_numeric(static_cast<long>(i));
    }
    return acc;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
      if (i) os << ", ";
      os << c_[i];
    }
    os << "]~Q(z" << f_->conductor() << ")";
    return os.str();
  }

 private:
  static void check_compat(const Cyclo& a, const Cyclo& b) {
    if (!a.f_ || !b.f_) throw BackendMismatchError("detached cyclotomic value used in arithmetic");
    if (a.f_ != b.f_ && a.f_->conductor() != b.f_->conductor())
      throw BackendMismatchError("cyclotomic fields differ: Q(zeta_" +
                                 std::to_string(a.f_->conductor()) + ") vs Q(zeta_" +
                                 std::to_string(b.f_->conductor()) + ")");
  }

  FieldPtr f_;
  std::vector<Rational> c_;
};

}  // namespace planet
