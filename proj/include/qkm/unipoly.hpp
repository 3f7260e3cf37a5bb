#pragma once

// Laurent polynomials in one formal variable over QScalar, plus truncated
// power series and the q-difference operator.

#include "qkm/qscalar.hpp"

#include <limits>
#include <map>

namespace qkm {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(const QScalar& c) {
    if (!c.is_zero()) coeffs_.emplace(0, c);
  }

  static UniPoly monomial(const QScalar& c, int e) {
    UniPoly p;
    if (!c.is_zero()) p.coeffs_.emplace(e, c);
    return p;
  }
  static UniPoly variable(int e = 1) { return monomial(QScalar(1), e); }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, QScalar>& terms() const { return coeffs_; }
  QScalar coeff(int e) const;
  // Degree bounds; both require a nonzero polynomial.
  int low_degree() const;
  int high_degree() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const QScalar& c);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const QScalar& c) { return a *= c; }
  friend UniPoly operator*(const QScalar& c, UniPoly a) { return a *= c; }

  bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  // f(x) -> x^d f(x).
  UniPoly shifted(int d) const;
  // f(x) -> f(q^(half/2) x).
  UniPoly scaled_arg(int half) const;
  // Drop every term of degree above `order`.
  UniPoly truncated(int order) const;

  std::string to_string() const;

 private:
  std::map<int, QScalar> coeffs_;

  void insert_(int e, const QScalar& c);
};

// D_q f = (f(qx) - f(q^-1 x)) / ((q - q^-1) x); termwise this sends
// x^n to [n] x^(n-1), which is the same exact value.
UniPoly d_q(const UniPoly& f);
UniPoly d_q_iterate(UniPoly f, int n);

// Polynomial with an explicit truncation order: coefficients of degree above
// `order` are unknown rather than zero.  Exact values use kExactOrder, and
// mixing two series truncates to the smaller order.
struct PowerSeries {
  static constexpr int kExactOrder = std::numeric_limits<int>::max();

  UniPoly poly;
  int order = kExactOrder;

  bool is_exact() const { return order == kExactOrder; }
  PowerSeries truncated(int new_order) const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const QScalar& c, const PowerSeries& a);
  bool operator==(const PowerSeries& o) const {
    return order == o.order && poly == o.poly;
  }
};

// The q-deformed power (1 - x)^a_{q^2}.  For a >= 0 this is the exact
// polynomial (1 - q^(-a+1)x)(1 - q^(-a+3)x)...(1 - q^(a-1)x); for a < 0 it is
// the reciprocal product's power-series expansion truncated at `order`.
PowerSeries q_power_binomial(int a, int order);

PowerSeries d_q(const PowerSeries& f);

}  // namespace qkm
