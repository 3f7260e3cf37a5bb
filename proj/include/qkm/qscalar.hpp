#pragma once

// Exact scalars for q-deformed computations.
//
// QScalar models the field Q(s) where s = q^(1/2) is a formal half power of
// q.  Values are kept as a reduced fraction num/den of Laurent polynomials in
// s with rational coefficients.  Most quantities of interest (q-integers,
// q-binomials, structure constants) are Laurent, i.e. den == 1, and for those
// the term map and the canonical text form are the external contract.
// Denominators enter only through inverted q-integers in exponential
// coefficients and stay small.
//
// Canonical form: den has minimal exponent 0, its constant coefficient is 1,
// and gcd(num, den) = 1 once both are shifted to ordinary polynomials.  Equal
// values therefore have identical representations.

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace qkm {

using Rational = mpq_class;

// Exponent (in units of s = q^(1/2)) -> nonzero rational coefficient.
using LaurentMap = std::map<int, Rational>;

class inexact_division_error : public std::domain_error {
 public:
  explicit inexact_division_error(const std::string& what)
      : std::domain_error(what) {}
};

class QScalar {
 public:
  QScalar() : den_{{0, 1}} {}
  QScalar(long n);
  QScalar(int n) : QScalar(static_cast<long>(n)) {}
  QScalar(const Rational& r);

  // c * q^(half_exponent / 2), i.e. c * s^half_exponent.
  static QScalar term(const Rational& c, int half_exponent);
  // q^(half_exponent / 2).
  static QScalar q_power(int half_exponent);
  // Laurent value from a term map (zero coefficients are dropped).
  static QScalar from_terms(const LaurentMap& terms);

  bool is_zero() const { return num_.empty(); }
  bool is_laurent() const;
  bool is_one() const;

  // Term map of a Laurent value; throws std::logic_error when den != 1.
  const LaurentMap& laurent_terms() const;
  const LaurentMap& numerator_terms() const { return num_; }
  const LaurentMap& denominator_terms() const { return den_; }

  QScalar operator-() const;
  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  QScalar& operator/=(const QScalar& o);  // field division; o nonzero
  friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
  friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
  friend QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
  friend QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }

  bool operator==(const QScalar& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const QScalar& o) const { return !(*this == o); }
  // Arbitrary total order (for deterministic containers and witness sorting).
  bool operator<(const QScalar& o) const;

  // Ring involution q -> q^(-1) (s -> s^(-1)).
  QScalar bar() const;

  // Integer power; negative exponents require a nonzero value.
  QScalar pow(long e) const;

  // Evaluate at a rational value of s = q^(1/2).  Throws std::domain_error
  // at a pole; s = 0 is allowed when the reduced numerator has no negative
  // exponents (the denominator's constant term is 1 by canonicalization).
  Rational eval_at_rational(const Rational& s_value) const;

  // Division that must land back in the Laurent subring; throws
  // inexact_division_error otherwise.  exact_divide(q^2 - q^-2, q - q^-1)
  // returns q + q^-1.
  static QScalar exact_divide(const QScalar& a, const QScalar& b);

  // Canonical text, e.g. "-1/2*q^-1 + 1 + 3*q^(3/2)": summands in ascending
  // s-exponent, integer exponents as q^n, half exponents as q^(n/2), the
  // exponent-zero term as a bare coefficient.  Non-Laurent values render as
  // "(num)/(den)".
  std::string to_string() const;

 private:
  LaurentMap num_;
  LaurentMap den_;  // never empty; {{0,1}} when the value is Laurent

  void reduce_();
};

std::string laurent_to_string(const LaurentMap& terms);

}  // namespace qkm
