#pragma once

// Sparse Laurent polynomials in z_1..z_m and a distinguished variable w over
// QScalar, with the S_m action permuting the z-indices.  Substrate for the
// function-space identities behind the Serre relations and the
// Hall-Littlewood expansions.

#include "qkm/qscalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace qkm {

// Exponent vector of length m+1: slots 0..m-1 are z_1..z_m, slot m is w.
using ExpVec = std::vector<int>;

class MultiPoly {
 public:
  explicit MultiPoly(int num_z = 0) : num_z_(num_z) {}

  static MultiPoly constant(int num_z, const QScalar& c);
  // var index in 0..num_z, where num_z denotes w.
  static MultiPoly variable(int num_z, int var, int e = 1);
  static MultiPoly monomial(int num_z, const ExpVec& exps, const QScalar& c);

  int num_z() const { return num_z_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<ExpVec, QScalar>& terms() const { return terms_; }
  QScalar coeff(const ExpVec& e) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const QScalar& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  friend MultiPoly operator*(MultiPoly a, const QScalar& c) { return a *= c; }
  friend MultiPoly operator*(const QScalar& c, MultiPoly a) { return a *= c; }

  bool operator==(const MultiPoly& o) const {
    return num_z_ == o.num_z_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // sigma has length m and sends z-index i to sigma[i]; w is fixed.
  MultiPoly permute(const std::vector<int>& sigma) const;
  // Sums of sigma.p (resp. sign(sigma) sigma.p) over all m! permutations.
  MultiPoly symmetrize() const;
  MultiPoly antisymmetrize() const;

  // Coefficient of var^e as a polynomial in the remaining variables (the
  // returned value keeps the arity, with exponent 0 in slot `var`).
  MultiPoly coefficient_of(int var, int e) const;

  // Coefficient-wise bar involution q -> q^-1.
  MultiPoly bar() const;

  // Monomials in descending lexicographic exponent order, e.g.
  // "z1^2 + (1 + -1*q^2)*z1 z2 + z2^2".
  std::string to_string() const;

 private:
  int num_z_;
  std::map<ExpVec, QScalar> terms_;

  void insert_(const ExpVec& e, const QScalar& c);
  void check_arity_(const MultiPoly& o) const;
};

// Expanded product of (x_u - c * x_v) over the given triples (u, v, c);
// indices as in MultiPoly::variable.
MultiPoly q_shifted_product(
    int num_z,
    const std::vector<std::tuple<int, int, QScalar>>& pairs);

// prod_{i<j} (z_i - z_j).
MultiPoly vandermonde(int num_z);

// Quotient num/den in the Laurent ring; throws inexact_division_error when
// the division leaves a remainder.
MultiPoly exact_divide_poly(const MultiPoly& num, const MultiPoly& den);

}  // namespace qkm
