#pragma once

// Level-one Fock module: the symmetric algebra on the creation modes
// a_i(-n), n > 0, tensored with the twisted group algebra of the root
// lattice.  Basis keys are creation multisets times a lattice vector e^beta.

#include "qkm/lattice.hpp"
#include "qkm/qscalar.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qkm {

struct FockBasisKey {
  // (root index i, n) -> multiplicity for the factor a_i(-n)^mult; n > 0.
  std::map<std::pair<int, int>, int> modes;
  RootVector lattice;

  // Principal degree sum n * mult.
  int degree() const;

  bool operator==(const FockBasisKey& o) const = default;
  bool operator<(const FockBasisKey& o) const {
    if (modes != o.modes) return modes < o.modes;
    return lattice < o.lattice;
  }

  // e.g. "a_1(-1)^2 a_2(-3) e[1,0]".
  std::string to_string() const;
};

class FockVector {
 public:
  FockVector() = default;

  static FockVector vacuum(int rank);
  static FockVector unit(FockBasisKey key);

  bool is_zero() const { return entries_.empty(); }
  const std::map<FockBasisKey, QScalar>& entries() const { return entries_; }
  QScalar coeff(const FockBasisKey& k) const;
  void add_term(const FockBasisKey& k, const QScalar& c);

  FockVector operator-() const;
  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(const QScalar& c);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(FockVector a, const QScalar& c) { return a *= c; }
  friend FockVector operator*(const QScalar& c, FockVector a) { return a *= c; }

  bool operator==(const FockVector& o) const { return entries_ == o.entries_; }
  bool operator!=(const FockVector& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  std::map<FockBasisKey, QScalar> entries_;
};

// a_i(m) for m != 0: creation inserts into the multiset, annihilation
// contracts via [a_i(m), a_j(n)] = delta_{m+n,0} ([(alpha_i|alpha_j)m]/m)[m].
FockVector heisenberg_act(int i, int m, const FockVector& v,
                          const CartanData& C);

// a_i(0): scales each key by the integer (alpha_i | beta).
FockVector zero_mode_act(int i, const FockVector& v, const CartanData& C);

// K_i^(sign) = q^(sign a_i(0)): scales each key by q^(sign (alpha_i|beta)).
FockVector k_act(int i, int sign, const FockVector& v, const CartanData& C);

// Left multiplication by e^a: shifts the lattice part with the cocycle sign.
FockVector group_translate(const RootVector& a, const FockVector& v,
                           const CartanData& C);

// Eigenvalue of the grading operator d: -degree - (beta|beta)/2.  Every
// a_i(m) is homogeneous of degree m and X_i(n) of degree n with respect to
// this grading.
long d_eigenvalue(const FockBasisKey& k, const CartanData& C);

// q^d (or its inverse): scales each key by q^(sign * d-eigenvalue).
FockVector d_conjugation_scale(int sign, const FockVector& v,
                               const CartanData& C);

// All keys with degree <= degree_cap and lattice coordinates in
// [-lattice_box, lattice_box], ordered by degree then key order.
std::vector<FockBasisKey> enumerate_basis(const CartanData& C, int degree_cap,
                                          int lattice_box);

}  // namespace qkm
