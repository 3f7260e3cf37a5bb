#pragma once

// Standalone symbolic identities: the symmetrization identities that encode
// the Serre relations on the function side, the q-difference lemmas, and
// Hall-Littlewood polynomial machinery with exact expansion.

#include "qkm/multipoly.hpp"
#include "qkm/unipoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace qkm {

// Weakly decreasing list of nonnegative parts; trailing zeros stripped.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  // Parses "2,1,1"; "0" and "" are the empty partition.
  static Partition parse(const std::string& text);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  int length() const { return static_cast<int>(parts_.size()); }
  std::string to_string() const;

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

 private:
  std::vector<int> parts_;
};

// Fully expanded alternating sum
//   sum_{sigma in S_m} sum_{r=0..m} (-1)^l(sigma) sigma.( [m;r]
//     (w - q^(1-m) z_1)...(w - q^(1-m) z_r)
//     (z_{r+1} - q^(1-m) w)...(z_m - q^(1-m) w) prod_{i<j}(z_i - q^-2 z_j) ).
// Identically zero; returned unsimplified so callers can assert it.
MultiPoly ser2_expression(int m);

// The q -> q^-1 variant stated over prod (z_i - q^2 z_j)/(z_i - z_j).
// Verifies, after clearing denominators by the Vandermonde determinant, that
// the result is the zero polynomial and coincides with the coefficient-wise
// bar image of ser2_expression (relating constant 1, frozen by regression).
bool ser3_check(int m, std::string* witness = nullptr);

// Reproduces the w-constant-term computation: the w^0 coefficient of the
// unsymmetrized r-sum factors as (sum_r [m;r](-q^(1-m))^r) z_1...z_m, the
// scalar equals the Pochhammer product (q^(2-2m); q^2)_m by the q-binomial
// theorem, and that product vanishes through its (1 - q^0) factor.
bool serre_coefficient_check(int m, std::string* witness = nullptr);

// Normalization constant making hl_poly monic in the dominant monomial:
// prod over distinct entry values v of prod_{j=1..mult(v)} (1 + t + ... +
// t^(j-1)) with t = q^2, computed on the tuple padded to num_vars entries
// (num_vars = -1 uses the tuple length).  Defined for arbitrary integer
// tuples via their entry multiplicities.
QScalar v_lambda(const std::vector<int>& tuple, int num_vars = -1);

// Alternative normalization q^(sum_i C(lambda_i,2)) prod_i [lambda_i]!.
// Documented for comparison only: it does not make hl_poly monic (for
// lambda = (1,1) it equals 1 while the dominant coefficient is 1 + q^2).
QScalar v_lambda_factorial(const Partition& lambda);

// Hall-Littlewood polynomial P_lambda(z_1..z_m; q^2) via the antisymmetrize-
// then-divide-by-Vandermonde route, normalized by v_lambda so the dominant
// monomial z^lambda has coefficient 1.  The integer-tuple overload applies
// the same formula verbatim to arbitrary exponent tuples (no straightening).
MultiPoly hl_poly(const std::vector<int>& tuple, int num_vars);
MultiPoly hl_poly(const Partition& lambda, int num_vars);

// Unique expansion p = sum_lambda c_lambda P_lambda of a symmetric
// polynomial with nonnegative exponents, by greedy subtraction along
// lexicographic order on sorted exponent vectors (a linear extension of
// dominance).  Throws std::domain_error if p is not symmetric or has
// negative exponents; non-homogeneous inputs are expanded per degree.
std::map<Partition, QScalar> hl_expand(const MultiPoly& p, int num_vars);

// Coefficient-wise specialization q^2 -> 0 (each coefficient evaluated at
// s = 0), taking Hall-Littlewood polynomials to Schur polynomials.
MultiPoly hl_schur_limit(const MultiPoly& p);

// Exact verification of the two q-difference lemmas for 1 <= n <= n_max:
//   d_q (1-x)^n_{q^2} = -[n] (1-x)^(n-1)_{q^2}
//   D_q^n f = (q-q^-1)^-n x^-n sum_i (-1)^i q^((n-1)(2i-n)/2) [n;i] f(q^(n-2i) x)
// on the binomial family and on monomials x^k, 0 <= k <= n_max.
bool diff_lemma_suite(int n_max, std::string* witness = nullptr);

}  // namespace qkm
