#pragma once

// Symmetric generalized Cartan matrix, the root-lattice bilinear form, and
// the bimultiplicative two-cocycle sign twisting the group algebra.

#include <string>
#include <vector>

namespace qkm {

// Coordinates in the simple-root basis.
using RootVector = std::vector<int>;

class CartanData {
 public:
  // Validates: square, diagonal 2, symmetric, off-diagonal <= 0.  Throws
  // std::invalid_argument naming the violated invariant.
  explicit CartanData(std::vector<std::vector<int>> matrix);

  int rank() const { return static_cast<int>(matrix_.size()); }
  int entry(int i, int j) const { return matrix_[i][j]; }
  const std::vector<std::vector<int>>& matrix() const { return matrix_; }

  // Bilinear form a^T A b; (alpha_i | alpha_j) = a_ij.
  long pairing(const RootVector& a, const RootVector& b) const;

  // Bimultiplicative sign with eps(a,b) eps(b,a) = (-1)^(a|b), normalized
  // upper-triangularly: eps(alpha_i, alpha_j) = 1 for i <= j.
  int cocycle(const RootVector& a, const RootVector& b) const;

 private:
  std::vector<std::vector<int>> matrix_;

  void check_rank_(const RootVector& v) const;
};

}  // namespace qkm
