#include "qkm/lattice.hpp"

#include <stdexcept>

namespace qkm {

CartanData::CartanData(std::vector<std::vector<int>> matrix)
    : matrix_(std::move(matrix)) {
  size_t l = matrix_.size();
  if (l == 0) throw std::invalid_argument("Cartan matrix: rank must be >= 1");
  for (size_t i = 0; i < l; ++i) {
    if (matrix_[i].size() != l)
      throw std::invalid_argument("Cartan matrix: matrix must be square");
    if (matrix_[i][i] != 2)
      throw std::invalid_argument(
          "Cartan matrix: diagonal entry must be 2 (row " +
          std::to_string(i + 1) + ")");
    for (size_t j = 0; j < l; ++j) {
      if (matrix_[i][j] != matrix_[j][i])
        throw std::invalid_argument(
            "Cartan matrix: matrix must be symmetric (entry " +
            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      if (i != j && matrix_[i][j] > 0)
        throw std::invalid_argument(
            "Cartan matrix: off-diagonal entry must be <= 0 (entry " +
            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
}

void CartanData::check_rank_(const RootVector& v) const {
  if (static_cast<int>(v.size()) != rank())
    throw std::invalid_argument("RootVector: rank mismatch");
}

long CartanData::pairing(const RootVector& a, const RootVector& b) const {
  check_rank_(a);
  check_rank_(b);
  long s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      s += static_cast<long>(a[i]) * matrix_[i][j] * b[j];
  return s;
}

int CartanData::cocycle(const RootVector& a, const RootVector& b) const {
  check_rank_(a);
  check_rank_(b);
  // Exponent sum over strictly lower-triangular index pairs; this is the
  // unique bimultiplicative extension of the basis normalization.
  long e = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < i; ++j)
      e += static_cast<long>(a[i]) * b[j] * matrix_[i][j];
  return (e % 2 == 0) ? 1 : -1;
}

}  // namespace qkm
