#pragma once

// Exact mode actions of the level-one vertex operators
//
//   X_i^(s)(z) = exp( s sum_{n>0} a_i(-n)/[n] q^(-sn/2) z^n )
//              * exp( -s sum_{n>0} a_i(n)/[n] q^(-sn/2) z^-n )
//              * e^(s alpha_i) z^(s a_i(0)),       s = +1 or -1,
//
// their modes X_i^(s)(n) = coefficient of z^(-n-1), the psi/phi currents,
// normal-ordered pair products, and the composite operators built from a
// q-shifted pair.  Everything is finite and exact: acting on a basis key the
// annihilation exponential contributes at most deg(key) orders and the
// creation degree is then pinned by the requested mode.

#include "qkm/fock.hpp"
#include "qkm/lattice.hpp"
#include "qkm/unipoly.hpp"

namespace qkm {

struct VertexOptions {
  // Soundness hook: negates the half-power q^(-sn/2) -> q^(+sn/2) in both
  // exponentials, a deliberately broken variant the relation suite must
  // catch.  Never enabled in normal operation.
  bool flip_half_power = false;
};

// X_i^(sign)(n) applied to v; sign is +1 or -1.
FockVector x_mode_act(int i, int sign, long n, const FockVector& v,
                      const CartanData& C, const VertexOptions& opt = {});

enum class PsiPhi { kPsi, kPhi };

// psi_{i,m} (m >= 0) or phi_{i,m} (m <= 0): the z^(-m) coefficient of
//   psi_i(z) = K_i   exp( (q - q^-1) sum_{k>0} a_i(k)  z^-k ),
//   phi_i(z) = K_i^-1 exp( -(q - q^-1) sum_{k>0} a_i(-k) z^k ).
FockVector psi_phi_mode_act(int i, PsiPhi which, long m, const FockVector& v,
                            const CartanData& C);

// Coefficient of z^ez w^ew in :X_i^(s1)(z) X_j^(s2)(w): applied to v, where
// the normal-ordered product merges creation exponentials to the left,
// annihilation to the right, and keeps the lattice factors
// e^(s1 alpha_i) e^(s2 alpha_j) z^(s1 a_i(0)) w^(s2 a_j(0)).
FockVector normal_pair_mode(int i, int j, int s1, int s2, long ez, long ew,
                            const FockVector& v, const CartanData& C,
                            const VertexOptions& opt = {});

// Mode n of the composite operator
//   :X_i^(s)(z) X_j^(s)(z q^((alpha_i|alpha_j)+2r+1)): z^((alpha_i|alpha_j)+1)
// for 0 <= r <= -(alpha_i|alpha_j) - 1.
FockVector composite_mode_act(int i, int j, int sign, int r, long n,
                              const FockVector& v, const CartanData& C,
                              const VertexOptions& opt = {});

struct ContractionSeries {
  PowerSeries series;  // in x = w/z
  int z_power;         // the accompanying factor z^(s1 s2 (alpha_i|alpha_j))
};

// Contraction scalar of X_i^(s1)(z) X_j^(s2)(w): the q-power binomial
// (1 - q^(-(s1+s2)/2) w/z)^(s1 s2 (alpha_i|alpha_j))_{q^2} times the
// recorded z-power.
ContractionSeries contraction_series(int i, int j, int s1, int s2, int order,
                                     const CartanData& C);

}  // namespace qkm
