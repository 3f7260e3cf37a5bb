#include "qkm/vertex.hpp"

#include "qkm/qfuncs.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace qkm {

namespace {

using Multiset = std::map<int, int>;  // part -> multiplicity

void build_partitions(int remaining, int max_part, Multiset& cur,
                      std::vector<Multiset>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    ++cur[p];
    build_partitions(remaining - p, p, cur, out);
    if (--cur[p] == 0) cur.erase(p);
  }
}

// Partitions of exactly t (multisets of positive integers summing to t).
const std::vector<Multiset>& partitions_of(int t) {
  thread_local std::map<int, std::vector<Multiset>> cache;
  auto it = cache.find(t);
  if (it != cache.end()) return it->second;
  std::vector<Multiset> out;
  Multiset cur;
  build_partitions(t, t, cur, out);
  return cache.emplace(t, std::move(out)).first->second;
}

Rational int_factorial(int m) {
  Rational f(1);
  for (int t = 2; t <= m; ++t) f *= t;
  return f;
}

// Coefficient of one exponential term c^mult / mult! where c is the
// creation (a_i(-n)) or annihilation (a_i(k)) prefactor.
QScalar exp_term_factor(const QScalar& c, int mult) {
  return c.pow(mult) / QScalar(int_factorial(mult));
}

// Prefactor of a_i(-n) in the creation exponential: s q^(-sn/2) / [n].
QScalar creation_prefactor(int s, int n, bool flip) {
  QScalar c = QScalar::q_power(flip ? s * n : -s * n) / q_int(n);
  return s > 0 ? c : -c;
}

// Prefactor of a_i(k) in the annihilation exponential: -s q^(-sk/2) / [k].
QScalar annihilation_prefactor(int s, int k, bool flip) {
  return -creation_prefactor(s, k, flip);
}

QScalar multiset_coeff(const Multiset& ms, int s, bool creation, bool flip) {
  QScalar c(1);
  for (const auto& [part, mult] : ms)
    c *= exp_term_factor(creation ? creation_prefactor(s, part, flip)
                                  : annihilation_prefactor(s, part, flip),
                         mult);
  return c;
}

int multiset_total(const Multiset& ms) {
  int t = 0;
  for (const auto& [part, mult] : ms) t += part * mult;
  return t;
}

FockVector apply_annihilations(int color, const Multiset& ms, FockVector v,
                               const CartanData& C) {
  for (const auto& [part, mult] : ms)
    for (int t = 0; t < mult && !v.is_zero(); ++t)
      v = heisenberg_act(color, part, v, C);
  return v;
}

FockVector apply_creations(int color, const Multiset& ms, FockVector v,
                           const CartanData& C) {
  for (const auto& [part, mult] : ms)
    for (int t = 0; t < mult; ++t)
      v = heisenberg_act(color, -part, v, C);
  return v;
}

RootVector scaled_basis(const CartanData& C, int i, int s) {
  RootVector v(C.rank(), 0);
  v[i] = s;
  return v;
}

void check_root_index(const CartanData& C, int i, const char* who) {
  if (i < 0 || i >= C.rank())
    throw std::invalid_argument(std::string(who) +
                                ": root index out of range");
}

void check_sign(int s, const char* who) {
  if (s != 1 && s != -1)
    throw std::invalid_argument(std::string(who) + ": sign must be +1 or -1");
}

}  // namespace

FockVector x_mode_act(int i, int sign, long n, const FockVector& v,
                      const CartanData& C, const VertexOptions& opt) {
  check_root_index(C, i, "x_mode_act");
  check_sign(sign, "x_mode_act");
  RootVector salpha = scaled_basis(C, i, sign);
  RootVector alpha = scaled_basis(C, i, 1);
  FockVector out;
  for (const auto& [key, coeff] : v.entries()) {
    int deg = key.degree();
    long p0 = sign * C.pairing(alpha, key.lattice);
    for (int t = 0; t <= deg; ++t)
      for (const auto& kappa : partitions_of(t)) {
        long g = -n - 1 - p0 + t;
        if (g < 0) continue;
        FockVector mid =
            apply_annihilations(i, kappa, FockVector::unit(key), C);
        if (mid.is_zero()) continue;
        QScalar c = coeff * multiset_coeff(kappa, sign, /*creation=*/false,
                                           opt.flip_half_power);
        mid = group_translate(salpha, mid, C);
        for (const auto& nu : partitions_of(static_cast<int>(g))) {
          QScalar cn = c * multiset_coeff(nu, sign, /*creation=*/true,
                                          opt.flip_half_power);
          out += cn * apply_creations(i, nu, mid, C);
        }
      }
  }
  return out;
}

FockVector psi_phi_mode_act(int i, PsiPhi which, long m, const FockVector& v,
                            const CartanData& C) {
  check_root_index(C, i, "psi_phi_mode_act");
  if (which == PsiPhi::kPsi && m < 0)
    throw std::domain_error("psi_phi_mode_act: psi modes require m >= 0");
  if (which == PsiPhi::kPhi && m > 0)
    throw std::domain_error("psi_phi_mode_act: phi modes require m <= 0");
  int total = static_cast<int>(which == PsiPhi::kPsi ? m : -m);
  QScalar unit = QScalar::q_power(2) - QScalar::q_power(-2);  // q - q^-1
  if (which == PsiPhi::kPhi) unit = -unit;
  FockVector out;
  for (const auto& ms : partitions_of(total)) {
    QScalar c(1);
    for (const auto& [part, mult] : ms) c *= exp_term_factor(unit, mult);
    FockVector term = v;
    for (const auto& [part, mult] : ms)
      for (int t = 0; t < mult && !term.is_zero(); ++t)
        term = heisenberg_act(i, which == PsiPhi::kPsi ? part : -part, term, C);
    out += c * term;
  }
  return k_act(i, which == PsiPhi::kPsi ? 1 : -1, out, C);
}

FockVector normal_pair_mode(int i, int j, int s1, int s2, long ez, long ew,
                            const FockVector& v, const CartanData& C,
                            const VertexOptions& opt) {
  check_root_index(C, i, "normal_pair_mode");
  check_root_index(C, j, "normal_pair_mode");
  check_sign(s1, "normal_pair_mode");
  check_sign(s2, "normal_pair_mode");
  RootVector alpha_i = scaled_basis(C, i, 1);
  RootVector alpha_j = scaled_basis(C, j, 1);
  RootVector s1alpha = scaled_basis(C, i, s1);
  RootVector s2alpha = scaled_basis(C, j, s2);
  bool flip = opt.flip_half_power;
  FockVector out;
  for (const auto& [key, coeff] : v.entries()) {
    int deg = key.degree();
    long pz = s1 * C.pairing(alpha_i, key.lattice);
    long pw = s2 * C.pairing(alpha_j, key.lattice);
    for (int ti = 0; ti <= deg; ++ti) {
      long gi = ez - pz + ti;
      if (gi < 0) continue;
      for (const auto& ki : partitions_of(ti)) {
        FockVector mid_i =
            apply_annihilations(i, ki, FockVector::unit(key), C);
        if (mid_i.is_zero()) continue;
        QScalar ci = coeff * multiset_coeff(ki, s1, false, flip);
        for (int tj = 0; tj + ti <= deg; ++tj) {
          long gj = ew - pw + tj;
          if (gj < 0) continue;
          for (const auto& kj : partitions_of(tj)) {
            FockVector mid = apply_annihilations(j, kj, mid_i, C);
            if (mid.is_zero()) continue;
            QScalar cj = ci * multiset_coeff(kj, s2, false, flip);
            // e^(s2 alpha_j) first (it sits to the right), then e^(s1 alpha_i).
            mid = group_translate(s1alpha, group_translate(s2alpha, mid, C), C);
            for (const auto& ni : partitions_of(static_cast<int>(gi))) {
              QScalar cni = cj * multiset_coeff(ni, s1, true, flip);
              FockVector built = apply_creations(i, ni, mid, C);
              for (const auto& nj : partitions_of(static_cast<int>(gj))) {
                QScalar cnj = cni * multiset_coeff(nj, s2, true, flip);
                out += cnj * apply_creations(j, nj, built, C);
              }
            }
          }
        }
      }
    }
  }
  return out;
}

FockVector composite_mode_act(int i, int j, int sign, int r, long n,
                              const FockVector& v, const CartanData& C,
                              const VertexOptions& opt) {
  check_root_index(C, i, "composite_mode_act");
  check_root_index(C, j, "composite_mode_act");
  check_sign(sign, "composite_mode_act");
  int a = C.entry(i, j);
  if (r < 0 || r > -a - 1)
    throw std::domain_error(
        "composite_mode_act: shift index r must satisfy 0 <= r <= "
        "-(alpha_i|alpha_j) - 1");
  int shift = a + 2 * r + 1;  // X_j evaluated at z q^shift
  long total = -n - a - 2;    // ez + ew
  if (v.is_zero()) return {};

  // Finite window for ew: the creation degrees on both slots must be >= 0.
  RootVector alpha_i = scaled_basis(C, i, 1);
  RootVector alpha_j = scaled_basis(C, j, 1);
  long ew_min = 0, ew_max = 0;
  bool first = true;
  for (const auto& [key, coeff] : v.entries()) {
    int deg = key.degree();
    long pz = sign * C.pairing(alpha_i, key.lattice);
    long pw = sign * C.pairing(alpha_j, key.lattice);
    long lo = pw - deg;               // ew >= pw - tj, tj <= deg
    long hi = total - (pz - deg);     // ez = total - ew >= pz - ti
    if (first) {
      ew_min = lo;
      ew_max = hi;
      first = false;
    } else {
      ew_min = std::min(ew_min, lo);
      ew_max = std::max(ew_max, hi);
    }
  }
  FockVector out;
  for (long ew = ew_min; ew <= ew_max; ++ew) {
    FockVector part =
        normal_pair_mode(i, j, sign, sign, total - ew, ew, v, C, opt);
    out += QScalar::q_power(static_cast<int>(2 * shift * ew)) * part;
  }
  return out;
}

ContractionSeries contraction_series(int i, int j, int s1, int s2, int order,
                                     const CartanData& C) {
  check_root_index(C, i, "contraction_series");
  check_root_index(C, j, "contraction_series");
  check_sign(s1, "contraction_series");
  check_sign(s2, "contraction_series");
  if (order < 0)
    throw std::invalid_argument("contraction_series: order must be >= 0");
  int a = s1 * s2 * C.entry(i, j);
  PowerSeries base = q_power_binomial(a, order);
  return {{base.poly.scaled_arg(-(s1 + s2)), base.order}, a};
}

}  // namespace qkm
