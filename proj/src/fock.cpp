#include "qkm/fock.hpp"

#include "qkm/qfuncs.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qkm {

int FockBasisKey::degree() const {
  int d = 0;
  for (const auto& [mode, mult] : modes) d += mode.second * mult;
  return d;
}

std::string FockBasisKey::to_string() const {
  std::ostringstream out;
  for (const auto& [mode, mult] : modes) {
    out << "a_" << mode.first + 1 << "(-" << mode.second << ")";
    if (mult > 1) out << "^" << mult;
    out << " ";
  }
  out << "e[";
  for (size_t i = 0; i < lattice.size(); ++i) {
    if (i) out << ",";
    out << lattice[i];
  }
  out << "]";
  return out.str();
}

FockVector FockVector::vacuum(int rank) {
  FockVector v;
  v.entries_.emplace(FockBasisKey{{}, RootVector(rank, 0)}, QScalar(1));
  return v;
}

FockVector FockVector::unit(FockBasisKey key) {
  FockVector v;
  v.entries_.emplace(std::move(key), QScalar(1));
  return v;
}

QScalar FockVector::coeff(const FockBasisKey& k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? QScalar(0) : it->second;
}

void FockVector::add_term(const FockBasisKey& k, const QScalar& c) {
  if (c.is_zero()) return;
  auto it = entries_.find(k);
  if (it == entries_.end()) {
    entries_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

FockVector FockVector::operator-() const {
  FockVector r;
  for (const auto& [k, c] : entries_) r.entries_.emplace(k, -c);
  return r;
}

FockVector& FockVector::operator+=(const FockVector& o) {
  for (const auto& [k, c] : o.entries_) add_term(k, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  for (const auto& [k, c] : o.entries_) add_term(k, -c);
  return *this;
}

FockVector& FockVector::operator*=(const QScalar& c) {
  if (c.is_zero()) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, v] : entries_) v *= c;
  return *this;
}

std::string FockVector::to_string() const {
  if (entries_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : entries_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")*" << k.to_string();
  }
  return out.str();
}

FockVector heisenberg_act(int i, int m, const FockVector& v,
                          const CartanData& C) {
  if (m == 0)
    throw std::domain_error("heisenberg_act: use zero_mode_act for m = 0");
  if (i < 0 || i >= C.rank())
    throw std::invalid_argument("heisenberg_act: root index out of range");
  FockVector r;
  if (m < 0) {
    for (const auto& [k, c] : v.entries()) {
      FockBasisKey nk = k;
      ++nk.modes[{i, -m}];
      r.add_term(nk, c);
    }
    return r;
  }
  // [a_i(m), a_j(-m)] = ([(alpha_i|alpha_j)m]/m)[m]; the division by the
  // integer m happens on rational coefficients, which is always exact.
  for (const auto& [k, c] : v.entries()) {
    for (const auto& [mode, mult] : k.modes) {
      if (mode.second != m) continue;
      int j = mode.first;
      Rational mult_over_m(mult, m);
      mult_over_m.canonicalize();
      QScalar pair_c = q_int(static_cast<long>(C.entry(i, j)) * m) *
                       q_int(m) * QScalar(mult_over_m);
      FockBasisKey nk = k;
      if (mult == 1)
        nk.modes.erase(mode);
      else
        --nk.modes[mode];
      r.add_term(nk, c * pair_c);
    }
  }
  return r;
}

FockVector zero_mode_act(int i, const FockVector& v, const CartanData& C) {
  if (i < 0 || i >= C.rank())
    throw std::invalid_argument("zero_mode_act: root index out of range");
  FockVector r;
  RootVector alpha(C.rank(), 0);
  alpha[i] = 1;
  for (const auto& [k, c] : v.entries())
    r.add_term(k, c * QScalar(C.pairing(alpha, k.lattice)));
  return r;
}

FockVector k_act(int i, int sign, const FockVector& v, const CartanData& C) {
  if (i < 0 || i >= C.rank())
    throw std::invalid_argument("k_act: root index out of range");
  FockVector r;
  RootVector alpha(C.rank(), 0);
  alpha[i] = 1;
  for (const auto& [k, c] : v.entries()) {
    long p = C.pairing(alpha, k.lattice);
    r.add_term(k, c * QScalar::q_power(static_cast<int>(2 * sign * p)));
  }
  return r;
}

FockVector group_translate(const RootVector& a, const FockVector& v,
                           const CartanData& C) {
  FockVector r;
  for (const auto& [k, c] : v.entries()) {
    FockBasisKey nk = k;
    int sign = C.cocycle(a, k.lattice);
    for (int t = 0; t < C.rank(); ++t) nk.lattice[t] += a[t];
    r.add_term(nk, sign > 0 ? c : -c);
  }
  return r;
}

long d_eigenvalue(const FockBasisKey& k, const CartanData& C) {
  return -static_cast<long>(k.degree()) - C.pairing(k.lattice, k.lattice) / 2;
}

FockVector d_conjugation_scale(int sign, const FockVector& v,
                               const CartanData& C) {
  FockVector r;
  for (const auto& [k, c] : v.entries())
    r.add_term(k, c * QScalar::q_power(static_cast<int>(
                        2 * sign * d_eigenvalue(k, C))));
  return r;
}

namespace {

// All multisets over the colored parts listed in `parts`, assigning each a
// multiplicity, with total degree staying within `cap`.
void enumerate_modes(const std::vector<std::pair<int, int>>& parts, size_t idx,
                     int cap, int used,
                     std::map<std::pair<int, int>, int>& partial,
                     std::vector<std::map<std::pair<int, int>, int>>& out) {
  if (idx == parts.size()) {
    out.push_back(partial);
    return;
  }
  auto [i, n] = parts[idx];
  enumerate_modes(parts, idx + 1, cap, used, partial, out);
  int max_mult = (cap - used) / n;
  for (int m = 1; m <= max_mult; ++m) {
    partial[{i, n}] = m;
    enumerate_modes(parts, idx + 1, cap, used + m * n, partial, out);
  }
  partial.erase({i, n});
}

}  // namespace

std::vector<FockBasisKey> enumerate_basis(const CartanData& C, int degree_cap,
                                          int lattice_box) {
  if (degree_cap < 0 || lattice_box < 0)
    throw std::invalid_argument("enumerate_basis: bounds must be >= 0");
  std::vector<std::pair<int, int>> parts;
  for (int i = 0; i < C.rank(); ++i)
    for (int n = 1; n <= degree_cap; ++n) parts.emplace_back(i, n);
  std::vector<std::map<std::pair<int, int>, int>> mode_sets;
  std::map<std::pair<int, int>, int> partial;
  enumerate_modes(parts, 0, degree_cap, 0, partial, mode_sets);

  std::vector<RootVector> lattice_pts;
  RootVector cur(C.rank(), -lattice_box);
  for (;;) {
    lattice_pts.push_back(cur);
    int t = 0;
    while (t < C.rank() && cur[t] == lattice_box) cur[t++] = -lattice_box;
    if (t == C.rank()) break;
    ++cur[t];
  }

  std::vector<FockBasisKey> keys;
  keys.reserve(mode_sets.size() * lattice_pts.size());
  for (const auto& ms : mode_sets)
    for (const auto& lp : lattice_pts) keys.push_back({ms, lp});
  std::sort(keys.begin(), keys.end(), [](const FockBasisKey& a,
                                         const FockBasisKey& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  });
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace qkm
