#include "qkm/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qkm {

void MultiPoly::insert_(const ExpVec& e, const QScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_arity_(const MultiPoly& o) const {
  if (num_z_ != o.num_z_)
    throw std::invalid_argument("MultiPoly: arity mismatch");
}

MultiPoly MultiPoly::constant(int num_z, const QScalar& c) {
  MultiPoly p(num_z);
  p.insert_(ExpVec(num_z + 1, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int num_z, int var, int e) {
  if (var < 0 || var > num_z)
    throw std::invalid_argument("MultiPoly: variable index out of range");
  MultiPoly p(num_z);
  ExpVec exps(num_z + 1, 0);
  exps[var] = e;
  p.insert_(exps, QScalar(1));
  return p;
}

MultiPoly MultiPoly::monomial(int num_z, const ExpVec& exps, const QScalar& c) {
  if (static_cast<int>(exps.size()) != num_z + 1)
    throw std::invalid_argument("MultiPoly: exponent vector length mismatch");
  MultiPoly p(num_z);
  p.insert_(exps, c);
  return p;
}

QScalar MultiPoly::coeff(const ExpVec& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? QScalar(0) : it->second;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(num_z_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_arity_(o);
  for (const auto& [e, c] : o.terms_) insert_(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_arity_(o);
  for (const auto& [e, c] : o.terms_) insert_(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  check_arity_(o);
  MultiPoly r(num_z_);
  ExpVec key(num_z_ + 1);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i <= num_z_; ++i) key[i] = ea[i] + eb[i];
      r.insert_(key, ca * cb);
    }
  terms_ = std::move(r.terms_);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const QScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, k] : terms_) k *= c;
  return *this;
}

MultiPoly MultiPoly::permute(const std::vector<int>& sigma) const {
  if (static_cast<int>(sigma.size()) != num_z_)
    throw std::invalid_argument("MultiPoly: permutation length mismatch");
  MultiPoly r(num_z_);
  ExpVec key(num_z_ + 1);
  for (const auto& [e, c] : terms_) {
    std::fill(key.begin(), key.end(), 0);
    for (int i = 0; i < num_z_; ++i) key[sigma[i]] = e[i];
    key[num_z_] = e[num_z_];
    r.insert_(key, c);
  }
  return r;
}

namespace {

int inversion_parity(const std::vector<int>& sigma) {
  int inv = 0;
  for (size_t i = 0; i < sigma.size(); ++i)
    for (size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) ++inv;
  return inv % 2;
}

}  // namespace

MultiPoly MultiPoly::symmetrize() const {
  MultiPoly sum(num_z_);
  std::vector<int> sigma(num_z_);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    sum += permute(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum;
}

MultiPoly MultiPoly::antisymmetrize() const {
  MultiPoly sum(num_z_);
  std::vector<int> sigma(num_z_);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    if (inversion_parity(sigma))
      sum -= permute(sigma);
    else
      sum += permute(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum;
}

MultiPoly MultiPoly::coefficient_of(int var, int e) const {
  if (var < 0 || var > num_z_)
    throw std::invalid_argument("MultiPoly: variable index out of range");
  MultiPoly r(num_z_);
  for (const auto& [exps, c] : terms_)
    if (exps[var] == e) {
      ExpVec key = exps;
      key[var] = 0;
      r.insert_(key, c);
    }
  return r;
}

MultiPoly MultiPoly::bar() const {
  MultiPoly r(num_z_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.bar());
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) out << " + ";
    first = false;
    std::string mono;
    for (int i = 0; i <= num_z_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += ' ';
      mono += (i == num_z_) ? "w" : "z" + std::to_string(i + 1);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = c.to_string();
    if (mono.empty()) {
      out << cs;
      continue;
    }
    if (c.is_one()) {
      out << mono;
      continue;
    }
    // Parenthesize unless the coefficient is a bare rational.
    if (cs.find('*') != std::string::npos || cs.find(' ') != std::string::npos)
      cs = "(" + cs + ")";
    out << cs << "*" << mono;
  }
  return out.str();
}

MultiPoly q_shifted_product(
    int num_z, const std::vector<std::tuple<int, int, QScalar>>& pairs) {
  MultiPoly p = MultiPoly::constant(num_z, QScalar(1));
  for (const auto& [u, v, c] : pairs)
    p *= MultiPoly::variable(num_z, u) - MultiPoly::variable(num_z, v) * c;
  return p;
}

MultiPoly vandermonde(int num_z) {
  std::vector<std::tuple<int, int, QScalar>> pairs;
  for (int i = 0; i < num_z; ++i)
    for (int j = i + 1; j < num_z; ++j) pairs.emplace_back(i, j, QScalar(1));
  return q_shifted_product(num_z, pairs);
}

MultiPoly exact_divide_poly(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero())
    throw std::domain_error("exact_divide_poly: division by zero");
  if (num.num_z() != den.num_z())
    throw std::invalid_argument("exact_divide_poly: arity mismatch");
  int arity = num.num_z() + 1;
  if (num.is_zero()) return MultiPoly(num.num_z());

  // Shift both operands into nonnegative exponents so lexicographic
  // leading-term reduction is a terminating division algorithm; the shift
  // difference is restored on the quotient.
  ExpVec nshift(arity, 0), dshift(arity, 0);
  for (const auto& [e, c] : num.terms())
    for (int i = 0; i < arity; ++i) nshift[i] = std::min(nshift[i], e[i]);
  for (const auto& [e, c] : den.terms())
    for (int i = 0; i < arity; ++i) dshift[i] = std::min(dshift[i], e[i]);

  std::map<ExpVec, QScalar> rem;
  for (const auto& [e, c] : num.terms()) {
    ExpVec k(arity);
    for (int i = 0; i < arity; ++i) k[i] = e[i] - nshift[i];
    rem.emplace(k, c);
  }
  std::map<ExpVec, QScalar> dvs;
  for (const auto& [e, c] : den.terms()) {
    ExpVec k(arity);
    for (int i = 0; i < arity; ++i) k[i] = e[i] - dshift[i];
    dvs.emplace(k, c);
  }

  const ExpVec& dlead = dvs.rbegin()->first;
  const QScalar& dlc = dvs.rbegin()->second;
  MultiPoly quot(num.num_z());
  ExpVec qk(arity), tk(arity);
  while (!rem.empty()) {
    const ExpVec& rlead = rem.rbegin()->first;
    bool divisible = true;
    for (int i = 0; i < arity; ++i)
      if (rlead[i] < dlead[i]) {
        divisible = false;
        break;
      }
    if (!divisible)
      throw inexact_division_error(
          "exact_divide_poly: nonzero remainder at " + num.to_string());
    for (int i = 0; i < arity; ++i)
      qk[i] = rlead[i] - dlead[i] + nshift[i] - dshift[i];
    QScalar qc = rem.rbegin()->second / dlc;
    quot += MultiPoly::monomial(num.num_z(), qk, qc);
    // rem -= (monomial) * den.
    ExpVec base = rlead;
    for (int i = 0; i < arity; ++i) base[i] -= dlead[i];
    for (const auto& [e, c] : dvs) {
      for (int i = 0; i < arity; ++i) tk[i] = base[i] + e[i];
      auto it = rem.find(tk);
      QScalar nc = (it == rem.end() ? QScalar(0) : it->second) - qc * c;
      if (it != rem.end()) rem.erase(it);
      if (!nc.is_zero()) rem.emplace(tk, nc);
    }
  }
  return quot;
}

}  // namespace qkm
