#include "qkm/unipoly.hpp"

#include "qkm/qfuncs.hpp"

#include <sstream>
#include <stdexcept>

namespace qkm {

void UniPoly::insert_(int e, const QScalar& c) {
  if (c.is_zero()) return;
  auto it = coeffs_.find(e);
  if (it == coeffs_.end()) {
    coeffs_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

QScalar UniPoly::coeff(int e) const {
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? QScalar(0) : it->second;
}

int UniPoly::low_degree() const {
  if (is_zero()) throw std::logic_error("low_degree of zero polynomial");
  return coeffs_.begin()->first;
}

int UniPoly::high_degree() const {
  if (is_zero()) throw std::logic_error("high_degree of zero polynomial");
  return coeffs_.rbegin()->first;
}

UniPoly UniPoly::operator-() const {
  UniPoly r;
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  for (const auto& [e, c] : o.coeffs_) insert_(e, c);
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  for (const auto& [e, c] : o.coeffs_) insert_(e, -c);
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  UniPoly r;
  for (const auto& [ea, ca] : coeffs_)
    for (const auto& [eb, cb] : o.coeffs_) r.insert_(ea + eb, ca * cb);
  coeffs_ = std::move(r.coeffs_);
  return *this;
}

UniPoly& UniPoly::operator*=(const QScalar& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [e, k] : coeffs_) k *= c;
  return *this;
}

UniPoly UniPoly::shifted(int d) const {
  UniPoly r;
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e + d, c);
  return r;
}

UniPoly UniPoly::scaled_arg(int half) const {
  UniPoly r;
  for (const auto& [e, c] : coeffs_)
    r.coeffs_.emplace(e, c * QScalar::q_power(half * e));
  return r;
}

UniPoly UniPoly::truncated(int order) const {
  UniPoly r;
  for (const auto& [e, c] : coeffs_) {
    if (e > order) break;
    r.coeffs_.emplace(e, c);
  }
  return r;
}

std::string UniPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    std::string cs = c.to_string();
    bool plain = c.is_laurent() && c.laurent_terms().size() == 1;
    if (e == 0) {
      out << (plain ? cs : "(" + cs + ")");
      continue;
    }
    if (c.is_one())
      out << "x^" << e;
    else
      out << (plain ? cs : "(" + cs + ")") << "*x^" << e;
  }
  return out.str();
}

UniPoly d_q(const UniPoly& f) {
  UniPoly r;
  for (const auto& [e, c] : f.terms())
    r += UniPoly::monomial(c * q_int(e), e - 1);
  return r;
}

UniPoly d_q_iterate(UniPoly f, int n) {
  for (int i = 0; i < n; ++i) f = d_q(f);
  return f;
}

PowerSeries PowerSeries::truncated(int new_order) const {
  if (new_order >= order) return *this;
  return {poly.truncated(new_order), new_order};
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  int ord = std::min(a.order, b.order);
  return {(a.poly + b.poly).truncated(ord), ord};
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  int ord = std::min(a.order, b.order);
  return {(a.poly - b.poly).truncated(ord), ord};
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  int ord = std::min(a.order, b.order);
  UniPoly p = a.poly * b.poly;
  if (ord != PowerSeries::kExactOrder) p = p.truncated(ord);
  return {p, ord};
}

PowerSeries operator*(const QScalar& c, const PowerSeries& a) {
  return {a.poly * c, a.order};
}

PowerSeries d_q(const PowerSeries& f) {
  int ord = f.is_exact() ? PowerSeries::kExactOrder : f.order - 1;
  return {d_q(f.poly).truncated(ord), ord};
}

PowerSeries q_power_binomial(int a, int order) {
  UniPoly one(QScalar(1));
  if (a >= 0) {
    UniPoly p = one;
    for (int j = 0; j < a; ++j)
      p *= one - UniPoly::monomial(QScalar::q_power(2 * (-a + 1 + 2 * j)), 1);
    return {p, PowerSeries::kExactOrder};
  }
  // 1 / prod_{j=0}^{|a|-1} (1 - q^(a+1+2j) x), each factor expanded as a
  // geometric series and multiplied under truncation.
  PowerSeries acc{one, order};
  for (int j = 0; j < -a; ++j) {
    QScalar c = QScalar::q_power(2 * (a + 1 + 2 * j));
    UniPoly geo;
    QScalar ck(1);
    for (int k = 0; k <= order; ++k) {
      geo += UniPoly::monomial(ck, k);
      ck *= c;
    }
    acc = acc * PowerSeries{geo, order};
  }
  return acc;
}

}  // namespace qkm
