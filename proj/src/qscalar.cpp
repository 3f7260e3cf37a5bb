#include "qkm/qscalar.hpp"

#include <sstream>
#include <utility>
#include <vector>

namespace qkm {

namespace {

bool map_is_one(const LaurentMap& m) {
  return m.size() == 1 && m.begin()->first == 0 && m.begin()->second == 1;
}

void map_insert(LaurentMap& m, int e, const Rational& c) {
  if (c == 0) return;
  auto it = m.find(e);
  if (it == m.end()) {
    m.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

LaurentMap map_add(const LaurentMap& a, const LaurentMap& b) {
  LaurentMap r = a;
  for (const auto& [e, c] : b) map_insert(r, e, c);
  return r;
}

LaurentMap map_mul(const LaurentMap& a, const LaurentMap& b) {
  LaurentMap r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) map_insert(r, ea + eb, ca * cb);
  return r;
}

LaurentMap map_neg(const LaurentMap& a) {
  LaurentMap r;
  for (const auto& [e, c] : a) r.emplace(e, -c);
  return r;
}

LaurentMap map_scale(const LaurentMap& a, const Rational& c) {
  LaurentMap r;
  if (c == 0) return r;
  for (const auto& [e, k] : a) r.emplace(e, k * c);
  return r;
}

LaurentMap map_shift(const LaurentMap& a, int d) {
  LaurentMap r;
  for (const auto& [e, c] : a) r.emplace(e + d, c);
  return r;
}

// Dense polynomial (coefficient of x^i at index i) helpers for gcd reduction.
using Dense = std::vector<Rational>;

Dense to_dense(const LaurentMap& m) {
  // Caller shifts so the minimal exponent is 0.
  Dense d(m.empty() ? 0 : m.rbegin()->first + 1, Rational(0));
  for (const auto& [e, c] : m) d[e] = c;
  return d;
}

void dense_trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// Remainder of a by b (b nonzero), in place of a.
void dense_rem(Dense& a, const Dense& b) {
  dense_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    dense_trim(a);
  }
}

Dense dense_gcd(Dense a, Dense b) {
  dense_trim(a);
  dense_trim(b);
  while (!b.empty()) {
    dense_rem(a, b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// Exact quotient a / b for polynomials with zero remainder.
Dense dense_quot(Dense a, const Dense& b) {
  dense_trim(a);
  Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = f;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    dense_trim(a);
  }
  return q;
}

LaurentMap from_dense(const Dense& d, int shift) {
  LaurentMap m;
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) m.emplace(static_cast<int>(i) + shift, d[i]);
  return m;
}

std::string rational_to_string(const Rational& r) {
  return r.get_str();
}

}  // namespace

QScalar::QScalar(long n) : den_{{0, 1}} {
  if (n != 0) num_.emplace(0, Rational(n));
}

QScalar::QScalar(const Rational& r) : den_{{0, 1}} {
  if (r != 0) num_.emplace(0, r);
}

QScalar QScalar::term(const Rational& c, int half_exponent) {
  QScalar v;
  if (c != 0) v.num_.emplace(half_exponent, c);
  return v;
}

QScalar QScalar::q_power(int half_exponent) {
  return term(Rational(1), half_exponent);
}

QScalar QScalar::from_terms(const LaurentMap& terms) {
  QScalar v;
  for (const auto& [e, c] : terms) map_insert(v.num_, e, c);
  return v;
}

bool QScalar::is_laurent() const { return map_is_one(den_); }

bool QScalar::is_one() const { return is_laurent() && map_is_one(num_); }

const LaurentMap& QScalar::laurent_terms() const {
  if (!is_laurent())
    throw std::logic_error("laurent_terms: value has a nontrivial denominator");
  return num_;
}

void QScalar::reduce_() {
  if (num_.empty()) {
    den_ = {{0, 1}};
    return;
  }
  if (map_is_one(den_)) return;
  int nmin = num_.begin()->first;
  int dmin = den_.begin()->first;
  Dense n = to_dense(map_shift(num_, -nmin));
  Dense d = to_dense(map_shift(den_, -dmin));
  Dense g = dense_gcd(n, d);
  if (g.size() > 1) {
    n = dense_quot(std::move(n), g);
    d = dense_quot(std::move(d), g);
  }
  // Unit normalization: den gets constant coefficient 1 at exponent 0.
  Rational unit = d[0];
  for (auto& c : n) c /= unit;
  for (auto& c : d) c /= unit;
  num_ = from_dense(n, nmin - dmin);
  den_ = from_dense(d, 0);
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  r.num_ = map_neg(r.num_);
  return r;
}

QScalar& QScalar::operator+=(const QScalar& o) {
  if (den_ == o.den_) {
    num_ = map_add(num_, o.num_);
    if (!map_is_one(den_)) reduce_();
    return *this;
  }
  num_ = map_add(map_mul(num_, o.den_), map_mul(o.num_, den_));
  den_ = map_mul(den_, o.den_);
  reduce_();
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) { return *this += -o; }

QScalar& QScalar::operator*=(const QScalar& o) {
  num_ = map_mul(num_, o.num_);
  den_ = map_mul(den_, o.den_);
  if (!map_is_one(den_)) reduce_();
  else if (num_.empty()) den_ = {{0, 1}};
  return *this;
}

QScalar& QScalar::operator/=(const QScalar& o) {
  if (o.is_zero()) throw std::domain_error("QScalar: division by zero");
  num_ = map_mul(num_, o.den_);
  den_ = map_mul(den_, o.num_);
  reduce_();
  return *this;
}

bool QScalar::operator<(const QScalar& o) const {
  if (num_ != o.num_) return num_ < o.num_;
  return den_ < o.den_;
}

QScalar QScalar::bar() const {
  QScalar r;
  r.num_.clear();
  r.den_.clear();
  for (const auto& [e, c] : num_) r.num_.emplace(-e, c);
  for (const auto& [e, c] : den_) r.den_.emplace(-e, c);
  // Clear the unit ambiguity reintroduced by flipping exponents.
  int dmin = r.den_.begin()->first;
  if (dmin != 0) {
    r.num_ = map_shift(r.num_, -dmin);
    r.den_ = map_shift(r.den_, -dmin);
  }
  Rational unit = r.den_.begin()->second;
  if (unit != 1) {
    r.num_ = map_scale(r.num_, 1 / unit);
    r.den_ = map_scale(r.den_, 1 / unit);
  }
  return r;
}

QScalar QScalar::pow(long e) const {
  if (e == 0) return QScalar(1);
  QScalar base = *this;
  if (e < 0) {
    base = QScalar(1) / base;
    e = -e;
  }
  QScalar acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Rational QScalar::eval_at_rational(const Rational& s_value) const {
  if (s_value == 0) {
    // Reduced denominators have minimum exponent 0 and constant term 1, so
    // the value at 0 exists exactly when the numerator has no negative
    // exponents; it is then the ratio of the constant terms.
    auto at_zero = [](const LaurentMap& m) {
      auto it = m.find(0);
      return it == m.end() ? Rational(0) : it->second;
    };
    if (!num_.empty() && num_.begin()->first < 0)
      throw std::domain_error("eval_at_rational: point is a pole");
    Rational d = at_zero(den_);
    if (d == 0)
      throw std::domain_error("eval_at_rational: point is a pole");
    return at_zero(num_) / d;
  }
  auto eval_map = [&](const LaurentMap& m) {
    Rational acc(0);
    for (const auto& [e, c] : m) {
      Rational p(1);
      Rational base = e >= 0 ? s_value : Rational(1) / s_value;
      for (int i = 0; i < (e >= 0 ? e : -e); ++i) p *= base;
      acc += c * p;
    }
    return acc;
  };
  Rational d = eval_map(den_);
  if (d == 0)
    throw std::domain_error("eval_at_rational: point is a pole");
  return eval_map(num_) / d;
}

QScalar QScalar::exact_divide(const QScalar& a, const QScalar& b) {
  if (b.is_zero())
    throw std::domain_error("exact_divide: division by zero");
  QScalar r = a / b;
  if (!r.is_laurent())
    throw inexact_division_error(
        "exact_divide: division leaves the Laurent ring (nonzero remainder)");
  return r;
}

std::string laurent_to_string(const LaurentMap& terms) {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (!first) out << " + ";
    first = false;
    if (e == 0) {
      out << rational_to_string(c);
    } else if (e % 2 == 0) {
      out << rational_to_string(c) << "*q^" << e / 2;
    } else {
      out << rational_to_string(c) << "*q^(" << e << "/2)";
    }
  }
  return out.str();
}

std::string QScalar::to_string() const {
  if (is_laurent()) return laurent_to_string(num_);
  return "(" + laurent_to_string(num_) + ")/(" + laurent_to_string(den_) + ")";
}

}  // namespace qkm
