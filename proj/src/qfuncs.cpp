#include "qkm/qfuncs.hpp"

#include "qkm/unipoly.hpp"

#include <cstdlib>

namespace qkm {

QScalar q_int(long k) {
  if (k == 0) return QScalar(0);
  long a = std::labs(k);
  LaurentMap terms;
  for (long j = 0; j < a; ++j)
    terms.emplace(static_cast<int>(2 * (a - 1 - 2 * j)), Rational(k > 0 ? 1 : -1));
  return QScalar::from_terms(terms);
}

QScalar q_fact(int k) {
  QScalar r(1);
  for (int j = 2; j <= k; ++j) r *= q_int(j);
  return r;
}

QScalar q_binom(int n, int r) {
  if (r < 0 || r > n) return QScalar(0);
  return QScalar::exact_divide(q_fact(n), q_fact(r) * q_fact(n - r));
}

namespace {

// sum_r [n; r] (-z)^r as a polynomial in z.
UniPoly binom_sum(int n) {
  UniPoly s;
  QScalar sign(1);
  for (int r = 0; r <= n; ++r) {
    s += UniPoly::monomial(sign * q_binom(n, r), r);
    sign = -sign;
  }
  return s;
}

}  // namespace

bool q_binom_theorem_check(int n, std::string* witness) {
  UniPoly lhs = binom_sum(n);
  UniPoly one(QScalar(1));
  UniPoly rhs = one;
  for (int j = 0; j < n; ++j)
    rhs *= one - UniPoly::monomial(QScalar::q_power(2 * (1 - n + 2 * j)), 1);
  if (lhs == rhs) return true;
  if (witness)
    *witness = "n=" + std::to_string(n) + " sum=" + lhs.to_string() +
               " product=" + rhs.to_string();
  return false;
}

bool q_binom_vanishing_check(int n, std::string* witness) {
  UniPoly sum = binom_sum(n);
  for (int i = 1 - n; i <= n - 1; i += 2) {
    QScalar val;
    for (const auto& [e, c] : sum.terms())
      val += c * QScalar::q_power(2 * i * e);
    if (!val.is_zero()) {
      if (witness)
        *witness = "n=" + std::to_string(n) + " i=" + std::to_string(i) +
                   " value=" + val.to_string();
      return false;
    }
  }
  return true;
}

}  // namespace qkm
