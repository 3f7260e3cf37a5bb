#include "qkm/identities.hpp"

#include "qkm/qfuncs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qkm {

namespace {

QScalar q_power(int half) { return QScalar::q_power(half); }

// sum_{r=0..m} [m;r] (w - c z_1)...(w - c z_r)(z_{r+1} - c w)...(z_m - c w),
// over arity m (slot m is w).
MultiPoly binomial_weighted_sum(int m, const QScalar& c) {
  MultiPoly sum(m);
  for (int r = 0; r <= m; ++r) {
    std::vector<std::tuple<int, int, QScalar>> factors;
    factors.reserve(m);
    for (int k = 0; k < r; ++k) factors.emplace_back(m, k, c);
    for (int k = r; k < m; ++k) factors.emplace_back(k, m, c);
    sum += q_binom(m, r) * q_shifted_product(m, factors);
  }
  return sum;
}

// prod_{i<j} (z_i - t z_j).
MultiPoly cross_product(int m, const QScalar& t) {
  std::vector<std::tuple<int, int, QScalar>> factors;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) factors.emplace_back(i, j, t);
  return q_shifted_product(m, factors);
}

void fail(std::string* witness, const std::string& message) {
  if (witness) *witness = message;
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0)
      throw std::domain_error("partition parts must be nonnegative");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::domain_error("partition parts must be weakly decreasing");
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

Partition Partition::parse(const std::string& text) {
  std::vector<int> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw std::domain_error("malformed partition entry '" + token + "'");
    }
    if (used != token.size())
      throw std::domain_error("malformed partition entry '" + token + "'");
    parts.push_back(value);
  }
  return Partition(std::move(parts));
}

int Partition::size() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string Partition::to_string() const {
  if (parts_.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

MultiPoly ser2_expression(int m) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  MultiPoly inner =
      binomial_weighted_sum(m, q_power(2 * (1 - m))) * cross_product(m, q_power(-4));
  return inner.antisymmetrize();
}

bool ser3_check(int m, std::string* witness) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  MultiPoly cleared =
      (binomial_weighted_sum(m, q_power(2 * (m - 1))) * cross_product(m, q_power(4)))
          .antisymmetrize();
  if (!cleared.is_zero()) {
    fail(witness, "cleared sum is nonzero: " + cleared.to_string());
    return false;
  }
  MultiPoly image = ser2_expression(m).bar();
  if (cleared != image) {
    fail(witness,
         "cleared sum differs from the bar image: " + image.to_string());
    return false;
  }
  return true;
}

bool serre_coefficient_check(int m, std::string* witness) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  QScalar c = q_power(2 * (1 - m));

  MultiPoly sum = binomial_weighted_sum(m, c);
  MultiPoly w0 = sum.coefficient_of(m, 0);

  QScalar scalar(0);
  for (int r = 0; r <= m; ++r)
    scalar += q_binom(m, r) * (-c).pow(r);

  ExpVec ones(m + 1, 1);
  ones[m] = 0;
  if (w0 != MultiPoly::monomial(m, ones, scalar)) {
    fail(witness, "w^0 coefficient is not scalar * z_1...z_m: " +
                      w0.to_string());
    return false;
  }

  // (q^(2-2m); q^2)_m, the q-binomial theorem evaluation at z = q^(1-m).
  QScalar pochhammer(1);
  for (int j = 0; j < m; ++j)
    pochhammer *= QScalar(1) - q_power(4 - 4 * m + 4 * j);
  if (scalar != pochhammer) {
    fail(witness, "scalar does not match the Pochhammer product: " +
                      scalar.to_string());
    return false;
  }
  if (!scalar.is_zero()) {
    fail(witness, "Pochhammer product is nonzero: " + scalar.to_string());
    return false;
  }

  MultiPoly full = ser2_expression(m).coefficient_of(m, 0);
  MultiPoly factored = scalar * MultiPoly::monomial(m, ones, QScalar(1)) *
                       cross_product(m, q_power(-4)).antisymmetrize();
  if (full != factored) {
    fail(witness, "w^0 coefficient of the full sum does not factor: " +
                      full.to_string());
    return false;
  }
  return true;
}

QScalar v_lambda(const std::vector<int>& tuple, int num_vars) {
  if (num_vars < 0) num_vars = static_cast<int>(tuple.size());
  if (static_cast<int>(tuple.size()) > num_vars)
    throw std::domain_error("tuple longer than the variable count");
  std::map<int, int> multiplicity;
  for (int v : tuple) ++multiplicity[v];
  multiplicity[0] += num_vars - static_cast<int>(tuple.size());
  QScalar v(1);
  for (const auto& [value, mult] : multiplicity) {
    (void)value;
    for (int j = 1; j <= mult; ++j) {
      QScalar factor(0);
      for (int u = 0; u < j; ++u) factor += q_power(4 * u);
      v *= factor;
    }
  }
  return v;
}

QScalar v_lambda_factorial(const Partition& lambda) {
  long choose2 = 0;
  QScalar factorials(1);
  for (int part : lambda.parts()) {
    choose2 += static_cast<long>(part) * (part - 1) / 2;
    factorials *= q_fact(part);
  }
  return q_power(static_cast<int>(2 * choose2)) * factorials;
}

MultiPoly hl_poly(const std::vector<int>& tuple, int num_vars) {
  if (num_vars < 1) throw std::domain_error("variable count must be >= 1");
  if (static_cast<int>(tuple.size()) > num_vars)
    throw std::domain_error("tuple longer than the variable count");
  ExpVec exps(num_vars + 1, 0);
  std::copy(tuple.begin(), tuple.end(), exps.begin());
  MultiPoly numerator =
      (MultiPoly::monomial(num_vars, exps, QScalar(1)) *
       cross_product(num_vars, q_power(4)))
          .antisymmetrize();
  MultiPoly quotient = exact_divide_poly(numerator, vandermonde(num_vars));
  return quotient * (QScalar(1) / v_lambda(tuple, num_vars));
}

MultiPoly hl_poly(const Partition& lambda, int num_vars) {
  return hl_poly(lambda.parts(), num_vars);
}

std::map<Partition, QScalar> hl_expand(const MultiPoly& p, int num_vars) {
  if (p.num_z() != num_vars)
    throw std::domain_error("arity mismatch between polynomial and variable count");
  for (const auto& [exps, coeff] : p.terms()) {
    (void)coeff;
    if (exps[num_vars] != 0)
      throw std::domain_error("polynomial must not involve w");
    for (int k = 0; k < num_vars; ++k)
      if (exps[k] < 0)
        throw std::domain_error("exponents must be nonnegative");
  }
  std::vector<int> transposition(num_vars);
  for (int k = 0; k + 1 < num_vars; ++k) {
    std::iota(transposition.begin(), transposition.end(), 0);
    std::swap(transposition[k], transposition[k + 1]);
    if (p.permute(transposition) != p)
      throw std::domain_error("polynomial is not symmetric");
  }

  std::map<Partition, QScalar> out;
  std::map<int, MultiPoly> by_degree;
  for (const auto& [exps, coeff] : p.terms()) {
    int degree = std::accumulate(exps.begin(), exps.end(), 0);
    auto [it, inserted] = by_degree.try_emplace(degree, MultiPoly(num_vars));
    it->second += MultiPoly::monomial(num_vars, exps, coeff);
  }

  for (auto& [degree, component] : by_degree) {
    (void)degree;
    while (!component.is_zero()) {
      std::vector<int> best;
      for (const auto& [exps, coeff] : component.terms()) {
        (void)coeff;
        std::vector<int> sorted(exps.begin(), exps.begin() + num_vars);
        std::sort(sorted.rbegin(), sorted.rend());
        if (sorted > best) best = sorted;
      }
      ExpVec dominant(num_vars + 1, 0);
      std::copy(best.begin(), best.end(), dominant.begin());
      QScalar c = component.coeff(dominant);
      while (!best.empty() && best.back() == 0) best.pop_back();
      Partition lambda(best);
      component -= c * hl_poly(lambda, num_vars);
      out[lambda] += c;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

MultiPoly hl_schur_limit(const MultiPoly& p) {
  MultiPoly out(p.num_z());
  for (const auto& [exps, coeff] : p.terms()) {
    QScalar value(coeff.eval_at_rational(0));
    if (!value.is_zero())
      out += MultiPoly::monomial(p.num_z(), exps, value);
  }
  return out;
}

bool diff_lemma_suite(int n_max, std::string* witness) {
  if (n_max < 1) throw std::domain_error("n_max must be >= 1");
  for (int n = 1; n <= n_max; ++n) {
    UniPoly lhs = d_q(q_power_binomial(n, 0).poly);
    UniPoly rhs = (-q_int(n)) * q_power_binomial(n - 1, 0).poly;
    if (lhs != rhs) {
      fail(witness, "first lemma fails at n = " + std::to_string(n) + ": " +
                        lhs.to_string());
      return false;
    }
  }

  std::vector<UniPoly> family;
  for (int k = 0; k <= n_max; ++k)
    family.push_back(UniPoly::variable(k));
  for (int j = 0; j <= std::min(n_max, 4); ++j)
    family.push_back(q_power_binomial(j, 0).poly);

  QScalar q_minus = q_power(2) - q_power(-2);
  for (int n = 1; n <= n_max; ++n) {
    QScalar prefactor = q_minus.pow(-n);
    for (size_t f = 0; f < family.size(); ++f) {
      UniPoly sum;
      for (int i = 0; i <= n; ++i) {
        QScalar c = q_binom(n, i) * q_power((n - 1) * (2 * i - n));
        if (i % 2) c = -c;
        sum += c * family[f].scaled_arg(2 * (n - 2 * i));
      }
      UniPoly rhs = (prefactor * sum).shifted(-n);
      if (d_q_iterate(family[f], n) != rhs) {
        fail(witness, "second lemma fails at n = " + std::to_string(n) +
                          ", family member " + std::to_string(f));
        return false;
      }
    }
  }
  return true;
}

}  // namespace qkm
