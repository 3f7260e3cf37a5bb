#pragma once

// q-combinatorics: symmetric q-integers, q-factorials, q-binomials, and the
// two classical q-binomial identity checks.

#include "qkm/qscalar.hpp"

#include <string>

namespace qkm {

// [k] = (q^k - q^-k)/(q - q^-1), computed as the sign-adjusted sum of the
// monomials q^(|k|-1), q^(|k|-3), ..., q^(1-|k|).
QScalar q_int(long k);

// [k]! = [1][2]...[k]; k >= 0.
QScalar q_fact(int k);

// [n; r] = [n]!/([r]![n-r]!) by exact division; 0 outside 0 <= r <= n.
QScalar q_binom(int n, int r);

// sum_r [n; r] (-z)^r == (q^(1-n) z; q^2)_n as polynomials in z.
bool q_binom_theorem_check(int n, std::string* witness = nullptr);

// The same sum vanishes at z = q^i for every i in {1-n, 3-n, ..., n-1}.
bool q_binom_vanishing_check(int n, std::string* witness = nullptr);

}  // namespace qkm
