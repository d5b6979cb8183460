/*
 * Copyright 2026 The nshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Exact rational arithmetic for the Bernoulli numbers and the coefficients
// that fold Shapley-GAM components into n-Shapley Values.

#ifndef NSHAP_EXACTNUM_H_
#define NSHAP_EXACTNUM_H_

#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nshap {

using BigInt = boost::multiprecision::cpp_int;
// Always normalized: positive denominator, reduced, zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

BigInt Factorial(int n);
BigInt Binomial(int n, int k);

// Exact B_n with B_1 = -1/2. Memoized for the process lifetime; safe to call
// from concurrent threads.
Rational Bernoulli(int n);

// Weight with which an order-(s + m) component enters an order-(s + n)
// attribution of an s-subset:
//   C_{n,m} = sum_{k=0}^{n} binom(m,k) B_k / (1 + m - k).
// The binomial counts the k-subsets of the m extra features, which is what
// the Bernoulli recursion produces. Throws std::invalid_argument if m < n or
// n < 0.
Rational CoeffC(int n, int m);

// sum_{k=1}^{n} binom(n,k) B_k / (n-k+1) == -1/(n+1), evaluated exactly.
bool CheckBernoulliSumIdentity(int n);

// The double Bernoulli sum equals 1 when n == 0 and 0 otherwise.
bool CheckBernoulliDoubleSumIdentity(int n, int m);

double ToDouble(const Rational& r);

// Eagerly built coefficient table for one dimension. Immutable; the double
// views are what the floating point paths multiply with.
class CoefficientTable {
 public:
  explicit CoefficientTable(int max_order);

  int max_order() const { return max_order_; }
  const Rational& bernoulli(int n) const { return bernoulli_.at(n); }
  const Rational& c(int n, int m) const;

  double bernoulli_double(int n) const { return bernoulli_double_.at(n); }
  // Returns C_{n,m} as binary64; 0 <= n < m <= max_order.
  double c_double(int n, int m) const {
    return c_double_[static_cast<size_t>(n) * (max_order_ + 1) + m];
  }

 private:
  int max_order_;
  std::vector<Rational> bernoulli_;
  std::map<std::pair<int, int>, Rational> c_coeffs_;
  std::vector<double> bernoulli_double_;
  std::vector<double> c_double_;
};

}  // namespace nshap

#endif  // NSHAP_EXACTNUM_H_
