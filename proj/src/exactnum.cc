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

#include "nshap/exactnum.h"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace nshap {
namespace {

class BernoulliMemo {
 public:
  Rational Get(int n) {
    {
      std::shared_lock lock(mutex_);
      if (n < static_cast<int>(values_.size())) return values_[n];
    }
    std::unique_lock lock(mutex_);
    if (values_.empty()) values_.push_back(Rational(1));
    while (static_cast<int>(values_.size()) <= n) {
      const int m = static_cast<int>(values_.size());
      Rational sum(0);
      for (int k = 0; k < m; ++k) {
        sum += values_[k] * Rational(Binomial(m + 1, k));
      }
      values_.push_back(-sum / Rational(m + 1));
    }
    return values_[n];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<Rational> values_;
};

BernoulliMemo& Memo() {
  static BernoulliMemo* memo = new BernoulliMemo();
  return *memo;
}

}  // namespace

BigInt Factorial(int n) {
  if (n < 0) throw std::invalid_argument("Factorial of negative number");
  BigInt result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt Binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

Rational Bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("Bernoulli index must be >= 0");
  return Memo().Get(n);
}

Rational CoeffC(int n, int m) {
  if (n < 0 || m < n) {
    throw std::invalid_argument("CoeffC requires 0 <= n <= m, got n=" +
                                std::to_string(n) +
                                ", m=" + std::to_string(m));
  }
  Rational sum(0);
  for (int k = 0; k <= n; ++k) {
    sum += Rational(Binomial(m, k)) * Bernoulli(k) / Rational(1 + m - k);
  }
  return sum;
}

bool CheckBernoulliSumIdentity(int n) {
  if (n < 1) throw std::invalid_argument("identity requires n >= 1");
  Rational sum(0);
  for (int k = 1; k <= n; ++k) {
    sum += Rational(Binomial(n, k)) * Bernoulli(k) / Rational(n - k + 1);
  }
  return sum == Rational(-1) / Rational(n + 1);
}

bool CheckBernoulliDoubleSumIdentity(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("identity requires n, m >= 0");
  Rational sum(0);
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= m; ++l) {
      Rational term(Binomial(n, k) * Binomial(m, l) * Factorial(n - k) *
                        Factorial(m - l),
                    Factorial(n + m - k - l + 1));
      term *= Bernoulli(k + l);
      if (l % 2 == 1) term = -term;
      sum += term;
    }
  }
  return sum == Rational(n == 0 ? 1 : 0);
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

CoefficientTable::CoefficientTable(int max_order) : max_order_(max_order) {
  if (max_order < 0) {
    throw std::invalid_argument("CoefficientTable requires max_order >= 0");
  }
  const int width = max_order + 1;
  c_double_.assign(static_cast<size_t>(width) * width, 0.0);
  for (int n = 0; n <= max_order; ++n) {
    bernoulli_.push_back(Bernoulli(n));
    bernoulli_double_.push_back(ToDouble(bernoulli_.back()));
  }
  for (int n = 0; n <= max_order; ++n) {
    for (int m = n + 1; m <= max_order; ++m) {
      Rational value = CoeffC(n, m);
      c_double_[static_cast<size_t>(n) * width + m] = ToDouble(value);
      c_coeffs_.emplace(std::make_pair(n, m), std::move(value));
    }
  }
}

const Rational& CoefficientTable::c(int n, int m) const {
  auto it = c_coeffs_.find({n, m});
  if (it == c_coeffs_.end()) {
    throw std::out_of_range("CoefficientTable has no entry C(" +
                            std::to_string(n) + "," + std::to_string(m) + ")");
  }
  return it->second;
}

}  // namespace nshap
