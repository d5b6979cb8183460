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

// Coalitions of features as bitmasks and the fast transforms over the Boolean
// lattice of all 2^d coalitions.

#ifndef NSHAP_LATTICE_H_
#define NSHAP_LATTICE_H_

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nshap {

// Dense tables are capped at 2^24 entries.
inline constexpr int kMaxDim = 24;

// A subset of [d]; bit i is set iff feature i (0-based) is in the set.
class FeatureSet {
 public:
  constexpr FeatureSet() = default;
  constexpr explicit FeatureSet(uint32_t bits) : bits_(bits) {}

  static FeatureSet Full(int dim) {
    return FeatureSet(dim >= 32 ? ~0u : ((1u << dim) - 1u));
  }
  static FeatureSet Of(std::initializer_list<int> features);
  static FeatureSet Of(std::span<const int> features);
  // Parses "0,2,3"; the empty string is the empty set.
  static FeatureSet FromKey(std::string_view key);

  constexpr uint32_t bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int feature) const { return (bits_ >> feature) & 1u; }
  bool IsSubsetOf(FeatureSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  FeatureSet With(int feature) const {
    return FeatureSet(bits_ | (1u << feature));
  }
  FeatureSet Union(FeatureSet other) const {
    return FeatureSet(bits_ | other.bits_);
  }
  FeatureSet Minus(FeatureSet other) const {
    return FeatureSet(bits_ & ~other.bits_);
  }
  std::vector<int> Members() const;

  // Comma-joined ascending 0-based indices, e.g. "0,2,3".
  std::string Key() const;
  // Human-facing form with 1-based indices, e.g. "{1,3,4}".
  std::string Display() const;

  friend constexpr bool operator==(FeatureSet, FeatureSet) = default;
  friend constexpr auto operator<=>(FeatureSet, FeatureSet) = default;

 private:
  uint32_t bits_ = 0;
};

// Throws std::invalid_argument unless 0 <= dim <= kMaxDim.
void CheckDim(int dim);

// All sets with |S| <= max_size in increasing mask order.
std::vector<FeatureSet> EnumerateSubsets(int dim, int max_size);

// Dense map S -> double over all 2^dim subsets, indexed by mask.
class SubsetTable {
 public:
  SubsetTable() = default;
  explicit SubsetTable(int dim);
  SubsetTable(int dim, std::vector<double> values);

  int dim() const { return dim_; }
  size_t size() const { return values_.size(); }

  double operator[](FeatureSet s) const { return values_[s.bits()]; }
  double& operator[](FeatureSet s) { return values_[s.bits()]; }
  double at_mask(uint32_t mask) const { return values_[mask]; }
  double& at_mask(uint32_t mask) { return values_[mask]; }

  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }

  SubsetTable& operator+=(const SubsetTable& other);

 private:
  int dim_ = 0;
  std::vector<double> values_ = {0.0};
};

// out[S] = sum_{L subset of S} (-1)^{|S|-|L|} table[L]. Sweeps dimensions
// 0..d-1 in a fixed order, O(d 2^d).
SubsetTable MoebiusTransform(const SubsetTable& table);

// out[S] = sum_{L subset of S} table[L]. Inverse of MoebiusTransform.
SubsetTable ZetaTransform(const SubsetTable& table);

}  // namespace nshap

#endif  // NSHAP_LATTICE_H_
