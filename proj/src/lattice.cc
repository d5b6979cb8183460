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

#include "nshap/lattice.h"

#include <charconv>
#include <stdexcept>
#include <utility>

namespace nshap {

FeatureSet FeatureSet::Of(std::initializer_list<int> features) {
  return Of(std::span<const int>(features.begin(), features.size()));
}

FeatureSet FeatureSet::Of(std::span<const int> features) {
  uint32_t bits = 0;
  for (int f : features) {
    if (f < 0 || f >= kMaxDim) {
      throw std::invalid_argument("Feature index out of range: " +
                                  std::to_string(f));
    }
    bits |= 1u << f;
  }
  return FeatureSet(bits);
}

FeatureSet FeatureSet::FromKey(std::string_view key) {
  uint32_t bits = 0;
  while (!key.empty()) {
    const size_t comma = key.find(',');
    const std::string_view token = key.substr(0, comma);
    int feature = -1;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), feature);
    if (ec != std::errc() || ptr != token.data() + token.size() ||
        feature < 0 || feature >= kMaxDim) {
      throw std::invalid_argument("Malformed feature set key: '" +
                                  std::string(key) + "'");
    }
    bits |= 1u << feature;
    if (comma == std::string_view::npos) break;
    key.remove_prefix(comma + 1);
  }
  return FeatureSet(bits);
}

std::vector<int> FeatureSet::Members() const {
  std::vector<int> members;
  for (uint32_t rest = bits_; rest != 0; rest &= rest - 1) {
    members.push_back(std::countr_zero(rest));
  }
  return members;
}

std::string FeatureSet::Key() const {
  std::string key;
  for (int f : Members()) {
    if (!key.empty()) key += ',';
    key += std::to_string(f);
  }
  return key;
}

std::string FeatureSet::Display() const {
  std::string out = "{";
  bool first = true;
  for (int f : Members()) {
    if (!first) out += ',';
    out += std::to_string(f + 1);
    first = false;
  }
  return out + "}";
}

void CheckDim(int dim) {
  if (dim < 0 || dim > kMaxDim) {
    throw std::invalid_argument("Dimension " + std::to_string(dim) +
                                " outside [0, " + std::to_string(kMaxDim) +
                                "]");
  }
}

std::vector<FeatureSet> EnumerateSubsets(int dim, int max_size) {
  CheckDim(dim);
  if (max_size < 0 || max_size > dim) {
    throw std::invalid_argument("max_size must lie in [0, dim]");
  }
  std::vector<FeatureSet> sets;
  const uint32_t count = 1u << dim;
  for (uint32_t mask = 0; mask < count; ++mask) {
    if (std::popcount(mask) <= max_size) sets.emplace_back(mask);
  }
  return sets;
}

SubsetTable::SubsetTable(int dim) : dim_(dim) {
  CheckDim(dim);
  values_.assign(size_t{1} << dim, 0.0);
}

SubsetTable::SubsetTable(int dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
  CheckDim(dim);
  if (values_.size() != (size_t{1} << dim)) {
    throw std::invalid_argument("SubsetTable of dim " + std::to_string(dim) +
                                " needs " + std::to_string(size_t{1} << dim) +
                                " entries, got " +
                                std::to_string(values_.size()));
  }
}

SubsetTable& SubsetTable::operator+=(const SubsetTable& other) {
  if (other.dim_ != dim_) {
    throw std::invalid_argument("SubsetTable dimension mismatch");
  }
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SubsetTable MoebiusTransform(const SubsetTable& table) {
  SubsetTable out = table;
  std::span<double> v = out.mutable_values();
  const size_t n = v.size();
  for (int i = 0; i < table.dim(); ++i) {
    const size_t bit = size_t{1} << i;
    for (size_t mask = 0; mask < n; ++mask) {
      if (mask & bit) v[mask] -= v[mask ^ bit];
    }
  }
  return out;
}

SubsetTable ZetaTransform(const SubsetTable& table) {
  SubsetTable out = table;
  std::span<double> v = out.mutable_values();
  const size_t n = v.size();
  for (int i = 0; i < table.dim(); ++i) {
    const size_t bit = size_t{1} << i;
    for (size_t mask = 0; mask < n; ++mask) {
      if (mask & bit) v[mask] += v[mask ^ bit];
    }
  }
  return out;
}

}  // namespace nshap
