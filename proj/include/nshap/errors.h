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

#ifndef NSHAP_ERRORS_H_
#define NSHAP_ERRORS_H_

#include <stdexcept>
#include <string>

#include "nshap/lattice.h"

namespace nshap {

// The empirical conditional expectation is undefined: no data row agrees
// with the explained point on the coalition.
class NoMatchingRows : public std::runtime_error {
 public:
  explicit NoMatchingRows(FeatureSet subset, const std::string& context = "")
      : std::runtime_error((context.empty() ? "" : context + ": ") +
                           "no data row matches the explained point on " +
                           subset.Display()),
        subset_(subset) {}
  FeatureSet subset() const { return subset_; }

 private:
  FeatureSet subset_;
};

// External model exited, crashed, or replied with something unparseable.
class ProcessFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files (CSV, JSON results, configs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nshap

#endif  // NSHAP_ERRORS_H_
