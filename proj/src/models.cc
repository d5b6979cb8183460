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

#include "nshap/models.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "nshap/errors.h"

namespace nshap {

std::vector<double> PredictFn::PredictBatch(
    std::span<const double> rows) const {
  const size_t d = static_cast<size_t>(dim());
  if (d == 0) {
    throw std::invalid_argument("PredictBatch on a zero-dimensional model");
  }
  if (rows.size() % d != 0) {
    throw std::invalid_argument("PredictBatch: row buffer not a multiple of dim");
  }
  std::vector<double> out(rows.size() / d);
  for (size_t r = 0; r < out.size(); ++r) {
    out[r] = Predict(rows.subspan(r * d, d));
  }
  return out;
}

std::string FormatDouble(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::optional<double> ParseDouble(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

// ---------------------------------------------------------------------------
// Components.

double Factor::Evaluate(double x) const {
  switch (kind) {
    case Kind::kPolynomial: {
      double acc = 0.0;
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * x + *it;
      }
      return acc;
    }
    case Kind::kSine:
      return std::sin(frequency * x + phase);
    case Kind::kStep:
      return x >= threshold ? 1.0 : 0.0;
  }
  return 0.0;
}

double GridLookup::Evaluate(std::span<const double> x, bool* clamped) const {
  const size_t k = features.size();
  // Per axis: lower cell index and interpolation weight of the upper node.
  std::vector<size_t> lower(k);
  std::vector<double> weight(k);
  std::vector<size_t> stride(k, 1);
  for (size_t a = k; a-- > 1;) stride[a - 1] = stride[a] * axes[a].size();
  for (size_t a = 0; a < k; ++a) {
    const std::vector<double>& axis = axes[a];
    double v = x[features[a]];
    if (v < axis.front() || v > axis.back()) {
      if (clamped) *clamped = true;
      v = std::clamp(v, axis.front(), axis.back());
    }
    if (axis.size() == 1) {
      lower[a] = 0;
      weight[a] = 0.0;
      continue;
    }
    size_t i = static_cast<size_t>(
        std::upper_bound(axis.begin(), axis.end(), v) - axis.begin());
    i = std::clamp<size_t>(i, 1, axis.size() - 1) - 1;
    lower[a] = i;
    weight[a] = (v - axis[i]) / (axis[i + 1] - axis[i]);
  }
  double result = 0.0;
  for (uint32_t corner = 0; corner < (1u << k); ++corner) {
    double w = 1.0;
    size_t offset = 0;
    for (size_t a = 0; a < k; ++a) {
      const bool upper = (corner >> a) & 1u;
      if (upper && axes[a].size() == 1) {
        w = 0.0;
        break;
      }
      w *= upper ? weight[a] : 1.0 - weight[a];
      offset += (lower[a] + (upper ? 1 : 0)) * stride[a];
    }
    if (w != 0.0) result += w * values[offset];
  }
  return result;
}

double Component::Evaluate(std::span<const double> x, bool* clamped) const {
  if (grid) return grid->Evaluate(x, clamped);
  double sum = 0.0;
  for (const ProductTerm& term : terms) {
    double product = term.scale;
    for (const Factor& factor : term.factors) {
      product *= factor.Evaluate(x[factor.feature]);
    }
    sum += product;
  }
  return sum;
}

ComponentMap::ComponentMap(std::vector<Component> components)
    : components_(std::move(components)) {}

void ComponentMap::Add(Component component) {
  components_.push_back(std::move(component));
}

int ComponentMap::order() const {
  int order = 0;
  for (const Component& c : components_) order = std::max(order, c.support.size());
  return order;
}

void ComponentMap::Validate(int dim) const {
  CheckDim(dim);
  for (const Component& c : components_) {
    if (!c.support.IsSubsetOf(FeatureSet::Full(dim))) {
      throw std::invalid_argument("Component support " + c.support.Display() +
                                  " exceeds dimension " + std::to_string(dim));
    }
    if (c.grid) {
      const GridLookup& g = *c.grid;
      if (!c.terms.empty()) {
        throw std::invalid_argument("Component " + c.support.Display() +
                                    " has both terms and a grid");
      }
      if (g.features.size() != g.axes.size() ||
          FeatureSet::Of(g.features) != c.support ||
          static_cast<int>(g.features.size()) != c.support.size()) {
        throw std::invalid_argument("Grid features must list the support " +
                                    c.support.Display() + " exactly once");
      }
      size_t cells = 1;
      for (const auto& axis : g.axes) {
        if (axis.empty() || !std::is_sorted(axis.begin(), axis.end()) ||
            std::adjacent_find(axis.begin(), axis.end()) != axis.end()) {
          throw std::invalid_argument(
              "Grid axes must be nonempty and strictly increasing");
        }
        cells *= axis.size();
      }
      if (g.values.size() != cells) {
        throw std::invalid_argument("Grid for " + c.support.Display() +
                                    " needs " + std::to_string(cells) +
                                    " values");
      }
      continue;
    }
    for (const ProductTerm& term : c.terms) {
      for (const Factor& f : term.factors) {
        if (f.feature < 0 || !c.support.contains(f.feature)) {
          throw std::invalid_argument(
              "Factor on feature " + std::to_string(f.feature) +
              " lies outside component support " + c.support.Display());
        }
        if (f.kind == Factor::Kind::kPolynomial && f.coefficients.size() > 5) {
          throw std::invalid_argument("Polynomial factors have degree <= 4");
        }
      }
    }
  }
}

SubsetTable ComponentMap::Tabulate(std::span<const double> x, int dim,
                                   bool* clamped) const {
  SubsetTable table(dim);
  for (const Component& c : components_) {
    table[c.support] += c.Evaluate(x, clamped);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Built-in models.

AdditiveModel::AdditiveModel(int dim, ComponentMap components)
    : dim_(dim), components_(std::move(components)) {
  components_.Validate(dim);
}

double AdditiveModel::Predict(std::span<const double> x) const {
  bool clamped = false;
  double sum = 0.0;
  for (const Component& c : components_.components()) {
    sum += c.Evaluate(x, &clamped);
  }
  if (clamped) clamped_.fetch_add(1, std::memory_order_relaxed);
  return sum;
}

Checkerboard::Checkerboard(CheckerboardSpec spec) : spec_(std::move(spec)) {
  CheckDim(spec_.dim);
  if (spec_.dim < 1) throw std::invalid_argument("Checkerboard needs dim >= 1");
  if (spec_.granularity <= 0 || spec_.granularity % 2 != 0) {
    throw std::invalid_argument("Checkerboard granularity must be even and > 0");
  }
  if (spec_.active.empty()) {
    spec_.active.resize(spec_.dim);
    std::iota(spec_.active.begin(), spec_.active.end(), 0);
  }
  std::sort(spec_.active.begin(), spec_.active.end());
  if (std::adjacent_find(spec_.active.begin(), spec_.active.end()) !=
      spec_.active.end()) {
    throw std::invalid_argument("Checkerboard active features repeat");
  }
  for (int f : spec_.active) {
    if (f < 0 || f >= spec_.dim) {
      throw std::invalid_argument("Checkerboard active feature out of range");
    }
  }
}

double Checkerboard::Predict(std::span<const double> x) const {
  const double upper = std::nextafter(1.0, 0.0);
  int sign = 1;
  for (int f : spec_.active) {
    const double v = std::clamp(x[f], 0.0, upper);
    const auto cell = static_cast<int64_t>(std::floor(v * spec_.granularity));
    if (cell % 2 != 0) sign = -sign;
  }
  return 0.5 * (1.0 + sign);
}

std::vector<Point> Checkerboard::CellCenters() const {
  const int g = spec_.granularity;
  const size_t k = spec_.active.size();
  size_t count = 1;
  for (size_t i = 0; i < k; ++i) count *= g;
  std::vector<Point> rows;
  rows.reserve(count);
  for (size_t r = 0; r < count; ++r) {
    Point row(spec_.dim, 0.5);
    size_t rest = r;
    for (size_t a = k; a-- > 0;) {
      row[spec_.active[a]] = (static_cast<double>(rest % g) + 0.5) / g;
      rest /= g;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

KnnModel::KnnModel(std::vector<Point> train, std::vector<double> labels, int k)
    : k_(k), train_(std::move(train)), labels_(std::move(labels)) {
  if (train_.empty()) throw std::invalid_argument("kNN needs training rows");
  if (labels_.size() != train_.size()) {
    throw std::invalid_argument("kNN labels not aligned with training rows");
  }
  if (k_ < 1 || k_ > static_cast<int>(train_.size())) {
    throw std::invalid_argument("kNN requires 1 <= k <= number of rows");
  }
  dim_ = static_cast<int>(train_.front().size());
  for (const Point& row : train_) {
    if (static_cast<int>(row.size()) != dim_) {
      throw std::invalid_argument("kNN training rows are ragged");
    }
  }
}

double KnnModel::Predict(std::span<const double> x) const {
  std::vector<std::pair<double, size_t>> distances(train_.size());
  for (size_t r = 0; r < train_.size(); ++r) {
    double d2 = 0.0;
    for (int j = 0; j < dim_; ++j) {
      const double diff = train_[r][j] - x[j];
      d2 += diff * diff;
    }
    distances[r] = {d2, r};
  }
  std::partial_sort(distances.begin(), distances.begin() + k_, distances.end());
  double sum = 0.0;
  for (int i = 0; i < k_; ++i) sum += labels_[distances[i].second];
  return sum / k_;
}

// ---------------------------------------------------------------------------
// External process.

ExternalModel::ExternalModel(std::string command, int dim,
                             std::chrono::milliseconds timeout)
    : command_(std::move(command)), dim_(dim), timeout_(timeout) {
  if (dim < 1) throw std::invalid_argument("External model needs dim >= 1");
  // Writes to a dead child must surface as EPIPE, not kill the engine.
  signal(SIGPIPE, SIG_IGN);
}

ExternalModel::~ExternalModel() { Stop(); }

void ExternalModel::Start() const {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw ProcessFailed("pipe() failed");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw ProcessFailed("pipe() failed");
  }
  const pid_t pid = fork();
  if (pid < 0) throw ProcessFailed("fork() failed");
  if (pid == 0) {
    // Own process group so a stuck model can be killed with its children.
    setpgid(0, 0);
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  fcntl(to_child_, F_SETFL, fcntl(to_child_, F_GETFL) | O_NONBLOCK);
  fcntl(from_child_, F_SETFL, fcntl(from_child_, F_GETFL) | O_NONBLOCK);
  pending_.clear();
}

void ExternalModel::Stop() const {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    int status = 0;
    for (int i = 0; i < 100; ++i) {
      if (waitpid(pid_, &status, WNOHANG) != 0) {
        pid_ = -1;
        return;
      }
      usleep(10000);
    }
    kill(-pid_, SIGKILL);
    waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

double ExternalModel::Predict(std::span<const double> x) const {
  return PredictBatch(x.first(dim_)).front();
}

std::vector<double> ExternalModel::PredictBatch(
    std::span<const double> rows) const {
  if (rows.size() % dim_ != 0) {
    throw std::invalid_argument("PredictBatch: row buffer not a multiple of dim");
  }
  const size_t count = rows.size() / dim_;
  std::lock_guard lock(mutex_);
  if (pid_ < 0) Start();

  std::string request = "NSHAP-MODEL-V1 " + std::to_string(dim_) + " " +
                        std::to_string(count) + "\n";
  for (size_t r = 0; r < count; ++r) {
    for (int j = 0; j < dim_; ++j) {
      if (j > 0) request += ',';
      request += FormatDouble(rows[r * dim_ + j]);
    }
    request += '\n';
  }
  request += "END\n";

  std::vector<double> out;
  out.reserve(count);
  size_t written = 0;
  size_t line_number = 0;
  bool done = false;
  const auto deadline = std::chrono::steady_clock::now() + timeout_;

  auto fail = [&](const std::string& message) -> ProcessFailed {
    Stop();
    return ProcessFailed("external model '" + command_ + "': " + message);
  };

  // Consumes complete lines from pending_.
  auto drain_lines = [&]() {
    size_t newline;
    while (!done && (newline = pending_.find('\n')) != std::string::npos) {
      std::string line = pending_.substr(0, newline);
      pending_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      ++line_number;
      if (out.size() == count) {
        if (line != "END") {
          throw fail("line " + std::to_string(line_number) +
                     ": expected END, got '" + line + "'");
        }
        done = true;
        break;
      }
      const std::optional<double> value = ParseDouble(line);
      if (!value) {
        throw fail("line " + std::to_string(line_number) +
                   ": malformed reply '" + line + "'");
      }
      out.push_back(*value);
    }
  };

  while (!done) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      Stop();
      throw ProtocolTimeout("external model '" + command_ +
                            "' did not answer a batch of " +
                            std::to_string(count) + " rows within " +
                            std::to_string(timeout_.count()) + " ms");
    }
    pollfd fds[2];
    int nfds = 0;
    fds[nfds++] = {from_child_, POLLIN, 0};
    const bool writing = written < request.size();
    if (writing) fds[nfds++] = {to_child_, POLLOUT, 0};
    const auto wait =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
    const int ready = poll(fds, nfds, static_cast<int>(wait.count()) + 1);
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw fail("poll() failed");
    }
    if (writing && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t n = write(to_child_, request.data() + written,
                              request.size() - written);
      if (n < 0 && errno != EAGAIN && errno != EINTR) {
        throw fail("process closed its input");
      }
      if (n > 0) written += static_cast<size_t>(n);
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buffer[65536];
      const ssize_t n = read(from_child_, buffer, sizeof(buffer));
      if (n == 0) {
        drain_lines();
        if (!done) {
          throw fail("process exited after " + std::to_string(out.size()) +
                     " of " + std::to_string(count) + " replies");
        }
      } else if (n > 0) {
        pending_.append(buffer, static_cast<size_t>(n));
        drain_lines();
      } else if (errno != EAGAIN && errno != EINTR) {
        throw fail("read() failed");
      }
    }
  }
  return out;
}

}  // namespace nshap
