// Copyright 2026 The advsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "advsel/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace advsel {

Instance::Instance(std::vector<double> values, double delta)
    : values_(std::move(values)), delta_(delta) {
  if (values_.empty()) throw PreconditionError("instance must hold at least one value");
  if (!(delta_ > 0.0) || !std::isfinite(delta_)) {
    throw PreconditionError("delta must be a positive finite number");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("instance values must be finite");
  }
  max_value_ = *std::max_element(values_.begin(), values_.end());
}

bool Instance::is_forced(Index i, Index j) const {
  return std::fabs(values_[i] - values_[j]) > delta_;
}

void QueryLog::append(Index left, Index right, Index winner) {
  if (retain_) records_.push_back(QueryRecord{left, right, winner, count_});
  ++count_;
}

std::optional<Index> forced_winner(const Instance& instance, Index i, Index j) {
  if (i >= instance.size() || j >= instance.size()) {
    throw PreconditionError("comparator index out of range");
  }
  if (i == j) throw PreconditionError("comparator needs two distinct indices");
  if (!instance.is_forced(i, j)) return std::nullopt;
  return instance.value(i) > instance.value(j) ? i : j;
}

bool is_t_approx(double output_value, const Instance& instance, double t) {
  return output_value >= instance.max_value() - t;
}

bool is_t_sorted(std::span<const double> output_order, double t) {
  // A later element may exceed an earlier one by at most t, so it suffices to
  // compare each element against the running minimum of its prefix.
  if (output_order.empty()) return true;
  double prefix_min = output_order.front();
  for (double v : output_order.subspan(1)) {
    if (v - prefix_min > t) return false;
    prefix_min = std::min(prefix_min, v);
  }
  return true;
}

std::vector<double> values_in_order(const Instance& instance, std::span<const Index> order) {
  std::vector<double> out;
  out.reserve(order.size());
  for (Index i : order) out.push_back(instance.value(i));
  return out;
}

std::vector<Index> all_indices(std::size_t n) {
  std::vector<Index> out(n);
  std::iota(out.begin(), out.end(), Index{0});
  return out;
}

}  // namespace advsel
