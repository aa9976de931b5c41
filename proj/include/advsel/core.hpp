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

#ifndef ADVSEL_CORE_HPP_
#define ADVSEL_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace advsel {

using Index = std::size_t;

// Caller broke a documented precondition (bad index, i == j, empty set...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The comparator model itself was broken (adversary answered outside {i, j},
// or disagreed with a forced outcome where that is fatal).
class ModelViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed external input (JSON files, generator specs, CLI values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An indexed multiset of reals together with the comparator threshold.
// Identity of an item is its index; duplicate values are allowed.
class Instance {
 public:
  explicit Instance(std::vector<double> values, double delta = 1.0);

  std::size_t size() const { return values_.size(); }
  double delta() const { return delta_; }
  double value(Index i) const { return values_.at(i); }
  std::span<const double> values() const { return values_; }

  double max_value() const { return max_value_; }

  // |x_i - x_j| > delta: the comparator has no freedom on this pair.
  bool is_forced(Index i, Index j) const;

 private:
  std::vector<double> values_;
  double delta_;
  double max_value_;
};

struct QueryRecord {
  Index left = 0;
  Index right = 0;
  Index winner = 0;
  std::uint64_t ordinal = 0;
};

class QueryLog {
 public:
  void append(Index left, Index right, Index winner);
  // Counting continues when record retention is off; only the records are dropped.
  void set_retain(bool retain) { retain_ = retain; }
  bool retains() const { return retain_; }

  std::uint64_t count() const { return count_; }
  const std::vector<QueryRecord>& records() const { return records_; }

 private:
  std::vector<QueryRecord> records_;
  std::uint64_t count_ = 0;
  bool retain_ = true;
};

// Index of the larger value if the pair is outside the threshold, empty otherwise.
std::optional<Index> forced_winner(const Instance& instance, Index i, Index j);

bool is_t_approx(double output_value, const Instance& instance, double t);

// True iff no later element exceeds an earlier element by more than t.
bool is_t_sorted(std::span<const double> output_order, double t);

// Values of `order` dereferenced through `instance`.
std::vector<double> values_in_order(const Instance& instance, std::span<const Index> order);

std::vector<Index> all_indices(std::size_t n);

}  // namespace advsel

#endif  // ADVSEL_CORE_HPP_
