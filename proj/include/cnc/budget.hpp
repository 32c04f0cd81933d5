#pragma once

#include <compare>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "cnc/graph.hpp"

namespace cnc {

// A pair count or +infinity. Infinity is a distinguished state, never a
// large number, and absorbs under addition.
class Cost {
 public:
  constexpr Cost() = default;
  constexpr Cost(Count v) : finite_(true), value_(v) {}  // NOLINT(implicit)

  static constexpr Cost infinity() { return Cost(); }

  constexpr bool finite() const { return finite_; }
  constexpr bool is_infinite() const { return !finite_; }
  Count value() const;

  friend constexpr Cost operator+(Cost a, Cost b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Cost(a.value_ + b.value_);
  }
  friend constexpr bool operator==(Cost a, Cost b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Cost a, Cost b) {
    if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
    return a.value_ <=> b.value_;
  }

 private:
  bool finite_ = false;
  Count value_ = 0;
};

std::ostream& operator<<(std::ostream& os, Cost c);

// Map from budget b in [0..k] to the minimum achievable pair count.
class BudgetFunction {
 public:
  BudgetFunction() = default;
  explicit BudgetFunction(int k, Cost fill = Cost::infinity()) : values_(k + 1, fill) {}
  BudgetFunction(std::initializer_list<Cost> values) : values_(values) {}
  explicit BudgetFunction(std::vector<Cost> values) : values_(std::move(values)) {}

  int max_budget() const { return static_cast<int>(values_.size()) - 1; }
  Cost operator()(int b) const { return values_.at(b); }
  Cost& operator[](int b) { return values_.at(b); }
  std::span<const Cost> values() const { return values_; }

  bool non_increasing() const;
  // Smallest budget attaining the minimum over [0..b].
  int best_budget_up_to(int b) const;

  friend bool operator==(const BudgetFunction&, const BudgetFunction&) = default;

 private:
  std::vector<Cost> values_;
};

// Output of combine(): the combined function plus the suffix table needed
// to recover an optimal split.
class Convolution {
 public:
  const BudgetFunction& result() const { return result_; }
  Cost operator()(int b) const { return result_(b); }

  // Budgets per input function summing to b; lexicographically smallest
  // optimal vector. Throws std::domain_error when result(b) is infinite.
  std::vector<int> recover_split(int b) const;

 private:
  friend Convolution combine(std::span<const BudgetFunction> fs, int k);

  std::vector<BudgetFunction> inputs_;
  std::vector<std::vector<Cost>> suffix_;  // suffix_[a][b]: best for fs[a..] with total b
  BudgetFunction result_;
};

/// f(b) = min over b_1 + ... + b_n = b of sum f_i(b_i), for b in [0..k].
/// Inputs may be shorter than k; missing entries count as infinity. An
/// empty list gives f == 0.
Convolution combine(std::span<const BudgetFunction> fs, int k);

}  // namespace cnc
