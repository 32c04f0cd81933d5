#include "cnc/budget.hpp"

#include <ostream>
#include <stdexcept>

namespace cnc {

Count Cost::value() const {
  if (!finite_) throw std::domain_error("value() of an infinite cost");
  return value_;
}

std::ostream& operator<<(std::ostream& os, Cost c) {
  if (c.is_infinite()) return os << "inf";
  return os << c.value();
}

bool BudgetFunction::non_increasing() const {
  for (std::size_t b = 1; b < values_.size(); ++b)
    if (values_[b] > values_[b - 1]) return false;
  return true;
}

int BudgetFunction::best_budget_up_to(int b) const {
  int best = 0;
  for (int i = 1; i <= std::min(b, max_budget()); ++i)
    if (values_[i] < values_[best]) best = i;
  return best;
}

Convolution combine(std::span<const BudgetFunction> fs, int k) {
  Convolution out;
  out.inputs_.assign(fs.begin(), fs.end());
  const std::size_t n = fs.size();
  auto at = [&](std::size_t a, int b) { return b <= fs[a].max_budget() ? fs[a](b) : Cost::infinity(); };

  out.suffix_.assign(n + 1, std::vector<Cost>(k + 1, Cost::infinity()));
  // Empty suffix: the empty sum, with unused budget allowed.
  for (int b = 0; b <= k; ++b) out.suffix_[n][b] = Cost(0);
  if (n > 0) {
    for (int b = 0; b <= k; ++b) out.suffix_[n - 1][b] = at(n - 1, b);
    for (std::size_t a = n - 1; a-- > 0;) {
      for (int b = 0; b <= k; ++b) {
        Cost best = Cost::infinity();
        for (int own = 0; own <= b; ++own) {
          Cost c = at(a, own) + out.suffix_[a + 1][b - own];
          if (c < best) best = c;
        }
        out.suffix_[a][b] = best;
      }
    }
  }
  out.result_ = BudgetFunction(out.suffix_[0]);
  return out;
}

std::vector<int> Convolution::recover_split(int b) const {
  if (b < 0 || b > result_.max_budget()) throw std::out_of_range("budget outside the combined domain");
  if (result_(b).is_infinite()) throw std::domain_error("no split achieves a finite value for budget " + std::to_string(b));
  const std::size_t n = inputs_.size();
  std::vector<int> split(n, 0);
  if (n == 0) return split;
  int left = b;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const Cost target = suffix_[a][left];
    for (int own = 0; own <= left; ++own) {
      Cost here = own <= inputs_[a].max_budget() ? inputs_[a](own) : Cost::infinity();
      if (here + suffix_[a + 1][left - own] == target) {
        split[a] = own;
        left -= own;
        break;
      }
    }
  }
  split[n - 1] = left;
  return split;
}

}  // namespace cnc
