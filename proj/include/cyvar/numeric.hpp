#ifndef CYVAR_NUMERIC_HPP
#define CYVAR_NUMERIC_HPP

#include <cmath>

namespace cyvar {

// Neumaier's compensated summation. Aggregate totals stay stable enough
// that reordering the inputs does not move the result beyond ~1e-12
// relative, which the aggregation contracts rely on.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace cyvar

#endif  // CYVAR_NUMERIC_HPP
