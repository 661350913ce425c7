#ifndef CYVAR_RNG_HPP
#define CYVAR_RNG_HPP

#include <cstdint>

namespace cyvar {

// 64-bit finalizer (splitmix64). Bijective with full avalanche; chaining
// it between key words gives a counter-based generator whose output
// depends only on the key, never on call order or worker identity.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic pseudorandom state for one (trial, scenario) cell of a
// simulation. uniform(k) is a pure function of (seed, trial, scenario, k),
// so trials can be evaluated in any order on any number of workers and
// still produce identical values.
class ScenarioDrawKey {
 public:
  ScenarioDrawKey(std::uint64_t seed, std::uint64_t trial_index,
                  std::uint64_t scenario_index)
      : state_(mix64(mix64(mix64(seed) ^ trial_index) ^ scenario_index)) {}

  // Uniform draw strictly inside (0, 1); draw_index selects independent
  // values within the cell (0 = occurrence, 1 = severity, ...).
  double uniform(std::uint64_t draw_index) const {
    const std::uint64_t bits = mix64(state_ ^ draw_index);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Inverse of the standard normal CDF for u in (0, 1). Rational
// approximation refined with one Halley step against erfc; accurate to a
// few ulp across the open interval.
double inverse_normal_cdf(double u);

}  // namespace cyvar

#endif  // CYVAR_RNG_HPP
