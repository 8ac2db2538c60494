#pragma once

// Seeded RNG helpers with distributions implemented by hand so that streams
// are reproducible independent of the standard library's distribution code.

#include <cmath>
#include <cstdint>
#include <random>

namespace splb {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double a = 0.0, double b = 1.0) {
    double u = std::ldexp(double(eng_() >> 11), -53);
    return a + (b - a) * u;
  }

  double normal(double mean = 0.0, double stddev = 1.0) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + stddev * spare_;
    }
    double u1 = 0.0;
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return mean + stddev * r * std::cos(a);
  }

  std::uint64_t integer(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace splb
