#ifndef UNIFEX_TESTS_SUPPORT_HPP
#define UNIFEX_TESTS_SUPPORT_HPP

#include <complex>
#include <cstdint>
#include <random>

#include "unifex/numkernel.hpp"

namespace testutil {

using unifex::Complex;

inline double rel_err(Complex got, Complex want) {
  double scale = std::abs(want);
  if (scale < 1e-300) return std::abs(got - want);
  return std::abs(got - want) / scale;
}

// mt19937 with a bit-level uniform so draws are identical on every
// platform (distributions are not portable across standard libraries).
struct Rng {
  std::mt19937 gen;
  explicit Rng(std::uint32_t seed) : gen(seed) {}

  double uniform() {
    std::uint64_t hi = gen() >> 5;  // 27 bits
    std::uint64_t lo = gen() >> 6;  // 26 bits
    return (static_cast<double>(hi) * 67108864.0 + static_cast<double>(lo)) /
           9007199254740992.0;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Complex box(double re_lo, double re_hi, double im_lo, double im_hi) {
    double re = uniform(re_lo, re_hi);
    double im = uniform(im_lo, im_hi);
    return {re, im};
  }
};

}  // namespace testutil

#endif
