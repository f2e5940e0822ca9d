#ifndef UNIFEX_NUMKERNEL_HPP
#define UNIFEX_NUMKERNEL_HPP

// Complex arithmetic shared by every module: the complex gamma function,
// Pochhammer products and the parameter sum psi(a;b).

#include <complex>
#include <vector>

#include "unifex/errors.hpp"

namespace unifex {

using Complex = std::complex<double>;

// Distance tolerance used to flag gamma poles (non-positive integers).
inline constexpr double kPoleTol = 1e-14;

// True when x lies within tol of a non-positive integer.
bool is_nonpositive_integer(Complex x, double tol = kPoleTol);

/// Rising factorial (x)_n = x (x+1) ... (x+n-1).
///
/// Direct product up to n = 256 so exact zeros at non-positive integer x
/// are preserved; the gamma-ratio path takes over beyond that and signals
/// OverflowError when the result leaves the double range.
Complex pochhammer(Complex x, long n);

/// Gamma(x) for complex x, |x| <= ~50, 13 significant digits.
/// Lanczos approximation (g = 7, 9 coefficients), reflection for Re x < 1/2.
/// Throws PoleError within kPoleTol of a non-positive integer.
Complex gamma_complex(Complex x);

/// A logarithm of Gamma(x): exp(lgamma_complex(x)) == gamma_complex(x)
/// exactly up to rounding; the imaginary part is not branch-normalized.
Complex lgamma_complex(Complex x);

enum class PairKind { BesselType, KummerType };

// Parameter vectors a (upper) and b (lower) of a generalized
// hypergeometric function, with the arity convention attached:
// BesselType means len(a) = len(b) - 1, KummerType len(a) = len(b).
struct ParameterPair {
  std::vector<Complex> upper;
  std::vector<Complex> lower;
  PairKind kind{PairKind::BesselType};

  static ParameterPair bessel(std::vector<Complex> a, std::vector<Complex> b);
  static ParameterPair kummer(std::vector<Complex> a, std::vector<Complex> b);

  // Throws PreconditionError on arity mismatch or when some lower
  // parameter is a non-positive integer.
  void validate() const;
};

/// psi(a;b) = sum(b) - sum(a).
Complex psi_shift(const ParameterPair& p);

namespace detail {

Complex psi_sum(const std::vector<Complex>& upper, const std::vector<Complex>& lower);

// prod Gamma(num) / prod Gamma(den), folded through lgamma so large
// parameters do not overflow intermediate factors.
Complex gamma_quotient(const std::vector<Complex>& num, const std::vector<Complex>& den);

// Guard: returns v, or throws OverflowError when a component is not finite.
Complex ensure_finite(Complex v, const char* context);

}  // namespace detail

}  // namespace unifex

#endif
