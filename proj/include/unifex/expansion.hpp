#ifndef UNIFEX_EXPANSION_HPP
#define UNIFEX_EXPANSION_HPP

#include <complex>
#include <string>

namespace unifex {

enum class Method { BesselKernel, TrigElementary, KummerKernel, ExpElementary };

std::string method_name(Method m);

// Which remainder-bound shape to evaluate.
enum class BoundKind { Kernel, Elementary };

// One truncated-expansion evaluation. bound_estimate is the remainder
// bound shape evaluated with constant K = 1: a relative rate object used
// for rate fitting, not a certified bound.
struct ExpansionResult {
  std::complex<double> value;
  int n_terms{0};
  double bound_estimate{0};
  Method method{Method::BesselKernel};
  bool small_z_fallback{false};
};

}  // namespace unifex

#endif
