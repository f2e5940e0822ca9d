#ifndef UNIFEX_NORLUND_HPP
#define UNIFEX_NORLUND_HPP

// Norlund coefficients g_n(a;b) and the pole constants (a, r) of
// s -> Gamma(a+s)/Gamma(b+s) that govern the decay of g_n/Gamma(psi+n).

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "unifex/numkernel.hpp"

namespace unifex {

// Poles of s -> Gamma(a+s)/Gamma(b+s) with positive net multiplicity.
// rightmost_real is the largest pole real part (the value -a of the decay
// exponent); multiplicity is the maximal multiplicity at that real part.
// An empty `poles` list means every candidate cancelled in the scanned
// window: rightmost_real is -inf and multiplicity 0.
struct PoleReport {
  double rightmost_real{0};
  int multiplicity{0};
  std::vector<std::pair<Complex, int>> poles;

  bool empty() const { return poles.empty(); }
};

PoleReport pole_analysis(const std::vector<Complex>& a, const std::vector<Complex>& b,
                         int scan_depth = 8, double tol = 1e-9);

// Cached coefficient table for one parameter set, len(a) = len(b) - 1.
//
// coeffs holds raw g_n while they fit in double range (n < raw_valid);
// scaled holds g_n/n! and ratio holds g_n/Gamma(psi+n), both valid for
// every n. Expansion modules consume ratio/scaled, never raw g_n.
struct NorlundTable {
  std::vector<Complex> upper;  // a, size p-1
  std::vector<Complex> lower;  // b, size p
  Complex psi{};
  std::vector<Complex> coeffs;
  std::vector<Complex> scaled;
  std::vector<Complex> ratio;
  std::size_t raw_valid{0};
  double pole_a{0};  // decay exponent: -Re of the rightmost pole (+inf if none)
  int pole_r{1};     // its multiplicity

  int size() const { return static_cast<int>(ratio.size()); }

  // Raw g_n; throws OverflowError for n >= raw_valid.
  Complex coeff(int n) const;
};

/// Builds g_0..g_{n_max-1} by the pair-appending recurrence, seeded with
/// the spare lower entry b_p and appending (a_j, b_j) in input order.
NorlundTable norlund_coeffs(const std::vector<Complex>& a, const std::vector<Complex>& b,
                            int n_max, int pole_scan_depth = 8);

/// Closed forms: any p for n <= 2, and the explicit formulas for
/// p in {2, 3, 4} at any n. Cross-check oracle for norlund_coeffs;
/// throws PreconditionError on an unsupported (p, n) combination.
Complex norlund_explicit(const std::vector<Complex>& a, const std::vector<Complex>& b, int n);

/// | sum_{n<N} g_n/Gamma(psi+n+m+1) - Gamma(a+m+1)/Gamma(b+m+1) |
/// (gamma factors multiplied elementwise over the vectors).
/// Requires Re psi > 0 and pole_a > m so the tail is summable.
double moment_identity_residual(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                int m, int N);

}  // namespace unifex

#endif
