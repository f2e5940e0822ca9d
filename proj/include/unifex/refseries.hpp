#ifndef UNIFEX_REFSERIES_HPP
#define UNIFEX_REFSERIES_HPP

// Ground-truth oracles: direct Taylor summation of qFp (q <= p), the
// Kummer function M, the terminating 2F1 at -1 and the parameter-shift
// decomposition. Summation runs internally in quad precision so the
// oracle stays several digits ahead of every expansion it is used to
// check, including deep in the cancellation regime (|z| ~ 40..60).

#include <complex>
#include <vector>

#include "unifex/detail/qcomplex.hpp"
#include "unifex/numkernel.hpp"

namespace unifex {

struct SeriesResult {
  Complex value;
  int terms_used{0};
  bool converged{false};
  double last_term_magnitude{0};
};

inline constexpr double kDefaultSeriesTol = 1e-13;
inline constexpr int kDefaultMaxTerms = 10000;

/// Direct summation of qFp(a; b; z) with the recurrent term update
/// t_{k+1} = t_k * prod(a+k)/prod(b+k) * z/(k+1).
/// Stops after three consecutive terms below tol*|partial sum|;
/// converged == false when max_terms is hit first.
SeriesResult hyp_series(const std::vector<Complex>& a, const std::vector<Complex>& b,
                        Complex z, double tol = kDefaultSeriesTol,
                        int max_terms = kDefaultMaxTerms);

/// Kummer function of the first kind M(a, b, z) = 1F1(a; b; z).
/// For Re z < -30 the transformation M(a,b,z) = e^z M(b-a, b, -z)
/// avoids the cancellation of the direct alternating sum.
Complex kummer_m(Complex a, Complex b, Complex z);

/// Terminating 2F1(one_minus_a, -n; c; -1) =
/// sum_{k=0}^n (one_minus_a)_k (-n)_k / ((c)_k k!) (-1)^k.
/// Throws DegenerateError when (c)_k vanishes for some contributing k <= n.
Complex gauss2f1_neg1(Complex one_minus_a, int n, Complex c);

// Result of splitting qFp at term n: original = partial + prefactor * shifted,
// where shifted is the (q+1)F(p+1) with parameters (a+n, 1; b+n, n+1).
struct ShiftDecomposition {
  Complex partial;
  Complex prefactor;
  ParameterPair shifted;
};

/// Parameter-shift decomposition used to restore Re a > 0 and the psi
/// conditions before applying an expansion.
ShiftDecomposition decompose_shift(const ParameterPair& p, Complex z, int n);

namespace detail {

struct QSeriesResult {
  qcomplex value;
  int terms_used{0};
  bool converged{false};
  quad last_term{0};
};

QSeriesResult hyp_series_q(const std::vector<qcomplex>& a, const std::vector<qcomplex>& b,
                           qcomplex z, quad tol, int max_terms);

// 0F1(-; c; w), the Bessel-type kernel of the proofs.
qcomplex hyp0f1_q(qcomplex c, qcomplex w);

// M(a, b, w) in quad; allow_transform selects the Re w < -30 path.
qcomplex kummer_m_q(qcomplex a, qcomplex b, qcomplex w, bool allow_transform = true);

}  // namespace detail

}  // namespace unifex

#endif
