#ifndef UNIFEX_KUMMEREXP_HPP
#define UNIFEX_KUMMEREXP_HPP

// Kummer-type expansions of pFp(a; b; -z): the 1F1-kernel form and the
// exponential/rational elementary form, both uniform on right half-planes.

#include <optional>
#include <vector>

#include "unifex/detail/qcomplex.hpp"
#include "unifex/expansion.hpp"
#include "unifex/norlund.hpp"

namespace unifex {

// H(z) = max(1, e^{-Re z}), the half-plane weight of the remainder bounds.
double h_weight(Complex z);

struct SelectionResult {
  int index{0};                    // position of min Re in the input
  std::vector<Complex> reordered;  // input with that entry swapped to the back
};

/// Moves the entry of minimal real part (first occurrence on ties) to the
/// last slot; the expansion removes that entry from the coefficient algebra.
SelectionResult select_min_param(const std::vector<Complex>& a);

// Coefficients A_0..A_{m-1} of the elementary kernel
//   M(a, b, -z) ~ sum_k A_k(a, b) F_k(-z).
// perturbed lists the indices whose terminating 2F1 denominator hit a
// non-positive integer; b_eff was then shifted by 1e-8 (never silently).
struct AFTable {
  int m{0};
  Complex a_sel{};
  Complex b_eff{};
  std::vector<Complex> A;
  std::vector<int> perturbed;
};

AFTable afn_coeffs(Complex a_sel, Complex b_eff, int m);

/// F_n(w) = n!/(-w)^{n+1} [ e_n(w/2) - e^w e_n(-w/2) ], e_n the exponential
/// partial sum; equivalently the moment integral of e^{wt}(t-1/2)^n over
/// [0,1], which is how the numerically delicate regimes are evaluated.
Complex f_kernel(int n, Complex w);

// Reusable evaluation state: the coefficient table for (a with the minimal
// entry removed; b) plus the removed entry itself.
struct KummerContext {
  NorlundTable table;  // for (a_[p]; b)
  Complex a_p{};       // the removed minimal-Re entry
};

/// Builds the context; preconditions: len(a) = len(b) >= 1,
/// Re a_[p] > 0 elementwise after selection, Re psi(a;b) > 0.
KummerContext make_kummer_context(const std::vector<Complex>& a,
                                  const std::vector<Complex>& b, int n_max);

/// Kernel form: Gamma(b)/Gamma(a_[p]) *
///   sum_{n<N} [g_n(a_[p];b)/Gamma(psi_sel+n)] M(a_p, psi_sel+n, -z).
ExpansionResult kummer_expansion(const KummerContext& ctx, Complex z, int N);
ExpansionResult kummer_expansion(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                 Complex z, int N);

/// Elementary form: same outer sum with M replaced by
///   sum_{k<m} A_k(a_p, psi_sel+n) F_k(-z),  m = N + floor(Re psi_sel)
/// unless overridden.
ExpansionResult elementary_kummer_expansion(const KummerContext& ctx, Complex z, int N,
                                            std::optional<int> m_override = std::nullopt);
ExpansionResult elementary_kummer_expansion(const std::vector<Complex>& a,
                                            const std::vector<Complex>& b, Complex z, int N,
                                            std::optional<int> m_override = std::nullopt);

/// Remainder bound shape with K = 1 (alpha, r from the context's table):
///   Kernel:     H(z) log^{r-1}(N) / N^alpha
///   Elementary: H(z) [ log^{r-1}(N)/N^alpha + N^{-Re a_p} ]
double kummer_bound(const KummerContext& ctx, Complex z, int N, BoundKind which);

namespace detail {

enum class FPath { Auto, Defining, MomentSeries };

// F_n(w) with an explicit path selection (tests compare the two routes).
qcomplex f_kernel_q(int n, const qcomplex& w, FPath path = FPath::Auto);

// mu_{j,n} = int_0^1 t^j (t-1/2)^n dt, the moment table behind the stable
// F_n path (all values nonnegative; built by a two-term recurrence).
quad f_moment(int j, int n);

}  // namespace detail

}  // namespace unifex

#endif
