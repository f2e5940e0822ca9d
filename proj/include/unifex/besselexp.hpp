#ifndef UNIFEX_BESSELEXP_HPP
#define UNIFEX_BESSELEXP_HPP

// Bessel-type expansions of p-1Fp(a; b; -z^2/4): the 0F1-kernel form and
// the trigonometric/rational elementary form, both uniform on horizontal
// strips, with their remainder-rate shapes.

#include <optional>
#include <vector>

#include "unifex/detail/qcomplex.hpp"
#include "unifex/expansion.hpp"
#include "unifex/norlund.hpp"

namespace unifex {

// Coefficients of the rational functions P_m(z, nu) and Q_m(z, nu):
// P_m = sum_{j=0}^m a_{m,j}/(-z^2)^j, Q_m = sum_{j=1}^m b_{m,j}/(-z^2)^j.
struct PQTable {
  int m{0};
  Complex nu{};
  std::vector<Complex> p_coeffs;  // a_{m,0..m}
  std::vector<Complex> q_coeffs;  // b_{m,1..m}
};

PQTable pq_coeffs(int m, Complex nu);

// Elementary form switches to the kernel form below this |z| (the
// rational terms blow up like z^{-2j} with cancellation as z -> 0).
inline constexpr double kBesselElemZSwitch = 0.5;

/// Kernel form: Gamma(b)/Gamma(a) * sum_{n<N} [g_n/Gamma(psi+n)] 0F1(-; psi+n; -z^2/4).
/// Preconditions: len(a) = len(b)-1, Re a > 0 elementwise, Re psi > 1/2, N >= 1.
ExpansionResult bessel_expansion(const NorlundTable& table, Complex z, int N);
ExpansionResult bessel_expansion(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                 Complex z, int N);

/// Elementary form: 2 Gamma(b)/(sqrt(pi) Gamma(a)) *
///   sum_{n<N} [g_n/Gamma(psi+n-1/2)] { P_m(z, psi+n-1) sin(z)/z - Q_m(z, psi+n-1) cos(z) }
/// with m = N + floor(Re psi - 3/2) unless overridden.
/// For |z| < kBesselElemZSwitch the result falls back to the kernel form
/// and sets small_z_fallback.
ExpansionResult elementary_bessel_expansion(const NorlundTable& table, Complex z, int N,
                                            std::optional<int> m_override = std::nullopt);
ExpansionResult elementary_bessel_expansion(const std::vector<Complex>& a,
                                            const std::vector<Complex>& b, Complex z, int N,
                                            std::optional<int> m_override = std::nullopt);

/// Remainder bound shape with K = 1:
///   Kernel:     e^{|Im z|} log^{r-1}(N) / N^{a+1/2}
///   Elementary: e^{|Im z|} [ N^{-(Re psi - 1/2)} + log^{r-1}(N)/N^{a+1/2} ]
double bessel_bound(const NorlundTable& table, Complex z, int N, BoundKind which);

namespace detail {

void pq_coeffs_q(int m, const qcomplex& nu, std::vector<qcomplex>& p_out,
                 std::vector<qcomplex>& q_out);

}  // namespace detail

}  // namespace unifex

#endif
