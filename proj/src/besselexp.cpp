#include "unifex/besselexp.hpp"

#include <cmath>

#include "unifex/refseries.hpp"

namespace unifex {

namespace detail {

// a_{m,j}(nu) = sum_{k=j}^m (1/2-nu)_k (2k)!/(k! (2(k-j))!)
// b_{m,j}(nu) = sum_{k=j}^m (1/2-nu)_k (2k)!/(k! (2(k-j)+1)!)
// Accumulated in descending k with compensated summation: the Pochhammer
// factor grows and alternates in sign.
void pq_coeffs_q(int m, const qcomplex& nu, std::vector<qcomplex>& p_out,
                 std::vector<qcomplex>& q_out) {
  // poch[k] = (1/2 - nu)_k
  std::vector<qcomplex> poch(static_cast<std::size_t>(m) + 1);
  poch[0] = qcomplex(quad(1));
  qcomplex half_minus_nu = qcomplex(quad(0.5)) - nu;
  for (int k = 1; k <= m; ++k) {
    poch[static_cast<std::size_t>(k)] =
        poch[static_cast<std::size_t>(k - 1)] * (half_minus_nu + quad(k - 1));
  }
  p_out.assign(static_cast<std::size_t>(m) + 1, qcomplex(quad(0)));
  q_out.assign(static_cast<std::size_t>(m), qcomplex(quad(0)));

  for (int j = 0; j <= m; ++j) {
    // fac = (2k)!/(k! (2(k-j))!) maintained multiplicatively from k = m down.
    qcomplex sum_p(quad(0)), comp_p(quad(0));
    qcomplex sum_q(quad(0)), comp_q(quad(0));
    quad fac = 1;
    for (int i = 2 * (m - j) + 1; i <= 2 * m; ++i) fac *= quad(i);
    quad kfac = 1;
    for (int i = 2; i <= m; ++i) kfac *= quad(i);
    // fac currently = (2m)!/(2(m-j))!; divide by k! on the fly.
    for (int k = m; k >= j; --k) {
      quad fp = fac / kfac;             // (2k)!/(k! (2(k-j))!)
      quad fq = fp / quad(2 * (k - j) + 1);  // (2k)!/(k! (2(k-j)+1)!)
      qcomplex tp = poch[static_cast<std::size_t>(k)] * fp;
      qcomplex tq = poch[static_cast<std::size_t>(k)] * fq;
      // Neumaier update for both accumulators.
      qcomplex s1 = sum_p + tp;
      comp_p += (fabsq(sum_p.re) >= fabsq(tp.re))
                    ? qcomplex((sum_p.re - s1.re) + tp.re, (sum_p.im - s1.im) + tp.im)
                    : qcomplex((tp.re - s1.re) + sum_p.re, (tp.im - s1.im) + sum_p.im);
      sum_p = s1;
      if (j >= 1) {
        qcomplex s2 = sum_q + tq;
        comp_q += (fabsq(sum_q.re) >= fabsq(tq.re))
                      ? qcomplex((sum_q.re - s2.re) + tq.re, (sum_q.im - s2.im) + tq.im)
                      : qcomplex((tq.re - s2.re) + sum_q.re, (tq.im - s2.im) + sum_q.im);
        sum_q = s2;
      }
      if (k > j) {
        // step k -> k-1: (2k)!/(2(k-j))! loses factors (2k)(2k-1)/( (2(k-j)) (2(k-j)-1) )
        fac /= quad(2 * k) * quad(2 * k - 1);
        fac *= quad(2 * (k - j)) * quad(2 * (k - j) - 1);
        kfac /= quad(k);
      }
    }
    p_out[static_cast<std::size_t>(j)] = sum_p + comp_p;
    if (j >= 1) q_out[static_cast<std::size_t>(j - 1)] = sum_q + comp_q;
  }
}

namespace {

qcomplex eval_poly_neg_z2(const std::vector<qcomplex>& coeffs, const qcomplex& z, int j0) {
  // sum_j coeffs[j] / (-z^2)^{j + j0}, Horner in u = -1/z^2.
  qcomplex u = qcomplex(quad(-1)) / (z * z);
  qcomplex acc(quad(0));
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * u + coeffs[j];
  for (int i = 0; i < j0; ++i) acc *= u;
  return acc;
}

void check_bessel_preconditions(const NorlundTable& t, int N) {
  if (t.lower.size() != t.upper.size() + 1) {
    throw PreconditionError("bessel expansion: requires len(a) = len(b) - 1");
  }
  for (const Complex& aj : t.upper) {
    if (aj.real() <= 0.0) {
      throw PreconditionError(
          "bessel expansion: requires Re a > 0 elementwise; apply decompose_shift first");
    }
  }
  if (t.psi.real() <= 0.5) {
    throw PreconditionError(
        "bessel expansion: requires Re psi(a;b) > 1/2; apply decompose_shift first");
  }
  if (N < 1) throw PreconditionError("bessel expansion: N must be >= 1");
  if (N > t.size()) {
    throw PreconditionError("bessel expansion: table holds fewer coefficients than N");
  }
}

}  // namespace
}  // namespace detail

PQTable pq_coeffs(int m, Complex nu) {
  if (m < 0) throw PreconditionError("pq_coeffs: m must be nonnegative");
  std::vector<detail::qcomplex> p, q;
  detail::pq_coeffs_q(m, detail::qcomplex(nu), p, q);
  PQTable t;
  t.m = m;
  t.nu = nu;
  t.p_coeffs.reserve(p.size());
  t.q_coeffs.reserve(q.size());
  for (const auto& c : p) t.p_coeffs.push_back(c.to_double());
  for (const auto& c : q) t.q_coeffs.push_back(c.to_double());
  return t;
}

ExpansionResult bessel_expansion(const NorlundTable& table, Complex z, int N) {
  detail::check_bessel_preconditions(table, N);
  detail::qcomplex qz(z);
  detail::qcomplex arg = detail::quad(-0.25) * (qz * qz);
  detail::qcomplex acc(detail::quad(0));
  for (int n = 0; n < N; ++n) {
    detail::qcomplex w(table.ratio[static_cast<std::size_t>(n)]);
    acc += w * detail::hyp0f1_q(detail::qcomplex(table.psi + static_cast<double>(n)), arg);
  }
  Complex pref = detail::gamma_quotient(table.lower, table.upper);
  ExpansionResult res;
  res.value = detail::ensure_finite((detail::qcomplex(pref) * acc).to_double(), "bessel_expansion");
  res.n_terms = N;
  res.method = Method::BesselKernel;
  res.bound_estimate = bessel_bound(table, z, N, BoundKind::Kernel);
  return res;
}

ExpansionResult bessel_expansion(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                 Complex z, int N) {
  return bessel_expansion(norlund_coeffs(a, b, N), z, N);
}

ExpansionResult elementary_bessel_expansion(const NorlundTable& table, Complex z, int N,
                                            std::optional<int> m_override) {
  detail::check_bessel_preconditions(table, N);
  if (std::abs(z) < kBesselElemZSwitch) {
    // The rational terms carry z^{-2j} blowup with cancellation as z -> 0;
    // the kernel form is equal up to the controlled remainder.
    ExpansionResult res = bessel_expansion(table, z, N);
    res.method = Method::TrigElementary;
    res.small_z_fallback = true;
    res.bound_estimate = bessel_bound(table, z, N, BoundKind::Elementary);
    return res;
  }
  const int m = m_override.value_or(N + static_cast<int>(std::floor(table.psi.real() - 1.5)));
  if (m < 0) throw PreconditionError("elementary_bessel_expansion: m must be nonnegative");

  detail::qcomplex qz(z);
  detail::qcomplex sinz = detail::qsin(qz) / qz;
  detail::qcomplex cosz = detail::qcos(qz);
  detail::qcomplex acc(detail::quad(0));
  std::vector<detail::qcomplex> pc, qc;
  for (int n = 0; n < N; ++n) {
    Complex nu = table.psi + static_cast<double>(n) - 1.0;
    detail::pq_coeffs_q(m, detail::qcomplex(nu), pc, qc);
    // weight g_n / Gamma(psi + n - 1/2)
    Complex w = table.scaled[static_cast<std::size_t>(n)] *
                std::exp(Complex(std::lgamma(static_cast<double>(n) + 1.0), 0.0) -
                         lgamma_complex(table.psi + static_cast<double>(n) - 0.5));
    acc += detail::qcomplex(w) * (detail::eval_poly_neg_z2(pc, qz, 0) * sinz -
                                  detail::eval_poly_neg_z2(qc, qz, 1) * cosz);
  }
  Complex pref = detail::gamma_quotient(table.lower, table.upper) * (2.0 / std::sqrt(M_PI));
  ExpansionResult res;
  res.value = detail::ensure_finite((detail::qcomplex(pref) * acc).to_double(),
                                    "elementary_bessel_expansion");
  res.n_terms = N;
  res.method = Method::TrigElementary;
  res.bound_estimate = bessel_bound(table, z, N, BoundKind::Elementary);
  return res;
}

ExpansionResult elementary_bessel_expansion(const std::vector<Complex>& a,
                                            const std::vector<Complex>& b, Complex z, int N,
                                            std::optional<int> m_override) {
  return elementary_bessel_expansion(norlund_coeffs(a, b, N), z, N, m_override);
}

double bessel_bound(const NorlundTable& table, Complex z, int N, BoundKind which) {
  if (N < 1) throw PreconditionError("bessel_bound: N must be >= 1");
  double lg = std::pow(std::log(static_cast<double>(N)), table.pole_r - 1);
  double kernel = std::isinf(table.pole_a)
                      ? 0.0
                      : lg * std::pow(static_cast<double>(N), -(table.pole_a + 0.5));
  double env = std::exp(std::abs(z.imag()));
  if (which == BoundKind::Kernel) return env * kernel;
  return env * (std::pow(static_cast<double>(N), -(table.psi.real() - 0.5)) + kernel);
}

}  // namespace unifex
