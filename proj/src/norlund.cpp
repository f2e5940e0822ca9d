#include "unifex/norlund.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "unifex/detail/qcomplex.hpp"

namespace unifex {

namespace {

using detail::qcomplex;
using detail::quad;

// One step of the pair-appending recurrence in factorial-normalized form
// ghat_n = g_n/n!. Appending the pair (alpha, beta) to a level with sum
// psi_cur maps ghat -> new where
//   new_n = sum_{s<=n} [(beta-alpha)_{n-s}/(n-s)!] [(psi_cur-alpha+s)_{n-s} s!/n!] ghat_s,
// accumulated from s = n downward with incremental factor updates.
std::vector<qcomplex> append_pair(const std::vector<qcomplex>& ghat, qcomplex psi_cur,
                                  qcomplex alpha, qcomplex beta) {
  const std::size_t nmax = ghat.size();
  std::vector<qcomplex> out(nmax);
  const qcomplex d = beta - alpha;
  const qcomplex base = psi_cur - alpha;
  for (std::size_t n = 0; n < nmax; ++n) {
    qcomplex A(quad(1));  // (beta-alpha)_u / u!,            u = n - s
    qcomplex B(quad(1));  // (psi_cur-alpha+s)_u * s!/n!
    qcomplex acc(quad(0));
    for (std::size_t s = n;; --s) {
      acc += A * B * ghat[s];
      if (s == 0) break;
      quad u = quad(n - s);
      A *= (d + u) / (u + 1);
      B *= (base + quad(s - 1)) / quad(s);
    }
    out[n] = acc;
  }
  return out;
}

double nearest_nonneg_int_dist(Complex x) {
  double k = std::round(x.real());
  if (k < -0.5) return std::numeric_limits<double>::infinity();
  return std::hypot(x.real() - k, x.imag());
}

}  // namespace

PoleReport pole_analysis(const std::vector<Complex>& a, const std::vector<Complex>& b,
                         int scan_depth, double tol) {
  // Candidate poles come from the numerator: s = -a_j - m, m = 0..scan_depth.
  std::vector<Complex> cands;
  for (const Complex& aj : a) {
    for (int m = 0; m <= scan_depth; ++m) {
      Complex w = -aj - static_cast<double>(m);
      bool dup = false;
      for (const Complex& c : cands) {
        if (std::abs(w - c) <= tol) {
          dup = true;
          break;
        }
      }
      if (!dup) cands.push_back(w);
    }
  }
  PoleReport rep;
  rep.rightmost_real = -std::numeric_limits<double>::infinity();
  for (const Complex& w : cands) {
    int mult = 0;
    for (const Complex& aj : a) {
      if (nearest_nonneg_int_dist(-(w + aj)) <= tol) ++mult;
    }
    for (const Complex& bi : b) {
      if (nearest_nonneg_int_dist(-(w + bi)) <= tol) --mult;
    }
    if (mult > 0) rep.poles.emplace_back(w, mult);
  }
  if (rep.poles.empty()) {
    rep.multiplicity = 0;
    return rep;
  }
  std::sort(rep.poles.begin(), rep.poles.end(), [](const auto& x, const auto& y) {
    return x.first.real() > y.first.real();
  });
  rep.rightmost_real = rep.poles.front().first.real();
  rep.multiplicity = 0;
  for (const auto& [w, mult] : rep.poles) {
    if (w.real() >= rep.rightmost_real - tol) rep.multiplicity = std::max(rep.multiplicity, mult);
  }
  return rep;
}

Complex NorlundTable::coeff(int n) const {
  if (n < 0 || n >= size()) throw PreconditionError("NorlundTable::coeff: index out of range");
  if (static_cast<std::size_t>(n) >= raw_valid) {
    std::ostringstream os;
    os << "NorlundTable::coeff: |g_" << n << "| exceeds the double range, use ratio()";
    throw OverflowError(os.str());
  }
  return coeffs[static_cast<std::size_t>(n)];
}

NorlundTable norlund_coeffs(const std::vector<Complex>& a, const std::vector<Complex>& b,
                            int n_max, int pole_scan_depth) {
  if (n_max < 1) throw PreconditionError("norlund_coeffs: n_max must be >= 1");
  if (b.size() != a.size() + 1 || b.empty()) {
    throw PreconditionError("norlund_coeffs: requires len(b) = len(a) + 1 >= 1");
  }

  // Seed with the spare lower entry: g(-; b_p) = (1, 0, 0, ...).
  std::vector<qcomplex> ghat(static_cast<std::size_t>(n_max), qcomplex(quad(0)));
  ghat[0] = qcomplex(quad(1));
  qcomplex psi_cur{qcomplex(b.back())};
  for (std::size_t j = 0; j + 1 < b.size(); ++j) {
    ghat = append_pair(ghat, psi_cur, qcomplex(a[j]), qcomplex(b[j]));
    psi_cur += qcomplex(b[j]) - qcomplex(a[j]);
  }

  NorlundTable t;
  t.upper = a;
  t.lower = b;
  t.psi = psi_cur.to_double();

  PoleReport rep = pole_analysis(a, b, pole_scan_depth);
  if (rep.empty()) {
    t.pole_a = std::numeric_limits<double>::infinity();
    t.pole_r = 1;
  } else {
    t.pole_a = -rep.rightmost_real;
    t.pole_r = rep.multiplicity;
  }

  t.scaled.resize(static_cast<std::size_t>(n_max));
  t.coeffs.resize(static_cast<std::size_t>(n_max));
  t.ratio.resize(static_cast<std::size_t>(n_max));
  t.raw_valid = static_cast<std::size_t>(n_max);

  double log_fact = 0.0;  // log(n!)
  bool raw_ok = true;
  for (int n = 0; n < n_max; ++n) {
    Complex sc = ghat[static_cast<std::size_t>(n)].to_double();
    if (!std::isfinite(sc.real()) || !std::isfinite(sc.imag())) {
      throw OverflowError("norlund_coeffs: scaled coefficient g_n/n! overflowed");
    }
    t.scaled[static_cast<std::size_t>(n)] = sc;
    if (n > 0) log_fact += std::log(static_cast<double>(n));
    if (raw_ok) {
      Complex raw = sc * std::exp(log_fact);
      if (std::isfinite(raw.real()) && std::isfinite(raw.imag())) {
        t.coeffs[static_cast<std::size_t>(n)] = raw;
      } else {
        raw_ok = false;
        t.raw_valid = static_cast<std::size_t>(n);
      }
    }
    // g_n / Gamma(psi + n) = (g_n/n!) exp(lgamma(n+1) - lgamma(psi+n)).
    Complex w = sc * std::exp(Complex(std::lgamma(static_cast<double>(n) + 1.0), 0.0) -
                              lgamma_complex(t.psi + static_cast<double>(n)));
    t.ratio[static_cast<std::size_t>(n)] =
        detail::ensure_finite(w, "norlund_coeffs ratio");
  }
  return t;
}

namespace {

qcomplex qpoch(qcomplex x, int n) {
  qcomplex acc(quad(1));
  for (int k = 0; k < n; ++k) acc *= x + quad(k);
  return acc;
}

quad qfact(int n) {
  quad acc(1);
  for (int k = 2; k <= n; ++k) acc *= quad(k);
  return acc;
}

// Terminating 3F2(-n, u, v; w1, w2; 1) in quad.
qcomplex q3f2_unit(int n, qcomplex u, qcomplex v, qcomplex w1, qcomplex w2) {
  qcomplex term(quad(1));
  qcomplex sum(quad(1));
  for (int k = 0; k < n; ++k) {
    term *= (quad(k - n) * (u + quad(k)) * (v + quad(k))) /
            ((w1 + quad(k)) * (w2 + quad(k)) * quad(k + 1));
    sum += term;
  }
  return sum;
}

}  // namespace

Complex norlund_explicit(const std::vector<Complex>& a, const std::vector<Complex>& b, int n) {
  if (b.size() != a.size() + 1 || b.empty()) {
    throw PreconditionError("norlund_explicit: requires len(b) = len(a) + 1 >= 1");
  }
  if (n < 0) throw PreconditionError("norlund_explicit: n must be nonnegative");
  const std::size_t p = b.size();

  if (n == 0) return {1.0, 0.0};

  // General first coefficients: g_1 = sum_m (b_{m+1} - a_m) psi_m,
  // g_2 = (1/2) sum_m (b_{m+1}-a_m)_2 (psi_m)_2
  //       + sum_{k>=2} (b_{k+1}-a_k)(psi_k + 1) sum_{m<k} (b_{m+1}-a_m) psi_m,
  // with psi_m = sum_{i<=m} (b_i - a_i).
  if (n <= 2) {
    std::vector<qcomplex> psim(p);  // psim[m-1] = psi_m, m = 1..p-1
    qcomplex run(quad(0));
    for (std::size_t m = 1; m < p; ++m) {
      run += qcomplex(b[m - 1]) - qcomplex(a[m - 1]);
      psim[m - 1] = run;
    }
    if (n == 1) {
      qcomplex s(quad(0));
      for (std::size_t m = 1; m < p; ++m) s += (qcomplex(b[m]) - qcomplex(a[m - 1])) * psim[m - 1];
      return s.to_double();
    }
    qcomplex t1(quad(0));
    for (std::size_t m = 1; m < p; ++m) {
      qcomplex d = qcomplex(b[m]) - qcomplex(a[m - 1]);
      t1 += d * (d + quad(1)) * psim[m - 1] * (psim[m - 1] + quad(1));
    }
    t1 = quad(0.5) * t1;
    qcomplex t2(quad(0));
    for (std::size_t k = 2; k < p; ++k) {
      qcomplex inner(quad(0));
      for (std::size_t m = 1; m < k; ++m) {
        inner += (qcomplex(b[m]) - qcomplex(a[m - 1])) * psim[m - 1];
      }
      t2 += (qcomplex(b[k]) - qcomplex(a[k - 1])) * (psim[k - 1] + quad(1)) * inner;
    }
    return (t1 + t2).to_double();
  }

  if (p == 2) {
    qcomplex g = qpoch(qcomplex(b[0]) - qcomplex(a[0]), n) *
                 qpoch(qcomplex(b[1]) - qcomplex(a[0]), n) / qfact(n);
    return detail::ensure_finite(g.to_double(), "norlund_explicit");
  }
  if (p == 3) {
    // nu_3 = b1+b2+b3-a1-a2 (= psi for p = 3).
    qcomplex nu3 = qcomplex(b[0]) + qcomplex(b[1]) + qcomplex(b[2]) - qcomplex(a[0]) - qcomplex(a[1]);
    qcomplex g = qpoch(nu3 - qcomplex(b[1]), n) * qpoch(nu3 - qcomplex(b[2]), n) / qfact(n);
    g *= q3f2_unit(n, qcomplex(b[0]) - qcomplex(a[0]), qcomplex(b[0]) - qcomplex(a[1]),
                   nu3 - qcomplex(b[1]), nu3 - qcomplex(b[2]));
    return detail::ensure_finite(g.to_double(), "norlund_explicit");
  }
  if (p == 4) {
    qcomplex nu2 = qcomplex(b[0]) + qcomplex(b[1]) - qcomplex(a[0]);
    qcomplex nu4 = qcomplex(b[0]) + qcomplex(b[1]) + qcomplex(b[2]) + qcomplex(b[3]) -
                   qcomplex(a[0]) - qcomplex(a[1]) - qcomplex(a[2]);
    qcomplex pre = qpoch(nu4 - qcomplex(b[2]), n) * qpoch(nu4 - qcomplex(b[3]), n) / qfact(n);
    qcomplex term(quad(1));
    qcomplex tot(quad(0));
    for (int k = 0; k <= n; ++k) {
      tot += term * q3f2_unit(k, qcomplex(b[0]) - qcomplex(a[0]), qcomplex(b[1]) - qcomplex(a[0]),
                              nu2 - qcomplex(a[1]), nu2 - qcomplex(a[2]));
      term *= (quad(k - n) * (nu2 - qcomplex(a[1]) + quad(k)) * (nu2 - qcomplex(a[2]) + quad(k))) /
              ((nu4 - qcomplex(b[2]) + quad(k)) * (nu4 - qcomplex(b[3]) + quad(k)) * quad(k + 1));
    }
    return detail::ensure_finite((pre * tot).to_double(), "norlund_explicit");
  }
  std::ostringstream os;
  os << "norlund_explicit: no closed form for p = " << p << ", n = " << n;
  throw PreconditionError(os.str());
}

double moment_identity_residual(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                int m, int N) {
  if (m < 0) throw PreconditionError("moment_identity_residual: m must be nonnegative");
  if (N < 1) throw PreconditionError("moment_identity_residual: N must be >= 1");
  NorlundTable t = norlund_coeffs(a, b, N);
  if (t.psi.real() <= 0.0) {
    throw PreconditionError("moment_identity_residual: requires Re psi > 0");
  }
  if (!(t.pole_a > static_cast<double>(m))) {
    throw PreconditionError("moment_identity_residual: requires pole_a > m");
  }
  Complex sum(0.0, 0.0);
  for (int n = 0; n < N; ++n) {
    // g_n / Gamma(psi + n + m + 1)
    sum += t.scaled[static_cast<std::size_t>(n)] *
           std::exp(Complex(std::lgamma(static_cast<double>(n) + 1.0), 0.0) -
                    lgamma_complex(t.psi + static_cast<double>(n + m + 1)));
  }
  std::vector<Complex> num, den;
  for (const Complex& aj : a) num.push_back(aj + static_cast<double>(m + 1));
  for (const Complex& bj : b) den.push_back(bj + static_cast<double>(m + 1));
  Complex target = detail::gamma_quotient(num, den);
  return std::abs(sum - target);
}

}  // namespace unifex
