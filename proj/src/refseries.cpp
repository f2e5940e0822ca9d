#include "unifex/refseries.hpp"

#include <cmath>
#include <sstream>

namespace unifex {

namespace detail {

QSeriesResult hyp_series_q(const std::vector<qcomplex>& a, const std::vector<qcomplex>& b,
                           qcomplex z, quad tol, int max_terms) {
  QSeriesResult res;
  qcomplex term(quad(1));
  qcomplex sum(quad(1));
  int below = 0;
  for (int k = 0; k < max_terms; ++k) {
    qcomplex factor = z;
    for (const qcomplex& ai : a) factor *= ai + quad(k);
    for (const qcomplex& bj : b) factor /= bj + quad(k);
    factor /= quad(k + 1);
    term *= factor;
    sum += term;
    res.terms_used = k + 2;
    res.last_term = qabs(term);
    // Three consecutive sub-tolerance terms: alternating series have
    // incidental small terms, one is not a safe stopping signal.
    if (res.last_term <= tol * qabs(sum)) {
      if (++below >= 3) {
        res.converged = true;
        break;
      }
    } else {
      below = 0;
    }
  }
  res.value = sum;
  return res;
}

qcomplex hyp0f1_q(qcomplex c, qcomplex w) {
  static const std::vector<qcomplex> kEmpty;
  std::vector<qcomplex> den{c};
  // Tight tolerance: kernels must stay far ahead of every test gate.
  QSeriesResult r = hyp_series_q(kEmpty, den, w, quad(1e-36), 100000);
  return r.value;
}

qcomplex kummer_m_q(qcomplex a, qcomplex b, qcomplex w, bool allow_transform) {
  if (allow_transform && w.re < quad(-30)) {
    // M(a, b, w) = e^w M(b - a, b, -w): all-positive summation, no
    // cancellation against e^{|w|}.
    std::vector<qcomplex> num{b - a};
    std::vector<qcomplex> den{b};
    QSeriesResult r = hyp_series_q(num, den, -w, quad(1e-36), 100000);
    return qexp(w) * r.value;
  }
  std::vector<qcomplex> num{a};
  std::vector<qcomplex> den{b};
  QSeriesResult r = hyp_series_q(num, den, w, quad(1e-36), 100000);
  return r.value;
}

}  // namespace detail

namespace {

std::vector<detail::qcomplex> to_q(const std::vector<Complex>& v) {
  std::vector<detail::qcomplex> out;
  out.reserve(v.size());
  for (const Complex& x : v) out.emplace_back(x);
  return out;
}

}  // namespace

SeriesResult hyp_series(const std::vector<Complex>& a, const std::vector<Complex>& b, Complex z,
                        double tol, int max_terms) {
  if (a.size() > b.size()) {
    throw PreconditionError("hyp_series: requires q <= p (series diverges otherwise)");
  }
  for (const Complex& bj : b) {
    if (is_nonpositive_integer(bj, kPoleTol)) {
      throw PreconditionError("hyp_series: lower parameter is a non-positive integer");
    }
  }
  detail::QSeriesResult qr =
      detail::hyp_series_q(to_q(a), to_q(b), detail::qcomplex(z), detail::quad(tol), max_terms);
  SeriesResult res;
  res.value = detail::ensure_finite(qr.value.to_double(), "hyp_series");
  res.terms_used = qr.terms_used;
  res.converged = qr.converged;
  res.last_term_magnitude = static_cast<double>(qr.last_term);
  return res;
}

Complex kummer_m(Complex a, Complex b, Complex z) {
  if (is_nonpositive_integer(b, kPoleTol)) {
    throw PreconditionError("kummer_m: b is a non-positive integer");
  }
  detail::qcomplex r = detail::kummer_m_q(detail::qcomplex(a), detail::qcomplex(b),
                                          detail::qcomplex(z));
  return detail::ensure_finite(r.to_double(), "kummer_m");
}

Complex gauss2f1_neg1(Complex one_minus_a, int n, Complex c) {
  if (n < 0) throw PreconditionError("gauss2f1_neg1: n must be nonnegative");
  Complex term(1.0, 0.0);
  Complex sum(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    Complex ck = c + static_cast<double>(k);
    Complex numer = (one_minus_a + static_cast<double>(k)) * Complex(static_cast<double>(k - n), 0.0);
    if (std::abs(ck) <= 1e-12) {
      if (std::abs(numer) <= 1e-12) break;  // sum terminated before the zero mattered
      std::ostringstream os;
      os << "gauss2f1_neg1: (c)_k vanishes at k = " << (k + 1) << " inside the terminating sum";
      throw DegenerateError(os.str(), k + 1);
    }
    term *= -numer / (ck * static_cast<double>(k + 1));
    sum += term;
  }
  return detail::ensure_finite(sum, "gauss2f1_neg1");
}

ShiftDecomposition decompose_shift(const ParameterPair& p, Complex z, int n) {
  if (n < 1) throw PreconditionError("decompose_shift: n must be >= 1");
  p.validate();

  Complex term(1.0, 0.0);
  Complex partial(0.0, 0.0);
  for (int k = 0; k < n; ++k) {
    partial += term;
    Complex factor = z / static_cast<double>(k + 1);
    for (const Complex& ai : p.upper) factor *= ai + static_cast<double>(k);
    for (const Complex& bj : p.lower) factor /= bj + static_cast<double>(k);
    term *= factor;
  }
  // After the loop, term = (a)_n z^n / ((b)_n n!).
  ShiftDecomposition out;
  out.partial = detail::ensure_finite(partial, "decompose_shift");
  out.prefactor = detail::ensure_finite(term, "decompose_shift");

  std::vector<Complex> up, lo;
  up.reserve(p.upper.size() + 1);
  lo.reserve(p.lower.size() + 1);
  for (const Complex& ai : p.upper) up.push_back(ai + static_cast<double>(n));
  up.emplace_back(1.0, 0.0);
  for (const Complex& bj : p.lower) lo.push_back(bj + static_cast<double>(n));
  lo.emplace_back(static_cast<double>(n + 1), 0.0);
  out.shifted = ParameterPair{std::move(up), std::move(lo), p.kind};
  out.shifted.validate();
  return out;
}

}  // namespace unifex
