#ifndef UNIFEX_DETAIL_QCOMPLEX_HPP
#define UNIFEX_DETAIL_QCOMPLEX_HPP

// Minimal complex arithmetic over __float128.
//
// The hypergeometric series and the elementary kernel families cancel
// catastrophically in double precision (alternating terms reach ~1e12
// while sums are ~1e-5 at |z| ~ 40), so all kernel summation runs in
// quad precision and only the final results are rounded to double.

#include <quadmath.h>

#include <complex>

namespace unifex::detail {

using quad = __float128;

struct qcomplex {
  quad re{0}, im{0};

  qcomplex() = default;
  qcomplex(quad r) : re(r) {}  // NOLINT: implicit on purpose
  qcomplex(quad r, quad i) : re(r), im(i) {}
  explicit qcomplex(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_double() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline qcomplex operator+(const qcomplex& a, const qcomplex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline qcomplex operator-(const qcomplex& a, const qcomplex& b) {
  return {a.re - b.re, a.im - b.im};
}
inline qcomplex operator-(const qcomplex& a) { return {-a.re, -a.im}; }
inline qcomplex operator*(const qcomplex& a, const qcomplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline qcomplex operator*(quad s, const qcomplex& a) { return {s * a.re, s * a.im}; }

// Smith's algorithm keeps the division robust near the range limits.
inline qcomplex operator/(const qcomplex& a, const qcomplex& b) {
  if (fabsq(b.re) >= fabsq(b.im)) {
    quad r = b.im / b.re;
    quad d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  quad r = b.re / b.im;
  quad d = b.im + b.re * r;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

inline qcomplex& operator+=(qcomplex& a, const qcomplex& b) { return a = a + b; }
inline qcomplex& operator-=(qcomplex& a, const qcomplex& b) { return a = a - b; }
inline qcomplex& operator*=(qcomplex& a, const qcomplex& b) { return a = a * b; }
inline qcomplex& operator/=(qcomplex& a, const qcomplex& b) { return a = a / b; }

inline quad qabs(const qcomplex& z) { return hypotq(z.re, z.im); }

inline qcomplex qexp(const qcomplex& z) {
  quad e = expq(z.re);
  return {e * cosq(z.im), e * sinq(z.im)};
}

inline qcomplex qsin(const qcomplex& z) {
  return {sinq(z.re) * coshq(z.im), cosq(z.re) * sinhq(z.im)};
}

inline qcomplex qcos(const qcomplex& z) {
  return {cosq(z.re) * coshq(z.im), -sinq(z.re) * sinhq(z.im)};
}

// Integer power by repeated squaring; n may be negative.
inline qcomplex qpow_int(const qcomplex& z, long n) {
  if (n < 0) return qcomplex(quad(1)) / qpow_int(z, -n);
  qcomplex acc(quad(1));
  qcomplex base = z;
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

}  // namespace unifex::detail

#endif
