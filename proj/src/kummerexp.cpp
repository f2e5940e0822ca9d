#include "unifex/kummerexp.hpp"

#include <cmath>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>

#include "unifex/refseries.hpp"

namespace unifex {

namespace detail {

namespace {

// Moment table mu_{j,n} = int_0^1 t^j (t-1/2)^n dt. Built by
//   mu_{j,n} = ( 2^{-(n+1)} - j * mu_{j-1,n+1} ) / (n+1),
// row 0 in closed form; every entry is nonnegative, so the build never
// amplifies sign cancellation beyond a couple of digits.
struct MuTable {
  int J{0};
  int nmax{0};
  std::vector<std::vector<quad>> rows;  // rows[j][n], n < nmax + (J - j) + 2

  quad at(int j, int n) const { return rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)]; }
};

std::shared_ptr<const MuTable> build_mu(int J, int nmax) {
  auto t = std::make_shared<MuTable>();
  t->J = J;
  t->nmax = nmax;
  t->rows.resize(static_cast<std::size_t>(J) + 1);
  int width0 = nmax + J + 2;
  auto& r0 = t->rows[0];
  r0.resize(static_cast<std::size_t>(width0));
  quad p2 = 1;  // 2^{-n}
  for (int n = 0; n < width0; ++n) {
    r0[static_cast<std::size_t>(n)] = (n % 2 == 0) ? p2 / quad(n + 1) : quad(0);
    p2 *= quad(0.5);
  }
  for (int j = 1; j <= J; ++j) {
    const auto& prev = t->rows[static_cast<std::size_t>(j - 1)];
    auto& cur = t->rows[static_cast<std::size_t>(j)];
    int width = width0 - j;
    cur.resize(static_cast<std::size_t>(width));
    quad half_pow = quad(0.5);  // 2^{-(n+1)}
    for (int n = 0; n < width; ++n) {
      cur[static_cast<std::size_t>(n)] =
          (half_pow - quad(j) * prev[static_cast<std::size_t>(n + 1)]) / quad(n + 1);
      half_pow *= quad(0.5);
    }
  }
  return t;
}

std::shared_ptr<const MuTable> mu_get(int J, int nmax) {
  static std::mutex mu_mutex;
  static std::shared_ptr<const MuTable> cache;
  std::lock_guard<std::mutex> lock(mu_mutex);
  if (!cache || cache->J < J || cache->nmax < nmax) {
    int newJ = cache ? std::max(J, cache->J) : J;
    int newN = cache ? std::max(nmax, cache->nmax) : nmax;
    cache = build_mu(newJ + newJ / 2 + 8, newN + newN / 2 + 8);
  }
  return cache;
}

quad qfact(int n) {
  quad acc(1);
  for (int k = 2; k <= n; ++k) acc *= quad(k);
  return acc;
}

qcomplex e_partial(int n, const qcomplex& x) {
  qcomplex term(quad(1));
  qcomplex sum(quad(1));
  for (int k = 0; k < n; ++k) {
    term *= x / quad(k + 1);
    sum += term;
  }
  return sum;
}

qcomplex f_defining(int n, const qcomplex& w) {
  qcomplex half_w = quad(0.5) * w;
  qcomplex bracket = e_partial(n, half_w) - qexp(w) * e_partial(n, -half_w);
  return qfact(n) * bracket / qpow_int(-w, n + 1);
}

qcomplex f_moment_series(int n, const qcomplex& w) {
  double absw = static_cast<double>(qabs(w));
  int jcap = 2 * n + 16 + static_cast<int>(3.0 * absw) + 80;
  auto mu = mu_get(jcap, n);
  qcomplex sum(quad(0));
  qcomplex wp(quad(1));  // w^j / j!
  quad peak = 0;
  int floor_terms = 2 * n + 8;
  for (int j = 0; j <= jcap; ++j) {
    qcomplex term = mu->at(j, n) * wp;
    sum += term;
    quad mag = qabs(term);
    if (mag > peak) peak = mag;
    if (j >= floor_terms && mag <= quad(1e-40) * peak) break;
    wp *= w / quad(j + 1);
  }
  return sum;
}

// Digits lost to bracket cancellation in the defining formula; beyond
// ~18 the quad evaluation no longer carries the accuracy the tests need.
bool defining_path_ok(int n, double absw) {
  if (absw <= 0.0) return false;
  double lost_ln = absw / 2.0 + std::lgamma(static_cast<double>(n) + 2.0) -
                   (static_cast<double>(n) + 1.0) * std::log(absw / 2.0);
  return lost_ln <= 18.0 * 2.302585092994046;
}

}  // namespace

quad f_moment(int j, int n) {
  if (j < 0 || n < 0) throw PreconditionError("f_moment: indices must be nonnegative");
  return mu_get(j, n)->at(j, n);
}

qcomplex f_kernel_q(int n, const qcomplex& w, FPath path) {
  if (path == FPath::Defining) return f_defining(n, w);
  if (path == FPath::MomentSeries) return f_moment_series(n, w);
  double absw = static_cast<double>(qabs(w));
  if (absw >= 0.5 && defining_path_ok(n, absw)) return f_defining(n, w);
  return f_moment_series(n, w);
}

}  // namespace detail

double h_weight(Complex z) { return std::max(1.0, std::exp(-z.real())); }

SelectionResult select_min_param(const std::vector<Complex>& a) {
  if (a.empty()) throw PreconditionError("select_min_param: empty parameter vector");
  SelectionResult out;
  out.index = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i].real() < a[static_cast<std::size_t>(out.index)].real()) {
      out.index = static_cast<int>(i);
    }
  }
  out.reordered = a;
  std::swap(out.reordered[static_cast<std::size_t>(out.index)], out.reordered.back());
  return out;
}

Complex f_kernel(int n, Complex w) {
  if (n < 0) throw PreconditionError("f_kernel: n must be nonnegative");
  return detail::ensure_finite(detail::f_kernel_q(n, detail::qcomplex(w)).to_double(),
                               "f_kernel");
}

AFTable afn_coeffs(Complex a_sel, Complex b_eff, int m) {
  if (m < 0) throw PreconditionError("afn_coeffs: m must be nonnegative");
  AFTable t;
  t.m = m;
  t.a_sel = a_sel;
  for (int attempt = 0; attempt < 3; ++attempt) {
    t.b_eff = b_eff;
    t.A.clear();
    try {
      // A_n = 2^{n+2-b} (a+1-b)_n / n! * Gamma(b)/(Gamma(a)Gamma(b-a)) * 2F1(1-a,-n;b-a-n;-1)
      Complex p0 = std::exp(lgamma_complex(b_eff) - lgamma_complex(a_sel) -
                            lgamma_complex(b_eff - a_sel) + (2.0 - b_eff) * std::log(2.0));
      Complex qn(1.0, 0.0);  // 2^n (a+1-b)_n / n!
      for (int n = 0; n < m; ++n) {
        Complex f21 = gauss2f1_neg1(1.0 - a_sel, n, b_eff - a_sel - static_cast<double>(n));
        t.A.push_back(detail::ensure_finite(p0 * qn * f21, "afn_coeffs"));
        qn *= 2.0 * (a_sel + 1.0 - b_eff + static_cast<double>(n)) / static_cast<double>(n + 1);
      }
      return t;
    } catch (const DegenerateError& e) {
      t.perturbed.push_back(e.index);
      std::cerr << "afn_coeffs: degenerate denominator at n = " << e.index
                << ", perturbing b_eff by 1e-8\n";
      b_eff += 1e-8;
    }
  }
  throw DegenerateError("afn_coeffs: degenerate after repeated perturbation",
                        t.perturbed.empty() ? -1 : t.perturbed.back());
}

KummerContext make_kummer_context(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                  int n_max) {
  if (a.size() != b.size() || a.empty()) {
    throw PreconditionError("kummer expansion: requires len(a) = len(b) >= 1");
  }
  SelectionResult sel = select_min_param(a);
  std::vector<Complex> rest(sel.reordered.begin(), sel.reordered.end() - 1);
  for (const Complex& aj : rest) {
    if (aj.real() <= 0.0) {
      throw PreconditionError(
          "kummer expansion: requires Re a > 0 after selection; apply decompose_shift first");
    }
  }
  Complex psi_full = detail::psi_sum(a, b);
  if (psi_full.real() <= 0.0) {
    throw PreconditionError(
        "kummer expansion: requires Re psi(a;b) > 0; apply decompose_shift first");
  }
  KummerContext ctx;
  ctx.a_p = sel.reordered.back();
  ctx.table = norlund_coeffs(rest, b, n_max);
  return ctx;
}

namespace {

void check_kummer_n(const KummerContext& ctx, int N) {
  if (N < 1) throw PreconditionError("kummer expansion: N must be >= 1");
  if (N > ctx.table.size()) {
    throw PreconditionError("kummer expansion: context holds fewer coefficients than N");
  }
}

Complex second_param(const KummerContext& ctx, int n) {
  Complex c = ctx.table.psi + static_cast<double>(n);
  if (is_nonpositive_integer(c, kPoleTol)) {
    std::ostringstream os;
    os << "kummer expansion: degenerate kernel second parameter at n = " << n;
    throw DegenerateError(os.str(), n);
  }
  return c;
}

}  // namespace

ExpansionResult kummer_expansion(const KummerContext& ctx, Complex z, int N) {
  check_kummer_n(ctx, N);
  detail::qcomplex w = -detail::qcomplex(z);
  detail::qcomplex acc(detail::quad(0));
  for (int n = 0; n < N; ++n) {
    Complex c = second_param(ctx, n);
    acc += detail::qcomplex(ctx.table.ratio[static_cast<std::size_t>(n)]) *
           detail::kummer_m_q(detail::qcomplex(ctx.a_p), detail::qcomplex(c), w);
  }
  Complex pref = detail::gamma_quotient(ctx.table.lower, ctx.table.upper);
  ExpansionResult res;
  res.value = detail::ensure_finite((detail::qcomplex(pref) * acc).to_double(), "kummer_expansion");
  res.n_terms = N;
  res.method = Method::KummerKernel;
  res.bound_estimate = kummer_bound(ctx, z, N, BoundKind::Kernel);
  return res;
}

ExpansionResult kummer_expansion(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                 Complex z, int N) {
  return kummer_expansion(make_kummer_context(a, b, N), z, N);
}

ExpansionResult elementary_kummer_expansion(const KummerContext& ctx, Complex z, int N,
                                            std::optional<int> m_override) {
  check_kummer_n(ctx, N);
  const int m = m_override.value_or(N + static_cast<int>(std::floor(ctx.table.psi.real())));
  if (m < 0) throw PreconditionError("elementary_kummer_expansion: m must be nonnegative");

  detail::qcomplex w = -detail::qcomplex(z);
  std::vector<detail::qcomplex> F(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) F[static_cast<std::size_t>(k)] = detail::f_kernel_q(k, w);

  detail::qcomplex acc(detail::quad(0));
  for (int n = 0; n < N; ++n) {
    Complex b_eff = second_param(ctx, n);
    AFTable at = afn_coeffs(ctx.a_p, b_eff, m);
    detail::qcomplex kern(detail::quad(0));
    for (int k = 0; k < m; ++k) {
      kern += detail::qcomplex(at.A[static_cast<std::size_t>(k)]) * F[static_cast<std::size_t>(k)];
    }
    acc += detail::qcomplex(ctx.table.ratio[static_cast<std::size_t>(n)]) * kern;
  }
  Complex pref = detail::gamma_quotient(ctx.table.lower, ctx.table.upper);
  ExpansionResult res;
  res.value = detail::ensure_finite((detail::qcomplex(pref) * acc).to_double(),
                                    "elementary_kummer_expansion");
  res.n_terms = N;
  res.method = Method::ExpElementary;
  res.bound_estimate = kummer_bound(ctx, z, N, BoundKind::Elementary);
  return res;
}

ExpansionResult elementary_kummer_expansion(const std::vector<Complex>& a,
                                            const std::vector<Complex>& b, Complex z, int N,
                                            std::optional<int> m_override) {
  return elementary_kummer_expansion(make_kummer_context(a, b, N), z, N, m_override);
}

double kummer_bound(const KummerContext& ctx, Complex z, int N, BoundKind which) {
  if (N < 1) throw PreconditionError("kummer_bound: N must be >= 1");
  double lg = std::pow(std::log(static_cast<double>(N)), ctx.table.pole_r - 1);
  double kernel = std::isinf(ctx.table.pole_a)
                      ? 0.0
                      : lg * std::pow(static_cast<double>(N), -ctx.table.pole_a);
  double env = h_weight(z);
  if (which == BoundKind::Kernel) return env * kernel;
  return env * (kernel + std::pow(static_cast<double>(N), -ctx.a_p.real()));
}

}  // namespace unifex
