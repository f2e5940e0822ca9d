#include "unifex/errormodel.hpp"

#include <cmath>
#include <sstream>

#include "unifex/besselexp.hpp"
#include "unifex/kummerexp.hpp"
#include "unifex/refseries.hpp"

namespace unifex {

std::string method_name(Method m) {
  switch (m) {
    case Method::BesselKernel: return "bessel";
    case Method::TrigElementary: return "bessel-elem";
    case Method::KummerKernel: return "kummer";
    case Method::ExpElementary: return "kummer-elem";
  }
  return "?";
}

bool method_from_tag(const std::string& tag, Method& out) {
  if (tag == "bessel") out = Method::BesselKernel;
  else if (tag == "bessel-elem") out = Method::TrigElementary;
  else if (tag == "kummer") out = Method::KummerKernel;
  else if (tag == "kummer-elem") out = Method::ExpElementary;
  else return false;
  return true;
}

RegionSpec RegionSpec::strip(double lambda, Interval re_range, int n_re, int n_im) {
  if (lambda <= 0.0) throw PreconditionError("RegionSpec: strip requires lambda > 0");
  if (n_re < 1 || n_im < 1) throw PreconditionError("RegionSpec: grid counts must be >= 1");
  RegionSpec r;
  r.shape = Shape::Strip;
  r.lambda = lambda;
  r.re_range = re_range;
  r.im_range = {-lambda, lambda};
  r.n_re = n_re;
  r.n_im = n_im;
  return r;
}

RegionSpec RegionSpec::half_plane(double lambda, Interval re_range, Interval im_range, int n_re,
                                  int n_im) {
  if (re_range.lo < lambda) {
    throw PreconditionError("RegionSpec: half-plane sampling must satisfy Re z >= lambda");
  }
  if (n_re < 1 || n_im < 1) throw PreconditionError("RegionSpec: grid counts must be >= 1");
  RegionSpec r;
  r.shape = Shape::HalfPlane;
  r.lambda = lambda;
  r.re_range = re_range;
  r.im_range = im_range;
  r.n_re = n_re;
  r.n_im = n_im;
  return r;
}

namespace {

double grid_coord(const Interval& iv, int i, int n) {
  if (n == 1) return 0.5 * (iv.lo + iv.hi);
  return iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

bool is_kummer(Method m) {
  return m == Method::KummerKernel || m == Method::ExpElementary;
}

// Expansion + oracle machinery shared by the sweep entry points. Holds the
// coefficient context once for the largest N requested.
struct MethodRunner {
  Method method;
  std::vector<Complex> a, b;
  NorlundTable table;    // bessel methods
  KummerContext kctx;    // kummer methods

  MethodRunner(Method method, const std::vector<Complex>& a, const std::vector<Complex>& b,
               int n_max)
      : method(method), a(a), b(b) {
    if (is_kummer(method)) {
      kctx = make_kummer_context(a, b, n_max);
    } else {
      table = norlund_coeffs(a, b, n_max);
    }
  }

  Complex oracle_arg(Complex z) const {
    return is_kummer(method) ? -z : -z * z / 4.0;
  }

  ExpansionResult eval(Complex z, int N) const {
    switch (method) {
      case Method::BesselKernel: return bessel_expansion(table, z, N);
      case Method::TrigElementary: return elementary_bessel_expansion(table, z, N);
      case Method::KummerKernel: return kummer_expansion(kctx, z, N);
      case Method::ExpElementary: return elementary_kummer_expansion(kctx, z, N);
    }
    throw PreconditionError("unknown method");
  }

  Complex reference(Complex z, const SeriesOptions& opts) const {
    SeriesResult r = hyp_series(a, b, oracle_arg(z), opts.tol, opts.max_terms);
    if (!r.converged) {
      std::ostringstream os;
      os << "series oracle did not converge at z = (" << z.real() << ", " << z.imag()
         << ") after " << r.terms_used << " terms";
      throw NumericalError(os.str());
    }
    return r.value;
  }
};

}  // namespace

std::vector<Complex> RegionSpec::points() const {
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(n_re) * static_cast<std::size_t>(n_im));
  for (int ii = 0; ii < n_im; ++ii) {
    double y = grid_coord(im_range, ii, n_im);
    for (int ir = 0; ir < n_re; ++ir) {
      pts.emplace_back(grid_coord(re_range, ir, n_re), y);
    }
  }
  return pts;
}

double sup_error_region(Method method, const std::vector<Complex>& a,
                        const std::vector<Complex>& b, const RegionSpec& region, int N,
                        const SeriesOptions& opts) {
  MethodRunner runner(method, a, b, N);
  double sup = 0.0;
  for (Complex z : region.points()) {
    double err = std::abs(runner.eval(z, N).value - runner.reference(z, opts));
    if (is_kummer(method)) err /= h_weight(z);
    if (err > sup) sup = err;
  }
  return sup;
}

RateFit fit_rate(Method method, const std::vector<Complex>& a, const std::vector<Complex>& b,
                 const RegionSpec& region, const std::vector<int>& n_values,
                 const SeriesOptions& opts) {
  if (n_values.size() < 4) throw PreconditionError("fit_rate: need at least 4 N values");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) {
      throw PreconditionError("fit_rate: N values must be strictly increasing");
    }
  }
  if (n_values.front() < 1) throw PreconditionError("fit_rate: N values must be >= 1");

  MethodRunner runner(method, a, b, n_values.back());
  const int r = is_kummer(method) ? runner.kctx.table.pole_r : runner.table.pole_r;
  const double pole_a = is_kummer(method) ? runner.kctx.table.pole_a : runner.table.pole_a;
  const double psi_re = is_kummer(method) ? runner.kctx.table.psi.real() : runner.table.psi.real();

  // Cache oracle values; they do not depend on N.
  std::vector<Complex> pts = region.points();
  std::vector<Complex> refs;
  refs.reserve(pts.size());
  for (Complex z : pts) refs.push_back(runner.reference(z, opts));

  std::vector<double> xs, ys;
  for (int N : n_values) {
    double sup = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double err = std::abs(runner.eval(pts[i], N).value - refs[i]);
      if (is_kummer(method)) err /= h_weight(pts[i]);
      if (err > sup) sup = err;
    }
    if (!(sup > 1e-300)) {
      throw NonFittableError("fit_rate: sup error is zero or below ulp scale, nothing to fit");
    }
    double logN = std::log(static_cast<double>(N));
    xs.push_back(logN);
    ys.push_back(std::log(sup) - (r - 1) * std::log(std::max(logN, 1e-300)));
  }

  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  RateFit fit;
  fit.n_values = n_values;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, mean_y = sy / n, ss_tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double pred = fit.intercept + fit.slope * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;

  switch (method) {
    case Method::BesselKernel: fit.expected_slope = -(pole_a + 0.5); break;
    case Method::TrigElementary:
      fit.expected_slope = -std::min(psi_re - 0.5, pole_a + 0.5);
      break;
    case Method::KummerKernel: fit.expected_slope = -pole_a; break;
    case Method::ExpElementary: {
      double re_ap = runner.kctx.a_p.real();
      fit.expected_slope = -std::min(pole_a, re_ap);
      break;
    }
  }
  return fit;
}

std::vector<SweepRecord> sweep_region(const std::string& method_tag,
                                      const std::vector<Complex>& a,
                                      const std::vector<Complex>& b, const RegionSpec& region,
                                      const std::vector<int>& n_values,
                                      const SeriesOptions& opts) {
  std::vector<SweepRecord> out;
  std::vector<Complex> pts = region.points();

  if (method_tag == "series") {
    for (int N : n_values) {
      for (Complex z : pts) {
        SeriesResult r = hyp_series(a, b, a.size() == b.size() ? -z : -z * z / 4.0, opts.tol,
                                    opts.max_terms);
        SweepRecord rec;
        rec.z_re = z.real();
        rec.z_im = z.imag();
        rec.method = method_tag;
        rec.n_terms = N;
        rec.val_re = r.value.real();
        rec.val_im = r.value.imag();
        rec.ref_re = r.value.real();
        rec.ref_im = r.value.imag();
        rec.abs_err = 0.0;
        out.push_back(rec);
      }
    }
    return out;
  }

  Method method;
  if (!method_from_tag(method_tag, method)) {
    throw PreconditionError("sweep_region: unknown method tag '" + method_tag + "'");
  }
  int n_max = 1;
  for (int N : n_values) n_max = std::max(n_max, N);
  MethodRunner runner(method, a, b, n_max);

  std::vector<Complex> refs;
  refs.reserve(pts.size());
  for (Complex z : pts) refs.push_back(runner.reference(z, opts));

  for (int N : n_values) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Complex v = runner.eval(pts[i], N).value;
      SweepRecord rec;
      rec.z_re = pts[i].real();
      rec.z_im = pts[i].imag();
      rec.method = method_tag;
      rec.n_terms = N;
      rec.val_re = v.real();
      rec.val_im = v.imag();
      rec.ref_re = refs[i].real();
      rec.ref_im = refs[i].imag();
      rec.abs_err = std::abs(v - refs[i]);
      out.push_back(rec);
    }
  }
  return out;
}

}  // namespace unifex
