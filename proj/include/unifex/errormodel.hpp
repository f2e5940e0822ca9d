#ifndef UNIFEX_ERRORMODEL_HPP
#define UNIFEX_ERRORMODEL_HPP

// Empirical uniformity and decay-rate verification: sup-error sweeps over
// strips and half-planes, and log-log rate fits against the bound shapes.

#include <string>
#include <vector>

#include "unifex/expansion.hpp"
#include "unifex/norlund.hpp"

namespace unifex {

struct Interval {
  double lo{0}, hi{0};
};

struct SeriesOptions {
  double tol{1e-13};
  int max_terms{10000};
};

// Deterministic sampling grid over a horizontal strip |Im z| < lambda or a
// half-plane Re z >= lambda. A count of 1 samples the interval midpoint.
struct RegionSpec {
  enum class Shape { Strip, HalfPlane };

  Shape shape{Shape::Strip};
  double lambda{0};
  Interval re_range{};
  Interval im_range{};  // Strip: [-lambda, lambda]
  int n_re{2};
  int n_im{2};

  static RegionSpec strip(double lambda, Interval re_range, int n_re, int n_im);
  static RegionSpec half_plane(double lambda, Interval re_range, Interval im_range,
                               int n_re, int n_im);

  // Row-major (im outer, re inner) list of grid points.
  std::vector<Complex> points() const;
};

/// Max over the region grid of |expansion(z, N) - series oracle(z)|,
/// divided by H(z) for the Kummer-type methods. Throws NumericalError
/// naming the offending z if the oracle fails to converge there.
double sup_error_region(Method method, const std::vector<Complex>& a,
                        const std::vector<Complex>& b, const RegionSpec& region, int N,
                        const SeriesOptions& opts = {});

struct RateFit {
  double slope{0};
  double intercept{0};
  double r_squared{0};
  double expected_slope{0};
  std::vector<int> n_values;
};

/// Least-squares slope of log(sup_error / log^{r-1} N) against log N over
/// n_values (>= 4 strictly increasing values); expected_slope comes from
/// the pole data and the method's bound shape. Sub-ulp errors raise
/// NonFittableError.
RateFit fit_rate(Method method, const std::vector<Complex>& a, const std::vector<Complex>& b,
                 const RegionSpec& region, const std::vector<int>& n_values,
                 const SeriesOptions& opts = {});

// One CSV row of a sweep: the evaluated point, the method, the reference
// and the absolute error.
struct SweepRecord {
  double z_re{0}, z_im{0};
  std::string method;
  int n_terms{0};
  double val_re{0}, val_im{0};
  double ref_re{0}, ref_im{0};
  double abs_err{0};
};

/// Evaluates method vs oracle at every grid point for each N in n_values,
/// in deterministic order (N outer, grid row-major inner).
/// method_tag "series" sweeps the oracle against itself.
std::vector<SweepRecord> sweep_region(const std::string& method_tag,
                                      const std::vector<Complex>& a,
                                      const std::vector<Complex>& b, const RegionSpec& region,
                                      const std::vector<int>& n_values,
                                      const SeriesOptions& opts = {});

// Parses the CLI method tags: series | bessel | bessel-elem | kummer | kummer-elem.
bool method_from_tag(const std::string& tag, Method& out);

}  // namespace unifex

#endif
