#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "unifex/kummerexp.hpp"
#include "unifex/refseries.hpp"

using namespace unifex;
using testutil::rel_err;
using testutil::Rng;

namespace {

const std::vector<Complex> kA{{1, 0}, {1.5, 0}};
const std::vector<Complex> kB{{2, 0}, {3, 0}};

Complex oracle(const std::vector<Complex>& a, const std::vector<Complex>& b, Complex z) {
  return hyp_series(a, b, -z).value;
}

// sum_n |ratio_n| H(z) / m^{min(Re a_p, Re(psi+n) - Re a_p)} scaled by the
// gamma prefactor: the inner-remainder envelope of the elementary form.
double elem_consistency_shape(const KummerContext& ctx, Complex z, int N, int m) {
  double acc = 0;
  for (int n = 0; n < N; ++n) {
    double beta = std::min(ctx.a_p.real(),
                           ctx.table.psi.real() + static_cast<double>(n) - ctx.a_p.real());
    acc += std::abs(ctx.table.ratio[static_cast<std::size_t>(n)]) * h_weight(z) *
           std::pow(static_cast<double>(m), -beta);
  }
  return acc * std::abs(detail::gamma_quotient(ctx.table.lower, ctx.table.upper));
}

}  // namespace

TEST_CASE("select_min_param") {
  SelectionResult s = select_min_param({{1, 0}, {1.5, 0}});
  CHECK(s.index == 0);
  CHECK(s.reordered == std::vector<Complex>{{1.5, 0}, {1, 0}});

  s = select_min_param({{2, 0}, {2, 0}});
  CHECK(s.index == 0);

  s = select_min_param({{3, 1}, {1, -2}, {2, 0}});
  CHECK(s.index == 1);
  CHECK(s.reordered == std::vector<Complex>{{3, 1}, {2, 0}, {1, -2}});
}

TEST_CASE("h_weight") {
  CHECK(h_weight({3, -7}) == 1.0);
  CHECK(h_weight({0, 2}) == 1.0);
  CHECK(h_weight({-2, 1}) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
}

TEST_CASE("kummer kernel anchors") {
  KummerContext ctx = make_kummer_context(kA, kB, 60);
  // exact value 32/(15 pi)
  CHECK(rel_err(kummer_expansion(ctx, {0, 0}, 1).value, {32.0 / (15.0 * M_PI), 0}) <= 1e-13);
  // slow algebraic rate alpha = 1.5: measured |v - 1| ~ 2.0e-3 at N = 60
  CHECK(std::abs(kummer_expansion(ctx, {0, 0}, 60).value - Complex(1, 0)) <= 5e-3);
}

TEST_CASE("kernel sup errors decrease over N in {10,20,30} on [0,50]") {
  KummerContext ctx = make_kummer_context(kA, kB, 30);
  double prev = std::numeric_limits<double>::infinity();
  for (int N : {10, 20, 30}) {
    double sup = 0;
    for (int i = 0; i <= 10; ++i) {
      Complex z{5.0 * i, 0};
      sup = std::max(sup, std::abs(kummer_expansion(ctx, z, N).value - oracle(kA, kB, z)));
    }
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("afn coefficients") {
  AFTable t = afn_coeffs({1, 0}, {3.5, 0}, 2);
  CHECK(t.perturbed.empty());
  // A_0 = 2^{2-b} Gamma(b)/(Gamma(a) Gamma(b-a))
  CHECK(rel_err(t.A[0], {0.88388347648318440550, 0}) <= 1e-13);
  // A_1(1, b) = 2^{3-b} (2-b)(b-1) = -3.75/sqrt(2) at b = 3.5
  CHECK(rel_err(t.A[1], {-2.6516504294495532165, 0}) <= 1e-13);

  SUBCASE("A_0 invariant for random arguments") {
    Rng rng(1313);
    for (int i = 0; i < 10; ++i) {
      Complex a = rng.box(0.3, 2.5, -1, 1);
      Complex b = a + rng.box(0.3, 2.5, -1, 1);  // keep Re(b-a) > 0
      AFTable at = afn_coeffs(a, b, 1);
      Complex expect = std::pow(Complex(2, 0), 2.0 - b) *
                       detail::gamma_quotient({b}, {a, b - a});
      CHECK(rel_err(at.A[0], expect) <= 1e-12);
    }
  }

  SUBCASE("degenerate denominator perturbs b_eff and reports it") {
    AFTable at = afn_coeffs({1.5, 0}, {2.5, 0}, 3);
    CHECK_FALSE(at.perturbed.empty());
    CHECK(at.b_eff != Complex(2.5, 0));
    for (const Complex& v : at.A) CHECK(std::isfinite(std::abs(v)));
  }
}

TEST_CASE("f_kernel values") {
  CHECK(f_kernel(0, {0, 0}) == Complex(1, 0));
  CHECK(rel_err(f_kernel(0, {-1, 0}), {1.0 - std::exp(-1.0), 0}) <= 1e-14);
  CHECK(std::abs(f_kernel(1, {0, 0})) <= 1e-30);
  // F_1(w) = w/12 + O(w^2)
  CHECK(rel_err(f_kernel(1, {0.05, 0}), {0.004272413351, 0}) <= 1e-9);
}

TEST_CASE("f_kernel two-path agreement on the switching annulus") {
  for (int n = 0; n <= 12; ++n) {
    for (double r : {0.4, 0.5, 0.6}) {
      for (double phi : {0.0, 1.0471975511965976, M_PI, -1.5707963267948966}) {
        detail::qcomplex w{r * std::cos(phi), r * std::sin(phi)};
        Complex via_formula = detail::f_kernel_q(n, w, detail::FPath::Defining).to_double();
        Complex via_series = detail::f_kernel_q(n, w, detail::FPath::MomentSeries).to_double();
        CHECK(rel_err(via_formula, via_series) <= 1e-9);
      }
    }
  }
}

TEST_CASE("f moments match the direct positive sum") {
  // mu_{j,n} = sum over even n+d of C(j, j-d) 4^{-d} 2^{-n} / (n+d+1)
  for (int n = 0; n <= 24; n += 4) {
    for (int j = 0; j <= 30; j += 5) {
      double direct = 0;
      double binom = 1;  // C(j, d)
      for (int d = 0; d <= j; ++d) {
        if ((n + d) % 2 == 0) {
          direct += binom * std::pow(0.25, d) * std::pow(0.5, n) / (n + d + 1);
        }
        binom *= static_cast<double>(j - d) / static_cast<double>(d + 1);
      }
      double table = static_cast<double>(detail::f_moment(j, n));
      CHECK(rel_err({table, 0}, {direct, 0}) <= 1e-12);
    }
  }
}

TEST_CASE("elementary and kernel forms agree within the inner-remainder envelope") {
  KummerContext ctx = make_kummer_context(kA, kB, 20);
  for (int N : {1, 5, 10, 20}) {
    int m = N + static_cast<int>(std::floor(ctx.table.psi.real()));
    for (double zr : {0.0, 5.0, 20.0, 50.0, -2.0}) {
      Complex z{zr, 0};
      Complex vk = kummer_expansion(ctx, z, N).value;
      Complex ve = elementary_kummer_expansion(ctx, z, N).value;
      CHECK(std::abs(vk - ve) <= 100.0 * elem_consistency_shape(ctx, z, N, m));
    }
  }
}

TEST_CASE("elementary sup errors decrease over N in {20,40,80} on [0,50]") {
  KummerContext ctx = make_kummer_context(kA, kB, 80);
  double prev = std::numeric_limits<double>::infinity();
  for (int N : {20, 40, 80}) {
    double sup = 0;
    for (int i = 0; i <= 10; ++i) {
      Complex z{5.0 * i, 0};
      sup = std::max(sup, std::abs(elementary_kummer_expansion(ctx, z, N).value -
                                   oracle(kA, kB, z)));
    }
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("selection invariance: permuting a leaves the value unchanged") {
  std::vector<Complex> swapped{{1.5, 0}, {1, 0}};
  KummerContext c1 = make_kummer_context(kA, kB, 12);
  KummerContext c2 = make_kummer_context(swapped, kB, 12);
  for (double z : {0.0, 3.0, 17.0}) {
    CHECK(rel_err(kummer_expansion(c1, {z, 0}, 12).value,
                  kummer_expansion(c2, {z, 0}, 12).value) <= 1e-11);
    CHECK(rel_err(elementary_kummer_expansion(c1, {z, 0}, 8).value,
                  elementary_kummer_expansion(c2, {z, 0}, 8).value) <= 1e-11);
  }
}

TEST_CASE("tied selection with distinct imaginary parts") {
  // Both orderings approximate the same function, but the truncated values
  // differ at the truncation-error level: the removed entry changes psi_sel.
  std::vector<Complex> a1{{1, 2}, {1, -1}};
  std::vector<Complex> a2{{1, -1}, {1, 2}};
  std::vector<Complex> b{{2.5, 0}, {3.5, 0}};
  KummerContext c1 = make_kummer_context(a1, b, 30);
  KummerContext c2 = make_kummer_context(a2, b, 30);
  Complex z{4, 0};
  Complex ref = oracle(a1, b, z);
  double e1 = std::abs(kummer_expansion(c1, z, 30).value - ref);
  double e2 = std::abs(kummer_expansion(c2, z, 30).value - ref);
  CHECK(e1 <= 1e-2);
  CHECK(e2 <= 1e-2);
  // same convergence class
  CHECK(e1 <= 20.0 * e2 + 1e-12);
  CHECK(e2 <= 20.0 * e1 + 1e-12);
}

TEST_CASE("H-weighted error control at Re z < 0") {
  KummerContext ctx = make_kummer_context(kA, kB, 10);
  double e0k = std::abs(kummer_expansion(ctx, {0, 0}, 10).value - oracle(kA, kB, {0, 0}));
  double e2k = std::abs(kummer_expansion(ctx, {-2, 0}, 10).value - oracle(kA, kB, {-2, 0}));
  CHECK(e2k <= std::exp(2.0) * e0k * 100.0);
  double e0e = std::abs(elementary_kummer_expansion(ctx, {0, 0}, 10).value -
                        oracle(kA, kB, {0, 0}));
  double e2e = std::abs(elementary_kummer_expansion(ctx, {-2, 0}, 10).value -
                        oracle(kA, kB, {-2, 0}));
  CHECK(e2e <= std::exp(2.0) * e0e * 100.0);
}

TEST_CASE("bound shapes") {
  // alpha = 1, r = 1: removing a_p = 0.5 leaves (1; 2,3)
  KummerContext ctx = make_kummer_context({{1, 0}, {0.5, 0}}, kB, 4);
  CHECK(ctx.a_p == Complex(0.5, 0));
  CHECK(ctx.table.pole_a == doctest::Approx(1.0));
  CHECK(ctx.table.pole_r == 1);
  double b8 = kummer_bound(ctx, {3, 0}, 8, BoundKind::Kernel);
  CHECK(b8 == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
  CHECK(kummer_bound(ctx, {3, 0}, 16, BoundKind::Kernel) ==
        doctest::Approx(b8 / 2.0).epsilon(1e-12));
  // H(z) enters for Re z < 0
  CHECK(kummer_bound(ctx, {-2, 0}, 8, BoundKind::Kernel) ==
        doctest::Approx(std::exp(2.0) / 8.0).epsilon(1e-12));
  // elementary shape adds N^{-Re a_p}
  CHECK(kummer_bound(ctx, {3, 0}, 8, BoundKind::Elementary) ==
        doctest::Approx(1.0 / 8.0 + std::pow(8.0, -0.5)).epsilon(1e-12));
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(make_kummer_context({{1, 0}}, kB, 4), PreconditionError);
  // after removing the minimum (0.2), the remaining entry -0.3 violates Re > 0
  CHECK_THROWS_WITH_AS(make_kummer_context({{-0.3, 0}, {0.2, 0}}, kB, 4),
                       doctest::Contains("decompose_shift"), PreconditionError);
  // Re psi <= 0
  CHECK_THROWS_AS(make_kummer_context({{2, 0}, {3.5, 0}}, {{1, 0.5}, {2, 0}}, 4),
                  PreconditionError);
  KummerContext ctx = make_kummer_context(kA, kB, 4);
  CHECK_THROWS_AS(kummer_expansion(ctx, {1, 0}, 5), PreconditionError);
  CHECK_THROWS_AS(kummer_expansion(ctx, {1, 0}, 0), PreconditionError);
}
