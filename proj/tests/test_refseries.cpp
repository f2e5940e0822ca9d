#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "unifex/refseries.hpp"

using namespace unifex;
using testutil::rel_err;
using testutil::Rng;

namespace {
const std::vector<Complex> kA{{3, 0}};
const std::vector<Complex> kB{{3.5, 0}, {5, 0}};
}  // namespace

TEST_CASE("hyp_series basics") {
  SeriesResult r = hyp_series(kA, kB, {0, 0});
  CHECK(r.value == Complex(1, 0));
  CHECK(r.converged);

  // reference value from 40-digit summation
  r = hyp_series(kA, kB, {-0.25, 0});
  CHECK(rel_err(r.value, {0.95792798026430537577, 0}) <= 1e-13);
  CHECK(r.converged);

  // 0F1(-; 1; 0) = 1, empty upper vector
  r = hyp_series({}, {{1, 0}}, {0, 0});
  CHECK(r.value == Complex(1, 0));
}

TEST_CASE("hyp_series stays accurate deep in the cancellation regime") {
  // At argument -400 the alternating terms peak near 1e12 while the sum is
  // ~5e-6; the quad-internal summation keeps relative accuracy anyway.
  SeriesResult r = hyp_series(kA, kB, {-400, 0});
  CHECK(r.converged);
  CHECK(rel_err(r.value, {4.9301293536198687972e-6, 0}) <= 1e-12);
}

TEST_CASE("hyp_series term recurrence equals direct Pochhammer terms") {
  Rng rng(505);
  for (int trial = 0; trial < 20; ++trial) {
    Complex a = rng.box(0.3, 3, -1, 1);
    Complex b1 = rng.box(0.5, 3, -1, 1), b2 = rng.box(0.5, 3, -1, 1);
    Complex z = rng.box(-3, 3, -3, 3);
    std::vector<Complex> av{a}, bv{b1, b2};

    // direct Pochhammer-product partial sums up to k = 30
    Complex direct_sum(1, 0);
    Complex prev(1, 0);
    double inv_fact = 1.0;
    for (int k = 1; k <= 30; ++k) {
      inv_fact /= static_cast<double>(k);
      Complex tk = pochhammer(a, k) / (pochhammer(b1, k) * pochhammer(b2, k)) *
                   std::pow(z, static_cast<double>(k)) * inv_fact;
      direct_sum += tk;
      Complex sk = hyp_series(av, bv, z, 1e-300, k).value;
      // per-term extraction by differencing is only accurate while the
      // term is not drowned by the partial sum's rounding
      if (std::abs(tk) >= 1e-4 * std::abs(sk)) {
        CHECK(rel_err(sk - prev, tk) <= 1e-10);
      }
      prev = sk;
    }
    Complex s30 = hyp_series(av, bv, z, 1e-300, 30).value;
    CHECK(rel_err(s30, direct_sum) <= 1e-13);
  }
}

TEST_CASE("hyp_series non-convergence flag") {
  SeriesResult r = hyp_series(kA, kB, {-400, 0}, 1e-13, 5);
  CHECK_FALSE(r.converged);
  CHECK(r.last_term_magnitude > 0);
}

TEST_CASE("hyp_series preconditions") {
  CHECK_THROWS_AS(hyp_series({{1, 0}, {2, 0}}, {{3, 0}}, {0.5, 0}), PreconditionError);
  CHECK_THROWS_AS(hyp_series(kA, {{0, 0}, {5, 0}}, {1, 0}), PreconditionError);
}

TEST_CASE("kummer_m values") {
  CHECK(rel_err(kummer_m({1, 0}, {2, 0}, {-1, 0}), {1.0 - std::exp(-1.0), 0}) <= 1e-13);
  CHECK(kummer_m({0.7, 0.2}, {2.5, 0}, {0, 0}) == Complex(1, 0));
  CHECK(rel_err(kummer_m({1, 0}, {3.5, 0}, {-5, 0}), {0.36735576334101161625, 0}) <= 1e-13);
}

TEST_CASE("kummer transformation band: both paths agree") {
  // On Re z in [-35, -25] the direct sum still carries enough digits in
  // quad precision to compare against the transformed path.
  for (double x : {-35.0, -32.0, -30.0, -28.0, -25.0}) {
    detail::qcomplex a{{1.0, 0.0}};
    detail::qcomplex b{{3.5, 0.0}};
    detail::qcomplex z{{x, 0.4}};
    Complex direct = detail::kummer_m_q(a, b, z, false).to_double();
    Complex transformed = (detail::qexp(z) *
                           detail::kummer_m_q(b - a, b, -z, false)).to_double();
    CHECK(rel_err(direct, transformed) <= 1e-9);
  }
}

TEST_CASE("gauss2f1_neg1") {
  CHECK(gauss2f1_neg1({0.7, 0.1}, 0, {1.5, 0}) == Complex(1, 0));
  // a = 1 kills every k >= 1 term
  CHECK(gauss2f1_neg1({0, 0}, 7, {2.5, 0}) == Complex(1, 0));
  // n=1, a=2, c=1.5: 1 - 2/3
  CHECK(rel_err(gauss2f1_neg1({-1, 0}, 1, {1.5, 0}), {1.0 / 3.0, 0}) <= 1e-15);

  SUBCASE("degenerate denominator") {
    CHECK_THROWS_AS(gauss2f1_neg1({-0.5, 0}, 1, {0, 0}), DegenerateError);
    try {
      gauss2f1_neg1({-0.5, 0}, 3, {-1, 0});
      CHECK(false);
    } catch (const DegenerateError& e) {
      CHECK(e.index >= 1);
    }
  }
}

TEST_CASE("decompose_shift basics") {
  ParameterPair p = ParameterPair::bessel({{3, 0}}, {{3.5, 0}, {5, 0}});
  ShiftDecomposition d = decompose_shift(p, {0, 0}, 1);
  CHECK(d.partial == Complex(1, 0));
  CHECK(d.prefactor == Complex(0, 0));

  ParameterPair q = ParameterPair::bessel({{-0.5, 0}}, {{1.5, 0}, {2, 0}});
  ShiftDecomposition d2 = decompose_shift(q, {1, 0}, 1);
  CHECK(d2.shifted.upper[0] == Complex(0.5, 0));
  CHECK(d2.shifted.upper[1] == Complex(1, 0));
  CHECK(d2.shifted.lower[0] == Complex(2.5, 0));
  CHECK(d2.shifted.lower[1] == Complex(3, 0));
  CHECK(d2.shifted.lower[2] == Complex(2, 0));
  CHECK(d2.shifted.kind == PairKind::BesselType);
}

TEST_CASE("decompose_shift identity") {
  Rng rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    bool kummer_kind = trial % 2 == 1;
    std::vector<Complex> a, b;
    b.push_back(rng.box(0.4, 3.4, -0.8, 0.8));
    b.push_back(rng.box(0.4, 3.4, -0.8, 0.8));
    a.push_back(rng.box(-1.5, 2.5, -0.8, 0.8));
    if (kummer_kind) a.push_back(rng.box(-1.5, 2.5, -0.8, 0.8));
    ParameterPair p{a, b, kummer_kind ? PairKind::KummerType : PairKind::BesselType};
    p.validate();
    double zr = rng.uniform(-5, 5), zi = rng.uniform(-3, 3);
    Complex z{zr, zi};

    ShiftDecomposition d = decompose_shift(p, z, 3);
    Complex full = hyp_series(a, b, z).value;
    Complex shifted = hyp_series(d.shifted.upper, d.shifted.lower, z).value;
    CHECK(std::abs(full - (d.partial + d.prefactor * shifted)) <= 1e-11);
  }
}
