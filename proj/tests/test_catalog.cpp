#include <doctest.h>

#include <cmath>

#include "curvorbit/catalog.hpp"
#include "curvorbit/classify.hpp"
#include "test_support.hpp"

using namespace curvorbit;

namespace {

double max_diff(const RiemannTensor& a, const RiemannTensor& b) {
  RiemannTensor d = a;
  d -= b;
  return d.max_abs();
}

}  // namespace

TEST_CASE("oracle: constant metrics are flat") {
  CoordinateMetric m;
  m.n = 3;
  m.point = Vec::Zero(3);
  m.g_fn = [](const Vec&) {
    Vec d(3);
    d << -1.0, 2.0, 0.5;
    return Mat(d.asDiagonal());
  };
  CHECK(curvature_oracle(m).max_abs() < 1e-8);
  CHECK(oracle_signature(m) == Signature{1, 2});
}

TEST_CASE("oracle: flat space in polar coordinates") {
  CoordinateMetric m;
  m.n = 2;
  m.point = Vec::Zero(2);
  m.point << 2.0, 0.7;  // (r, phi)
  m.g_fn = [](const Vec& x) {
    Mat g = Mat::Zero(2, 2);
    g(0, 0) = 1.0;
    g(1, 1) = x[0] * x[0];
    return g;
  };
  // Larger step: at h = 1e-4 the answer is roundoff limited near 2e-8.
  CHECK(curvature_oracle(m, 1e-3).max_abs() < 1e-8);
}

TEST_CASE("oracle matches the sphere slice closed form") {
  for (int n : {2, 3, 4}) {
    const auto m = holomorphic_example_slice(n, Slice::sphere);
    const auto t = curvature_oracle(m);
    const auto expected =
        builtin("sphere_slice(" + std::to_string(n) + ")").riemann;
    CHECK(max_diff(t, expected) < 1e-6);
  }
}

TEST_CASE("oracle matches the hyperbolic slice closed form") {
  const auto m = holomorphic_example_slice(3, Slice::hyperbolic);
  CHECK(oracle_signature(m) == Signature{3, 0});
  const auto t = curvature_oracle(m);
  const auto expected = builtin("hyperbolic_slice(3)").riemann;
  CHECK(max_diff(t, expected) < 1e-6);

  // Ricci form lambda * g with lambda > 0 on the negative definite slice.
  const Mat ric = ricci(t);
  const Mat g = frame_metric_matrix(Signature{3, 0});
  const double lambda = ricci_scalar(t) / 3.0;
  CHECK(lambda > 0.0);
  CHECK((ric - lambda * g).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("oracle matches Schwarzschild at a static point") {
  CoordinateMetric m;
  m.n = 4;
  const double r_s = 1.0, r = 3.0;
  m.point = Vec::Zero(4);
  m.point << 0.0, r, M_PI / 2.0, 0.0;  // (t, r, theta, phi) on the equator
  m.g_fn = [r_s](const Vec& x) {
    const double f = 1.0 - r_s / x[1];
    Vec d(4);
    d << -f, 1.0 / f, x[1] * x[1], x[1] * x[1] * std::sin(x[2]) * std::sin(x[2]);
    return Mat(d.asDiagonal());
  };
  const auto t = curvature_oracle(m);
  const auto expected = builtin("schwarzschild_point(1,3)").riemann;
  CHECK(max_diff(t, expected) < 1e-6);
}

TEST_CASE("oracle converges at second order or better") {
  const auto m = holomorphic_example_slice(3, Slice::sphere);
  const auto expected = builtin("sphere_slice(3)").riemann;
  const double err_h = max_diff(curvature_oracle(m, 1e-2), expected);
  const double err_h2 = max_diff(curvature_oracle(m, 5e-3), expected);
  CHECK(err_h2 * 3.0 <= err_h);
}

TEST_CASE("oracle rejects bad inputs") {
  CoordinateMetric degenerate;
  degenerate.n = 2;
  degenerate.point = Vec::Zero(2);
  degenerate.g_fn = [](const Vec&) { return Mat::Zero(2, 2); };
  CHECK_THROWS(curvature_oracle(degenerate));

  const auto m = holomorphic_example_slice(2, Slice::sphere);
  CHECK_THROWS_AS(curvature_oracle(m, 1.0), std::invalid_argument);
}

TEST_CASE("slice metrics at the origin") {
  const auto sphere = holomorphic_example_slice(2, Slice::sphere);
  CHECK((sphere.g_fn(sphere.point) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK_FALSE(sphere.anti_isometry);

  const auto hyp = holomorphic_example_slice(2, Slice::hyperbolic);
  CHECK((hyp.g_fn(hyp.point) + Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

  Vec outside(2);
  outside << 0.8, 0.8;
  CHECK_THROWS_AS(hyp.g_fn(outside), std::domain_error);
}

TEST_CASE("anti-isometry flips the slice sign but not the invariants") {
  const auto flipped = holomorphic_example_slice(2, Slice::hyperbolic,
                                                 /*apply_anti_isometry=*/true);
  CHECK(flipped.anti_isometry);
  CHECK((flipped.g_fn(flipped.point) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() ==
        0.0);

  const auto raw = builtin("hyperbolic_slice(3)");
  const auto conv = apply_anti_isometry(raw);
  CHECK(conv.sig == Signature{0, 3});
  CHECK(validate_riemann(conv.riemann).ok);
  // Lowered components flip sign; the operator flips with them, so even
  // traces survive, odd ones negate, and the induced bivector metric (hence
  // the defects and verdicts) is untouched.
  CHECK(conv.riemann(0, 1, 0, 1) == doctest::Approx(-raw.riemann(0, 1, 0, 1)));
  const auto op_a = riemann_to_operator(raw.riemann);
  const auto op_b = riemann_to_operator(conv.riemann);
  const auto inv_a = orbit_invariants(op_a, 3);
  const auto inv_b = orbit_invariants(op_b, 3);
  CHECK(inv_a[1] == doctest::Approx(inv_b[1]).epsilon(1e-12));
  CHECK(inv_a[0] == doctest::Approx(-inv_b[0]).epsilon(1e-12));
  CHECK(inv_a[2] == doctest::Approx(-inv_b[2]).epsilon(1e-12));
  const double rel_a = pe_defect(op_a, canonical_theta(raw.sig)) /
                       theta_norm(op_a, canonical_theta(raw.sig));
  const double rel_b = pe_defect(op_b, canonical_theta(conv.sig)) /
                       theta_norm(op_b, canonical_theta(conv.sig));
  CHECK(rel_a == doctest::Approx(rel_b));
}

TEST_CASE("every builtin entry is a valid tensor") {
  for (const auto& name : catalog_names()) {
    const auto e = builtin(name);
    CAPTURE(name);
    CHECK(validate_riemann(e.riemann).ok);
  }
  CHECK(catalog_names().size() >= 8);
}

TEST_CASE("unknown names and bad parameters are rejected") {
  CHECK_THROWS_AS(builtin("kundt"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("constant_curvature(1,3,0)"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("schwarzschild_point(3,1)"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("pp_wave(0,0)"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("flat(1,3"), std::invalid_argument);
}

TEST_CASE("schwarzschild entry is vacuum") {
  const auto e = builtin("schwarzschild_point(2,7)");
  CHECK(ricci(e.riemann).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("hand built PM entry: no involution makes it electric") {
  const auto e = builtin("hand_built_pm");
  REQUIRE(validate_riemann(e.riemann).ok);
  const auto op = riemann_to_operator(e.riemann);

  // Pure minus part at the canonical involution.
  const auto th0 = canonical_theta(e.sig);
  CHECK(pm_defect(op, th0) < 1e-12 * op.m.norm());
  CHECK(pe_defect(op, th0) > 0.5 * op.m.norm());

  // Brute force over a 20^3 grid of boost parameters: the relative minus
  // defect never comes close to zero.
  double min_rel = 1e300;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 20; ++k) {
        Vec b(3);
        b << -2.0 + 4.0 * i / 19.0, -2.0 + 4.0 * j / 19.0, -2.0 + 4.0 * k / 19.0;
        const auto th = theta_from_boost(e.sig, b);
        min_rel = std::min(min_rel, pe_defect(op, th) / theta_norm(op, th));
      }
  CHECK(min_rel > 1e-3);
}

TEST_CASE("de Sitter and anti de Sitter are the Lorentzian constant curvatures") {
  const auto ds = builtin("de_sitter(4)");
  CHECK(max_diff(ds.riemann, builtin("constant_curvature(1,3,1)").riemann) == 0.0);
  const auto ads = builtin("anti_de_sitter(4)");
  CHECK(max_diff(ads.riemann, builtin("constant_curvature(1,3,-1)").riemann) ==
        0.0);
}
