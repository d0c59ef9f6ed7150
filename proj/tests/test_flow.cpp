#include <doctest.h>

#include <cmath>

#include "curvorbit/catalog.hpp"
#include "curvorbit/flow.hpp"
#include "test_support.hpp"

using namespace curvorbit;

TEST_CASE("induced representation: zero maps to zero") {
  const BivectorBasis basis(Signature{1, 3});
  CHECK(induced_rep(Mat::Zero(4, 4), basis).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("induced representation of an o(3) rotation is the adjoint rotation") {
  const Signature sig{0, 3};
  const BivectorBasis basis(sig);
  Mat x = Mat::Zero(3, 3);
  x(0, 1) = 1.0;
  x(1, 0) = -1.0;  // rotation in the 01-plane
  const Mat rep = induced_rep(x, basis);
  // Pairs (01),(02),(12): e0^e2 -> -e1^e2, e1^e2 -> e0^e2, e0^e1 fixed.
  Mat expected = Mat::Zero(3, 3);
  expected(2, 1) = -1.0;
  expected(1, 2) = 1.0;
  CHECK((rep - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("induced representation is a Lie algebra homomorphism") {
  auto g = testsup::rng(61);
  const Signature sig{1, 3};
  const BivectorBasis basis(sig);
  const auto lie = make_lie_basis(sig);
  for (int trial = 0; trial < 10; ++trial) {
    Mat x = Mat::Zero(4, 4), y = Mat::Zero(4, 4);
    for (const auto& t : lie.t_basis) {
      x += testsup::normal(g) * t;
      y += testsup::normal(g) * t;
    }
    for (const auto& p : lie.p_basis) {
      x += testsup::normal(g) * p;
      y += testsup::normal(g) * p;
    }
    const Mat lhs = induced_rep(x * y - y * x, basis);
    const Mat rx = induced_rep(x, basis), ry = induced_rep(y, basis);
    CHECK((lhs - (rx * ry - ry * rx)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("induced representation rejects non-antisymmetric input") {
  const BivectorBasis basis(Signature{0, 3});
  Mat x = Mat::Zero(3, 3);
  x(0, 1) = 1.0;  // symmetric part present for g = I
  CHECK_THROWS_AS(induced_rep(x, basis), std::invalid_argument);
}

TEST_CASE("lie basis spans with the documented normalization") {
  for (const Signature sig : {Signature{1, 3}, Signature{2, 2}, Signature{0, 4}}) {
    const auto lie = make_lie_basis(sig);
    CHECK(static_cast<int>(lie.t_basis.size()) ==
          sig.p * (sig.p - 1) / 2 + sig.q * (sig.q - 1) / 2);
    CHECK(static_cast<int>(lie.p_basis.size()) == sig.p * sig.q);
    for (const auto& x : lie.t_basis) {
      CHECK(antisymmetry_residual(sig, x) < 1e-14);
      CHECK((x.transpose() * x).trace() == doctest::Approx(2.0));
    }
    for (const auto& x : lie.p_basis) {
      CHECK(antisymmetry_residual(sig, x) < 1e-14);
      CHECK((x.transpose() * x).trace() == doctest::Approx(2.0));
    }
  }
}

TEST_CASE("action by the identity and on scalar operators") {
  const Signature sig{1, 3};
  const auto op = riemann_to_operator(builtin("schwarzschild_point(1,3)").riemann);
  const auto same = act(Mat::Identity(4, 4), op);
  CHECK((same.m - op.m).cwiseAbs().maxCoeff() == 0.0);

  auto g = testsup::rng(62);
  const Mat h = testsup::random_isometry(sig, g);
  const CurvatureOperator scalar{sig, Mat(3.0 * Mat::Identity(6, 6))};
  CHECK((act(h, scalar).m - scalar.m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("action rejects non-isometries") {
  const CurvatureOperator op{Signature{1, 1}, Mat::Identity(1, 1)};
  CHECK_THROWS_AS(act(2.0 * Mat::Identity(2, 2), op), std::invalid_argument);
}

TEST_CASE("boosting the pp-wave rescales f and preserves traces") {
  const auto op = riemann_to_operator(builtin("pp_wave(1,0.5)").riemann);
  const double f0 = norm_functional(op);
  const auto lie = make_lie_basis(op.sig);
  const Mat boost_z = lie.p_basis[2];  // timelike-z boost generator

  std::vector<double> fs;
  for (double s : {1.0, -1.0}) {
    const auto moved = act(sym_exp(s * boost_z), op);
    fs.push_back(norm_functional(moved));
    const auto inv0 = orbit_invariants(op, 6);
    const auto inv1 = orbit_invariants(moved, 6);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(inv0[k] - inv1[k]) < 1e-9);
  }
  // Entries carry boost weight 2: one direction damps by e^{-4}, the other
  // amplifies by e^{4}.
  CHECK(std::min(fs[0], fs[1]) == doctest::Approx(f0 * std::exp(-4.0)).epsilon(1e-9));
  CHECK(std::max(fs[0], fs[1]) == doctest::Approx(f0 * std::exp(4.0)).epsilon(1e-9));
}

TEST_CASE("norm functional basics") {
  CHECK(norm_functional({Signature{1, 3}, Mat::Zero(6, 6)}) == 0.0);
  CHECK(norm_functional({Signature{1, 3}, Mat::Identity(6, 6)}) ==
        doctest::Approx(6.0));
}

TEST_CASE("moment gradient vanishes exactly where it should") {
  const Signature sig{1, 3};
  const auto lie = make_lie_basis(sig);
  const CurvatureOperator scalar{sig, Mat(2.0 * Mat::Identity(6, 6))};
  CHECK(moment_gradient(scalar, lie).norm() == 0.0);

  auto g = testsup::rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    const auto commuting = testsup::random_commuting_operator(sig, g);
    CHECK(moment_gradient(commuting, lie).norm() < 1e-12);
  }

  const auto pp = riemann_to_operator(builtin("pp_wave(1,0.5)").riemann);
  CHECK(moment_gradient(pp, lie).norm() > 0.1);
}

TEST_CASE("flow_step: critical states stay put, descent decreases f") {
  const Signature sig{1, 3};
  const auto lie = make_lie_basis(sig);
  const CurvatureOperator scalar{sig, Mat(2.0 * Mat::Identity(6, 6))};
  auto state = flow_init(scalar, lie);
  const auto after = flow_step(state, lie, 0.1);
  CHECK(after.f == state.f);
  CHECK(after.iter == state.iter);

  const auto pp = riemann_to_operator(builtin("pp_wave(1,0.5)").riemann);
  auto s2 = flow_init(pp, lie);
  const auto s3 = flow_step(s2, lie, 0.1);
  CHECK(s3.f < s2.f);
  CHECK_FALSE(s3.stalled);
}

TEST_CASE("a thousand flow steps never increase f") {
  auto g = testsup::rng(64);
  const Signature sig{1, 2};
  const auto t = testsup::random_valid_tensor(sig, g);
  const auto lie = make_lie_basis(sig);
  auto state = flow_init(riemann_to_operator(t), lie);
  double prev = state.f;
  for (int i = 0; i < 1000 && !state.stalled; ++i) {
    state = flow_step(state, lie, 0.5 / (1.0 + state.grad.norm()));
    CHECK(state.f <= prev + 1e-15 * (1.0 + prev));
    prev = state.f;
  }
  CHECK(isometry_residual(sig, state.g_acc) < 1e-8);
  // op_cur must track the action of g_acc on op0.
  const auto reconstructed = act(state.g_acc, state.op0);
  CHECK((reconstructed.m - state.op_cur.m).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("run_flow: scalar operators are minimal immediately") {
  const Signature sig{1, 3};
  const CurvatureOperator op{sig, Mat(2.0 * Mat::Identity(6, 6))};
  const auto v = run_flow(op);
  CHECK(v.status == FlowStatus::minimal_found);
  CHECK(v.iters == 0);
  CHECK(v.comm_norm_final < 1e-12);
  CHECK((v.theta_witness.theta - canonical_theta(sig).theta).cwiseAbs().maxCoeff() <
        1e-9);
}

TEST_CASE("run_flow: the pp-wave orbit collapses") {
  const auto op = riemann_to_operator(builtin("pp_wave(1,0.5)").riemann);
  const auto v = run_flow(op);
  CHECK(v.status == FlowStatus::norm_collapse);
  CHECK(v.f_final < 1e-6 * v.f_initial);
  CHECK(v.f_monotone);
  CHECK(v.trace_drift < 1e-8);
}

TEST_CASE("run_flow recovers a boosted static frame") {
  auto g = testsup::rng(65);
  const auto op = riemann_to_operator(builtin("schwarzschild_point(1,3)").riemann);
  const Vec b = testsup::random_boost(3, g, 0.8);
  const Mat h = sym_exp(boost_generator(op.sig, b));
  const auto moved = act(h, op);

  const auto v = run_flow(moved);
  REQUIRE(v.status == FlowStatus::minimal_found);
  CHECK(v.comm_norm_final < 1e-8);
  CHECK(pe_defect(moved, v.theta_witness) < 1e-8);
  CHECK(v.trace_drift < 1e-8);

  // The witness must be the boost of the static involution.
  const Mat expected = h * canonical_theta(op.sig).theta * h.inverse();
  CHECK((v.theta_witness.theta - expected).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("run_flow on definite signatures is minimal at iteration zero") {
  auto g = testsup::rng(66);
  for (int trial = 0; trial < 5; ++trial) {
    const auto t = testsup::random_valid_tensor(Signature{0, 4}, g);
    const auto v = run_flow(riemann_to_operator(t));
    CHECK(v.status == FlowStatus::minimal_found);
    CHECK(v.iters == 0);
  }
}

TEST_CASE("run_flow verdict is frame equivariant") {
  auto g = testsup::rng(67);
  for (const char* name : {"pp_wave(1,0.5)", "schwarzschild_point(1,3)",
                           "constant_curvature(1,3,1)"}) {
    const auto op = riemann_to_operator(builtin(name).riemann);
    const auto base = run_flow(op);
    for (int trial = 0; trial < 3; ++trial) {
      const Mat h = testsup::random_isometry(op.sig, g);
      const auto v = run_flow(act(h, op));
      CHECK(v.status == base.status);
    }
  }
}

TEST_CASE("is_minimal first-order criterion") {
  auto g = testsup::rng(68);
  const Signature sig{1, 3};
  CHECK(is_minimal({sig, Mat(4.0 * Mat::Identity(6, 6))}).minimal);

  const auto commuting = testsup::random_commuting_operator(sig, g);
  CHECK(is_minimal(commuting).minimal);

  const Mat h = sym_exp(boost_generator(sig, testsup::random_boost(3, g, 1.0)));
  const auto mixed = act(h, commuting);
  const auto before = is_minimal(mixed);
  CHECK_FALSE(before.minimal);

  const auto v = run_flow(mixed);
  REQUIRE(v.status == FlowStatus::minimal_found);
  CHECK(is_minimal(v.op_min).minimal);
}

TEST_CASE("zero operator is trivially minimal") {
  const auto v = run_flow({Signature{1, 3}, Mat::Zero(6, 6)});
  CHECK(v.status == FlowStatus::minimal_found);
  CHECK(v.f_initial == 0.0);
}
