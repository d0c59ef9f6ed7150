#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvorbit/bivector.hpp"
#include "curvorbit/cartan.hpp"
#include "curvorbit/lie.hpp"
#include "curvorbit/signature.hpp"

namespace curvorbit {

struct FlowConfig {
  double grad_tol = 1e-9;        // scaled by (1 + f) on the unit-norm operator
  double comm_tol = 1e-8;        // commutator residual for minimal-found
  double collapse_ratio = 1e-6;  // f <= ratio * f_initial flags collapse
  int max_iter = 10000;
  int seeds = 8;                 // multi-start count (seed 0 is the identity)
  std::uint64_t seed_value = 12345;
  int threads = 0;               // 0 = auto (capped by CURVORBIT_THREADS)
  int log_every = 0;             // 0 = no step log
};

enum class FlowStatus { minimal_found, norm_collapse, budget_exhausted };

std::string to_string(FlowStatus s);

struct FlowStepRecord {
  int iter;
  double f, grad_norm, step;
};

// One orbit point: accumulated group element and the moved operator.
// f and grad refer to the canonical theta0-norm of op_cur.
struct FlowState {
  CurvatureOperator op0;
  Mat g_acc;
  CurvatureOperator op_cur;
  double f = 0.0;
  Vec grad;
  int iter = 0;
  bool stalled = false;
};

struct FlowSeedResult {
  int seed_index = 0;
  BoostParameter b0;
  double f_final = 0.0, grad_final = 0.0, comm_final = 0.0;
  int iters = 0;
  bool collapsed = false;
  bool critical = false;   // stopped on the gradient tolerance
  bool monotone = true;
  Mat g_acc;
  Mat op_final;            // unit-norm scale
  double trace_drift = 0.0;
  std::vector<FlowStepRecord> log;
};

struct FlowVerdict {
  FlowStatus status = FlowStatus::budget_exhausted;
  CurvatureOperator op_min;        // original scale
  CartanInvolution theta_witness;  // pulled back to the input frame
  double f_initial = 0.0, f_final = 0.0;
  double grad_norm_final = 0.0, comm_norm_final = 0.0;
  double trace_drift = 0.0;
  int iters = 0;
  bool f_monotone = true;
  int winner_seed = 0;
  std::vector<FlowSeedResult> seeds;
};

// Conjugation action op' = Lambda^2(h) M Lambda^2(h)^{-1}. Requires h to be
// a g-isometry; preserves G-symmetry and all trace invariants.
CurvatureOperator act(const Mat& h, const CurvatureOperator& op,
                      double iso_tol = 1e-8);

// f = ||M||^2 in the canonical theta0 frame (plain component squares).
double norm_functional(const CurvatureOperator& op);

// grad_i = 2 <[lambda(X_i), M], M> over the p0 basis; vanishes exactly at
// critical points of f along the orbit.
Vec moment_gradient(const CurvatureOperator& op, const LieAlgebraBasis& basis);
Vec moment_gradient(const FlowState& state, const LieAlgebraBasis& basis);

FlowState flow_init(const CurvatureOperator& op, const LieAlgebraBasis& basis);

// One descent step along X = -sum grad_i X_i with backtracking: the candidate
// exp(step X) is accepted iff f decreases, otherwise step halves. Underflow
// below 1e-16 returns the state flagged stalled.
FlowState flow_step(const FlowState& state, const LieAlgebraBasis& basis,
                    double step);

// Minimal-vector search: multi-start descent to the norm minimum on the
// O(p,q) orbit. Internally runs on the unit-norm operator so verdicts are
// scale covariant; reported f values are in input scale.
FlowVerdict run_flow(const CurvatureOperator& op, const FlowConfig& cfg = {});

struct MinimalityCheck {
  bool minimal = false;
  double grad_norm = 0.0;  // on the unit-norm operator
  double comm_norm = 0.0;  // ||[M, Theta0]|| on the unit-norm operator
};

// First-order criterion: the moment gradient at the identity.
MinimalityCheck is_minimal(const CurvatureOperator& op,
                           double grad_tol = 1e-9);

}  // namespace curvorbit
