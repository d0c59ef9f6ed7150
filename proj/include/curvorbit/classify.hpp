#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "curvorbit/cartan.hpp"
#include "curvorbit/flow.hpp"
#include "curvorbit/riemann.hpp"

namespace curvorbit {

enum class Verdict { yes, no, inconclusive };

enum class WickVerdict {
  obstructed,
  necessary_condition_passed,
  trivial,        // already definite: nothing to rotate
  inconclusive
};

std::string to_string(Verdict v);
std::string to_string(WickVerdict v);

struct ClassifyConfig {
  FlowConfig flow;
  double pe_tol = kPeTol;     // relative defect threshold for "yes"
  double no_margin = 1e3;     // "no" needs defect > no_margin * pe_tol everywhere
  int boost_seeds = 8;
  int boost_budget = 2000;    // objective evaluations per search seed
  std::uint64_t seed_value = 12345;
  double inv_tol = 1e-8;
  double sym_tol = kSymTol;
  int threads = 0;
  bool weyl_only = false;
};

// Direct-route search: minimize a defect over the boost parameters.
struct DefectSearch {
  double best_rel = 0.0;            // best relative defect found
  double best_abs = 0.0;
  BoostParameter best_b;
  std::vector<double> local_minima; // per-seed final relative defects
  int evaluations = 0;
};

struct AspectResult {
  Verdict verdict = Verdict::inconclusive;
  std::optional<BoostParameter> witness_b;  // involution witness when yes
  double defect_rel = 0.0;                  // best relative defect seen
  std::string evidence;
  Verdict flow_route = Verdict::inconclusive;
  Verdict direct_route = Verdict::inconclusive;
};

struct Classification {
  Signature sig;
  AspectResult rpe, pe, pm, rpm;
  WickVerdict wick = WickVerdict::inconclusive;
  std::string wick_reason;
  std::optional<std::string> type_note;
  FlowVerdict riemann_flow;
  std::optional<FlowVerdict> weyl_flow;
  std::vector<double> invariants;  // tr M^k, k = 1..min(N,8)
  double ricci_scalar_value = 0.0;
  bool weyl_defined = false;
};

// Verdicts per the two independent routes (orbit flow and direct boost
// search), cross-checked; disagreement yields inconclusive.
Classification classify(const RiemannTensor& t, const ClassifyConfig& cfg = {});

// Conjugation invariants (tr M, tr M^2, ..., tr M^k_max).
std::vector<double> orbit_invariants(const CurvatureOperator& op, int k_max);

enum class PairVerdict { consistent, inconsistent, inconclusive };

std::string to_string(PairVerdict v);

struct PairCheck {
  PairVerdict verdict = PairVerdict::inconclusive;
  std::string witness;  // offending invariant when inconsistent
  std::vector<double> invariants_a, invariants_b;
  std::vector<std::complex<double>> eigen_a, eigen_b;
  double ricci_scalar_a = 0.0, ricci_scalar_b = 0.0;
  bool degenerate = false;  // a nilpotent, trace-silent operator involved
};

// Necessary-condition check that two curvature tensors can be conjugate in
// the complexified orbit: trace invariants and eigenvalue multisets match.
PairCheck wick_pair_check(const RiemannTensor& a, const RiemannTensor& b,
                          double inv_tol = 1e-8);

// For Lorentzian purely electric spaces the Weyl type is constrained to
// {G, I_i, D, O}; no type computation is performed.
std::optional<std::string> lorentzian_type_note(const Classification& cls);

// Exposed for tests: minimize rel. minus- or plus-defect of op over boosts.
DefectSearch minimize_operator_defect(const CurvatureOperator& op, bool plus_part,
                                      const ClassifyConfig& cfg,
                                      const std::vector<BoostParameter>& extra_seeds = {});

}  // namespace curvorbit
