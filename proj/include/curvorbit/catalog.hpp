#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curvorbit/classify.hpp"
#include "curvorbit/riemann.hpp"
#include "curvorbit/signature.hpp"

namespace curvorbit {

// Expected classification summary a catalog entry must reproduce.
struct ExpectedSummary {
  Verdict rpe = Verdict::inconclusive;
  Verdict pe = Verdict::inconclusive;
  Verdict pm = Verdict::inconclusive;
  Verdict rpm = Verdict::inconclusive;
  WickVerdict wick = WickVerdict::inconclusive;
};

struct CatalogEntry {
  std::string name;
  Signature sig;
  RiemannTensor riemann;
  ExpectedSummary expected;
  std::string provenance;
};

// Coordinate metric callable around a point; the finite-difference oracle's
// input. frame_hint is unused by the oracle (the frame is rebuilt from the
// metric eigendecomposition) but kept for callers that carry one.
struct CoordinateMetric {
  int n = 0;
  std::function<Mat(const Vec&)> g_fn;
  Vec point;
  std::optional<Mat> frame_hint;
  bool anti_isometry = false;  // records the g -> -g convention option
};

// Central-difference curvature with one Richardson level, converted to an
// orthonormal frame (negative-norm directions first). Throws on a degenerate
// metric or when the symmetry residual exceeds 1e-6 * ||R|| ("step too coarse").
RiemannTensor curvature_oracle(const CoordinateMetric& m, double h = 1e-4);

// Signature the oracle assigns at the point (count of negative eigenvalues).
Signature oracle_signature(const CoordinateMetric& m);

enum class Slice { sphere, hyperbolic };

// Real slices of g_C = (1 + z1^2 + ... + zn^2)^-2 [dz1^2 + ... + dzn^2]:
// sphere slice z = x gives (1+|x|^2)^-2 dx^2, hyperbolic slice z = iy gives
// -(1-|y|^2)^-2 dy^2 (negative definite; the anti-isometry flag records the
// g -> -g convention). apply_anti_isometry emits the flipped metric instead.
CoordinateMetric holomorphic_example_slice(int n, Slice slice,
                                           bool apply_anti_isometry = false);

// g -> -g on a frame tensor: timelike and spacelike directions swap roles,
// lowered components flip sign, operator invariants are unchanged.
CatalogEntry apply_anti_isometry(const CatalogEntry& e);

// Closed-form entries: flat(p,q), constant_curvature(p,q,k),
// schwarzschild_point(r_s,r), pp_wave(a1,a2), de_sitter(n), anti_de_sitter(n),
// hand_built_pm, sphere_slice(n), hyperbolic_slice(n).
// Parameters are parsed from the name; bare names use documented defaults.
CatalogEntry builtin(const std::string& name);

// Default-instance names served by the CLI.
std::vector<std::string> catalog_names();

}  // namespace curvorbit
