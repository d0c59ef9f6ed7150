#pragma once

#include <array>
#include <string>
#include <vector>

#include "curvorbit/signature.hpp"

namespace curvorbit {

// Conflict tolerance for symmetry completion and the default validation
// tolerance (relative to the largest component).
inline constexpr double kSymTol = 1e-10;

// Frame components R_{abcd}, all indices down, dense storage.
class RiemannTensor {
 public:
  explicit RiemannTensor(Signature sig)
      : sig_(sig),
        n_(sig.n()),
        c_(static_cast<std::size_t>(n_) * n_ * n_ * n_, 0.0) {}

  Signature signature() const { return sig_; }
  int dim() const { return n_; }

  double operator()(int a, int b, int c, int d) const {
    return c_[idx(a, b, c, d)];
  }
  void set(int a, int b, int c, int d, double v) { c_[idx(a, b, c, d)] = v; }

  // Writes v across the 8-element symmetry orbit of (a,b,c,d).
  void set_orbit(int a, int b, int c, int d, double v);

  double max_abs() const;

  std::vector<double>& data() { return c_; }
  const std::vector<double>& data() const { return c_; }

  RiemannTensor& operator+=(const RiemannTensor& o);
  RiemannTensor& operator-=(const RiemannTensor& o);
  RiemannTensor& operator*=(double s);

 private:
  std::size_t idx(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d;
  }

  Signature sig_;
  int n_;
  std::vector<double> c_;
};

// The Weyl tensor carries the same index symmetries plus tracelessness.
using WeylTensor = RiemannTensor;

struct TensorEntry {
  int a, b, c, d;
  double value;
};

// Builds a tensor from sparse entries. With symmetry_completion, each entry
// populates its full symmetry orbit; conflicting assignments beyond sym_tol
// are hard errors. Without completion, entries are written verbatim.
RiemannTensor tensor_from_entries(Signature sig,
                                  const std::vector<TensorEntry>& entries,
                                  bool symmetry_completion = true,
                                  double sym_tol = kSymTol);

struct SymmetryViolation {
  std::string kind;             // "antisymmetry-ab" | "antisymmetry-cd" | "pair-symmetry" | "first-bianchi"
  std::array<int, 4> indices;   // worst violating quadruple
  double magnitude = 0.0;
};

struct ValidationReport {
  bool ok = true;
  double tolerance = 0.0;       // absolute tolerance used
  std::vector<SymmetryViolation> violations;  // worst per kind, magnitude > tol
  SymmetryViolation worst;      // overall worst, even when ok
};

// Checks antisymmetry in both index pairs, pair symmetry and the first
// Bianchi identity, each to sym_tol relative to the largest component.
ValidationReport validate_riemann(const RiemannTensor& t,
                                  double sym_tol = kSymTol);

// Ric_{bd} = sum_a g[a] R_{abad}; scalar = sum_b g[b] Ric_{bb}.
Mat ricci(const RiemannTensor& t);
double ricci_scalar(const RiemannTensor& t);

// Weyl part of t (n >= 3; identically zero for n = 3). Throws for n < 3.
WeylTensor weyl(const RiemannTensor& t);

// Components in the transformed frame e'_a = h e_a (contract every slot).
RiemannTensor transform_frame(const RiemannTensor& t, const Mat& h);

// Frobenius norm over all n^4 components.
double component_norm(const RiemannTensor& t);

}  // namespace curvorbit
