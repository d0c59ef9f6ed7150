#pragma once

#include <utility>
#include <vector>

#include "curvorbit/riemann.hpp"
#include "curvorbit/signature.hpp"

namespace curvorbit {

// Ordered-pair basis e_a ^ e_b, a < b, lexicographic, no normalization.
// The induced bivector metric is diagonal: G[(ab)] = g[a] g[b].
class BivectorBasis {
 public:
  explicit BivectorBasis(Signature sig);

  Signature signature() const { return sig_; }
  int dim() const { return static_cast<int>(pairs_.size()); }

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  std::pair<int, int> pair(int A) const { return pairs_[A]; }
  int index_of(int a, int b) const { return flat_[a * n_ + b]; }  // requires a < b

  const Vec& G() const { return G_; }

 private:
  Signature sig_;
  int n_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> flat_;
  Vec G_;
};

// N x N matrix of the curvature endomorphism on the pair basis,
// M[(ab)][(cd)] = g[a] g[b] R_{abcd}. Always G-symmetric for valid input.
struct CurvatureOperator {
  Signature sig;
  Mat m;
};

CurvatureOperator riemann_to_operator(const RiemannTensor& t);

// Inverse of riemann_to_operator. The first Bianchi identity is NOT implied
// by G-symmetry; callers needing a tensor interpretation must re-validate.
RiemannTensor operator_to_riemann(const CurvatureOperator& op,
                                  double sym_tol = kSymTol);

// Double trace through the pair basis; agrees with ricci_scalar.
double ricci_scalar_of_operator(const CurvatureOperator& op);

// Induced action of an n x n linear map on the pair basis (the second
// compound): rep[(ab)][(cd)] = h[a][c] h[b][d] - h[a][d] h[b][c].
// Multiplicative: bivector_rep(h1 h2) = bivector_rep(h1) bivector_rep(h2).
Mat bivector_rep(const Mat& h, const BivectorBasis& basis);

// max |(G M)^T - G M| entry, the G-symmetry residual.
double g_symmetry_residual(const CurvatureOperator& op);

}  // namespace curvorbit
