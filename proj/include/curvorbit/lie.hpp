#pragma once

#include <vector>

#include "curvorbit/bivector.hpp"
#include "curvorbit/signature.hpp"

namespace curvorbit {

// Bases of the Cartan decomposition o(p,q) = t0 + p0 at the canonical
// involution: t0 = block rotations (g-antisymmetric, commuting with theta0),
// p0 = boosts (symmetric, anticommuting with theta0). Trace-normalized so
// tr(X_i^T X_j) = 2 delta_ij.
struct LieAlgebraBasis {
  Signature sig;
  std::vector<Mat> t_basis;
  std::vector<Mat> p_basis;
};

LieAlgebraBasis make_lie_basis(Signature sig);

// max |X^T g + g X| entry; zero for elements of o(p,q).
double antisymmetry_residual(Signature sig, const Mat& X);

// Derivative of the pair-basis representation: lambda(X)(u^v) = Xu^v + u^Xv.
// A Lie algebra homomorphism; symmetric matrices map to symmetric ones and
// g-block rotations to skew ones. Throws when X is not g-antisymmetric.
Mat induced_rep(const Mat& X, const BivectorBasis& basis);

// exp of a symmetric matrix via its eigendecomposition.
Mat sym_exp(const Mat& s);

// Projects a near-isometry back onto O(p,q) (indefinite polar iteration).
Mat reorthogonalize(Signature sig, const Mat& h);

// max |h^T g h - g| entry.
double isometry_residual(Signature sig, const Mat& h);

}  // namespace curvorbit
