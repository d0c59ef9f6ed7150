#pragma once

#include <string>
#include <utility>

#include "curvorbit/bivector.hpp"
#include "curvorbit/riemann.hpp"
#include "curvorbit/signature.hpp"

namespace curvorbit {

// Relative tolerance separating numerical noise from genuine magnetic parts.
inline constexpr double kPeTol = 1e-9;

// Involutive g-isometry theta with g*theta symmetric positive definite.
struct CartanInvolution {
  Signature sig;
  Mat theta;
};

// Coordinates against the p*q single-entry symmetric generators of the
// non-compact part of o(p,q). b = 0 encodes the canonical involution.
using BoostParameter = Vec;

// theta0 = diag(-1 x p, +1 x q).
CartanInvolution canonical_theta(Signature sig);

// Symmetric generator with off-diagonal blocks given by b:
// X[i][p+j] = X[p+j][i] = b[i*q + j].
Mat boost_generator(Signature sig, const BoostParameter& b);

// theta_b = exp(X_b) theta0 exp(-X_b) = exp(2 X_b) theta0.
CartanInvolution theta_from_boost(Signature sig, const BoostParameter& b);

// Inverse parameterization: recovers b with theta_from_boost(b) = th.
BoostParameter boost_of_theta(const CartanInvolution& th);

// Frame change h = exp(X_b) into the theta-adapted frame (th = h theta0 h^-1).
Mat adapted_frame(const CartanInvolution& th);

// Validity: theta^2 = I, theta^T g theta = g, g*theta positive definite.
bool is_valid_involution(const CartanInvolution& th, double tol = 1e-10,
                         std::string* why = nullptr);

// Lambda^2(theta) on the pair basis; squares to the identity.
Mat extend_to_bivectors(const CartanInvolution& th);

// Eigen-decomposition of a tensor under theta: T = T+ + T-,
// theta(T+-) = +-T+-. For the canonical theta, T+ collects components with
// an even number of timelike indices.
std::pair<RiemannTensor, RiemannTensor> em_split_tensor(
    const RiemannTensor& t, const CartanInvolution& th);

// Theta-symmetric / antisymmetric parts of the operator. For G-symmetric M
// this reduces to R- = (M - Theta M Theta)/2 = (1/2)[M, Theta] Theta.
std::pair<Mat, Mat> em_split_operator(const CurvatureOperator& op,
                                      const CartanInvolution& th);

// Theta-norms: Euclidean component norm in the theta-adapted frame.
double theta_norm(const RiemannTensor& t, const CartanInvolution& th);
double theta_norm(const CurvatureOperator& op, const CartanInvolution& th);

// ||minus part||_theta; zero (relative to theta_norm, at kPeTol) iff the
// object is purely electric with respect to th.
double pe_defect(const RiemannTensor& t, const CartanInvolution& th);
double pe_defect(const CurvatureOperator& op, const CartanInvolution& th);

// ||plus part||_theta, the purely-magnetic residual.
double pm_defect(const RiemannTensor& t, const CartanInvolution& th);
double pm_defect(const CurvatureOperator& op, const CartanInvolution& th);

}  // namespace curvorbit
