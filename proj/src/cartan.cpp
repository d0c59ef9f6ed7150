#include "curvorbit/cartan.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "curvorbit/lie.hpp"

namespace curvorbit {

namespace {

// Symmetric logarithm via eigendecomposition; input must be SPD.
Mat sym_log(const Mat& s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  Vec l = es.eigenvalues();
  for (int i = 0; i < l.size(); ++i) {
    if (l[i] <= 0.0)
      throw std::invalid_argument("sym_log: matrix not positive definite");
    l[i] = std::log(l[i]);
  }
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

CartanInvolution canonical_theta(Signature sig) {
  return {sig, frame_metric_matrix(sig)};
}

Mat boost_generator(Signature sig, const BoostParameter& b) {
  if (b.size() != sig.p * sig.q)
    throw std::invalid_argument("boost parameter needs length p*q");
  if (!b.allFinite())
    throw std::invalid_argument("boost parameter must be finite");
  Mat x = Mat::Zero(sig.n(), sig.n());
  for (int i = 0; i < sig.p; ++i)
    for (int j = 0; j < sig.q; ++j) {
      x(i, sig.p + j) = b[i * sig.q + j];
      x(sig.p + j, i) = b[i * sig.q + j];
    }
  return x;
}

CartanInvolution theta_from_boost(Signature sig, const BoostParameter& b) {
  const Mat x = boost_generator(sig, b);
  // exp(X) theta0 exp(-X) = exp(2X) theta0 since theta0 X theta0 = -X.
  return {sig, sym_exp(2.0 * x) * frame_metric_matrix(sig)};
}

BoostParameter boost_of_theta(const CartanInvolution& th) {
  const Mat g = frame_metric_matrix(th.sig);
  // g theta is SPD and equals exp(-2 X_b); recover the block coordinates.
  const Mat x = -0.5 * sym_log(g * th.theta);
  BoostParameter b(th.sig.p * th.sig.q);
  for (int i = 0; i < th.sig.p; ++i)
    for (int j = 0; j < th.sig.q; ++j) b[i * th.sig.q + j] = x(i, th.sig.p + j);
  return b;
}

Mat adapted_frame(const CartanInvolution& th) {
  return sym_exp(boost_generator(th.sig, boost_of_theta(th)));
}

bool is_valid_involution(const CartanInvolution& th, double tol,
                         std::string* why) {
  const int n = th.sig.n();
  if (th.theta.rows() != n || th.theta.cols() != n) {
    if (why) *why = "dimension mismatch";
    return false;
  }
  const Mat g = frame_metric_matrix(th.sig);
  const double inv = (th.theta * th.theta - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  const double iso = (th.theta.transpose() * g * th.theta - g).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g * th.theta + th.theta.transpose() * g));
  const double min_eig = es.eigenvalues().minCoeff();
  if (inv > tol) {
    if (why) *why = "theta^2 != I, residual " + std::to_string(inv);
    return false;
  }
  if (iso > tol) {
    if (why) *why = "not a g-isometry, residual " + std::to_string(iso);
    return false;
  }
  if (min_eig <= tol) {
    if (why) *why = "g*theta not positive definite, min eig " + std::to_string(min_eig);
    return false;
  }
  return true;
}

Mat extend_to_bivectors(const CartanInvolution& th) {
  return bivector_rep(th.theta, BivectorBasis(th.sig));
}

std::pair<RiemannTensor, RiemannTensor> em_split_tensor(
    const RiemannTensor& t, const CartanInvolution& th) {
  if (!(t.signature() == th.sig))
    throw std::invalid_argument("em_split_tensor: signature mismatch");
  const RiemannTensor tt = transform_frame(t, th.theta);
  RiemannTensor plus(t.signature()), minus(t.signature());
  const auto& a = t.data();
  const auto& b = tt.data();
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus.data()[i] = 0.5 * (a[i] + b[i]);
    minus.data()[i] = 0.5 * (a[i] - b[i]);
  }
  return {plus, minus};
}

std::pair<Mat, Mat> em_split_operator(const CurvatureOperator& op,
                                      const CartanInvolution& th) {
  if (!(op.sig == th.sig))
    throw std::invalid_argument("em_split_operator: signature mismatch");
  const BivectorBasis basis(op.sig);
  const Mat theta2 = bivector_rep(th.theta, basis);
  const Mat p = basis.G().asDiagonal() * theta2;        // Gram of <.,.>_theta
  const Mat pinv = theta2 * Mat(basis.G().asDiagonal());  // (G Theta)^-1
  const Mat adj = pinv * op.m.transpose() * p;
  return {0.5 * (op.m + adj), 0.5 * (op.m - adj)};
}

double theta_norm(const RiemannTensor& t, const CartanInvolution& th) {
  return component_norm(transform_frame(t, adapted_frame(th)));
}

namespace {

// sqrt(tr(P^-1 A^T P A)), the theta-norm of an endomorphism on bivectors.
double operator_theta_norm(const Mat& a, const BivectorBasis& basis,
                           const Mat& theta2) {
  const Mat p = basis.G().asDiagonal() * theta2;
  const Mat pinv = theta2 * Mat(basis.G().asDiagonal());
  const double v = (pinv * a.transpose() * p * a).trace();
  return std::sqrt(std::max(v, 0.0));
}

}  // namespace

double theta_norm(const CurvatureOperator& op, const CartanInvolution& th) {
  const BivectorBasis basis(op.sig);
  return operator_theta_norm(op.m, basis, bivector_rep(th.theta, basis));
}

double pe_defect(const RiemannTensor& t, const CartanInvolution& th) {
  // In the theta-adapted frame the split is the timelike-parity split and
  // the theta-norm is Euclidean.
  const RiemannTensor in_frame = transform_frame(t, adapted_frame(th));
  const auto [plus, minus] = em_split_tensor(in_frame, canonical_theta(th.sig));
  return component_norm(minus);
}

double pm_defect(const RiemannTensor& t, const CartanInvolution& th) {
  const RiemannTensor in_frame = transform_frame(t, adapted_frame(th));
  const auto [plus, minus] = em_split_tensor(in_frame, canonical_theta(th.sig));
  return component_norm(plus);
}

double pe_defect(const CurvatureOperator& op, const CartanInvolution& th) {
  const BivectorBasis basis(op.sig);
  const Mat theta2 = bivector_rep(th.theta, basis);
  const Mat p = basis.G().asDiagonal() * theta2;
  const Mat pinv = theta2 * Mat(basis.G().asDiagonal());
  const Mat minus = 0.5 * (op.m - pinv * op.m.transpose() * p);
  return operator_theta_norm(minus, basis, theta2);
}

double pm_defect(const CurvatureOperator& op, const CartanInvolution& th) {
  const BivectorBasis basis(op.sig);
  const Mat theta2 = bivector_rep(th.theta, basis);
  const Mat p = basis.G().asDiagonal() * theta2;
  const Mat pinv = theta2 * Mat(basis.G().asDiagonal());
  const Mat plus = 0.5 * (op.m + pinv * op.m.transpose() * p);
  return operator_theta_norm(plus, basis, theta2);
}

}  // namespace curvorbit
