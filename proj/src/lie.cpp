#include "curvorbit/lie.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace curvorbit {

LieAlgebraBasis make_lie_basis(Signature sig) {
  LieAlgebraBasis basis;
  basis.sig = sig;
  const int n = sig.n();
  auto rot = [n](int i, int j) {
    Mat x = Mat::Zero(n, n);
    x(i, j) = 1.0;
    x(j, i) = -1.0;
    return x;
  };
  // Rotations within the timelike block, then within the spacelike block.
  for (int i = 0; i < sig.p; ++i)
    for (int j = i + 1; j < sig.p; ++j) basis.t_basis.push_back(rot(i, j));
  for (int i = sig.p; i < n; ++i)
    for (int j = i + 1; j < n; ++j) basis.t_basis.push_back(rot(i, j));
  // Boosts: single-entry symmetric off-diagonal blocks, row-major in (i,j).
  for (int i = 0; i < sig.p; ++i)
    for (int j = 0; j < sig.q; ++j) {
      Mat x = Mat::Zero(n, n);
      x(i, sig.p + j) = 1.0;
      x(sig.p + j, i) = 1.0;
      basis.p_basis.push_back(x);
    }
  return basis;
}

double antisymmetry_residual(Signature sig, const Mat& x) {
  const Mat g = frame_metric_matrix(sig);
  return (x.transpose() * g + g * x).cwiseAbs().maxCoeff();
}

Mat induced_rep(const Mat& x, const BivectorBasis& basis) {
  const int n = basis.signature().n();
  if (x.rows() != n || x.cols() != n)
    throw std::invalid_argument("induced_rep: dimension mismatch");
  if (antisymmetry_residual(basis.signature(), x) >
      1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("induced_rep: X not g-antisymmetric");

  const int N = basis.dim();
  Mat rep(N, N);
  for (int B = 0; B < N; ++B) {
    const auto [c, d] = basis.pair(B);
    // Image of e_c ^ e_d as the skew matrix X B + B X^T, B = E_cd - E_dc.
    for (int A = 0; A < N; ++A) {
      const auto [a, b] = basis.pair(A);
      double v = 0.0;
      if (b == d) v += x(a, c);
      if (b == c) v -= x(a, d);
      if (a == c) v += x(b, d);
      if (a == d) v -= x(b, c);
      rep(A, B) = v;
    }
  }
  return rep;
}

Mat sym_exp(const Mat& s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  Vec l = es.eigenvalues();
  for (int i = 0; i < l.size(); ++i) l[i] = std::exp(l[i]);
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().transpose();
}

Mat reorthogonalize(Signature sig, const Mat& h) {
  // Indefinite polar iteration: fixed points satisfy h = J h^-T J.
  const Mat j = frame_metric_matrix(sig);
  Mat cur = h;
  for (int it = 0; it < 8; ++it) {
    const Mat next = 0.5 * (cur + j * cur.inverse().transpose() * j);
    const double delta = (next - cur).cwiseAbs().maxCoeff();
    cur = next;
    if (delta < 1e-15) break;
  }
  return cur;
}

double isometry_residual(Signature sig, const Mat& h) {
  const Mat g = frame_metric_matrix(sig);
  return (h.transpose() * g * h - g).cwiseAbs().maxCoeff();
}

}  // namespace curvorbit
