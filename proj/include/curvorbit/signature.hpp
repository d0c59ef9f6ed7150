#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace curvorbit {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Frame signature (p,q): p timelike directions (frame norm -1) listed first,
// then q spacelike directions (frame norm +1). n = p+q >= 2.
struct Signature {
  int p = 0;
  int q = 2;

  Signature() = default;
  Signature(int p_, int q_) : p(p_), q(q_) {
    if (p < 0 || q < 0 || p + q < 2)
      throw std::invalid_argument("signature: need p >= 0, q >= 0, p+q >= 2");
  }

  int n() const { return p + q; }
  int bivector_dim() const { return n() * (n() - 1) / 2; }
  bool definite() const { return p == 0 || q == 0; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

// Diagonal orthonormal-frame metric, g = diag(-1 x p, +1 x q).
struct FramedMetric {
  Signature sig;
  Vec g;
};

inline FramedMetric framed_metric(Signature sig) {
  Vec g = Vec::Ones(sig.n());
  g.head(sig.p).setConstant(-1.0);
  return {sig, g};
}

inline Mat frame_metric_matrix(Signature sig) {
  return Mat(framed_metric(sig).g.asDiagonal());
}

}  // namespace curvorbit
