#include "curvorbit/bivector.hpp"

#include <sstream>

namespace curvorbit {

BivectorBasis::BivectorBasis(Signature sig) : sig_(sig), n_(sig.n()) {
  flat_.assign(static_cast<std::size_t>(n_) * n_, -1);
  const Vec g = framed_metric(sig).g;
  pairs_.reserve(sig.bivector_dim());
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) {
      flat_[a * n_ + b] = static_cast<int>(pairs_.size());
      pairs_.emplace_back(a, b);
    }
  G_.resize(dim());
  for (int A = 0; A < dim(); ++A)
    G_[A] = g[pairs_[A].first] * g[pairs_[A].second];
}

CurvatureOperator riemann_to_operator(const RiemannTensor& t) {
  const BivectorBasis basis(t.signature());
  const Vec g = framed_metric(t.signature()).g;
  const int N = basis.dim();
  Mat m(N, N);
  for (int A = 0; A < N; ++A) {
    const auto [a, b] = basis.pair(A);
    for (int B = 0; B < N; ++B) {
      const auto [c, d] = basis.pair(B);
      m(A, B) = g[a] * g[b] * t(a, b, c, d);
    }
  }
  return {t.signature(), std::move(m)};
}

RiemannTensor operator_to_riemann(const CurvatureOperator& op, double sym_tol) {
  const BivectorBasis basis(op.sig);
  const double resid = g_symmetry_residual(op);
  if (resid > sym_tol * std::max(1.0, op.m.cwiseAbs().maxCoeff())) {
    std::ostringstream os;
    os << "not a curvature-type operator: G-symmetry residual " << resid;
    throw std::invalid_argument(os.str());
  }
  RiemannTensor t(op.sig);
  const int N = basis.dim();
  for (int A = 0; A < N; ++A) {
    const auto [a, b] = basis.pair(A);
    for (int B = 0; B < N; ++B) {
      const auto [c, d] = basis.pair(B);
      // R_{abcd} = G[A] * M[A][B] on the a<b, c<d representatives.
      t.set_orbit(a, b, c, d, basis.G()[A] * op.m(A, B));
    }
  }
  return t;
}

double ricci_scalar_of_operator(const CurvatureOperator& op) {
  return 2.0 * op.m.trace();
}

Mat bivector_rep(const Mat& h, const BivectorBasis& basis) {
  const int N = basis.dim();
  Mat rep(N, N);
  for (int A = 0; A < N; ++A) {
    const auto [a, b] = basis.pair(A);
    for (int B = 0; B < N; ++B) {
      const auto [c, d] = basis.pair(B);
      rep(A, B) = h(a, c) * h(b, d) - h(a, d) * h(b, c);
    }
  }
  return rep;
}

double g_symmetry_residual(const CurvatureOperator& op) {
  const BivectorBasis basis(op.sig);
  const Mat gm = basis.G().asDiagonal() * op.m;
  return (gm - gm.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace curvorbit
