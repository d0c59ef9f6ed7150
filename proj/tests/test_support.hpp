#pragma once

// Shared generators and independent oracles for the test suites. Everything
// here is deliberately simple and separate from the library implementation
// paths it checks.

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "curvorbit/bivector.hpp"
#include "curvorbit/cartan.hpp"
#include "curvorbit/lie.hpp"
#include "curvorbit/riemann.hpp"

namespace testsup {

using curvorbit::BivectorBasis;
using curvorbit::CurvatureOperator;
using curvorbit::Mat;
using curvorbit::RiemannTensor;
using curvorbit::Signature;
using curvorbit::Vec;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double normal(std::mt19937_64& g) {
  static thread_local std::normal_distribution<double> d(0.0, 1.0);
  return d(g);
}

// Random tensor with all Riemann symmetries: start from noise, antisymmetrize
// both pairs, symmetrize the pair exchange, then project out the totally
// antisymmetric (first-Bianchi-violating) part.
inline RiemannTensor random_valid_tensor(Signature sig, std::mt19937_64& g) {
  const int n = sig.n();
  RiemannTensor raw(sig);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) raw.set(a, b, c, d, normal(g));

  RiemannTensor sym(sig);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = raw(a, b, c, d) - raw(b, a, c, d) - raw(a, b, d, c) +
                     raw(b, a, d, c);
          v += raw(c, d, a, b) - raw(d, c, a, b) - raw(c, d, b, a) +
               raw(d, c, b, a);
          sym.set(a, b, c, d, v / 8.0);
        }

  RiemannTensor out(sig);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double bianchi =
              (sym(a, b, c, d) + sym(a, c, d, b) + sym(a, d, b, c)) / 3.0;
          out.set(a, b, c, d, sym(a, b, c, d) - bianchi);
        }
  return out;
}

// Random G-symmetric operator commuting with Theta0: Euclid-symmetrize noise,
// then average with its Theta0 conjugate (Theta0 equals the diagonal G).
inline CurvatureOperator random_commuting_operator(Signature sig,
                                                   std::mt19937_64& g) {
  const BivectorBasis basis(sig);
  const int N = basis.dim();
  Mat a(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) a(i, j) = normal(g);
  a = 0.5 * (a + a.transpose()).eval();
  const Mat t = basis.G().asDiagonal();
  Mat m = 0.5 * (a + t * a * t);
  m /= m.norm();
  return {sig, m};
}

// Random proper isometry exp(sum c_i T_i + d_j P_j), scaled to keep the
// conditioning of conjugations mild.
inline Mat random_isometry(Signature sig, std::mt19937_64& g, double scale = 0.5) {
  const auto lie = curvorbit::make_lie_basis(sig);
  Mat x = Mat::Zero(sig.n(), sig.n());
  for (const auto& t : lie.t_basis) x += scale * normal(g) * t;
  for (const auto& p : lie.p_basis) x += scale * normal(g) * p;
  return x.exp();
}

inline Vec random_boost(int dim, std::mt19937_64& g, double scale = 0.75) {
  Vec b(dim);
  for (int i = 0; i < dim; ++i) b[i] = scale * normal(g);
  if (b.norm() > 2.0) b *= 2.0 / b.norm();
  return b;
}

}  // namespace testsup
