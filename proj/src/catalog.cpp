#include "curvorbit/catalog.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace curvorbit {

namespace {

// Coordinate-frame R_{abcd} (all indices down) by central differences.
// Gamma^a_{bc} needs metric derivatives at offset points, so the metric is
// sampled on a two-level stencil around m.point.
std::vector<double> coordinate_curvature(const CoordinateMetric& m, double h) {
  const int n = m.n;
  auto metric_at = [&](const Vec& x) -> Mat {
    Mat g = m.g_fn(x);
    if (g.rows() != n || g.cols() != n)
      throw std::invalid_argument("coordinate metric has wrong dimensions");
    return 0.5 * (g + g.transpose());
  };

  auto christoffel = [&](const Vec& y) {
    const Mat g0 = metric_at(y);
    const Mat ginv = g0.inverse();
    std::vector<Mat> dg(n);
    for (int k = 0; k < n; ++k) {
      Vec yp = y, ym = y;
      yp[k] += h;
      ym[k] -= h;
      dg[k] = (metric_at(yp) - metric_at(ym)) / (2.0 * h);
    }
    std::vector<Mat> gam(n, Mat::Zero(n, n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double s = 0.0;
          for (int d = 0; d < n; ++d)
            s += ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
          gam[a](b, c) = 0.5 * s;
        }
    return gam;
  };

  const auto gam0 = christoffel(m.point);
  std::vector<std::vector<Mat>> dgam(n);
  for (int c = 0; c < n; ++c) {
    Vec yp = m.point, ym = m.point;
    yp[c] += h;
    ym[c] -= h;
    const auto gp = christoffel(yp);
    const auto gm = christoffel(ym);
    dgam[c].resize(n);
    for (int a = 0; a < n; ++a) dgam[c][a] = (gp[a] - gm[a]) / (2.0 * h);
  }

  const Mat g0 = metric_at(m.point);
  std::vector<double> out(static_cast<std::size_t>(n) * n * n * n, 0.0);
  auto at = [n](std::vector<double>& v, int a, int b, int c, int d) -> double& {
    return v[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d];
  };

  // R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
  //           + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double r = dgam[c][a](d, b) - dgam[d][a](c, b);
          for (int e = 0; e < n; ++e)
            r += gam0[a](c, e) * gam0[e](d, b) - gam0[a](d, e) * gam0[e](c, b);
          // lower the first index as we accumulate
          for (int a2 = 0; a2 < n; ++a2) at(out, a2, b, c, d) += g0(a2, a) * r;
        }
  return out;
}

}  // namespace

Signature oracle_signature(const CoordinateMetric& m) {
  const Mat g0 = 0.5 * (m.g_fn(m.point) + m.g_fn(m.point).transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(g0);
  int p = 0;
  for (int i = 0; i < m.n; ++i)
    if (es.eigenvalues()[i] < 0.0) ++p;
  return {p, m.n - p};
}

RiemannTensor curvature_oracle(const CoordinateMetric& m, double h) {
  if (h < 1e-6 || h > 1e-2)
    throw std::invalid_argument("oracle step h must lie in [1e-6, 1e-2]");
  const int n = m.n;
  const Mat g0 = 0.5 * (m.g_fn(m.point) + m.g_fn(m.point).transpose());
  if (std::abs(g0.determinant()) <= 1e-12)
    throw std::invalid_argument("metric degenerate at the given point");

  // One Richardson level on the second-order central differences.
  const auto coarse = coordinate_curvature(m, h);
  const auto fine = coordinate_curvature(m, 0.5 * h);
  std::vector<double> coords(coarse.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    coords[i] = (4.0 * fine[i] - coarse[i]) / 3.0;

  // Orthonormal frame from the metric eigendecomposition, negative-norm
  // directions first, signs fixed by the largest component of each vector.
  Eigen::SelfAdjointEigenSolver<Mat> es(g0);
  const Vec evals = es.eigenvalues();  // ascending: negatives first
  Mat frame(n, n);
  int p = 0;
  for (int i = 0; i < n; ++i) {
    if (evals[i] < 0.0) ++p;
    Vec v = es.eigenvectors().col(i);
    int arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0.0) v = -v;
    frame.col(i) = v / std::sqrt(std::abs(evals[i]));
  }

  const Signature sig(p, n - p);
  RiemannTensor coord_t(sig);
  coord_t.data() = coords;
  RiemannTensor result = transform_frame(coord_t, frame);

  const auto rep = validate_riemann(result, 1e-6);
  if (!rep.ok) {
    std::ostringstream os;
    os << "oracle step too coarse: " << rep.worst.kind << " residual "
       << rep.worst.magnitude << " at (" << rep.worst.indices[0] << ","
       << rep.worst.indices[1] << "," << rep.worst.indices[2] << ","
       << rep.worst.indices[3] << ")";
    throw std::runtime_error(os.str());
  }
  return result;
}

CoordinateMetric holomorphic_example_slice(int n, Slice slice,
                                           bool apply_anti_isometry) {
  if (n < 2) throw std::invalid_argument("slice needs n >= 2");
  CoordinateMetric m;
  m.n = n;
  m.point = Vec::Zero(n);
  if (slice == Slice::sphere) {
    m.g_fn = [n](const Vec& x) -> Mat {
      const double s = 1.0 + x.squaredNorm();
      return Mat::Identity(n, n) / (s * s);
    };
  } else {
    // z = iy gives dz^2 = -dy^2 and 1 + z^2 = 1 - y^2: the induced metric is
    // negative definite unless the g -> -g convention is applied.
    const double flip = apply_anti_isometry ? 1.0 : -1.0;
    m.anti_isometry = apply_anti_isometry;
    m.g_fn = [n, flip](const Vec& y) -> Mat {
      const double r2 = y.squaredNorm();
      if (r2 >= 1.0)
        throw std::domain_error("hyperbolic slice defined only for |y| < 1");
      const double s = 1.0 - r2;
      return flip * Mat::Identity(n, n) / (s * s);
    };
  }
  return m;
}

namespace {

RiemannTensor constant_curvature_tensor(Signature sig, double k) {
  const Vec g = framed_metric(sig).g;
  RiemannTensor t(sig);
  const int n = sig.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double gac = a == c ? g[a] : 0.0;
          const double gbd = b == d ? g[b] : 0.0;
          const double gad = a == d ? g[a] : 0.0;
          const double gbc = b == c ? g[b] : 0.0;
          t.set(a, b, c, d, k * (gac * gbd - gad * gbc));
        }
  return t;
}

RiemannTensor schwarzschild_tensor(double r_s, double r) {
  if (!(r > r_s && r_s > 0.0))
    throw std::invalid_argument("schwarzschild_point needs r > r_s > 0");
  const Signature sig(1, 3);
  RiemannTensor t(sig);
  const double e = r_s / (2.0 * r * r * r);
  // Static orthonormal frame (t,r,theta,phi); Ricci-flat type D data.
  t.set_orbit(0, 1, 0, 1, -2.0 * e);
  t.set_orbit(0, 2, 0, 2, e);
  t.set_orbit(0, 3, 0, 3, e);
  t.set_orbit(1, 2, 1, 2, -e);
  t.set_orbit(1, 3, 1, 3, -e);
  t.set_orbit(2, 3, 2, 3, 2.0 * e);
  return t;
}

RiemannTensor pp_wave_tensor(double a1, double a2) {
  if (a1 == 0.0 && a2 == 0.0)
    throw std::invalid_argument("pp_wave needs a nonzero amplitude");
  const Signature sig(1, 3);
  RiemannTensor t(sig);
  const int n = 4;
  // Null covector u = (e^0 + e^3)/sqrt(2); traceless transverse amplitude.
  Vec u = Vec::Zero(n);
  u[0] = 1.0 / std::sqrt(2.0);
  u[3] = 1.0 / std::sqrt(2.0);
  Mat amp = Mat::Zero(n, n);
  amp(1, 1) = a1;
  amp(2, 2) = -a1;
  amp(1, 2) = amp(2, 1) = a2;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          t.set(a, b, c, d, u[a] * amp(b, d) * u[c] - u[b] * amp(a, d) * u[c] -
                                u[a] * amp(b, c) * u[d] +
                                u[b] * amp(a, c) * u[d]);
  return t;
}

RiemannTensor hand_built_pm_tensor() {
  // G-symmetric operator anticommuting with Theta0 in (1,3):
  // M = [[0, B], [-B^T, 0]] on the pair blocks {01,02,03} / {12,13,23}.
  // First Bianchi pins B[1][1] = B[0][2] + B[2][0].
  const Signature sig(1, 3);
  Mat b(3, 3);
  b << 0.4, 0.9, 0.1,
       0.5, 0.3, 0.6,
       0.2, 0.8, -0.7;
  Mat m = Mat::Zero(6, 6);
  m.block<3, 3>(0, 3) = b;
  m.block<3, 3>(3, 0) = -b.transpose();
  return operator_to_riemann({sig, m});
}

std::vector<double> parse_args(const std::string& name, std::string* base) {
  const auto open = name.find('(');
  if (open == std::string::npos) {
    *base = name;
    return {};
  }
  if (name.back() != ')')
    throw std::invalid_argument("malformed catalog name: " + name);
  *base = name.substr(0, open);
  std::vector<double> args;
  std::string body = name.substr(open + 1, name.size() - open - 2);
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      args.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad catalog argument '" + tok + "' in " + name);
    }
  }
  return args;
}

int iarg(const std::vector<double>& a, std::size_t i, int dflt) {
  return i < a.size() ? static_cast<int>(std::llround(a[i])) : dflt;
}
double darg(const std::vector<double>& a, std::size_t i, double dflt) {
  return i < a.size() ? a[i] : dflt;
}

ExpectedSummary expect(Verdict rpe, Verdict pe, Verdict pm, Verdict rpm,
                       WickVerdict w) {
  return {rpe, pe, pm, rpm, w};
}

}  // namespace

CatalogEntry builtin(const std::string& name) {
  std::string base;
  const auto args = parse_args(name, &base);
  const auto Y = Verdict::yes;
  const auto N = Verdict::no;

  if (base == "flat") {
    const Signature sig(iarg(args, 0, 1), iarg(args, 1, 3));
    CatalogEntry e{name, sig, RiemannTensor(sig),
                   expect(Y, Y, Y, Y,
                          sig.definite() ? WickVerdict::trivial
                                         : WickVerdict::necessary_condition_passed),
                   "zero curvature"};
    return e;
  }
  if (base == "constant_curvature" || base == "de_sitter" ||
      base == "anti_de_sitter" || base == "sphere_slice" ||
      base == "hyperbolic_slice") {
    Signature sig(1, 3);
    double k = 1.0;
    std::string prov = "constant curvature";
    if (base == "constant_curvature") {
      sig = Signature(iarg(args, 0, 1), iarg(args, 1, 3));
      k = darg(args, 2, 1.0);
    } else if (base == "de_sitter") {
      sig = Signature(1, iarg(args, 0, 4) - 1);
      k = 1.0;
      prov = "de Sitter, Lorentzian constant curvature +1";
    } else if (base == "anti_de_sitter") {
      sig = Signature(1, iarg(args, 0, 4) - 1);
      k = -1.0;
      prov = "anti-de Sitter, Lorentzian constant curvature -1";
    } else if (base == "sphere_slice") {
      sig = Signature(0, iarg(args, 0, 3));
      k = 4.0;
      prov = "sphere slice of the holomorphic family at the origin";
    } else {
      sig = Signature(iarg(args, 0, 3), 0);
      k = 4.0;
      prov = "hyperbolic slice, negative definite (anti-isometry convention)";
    }
    if (k == 0.0)
      throw std::invalid_argument("constant_curvature needs k != 0");
    // Weyl vanishes, so the space is simultaneously PE and (vacuously) PM.
    CatalogEntry e{name, sig, constant_curvature_tensor(sig, k),
                   expect(Y, Y, Y, N,
                          sig.definite() ? WickVerdict::trivial
                                         : WickVerdict::necessary_condition_passed),
                   prov};
    return e;
  }
  if (base == "schwarzschild_point") {
    const double r_s = darg(args, 0, 1.0);
    const double r = darg(args, 1, 3.0);
    return {name, Signature(1, 3), schwarzschild_tensor(r_s, r),
            expect(Y, Y, N, N, WickVerdict::necessary_condition_passed),
            "Schwarzschild static frame, vacuum type D"};
  }
  if (base == "pp_wave") {
    const double a1 = darg(args, 0, 1.0);
    const double a2 = darg(args, 1, 0.5);
    return {name, Signature(1, 3), pp_wave_tensor(a1, a2),
            expect(N, N, N, N, WickVerdict::obstructed),
            "vacuum pp-wave, type N; orbit collapses"};
  }
  if (base == "hand_built_pm") {
    return {name, Signature(1, 3), hand_built_pm_tensor(),
            expect(N, N, Y, Y, WickVerdict::obstructed),
            "pure minus-part operator at the canonical involution"};
  }
  throw std::invalid_argument("unknown catalog name: " + name);
}

CatalogEntry apply_anti_isometry(const CatalogEntry& e) {
  const Signature sig = e.sig;
  const Signature flipped(sig.q, sig.p);
  // New frame order keeps timelike directions first: old spacelike block
  // becomes the new timelike block.
  auto perm = [&](int i) { return i < sig.q ? sig.p + i : i - sig.q; };
  RiemannTensor t(flipped);
  const int n = sig.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          t.set(a, b, c, d, -e.riemann(perm(a), perm(b), perm(c), perm(d)));
  CatalogEntry out = e;
  out.name = e.name + "!anti";
  out.sig = flipped;
  out.riemann = t;
  out.provenance = e.provenance + "; after g -> -g";
  return out;
}

std::vector<std::string> catalog_names() {
  return {"flat(1,3)",
          "constant_curvature(1,3,1)",
          "constant_curvature(0,3,1)",
          "de_sitter(4)",
          "anti_de_sitter(4)",
          "schwarzschild_point(1,3)",
          "pp_wave(1,0.5)",
          "hand_built_pm",
          "sphere_slice(3)",
          "hyperbolic_slice(3)"};
}

}  // namespace curvorbit
