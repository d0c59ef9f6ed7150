#include "curvorbit/riemann.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace curvorbit {

namespace {

struct OrbitImage {
  int a, b, c, d;
  double sign;
};

// The 8 images of (a,b,c,d) under the index symmetries.
std::array<OrbitImage, 8> symmetry_orbit(int a, int b, int c, int d) {
  return {{{a, b, c, d, +1},
           {b, a, c, d, -1},
           {a, b, d, c, -1},
           {b, a, d, c, +1},
           {c, d, a, b, +1},
           {d, c, a, b, -1},
           {c, d, b, a, -1},
           {d, c, b, a, +1}}};
}

void check_indices(Signature sig, const TensorEntry& e) {
  const int n = sig.n();
  for (int i : {e.a, e.b, e.c, e.d}) {
    if (i < 0 || i >= n) {
      std::ostringstream os;
      os << "tensor entry index (" << e.a << "," << e.b << "," << e.c << ","
         << e.d << ") outside [0," << n << ")";
      throw std::invalid_argument(os.str());
    }
  }
}

}  // namespace

void RiemannTensor::set_orbit(int a, int b, int c, int d, double v) {
  for (const auto& im : symmetry_orbit(a, b, c, d))
    set(im.a, im.b, im.c, im.d, im.sign * v);
}

double RiemannTensor::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

RiemannTensor& RiemannTensor::operator+=(const RiemannTensor& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

RiemannTensor& RiemannTensor::operator-=(const RiemannTensor& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

RiemannTensor& RiemannTensor::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

RiemannTensor tensor_from_entries(Signature sig,
                                  const std::vector<TensorEntry>& entries,
                                  bool symmetry_completion, double sym_tol) {
  RiemannTensor t(sig);
  const int n = sig.n();
  std::vector<char> assigned(static_cast<std::size_t>(n) * n * n * n, 0);
  auto flat = [n](int a, int b, int c, int d) {
    return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d;
  };

  for (const auto& e : entries) {
    check_indices(sig, e);
    if (e.a == e.b || e.c == e.d) {
      if (std::abs(e.value) > sym_tol) {
        std::ostringstream os;
        os << "entry (" << e.a << "," << e.b << "," << e.c << "," << e.d
           << ") has repeated pair index but nonzero value " << e.value;
        throw std::invalid_argument(os.str());
      }
      continue;
    }
    if (symmetry_completion) {
      for (const auto& im : symmetry_orbit(e.a, e.b, e.c, e.d)) {
        const double v = im.sign * e.value;
        const auto k = flat(im.a, im.b, im.c, im.d);
        if (assigned[k] &&
            std::abs(t(im.a, im.b, im.c, im.d) - v) >
                sym_tol * std::max(1.0, std::abs(v))) {
          std::ostringstream os;
          os << "symmetry completion conflict at (" << im.a << "," << im.b
             << "," << im.c << "," << im.d << "): " << t(im.a, im.b, im.c, im.d)
             << " vs " << v;
          throw std::invalid_argument(os.str());
        }
        t.set(im.a, im.b, im.c, im.d, v);
        assigned[k] = 1;
      }
    } else {
      const auto k = flat(e.a, e.b, e.c, e.d);
      if (assigned[k] && std::abs(t(e.a, e.b, e.c, e.d) - e.value) >
                             sym_tol * std::max(1.0, std::abs(e.value))) {
        std::ostringstream os;
        os << "duplicate entry conflict at (" << e.a << "," << e.b << ","
           << e.c << "," << e.d << ")";
        throw std::invalid_argument(os.str());
      }
      t.set(e.a, e.b, e.c, e.d, e.value);
      assigned[k] = 1;
    }
  }
  return t;
}

ValidationReport validate_riemann(const RiemannTensor& t, double sym_tol) {
  const int n = t.dim();
  ValidationReport rep;
  rep.tolerance = sym_tol * std::max(1.0, t.max_abs());

  SymmetryViolation worst_ab{"antisymmetry-ab", {0, 0, 0, 0}, 0.0};
  SymmetryViolation worst_cd{"antisymmetry-cd", {0, 0, 0, 0}, 0.0};
  SymmetryViolation worst_pair{"pair-symmetry", {0, 0, 0, 0}, 0.0};
  SymmetryViolation worst_bianchi{"first-bianchi", {0, 0, 0, 0}, 0.0};

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double v = t(a, b, c, d);
          double r = std::abs(t(b, a, c, d) + v);
          if (r > worst_ab.magnitude) worst_ab = {"antisymmetry-ab", {b, a, c, d}, r};
          r = std::abs(t(a, b, d, c) + v);
          if (r > worst_cd.magnitude) worst_cd = {"antisymmetry-cd", {a, b, d, c}, r};
          r = std::abs(t(c, d, a, b) - v);
          if (r > worst_pair.magnitude) worst_pair = {"pair-symmetry", {c, d, a, b}, r};
          r = std::abs(v + t(a, c, d, b) + t(a, d, b, c));
          if (r > worst_bianchi.magnitude)
            worst_bianchi = {"first-bianchi", {a, b, c, d}, r};
        }

  rep.worst = worst_ab;
  for (const auto& w : {worst_cd, worst_pair, worst_bianchi})
    if (w.magnitude > rep.worst.magnitude) rep.worst = w;
  for (const auto& w : {worst_ab, worst_cd, worst_pair, worst_bianchi})
    if (w.magnitude > rep.tolerance) {
      rep.ok = false;
      rep.violations.push_back(w);
    }
  return rep;
}

Mat ricci(const RiemannTensor& t) {
  const int n = t.dim();
  const Vec g = framed_metric(t.signature()).g;
  Mat ric = Mat::Zero(n, n);
  for (int b = 0; b < n; ++b)
    for (int d = 0; d < n; ++d) {
      double s = 0.0;
      for (int a = 0; a < n; ++a) s += g[a] * t(a, b, a, d);
      ric(b, d) = s;
    }
  return ric;
}

double ricci_scalar(const RiemannTensor& t) {
  const Vec g = framed_metric(t.signature()).g;
  const Mat ric = ricci(t);
  double s = 0.0;
  for (int b = 0; b < t.dim(); ++b) s += g[b] * ric(b, b);
  return s;
}

WeylTensor weyl(const RiemannTensor& t) {
  const int n = t.dim();
  if (n < 3) throw std::invalid_argument("Weyl undefined for n < 3");
  WeylTensor c(t.signature());
  if (n == 3) return c;  // identically zero

  const Vec g = framed_metric(t.signature()).g;
  const Mat ric = ricci(t);
  const double scal = ricci_scalar(t);
  auto gd = [&](int a, int b) { return a == b ? g[a] : 0.0; };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) {
          const double kn_ric = gd(a, cc) * ric(b, d) - gd(a, d) * ric(b, cc) +
                                gd(b, d) * ric(a, cc) - gd(b, cc) * ric(a, d);
          const double kn_gg =
              2.0 * (gd(a, cc) * gd(b, d) - gd(a, d) * gd(b, cc));
          c.set(a, b, cc, d,
                t(a, b, cc, d) - kn_ric / (n - 2) +
                    scal * kn_gg / (2.0 * (n - 1) * (n - 2)));
        }
  return c;
}

RiemannTensor transform_frame(const RiemannTensor& t, const Mat& h) {
  const int n = t.dim();
  if (h.rows() != n || h.cols() != n)
    throw std::invalid_argument("transform_frame: dimension mismatch");

  // Contract one slot at a time: T'(.., x_k, ..) = T(.., h x_k, ..).
  std::vector<double> cur = t.data(), next(cur.size(), 0.0);
  const std::size_t nn = static_cast<std::size_t>(n);
  for (int slot = 0; slot < 4; ++slot) {
    std::fill(next.begin(), next.end(), 0.0);
    std::size_t stride = 1;
    for (int s = slot + 1; s < 4; ++s) stride *= nn;
    const std::size_t outer = cur.size() / (stride * nn);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = o * nn * stride + inner;
        for (int newi = 0; newi < n; ++newi) {
          double s = 0.0;
          for (int oldi = 0; oldi < n; ++oldi)
            s += h(oldi, newi) * cur[base + oldi * stride];
          next[base + newi * stride] = s;
        }
      }
    cur.swap(next);
  }
  RiemannTensor out(t.signature());
  out.data() = cur;
  return out;
}

double component_norm(const RiemannTensor& t) {
  double s = 0.0;
  for (double v : t.data()) s += v * v;
  return std::sqrt(s);
}

}  // namespace curvorbit
