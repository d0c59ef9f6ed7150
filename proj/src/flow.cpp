#include "curvorbit/flow.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "curvorbit/parallel.hpp"

namespace curvorbit {

std::string to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::minimal_found: return "minimal-found";
    case FlowStatus::norm_collapse: return "norm-collapse";
    case FlowStatus::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

CurvatureOperator act(const Mat& h, const CurvatureOperator& op, double iso_tol) {
  const double resid = isometry_residual(op.sig, h);
  if (resid > iso_tol)
    throw std::invalid_argument("act: h is not a g-isometry, residual " +
                                std::to_string(resid));
  const BivectorBasis basis(op.sig);
  const Mat g = frame_metric_matrix(op.sig);
  const Mat hinv = g * h.transpose() * g;  // exact inverse for isometries
  return {op.sig, bivector_rep(h, basis) * op.m * bivector_rep(hinv, basis)};
}

double norm_functional(const CurvatureOperator& op) { return op.m.squaredNorm(); }

namespace {

Vec gradient_from_reps(const Mat& m, const std::vector<Mat>& p_reps) {
  Vec grad(static_cast<int>(p_reps.size()));
  for (std::size_t i = 0; i < p_reps.size(); ++i) {
    const Mat comm = p_reps[i] * m - m * p_reps[i];
    grad[static_cast<int>(i)] = 2.0 * comm.cwiseProduct(m).sum();
  }
  return grad;
}

std::vector<Mat> p_reps_of(const LieAlgebraBasis& basis,
                           const BivectorBasis& biv) {
  std::vector<Mat> reps;
  reps.reserve(basis.p_basis.size());
  for (const auto& x : basis.p_basis) reps.push_back(induced_rep(x, biv));
  return reps;
}

double commutator_norm(const Mat& m, const Vec& theta0_diag) {
  const Mat t = theta0_diag.asDiagonal();
  return (m * t - t * m).norm();
}

double trace_drift_between(const Mat& a, const Mat& b) {
  const int kmax = std::min<int>(static_cast<int>(a.rows()), 8);
  Mat pa = Mat::Identity(a.rows(), a.cols());
  Mat pb = pa;
  double drift = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    pa = pa * a;
    pb = pb * b;
    drift = std::max(drift, std::abs(pa.trace() - pb.trace()));
  }
  return drift;
}

// Descent direction prepared for cheap evaluation along exp(t X):
// f(t) = sum_ij W_ij^2 exp(2 t (l_i - l_j)) with X_rep = Q diag(l) Q^T.
struct Ray {
  Mat q;
  Vec l;
  Mat w;
  double f_at(double t) const {
    double s = 0.0;
    for (int i = 0; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j) {
        const double e = 2.0 * t * (l[i] - l[j]);
        if (e > 700.0) return std::numeric_limits<double>::infinity();
        s += w(i, j) * w(i, j) * std::exp(e);
      }
    return s;
  }
  Mat m_at(double t) const {
    Mat inner = w;
    for (int i = 0; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j)
        inner(i, j) *= std::exp(t * (l[i] - l[j]));
    return q * inner * q.transpose();
  }
};

Ray make_ray(const Mat& m, const Mat& x_rep) {
  Eigen::SelfAdjointEigenSolver<Mat> es(x_rep);
  return {es.eigenvectors(), es.eigenvalues(),
          es.eigenvectors().transpose() * m * es.eigenvectors()};
}

// Backtracking from step0, then greedy doubling while f keeps dropping.
// Returns accepted step, or 0 when the search stalls below 1e-16.
double line_search(const Ray& ray, double f0, double step0, bool expand) {
  double t = step0;
  while (t >= 1e-16 && !(ray.f_at(t) < f0)) t *= 0.5;
  if (t < 1e-16) return 0.0;
  if (expand) {
    double ft = ray.f_at(t);
    for (int i = 0; i < 60; ++i) {
      const double ft2 = ray.f_at(2.0 * t);
      if (!(ft2 < ft)) break;
      t *= 2.0;
      ft = ft2;
    }
  }
  return t;
}

}  // namespace

Vec moment_gradient(const CurvatureOperator& op, const LieAlgebraBasis& basis) {
  const BivectorBasis biv(op.sig);
  return gradient_from_reps(op.m, p_reps_of(basis, biv));
}

Vec moment_gradient(const FlowState& state, const LieAlgebraBasis& basis) {
  return moment_gradient(state.op_cur, basis);
}

FlowState flow_init(const CurvatureOperator& op, const LieAlgebraBasis& basis) {
  FlowState s;
  s.op0 = op;
  s.g_acc = Mat::Identity(op.sig.n(), op.sig.n());
  s.op_cur = op;
  s.f = norm_functional(op);
  s.grad = moment_gradient(op, basis);
  s.iter = 0;
  return s;
}

FlowState flow_step(const FlowState& state, const LieAlgebraBasis& basis,
                    double step) {
  if (step <= 0.0) throw std::invalid_argument("flow_step: step must be > 0");
  FlowState next = state;
  next.stalled = false;
  const double gn = state.grad.norm();
  if (gn == 0.0) return next;  // critical point, nothing to do

  const BivectorBasis biv(state.op_cur.sig);
  const auto reps = p_reps_of(basis, biv);
  const int n = state.op_cur.sig.n();
  Mat x = Mat::Zero(n, n);
  Mat x_rep = Mat::Zero(biv.dim(), biv.dim());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    x -= state.grad[static_cast<int>(i)] * basis.p_basis[i];
    x_rep -= state.grad[static_cast<int>(i)] * reps[i];
  }
  const Ray ray = make_ray(state.op_cur.m, x_rep);
  const double t = line_search(ray, state.f, step, /*expand=*/false);
  if (t == 0.0) {
    next.stalled = true;
    return next;
  }
  next.op_cur.m = ray.m_at(t);
  next.g_acc = sym_exp(t * x) * state.g_acc;
  next.f = norm_functional(next.op_cur);
  next.grad = gradient_from_reps(next.op_cur.m, reps);
  next.iter = state.iter + 1;
  return next;
}

namespace {

struct SeedRun {
  FlowSeedResult res;
};

FlowSeedResult run_one_seed(const CurvatureOperator& op_hat,
                            const BoostParameter& b0, int seed_index,
                            const LieAlgebraBasis& lie,
                            const std::vector<Mat>& reps,
                            const BivectorBasis& biv, const Vec& theta0_diag,
                            const FlowConfig& cfg) {
  FlowSeedResult r;
  r.seed_index = seed_index;
  r.b0 = b0;

  const int n = op_hat.sig.n();
  Mat g_acc = Mat::Identity(n, n);
  Mat m = op_hat.m;
  if (b0.size() > 0 && b0.norm() > 0) {
    const Mat x0 = [&] {
      Mat x = Mat::Zero(n, n);
      for (std::size_t i = 0; i < lie.p_basis.size(); ++i)
        x += b0[static_cast<int>(i)] * lie.p_basis[i];
      return x;
    }();
    g_acc = sym_exp(x0);
    const Mat g = frame_metric_matrix(op_hat.sig);
    const Mat hinv = g * g_acc.transpose() * g;
    m = bivector_rep(g_acc, biv) * m * bivector_rep(hinv, biv);
  }

  double f = m.squaredNorm();
  Vec grad = gradient_from_reps(m, reps);
  const Mat m_start = op_hat.m;
  double grad_tighten = 1.0;
  int iter = 0;
  bool done = false;

  auto log_step = [&](double step) {
    if (cfg.log_every > 0 && (iter % cfg.log_every == 0))
      r.log.push_back({iter, f, grad.norm(), step});
  };

  while (!done) {
    const double gn = grad.norm();
    const double gtol = cfg.grad_tol * grad_tighten * (1.0 + f);

    if (f <= cfg.collapse_ratio && gn > cfg.grad_tol * (1.0 + f)) {
      r.collapsed = true;
      break;
    }
    if (gn <= gtol) {
      const double comm = commutator_norm(m, theta0_diag);
      if (comm <= cfg.comm_tol || grad_tighten <= 1e-6) {
        r.critical = true;
        break;
      }
      grad_tighten *= 1e-2;  // converge further before giving up on [M,Theta0]
      continue;
    }
    if (iter >= cfg.max_iter) break;

    Mat x = Mat::Zero(n, n);
    Mat x_rep = Mat::Zero(biv.dim(), biv.dim());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      x -= grad[static_cast<int>(i)] * lie.p_basis[i];
      x_rep -= grad[static_cast<int>(i)] * reps[i];
    }
    const Ray ray = make_ray(m, x_rep);
    const double step0 = 0.5 / (1.0 + gn);
    const double t = line_search(ray, f, step0, /*expand=*/true);
    if (t == 0.0) break;  // stalled line search

    log_step(t);
    const double f_new = ray.f_at(t);
    if (f_new > f) r.monotone = false;
    m = ray.m_at(t);
    g_acc = sym_exp(t * x) * g_acc;
    f = m.squaredNorm();
    grad = gradient_from_reps(m, reps);
    ++iter;
    if (iter % 128 == 0) g_acc = reorthogonalize(op_hat.sig, g_acc);
  }

  if (cfg.log_every > 0) r.log.push_back({iter, f, grad.norm(), 0.0});
  r.f_final = f;
  r.grad_final = grad.norm();
  r.comm_final = commutator_norm(m, theta0_diag);
  r.iters = iter;
  r.g_acc = reorthogonalize(op_hat.sig, g_acc);
  r.op_final = m;
  r.trace_drift = trace_drift_between(m, m_start);
  return r;
}

}  // namespace

FlowVerdict run_flow(const CurvatureOperator& op, const FlowConfig& cfg) {
  const Signature sig = op.sig;
  const BivectorBasis biv(sig);
  const LieAlgebraBasis lie = make_lie_basis(sig);
  const auto reps = p_reps_of(lie, biv);
  const Vec theta0_diag = biv.G();  // Lambda^2(theta0) is diagonal G

  FlowVerdict v;
  v.op_min = op;
  v.theta_witness = canonical_theta(sig);

  const double norm = op.m.norm();
  v.f_initial = norm * norm;

  // Zero operator and compact signatures are minimal at the identity.
  const int pq = sig.p * sig.q;
  if (norm == 0.0 || pq == 0) {
    v.status = FlowStatus::minimal_found;
    v.f_final = v.f_initial;
    v.grad_norm_final = 0.0;
    v.comm_norm_final = commutator_norm(op.m, theta0_diag);
    v.trace_drift = 0.0;
    v.iters = 0;
    FlowSeedResult r;
    r.b0 = Vec::Zero(pq);
    r.critical = true;
    r.f_final = norm == 0.0 ? 0.0 : 1.0;
    r.g_acc = Mat::Identity(sig.n(), sig.n());
    r.op_final = norm == 0.0 ? op.m : Mat(op.m / norm);
    v.seeds.push_back(std::move(r));
    return v;
  }

  CurvatureOperator op_hat{sig, op.m / norm};

  // All seed starts are drawn up front so results never depend on threading.
  std::vector<BoostParameter> starts;
  starts.push_back(Vec::Zero(pq));
  std::mt19937_64 rng(cfg.seed_value);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int nseeds = std::max(1, cfg.seeds);
  for (int s = 1; s < nseeds; ++s) {
    Vec b(pq);
    for (int i = 0; i < pq; ++i) b[i] = normal(rng);
    starts.push_back(b);
  }

  std::vector<FlowSeedResult> results(starts.size());
  const int threads = resolve_thread_count(cfg.threads);
  parallel_indexed(static_cast<int>(starts.size()), threads, [&](int i) {
    results[i] = run_one_seed(op_hat, starts[i], i, lie, reps, biv,
                              theta0_diag, cfg);
  });

  double best_f = std::numeric_limits<double>::infinity();
  bool any_collapsed = false;
  bool monotone = true;
  for (const auto& r : results) {
    best_f = std::min(best_f, r.f_final);
    any_collapsed = any_collapsed || r.collapsed;
    monotone = monotone && r.monotone;
  }

  int winner = -1;
  if (any_collapsed) {
    v.status = FlowStatus::norm_collapse;
    for (std::size_t i = 0; i < results.size(); ++i)
      if (results[i].collapsed &&
          (winner < 0 || results[i].f_final < results[winner].f_final))
        winner = static_cast<int>(i);
  } else {
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      if (r.critical && r.comm_final <= cfg.comm_tol &&
          r.f_final <= 10.0 * best_f + 1e-300) {
        if (winner < 0 || r.f_final < results[winner].f_final)
          winner = static_cast<int>(i);
      }
    }
    v.status = winner >= 0 ? FlowStatus::minimal_found
                           : FlowStatus::budget_exhausted;
  }
  if (winner < 0) {
    for (std::size_t i = 0; i < results.size(); ++i)
      if (winner < 0 || results[i].f_final < results[winner].f_final)
        winner = static_cast<int>(i);
  }

  const FlowSeedResult& w = results[winner];
  v.winner_seed = winner;
  v.f_final = w.f_final * norm * norm;
  v.grad_norm_final = w.grad_final * norm * norm;
  v.comm_norm_final = w.comm_final * norm;
  v.iters = w.iters;
  v.f_monotone = monotone;
  v.op_min = {sig, Mat(w.op_final * norm)};
  v.trace_drift = trace_drift_between(v.op_min.m, op.m);

  // Witness: op_cur = g.op0 commutes with theta0, so op0 commutes with
  // g^-1 theta0 g pulled back to the input frame.
  const Mat g = frame_metric_matrix(sig);
  const Mat ginv_acc = g * w.g_acc.transpose() * g;
  v.theta_witness = {sig, ginv_acc * frame_metric_matrix(sig) * w.g_acc};
  v.seeds = std::move(results);
  return v;
}

MinimalityCheck is_minimal(const CurvatureOperator& op, double grad_tol) {
  const double norm = op.m.norm();
  const BivectorBasis biv(op.sig);
  const LieAlgebraBasis lie = make_lie_basis(op.sig);
  MinimalityCheck c;
  if (norm == 0.0) {
    c.minimal = true;
    return c;
  }
  const Mat m = op.m / norm;
  c.grad_norm = gradient_from_reps(m, p_reps_of(lie, biv)).norm();
  c.comm_norm = commutator_norm(m, biv.G());
  c.minimal = c.grad_norm <= grad_tol * 2.0;  // f = 1 on the unit operator
  return c;
}

}  // namespace curvorbit
