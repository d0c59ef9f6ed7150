#include "curvorbit/classify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "curvorbit/parallel.hpp"

namespace curvorbit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(WickVerdict v) {
  switch (v) {
    case WickVerdict::obstructed: return "obstructed";
    case WickVerdict::necessary_condition_passed: return "necessary-condition-passed";
    case WickVerdict::trivial: return "trivial";
    case WickVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::consistent: return "consistent";
    case PairVerdict::inconsistent: return "inconsistent";
    case PairVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<double> orbit_invariants(const CurvatureOperator& op, int k_max) {
  if (k_max < 1 || k_max > op.m.rows())
    throw std::invalid_argument("orbit_invariants: k_max out of range");
  std::vector<double> tr;
  Mat power = Mat::Identity(op.m.rows(), op.m.cols());
  for (int k = 1; k <= k_max; ++k) {
    power = power * op.m;
    tr.push_back(power.trace());
  }
  return tr;
}

namespace {

using Objective = std::function<double(const BoostParameter&)>;

struct LocalMin {
  double value = 0.0;
  BoostParameter b;
};

// Golden-section line minimization of phi over [lo, hi].
double golden_min(const std::function<double(double)>& phi, double lo,
                  double hi, int iters, double* arg) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = phi(x1), f2 = phi(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a);
      f1 = phi(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a);
      f2 = phi(x2);
    }
  }
  if (f1 < f2) { *arg = x1; return f1; }
  *arg = x2; return f2;
}

// Coordinate descent passes followed by a Nelder-Mead polish, bounded by a
// fixed evaluation budget. Deterministic for a fixed start.
LocalMin descend(const Objective& obj, const BoostParameter& start, int budget) {
  const int dim = static_cast<int>(start.size());
  int evals = 0;
  auto f = [&](const BoostParameter& b) {
    ++evals;
    return obj(b);
  };

  BoostParameter best = start;
  double fbest = f(best);

  // coordinate descent
  for (int pass = 0; pass < 3 && evals < budget / 2; ++pass) {
    double improved = 0.0;
    for (int i = 0; i < dim && evals < budget / 2; ++i) {
      const double b0 = best[i];
      auto phi = [&](double x) {
        BoostParameter b = best;
        b[i] = x;
        return f(b);
      };
      double arg = b0;
      const double fmin = golden_min(phi, b0 - 1.5, b0 + 1.5, 18, &arg);
      if (fmin < fbest) {
        improved += fbest - fmin;
        fbest = fmin;
        best[i] = arg;
      }
    }
    if (improved < 1e-15) break;
  }

  if (dim == 0) return {fbest, best};

  // Nelder-Mead from the coordinate-descent point
  std::vector<BoostParameter> simplex(dim + 1, best);
  std::vector<double> fv(dim + 1, 0.0);
  for (int i = 0; i < dim; ++i) simplex[i + 1][i] += 0.25;
  for (int i = 0; i <= dim; ++i) fv[i] = i == 0 ? fbest : f(simplex[i]);

  while (evals < budget) {
    std::vector<int> order(dim + 1);
    for (int i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fv[a] < fv[b]; });
    const int lo = order[0], hi = order[dim], nhi = order[dim - 1];
    if (std::abs(fv[hi] - fv[lo]) < 1e-16 * (1.0 + std::abs(fv[lo]))) break;

    BoostParameter centroid = Vec::Zero(dim);
    for (int i = 0; i <= dim; ++i)
      if (i != hi) centroid += simplex[i];
    centroid /= dim;

    BoostParameter refl = centroid + (centroid - simplex[hi]);
    double fr = f(refl);
    if (fr < fv[lo]) {
      BoostParameter expd = centroid + 2.0 * (centroid - simplex[hi]);
      const double fe = f(expd);
      if (fe < fr) { simplex[hi] = expd; fv[hi] = fe; }
      else { simplex[hi] = refl; fv[hi] = fr; }
    } else if (fr < fv[nhi]) {
      simplex[hi] = refl;
      fv[hi] = fr;
    } else {
      BoostParameter contr = centroid + 0.5 * (simplex[hi] - centroid);
      const double fc = f(contr);
      if (fc < fv[hi]) { simplex[hi] = contr; fv[hi] = fc; }
      else {
        for (int i = 0; i <= dim; ++i) {
          if (i == lo) continue;
          simplex[i] = simplex[lo] + 0.5 * (simplex[i] - simplex[lo]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  for (int i = 0; i <= dim; ++i)
    if (fv[i] < fbest) { fbest = fv[i]; best = simplex[i]; }
  return {fbest, best};
}

DefectSearch search_defect(const Objective& obj, Signature sig,
                           const ClassifyConfig& cfg,
                           const std::vector<BoostParameter>& extra_seeds) {
  const int dim = sig.p * sig.q;
  std::vector<BoostParameter> starts;
  starts.push_back(Vec::Zero(dim));
  std::mt19937_64 rng(cfg.seed_value ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 1; s < std::max(1, cfg.boost_seeds); ++s) {
    Vec b(dim);
    for (int i = 0; i < dim; ++i) b[i] = normal(rng);
    starts.push_back(b);
  }
  for (const auto& b : extra_seeds)
    if (b.size() == dim) starts.push_back(b);

  std::vector<LocalMin> mins(starts.size());
  parallel_indexed(static_cast<int>(starts.size()),
                   resolve_thread_count(cfg.threads), [&](int i) {
                     mins[i] = descend(obj, starts[i], cfg.boost_budget);
                   });

  DefectSearch out;
  out.best_b = Vec::Zero(dim);
  out.best_rel = std::numeric_limits<double>::infinity();
  for (const auto& lm : mins) {
    out.local_minima.push_back(lm.value);
    if (lm.value < out.best_rel) {
      out.best_rel = lm.value;
      out.best_b = lm.b;
    }
  }
  out.evaluations = static_cast<int>(starts.size()) * cfg.boost_budget;
  return out;
}

Objective operator_defect_objective(const CurvatureOperator& op, bool plus_part) {
  return [op, plus_part](const BoostParameter& b) {
    // Penalize runaway boosts: some defects decrease only asymptotically and
    // would otherwise drag the simplex off to overflow.
    if (!b.allFinite()) return 1e12;
    if (b.norm() > 30.0) return 1e6 + b.norm();
    const CartanInvolution th = theta_from_boost(op.sig, b);
    const double den = theta_norm(op, th);
    if (den < 1e-300) return 0.0;
    const double num = plus_part ? pm_defect(op, th) : pe_defect(op, th);
    return num / den;
  };
}

Verdict direct_route_verdict(const DefectSearch& s, const ClassifyConfig& cfg) {
  if (s.best_rel <= cfg.pe_tol) return Verdict::yes;
  bool all_large = true;
  for (double v : s.local_minima)
    all_large = all_large && v > cfg.no_margin * cfg.pe_tol;
  return all_large ? Verdict::no : Verdict::inconclusive;
}

Verdict flow_route_verdict(const FlowVerdict& fv, const FlowConfig& cfg,
                           double op_norm) {
  switch (fv.status) {
    case FlowStatus::minimal_found:
      return fv.comm_norm_final <= cfg.comm_tol * std::max(1.0, op_norm)
                 ? Verdict::yes
                 : Verdict::inconclusive;
    case FlowStatus::norm_collapse:
      return Verdict::no;
    case FlowStatus::budget_exhausted:
      return Verdict::inconclusive;
  }
  return Verdict::inconclusive;
}

Verdict combine_routes(Verdict flow, Verdict direct) {
  if ((flow == Verdict::yes && direct == Verdict::no) ||
      (flow == Verdict::no && direct == Verdict::yes))
    return Verdict::inconclusive;
  if (flow == Verdict::yes || direct == Verdict::yes) return Verdict::yes;
  if (flow == Verdict::no || direct == Verdict::no) return Verdict::no;
  return Verdict::inconclusive;
}

}  // namespace

DefectSearch minimize_operator_defect(const CurvatureOperator& op, bool plus_part,
                                      const ClassifyConfig& cfg,
                                      const std::vector<BoostParameter>& extra_seeds) {
  return search_defect(operator_defect_objective(op, plus_part), op.sig, cfg,
                       extra_seeds);
}

std::optional<std::string> lorentzian_type_note(const Classification& cls) {
  if (cls.sig.p != 1 || cls.sig.q < 1) return std::nullopt;
  if (cls.pe.verdict != Verdict::yes) return std::nullopt;
  return "purely electric Lorentzian space: Weyl type restricted to {G, I_i, D, O}";
}

Classification classify(const RiemannTensor& t, const ClassifyConfig& cfg) {
  const auto report = validate_riemann(t, cfg.sym_tol);
  if (!report.ok) {
    const auto& w = report.violations.front();
    std::ostringstream os;
    os << "invalid tensor: " << w.kind << " violated at (" << w.indices[0]
       << "," << w.indices[1] << "," << w.indices[2] << "," << w.indices[3]
       << "), magnitude " << w.magnitude;
    throw std::invalid_argument(os.str());
  }

  const Signature sig = t.signature();
  Classification cls;
  cls.sig = sig;
  const CurvatureOperator op = riemann_to_operator(t);
  const int N = sig.bivector_dim();
  cls.invariants = orbit_invariants(op, std::min(N, 8));
  cls.ricci_scalar_value = ricci_scalar(t);
  cls.weyl_defined = sig.n() >= 3;

  // Weyl part; every 2-dimensional metric is conformally flat, so n = 2 is
  // treated as a vanishing Weyl tensor.
  RiemannTensor weyl_t = cls.weyl_defined ? weyl(t) : RiemannTensor(sig);
  const CurvatureOperator weyl_op = riemann_to_operator(weyl_t);

  FlowConfig fcfg = cfg.flow;
  fcfg.seed_value = cfg.seed_value;
  fcfg.threads = cfg.threads;

  const double op_scale = op.m.norm();
  const double weyl_scale = weyl_op.m.norm();

  cls.riemann_flow = run_flow(op, fcfg);

  if (sig.definite()) {
    // Only +-identity is available; everything is electric, nothing moves.
    auto aspect_zero = [](double rel) {
      AspectResult a;
      a.verdict = Verdict::yes;
      a.witness_b = Vec::Zero(0);
      a.defect_rel = rel;
      a.evidence = "definite signature: the canonical involution is the identity";
      a.flow_route = Verdict::yes;
      a.direct_route = Verdict::yes;
      return a;
    };
    cls.rpe = aspect_zero(0.0);
    cls.pe = aspect_zero(0.0);
    auto plus_aspect = [&](const CurvatureOperator& o, double scale) {
      AspectResult a;
      a.direct_route = Verdict::inconclusive;
      const double rel = scale < 1e-300
                             ? 0.0
                             : pm_defect(o, canonical_theta(sig)) /
                                   theta_norm(o, canonical_theta(sig));
      a.defect_rel = rel;
      a.verdict = rel <= cfg.pe_tol
                      ? Verdict::yes
                      : (rel > cfg.no_margin * cfg.pe_tol ? Verdict::no
                                                          : Verdict::inconclusive);
      a.direct_route = a.verdict;
      if (a.verdict == Verdict::yes) a.witness_b = Vec::Zero(0);
      return a;
    };
    cls.pm = plus_aspect(weyl_op, weyl_scale);
    cls.rpm = plus_aspect(op, op_scale);
    cls.wick = WickVerdict::trivial;
    cls.wick_reason = "metric already definite";
    cls.type_note = lorentzian_type_note(cls);
    return cls;
  }

  // RPE: flow route and direct boost search, cross-checked.
  std::vector<BoostParameter> rpe_seeds;
  if (cls.riemann_flow.status == FlowStatus::minimal_found)
    rpe_seeds.push_back(boost_of_theta(cls.riemann_flow.theta_witness));
  const DefectSearch rpe_search =
      minimize_operator_defect(op, /*plus_part=*/false, cfg, rpe_seeds);

  cls.rpe.flow_route = flow_route_verdict(cls.riemann_flow, fcfg, op_scale);
  cls.rpe.direct_route = direct_route_verdict(rpe_search, cfg);
  cls.rpe.verdict = combine_routes(cls.rpe.flow_route, cls.rpe.direct_route);
  cls.rpe.defect_rel = rpe_search.best_rel;
  if (cls.rpe.verdict == Verdict::yes) {
    cls.rpe.witness_b = rpe_search.best_rel <= cfg.pe_tol
                            ? rpe_search.best_b
                            : boost_of_theta(cls.riemann_flow.theta_witness);
  }
  if (cls.rpe.flow_route != cls.rpe.direct_route)
    cls.rpe.evidence = "routes: flow=" + to_string(cls.rpe.flow_route) +
                       " direct=" + to_string(cls.rpe.direct_route);

  // PE: same two routes on the Weyl operator.
  if (weyl_scale < 1e-300) {
    cls.pe.verdict = Verdict::yes;
    cls.pe.witness_b = Vec::Zero(sig.p * sig.q);
    cls.pe.defect_rel = 0.0;
    cls.pe.evidence = "Weyl tensor vanishes (conformally flat point)";
    cls.pe.flow_route = Verdict::yes;
    cls.pe.direct_route = Verdict::yes;
  } else {
    cls.weyl_flow = run_flow(weyl_op, fcfg);
    std::vector<BoostParameter> pe_seeds = rpe_seeds;
    if (cls.rpe.verdict == Verdict::yes && cls.rpe.witness_b)
      pe_seeds.push_back(*cls.rpe.witness_b);  // RPE implies PE at the same witness
    if (cls.weyl_flow->status == FlowStatus::minimal_found)
      pe_seeds.push_back(boost_of_theta(cls.weyl_flow->theta_witness));
    const DefectSearch pe_search =
        minimize_operator_defect(weyl_op, /*plus_part=*/false, cfg, pe_seeds);
    cls.pe.flow_route = flow_route_verdict(*cls.weyl_flow, fcfg, weyl_scale);
    cls.pe.direct_route = direct_route_verdict(pe_search, cfg);
    cls.pe.verdict = combine_routes(cls.pe.flow_route, cls.pe.direct_route);
    cls.pe.defect_rel = pe_search.best_rel;
    if (cls.pe.verdict == Verdict::yes)
      cls.pe.witness_b = pe_search.best_rel <= cfg.pe_tol
                             ? pe_search.best_b
                             : boost_of_theta(cls.weyl_flow->theta_witness);
    if (cls.pe.flow_route != cls.pe.direct_route)
      cls.pe.evidence = "routes: flow=" + to_string(cls.pe.flow_route) +
                        " direct=" + to_string(cls.pe.direct_route);
  }

  // PM / RPM: direct search on the plus-part defect.
  auto plus_search = [&](const CurvatureOperator& o, double scale) {
    AspectResult a;
    if (scale < 1e-300) {
      a.verdict = Verdict::yes;
      a.witness_b = Vec::Zero(sig.p * sig.q);
      a.defect_rel = 0.0;
      a.direct_route = Verdict::yes;
      return a;
    }
    const DefectSearch s = minimize_operator_defect(o, /*plus_part=*/true, cfg, {});
    a.direct_route = direct_route_verdict(s, cfg);
    a.verdict = a.direct_route;
    a.defect_rel = s.best_rel;
    if (a.verdict == Verdict::yes) a.witness_b = s.best_b;
    return a;
  };
  cls.pm = plus_search(weyl_op, weyl_scale);
  cls.rpm = plus_search(op, op_scale);

  switch (cls.rpe.verdict) {
    case Verdict::yes:
      cls.wick = WickVerdict::necessary_condition_passed;
      cls.wick_reason = "Riemann tensor purely electric at the witness involution";
      break;
    case Verdict::no:
      cls.wick = WickVerdict::obstructed;
      cls.wick_reason = cls.riemann_flow.status == FlowStatus::norm_collapse
                            ? "orbit not closed (numerical evidence)"
                            : "magnetic part persists at every involution found";
      break;
    case Verdict::inconclusive:
      cls.wick = WickVerdict::inconclusive;
      cls.wick_reason = "RPE check inconclusive";
      break;
  }

  cls.type_note = lorentzian_type_note(cls);
  return cls;
}

PairCheck wick_pair_check(const RiemannTensor& a, const RiemannTensor& b,
                          double inv_tol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("wick_pair_check: total dimensions differ");
  for (const auto* t : {&a, &b}) {
    const auto rep = validate_riemann(*t);
    if (!rep.ok)
      throw std::invalid_argument("wick_pair_check: invalid tensor input");
  }

  PairCheck pc;
  const CurvatureOperator opa = riemann_to_operator(a);
  const CurvatureOperator opb = riemann_to_operator(b);
  const int N = static_cast<int>(opa.m.rows());
  pc.invariants_a = orbit_invariants(opa, N);
  pc.invariants_b = orbit_invariants(opb, N);
  pc.ricci_scalar_a = ricci_scalar(a);
  pc.ricci_scalar_b = ricci_scalar(b);

  auto close = [&](double x, double y) {
    return std::abs(x - y) <=
           inv_tol * std::max({1.0, std::abs(x), std::abs(y)});
  };

  for (int k = 0; k < N; ++k)
    if (!close(pc.invariants_a[k], pc.invariants_b[k])) {
      pc.verdict = PairVerdict::inconsistent;
      pc.witness = "tr M^" + std::to_string(k + 1);
      return pc;
    }

  auto eigs = [](const Mat& m) {
    Eigen::EigenSolver<Mat> es(m);
    std::vector<std::complex<double>> v(m.rows());
    for (int i = 0; i < m.rows(); ++i) v[i] = es.eigenvalues()[i];
    std::sort(v.begin(), v.end(), [](auto x, auto y) {
      if (x.real() != y.real()) return x.real() < y.real();
      return x.imag() < y.imag();
    });
    return v;
  };
  pc.eigen_a = eigs(opa.m);
  pc.eigen_b = eigs(opb.m);
  for (int i = 0; i < N; ++i) {
    const auto u = pc.eigen_a[i], v = pc.eigen_b[i];
    if (std::abs(u - v) > inv_tol * std::max({1.0, std::abs(u), std::abs(v)})) {
      pc.verdict = PairVerdict::inconsistent;
      pc.witness = "eigenvalue " + std::to_string(i);
      return pc;
    }
  }

  // Trace-silent but nonzero operators (nilpotent directions) carry no
  // invariant information; the certificate is inconclusive.
  auto degenerate = [&](const CurvatureOperator& o,
                        const std::vector<double>& inv) {
    if (o.m.norm() <= inv_tol) return false;
    double scale = 1.0;
    for (int k = 0; k < N; ++k) {
      scale *= std::max(1.0, o.m.norm());
      if (std::abs(inv[k]) > inv_tol * scale) return false;
    }
    return true;
  };
  if (degenerate(opa, pc.invariants_a) || degenerate(opb, pc.invariants_b)) {
    pc.degenerate = true;
    pc.verdict = PairVerdict::inconclusive;
    pc.witness = "trace-silent operator";
    return pc;
  }

  pc.verdict = PairVerdict::consistent;
  return pc;
}

}  // namespace curvorbit
