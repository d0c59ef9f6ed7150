#include "curvorbit/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace curvorbit {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string format_vec(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s + ")";
}

std::string sig_str(Signature s) {
  return "(" + std::to_string(s.p) + "," + std::to_string(s.q) + ")";
}

void append_config(std::ostringstream& os, const ClassifyConfig& cfg) {
  os << "config: pe_tol=" << format_double(cfg.pe_tol)
     << " no_margin=" << format_double(cfg.no_margin)
     << " boost_seeds=" << cfg.boost_seeds
     << " boost_budget=" << cfg.boost_budget
     << " flow_seeds=" << cfg.flow.seeds
     << " grad_tol=" << format_double(cfg.flow.grad_tol)
     << " comm_tol=" << format_double(cfg.flow.comm_tol)
     << " collapse_ratio=" << format_double(cfg.flow.collapse_ratio)
     << " max_iter=" << cfg.flow.max_iter
     << " seed_value=" << cfg.seed_value
     << " inv_tol=" << format_double(cfg.inv_tol)
     << " sym_tol=" << format_double(cfg.sym_tol)
     << " weyl_only=" << (cfg.weyl_only ? 1 : 0) << "\n";
}

ordered_json config_json(const ClassifyConfig& cfg) {
  ordered_json j;
  j["pe_tol"] = cfg.pe_tol;
  j["no_margin"] = cfg.no_margin;
  j["boost_seeds"] = cfg.boost_seeds;
  j["boost_budget"] = cfg.boost_budget;
  j["flow_seeds"] = cfg.flow.seeds;
  j["grad_tol"] = cfg.flow.grad_tol;
  j["comm_tol"] = cfg.flow.comm_tol;
  j["collapse_ratio"] = cfg.flow.collapse_ratio;
  j["max_iter"] = cfg.flow.max_iter;
  j["seed_value"] = cfg.seed_value;
  j["inv_tol"] = cfg.inv_tol;
  j["sym_tol"] = cfg.sym_tol;
  j["weyl_only"] = cfg.weyl_only;
  return j;
}

void append_flow_summary(std::ostringstream& os, const std::string& label,
                         const FlowVerdict& v) {
  os << "flow " << label << ": status=" << to_string(v.status)
     << " iters=" << v.iters << " f_initial=" << format_double(v.f_initial)
     << " f_final=" << format_double(v.f_final)
     << " grad=" << format_double(v.grad_norm_final)
     << " comm=" << format_double(v.comm_norm_final)
     << " drift=" << format_double(v.trace_drift)
     << " monotone=" << (v.f_monotone ? 1 : 0)
     << " winner_seed=" << v.winner_seed << "\n";
}

ordered_json flow_json(const FlowVerdict& v, bool with_seeds) {
  ordered_json j;
  j["status"] = to_string(v.status);
  j["iters"] = v.iters;
  j["f_initial"] = v.f_initial;
  j["f_final"] = v.f_final;
  j["grad_norm_final"] = v.grad_norm_final;
  j["comm_norm_final"] = v.comm_norm_final;
  j["trace_drift"] = v.trace_drift;
  j["monotone"] = v.f_monotone;
  j["winner_seed"] = v.winner_seed;
  if (with_seeds) {
    j["seeds"] = ordered_json::array();
    for (const auto& s : v.seeds) {
      ordered_json js;
      js["seed"] = s.seed_index;
      js["b0"] = std::vector<double>(s.b0.data(), s.b0.data() + s.b0.size());
      js["collapsed"] = s.collapsed;
      js["critical"] = s.critical;
      js["iters"] = s.iters;
      js["f_final"] = s.f_final;
      js["grad_final"] = s.grad_final;
      js["comm_final"] = s.comm_final;
      js["trace_drift"] = s.trace_drift;
      if (!s.log.empty()) {
        js["log"] = ordered_json::array();
        for (const auto& rec : s.log)
          js["log"].push_back({{"iter", rec.iter},
                               {"f", rec.f},
                               {"grad", rec.grad_norm},
                               {"step", rec.step}});
      }
      j["seeds"].push_back(js);
    }
  }
  return j;
}

void append_aspect(std::ostringstream& os, const std::string& label,
                   const AspectResult& a) {
  os << "verdict " << label << ": " << to_string(a.verdict);
  if (a.witness_b && a.witness_b->size() > 0)
    os << " witness_b=" << format_vec(*a.witness_b);
  os << "\n";
  os << "defect " << label << ": rel=" << format_double(a.defect_rel)
     << " routes flow=" << to_string(a.flow_route)
     << " direct=" << to_string(a.direct_route);
  if (!a.evidence.empty()) os << " evidence=\"" << a.evidence << "\"";
  os << "\n";
}

ordered_json aspect_json(const AspectResult& a) {
  ordered_json j;
  j["verdict"] = to_string(a.verdict);
  if (a.witness_b)
    j["witness_b"] = std::vector<double>(a.witness_b->data(),
                                         a.witness_b->data() + a.witness_b->size());
  j["defect_rel"] = a.defect_rel;
  j["flow_route"] = to_string(a.flow_route);
  j["direct_route"] = to_string(a.direct_route);
  if (!a.evidence.empty()) j["evidence"] = a.evidence;
  return j;
}

ordered_json meta_json(const ReportMeta& meta) {
  ordered_json j;
  j["tool"] = "curvorbit";
  j["version"] = kToolVersion;
  j["command"] = meta.command;
  j["input"] = meta.input_path;
  j["digest"] = meta.input_digest;
  if (!meta.input_path_b.empty()) {
    j["input_b"] = meta.input_path_b;
    j["digest_b"] = meta.input_digest_b;
  }
  j["signature"] = {meta.sig.p, meta.sig.q};
  return j;
}

}  // namespace

std::string render_classification(const ReportMeta& meta,
                                  const Classification& cls,
                                  const ClassifyConfig& cfg, ReportFormat fmt) {
  if (fmt == ReportFormat::json) {
    ordered_json j = meta_json(meta);
    j["config"] = config_json(cfg);
    if (!cfg.weyl_only) j["rpe"] = aspect_json(cls.rpe);
    j["pe"] = aspect_json(cls.pe);
    j["pm"] = aspect_json(cls.pm);
    if (!cfg.weyl_only) {
      j["rpm"] = aspect_json(cls.rpm);
      j["wick"] = to_string(cls.wick);
      j["wick_reason"] = cls.wick_reason;
    }
    if (cls.type_note) j["type_note"] = *cls.type_note;
    j["ricci_scalar"] = cls.ricci_scalar_value;
    j["invariants"] = cls.invariants;
    j["flow_riemann"] = flow_json(cls.riemann_flow, false);
    if (cls.weyl_flow) j["flow_weyl"] = flow_json(*cls.weyl_flow, false);
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "curvorbit " << kToolVersion << " " << meta.command << "\n";
  os << "input: path=" << meta.input_path << " digest=" << meta.input_digest
     << "\n";
  os << "signature: " << sig_str(meta.sig) << " n=" << meta.sig.n()
     << " N=" << meta.sig.bivector_dim() << "\n";
  append_config(os, cfg);
  if (!cfg.weyl_only) append_aspect(os, "rpe", cls.rpe);
  append_aspect(os, "pe", cls.pe);
  append_aspect(os, "pm", cls.pm);
  if (!cfg.weyl_only) {
    append_aspect(os, "rpm", cls.rpm);
    os << "verdict wick: " << to_string(cls.wick) << " reason=\""
       << cls.wick_reason << "\"\n";
  }
  if (cls.type_note) os << "note: " << *cls.type_note << "\n";
  os << "ricci_scalar: " << format_double(cls.ricci_scalar_value) << "\n";
  os << "invariants:";
  for (double v : cls.invariants) os << " " << format_double(v);
  os << "\n";
  append_flow_summary(os, "riemann", cls.riemann_flow);
  if (cls.weyl_flow) append_flow_summary(os, "weyl", *cls.weyl_flow);
  return os.str();
}

std::string render_flow(const ReportMeta& meta, const FlowVerdict& verdict,
                        const FlowConfig& cfg, ReportFormat fmt) {
  if (fmt == ReportFormat::json) {
    ordered_json j = meta_json(meta);
    ordered_json jc;
    jc["grad_tol"] = cfg.grad_tol;
    jc["comm_tol"] = cfg.comm_tol;
    jc["collapse_ratio"] = cfg.collapse_ratio;
    jc["max_iter"] = cfg.max_iter;
    jc["seeds"] = cfg.seeds;
    jc["seed_value"] = cfg.seed_value;
    jc["log_every"] = cfg.log_every;
    j["config"] = jc;
    j["flow"] = flow_json(verdict, true);
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "curvorbit " << kToolVersion << " " << meta.command << "\n";
  os << "input: path=" << meta.input_path << " digest=" << meta.input_digest
     << "\n";
  os << "signature: " << sig_str(meta.sig) << " n=" << meta.sig.n()
     << " N=" << meta.sig.bivector_dim() << "\n";
  os << "config: grad_tol=" << format_double(cfg.grad_tol)
     << " comm_tol=" << format_double(cfg.comm_tol)
     << " collapse_ratio=" << format_double(cfg.collapse_ratio)
     << " max_iter=" << cfg.max_iter << " seeds=" << cfg.seeds
     << " seed_value=" << cfg.seed_value << " log_every=" << cfg.log_every
     << "\n";
  append_flow_summary(os, "result", verdict);
  for (const auto& s : verdict.seeds) {
    os << "seed " << s.seed_index << ": b0=" << format_vec(s.b0)
       << " collapsed=" << (s.collapsed ? 1 : 0)
       << " critical=" << (s.critical ? 1 : 0) << " iters=" << s.iters
       << " f_final=" << format_double(s.f_final)
       << " grad=" << format_double(s.grad_final)
       << " comm=" << format_double(s.comm_final)
       << " drift=" << format_double(s.trace_drift) << "\n";
    for (const auto& rec : s.log)
      os << "log " << s.seed_index << ": iter=" << rec.iter
         << " f=" << format_double(rec.f)
         << " grad=" << format_double(rec.grad_norm)
         << " step=" << format_double(rec.step) << "\n";
  }
  return os.str();
}

std::string render_pair(const ReportMeta& meta, const PairCheck& pc,
                        double inv_tol, ReportFormat fmt) {
  if (fmt == ReportFormat::json) {
    ordered_json j = meta_json(meta);
    j["config"] = {{"inv_tol", inv_tol}};
    j["verdict"] = to_string(pc.verdict);
    j["witness"] = pc.witness;
    j["degenerate"] = pc.degenerate;
    j["invariants_a"] = pc.invariants_a;
    j["invariants_b"] = pc.invariants_b;
    auto eig_list = [](const std::vector<std::complex<double>>& v) {
      ordered_json arr = ordered_json::array();
      for (const auto& z : v) arr.push_back({z.real(), z.imag()});
      return arr;
    };
    j["eigenvalues_a"] = eig_list(pc.eigen_a);
    j["eigenvalues_b"] = eig_list(pc.eigen_b);
    j["ricci_scalar_a"] = pc.ricci_scalar_a;
    j["ricci_scalar_b"] = pc.ricci_scalar_b;
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "curvorbit " << kToolVersion << " " << meta.command << "\n";
  os << "input A: path=" << meta.input_path << " digest=" << meta.input_digest
     << "\n";
  os << "input B: path=" << meta.input_path_b
     << " digest=" << meta.input_digest_b << "\n";
  os << "config: inv_tol=" << format_double(inv_tol) << "\n";
  os << "pair verdict: " << to_string(pc.verdict);
  if (!pc.witness.empty()) os << " witness=\"" << pc.witness << "\"";
  os << "\n";
  os << "degenerate: " << (pc.degenerate ? 1 : 0) << "\n";
  auto line = [&](const char* label, const std::vector<double>& v) {
    os << label;
    for (double x : v) os << " " << format_double(x);
    os << "\n";
  };
  line("invariants A:", pc.invariants_a);
  line("invariants B:", pc.invariants_b);
  auto eline = [&](const char* label, const std::vector<std::complex<double>>& v) {
    os << label;
    for (const auto& z : v)
      os << " (" << format_double(z.real()) << "," << format_double(z.imag())
         << ")";
    os << "\n";
  };
  eline("eigenvalues A:", pc.eigen_a);
  eline("eigenvalues B:", pc.eigen_b);
  os << "ricci_scalar A: " << format_double(pc.ricci_scalar_a) << "\n";
  os << "ricci_scalar B: " << format_double(pc.ricci_scalar_b) << "\n";
  return os.str();
}

}  // namespace curvorbit
