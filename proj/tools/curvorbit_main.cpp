// Batch interface: classify tensor files, run minimal-vector flows, compare
// candidate Wick pairs, and export catalog entries.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "curvorbit/catalog.hpp"
#include "curvorbit/classify.hpp"
#include "curvorbit/report.hpp"
#include "curvorbit/tensor_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInconclusive = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw curvorbit::TensorFileError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + out_path);
  out << text;
}

struct CommonOpts {
  double tol = -1.0;  // pe_tol for classify/flow, inv_tol for wick-pair
  int max_iter = -1;
  int seeds = -1;
  std::uint64_t seed_value = 12345;
  bool weyl_only = false;
  std::string format = "text";
  std::string out_path;
  int log_every = 0;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts* o, bool with_log) {
  cmd->add_option("--tol", o->tol, "defect tolerance (relative)");
  cmd->add_option("--max-iter", o->max_iter, "flow iteration budget");
  cmd->add_option("--seeds", o->seeds, "multi-start seed count");
  cmd->add_option("--seed-value", o->seed_value, "RNG seed for deterministic runs");
  cmd->add_flag("--weyl-only", o->weyl_only, "classify the Weyl tensor only");
  cmd->add_option("--format", o->format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", o->out_path, "write the report to this path");
  cmd->add_option("--threads", o->threads,
                  "parallelism cap (also capped by CURVORBIT_THREADS)");
  if (with_log)
    cmd->add_option("--log-every", o->log_every, "emit every k-th flow step");
}

curvorbit::ClassifyConfig make_config(const CommonOpts& o) {
  curvorbit::ClassifyConfig cfg;
  if (o.tol > 0.0) cfg.pe_tol = o.tol;
  if (o.max_iter > 0) cfg.flow.max_iter = o.max_iter;
  if (o.seeds > 0) {
    cfg.flow.seeds = o.seeds;
    cfg.boost_seeds = o.seeds;
  }
  cfg.seed_value = o.seed_value;
  cfg.flow.seed_value = o.seed_value;
  cfg.threads = o.threads;
  cfg.flow.threads = o.threads;
  cfg.flow.log_every = o.log_every;
  cfg.weyl_only = o.weyl_only;
  return cfg;
}

curvorbit::ReportFormat parse_format(const std::string& s) {
  return s == "json" ? curvorbit::ReportFormat::json
                     : curvorbit::ReportFormat::text;
}

int run_classify(const std::string& path, const CommonOpts& o) {
  const std::string bytes = slurp(path);
  const auto file = curvorbit::parse_tensor_file(bytes);
  const auto tensor = curvorbit::realize(file);
  const auto cfg = make_config(o);

  curvorbit::Classification cls;
  try {
    cls = curvorbit::classify(tensor, cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  curvorbit::ReportMeta meta;
  meta.command = "classify";
  meta.input_path = path;
  meta.input_digest = curvorbit::digest_hex(bytes);
  meta.sig = tensor.signature();
  emit(curvorbit::render_classification(meta, cls, cfg, parse_format(o.format)),
       o.out_path);

  using curvorbit::Verdict;
  using curvorbit::WickVerdict;
  bool inconclusive = cls.pe.verdict == Verdict::inconclusive ||
                      cls.pm.verdict == Verdict::inconclusive;
  if (!cfg.weyl_only)
    inconclusive = inconclusive || cls.rpe.verdict == Verdict::inconclusive ||
                   cls.rpm.verdict == Verdict::inconclusive ||
                   cls.wick == WickVerdict::inconclusive;
  return inconclusive ? kExitInconclusive : kExitOk;
}

int run_flow_cmd(const std::string& path, const CommonOpts& o) {
  const std::string bytes = slurp(path);
  const auto file = curvorbit::parse_tensor_file(bytes);
  const auto tensor = curvorbit::realize(file);
  const auto cfg = make_config(o);

  const auto op = curvorbit::riemann_to_operator(tensor);
  const auto verdict = curvorbit::run_flow(op, cfg.flow);

  curvorbit::ReportMeta meta;
  meta.command = "flow";
  meta.input_path = path;
  meta.input_digest = curvorbit::digest_hex(bytes);
  meta.sig = tensor.signature();
  emit(curvorbit::render_flow(meta, verdict, cfg.flow, parse_format(o.format)),
       o.out_path);
  return verdict.status == curvorbit::FlowStatus::budget_exhausted
             ? kExitInconclusive
             : kExitOk;
}

int run_wick_pair(const std::string& path_a, const std::string& path_b,
                  const CommonOpts& o) {
  const std::string bytes_a = slurp(path_a);
  const std::string bytes_b = slurp(path_b);
  const auto ta = curvorbit::realize(curvorbit::parse_tensor_file(bytes_a));
  const auto tb = curvorbit::realize(curvorbit::parse_tensor_file(bytes_b));
  const double inv_tol = o.tol > 0.0 ? o.tol : 1e-8;

  curvorbit::PairCheck pc;
  try {
    pc = curvorbit::wick_pair_check(ta, tb, inv_tol);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  curvorbit::ReportMeta meta;
  meta.command = "wick-pair";
  meta.input_path = path_a;
  meta.input_digest = curvorbit::digest_hex(bytes_a);
  meta.input_path_b = path_b;
  meta.input_digest_b = curvorbit::digest_hex(bytes_b);
  meta.sig = ta.signature();
  emit(curvorbit::render_pair(meta, pc, inv_tol, parse_format(o.format)),
       o.out_path);
  return pc.verdict == curvorbit::PairVerdict::inconclusive ? kExitInconclusive
                                                            : kExitOk;
}

int run_catalog(const std::string& action, const std::string& name,
                const std::string& out_path) {
  if (action == "list") {
    for (const auto& n : curvorbit::catalog_names()) std::cout << n << "\n";
    return kExitOk;
  }
  if (action == "emit") {
    const auto entry = curvorbit::builtin(name);
    auto file = curvorbit::tensor_file_from(entry.riemann, entry.name);
    emit(curvorbit::write_tensor_file(file), out_path);
    return kExitOk;
  }
  std::cerr << "error: unknown catalog action '" << action << "'\n";
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvorbit: pointwise curvature classification for Wick-rotatability"};
  app.require_subcommand(1);

  CommonOpts copts, fopts, wopts;
  std::string file_a, file_b, catalog_action, catalog_name, catalog_out;

  auto* classify_cmd = app.add_subcommand("classify", "classify a tensor file");
  classify_cmd->add_option("file", file_a, "tensor file (JSON)")->required();
  add_common(classify_cmd, &copts, false);

  auto* flow_cmd = app.add_subcommand("flow", "run the minimal-vector flow");
  flow_cmd->add_option("file", file_a, "tensor file (JSON)")->required();
  add_common(flow_cmd, &fopts, true);

  auto* pair_cmd = app.add_subcommand("wick-pair", "compare two tensors");
  pair_cmd->add_option("fileA", file_a, "first tensor file")->required();
  pair_cmd->add_option("fileB", file_b, "second tensor file")->required();
  add_common(pair_cmd, &wopts, false);

  auto* catalog_cmd = app.add_subcommand("catalog", "list or emit builtin entries");
  catalog_cmd->add_option("action", catalog_action, "list | emit")->required();
  catalog_cmd->add_option("name", catalog_name, "entry name for emit");
  catalog_cmd->add_option("--out", catalog_out, "write the tensor file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (classify_cmd->parsed()) return run_classify(file_a, copts);
    if (flow_cmd->parsed()) return run_flow_cmd(file_a, fopts);
    if (pair_cmd->parsed()) return run_wick_pair(file_a, file_b, wopts);
    if (catalog_cmd->parsed()) {
      if (catalog_action == "emit" && catalog_name.empty()) {
        std::cerr << "error: catalog emit needs an entry name\n";
        return kExitInput;
      }
      return run_catalog(catalog_action, catalog_name, catalog_out);
    }
  } catch (const curvorbit::TensorFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
