#pragma once

#include <optional>
#include <string>

#include "curvorbit/classify.hpp"
#include "curvorbit/flow.hpp"

namespace curvorbit {

inline constexpr const char* kToolVersion = "1.0.0";

enum class ReportFormat { text, json };

// Everything a report echoes besides the verdicts. Reports with identical
// input + config + seeds must be byte-identical, so nothing time- or
// thread-dependent belongs here.
struct ReportMeta {
  std::string command;       // classify | flow | wick-pair | catalog
  std::string input_path;
  std::string input_digest;
  std::string input_path_b;   // wick-pair only
  std::string input_digest_b;
  Signature sig{0, 2};
};

std::string render_classification(const ReportMeta& meta, const Classification& cls,
                                  const ClassifyConfig& cfg, ReportFormat fmt);

// Flow report; step logs are included per seed when cfg.log_every > 0.
std::string render_flow(const ReportMeta& meta, const FlowVerdict& verdict,
                        const FlowConfig& cfg, ReportFormat fmt);

std::string render_pair(const ReportMeta& meta, const PairCheck& pc,
                        double inv_tol, ReportFormat fmt);

// Fixed "%.12g" with normalized negative zero; the one number formatter all
// text reports share.
std::string format_double(double v);

}  // namespace curvorbit
