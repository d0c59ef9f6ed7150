#include "curvorbit/tensor_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curvorbit/bivector.hpp"

namespace curvorbit {

using ordered_json = nlohmann::ordered_json;

TensorFile parse_tensor_file(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw TensorFileError(std::string("JSON parse error: ") + e.what());
  }

  TensorFile f;
  if (!j.is_object() || !j.contains("header"))
    throw TensorFileError("missing 'header' object");
  const auto& h = j["header"];
  if (!h.contains("signature") || !h["signature"].is_array() ||
      h["signature"].size() != 2)
    throw TensorFileError("header.signature must be [p, q]");
  try {
    f.sig = Signature(h["signature"][0].get<int>(), h["signature"][1].get<int>());
  } catch (const std::exception& e) {
    throw TensorFileError(std::string("header.signature: ") + e.what());
  }
  f.format_version = h.value("format_version", kTensorFormatVersion);
  if (f.format_version != kTensorFormatVersion)
    throw TensorFileError("unsupported format_version " +
                          std::to_string(f.format_version));
  f.name = h.value("name", std::string{});

  if (j.contains("options")) {
    const auto& o = j["options"];
    if (!o.is_object()) throw TensorFileError("'options' must be an object");
    f.symmetry_completion = o.value("symmetry_completion", true);
  }

  if (!j.contains("entries") || !j["entries"].is_array())
    throw TensorFileError("missing 'entries' array");
  int line = 0;
  for (const auto& e : j["entries"]) {
    const std::string where = "entries[" + std::to_string(line) + "]";
    if (!e.is_object() || !e.contains("indices") || !e.contains("value"))
      throw TensorFileError(where + ": need 'indices' and 'value'");
    const auto& idx = e["indices"];
    if (!idx.is_array() || idx.size() != 4)
      throw TensorFileError(where + ".indices must hold 4 integers");
    TensorEntry te;
    try {
      te.a = idx[0].get<int>();
      te.b = idx[1].get<int>();
      te.c = idx[2].get<int>();
      te.d = idx[3].get<int>();
      te.value = e["value"].get<double>();
    } catch (const std::exception& ex) {
      throw TensorFileError(where + ": " + ex.what());
    }
    const int n = f.sig.n();
    for (int i : {te.a, te.b, te.c, te.d})
      if (i < 0 || i >= n)
        throw TensorFileError(where + ": index " + std::to_string(i) +
                              " outside [0," + std::to_string(n) + ")");
    f.entries.push_back(te);
    ++line;
  }
  return f;
}

TensorFile read_tensor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TensorFileError("cannot open tensor file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tensor_file(ss.str());
}

RiemannTensor realize(const TensorFile& f, double sym_tol) {
  RiemannTensor t(f.sig);
  try {
    t = tensor_from_entries(f.sig, f.entries, f.symmetry_completion, sym_tol);
  } catch (const std::invalid_argument& e) {
    throw TensorFileError(e.what());
  }
  const auto rep = validate_riemann(t, sym_tol);
  if (!rep.ok) {
    const auto& w = rep.violations.front();
    std::ostringstream os;
    os << "tensor violates " << w.kind << " at (" << w.indices[0] << ","
       << w.indices[1] << "," << w.indices[2] << "," << w.indices[3]
       << "), magnitude " << w.magnitude;
    throw TensorFileError(os.str());
  }
  return t;
}

TensorFile tensor_file_from(const RiemannTensor& t, const std::string& name) {
  TensorFile f;
  f.sig = t.signature();
  f.name = name;
  const BivectorBasis basis(f.sig);
  for (int A = 0; A < basis.dim(); ++A)
    for (int B = A; B < basis.dim(); ++B) {
      const auto [a, b] = basis.pair(A);
      const auto [c, d] = basis.pair(B);
      const double v = t(a, b, c, d);
      if (v != 0.0) f.entries.push_back({a, b, c, d, v});
    }
  return f;
}

std::string write_tensor_file(const TensorFile& f) {
  ordered_json j;
  j["header"] = ordered_json::object();
  j["header"]["signature"] = {f.sig.p, f.sig.q};
  j["header"]["format_version"] = f.format_version;
  if (!f.name.empty()) j["header"]["name"] = f.name;
  j["options"] = {{"symmetry_completion", f.symmetry_completion}};
  j["entries"] = ordered_json::array();
  for (const auto& e : f.entries) {
    ordered_json je;
    je["indices"] = {e.a, e.b, e.c, e.d};
    je["value"] = e.value;
    j["entries"].push_back(je);
  }
  return j.dump(2) + "\n";
}

void save_tensor_file(const TensorFile& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TensorFileError("cannot write tensor file: " + path);
  out << write_tensor_file(f);
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace curvorbit
