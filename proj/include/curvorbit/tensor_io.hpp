#pragma once

#include <string>
#include <vector>

#include "curvorbit/riemann.hpp"
#include "curvorbit/signature.hpp"

namespace curvorbit {

inline constexpr int kTensorFormatVersion = 1;

// On-disk tensor file: header {signature, format_version}, entry list, and
// the symmetry_completion option (default on).
struct TensorFile {
  Signature sig;
  int format_version = kTensorFormatVersion;
  bool symmetry_completion = true;
  std::vector<TensorEntry> entries;
  std::string name;  // optional, informational
};

// Thrown on malformed input; message carries field/entry diagnostics.
struct TensorFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TensorFile read_tensor_file(const std::string& path);
TensorFile parse_tensor_file(const std::string& json_text);

// Completed tensor; throws TensorFileError when completion conflicts or the
// validation fails.
RiemannTensor realize(const TensorFile& f, double sym_tol = kSymTol);

// Canonical serialization: representatives a<b, c<d with (ab) <= (cd),
// sorted, zeros skipped.
std::string write_tensor_file(const TensorFile& f);
TensorFile tensor_file_from(const RiemannTensor& t, const std::string& name = "");

void save_tensor_file(const TensorFile& f, const std::string& path);

// FNV-1a 64 over raw bytes, as 16 hex digits.
std::string digest_hex(const std::string& bytes);

}  // namespace curvorbit
