#pragma once

#include <string>
#include <vector>

#include "svdcl/matrix.hpp"

namespace svdcl {

// Batched, flattened, noise-injected samples. Rows of `features` are the
// flattened inputs; `labels` carries the path coordinate s (test sets), the
// temperature (Ising), or the generation cell index (training grids).
struct Dataset {
  std::string system;
  double sigma = 0.0;
  Matrix features;             // count x feature_dim
  std::vector<double> labels;  // size count

  std::size_t count() const { return features.rows(); }
  std::size_t feature_dim() const { return features.cols(); }

  void validate() const;
};

// Binary layout (little-endian): u64 name length, name bytes, f64 sigma,
// u64 feature_dim, u64 count, then per sample feature_dim f64 features
// followed by one f64 label. A JSON sidecar `<path>.json` holding the full
// generation config and seed is written next to it by the harness.
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace svdcl
