#include "svdcl/dataset.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "svdcl/errors.hpp"

namespace svdcl {

namespace {

void write_u64(std::ostream& os, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

uint64_t read_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  if (!is) throw ValidationError("truncated dataset file");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

void write_f64(std::ostream& os, double d) {
  uint64_t v;
  std::memcpy(&v, &d, 8);
  write_u64(os, v);
}

double read_f64(std::istream& is) {
  uint64_t v = read_u64(is);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

}  // namespace

void Dataset::validate() const {
  if (features.rows() != labels.size())
    throw ValidationError("dataset: label count " + std::to_string(labels.size()) +
                          " != sample count " + std::to_string(features.rows()));
  features.require_finite("dataset features");
  for (double l : labels)
    if (!std::isfinite(l)) throw NumericalError("dataset: non-finite label");
}

void save_dataset(const Dataset& ds, const std::string& path) {
  ds.validate();
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ValidationError("cannot open for write: " + path);
  write_u64(os, ds.system.size());
  os.write(ds.system.data(), static_cast<std::streamsize>(ds.system.size()));
  write_f64(os, ds.sigma);
  write_u64(os, ds.feature_dim());
  write_u64(os, ds.count());
  for (std::size_t i = 0; i < ds.count(); ++i) {
    const double* row = ds.features.row(i);
    for (std::size_t j = 0; j < ds.feature_dim(); ++j) write_f64(os, row[j]);
    write_f64(os, ds.labels[i]);
  }
  if (!os) throw ValidationError("write failed: " + path);
}

Dataset load_dataset(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open dataset: " + path);
  Dataset ds;
  const uint64_t name_len = read_u64(is);
  if (name_len > 4096) throw ValidationError("corrupt dataset header: " + path);
  ds.system.resize(name_len);
  is.read(ds.system.data(), static_cast<std::streamsize>(name_len));
  ds.sigma = read_f64(is);
  const uint64_t dim = read_u64(is);
  const uint64_t count = read_u64(is);
  ds.features = Matrix(count, dim);
  ds.labels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    double* row = ds.features.row(i);
    for (std::size_t j = 0; j < dim; ++j) row[j] = read_f64(is);
    ds.labels[i] = read_f64(is);
  }
  ds.validate();
  return ds;
}

}  // namespace svdcl
