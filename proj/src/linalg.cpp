#include "svdcl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "svdcl/errors.hpp"
#include "svdcl/rng.hpp"

namespace svdcl {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ValidationError("matrix += shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ValidationError("matrix -= shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double scale) {
  for (double& x : data_) x *= scale;
  return *this;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::fabs(x));
  return m;
}

bool Matrix::all_finite() const {
  for (double x : data_)
    if (!std::isfinite(x)) return false;
  return true;
}

void Matrix::require_finite(const std::string& what) const {
  if (!all_finite())
    throw NumericalError(what + ": non-finite entry in " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + " matrix");
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matmul shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ValidationError("matmul_nt shape mismatch");
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double* bj = b.row(j);
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += ai[k] * bj[k];
      ci[j] = s;
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ValidationError("matmul_tn shape mismatch");
  Matrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* ak = a.row(k);
    const double* bk = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = ak[i];
      if (aki == 0.0) continue;
      double* ci = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aki * bk[j];
    }
  }
  return c;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_u64(std::ostream& os, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

uint64_t read_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  if (!is) throw ValidationError("truncated binary matrix header");
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

void Matrix::write_binary(std::ostream& os) const {
  write_u64(os, rows_);
  write_u64(os, cols_);
  for (double d : data_) write_f64(os, d);
}

Matrix Matrix::read_binary(std::istream& is) {
  const uint64_t r = read_u64(is);
  const uint64_t c = read_u64(is);
  Matrix m(r, c);
  for (double& d : m.data_) d = read_f64(is);
  if (!is) throw ValidationError("truncated binary matrix payload");
  return m;
}

void Matrix::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << format_double((*this)(i, j));
    }
    os << '\n';
  }
}

Matrix Matrix::read_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError("ragged CSV matrix");
    rows.push_back(std::move(row));
  }
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix SvdResult::reconstruct() const {
  Matrix us = u;
  for (std::size_t i = 0; i < us.rows(); ++i)
    for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= sigma[j];
  return matmul_nt(us, v);
}

namespace {

constexpr double kJacobiTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

// One-sided Jacobi on a with rows >= cols. Orthogonalizes column pairs of a
// working copy while accumulating the rotations into v.
SvdResult svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);

  double worst = 0.0;
  bool converged = (n <= 1);
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double wp = w(i, p), wq = w(i, q);
          alpha += wp * wp;
          beta += wq * wq;
          gamma += wp * wq;
        }
        const double denom = std::sqrt(alpha * beta);
        if (denom == 0.0) continue;
        const double ratio = std::fabs(gamma) / denom;
        worst = std::max(worst, ratio);
        if (ratio <= kJacobiTol) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    converged = worst <= kJacobiTol;
  }
  if (!converged)
    throw NumericalError("svd: Jacobi failed to converge on " + std::to_string(m) + "x" +
                         std::to_string(n) + " matrix, residual " + format_double(worst));

  std::vector<double> sigma(n);
  Matrix u(m, n);
  double sigma_max = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += w(i, j) * w(i, j);
    sigma[j] = std::sqrt(s);
    sigma_max = std::max(sigma_max, sigma[j]);
  }

  // Numerically-zero columns get an orthonormal completion so u^T u = I holds
  // even for rank-deficient input.
  const double tiny = (sigma_max > 0.0 ? sigma_max : 1.0) * 1e-14;
  std::vector<std::size_t> null_cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (sigma[j] > tiny) {
      for (std::size_t i = 0; i < m; ++i) u(i, j) = w(i, j) / sigma[j];
    } else {
      sigma[j] = 0.0;
      null_cols.push_back(j);
    }
  }
  for (std::size_t j : null_cols) {
    // Gram-Schmidt a canonical basis vector against all filled columns.
    for (std::size_t cand = 0; cand < m; ++cand) {
      std::vector<double> e(m, 0.0);
      e[cand] = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j || (sigma[k] == 0.0 && k > j)) continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += e[i] * u(i, k);
        for (std::size_t i = 0; i < m; ++i) e[i] -= dot * u(i, k);
      }
      double nrm = 0.0;
      for (double x : e) nrm += x * x;
      nrm = std::sqrt(nrm);
      if (nrm > 0.5) {
        for (std::size_t i = 0; i < m; ++i) u(i, j) = e[i] / nrm;
        break;
      }
    }
  }

  // Stable descending sort keeps Jacobi order on ties.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult out;
  out.u = Matrix(m, n);
  out.v = Matrix(n, n);
  out.sigma.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = sigma[src];
    for (std::size_t i = 0; i < m; ++i) out.u(i, j) = u(i, src);
    for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
  }

  // Sign convention: largest-magnitude entry of each left vector non-negative.
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double mag = std::fabs(out.u(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (out.u(arg, j) < 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, j) = -out.u(i, j);
      for (std::size_t i = 0; i < n; ++i) out.v(i, j) = -out.v(i, j);
    }
  }
  return out;
}

}  // namespace

SvdResult svd(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw ValidationError("svd: empty matrix");
  a.require_finite("svd input");
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(a.transposed());
  SvdResult out;
  out.u = std::move(t.v);
  out.v = std::move(t.u);
  out.sigma = std::move(t.sigma);
  // Re-apply the sign convention to the swapped factors.
  const std::size_t m = out.u.rows(), n = out.v.rows(), k = out.sigma.size();
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double mag = std::fabs(out.u(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (out.u(arg, j) < 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, j) = -out.u(i, j);
      for (std::size_t i = 0; i < n; ++i) out.v(i, j) = -out.v(i, j);
    }
  }
  return out;
}

Matrix project_semi_orthogonal(const Matrix& a) {
  if (a.rows() < a.cols())
    throw ValidationError("project_semi_orthogonal: need rows >= cols, got " +
                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  const SvdResult f = svd(a);
  return matmul_nt(f.u, f.v);
}

double orthogonality_defect(const Matrix& a) {
  if (a.rows() < a.cols())
    throw ValidationError("orthogonality_defect: need rows >= cols");
  Matrix g = matmul_tn(a, a);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return g.frobenius_norm();
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, uint64_t seed) {
  if (rows == 0 || cols == 0) throw ValidationError("gaussian_matrix: empty shape");
  Rng rng(seed);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) m.data()[i] = rng.gaussian();
  return m;
}

}  // namespace svdcl
