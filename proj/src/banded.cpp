// SPDX-License-Identifier: Apache-2.0
#include "tfsi/banded.hpp"

#include <algorithm>
#include <cmath>

namespace tfsi {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), stride_(2 * kl + ku + 1),
      data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(2 * kl + ku + 1), 0.0) {
  if (n < 1 || kl < 0 || ku < 0)
    throw ConfigError("BandedMatrix: invalid dimensions");
}

double& BandedMatrix::at(int i, int j) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || j - i > ku_ || i - j > kl_)
    throw SequencingError("BandedMatrix::at outside band");
  return band(i, j);
}

double BandedMatrix::at(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || j - i > ku_ || i - j > kl_)
    throw SequencingError("BandedMatrix::at outside band");
  return band(i, j);
}

void BandedMatrix::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

Eigen::VectorXd BandedMatrix::lu_solve(const Eigen::VectorXd& rhs) {
  if (rhs.size() != n_) throw ConfigError("BandedMatrix::lu_solve: size mismatch");
  Eigen::VectorXd x = rhs;
  const int kw = kl_ + ku_;  // upper bandwidth after pivot fill-in

  // Gaussian elimination with partial pivoting, band version. Column k's
  // pivot candidates live in rows k..k+kl; a row swap can spill fill-in up
  // to kl extra superdiagonals, which the storage provides.
  for (int k = 0; k < n_; ++k) {
    const int last_row = std::min(k + kl_, n_ - 1);
    int p = k;
    for (int i = k + 1; i <= last_row; ++i)
      if (std::abs(band(i, k)) > std::abs(band(p, k))) p = i;
    if (std::abs(band(p, k)) < 1e-300)
      throw SolverFailure("BandedMatrix: singular pivot in column " + std::to_string(k));

    const int last_col = std::min(k + kw, n_ - 1);
    if (p != k) {
      for (int j = k; j <= last_col; ++j) std::swap(band(k, j), band(p, j));
      std::swap(x[k], x[p]);
    }

    const double pivot = band(k, k);
    for (int i = k + 1; i <= last_row; ++i) {
      const double m = band(i, k) / pivot;
      if (m == 0.0) continue;
      for (int j = k + 1; j <= last_col; ++j) band(i, j) -= m * band(k, j);
      x[i] -= m * x[k];
    }
  }

  for (int i = n_ - 1; i >= 0; --i) {
    const int last_col = std::min(i + kw, n_ - 1);
    double acc = x[i];
    for (int j = i + 1; j <= last_col; ++j) acc -= band(i, j) * x[j];
    x[i] = acc / band(i, i);
  }
  return x;
}

Eigen::MatrixXd BandedMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j)
      m(i, j) = band(i, j);
  return m;
}

}  // namespace tfsi
