// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_BANDED_HPP
#define TFSI_BANDED_HPP

#include <vector>

#include "tfsi/types.hpp"

namespace tfsi {

/// Square banded matrix with kl subdiagonals and ku superdiagonals, stored
/// in LAPACK band layout with kl extra superdiagonal rows of workspace for
/// the fill-in of partial pivoting. Entry (i, j) is addressable whenever
/// -kl <= j - i <= ku.
class BandedMatrix {
public:
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

  double& at(int i, int j);
  double at(int i, int j) const;
  void add(int i, int j, double v) { at(i, j) += v; }
  void set_zero();

  /// In-place LU factorization with partial pivoting followed by a solve.
  /// Throws SolverFailure on a (numerically) singular pivot. The matrix is
  /// consumed: refill before the next solve.
  Eigen::VectorXd lu_solve(const Eigen::VectorXd& rhs);

  Eigen::MatrixXd to_dense() const;

private:
  int n_, kl_, ku_;
  int stride_;                 // rows in band storage: 2*kl + ku + 1
  std::vector<double> data_;   // column-major bands
  double& band(int i, int j) { return data_[j * stride_ + (kl_ + ku_ + i - j)]; }
  double band(int i, int j) const { return data_[j * stride_ + (kl_ + ku_ + i - j)]; }
};

}  // namespace tfsi

#endif
