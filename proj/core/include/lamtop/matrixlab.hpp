#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lamtop/symbol.hpp"

namespace lamtop {

/// Dense n x n complex matrix, the top-left compression of an operator onto
/// span{e_0, ..., e_{n-1}}.  entry(row, col) = <T e_col, e_row>.  Immutable
/// after construction.
class DenseOperator {
 public:
  static constexpr long kMaxDimension = 8192;

  explicit DenseOperator(Eigen::MatrixXcd m);

  long n() const { return mat_.rows(); }
  Complex entry(long row, long col) const { return mat_(row, col); }
  const Eigen::MatrixXcd& matrix() const { return mat_; }

 private:
  Eigen::MatrixXcd mat_;
};

/// Truncation of the lambda-Toeplitz operator with symbol s:
/// entry(i, j) = lambda^{min(i,j)} a_{i-j}.  Any |lambda| <= 1 is accepted.
DenseOperator build_lambda_toeplitz(const FourierSymbol& s, Complex lambda,
                                    long n);
DenseOperator build_lambda_toeplitz(const FourierSymbol& s,
                                    const RationalRotation& r, long n);

/// Ordinary Toeplitz truncation, entry(i, j) = a_{i-j}.
DenseOperator build_toeplitz(const FourierSymbol& s, long n);

/// Diagonal unitary diag(lambda^0, ..., lambda^{n-1}).
DenseOperator build_rotation_unitary(const RationalRotation& r, long n);

/// Unilateral shift truncation, entry(i+1, i) = 1.
DenseOperator build_shift(long n);

/// Largest singular value, relative accuracy 1e-8.  Deterministic power
/// iteration on A* A from a fixed start vector.
double op_norm(const DenseOperator& a);

/// Smallest singular value of (A - mu I).
double smallest_singular(const DenseOperator& a, Complex mu);

/// All singular values, descending.
std::vector<double> singular_values(const DenseOperator& a);

}  // namespace lamtop
