#include "lamtop/matrixlab.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace lamtop {

namespace {

Eigen::MatrixXd tridiagonal(const Eigen::VectorXd& alpha,
                            const Eigen::VectorXd& beta) {
  const long k = alpha.size();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (long i = 0; i < k; ++i) {
    t(i, i) = alpha(i);
    if (i + 1 < k) {
      t(i, i + 1) = beta(i);
      t(i + 1, i) = beta(i);
    }
  }
  return t;
}

void check_dimension(long n) {
  if (n < 1) throw InvalidInput("dimension must be >= 1");
  if (n > DenseOperator::kMaxDimension) {
    throw DimensionCap("dimension " + std::to_string(n) + " exceeds the cap of " +
                       std::to_string(DenseOperator::kMaxDimension));
  }
}

// lambda^0 .. lambda^{n-1}, with lambda^0 = 1 even for lambda = 0.
std::vector<Complex> powers(Complex lambda, long n) {
  std::vector<Complex> p(n);
  p[0] = 1.0;
  for (long k = 1; k < n; ++k) p[k] = p[k - 1] * lambda;
  return p;
}

}  // namespace

DenseOperator::DenseOperator(Eigen::MatrixXcd m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) throw InvalidInput("DenseOperator: not square");
  check_dimension(mat_.rows());
  if (!mat_.allFinite()) throw InvalidInput("DenseOperator: non-finite entry");
}

DenseOperator build_lambda_toeplitz(const FourierSymbol& s, Complex lambda,
                                    long n) {
  check_dimension(n);
  if (std::abs(lambda) > 1.0 + 1e-12) {
    throw InvalidInput("build_lambda_toeplitz: |lambda| must be <= 1");
  }
  auto pw = powers(lambda, n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      Complex a = s.coeff(static_cast<int>(i - j));
      if (a != Complex(0.0)) m(i, j) = pw[std::min(i, j)] * a;
    }
  }
  return DenseOperator(std::move(m));
}

DenseOperator build_lambda_toeplitz(const FourierSymbol& s,
                                    const RationalRotation& r, long n) {
  return build_lambda_toeplitz(s, r.lambda(), n);
}

DenseOperator build_toeplitz(const FourierSymbol& s, long n) {
  return build_lambda_toeplitz(s, Complex(1.0), n);
}

DenseOperator build_rotation_unitary(const RationalRotation& r, long n) {
  check_dimension(n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (long k = 0; k < n; ++k) m(k, k) = r.lambda_pow(k);
  return DenseOperator(std::move(m));
}

DenseOperator build_shift(long n) {
  check_dimension(n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (long k = 0; k + 1 < n; ++k) m(k + 1, k) = 1.0;
  return DenseOperator(std::move(m));
}

double op_norm(const DenseOperator& a) {
  // Lanczos on A* A with full reorthogonalization and a fixed start vector.
  // Plain power iteration is hopeless here: the top singular values of a
  // Toeplitz section cluster with gaps ~ 1/n^2, while the extremal Ritz
  // value of a Krylov space converges orders of magnitude faster.
  const auto& m = a.matrix();
  const long n = m.rows();
  const long max_steps = std::min<long>(n, 500);

  Eigen::MatrixXcd basis(n, max_steps);
  Eigen::VectorXd alpha(max_steps), beta(max_steps);
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n);
  v /= v.norm();
  basis.col(0) = v;

  double prev_ritz = -1.0;
  int stagnant = 0;
  long k = 0;
  for (; k < max_steps; ++k) {
    Eigen::VectorXcd w = m.adjoint() * (m * basis.col(k));
    alpha(k) = w.dot(basis.col(k)).real();
    w -= alpha(k) * basis.col(k);
    if (k > 0) w -= beta(k - 1) * basis.col(k - 1);
    // full reorthogonalization, twice, for numerical stability
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
    }
    beta(k) = w.norm();
    if (beta(k) < 1e-14) {
      ++k;
      break;  // invariant subspace found: Ritz values are exact
    }
    if ((k + 1) % 10 == 0 || k + 1 == max_steps) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          tridiagonal(alpha.head(k + 1), beta.head(k)));
      double ritz = es.eigenvalues().maxCoeff();
      if (prev_ritz >= 0.0 && ritz - prev_ritz <= 1e-13 * std::max(ritz, 1.0)) {
        if (++stagnant >= 2) return std::sqrt(std::max(0.0, ritz));
      } else {
        stagnant = 0;
      }
      prev_ritz = ritz;
    }
    if (k + 1 < max_steps) basis.col(k + 1) = w / beta(k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      tridiagonal(alpha.head(k), beta.head(std::max<long>(0, k - 1))));
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

std::vector<double> singular_values(const DenseOperator& a) {
  Eigen::VectorXd sv;
  if (a.n() <= 24) {
    sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(a.matrix()).singularValues();
  } else {
    sv = Eigen::BDCSVD<Eigen::MatrixXcd>(a.matrix()).singularValues();
  }
  return {sv.data(), sv.data() + sv.size()};
}

double smallest_singular(const DenseOperator& a, Complex mu) {
  Eigen::MatrixXcd b = a.matrix();
  b.diagonal().array() -= mu;
  return singular_values(DenseOperator(std::move(b))).back();
}

}  // namespace lamtop
