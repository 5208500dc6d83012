#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "lamtop/errors.hpp"

namespace lamtop {

using Complex = std::complex<double>;

/// Rotation by a root of unity, lambda = exp(2*pi*i*p/q) with p/q in
/// lowest terms and 0 <= p < q.  lambda then has multiplicative order
/// exactly q.
class RationalRotation {
 public:
  RationalRotation(long p, long q);

  long p() const { return p_; }
  long q() const { return q_; }
  Complex lambda() const { return lambda_; }
  Complex lambda_bar() const { return std::conj(lambda_); }

  /// lambda^k (k may be negative), computed from the reduced phase so
  /// powers stay exactly periodic with period q.
  Complex lambda_pow(long k) const;

  /// The rotation with multiplier conjugate(lambda).
  RationalRotation conjugate() const;

 private:
  long p_;
  long q_;
  Complex lambda_;
};

/// Trigonometric polynomial  s(e^{i theta}) = sum_{|n| <= M} a_n e^{i n theta},
/// stored as a sparse coefficient table.  Immutable after construction;
/// coefficients below 1e-15 in modulus are dropped.
class FourierSymbol {
 public:
  static constexpr double kCleanupThreshold = 1e-15;
  static constexpr double kCompareTol = 1e-12;

  FourierSymbol() = default;
  explicit FourierSymbol(std::map<int, Complex> coeffs);
  FourierSymbol(std::initializer_list<std::pair<int, Complex>> coeffs);

  const std::map<int, Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int n) const;

  /// Degree bound M = max |n| over the support (0 for the zero symbol).
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// True when every coefficient with n < 0 is below tol in modulus.
  bool is_analytic(double tol = kCompareTol) const;

  /// Upper bound on the sup norm of the derivative: sum |n * a_n|.
  double derivative_bound() const;

  /// Coefficients conjugated and indices negated; the symbol whose boundary
  /// values are the complex conjugates of this one's.
  FourierSymbol conjugate() const;

 private:
  std::map<int, Complex> coeffs_;
  int degree_ = 0;
};

bool approx_equal(const FourierSymbol& a, const FourierSymbol& b,
                  double tol = FourierSymbol::kCompareTol);

/// s(e^{i theta}), summed exactly over the finite support.
Complex eval(const FourierSymbol& s, double theta);

/// Evaluation of an analytic symbol at an arbitrary complex point,
/// sum_{n>=0} a_n z^n.  Throws NotAnalytic on negative support.
Complex eval_analytic(const FourierSymbol& s, Complex z);

/// Projection P onto nonnegative Fourier modes.
FourierSymbol analytic_part(const FourierSymbol& s);

/// The twisted symbol: b_n = conj(lambda)^n a_n for n >= 0, b_n = a_n for
/// n < 0.
FourierSymbol twist(const FourierSymbol& s, const RationalRotation& r);

/// Composition with the j-th power of the rotation e^{i theta} ->
/// conj(lambda) e^{i theta}: coefficient n picks up conj(lambda)^{j n}.
FourierSymbol rotate(const FourierSymbol& s, const RationalRotation& r, long j);

/// Pointwise product; coefficient convolution.
FourierSymbol multiply(const FourierSymbol& a, const FourierSymbol& b);

/// prod_{j=0}^{k-1} rotate(psi, r, j).  For k = q the result is invariant
/// under a further rotation and its support lies in q*Z.
FourierSymbol product_symbol(const FourierSymbol& psi, const RationalRotation& r,
                             long k);

/// Analytic extension into the disc, sum_{n>=0} a_n z^n for |z| < 1.
/// Throws NotAnalytic / OutOfDomain.
Complex gelfand_eval(const FourierSymbol& s, Complex z);

/// Certified sup norm: max over the circle of |s|, absolute error <= 1e-9.
/// Equispaced sampling refined by Lipschitz branch-and-bound with
/// L = sum |n a_n| >= ||s'||_inf.
double sup_norm(const FourierSymbol& s);

/// Minimum over the circle of |s(e^{i theta}) - w|, computed from the exact
/// critical points of the squared distance (a trigonometric polynomial);
/// accuracy is limited only by root-finding conditioning, well below the
/// abs_tol = 1e-9 contract.  The tolerance parameters are kept for callers
/// that budget their accuracy needs.
double min_distance(const FourierSymbol& s, Complex w, double abs_tol = 1e-9,
                    double exclude_above = -1.0);

/// Cached equispaced samples values[k] = s(e^{i theta_k}) at
/// theta_k = 2*pi*(k + 1/2)/K, shared across many min_distance queries
/// against the same symbol.
struct CircleSeed {
  int K = 0;
  std::vector<Complex> values;
};

CircleSeed make_circle_seed(const FourierSymbol& s, int K);

double min_distance(const FourierSymbol& s, const CircleSeed& seed, Complex w,
                    double abs_tol = 1e-9, double exclude_above = -1.0);

}  // namespace lamtop
