#include "lamtop/symbol.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace lamtop {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_finite(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw InvalidInput(std::string(what) + ": non-finite value");
  }
}
}  // namespace

RationalRotation::RationalRotation(long p, long q) {
  if (q <= 0) throw InvalidInput("RationalRotation: q must be positive");
  p = ((p % q) + q) % q;
  long g = std::gcd(p, q);
  if (g == 0) g = 1;  // p == 0, q stays as given
  if (p == 0) {
    q = 1;
  } else {
    p /= g;
    q /= g;
  }
  p_ = p;
  q_ = q;
  lambda_ = std::polar(1.0, kTwoPi * static_cast<double>(p_) / static_cast<double>(q_));
}

Complex RationalRotation::lambda_pow(long k) const {
  long e = ((k % q_) * (p_ % q_)) % q_;
  e = ((e % q_) + q_) % q_;
  return std::polar(1.0, kTwoPi * static_cast<double>(e) / static_cast<double>(q_));
}

RationalRotation RationalRotation::conjugate() const {
  return RationalRotation((q_ - p_) % q_, q_);
}

FourierSymbol::FourierSymbol(std::map<int, Complex> coeffs) {
  for (const auto& [n, v] : coeffs) {
    check_finite(v, "FourierSymbol");
    if (std::abs(v) >= kCleanupThreshold) coeffs_[n] = v;
  }
  for (const auto& [n, v] : coeffs_) degree_ = std::max(degree_, std::abs(n));
}

FourierSymbol::FourierSymbol(std::initializer_list<std::pair<int, Complex>> coeffs)
    : FourierSymbol(std::map<int, Complex>(coeffs.begin(), coeffs.end())) {}

Complex FourierSymbol::coeff(int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

bool FourierSymbol::is_analytic(double tol) const {
  for (const auto& [n, v] : coeffs_) {
    if (n < 0 && std::abs(v) > tol) return false;
  }
  return true;
}

double FourierSymbol::derivative_bound() const {
  double L = 0.0;
  for (const auto& [n, v] : coeffs_) L += std::abs(n) * std::abs(v);
  return L;
}

FourierSymbol FourierSymbol::conjugate() const {
  std::map<int, Complex> out;
  for (const auto& [n, v] : coeffs_) out[-n] = std::conj(v);
  return FourierSymbol(std::move(out));
}

bool approx_equal(const FourierSymbol& a, const FourierSymbol& b, double tol) {
  auto check = [&](const FourierSymbol& x, const FourierSymbol& y) {
    for (const auto& [n, v] : x.coeffs()) {
      if (std::abs(v - y.coeff(n)) > tol) return false;
    }
    return true;
  };
  return check(a, b) && check(b, a);
}

Complex eval(const FourierSymbol& s, double theta) {
  Complex acc = 0.0;
  for (const auto& [n, v] : s.coeffs()) {
    acc += v * std::polar(1.0, n * theta);
  }
  return acc;
}

Complex eval_analytic(const FourierSymbol& s, Complex z) {
  if (!s.is_analytic()) {
    throw NotAnalytic("eval_analytic: symbol has negative-index support");
  }
  // Horner over n = M .. 0.
  Complex acc = 0.0;
  int prev = -1;
  for (auto it = s.coeffs().rbegin(); it != s.coeffs().rend(); ++it) {
    if (it->first < 0) break;
    if (prev >= 0) {
      for (int k = 0; k < prev - it->first; ++k) acc *= z;
    }
    acc += it->second;
    prev = it->first;
  }
  if (prev > 0) {
    for (int k = 0; k < prev; ++k) acc *= z;
  }
  return acc;
}

FourierSymbol analytic_part(const FourierSymbol& s) {
  std::map<int, Complex> out;
  for (const auto& [n, v] : s.coeffs()) {
    if (n >= 0) out[n] = v;
  }
  return FourierSymbol(std::move(out));
}

FourierSymbol twist(const FourierSymbol& s, const RationalRotation& r) {
  std::map<int, Complex> out;
  for (const auto& [n, v] : s.coeffs()) {
    out[n] = n >= 0 ? r.lambda_pow(-n) * v : v;
  }
  return FourierSymbol(std::move(out));
}

FourierSymbol rotate(const FourierSymbol& s, const RationalRotation& r, long j) {
  std::map<int, Complex> out;
  for (const auto& [n, v] : s.coeffs()) {
    out[n] = r.lambda_pow(-j * n) * v;
  }
  return FourierSymbol(std::move(out));
}

FourierSymbol multiply(const FourierSymbol& a, const FourierSymbol& b) {
  std::map<int, Complex> out;
  for (const auto& [n, av] : a.coeffs()) {
    for (const auto& [m, bv] : b.coeffs()) {
      out[n + m] += av * bv;
    }
  }
  return FourierSymbol(std::move(out));
}

FourierSymbol product_symbol(const FourierSymbol& psi, const RationalRotation& r,
                             long k) {
  if (k < 1) throw InvalidInput("product_symbol: k must be >= 1");
  FourierSymbol acc = psi;
  for (long j = 1; j < k; ++j) {
    acc = multiply(acc, rotate(psi, r, j));
  }
  return acc;
}

Complex gelfand_eval(const FourierSymbol& s, Complex z) {
  if (std::abs(z) >= 1.0) {
    throw OutOfDomain("gelfand_eval: |z| must be < 1");
  }
  return eval_analytic(s, z);
}

namespace {

// Exact extrema of theta -> |s(e^{i theta}) - w| over the circle.
//
// g(theta) = |s - w|^2 is itself a trigonometric polynomial with Laurent
// coefficients c_k = sum_n b_n conj(b_{n-k}), where b is s with w subtracted
// from the constant term.  Its critical points are the unit-modulus roots of
// the ordinary polynomial z^D g'(z); those are computed via the companion
// matrix, so the extremum is exact up to root-finding conditioning (far
// below 1e-12 for the degrees seen here).  A coarse sample grid (the seed,
// when one is supplied) guards against any missed root.
double circle_extremum(const FourierSymbol& s, Complex w, bool maximize,
                       const CircleSeed* seed) {
  std::map<int, Complex> b(s.coeffs().begin(), s.coeffs().end());
  b[0] -= w;

  std::map<int, Complex> c;
  for (const auto& [n, bn] : b) {
    for (const auto& [m, bm] : b) {
      c[n - m] += bn * std::conj(bm);
    }
  }
  int D = 0;
  for (const auto& [k, v] : c) D = std::max(D, std::abs(k));

  auto g = [&](double theta) { return std::abs(eval(s, theta) - w); };
  double best = g(0.0);
  auto consider = [&](double v) {
    best = maximize ? std::max(best, v) : std::min(best, v);
  };

  if (D > 0) {
    // p(z) = z^D g'(z) = sum_k i k c_k z^{k+D}, degree 2D
    std::vector<Complex> p(2 * D + 1, Complex(0.0));
    for (const auto& [k, v] : c) {
      p[k + D] = Complex(0.0, static_cast<double>(k)) * v;
    }
    while (p.size() > 1 && std::abs(p.back()) < 1e-300) p.pop_back();
    long deg = static_cast<long>(p.size()) - 1;
    if (deg > 0) {
      Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
      for (long j = 0; j + 1 < deg; ++j) companion(j + 1, j) = 1.0;
      for (long j = 0; j < deg; ++j) companion(j, deg - 1) = -p[j] / p[deg];
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
      for (long j = 0; j < deg; ++j) {
        Complex z = es.eigenvalues()[j];
        if (std::abs(std::abs(z) - 1.0) < 1e-6) consider(g(std::arg(z)));
      }
    }
  }

  if (seed) {
    for (const Complex& v : seed->values) consider(std::abs(v - w));
  } else {
    int K = std::max(64, 16 * D);
    for (int k = 0; k < K; ++k) consider(g(kTwoPi * (k + 0.5) / K));
  }
  return best;
}

}  // namespace

double sup_norm(const FourierSymbol& s) {
  if (s.is_zero()) return 0.0;
  return circle_extremum(s, Complex(0.0), /*maximize=*/true, nullptr);
}

double min_distance(const FourierSymbol& s, Complex w, double abs_tol,
                    double exclude_above) {
  check_finite(w, "min_distance");
  (void)abs_tol;
  (void)exclude_above;
  return circle_extremum(s, w, /*maximize=*/false, nullptr);
}

CircleSeed make_circle_seed(const FourierSymbol& s, int K) {
  if (K < 1) throw InvalidInput("make_circle_seed: K must be >= 1");
  CircleSeed seed;
  seed.K = K;
  seed.values.resize(K);
  for (int k = 0; k < K; ++k) {
    seed.values[k] = eval(s, kTwoPi * (k + 0.5) / K);
  }
  return seed;
}

double min_distance(const FourierSymbol& s, const CircleSeed& seed, Complex w,
                    double abs_tol, double exclude_above) {
  check_finite(w, "min_distance");
  (void)abs_tol;
  (void)exclude_above;
  return circle_extremum(s, w, /*maximize=*/false, &seed);
}

}  // namespace lamtop
