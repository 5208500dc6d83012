#include "lamtop/wco.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace lamtop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

// Moebius coefficient matrix [[a, b], [c, d]] for (a z + b)/(c z + d).
using Mat = std::array<Complex, 4>;

Mat canonical_matrix(const MoebiusAutomorphism& m) {
  return {-m.phase(), m.phase() * m.w(), -std::conj(m.w()), Complex(1.0)};
}

MoebiusAutomorphism from_matrix(const Mat& g) {
  auto [a, b, c, d] = g;
  if (std::abs(d) < 1e-300) throw InvalidInput("Moebius matrix: d ~ 0");
  a /= d;
  b /= d;
  // Canonical form has a/d = -e^{i alpha}, b/d = e^{i alpha} w.
  double mag = std::abs(a);
  if (std::abs(mag - 1.0) > 1e-9) {
    throw InvalidInput("Moebius matrix: not a disc automorphism");
  }
  double alpha = wrap_angle(std::arg(-a));
  Complex w = -b / a;
  return MoebiusAutomorphism(alpha, w);
}

}  // namespace

MoebiusAutomorphism::MoebiusAutomorphism(double alpha, Complex w)
    : alpha_(wrap_angle(alpha)), w_(w), phase_(std::polar(1.0, alpha_)) {
  if (!std::isfinite(alpha) || !std::isfinite(w.real()) ||
      !std::isfinite(w.imag())) {
    throw InvalidInput("MoebiusAutomorphism: non-finite parameter");
  }
  if (std::abs(w) >= 1.0) {
    throw InvalidInput("MoebiusAutomorphism: |w| must be < 1");
  }
}

Complex moebius_eval(const MoebiusAutomorphism& m, Complex z) {
  if (std::abs(z) > 1.0 + 1e-12) {
    throw OutOfDomain("moebius_eval: |z| must be <= 1");
  }
  return m.phase() * (m.w() - z) / (1.0 - std::conj(m.w()) * z);
}

Complex moebius_derivative(const MoebiusAutomorphism& m, Complex z) {
  Complex den = 1.0 - std::conj(m.w()) * z;
  return m.phase() * (std::norm(m.w()) - 1.0) / (den * den);
}

MoebiusAutomorphism compose(const MoebiusAutomorphism& m1,
                            const MoebiusAutomorphism& m2) {
  Mat a = canonical_matrix(m1);
  Mat b = canonical_matrix(m2);
  return from_matrix({a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                      a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]});
}

MoebiusAutomorphism inverse(const MoebiusAutomorphism& m) {
  Mat g = canonical_matrix(m);
  return from_matrix({g[3], -g[1], -g[2], g[0]});
}

Complex fixed_point(const MoebiusAutomorphism& rho) {
  Complex w = rho.w();
  if (std::abs(w) < 1e-14) {
    // rho(z) = -e^{i alpha} z; the origin is the fixed point.
    return Complex(0.0);
  }
  // conj(w) z^2 - (1 + e^{i alpha}) z + e^{i alpha} w = 0
  Complex a = std::conj(w);
  Complex b = -(1.0 + rho.phase());
  Complex c = rho.phase() * w;
  Complex sq = std::sqrt(b * b - 4.0 * a * c);
  // pick the sign avoiding cancellation
  Complex qq = std::real(std::conj(b) * sq) >= 0.0 ? -0.5 * (b + sq)
                                                   : -0.5 * (b - sq);
  std::array<Complex, 2> roots;
  if (std::abs(qq) < 1e-300) {
    roots = {Complex(0.0), Complex(0.0)};
  } else {
    roots = {qq / a, c / qq};
  }
  for (Complex z : roots) {
    if (std::abs(z) < 1.0 - 1e-10) return z;
  }
  throw NotElliptic("fixed_point: no fixed point inside the open disc");
}

MultiplierOrder multiplier_and_order(const MoebiusAutomorphism& rho,
                                     long max_order) {
  Complex z0 = fixed_point(rho);
  Complex lambda = moebius_derivative(rho, z0);
  if (std::abs(std::abs(lambda) - 1.0) > 1e-10) {
    throw NotElliptic("multiplier_and_order: |rho'(z0)| != 1");
  }
  Complex acc = 1.0;
  for (long q = 1; q <= max_order; ++q) {
    acc *= lambda;
    if (std::abs(acc - 1.0) < 1e-9) return {lambda, q};
  }
  throw NotFiniteOrder("multiplier_and_order: no order <= " +
                       std::to_string(max_order));
}

MoebiusAutomorphism conjugator(Complex z0) {
  if (std::abs(z0) >= 1.0) throw InvalidInput("conjugator: |z0| must be < 1");
  if (std::abs(z0) < 1e-14) {
    // alpha = pi, w = 0 is the identity map; nothing to move
    return MoebiusAutomorphism(std::numbers::pi, Complex(0.0));
  }
  return MoebiusAutomorphism(0.0, z0);
}

FourierSymbol pullback_symbol(const FourierSymbol& phi,
                              const MoebiusAutomorphism& zeta, int degree) {
  if (!phi.is_analytic()) {
    throw NotAnalytic("pullback_symbol: phi must be analytic");
  }
  if (degree < 0) throw InvalidInput("pullback_symbol: negative degree");
  MoebiusAutomorphism zinv = inverse(zeta);
  int n_samples = 1024;
  while (n_samples < 8 * degree) n_samples *= 2;

  std::vector<Complex> f(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    Complex z = std::polar(1.0, kTwoPi * k / n_samples);
    f[k] = eval_analytic(phi, moebius_eval(zinv, z));
  }
  // discrete orthogonality; phi o zeta^{-1} is analytic so only n >= 0 matter
  std::map<int, Complex> coeffs;
  for (int n = 0; n <= degree; ++n) {
    Complex acc = 0.0;
    for (int k = 0; k < n_samples; ++k) {
      acc += f[k] * std::polar(1.0, -kTwoPi * static_cast<double>(n) * k /
                                        n_samples);
    }
    coeffs[n] = acc / static_cast<double>(n_samples);
  }
  FourierSymbol out(std::move(coeffs));
  double residual = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    residual = std::max(residual,
                        std::abs(eval(out, kTwoPi * k / n_samples) - f[k]));
  }
  if (residual >= 1e-8) {
    throw TailTooLarge("pullback_symbol: truncation residual " +
                       std::to_string(residual) + " at degree " +
                       std::to_string(degree));
  }
  return out;
}

WcoReduction wco_reduce(const FourierSymbol& phi, const MoebiusAutomorphism& rho,
                        long max_order) {
  Complex z0 = fixed_point(rho);
  MultiplierOrder mult = multiplier_and_order(rho, max_order);
  const long q = mult.q;
  long p = std::lround(std::arg(mult.lambda) * q / kTwoPi);
  p = ((p % q) + q) % q;
  RationalRotation rotation(p, q);
  if (rotation.q() != q) {
    throw InvalidInput("wco_reduce: snapped phase p/q not in lowest terms");
  }
  if (std::abs(mult.lambda - rotation.lambda()) > 1e-9) {
    throw InvalidInput("wco_reduce: multiplier does not snap to exp(2*pi*i*p/q)");
  }
  MoebiusAutomorphism zeta = conjugator(z0);
  FourierSymbol pullback;
  for (int degree = 64;; degree *= 2) {
    try {
      pullback = pullback_symbol(phi, zeta, degree);
      break;
    } catch (const TailTooLarge&) {
      if (degree >= 4096) throw;
    }
  }
  FourierSymbol product = product_symbol(pullback, rotation, q);
  // the orbit product is rotation-invariant, so its support lies on q*Z
  // exactly; whatever lands off the lattice is cancellation residue from the
  // truncated pullback
  std::map<int, Complex> on_lattice;
  for (const auto& [n, c] : product.coeffs()) {
    if (n % q == 0) {
      on_lattice[n] = c;
    } else if (std::abs(c) > 1e-9) {
      throw InvalidInput("wco_reduce: product symbol off-lattice residue " +
                         std::to_string(std::abs(c)));
    }
  }
  product = FourierSymbol(std::move(on_lattice));
  return {z0, mult, rotation, std::move(pullback), std::move(product)};
}

SpectralClassification wco_classify(const FourierSymbol& phi,
                                    const MoebiusAutomorphism& rho, Complex mu,
                                    double tol) {
  WcoReduction red = wco_reduce(phi, rho);
  return classify(red.product, red.rotation, mu, tol);
}

}  // namespace lamtop
