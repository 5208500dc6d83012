#pragma once

#include "lamtop/spectra.hpp"
#include "lamtop/symbol.hpp"

namespace lamtop {

/// Disc automorphism in canonical form rho(z) = e^{i alpha} (w - z)/(1 - conj(w) z)
/// with |w| < 1 and alpha in [0, 2*pi).
class MoebiusAutomorphism {
 public:
  MoebiusAutomorphism(double alpha, Complex w);

  double alpha() const { return alpha_; }
  Complex w() const { return w_; }
  Complex phase() const { return phase_; }  // e^{i alpha}

 private:
  double alpha_;
  Complex w_;
  Complex phase_;
};

Complex moebius_eval(const MoebiusAutomorphism& m, Complex z);

/// Derivative rho'(z) by the exact rational-function formula.
Complex moebius_derivative(const MoebiusAutomorphism& m, Complex z);

/// Composition m1 after m2, renormalised back to canonical form.
MoebiusAutomorphism compose(const MoebiusAutomorphism& m1,
                            const MoebiusAutomorphism& m2);

MoebiusAutomorphism inverse(const MoebiusAutomorphism& m);

/// The unique fixed point in the open disc of an elliptic automorphism,
/// from the stable quadratic formula.  Throws NotElliptic when both roots
/// sit on or outside the unit circle.
Complex fixed_point(const MoebiusAutomorphism& rho);

struct MultiplierOrder {
  Complex lambda;  // rho'(z0), on the unit circle
  long q;          // smallest q with lambda^q = 1
};

MultiplierOrder multiplier_and_order(const MoebiusAutomorphism& rho,
                                     long max_order = 64);

/// The standard involution zeta(z) = (z0 - z)/(1 - conj(z0) z); zeta(0) = z0,
/// zeta(z0) = 0, zeta o zeta = id.
MoebiusAutomorphism conjugator(Complex z0);

/// Fourier coefficients of phi o zeta^{-1} recovered from circle samples and
/// truncated at the given degree, with a certified tail residual < 1e-8.
FourierSymbol pullback_symbol(const FourierSymbol& phi,
                              const MoebiusAutomorphism& zeta, int degree);

/// Reduces the weighted composition operator with weight phi and finite-order
/// elliptic automorphism rho to lambda-Toeplitz form and classifies mu.
SpectralClassification wco_classify(const FourierSymbol& phi,
                                    const MoebiusAutomorphism& rho, Complex mu,
                                    double tol = 1e-8);

/// The (product symbol, rotation) pair the reduction hands to spectra;
/// exposed so callers can reuse it across many queries.
struct WcoReduction {
  Complex z0;
  MultiplierOrder mult;
  RationalRotation rotation;
  FourierSymbol pullback;  // phi o zeta^{-1}
  FourierSymbol product;   // prod_{k=0}^{q-1} pullback o tau_bar^k
};

WcoReduction wco_reduce(const FourierSymbol& phi, const MoebiusAutomorphism& rho,
                        long max_order = 64);

}  // namespace lamtop
