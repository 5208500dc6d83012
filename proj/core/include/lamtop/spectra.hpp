#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lamtop/symbol.hpp"

namespace lamtop {

/// Sampled closed curve theta_i -> w_i on the image of the circle.
struct CurveSamples {
  std::vector<double> thetas;   // strictly increasing, in [0, 2*pi)
  std::vector<Complex> values;  // w_i = f(e^{i theta_i})
  bool closed = true;           // the last sample wraps to the first

  void validate() const;  // throws InvalidInput on a malformed curve
};

enum class SpectralKind { Resolvent, EssentialSpectrum, FredholmHole, NearBoundary };

const char* to_string(SpectralKind k);

/// Outcome of the invertibility trichotomy at one point mu.  A fourth case
/// (Fredholm, index 0, yet not invertible) cannot occur for analytic C^1
/// symbols and is never emitted.
struct SpectralClassification {
  SpectralKind kind;
  std::optional<long> index;  // present iff FredholmHole
  double distance;            // certified min distance of mu^q to the curve
};

/// Standard winding number of the sampled curve about w, by summing
/// principal-branch argument differences.  Requires every step below pi/2;
/// throws OnCurve when the curve passes within tol of w, InvalidInput when
/// the sampling is too coarse to pin the argument down.
long winding_number(const CurveSamples& c, Complex w, double tol = 1e-9);

/// Winding number of theta -> eval(s, theta) - w about 0, with adaptive
/// sample doubling (from 256) until the value is stable for two consecutive
/// doublings and every step stays below pi/2.
long winding_number(const FourierSymbol& s, Complex w, double tol = 1e-9);

struct EssMembership {
  bool member;
  double distance;
};

/// mu lies in the essential spectrum iff mu^q lands on the curve traced by
/// prod; decided via the certified min distance against tol.
EssMembership ess_membership(const FourierSymbol& prod, const RationalRotation& r,
                             Complex mu, double tol);

/// Fredholm index -wn/q of T - mu, where wn is the standard winding number
/// of the prod curve about mu^q.  Throws NonIntegralIndex when wn is not
/// divisible by q.
long fredholm_index(const FourierSymbol& prod, const RationalRotation& r,
                    Complex mu);

/// Full trichotomy at mu.  prod must be analytic.  EssentialSpectrum when
/// the certified distance is below the certification floor (1e-9),
/// NearBoundary when it falls inside (floor, tol], otherwise FredholmHole
/// or Resolvent by the winding number.
SpectralClassification classify(const FourierSymbol& prod,
                                const RationalRotation& r, Complex mu,
                                double tol = 1e-8);

/// Essential spectral radius sup_norm(prod)^{1/q}.
double ess_radius(const FourierSymbol& prod, const RationalRotation& r);

/// Jury's C(T)-valued determinant for T = sum_j T_{f_j} C_rho^j with
/// rho the rotation by conj(lambda): at each sampled theta the q x q matrix
/// entry(k, j) = f_{(j-k) mod q} evaluated after k rotations, reduced by
/// partial-pivoting elimination.
CurveSamples jury_determinant(const std::vector<FourierSymbol>& fs,
                              const RationalRotation& r, int samples);

/// Fredholm index -(1/q) * winding_number(c, 0) per Jury's theorem.
long jury_index(const CurveSamples& c, const RationalRotation& r,
                double tol = 1e-9);

struct Box {
  double re_min, re_max, im_min, im_max;
};

struct RegionGrid {
  Box box;
  int resolution;
  // Row-major, row 0 at im_min; node (ix, iy) at index iy * resolution + ix.
  std::vector<SpectralClassification> nodes;

  const SpectralClassification& at(int ix, int iy) const {
    return nodes[static_cast<size_t>(iy) * resolution + ix];
  }
};

/// classify() at every node of a resolution x resolution grid over the box.
/// Per-node failures are recorded as NearBoundary markers, never aborting
/// the sweep.  Deterministic.
RegionGrid region_grid(const FourierSymbol& prod, const RationalRotation& r,
                       const Box& box, int resolution, double tol = 1e-8);

}  // namespace lamtop
