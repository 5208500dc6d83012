#include "lamtop/spectra.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

namespace lamtop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Distance below which a point counts as numerically on the curve; matches
// the certification accuracy of min_distance.
constexpr double kEssFloor = 1e-9;

Complex pow_int(Complex z, long q) {
  Complex acc = 1.0;
  for (long k = 0; k < q; ++k) acc *= z;
  return acc;
}

struct WindingPass {
  bool valid = false;   // every step below pi/2 and total close to a multiple
  long turns = 0;
  double min_dist = std::numeric_limits<double>::infinity();
};

// One pass over a closed uniform-in-order sample set.
WindingPass winding_pass(const std::vector<Complex>& vals, Complex w) {
  WindingPass out;
  double total = 0.0;
  bool steps_ok = true;
  const size_t n = vals.size();
  for (size_t i = 0; i < n; ++i) {
    Complex a = vals[i] - w;
    Complex b = vals[(i + 1) % n] - w;
    out.min_dist = std::min(out.min_dist, std::abs(a));
    double step = std::arg(b * std::conj(a));
    if (std::abs(step) >= kHalfPi) steps_ok = false;
    total += step;
  }
  double turns = total / kTwoPi;
  out.turns = std::lround(turns);
  out.valid = steps_ok && std::abs(turns - out.turns) < 0.25;
  return out;
}

}  // namespace

void CurveSamples::validate() const {
  if (thetas.size() != values.size()) {
    throw InvalidInput("CurveSamples: thetas/values size mismatch");
  }
  if (thetas.size() < 16) throw InvalidInput("CurveSamples: need >= 16 samples");
  for (size_t i = 0; i < thetas.size(); ++i) {
    if (!(thetas[i] >= 0.0) || !(thetas[i] < kTwoPi)) {
      throw InvalidInput("CurveSamples: angle outside [0, 2*pi)");
    }
    if (i > 0 && !(thetas[i] > thetas[i - 1])) {
      throw InvalidInput("CurveSamples: angles not strictly increasing");
    }
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw InvalidInput("CurveSamples: non-finite value");
    }
  }
  // Full-circle coverage: no gap (including the wrap gap) above twice the
  // mean spacing times a slack factor.
  double max_gap = thetas.front() + kTwoPi - thetas.back();
  for (size_t i = 1; i < thetas.size(); ++i) {
    max_gap = std::max(max_gap, thetas[i] - thetas[i - 1]);
  }
  if (max_gap > 16.0 * kTwoPi / static_cast<double>(thetas.size())) {
    throw InvalidInput("CurveSamples: circle not fully covered");
  }
}

const char* to_string(SpectralKind k) {
  switch (k) {
    case SpectralKind::Resolvent: return "Resolvent";
    case SpectralKind::EssentialSpectrum: return "EssentialSpectrum";
    case SpectralKind::FredholmHole: return "FredholmHole";
    case SpectralKind::NearBoundary: return "NearBoundary";
  }
  return "?";
}

long winding_number(const CurveSamples& c, Complex w, double tol) {
  c.validate();
  WindingPass pass = winding_pass(c.values, w);
  if (pass.min_dist < tol) {
    throw OnCurve("winding_number: curve passes within tolerance of the point");
  }
  if (!pass.valid) {
    throw InvalidInput(
        "winding_number: sampling too coarse (argument step >= pi/2)");
  }
  return pass.turns;
}

long winding_number(const FourierSymbol& s, Complex w, double tol) {
  std::optional<long> prev, prev2;
  for (int n = 256; n <= (1 << 20); n *= 2) {
    std::vector<Complex> vals(n);
    for (int k = 0; k < n; ++k) vals[k] = eval(s, kTwoPi * k / n);
    WindingPass pass = winding_pass(vals, w);
    if (pass.min_dist < tol) {
      throw OnCurve("winding_number: curve passes within tolerance of the point");
    }
    // stable across two consecutive doublings
    if (pass.valid && prev == pass.turns && prev2 == pass.turns) {
      return pass.turns;
    }
    prev2 = prev;
    prev = pass.valid ? std::optional<long>(pass.turns) : std::nullopt;
  }
  throw InvalidInput("winding_number: failed to stabilise");
}

EssMembership ess_membership(const FourierSymbol& prod, const RationalRotation& r,
                             Complex mu, double tol) {
  if (tol <= 0.0) throw InvalidInput("ess_membership: tol must be positive");
  double d = min_distance(prod, pow_int(mu, r.q()));
  return {d <= tol, d};
}

long fredholm_index(const FourierSymbol& prod, const RationalRotation& r,
                    Complex mu) {
  Complex muq = pow_int(mu, r.q());
  long wn = winding_number(prod, muq);
  if (wn % r.q() != 0) {
    throw NonIntegralIndex("fredholm_index: winding number " + std::to_string(wn) +
                           " not divisible by q = " + std::to_string(r.q()));
  }
  return -wn / r.q();
}

namespace {

SpectralClassification classify_impl(const FourierSymbol& prod,
                                     const RationalRotation& r, Complex mu,
                                     double tol, const CircleSeed* seed) {
  if (!prod.is_analytic()) {
    throw NotAnalytic("classify: product symbol must be analytic");
  }
  if (tol <= 0.0) throw InvalidInput("classify: tol must be positive");
  Complex muq = pow_int(mu, r.q());
  double floor = std::min(tol, kEssFloor);
  double d = seed ? min_distance(prod, *seed, muq, floor, tol)
                  : min_distance(prod, muq, floor, tol);
  if (d <= floor) return {SpectralKind::EssentialSpectrum, std::nullopt, d};
  if (d <= tol) return {SpectralKind::NearBoundary, std::nullopt, d};
  long wn = winding_number(prod, muq);
  if (wn % r.q() != 0) {
    throw NonIntegralIndex("classify: winding number not divisible by q");
  }
  long index = -wn / r.q();
  if (index != 0) return {SpectralKind::FredholmHole, index, d};
  // Index zero and off the curve: invertible (the trichotomy's third branch
  // is empty for analytic C^1 symbols).
  return {SpectralKind::Resolvent, std::nullopt, d};
}

}  // namespace

SpectralClassification classify(const FourierSymbol& prod,
                                const RationalRotation& r, Complex mu,
                                double tol) {
  return classify_impl(prod, r, mu, tol, nullptr);
}

double ess_radius(const FourierSymbol& prod, const RationalRotation& r) {
  return std::pow(sup_norm(prod), 1.0 / static_cast<double>(r.q()));
}

CurveSamples jury_determinant(const std::vector<FourierSymbol>& fs,
                              const RationalRotation& r, int samples) {
  const long q = r.q();
  if (static_cast<long>(fs.size()) != q) {
    throw InvalidInput("jury_determinant: need exactly q symbols");
  }
  if (samples < 16) throw InvalidInput("jury_determinant: need >= 16 samples");
  CurveSamples out;
  out.thetas.resize(samples);
  out.values.resize(samples);
  Eigen::MatrixXcd m(q, q);
  for (int i = 0; i < samples; ++i) {
    double theta = kTwoPi * i / samples;
    for (long k = 0; k < q; ++k) {
      // angle of the k-fold rotated point conj(lambda)^k e^{i theta}
      double tk = theta - kTwoPi * static_cast<double>(r.p() * k) / q;
      for (long j = 0; j < q; ++j) {
        m(k, j) = eval(fs[((j - k) % q + q) % q], tk);
      }
    }
    out.thetas[i] = theta;
    out.values[i] = q == 1 ? m(0, 0) : Complex(m.partialPivLu().determinant());
  }
  return out;
}

long jury_index(const CurveSamples& c, const RationalRotation& r, double tol) {
  long wn = winding_number(c, Complex(0.0), tol);
  if (wn % r.q() != 0) {
    throw NonIntegralIndex("jury_index: winding number not divisible by q");
  }
  return -wn / r.q();
}

RegionGrid region_grid(const FourierSymbol& prod, const RationalRotation& r,
                       const Box& box, int resolution, double tol) {
  if (resolution < 1 || resolution > 4096) {
    throw InvalidInput("region_grid: resolution must be in [1, 4096]");
  }
  if (!(box.re_min <= box.re_max) || !(box.im_min <= box.im_max)) {
    throw InvalidInput("region_grid: malformed box");
  }
  if (!prod.is_analytic()) {
    throw NotAnalytic("region_grid: product symbol must be analytic");
  }
  RegionGrid grid{box, resolution, {}};
  grid.nodes.reserve(static_cast<size_t>(resolution) * resolution);
  CircleSeed seed =
      make_circle_seed(prod, std::max(4096, 64 * prod.degree()));
  auto coord = [resolution](double lo, double hi, int i) {
    return resolution == 1 ? lo : lo + (hi - lo) * i / (resolution - 1);
  };
  for (int iy = 0; iy < resolution; ++iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      Complex mu(coord(box.re_min, box.re_max, ix),
                 coord(box.im_min, box.im_max, iy));
      try {
        grid.nodes.push_back(classify_impl(prod, r, mu, tol, &seed));
      } catch (const Error&) {
        // Numerically ambiguous node; flag it instead of aborting the sweep.
        double d = min_distance(prod, seed, pow_int(mu, r.q()), tol, tol);
        grid.nodes.push_back({SpectralKind::NearBoundary, std::nullopt, d});
      }
    }
  }
  return grid;
}

}  // namespace lamtop
