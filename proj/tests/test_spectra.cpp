#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "lamtop/matrixlab.hpp"
#include "lamtop/spectra.hpp"

using namespace lamtop;
using doctest::Approx;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kCbrt2 = std::cbrt(2.0);

// The worked cube example: lambda = e^{2 pi i/3}, phi = e^{i theta} - 2^{1/3},
// product symbol e^{3 i theta} - 2.
const RationalRotation kRot13(1, 3);
const FourierSymbol kPhi({{1, Complex(1.0)}, {0, Complex(-kCbrt2)}});
const FourierSymbol kProd = product_symbol(twist(kPhi, kRot13), kRot13, 3);

CurveSamples sample_curve(const FourierSymbol& s, int n) {
  CurveSamples c;
  for (int k = 0; k < n; ++k) {
    double theta = kTwoPi * k / n;
    c.thetas.push_back(theta);
    c.values.push_back(eval(s, theta));
  }
  return c;
}

FourierSymbol random_analytic(std::mt19937& rng, int max_degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::map<int, Complex> c;
  for (int n = 0; n <= max_degree; ++n) c[n] = Complex(u(rng), u(rng));
  return FourierSymbol(std::move(c));
}

// Independent root counter: eigenvalues of the companion matrix of
// g(z) - target, counting |z| < 1 with multiplicity.
long roots_in_disc(const FourierSymbol& analytic, Complex target) {
  std::vector<Complex> c;  // c[k] = coefficient of z^k of g - target
  int deg = analytic.degree();
  for (int k = 0; k <= deg; ++k) c.push_back(analytic.coeff(k));
  c[0] -= target;
  while (c.size() > 1 && std::abs(c.back()) < 1e-13) c.pop_back();
  long n = static_cast<long>(c.size()) - 1;
  if (n == 0) return 0;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (long k = 0; k + 1 < n; ++k) companion(k + 1, k) = 1.0;
  for (long k = 0; k < n; ++k) companion(k, n - 1) = -c[k] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  long count = 0;
  for (long k = 0; k < n; ++k) {
    if (std::abs(es.eigenvalues()[k]) < 1.0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("winding_number on sampled curves") {
  CurveSamples c = sample_curve(kProd, 256);
  CHECK(winding_number(c, Complex(-2.0)) == 3);
  CHECK(winding_number(c, Complex(0.0)) == 0);

  FourierSymbol circle({{1, Complex(1.0)}});
  CHECK(winding_number(sample_curve(circle, 64), Complex(0.0)) == 1);

  CHECK_THROWS_AS(winding_number(c, Complex(-1.0)), OnCurve);
  // 16 samples of a degree-5 loop: argument steps exceed pi/2
  FourierSymbol quintic({{5, Complex(1.0)}});
  CHECK_THROWS_AS(winding_number(sample_curve(quintic, 16), Complex(0.0)),
                  InvalidInput);
}

TEST_CASE("curve sample validation") {
  CurveSamples c = sample_curve(kProd, 8);
  CHECK_THROWS_AS(c.validate(), InvalidInput);  // below 16 samples
  CurveSamples ok = sample_curve(kProd, 64);
  CHECK_NOTHROW(ok.validate());
  ok.thetas[3] = ok.thetas[2];
  CHECK_THROWS_AS(ok.validate(), InvalidInput);
}

TEST_CASE("adaptive winding from a symbol") {
  CHECK(winding_number(kProd, Complex(-2.0)) == 3);
  CHECK(winding_number(kProd, Complex(0.0)) == 0);
  FourierSymbol circle({{1, Complex(1.0)}});
  CHECK(winding_number(circle, Complex(0.0)) == 1);
  CHECK_THROWS_AS(winding_number(kProd, Complex(-1.0)), OnCurve);
}

TEST_CASE("ess_membership on the cube example") {
  auto on = ess_membership(kProd, kRot13, Complex(-1.0), 1e-8);
  CHECK(on.member);
  CHECK(on.distance < 1e-8);

  auto off = ess_membership(kProd, kRot13, Complex(0.0), 1e-8);
  CHECK_FALSE(off.member);
  CHECK(off.distance == Approx(1.0).epsilon(1e-7));

  // classical Toeplitz case: sigma_e of the shift is the unit circle
  RationalRotation id(0, 1);
  FourierSymbol shift_symbol({{1, Complex(1.0)}});
  CHECK(ess_membership(shift_symbol, id, std::polar(1.0, std::numbers::pi / 7.0),
                       1e-8)
            .member);
}

TEST_CASE("fredholm_index") {
  CHECK(fredholm_index(kProd, kRot13, Complex(-kCbrt2)) == -1);
  CHECK(fredholm_index(kProd, kRot13, Complex(2.0)) == 0);

  RationalRotation id(0, 1);
  FourierSymbol shift_symbol({{1, Complex(1.0)}});
  CHECK(fredholm_index(shift_symbol, id, Complex(0.0)) == -1);
}

TEST_CASE("classify trichotomy on the cube example") {
  auto hole = classify(kProd, kRot13, Complex(-kCbrt2), 1e-8);
  CHECK(hole.kind == SpectralKind::FredholmHole);
  CHECK(hole.index == -1);

  auto res = classify(kProd, kRot13, Complex(0.0), 1e-8);
  CHECK(res.kind == SpectralKind::Resolvent);
  CHECK_FALSE(res.index.has_value());
  CHECK(res.distance == Approx(1.0).epsilon(1e-6));

  auto ess = classify(kProd, kRot13, Complex(-1.0), 1e-8);
  CHECK(ess.kind == SpectralKind::EssentialSpectrum);

  RationalRotation id(0, 1);
  FourierSymbol shift_symbol({{1, Complex(1.0)}});
  auto inner = classify(shift_symbol, id, Complex(0.5), 1e-8);
  CHECK(inner.kind == SpectralKind::FredholmHole);
  CHECK(inner.index == -1);
  CHECK(classify(shift_symbol, id, Complex(2.0), 1e-8).kind ==
        SpectralKind::Resolvent);

  FourierSymbol coanalytic({{-1, Complex(1.0)}});
  CHECK_THROWS_AS(classify(coanalytic, id, Complex(0.0), 1e-8), NotAnalytic);
}

TEST_CASE("near-boundary band") {
  // just inside the tolerance band around the curve |w + 2| = 1
  auto nb = classify(kProd, kRot13, Complex(-1.0 + 1e-7), 1e-4);
  CHECK(nb.kind == SpectralKind::NearBoundary);
  CHECK(nb.distance <= 1e-4);
}

TEST_CASE("ess_radius") {
  CHECK(ess_radius(kProd, kRot13) == Approx(std::cbrt(3.0)).epsilon(1e-10));

  RationalRotation id(0, 1);
  FourierSymbol f({{1, Complex(1.0)}, {0, Complex(-2.0)}, {-1, Complex(0.5)}});
  CHECK(ess_radius(f, id) == Approx(sup_norm(f)).epsilon(1e-9));

  FourierSymbol c({{0, Complex(0.0, -8.0)}});
  CHECK(ess_radius(c, kRot13) == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("jury_determinant specializations") {
  // q = 1: the determinant is the symbol itself
  RationalRotation id(0, 1);
  FourierSymbol f({{1, Complex(1.0)}, {0, Complex(0.5, -0.5)}});
  CurveSamples c1 = jury_determinant({f}, id, 64);
  for (size_t k = 0; k < c1.thetas.size(); ++k) {
    CHECK(std::abs(c1.values[k] - eval(f, c1.thetas[k])) < 1e-12);
  }

  // the proposition's specialization: f_0 = twisted phi, f_{q-1} = -mu
  Complex mu(0.3, 0.7);
  FourierSymbol tw = twist(kPhi, kRot13);
  std::vector<FourierSymbol> fs = {tw, FourierSymbol{},
                                   FourierSymbol({{0, -mu}})};
  CurveSamples c3 = jury_determinant(fs, kRot13, 128);
  Complex muq = mu * mu * mu;
  for (size_t k = 0; k < c3.thetas.size(); ++k) {
    Complex expect = eval(kProd, c3.thetas[k]) - muq;
    CHECK(std::abs(c3.values[k] - expect) < 1e-10);
  }

  // all-zero symbols give the zero curve
  std::vector<FourierSymbol> zeros(3);
  CurveSamples cz = jury_determinant(zeros, kRot13, 32);
  for (Complex v : cz.values) CHECK(v == Complex(0.0));
}

TEST_CASE("jury_index") {
  Complex mu(-kCbrt2, 0.0);
  FourierSymbol tw = twist(kPhi, kRot13);
  std::vector<FourierSymbol> fs = {tw, FourierSymbol{},
                                   FourierSymbol({{0, -mu}})};
  CHECK(jury_index(jury_determinant(fs, kRot13, 1024), kRot13) == -1);
  CHECK(jury_index(jury_determinant(fs, kRot13, 1024), kRot13) ==
        fredholm_index(kProd, kRot13, mu));

  RationalRotation id(0, 1);
  FourierSymbol five({{0, Complex(5.0)}});
  CHECK(jury_index(jury_determinant({five}, id, 64), id) == 0);

  FourierSymbol circle({{1, Complex(1.0)}});
  CHECK(jury_index(jury_determinant({circle}, id, 64), id) == -1);

  std::vector<FourierSymbol> zeros(3);
  CHECK_THROWS_AS(jury_index(jury_determinant(zeros, kRot13, 32), kRot13),
                  OnCurve);
}

TEST_CASE("jury machinery reproduces the direct index on random symbols") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (long q : {1L, 2L, 3L, 4L, 6L}) {
    RationalRotation r(1, q);
    FourierSymbol phi = random_analytic(rng, 6);
    FourierSymbol tw = twist(phi, r);
    FourierSymbol prod = product_symbol(tw, r, q);
    for (int trial = 0; trial < 4; ++trial) {
      Complex mu(u(rng), u(rng));
      if (ess_membership(prod, r, mu, 1e-6).member) continue;
      std::vector<FourierSymbol> fs(q);
      fs[0] = tw;
      Complex mmu = -mu;
      if (q == 1) {
        fs[0] = FourierSymbol({{0, tw.coeff(0) + mmu}, {1, tw.coeff(1)},
                               {2, tw.coeff(2)}, {3, tw.coeff(3)},
                               {4, tw.coeff(4)}, {5, tw.coeff(5)},
                               {6, tw.coeff(6)}});
      } else {
        fs[q - 1] = FourierSymbol({{0, mmu}});
      }
      long direct = fredholm_index(prod, r, mu);
      long via_jury = jury_index(jury_determinant(fs, r, 4096), r);
      CHECK(direct == via_jury);
    }
  }
}

TEST_CASE("region_grid cube example has three holes") {
  RegionGrid grid = region_grid(kProd, kRot13, {-2.0, 2.0, -2.0, 2.0}, 64, 1e-8);

  // flood fill over non-resolvent nodes, 4-connectivity
  const int res = grid.resolution;
  std::vector<int> label(res * res, 0);
  auto occupied = [&](int ix, int iy) {
    return grid.at(ix, iy).kind != SpectralKind::Resolvent;
  };
  int components = 0;
  for (int start = 0; start < res * res; ++start) {
    int sx = start % res, sy = start / res;
    if (!occupied(sx, sy) || label[start]) continue;
    ++components;
    std::vector<int> stack = {start};
    label[start] = components;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      int cx = cur % res, cy = cur / res;
      const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        int nx = cx + dx[d], ny = cy + dy[d];
        int idx = ny * res + nx;
        if (nx >= 0 && nx < res && ny >= 0 && ny < res && occupied(nx, ny) &&
            !label[idx]) {
          label[idx] = components;
          stack.push_back(idx);
        }
      }
    }
  }
  CHECK(components == 3);

  // every non-resolvent hole node carries index -1 here
  for (int iy = 0; iy < res; ++iy) {
    for (int ix = 0; ix < res; ++ix) {
      if (grid.at(ix, iy).kind == SpectralKind::FredholmHole) {
        CHECK(grid.at(ix, iy).index == -1);
      }
    }
  }
}

TEST_CASE("region_grid degenerate inputs") {
  // zero symbol: curve is the single point 0, everything away from 0 resolves
  RegionGrid flat =
      region_grid(FourierSymbol{}, kRot13, {0.5, 1.5, 0.5, 1.5}, 8, 1e-8);
  for (const auto& node : flat.nodes) {
    CHECK(node.kind == SpectralKind::Resolvent);
  }

  // q = 1 shift: one disc
  RationalRotation id(0, 1);
  FourierSymbol circle({{1, Complex(1.0)}});
  RegionGrid disc = region_grid(circle, id, {-1.5, 1.5, -1.5, 1.5}, 16, 1e-8);
  int holes = 0;
  for (const auto& node : disc.nodes) {
    if (node.kind == SpectralKind::FredholmHole) ++holes;
  }
  CHECK(holes > 0);

  CHECK_THROWS_AS(region_grid(kProd, kRot13, {0, 1, 0, 1}, 0, 1e-8),
                  InvalidInput);
  CHECK_THROWS_AS(region_grid(kProd, kRot13, {0, 1, 0, 1}, 4097, 1e-8),
                  InvalidInput);
}

TEST_CASE("invariant: root counting matches the winding index") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (long q : {1L, 2L, 3L}) {
    RationalRotation r(1, q);
    FourierSymbol prod = product_symbol(twist(random_analytic(rng, 3), r), r, q);
    for (int trial = 0; trial < 8; ++trial) {
      Complex mu(u(rng), u(rng));
      SpectralClassification c;
      try {
        c = classify(prod, r, mu, 1e-8);
      } catch (const Error&) {
        continue;
      }
      if (c.kind != SpectralKind::FredholmHole) continue;
      Complex muq = 1.0;
      for (long k = 0; k < q; ++k) muq *= mu;
      long roots = roots_in_disc(prod, muq);
      CHECK(roots == -q * *c.index);
      CHECK(roots >= 1);
    }
  }
}

TEST_CASE("invariant: classification shares across q-th roots of unity") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  RationalRotation r(1, 4);
  FourierSymbol prod = product_symbol(twist(random_analytic(rng, 2), r), r, 4);
  for (int trial = 0; trial < 10; ++trial) {
    Complex mu(u(rng), u(rng));
    auto base = classify(prod, r, mu, 1e-8);
    for (long k = 1; k < 4; ++k) {
      auto rotated = classify(prod, r, mu * r.lambda_pow(k), 1e-8);
      CHECK(rotated.kind == base.kind);
      CHECK(rotated.index == base.index);
      CHECK(rotated.distance == Approx(base.distance).epsilon(1e-6));
    }
  }
}

TEST_CASE("invariant: classification constant along safe segments") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 12; ++trial) {
    Complex a(u(rng), u(rng));
    Complex b = a + Complex(0.05, -0.03);
    auto ca = classify(kProd, kRot13, a, 1e-8);
    auto cb = classify(kProd, kRot13, b, 1e-8);
    if (ca.kind == SpectralKind::NearBoundary ||
        cb.kind == SpectralKind::NearBoundary) {
      continue;
    }
    // skip segments whose cubed image could cross the curve between samples:
    // the image step length is below 3 max|z|^2 |b-a|/16 < 0.1
    bool crosses = false;
    for (int t = 0; t <= 16; ++t) {
      Complex z = a + (b - a) * (t / 16.0);
      Complex zq = z * z * z;
      if (min_distance(kProd, zq, 1e-6, 0.1) <= 0.1) crosses = true;
    }
    if (crosses) continue;
    CHECK(ca.kind == cb.kind);
    CHECK(ca.index == cb.index);
  }
}

TEST_CASE("invariant: finite sections agree with the classification") {
  // Reduced-size rendition of the sigma_min oracle: resolvent points stay
  // bounded below, spectrum points decay, across a doubling schedule.
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<long> schedule = {64, 128, 256};
  int tested = 0;
  for (int trial = 0; trial < 40 && tested < 8; ++trial) {
    Complex mu(u(rng), u(rng));
    auto c = classify(kProd, kRot13, mu, 1e-8);
    std::vector<double> smin;
    for (long n : schedule) {
      smin.push_back(
          smallest_singular(build_lambda_toeplitz(kPhi, kRot13, n), mu));
    }
    if (c.kind == SpectralKind::Resolvent) {
      for (double v : smin) CHECK(v > 1e-3);
      ++tested;
    } else if (c.kind == SpectralKind::FredholmHole ||
               c.kind == SpectralKind::EssentialSpectrum) {
      CHECK(smin[1] <= smin[0] + 1e-12);
      CHECK(smin[2] <= smin[1] + 1e-12);
      ++tested;
    }
  }
  CHECK(tested >= 8);
}
