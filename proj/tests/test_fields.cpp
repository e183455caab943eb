#include <doctest.h>

#include <cmath>

#include "dkp/errors.hpp"
#include "dkp/plane_wave.hpp"

using namespace dkp;

namespace {

const KemmerRep<Complex>& rep() {
  static const auto r = build_representation<Complex>();
  return r;
}

// k = p - eA = (13, 12, 0, 0) with m = 5; every input is a dyadic rational so k.k = m^2
// holds exactly in binary. Momentum only along the axes that carry grid points.
PlaneWaveSpec spec() {
  PlaneWaveSpec s;
  s.p = {14.0, 11.5, 0.0, 0.0};
  s.A = {0.5, -0.25, 0.0, 0.0};
  s.m = 5.0;
  s.e = 2.0;
  s.amplitude = {0.6, -0.8};
  return s;
}

GridShape shape(std::size_t n, double h) {
  GridShape g;
  g.extents = {n, n, 1, 1};
  g.spacing = {h, h, 1.0, 1.0};
  return g;
}

double max_abs(const FieldGrid& g) {
  double m = 0.0;
  for (const auto& v : g.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("plane-wave parameters are validated") {
  auto s = spec();
  CHECK(s.mass_shell_violation() == 0.0);
  s.p[0] += 0.5;
  try {
    manufacture_plane_wave(s, shape(3, 0.1));
    FAIL("expected MassShellError");
  } catch (const MassShellError& e) {
    CHECK(e.violation() == doctest::Approx(13.25));
  }
  s = spec();
  s.m = 0.0;
  CHECK_THROWS_AS(manufacture_plane_wave(s, shape(3, 0.1)), ParameterError);
  CHECK(default_shell_tolerance(0.5) == 1e-10);
  CHECK(default_shell_tolerance(10.0) == doctest::Approx(1e-8));
}

TEST_CASE("plane wave solves the DKP equation with analytic derivatives") {
  const auto s = spec();
  const auto field = plane_wave_field(s, shape(5, 0.05));
  const auto A = constant_four_vector(field.phi.shape(), s.A);
  const auto r = dkp_residual(rep(), field, A, s.m, s.e);
  // Entries are O(p |Phi|) ~ 40; round-off is a few ulps of that.
  CHECK(max_abs(r.primary) < 1e-12);
  CHECK(max_abs(r.conjugate) < 1e-12);
}

TEST_CASE("finite-difference residual converges at second order") {
  const auto s = spec();
  auto residual = [&](std::size_t n, double h) {
    PhiField f;
    f.phi = manufacture_plane_wave(s, shape(n, h));
    const auto A = constant_four_vector(f.phi.shape(), s.A);
    return max_abs(dkp_residual(rep(), f, A, s.m, s.e).primary);
  };
  // Same physical domain [0, 0.08]^2 at h and h/2.
  const double coarse = residual(9, 0.01);
  const double fine = residual(17, 0.005);
  CHECK(coarse > 1e-6);
  const double ratio = coarse / fine;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("a perturbed potential leaves exactly -e beta.dA Phi") {
  const auto s = spec();
  const auto field = plane_wave_field(s, shape(3, 0.1));
  const FourVector<double> dA{0.125, 0.0, -0.5, 0.25};
  FourVector<double> A = s.A;
  for (int mu = 0; mu < 4; ++mu) A[mu] += dA[mu];
  const auto r = dkp_residual(rep(), field, constant_four_vector(field.phi.shape(), A), s.m, s.e);
  Matrix5<Complex> op;
  for (int mu = 0; mu < 4; ++mu) op += Complex(-s.e * dA[mu]) * rep().beta_upper(mu);
  double worst = 0.0;
  for (std::size_t p = 0; p < field.phi.points(); ++p) {
    const auto expected = dkp::apply(op, field.value(p));
    for (std::size_t k = 0; k < 5; ++k)
      worst = std::max(worst, std::abs(r.primary.at(p, k) - expected[k]));
  }
  CHECK(max_abs(r.primary) > 0.1);
  CHECK(worst < 1e-12);
}

TEST_CASE("conjugate residual is -(R^dagger eta) for real potentials") {
  const auto s = spec();
  PhiField f;
  f.phi = manufacture_plane_wave(s, shape(5, 0.1));
  // Finite differences and an off-solution potential: both residuals are nonzero.
  const auto A = constant_four_vector(f.phi.shape(), {0.3, 0.7, -0.2, 0.1});
  const auto r = dkp_residual(rep(), f, A, s.m, s.e);
  double worst = 0.0;
  for (std::size_t p = 0; p < f.phi.points(); ++p)
    for (std::size_t k = 0; k < 5; ++k) {
      const Complex expected = -std::conj(r.primary.at(p, k)) * rep().eta(k, k);
      worst = std::max(worst, std::abs(r.conjugate.at(p, k) - expected));
    }
  CHECK(max_abs(r.primary) > 0.1);
  CHECK(worst < 1e-12);
}

TEST_CASE("shape and payload mismatches are rejected") {
  const auto s = spec();
  const auto field = plane_wave_field(s, shape(3, 0.1));
  CHECK_THROWS_AS(dkp_residual(rep(), field, constant_four_vector(shape(4, 0.1), s.A), s.m, s.e),
                  ShapeError);
  FieldGrid scalar(field.phi.shape(), PayloadKind::scalar);
  CHECK_THROWS_AS(dkp_residual(rep(), field, scalar, s.m, s.e), ShapeError);
  PhiField bad;
  bad.phi = scalar;
  CHECK_THROWS_AS(gradients(bad), ShapeError);
}
