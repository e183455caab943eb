#include <doctest.h>

#include <cmath>
#include <random>

#include "dkp/bilinears.hpp"
#include "support/random_wavefunctions.hpp"

using namespace dkp;
using dkp::testing::norm2;
using dkp::testing::random_complex_wavefunction;
using dkp::testing::random_rational_wavefunction;
using Q = GaussianRational;

namespace {

const KemmerRep<Q>& exact_rep() {
  static const auto rep = build_representation<Q>();
  return rep;
}
const KemmerRep<Complex>& float_rep() {
  static const auto rep = build_representation<Complex>();
  return rep;
}

Wavefunction<Q> unit4() {
  Wavefunction<Q> phi;
  phi[4] = Q(1);
  return phi;
}

// Plane-wave amplitude (k_mu / m, 1) with k = (13, 12, 0, 0), m = 5, so k.k = m^2.
Wavefunction<Q> plane_wave_amplitude() {
  return {Q::ratio(13, 5), Q::ratio(12, 5), Q(0), Q(0), Q(1)};
}

}  // namespace

TEST_CASE("currents of the unit scalar component") {
  const auto cs = compute_currents(exact_rep(), unit4());
  CHECK(cs.S == Q(1));
  CHECK(cs.Sflat == Q(4));
  CHECK(cs.Z == Q(-3));
  for (int mu = 0; mu < 4; ++mu) {
    CHECK(cs.J[mu] == Q(0));
    CHECK(cs.H[mu] == Q(0));
    for (int nu = 0; nu < 4; ++nu) CHECK(cs.K[mu][nu] == Q(metric(mu, nu)));
  }
  CHECK(cs.tildeZ == Q(-3));
}

TEST_CASE("zero wavefunction has zero currents") {
  const auto cs = compute_currents(exact_rep(), Wavefunction<Q>{});
  CHECK(cs.S.is_zero());
  CHECK(cs.Sflat.is_zero());
  CHECK(cs.Z.is_zero());
  CHECK(cs.tildeZ.is_zero());
  for (int mu = 0; mu < 4; ++mu) CHECK(cs.J[mu].is_zero());
}

TEST_CASE("plane-wave amplitude currents") {
  const auto cs = compute_currents(exact_rep(), plane_wave_amplitude());
  CHECK(cs.S == Q(2));
  CHECK(cs.Sflat == Q(5));
  CHECK(cs.Z == Q(-3));
  const std::array<Q, 4> k{Q(13), Q(12), Q(0), Q(0)};
  for (int mu = 0; mu < 4; ++mu) {
    CHECK(cs.J[mu] == Q(2) * k[mu] / Q(5));
    CHECK(cs.H[mu].is_zero());
  }
}

TEST_CASE("fierz coefficients") {
  SUBCASE("unit scalar component") {
    const auto f = fierz_decompose(compute_currents(exact_rep(), unit4()));
    CHECK(f.a == Q::ratio(-1, 3));
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(f.j[mu].is_zero());
      CHECK(f.h[mu].is_zero());
      for (int nu = 0; nu < 4; ++nu) CHECK(Q::ratio(1, 2) * f.k[mu][nu] == Q::ratio(1, 3) * Q(metric(mu, nu)));
    }
  }
  SUBCASE("all-zero currents") {
    const auto f = fierz_decompose(CurrentSet<Q>{});
    CHECK(f.a.is_zero());
    CHECK(f.k[1][1].is_zero());
  }
  SUBCASE("S = 9/5 alone") {
    CurrentSet<Q> cs;
    cs.S = Q::ratio(9, 5);
    const auto f = fierz_decompose(cs);
    CHECK(f.a == Q(1));
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        CHECK(Q::ratio(1, 2) * f.k[mu][nu] == Q::ratio(-2, 5) * Q(metric(mu, nu)));
  }
}

TEST_CASE("fierz residuals vanish for the unit component and for zero") {
  const auto r = fierz_residual(exact_rep(), unit4());
  CHECK(r.hermitian.is_zero());
  CHECK(r.complex.is_zero());
  const auto z = fierz_residual(exact_rep(), Wavefunction<Q>{});
  CHECK(z.hermitian.is_zero());
  CHECK(z.complex.is_zero());
}

TEST_CASE("fierz rearrangement is exact for random rational wavefunctions") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto phi = random_rational_wavefunction(rng);
    const auto r = fierz_residual(exact_rep(), phi);
    REQUIRE(r.hermitian.is_zero());
    REQUIRE(r.complex.is_zero());

    // Second route: the trace-derived coefficients expand back to Phi Phi-bar.
    const auto cs = compute_currents(exact_rep(), phi);
    const auto bar = apply_left(Wavefunction<Q>{conj(phi[0]), conj(phi[1]), conj(phi[2]),
                                                 conj(phi[3]), conj(phi[4])},
                                exact_rep().eta);
    REQUIRE(fierz_expand(exact_rep(), fierz_decompose(cs)) == outer(phi, bar));
  }
}

TEST_CASE("algebraic constraints on realizable currents") {
  SUBCASE("unit component") {
    const auto r = algebraic_constraint_residuals(compute_currents(exact_rep(), unit4()));
    CHECK(r.quadratic.is_zero());
    CHECK(r.scalar_fierz.is_zero());
    REQUIRE(r.k_elimination.has_value());
    for (const auto& row : *r.k_elimination)
      for (const auto& x : row) CHECK(x.is_zero());
  }
  SUBCASE("plane-wave amplitude") {
    const auto r = algebraic_constraint_residuals(compute_currents(exact_rep(), plane_wave_amplitude()));
    CHECK(r.quadratic.is_zero());
    CHECK(r.scalar_fierz.is_zero());
  }
  SUBCASE("random rational wavefunctions") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      const auto cs = compute_currents(exact_rep(), random_rational_wavefunction(rng));
      const auto r = algebraic_constraint_residuals(cs);
      REQUIRE(r.quadratic.is_zero());
      REQUIRE(r.scalar_fierz.is_zero());
      REQUIRE(r.k_elimination.has_value());
      for (const auto& row : *r.k_elimination)
        for (const auto& x : row) REQUIRE(x.is_zero());
    }
  }
}

TEST_CASE("non-realizable currents violate the quadratic constraint by 4/9") {
  CurrentSet<Q> cs;
  cs.S = Q(1);
  cs.Z = Q(1);
  const auto r = algebraic_constraint_residuals(cs);
  CHECK(r.quadratic == Q::ratio(4, 9));
}

TEST_CASE("singular Z withholds only the K elimination") {
  Wavefunction<Q> phi{Q(1), Q(0, 1), Q(2), Q(0), Q(0)};  // phi^4 = 0 => Z = 0
  const auto cs = compute_currents(exact_rep(), phi);
  CHECK(cs.Z.is_zero());
  const auto r = algebraic_constraint_residuals(cs);
  CHECK(r.z_singular);
  CHECK_FALSE(r.k_elimination.has_value());
  CHECK(r.quadratic.is_zero());
  CHECK(r.scalar_fierz.is_zero());

  const auto fcs = compute_currents(float_rep(), dkp::testing::to_float(phi));
  CHECK(is_z_singular(fcs));
}

TEST_CASE("zeta sandwich and modulus identities") {
  SUBCASE("unit component") {
    const auto r = zeta_identity_residuals(exact_rep(), unit4());
    CHECK(r.sandwich.is_zero());
    CHECK(r.modulus.is_zero());
  }
  SUBCASE("zero") {
    const auto r = zeta_identity_residuals(exact_rep(), Wavefunction<Q>{});
    CHECK(r.sandwich.is_zero());
    CHECK(r.modulus.is_zero());
  }
  SUBCASE("random rational") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const auto r = zeta_identity_residuals(exact_rep(), random_rational_wavefunction(rng));
      REQUIRE(r.sandwich.is_zero());
      REQUIRE(r.modulus.is_zero());
    }
  }
}

TEST_CASE("float-mode residuals stay below 1e-12 (1 + |Phi|^4)") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const double scale = std::pow(10.0, (trial % 5) - 2);
    const auto phi = random_complex_wavefunction(rng, scale);
    const double bound = 1e-12 * (1.0 + norm2(phi) * norm2(phi));
    const auto f = fierz_residual(float_rep(), phi);
    REQUIRE(f.hermitian.max_abs() < bound);
    REQUIRE(f.complex.max_abs() < bound);
    const auto z = zeta_identity_residuals(float_rep(), phi);
    REQUIRE(z.sandwich.max_abs() < bound);
    REQUIRE(std::abs(z.modulus) < bound);
    const auto c = algebraic_constraint_residuals(compute_currents(float_rep(), phi));
    REQUIRE(std::abs(c.quadratic) < bound);
    REQUIRE(std::abs(c.scalar_fierz) < bound);
  }
}

TEST_CASE("current symmetry invariants") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cs = compute_currents(exact_rep(), random_rational_wavefunction(rng));
    CHECK(cs.S.imag() == 0);
    CHECK(cs.Sflat.imag() == 0);
    Q trace_k;
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(cs.J[mu].imag() == 0);
      CHECK((cs.H[mu] + conj(cs.H[mu])).is_zero());
      CHECK(cs.tildeH[mu].is_zero());
      trace_k += Q(metric(mu, mu)) * cs.K[mu][mu];
      for (int nu = 0; nu < 4; ++nu) {
        CHECK((cs.K[mu][nu] - conj(cs.K[nu][mu])).is_zero());
        CHECK(cs.tildeK[mu][nu] == cs.tildeK[nu][mu]);
      }
    }
    CHECK(trace_k == cs.Sflat);
    CHECK(cs.tildeZ.norm() == cs.Z.norm());
  }
}

TEST_CASE("constant phase leaves Hermitian currents fixed and doubles the tilde phase") {
  // (3 + 4i)/5 is an exact unit-modulus phase.
  const Q phase(mpq_class(3, 5), mpq_class(4, 5));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto phi = random_rational_wavefunction(rng);
    auto rotated = phi;
    for (auto& c : rotated) c = phase * c;
    const auto a = compute_currents(exact_rep(), phi);
    const auto b = compute_currents(exact_rep(), rotated);
    CHECK(a.S == b.S);
    CHECK(a.Sflat == b.Sflat);
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(a.J[mu] == b.J[mu]);
      CHECK(a.H[mu] == b.H[mu]);
      for (int nu = 0; nu < 4; ++nu) CHECK(a.K[mu][nu] == b.K[mu][nu]);
    }
    const Q phase2 = phase * phase;
    CHECK(b.tildeS == phase2 * a.tildeS);
    CHECK(b.tildeZ == phase2 * a.tildeZ);
    for (int mu = 0; mu < 4; ++mu) CHECK(b.tildeJ[mu] == phase2 * a.tildeJ[mu]);
  }
}
