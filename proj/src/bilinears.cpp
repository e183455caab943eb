#include "dkp/bilinears.hpp"

#include <algorithm>
#include <cmath>

namespace dkp {

namespace {

template <DkpScalar T>
T g(int a, int b) {
  return T(metric(a, b));
}

template <DkpScalar T>
Wavefunction<T> conjugated(const Wavefunction<T>& phi) {
  Wavefunction<T> out;
  for (std::size_t i = 0; i < 5; ++i) out[i] = conjugate(phi[i]);
  return out;
}

// K:K^T = eta^{mu nu} eta^{rho sigma} K_{mu rho} K_{sigma nu}.
template <DkpScalar T>
T double_contraction_transposed(const Tensor4<T>& K) {
  T acc(0);
  for (int mu = 0; mu < 4; ++mu)
    for (int rho = 0; rho < 4; ++rho) acc += g<T>(mu, mu) * g<T>(rho, rho) * K[mu][rho] * K[rho][mu];
  return acc;
}

}  // namespace

template <DkpScalar T>
CurrentSet<T> compute_currents(const KemmerRep<T>& rep, const Wavefunction<T>& phi) {
  const Wavefunction<T> bar = apply_left(conjugated(phi), rep.eta);
  const Wavefunction<T> tilde = apply_left(phi, rep.eta);
  const Matrix5<T> I = Matrix5<T>::identity();

  CurrentSet<T> cs;
  cs.S = sandwich(bar, I, phi);
  cs.Sflat = sandwich(bar, rep.beta_sq, phi);
  cs.Z = cs.S - cs.Sflat;
  cs.tildeS = sandwich(tilde, I, phi);
  cs.tildeSflat = sandwich(tilde, rep.beta_sq, phi);
  cs.tildeZ = cs.tildeS - cs.tildeSflat;
  for (int mu = 0; mu < 4; ++mu) {
    cs.J[mu] = sandwich(bar, rep.beta[mu], phi);
    cs.H[mu] = sandwich(bar, rep.beta_dot[mu], phi);
    cs.tildeJ[mu] = sandwich(tilde, rep.beta[mu], phi);
    cs.tildeH[mu] = sandwich(tilde, rep.beta_dot[mu], phi);
    for (int nu = 0; nu < 4; ++nu) {
      const Matrix5<T> pair = rep.beta[mu] * rep.beta[nu];
      cs.K[mu][nu] = sandwich(bar, pair, phi);
      cs.tildeK[mu][nu] = sandwich(tilde, pair, phi);
    }
  }
  return cs;
}

template <DkpScalar T>
FierzCoefficients<T> fierz_decompose(const CurrentSet<T>& cs) {
  FierzCoefficients<T> f;
  const T scalar_part = ratio<T>(2, 9) * cs.S + ratio<T>(1, 9) * cs.Sflat;
  f.a = ratio<T>(5, 9) * cs.S - ratio<T>(2, 9) * cs.Sflat;
  for (int mu = 0; mu < 4; ++mu) {
    f.j[mu] = ratio<T>(1, 2) * cs.J[mu];
    f.h[mu] = ratio<T>(-1, 2) * cs.H[mu];
    for (int nu = 0; nu < 4; ++nu) f.k[mu][nu] = T(2) * (cs.K[nu][mu] - g<T>(mu, nu) * scalar_part);
  }
  return f;
}

template <DkpScalar T>
Matrix5<T> fierz_expand(const KemmerRep<T>& rep, const FierzCoefficients<T>& f) {
  Matrix5<T> out = f.a * Matrix5<T>::identity();
  const T half = ratio<T>(1, 2);
  for (int mu = 0; mu < 4; ++mu) {
    out += (g<T>(mu, mu) * f.j[mu]) * rep.beta[mu];
    out += (g<T>(mu, mu) * f.h[mu]) * rep.beta_dot[mu];
    for (int nu = 0; nu < 4; ++nu) {
      out += (half * g<T>(mu, mu) * g<T>(nu, nu) * f.k[mu][nu]) * (rep.beta[mu] * rep.beta[nu]);
    }
  }
  return out;
}

template <DkpScalar T>
FierzResidual<T> fierz_residual(const KemmerRep<T>& rep, const Wavefunction<T>& phi) {
  const CurrentSet<T> cs = compute_currents(rep, phi);
  const Matrix5<T> I = Matrix5<T>::identity();

  // Phi Phi-bar = (5/9 S - 2/9 Sflat) I + 1/2 J^mu beta_mu + K^{nu mu} beta_mu beta_nu
  //               - 1/2 H^mu beta_dot_mu - (2/9 S + 1/9 Sflat) beta^2
  auto rearranged = [&](const T& S, const T& Sflat, const FourVector<T>& J,
                        const FourVector<T>* H, const Tensor4<T>& K) {
    Matrix5<T> rhs = (ratio<T>(5, 9) * S - ratio<T>(2, 9) * Sflat) * I;
    for (int mu = 0; mu < 4; ++mu) {
      rhs += (ratio<T>(1, 2) * g<T>(mu, mu) * J[mu]) * rep.beta[mu];
      if (H != nullptr) rhs -= (ratio<T>(1, 2) * g<T>(mu, mu) * (*H)[mu]) * rep.beta_dot[mu];
      for (int nu = 0; nu < 4; ++nu) {
        rhs += (g<T>(nu, nu) * g<T>(mu, mu) * K[nu][mu]) * (rep.beta[mu] * rep.beta[nu]);
      }
    }
    rhs -= (ratio<T>(2, 9) * S + ratio<T>(1, 9) * Sflat) * rep.beta_sq;
    return rhs;
  };

  const Wavefunction<T> bar = apply_left(conjugated(phi), rep.eta);
  const Wavefunction<T> tilde = apply_left(phi, rep.eta);
  FierzResidual<T> r;
  r.hermitian = outer(phi, bar) - rearranged(cs.S, cs.Sflat, cs.J, &cs.H, cs.K);
  r.complex = outer(phi, tilde) - rearranged(cs.tildeS, cs.tildeSflat, cs.tildeJ, nullptr, cs.tildeK);
  return r;
}

template <DkpScalar T>
bool is_z_singular(const CurrentSet<T>& cs, double eps) {
  if constexpr (ScalarTraits<T>::exact) {
    return cs.Z.is_zero();
  } else {
    const double s = magnitude(cs.S);
    const double sf = magnitude(cs.Sflat);
    const double scale = std::sqrt(std::max(1.0, s * s + sf * sf));
    return magnitude(cs.Z) < eps * scale;
  }
}

template <DkpScalar T>
ConstraintResiduals<T> algebraic_constraint_residuals(const CurrentSet<T>& cs, double eps) {
  ConstraintResiduals<T> r;
  const T jj_minus_hh = minkowski_dot(cs.J, cs.J) - minkowski_dot(cs.H, cs.H);
  const T two_s_plus = T(2) * cs.S + cs.Sflat;
  r.scalar_fierz = ratio<T>(1, 9) * two_s_plus * two_s_plus -
                   (ratio<T>(1, 2) * jj_minus_hh + double_contraction_transposed(cs.K));
  const T Z = cs.S - cs.Sflat;
  r.quadratic = ratio<T>(1, 4) * jj_minus_hh + ratio<T>(1, 9) * Z * (T(4) * cs.S - cs.Sflat);

  r.z_singular = is_z_singular(cs, eps);
  if (!r.z_singular) {
    Tensor4<T> k;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        k[mu][nu] = cs.K[mu][nu] + ratio<T>(1, 3) * Z * g<T>(mu, nu) +
                    ratio<T>(3, 4) * (cs.J[mu] + cs.H[mu]) * (cs.J[nu] - cs.H[nu]) / Z;
      }
    r.k_elimination = k;
  }
  return r;
}

template <DkpScalar T>
ZetaResiduals<T> zeta_identity_residuals(const KemmerRep<T>& rep, const Wavefunction<T>& phi) {
  const CurrentSet<T> cs = compute_currents(rep, phi);
  const Wavefunction<T> tilde = apply_left(phi, rep.eta);
  ZetaResiduals<T> r;
  r.sandwich = rep.zeta * outer(phi, tilde) * rep.zeta - cs.tildeZ * rep.zeta;
  r.modulus = cs.Z * cs.Z - conjugate(cs.tildeZ) * cs.tildeZ;
  return r;
}

#define DKP_BILINEARS_INSTANTIATE(T)                                                          \
  template CurrentSet<T> compute_currents(const KemmerRep<T>&, const Wavefunction<T>&);       \
  template FierzCoefficients<T> fierz_decompose(const CurrentSet<T>&);                        \
  template Matrix5<T> fierz_expand(const KemmerRep<T>&, const FierzCoefficients<T>&);         \
  template FierzResidual<T> fierz_residual(const KemmerRep<T>&, const Wavefunction<T>&);      \
  template bool is_z_singular(const CurrentSet<T>&, double);                                  \
  template ConstraintResiduals<T> algebraic_constraint_residuals(const CurrentSet<T>&, double); \
  template ZetaResiduals<T> zeta_identity_residuals(const KemmerRep<T>&, const Wavefunction<T>&);
DKP_BILINEARS_INSTANTIATE(GaussianRational)
DKP_BILINEARS_INSTANTIATE(Complex)
#undef DKP_BILINEARS_INSTANTIATE

}  // namespace dkp
