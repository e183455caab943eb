#pragma once

#include <array>
#include <optional>

#include "dkp/kemmer.hpp"
#include "dkp/matrix.hpp"
#include "dkp/scalar.hpp"

namespace dkp {

/// DKP field value Phi at one spacetime point (components phi^0..phi^4).
template <DkpScalar T>
using Wavefunction = ColumnVector<T>;

/// Hermitian currents (Phi-bar = Phi^dagger eta) and complex tilde currents
/// (Phi-tilde = Phi^T eta) at one point. All indices are lower.
///
/// S, Sflat, J and Z are real and H is purely imaginary; they are stored in the
/// scalar type unchanged so the reality conditions stay checkable.
template <DkpScalar T>
struct CurrentSet {
  T S{0};
  T Sflat{0};
  FourVector<T> J{};
  FourVector<T> H{};
  Tensor4<T> K{};
  T Z{0};

  T tildeS{0};
  T tildeSflat{0};
  FourVector<T> tildeJ{};
  /// Phi-tilde beta_dot Phi; vanishes identically for every Phi.
  FourVector<T> tildeH{};
  Tensor4<T> tildeK{};
  T tildeZ{0};
};

/// Coefficients of Phi Phi-bar = a I + j^mu beta_mu + 1/2 k^{mu nu} beta_mu beta_nu + h^mu beta_dot_mu
/// (lower indices stored).
template <DkpScalar T>
struct FierzCoefficients {
  T a{0};
  FourVector<T> j{};
  FourVector<T> h{};
  Tensor4<T> k{};
};

template <DkpScalar T>
CurrentSet<T> compute_currents(const KemmerRep<T>& rep, const Wavefunction<T>& phi);

template <DkpScalar T>
FierzCoefficients<T> fierz_decompose(const CurrentSet<T>& cs);

/// Evaluates the expansion a I + j^mu beta_mu + 1/2 k^{mu nu} beta_mu beta_nu + h^mu beta_dot_mu.
template <DkpScalar T>
Matrix5<T> fierz_expand(const KemmerRep<T>& rep, const FierzCoefficients<T>& f);

template <DkpScalar T>
struct FierzResidual {
  /// Phi Phi-bar minus its rearrangement in Hermitian currents.
  Matrix5<T> hermitian;
  /// Phi Phi-tilde minus its rearrangement in tilde currents (no beta_dot term).
  Matrix5<T> complex;
};

template <DkpScalar T>
FierzResidual<T> fierz_residual(const KemmerRep<T>& rep, const Wavefunction<T>& phi);

/// Z-singularity test. Exact mode: Z == 0. Floating mode:
/// |Z| < eps * max(1, S^2 + Sflat^2)^{1/2}.
template <DkpScalar T>
bool is_z_singular(const CurrentSet<T>& cs, double eps = 1e-10);

template <DkpScalar T>
struct ConstraintResiduals {
  /// (2S + Sflat)^2 / 9 - [ (J.J - H.H)/2 + K:K^T ].
  T scalar_fierz{0};
  /// K_{mu nu} + (S - Sflat) eta_{mu nu}/3 + 3/4 (J+H)_mu (J-H)_nu / (S - Sflat);
  /// absent when Z is singular.
  std::optional<Tensor4<T>> k_elimination;
  /// (J.J - H.H)/4 + (S - Sflat)(4S - Sflat)/9.
  T quadratic{0};
  bool z_singular = false;
};

/// Works on any CurrentSet, including ones no wavefunction produces.
template <DkpScalar T>
ConstraintResiduals<T> algebraic_constraint_residuals(const CurrentSet<T>& cs, double eps = 1e-10);

template <DkpScalar T>
struct ZetaResiduals {
  /// zeta Phi Phi-tilde zeta - Z-tilde zeta.
  Matrix5<T> sandwich;
  /// Z^2 - conj(Z-tilde) Z-tilde.
  T modulus{0};
};

template <DkpScalar T>
ZetaResiduals<T> zeta_identity_residuals(const KemmerRep<T>& rep, const Wavefunction<T>& phi);

/// Contraction eta^{mu nu} a_mu b_nu.
template <DkpScalar T>
T minkowski_dot(const FourVector<T>& a, const FourVector<T>& b) {
  T acc(0);
  for (int mu = 0; mu < 4; ++mu) acc += T(kMetric[mu]) * a[mu] * b[mu];
  return acc;
}

#define DKP_BILINEARS_EXTERN(T)                                                                  \
  extern template CurrentSet<T> compute_currents(const KemmerRep<T>&, const Wavefunction<T>&);   \
  extern template FierzCoefficients<T> fierz_decompose(const CurrentSet<T>&);                    \
  extern template Matrix5<T> fierz_expand(const KemmerRep<T>&, const FierzCoefficients<T>&);     \
  extern template FierzResidual<T> fierz_residual(const KemmerRep<T>&, const Wavefunction<T>&);  \
  extern template bool is_z_singular(const CurrentSet<T>&, double);                              \
  extern template ConstraintResiduals<T> algebraic_constraint_residuals(const CurrentSet<T>&,    \
                                                                        double);                 \
  extern template ZetaResiduals<T> zeta_identity_residuals(const KemmerRep<T>&,                  \
                                                           const Wavefunction<T>&);
DKP_BILINEARS_EXTERN(GaussianRational)
DKP_BILINEARS_EXTERN(Complex)
#undef DKP_BILINEARS_EXTERN

}  // namespace dkp
