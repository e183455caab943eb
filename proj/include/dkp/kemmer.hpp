#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "dkp/matrix.hpp"
#include "dkp/scalar.hpp"

namespace dkp {

/// Concrete 5-component representation of the Kemmer algebra together with the
/// elements derived from it. Lower-index beta_mu throughout.
template <DkpScalar T>
struct KemmerRep {
  std::array<int, 4> metric = kMetric;
  std::array<Matrix5<T>, 4> beta;
  /// Real symmetric involution with eta beta_mu^T eta = beta_mu.
  Matrix5<T> eta;
  /// Companion generators (beta_mu beta^2 - beta^2 beta_mu) / 3.
  std::array<Matrix5<T>, 4> beta_dot;
  /// eta^{mu nu} beta_mu beta_nu.
  Matrix5<T> beta_sq;
  /// I - beta^2. Satisfies zeta^2 = -3 zeta, so -zeta/3 is the projector.
  Matrix5<T> zeta;

  Matrix5<T> beta_upper(int mu) const { return T(metric[mu]) * beta[mu]; }
  Matrix5<T> beta_dot_upper(int mu) const { return T(metric[mu]) * beta_dot[mu]; }
  Matrix5<T> projector() const { return zeta * ratio<T>(-1, 3); }
};

/// Populates the derived elements (beta_dot, beta_sq, zeta) from beta and eta.
template <DkpScalar T>
KemmerRep<T> make_representation(const std::array<Matrix5<T>, 4>& beta, const Matrix5<T>& eta);

/// The reference spin-0 representation on (phi^0..phi^3, phi^4):
/// (beta^mu)_{A,4} = delta^mu_A and (beta^mu)_{4,B} = eta^{mu B}, lowered with the metric.
template <DkpScalar T>
KemmerRep<T> build_representation();

using AnyKemmerRep = std::variant<KemmerRep<GaussianRational>, KemmerRep<Complex>>;

AnyKemmerRep build_representation(ScalarMode mode);

/// Converts an exact representation to double precision.
KemmerRep<Complex> to_float(const KemmerRep<GaussianRational>& rep);

/// Residual summary for one family of algebra identities.
struct IdentityRecord {
  std::string family;
  std::size_t cases = 0;
  double max_residual = 0.0;
  /// True when every residual is exactly zero (exact mode) or within tolerance.
  bool pass = true;
  /// Index tuple of the worst residual, e.g. "(mu,rho,nu)=(1,1,1)".
  std::string worst_case;
};

struct IdentityReport {
  ScalarMode mode = ScalarMode::exact;
  double tolerance = 0.0;
  std::vector<IdentityRecord> records;

  bool all_pass() const;
  const IdentityRecord* find(const std::string& family) const;
};

/// Checks every matrix identity of the algebra against `rep`. Failures are reported,
/// not thrown. In exact mode a record passes only if every residual is exactly zero;
/// `tolerance` is used in floating mode. Throws std::invalid_argument if the metric
/// record is not a +-1 signature.
template <DkpScalar T>
IdentityReport verify_algebra_identities(const KemmerRep<T>& rep, double tolerance = 1e-12);

/// The 25 canonical basis matrices, their rank, and the coefficients expressing beta^2
/// in the span of {beta_mu beta_nu}.
template <DkpScalar T>
struct BasisEnumeration {
  std::array<Matrix5<T>, 25> elements;
  std::size_t rank = 0;
  Tensor4<T> beta_sq_coefficients;
};

/// Throws RepresentationDefect when the rank is below 25.
template <DkpScalar T>
BasisEnumeration<T> enumerate_basis(const KemmerRep<T>& rep, double tolerance = 1e-12);

/// Matrix of canonical basis element `index` (ordering: I; beta_mu; beta_dot_mu;
/// beta_mu beta_nu row-major).
template <DkpScalar T>
Matrix5<T> basis_matrix(const KemmerRep<T>& rep, std::size_t index);

extern template struct KemmerRep<GaussianRational>;
extern template struct KemmerRep<Complex>;
extern template KemmerRep<GaussianRational> make_representation(
    const std::array<Matrix5<GaussianRational>, 4>&, const Matrix5<GaussianRational>&);
extern template KemmerRep<Complex> make_representation(const std::array<Matrix5<Complex>, 4>&,
                                                        const Matrix5<Complex>&);
extern template KemmerRep<GaussianRational> build_representation();
extern template KemmerRep<Complex> build_representation();
extern template IdentityReport verify_algebra_identities(const KemmerRep<GaussianRational>&,
                                                         double);
extern template IdentityReport verify_algebra_identities(const KemmerRep<Complex>&, double);
extern template BasisEnumeration<GaussianRational> enumerate_basis(
    const KemmerRep<GaussianRational>&, double);
extern template BasisEnumeration<Complex> enumerate_basis(const KemmerRep<Complex>&, double);
extern template Matrix5<GaussianRational> basis_matrix(const KemmerRep<GaussianRational>&,
                                                       std::size_t);
extern template Matrix5<Complex> basis_matrix(const KemmerRep<Complex>&, std::size_t);

}  // namespace dkp
