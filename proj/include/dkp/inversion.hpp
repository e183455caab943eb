#pragma once

#include <optional>
#include <vector>

#include "dkp/fields.hpp"
#include "dkp/report.hpp"

namespace dkp {

/// Currents at every grid point together with their first derivatives. Derivatives of
/// bilinears are assembled by the product rule from d_mu Phi (analytic or finite-difference),
/// so point-local identities between them hold to round-off in either mode.
/// All indices are lower; tensor payloads are (mu, nu) = d_mu X_nu.
struct CurrentField {
  GridShape shape;
  std::vector<CurrentSet<Complex>> currents;
  FieldGrid dJ;       // tensor
  FieldGrid dH;       // tensor
  FieldGrid dZ;       // four-vector
  FieldGrid dZtilde;  // four-vector
  /// i(Phi-bar d Phi - d Phi-bar Phi) - i(Phi-bar beta^2 d Phi - d Phi-bar beta^2 Phi), per mu.
  FieldGrid phase_bracket;
  /// 1/2 i (Phi-bar beta^mu d_mu Phi - d_mu Phi-bar beta^mu Phi), summed.
  FieldGrid charge_kinetic;
  /// Same with the companion generators.
  FieldGrid companion_kinetic;
  /// Points where Z is numerically singular (is_z_singular).
  Mask mask;
  bool analytic = false;
  double eps_z = 1e-10;

  std::size_t points() const { return currents.size(); }
  std::size_t unmasked() const;
};

CurrentField compute_current_field(const KemmerRep<Complex>& rep, const PhiField& field,
                                   double eps_z = 1e-10);

/// Marks every point within `radius` steps (box neighbourhood over axes of extent > 1) of a
/// masked point. Used for quantities obtained by stencils from masked fields.
Mask dilate(const Mask& mask, const GridShape& shape, int radius);

/// Throws ParameterError unless m > 0 and e != 0 (both finite).
void require_physical(double m, double e);

/// A_mu from the full expression (currents plus derivative terms). Masked points hold 0.
/// Throws EmptyDomainError when every point is masked.
FieldGrid invert_potential_full(const CurrentField& cf, double m, double e);
FieldGrid invert_potential_full(const KemmerRep<Complex>& rep, const PhiField& field, double m,
                                double e, double eps_z = 1e-10);

/// A_mu = (3m/2e) J_mu / Z; uses no derivatives.
FieldGrid invert_potential_gauge_fixed(const CurrentField& cf, double m, double e);

/// (1/2e) * 1/2 i (d ln Z-tilde - d ln Z-tilde*), the pure-gauge difference between the two
/// potential routes.
FieldGrid gauge_term(const CurrentField& cf, double e);
FieldGrid gauge_term(const KemmerRep<Complex>& rep, const PhiField& field, double e,
                     double eps_z = 1e-10);

/// F_mu nu = d_mu A_nu - d_nu A_mu with the grid stencils (tensor payload).
FieldGrid field_strength_from_potential(const FieldGrid& A);

/// F_mu nu = (3m/2e) (D_mu J_nu - D_nu J_mu) / Z with D_mu = d_mu + 3mi H_mu / Z.
FieldGrid field_strength_bilinear(const CurrentField& cf, double m, double e);

struct DivergenceResiduals {
  FieldGrid dJ;  // d^mu J_mu
  FieldGrid dH;  // d^mu H_mu - 1/3 i m (4 Sflat - 10 S)
  FieldGrid JA;  // e J^mu A_mu - [1/2 i (...) - m S]
  FieldGrid HA;  // e H^mu A_mu - 1/2 i (...)
};

DivergenceResiduals divergence_identities(const CurrentField& cf, const FieldGrid& A, double m,
                                          double e);
DivergenceResiduals divergence_identities(const KemmerRep<Complex>& rep, const PhiField& field,
                                          const FieldGrid& A, double m, double e);

/// H_mu - (i/3m) d_mu Z per point.
FieldGrid h_elimination_residual(const CurrentField& cf, double m);

/// Scalar density Z and locally scaled current Jcal_mu = J_mu / Z. When the first derivatives
/// are supplied they are used directly; second derivatives always come from stencils.
struct ReducedState {
  FieldGrid Z;     // scalar
  FieldGrid Jcal;  // four-vector
  double m = 1.0;
  double e = 1.0;
  Mask mask;
  std::optional<FieldGrid> dZ;     // four-vector
  std::optional<FieldGrid> dJcal;  // tensor (mu, nu) = d_mu Jcal_nu
};

ReducedState make_reduced_state(const CurrentField& cf, double m, double e);

struct ReducedResiduals {
  /// d^2 Jcal_mu - d_mu d^nu Jcal_nu - (2e^2/m) Z Jcal_mu. Not expected to vanish for
  /// solutions in a fixed external potential.
  FieldGrid field_equation;
  /// The left-hand side alone, d^2 Jcal_mu - d_mu d^nu Jcal_nu.
  FieldGrid field_lhs;
  /// Z d^mu Jcal_mu + Jcal^mu d_mu Z.
  FieldGrid conservation;
  /// Jcal.Jcal - (2/9m^2)[d^2 Z / Z - (dZ.dZ)/(2Z^2)] - 4/9.
  FieldGrid modulus;
  Mask first_order_mask;
  Mask second_order_mask;
};

ReducedResiduals reduced_system_residuals(const ReducedState& state);

struct InversionOptions {
  double eps_z = 1e-10;
  double tolerance = 1e-10;
  /// Known potential of a manufactured solution; enables the reproduction check and is used
  /// as A in the solution-conditional residuals.
  std::optional<FieldGrid> reference_potential;
};

struct InversionOutput {
  FieldGrid A_full;
  FieldGrid A_gauge_fixed;
  FieldGrid gauge_term;
  FieldGrid F_from_A;  // from A_gauge_fixed
  FieldGrid F_bilinear;
  Mask singular_mask;
  Report report;
  /// Per-point residual grids behind each report entry (checks, then diagnostics), for
  /// plot-ready output.
  std::vector<NamedField> residual_fields;
};

/// Comparison of one report entry between a grid at spacing h and the same domain at h/2.
struct ConvergenceEntry {
  std::string identity;
  double coarse = 0.0;
  double fine = 0.0;
  /// coarse / fine; absent when both sit at the round-off floor.
  std::optional<double> ratio;
  /// "floor", "second-order" (ratio in [3.5, 4.5]), "faster" (> 4.5) or "slower" (< 3.5).
  std::string order;
  bool pass = false;
};

struct ConvergenceSummary {
  std::vector<ConvergenceEntry> entries;
  /// max over checks at h divided by max over checks at h/2.
  double max_residual_ratio = 0.0;
  bool all_pass() const;
};

/// Pairs up the checks of two reports by identity. Only "slower" entries fail: a residual
/// that cannot see the stencil's leading error converges faster than second order.
ConvergenceSummary compare_refinement(const Report& coarse, const Report& fine, double floor);

nlohmann::ordered_json to_json(const ConvergenceSummary& s);

InversionOutput invert_pipeline(const KemmerRep<Complex>& rep, const PhiField& field, double m,
                                double e, const InversionOptions& options = {});

}  // namespace dkp
