#pragma once

#include <array>
#include <optional>

#include "dkp/bilinears.hpp"
#include "dkp/grid.hpp"
#include "dkp/kemmer.hpp"

namespace dkp {

/// Wavefunction grid plus optional closed-form gradients d_mu Phi. When the gradient is
/// absent, derivatives come from the finite-difference stencils.
struct PhiField {
  FieldGrid phi;
  std::optional<std::array<FieldGrid, 4>> gradient;

  bool analytic() const { return gradient.has_value(); }
  /// d_axis Phi, analytic if available.
  FieldGrid derivative(int axis) const;
  /// Throws ShapeError if payloads or gradient shapes do not match.
  void validate() const;

  Wavefunction<Complex> value(std::size_t point) const;
  Wavefunction<Complex> derivative_value(const std::array<FieldGrid, 4>& grads, int axis,
                                         std::size_t point) const;
};

/// All four derivatives at once (analytic or finite-difference).
std::array<FieldGrid, 4> gradients(const PhiField& field);

FieldGrid constant_four_vector(const GridShape& shape, const FourVector<double>& v);

Wavefunction<Complex> wavefunction_at(const FieldGrid& grid, std::size_t point);

struct DkpResidual {
  /// (i beta^mu d_mu - e beta^mu A_mu - m) Phi, a column per point.
  FieldGrid primary;
  /// Phi-bar (i beta^mu <-d_mu + e beta^mu A_mu + m), a row per point. For real A it
  /// equals -(primary^dagger eta).
  FieldGrid conjugate;
};

/// Evaluates the minimally coupled DKP equation and its conjugate on a grid.
/// `potential` is a four-vector grid of lower-index A_mu.
DkpResidual dkp_residual(const KemmerRep<Complex>& rep, const PhiField& field,
                         const FieldGrid& potential, double m, double e);

}  // namespace dkp
