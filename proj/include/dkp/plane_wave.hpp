#pragma once

#include "dkp/fields.hpp"

namespace dkp {

/// Plane wave Phi(x) = amplitude (k_mu/m, 1) exp(-i p_mu x^mu) in a constant external
/// potential A. It solves the coupled DKP equation when k = p - eA satisfies k.k = m^2.
/// All four-vectors carry lower indices.
struct PlaneWaveSpec {
  FourVector<double> p{};
  FourVector<double> A{};
  double m = 1.0;
  double e = 1.0;
  Complex amplitude{1.0, 0.0};

  FourVector<double> kinetic_momentum() const;
  /// |k.k - m^2|.
  double mass_shell_violation() const;
};

/// On-shell plane wave whose phase momentum p is purely timelike, p = (k_0 + eA_0, 0, 0, 0),
/// with k_i = -eA_i and k_0 = sqrt(m^2 + e^2 |A_spatial|^2). Such a field is constant along
/// every spatial axis, so it is consistent with spatial symmetry axes of any extent.
PlaneWaveSpec time_only_plane_wave(double m, double e, const FourVector<double>& A,
                                   Complex amplitude = {1.0, 0.0});

/// Default on-shell tolerance: 1e-10 max(1, m^2).
double default_shell_tolerance(double m);

/// amplitude (k_mu/m, 1). Throws ParameterError for m <= 0.
Wavefunction<Complex> plane_wave_amplitude(const PlaneWaveSpec& spec);

/// Throws ParameterError for m <= 0 and MassShellError when |k.k - m^2| > shell_tol.
void check_mass_shell(const PlaneWaveSpec& spec, double shell_tol);

/// Samples the plane wave on the grid.
FieldGrid manufacture_plane_wave(const PlaneWaveSpec& spec, const GridShape& shape,
                                 double shell_tol);
FieldGrid manufacture_plane_wave(const PlaneWaveSpec& spec, const GridShape& shape);

/// Closed-form gradient d_mu Phi = -i p_mu Phi of a sampled plane wave.
std::array<FieldGrid, 4> plane_wave_gradient(const PlaneWaveSpec& spec, const FieldGrid& phi);

/// Plane wave together with its analytic gradient.
PhiField plane_wave_field(const PlaneWaveSpec& spec, const GridShape& shape);

}  // namespace dkp
