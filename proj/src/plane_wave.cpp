#include "dkp/plane_wave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dkp/errors.hpp"

namespace dkp {

FourVector<double> PlaneWaveSpec::kinetic_momentum() const {
  FourVector<double> k;
  for (int mu = 0; mu < 4; ++mu) k[mu] = p[mu] - e * A[mu];
  return k;
}

double PlaneWaveSpec::mass_shell_violation() const {
  const auto k = kinetic_momentum();
  double kk = 0.0;
  for (int mu = 0; mu < 4; ++mu) kk += kMetric[mu] * k[mu] * k[mu];
  return std::abs(kk - m * m);
}

PlaneWaveSpec time_only_plane_wave(double m, double e, const FourVector<double>& A,
                                   Complex amplitude) {
  if (!(m > 0.0)) throw ParameterError("plane wave mass must be positive");
  PlaneWaveSpec s;
  s.A = A;
  s.m = m;
  s.e = e;
  s.amplitude = amplitude;
  const double spatial = A[1] * A[1] + A[2] * A[2] + A[3] * A[3];
  s.p = {std::sqrt(m * m + e * e * spatial) + e * A[0], 0.0, 0.0, 0.0};
  return s;
}

double default_shell_tolerance(double m) { return 1e-10 * std::max(1.0, m * m); }

Wavefunction<Complex> plane_wave_amplitude(const PlaneWaveSpec& spec) {
  if (!(spec.m > 0.0)) throw ParameterError("plane wave mass must be positive");
  const auto k = spec.kinetic_momentum();
  Wavefunction<Complex> phi;
  for (int mu = 0; mu < 4; ++mu) phi[mu] = spec.amplitude * (k[mu] / spec.m);
  phi[4] = spec.amplitude;
  return phi;
}

void check_mass_shell(const PlaneWaveSpec& spec, double shell_tol) {
  if (!(spec.m > 0.0)) throw ParameterError("plane wave mass must be positive");
  const double v = spec.mass_shell_violation();
  if (!(v <= shell_tol)) {
    std::ostringstream os;
    os << "plane wave is off the mass shell: |k.k - m^2| = " << v << " exceeds " << shell_tol;
    throw MassShellError(os.str(), v);
  }
}

FieldGrid manufacture_plane_wave(const PlaneWaveSpec& spec, const GridShape& shape,
                                 double shell_tol) {
  check_mass_shell(spec, shell_tol);
  const auto amp = plane_wave_amplitude(spec);
  FieldGrid grid(shape, PayloadKind::wavefunction);
  for (std::size_t pt = 0; pt < shape.points(); ++pt) {
    const auto x = shape.position(pt);
    double phase = 0.0;
    for (int mu = 0; mu < 4; ++mu) phase += spec.p[mu] * x[mu];
    const Complex factor = std::polar(1.0, -phase);
    for (std::size_t a = 0; a < 5; ++a) grid.at(pt, a) = amp[a] * factor;
  }
  return grid;
}

FieldGrid manufacture_plane_wave(const PlaneWaveSpec& spec, const GridShape& shape) {
  return manufacture_plane_wave(spec, shape, default_shell_tolerance(spec.m));
}

std::array<FieldGrid, 4> plane_wave_gradient(const PlaneWaveSpec& spec, const FieldGrid& phi) {
  std::array<FieldGrid, 4> grads;
  for (int mu = 0; mu < 4; ++mu) {
    grads[mu] = FieldGrid(phi.shape(), PayloadKind::wavefunction);
    const Complex factor(0.0, -spec.p[mu]);
    for (std::size_t i = 0; i < phi.values().size(); ++i)
      grads[mu].values()[i] = factor * phi.values()[i];
  }
  return grads;
}

PhiField plane_wave_field(const PlaneWaveSpec& spec, const GridShape& shape) {
  PhiField field;
  field.phi = manufacture_plane_wave(spec, shape);
  field.gradient = plane_wave_gradient(spec, field.phi);
  return field;
}

}  // namespace dkp
