#include "dkp/fields.hpp"

#include "dkp/errors.hpp"

namespace dkp {

void PhiField::validate() const {
  if (phi.kind() != PayloadKind::wavefunction)
    throw ShapeError("PhiField payload must be wavefunction");
  if (!gradient) return;
  for (const auto& g : *gradient) {
    require_same_shape(phi, g, "wavefunction gradient");
    if (g.kind() != PayloadKind::wavefunction)
      throw ShapeError("PhiField gradient payload must be wavefunction");
  }
}

FieldGrid PhiField::derivative(int axis) const {
  if (gradient) return (*gradient)[axis];
  return partial_derivative(phi, axis);
}

std::array<FieldGrid, 4> gradients(const PhiField& field) {
  field.validate();
  if (field.gradient) return *field.gradient;
  std::array<FieldGrid, 4> out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = partial_derivative(field.phi, mu);
  return out;
}

Wavefunction<Complex> wavefunction_at(const FieldGrid& grid, std::size_t point) {
  Wavefunction<Complex> w;
  const auto v = grid.point(point);
  for (std::size_t a = 0; a < 5; ++a) w[a] = v[a];
  return w;
}

Wavefunction<Complex> PhiField::value(std::size_t point) const { return wavefunction_at(phi, point); }

Wavefunction<Complex> PhiField::derivative_value(const std::array<FieldGrid, 4>& grads, int axis,
                                                 std::size_t point) const {
  return wavefunction_at(grads[axis], point);
}

FieldGrid constant_four_vector(const GridShape& shape, const FourVector<double>& v) {
  FieldGrid grid(shape, PayloadKind::four_vector);
  for (std::size_t p = 0; p < shape.points(); ++p)
    for (int mu = 0; mu < 4; ++mu) grid.at(p, mu) = v[mu];
  return grid;
}

DkpResidual dkp_residual(const KemmerRep<Complex>& rep, const PhiField& field,
                         const FieldGrid& potential, double m, double e) {
  field.validate();
  require_same_shape(field.phi, potential, "wavefunction vs potential");
  if (potential.kind() != PayloadKind::four_vector)
    throw ShapeError("potential grid must be a four-vector field");

  const auto grads = gradients(field);
  const GridShape& shape = field.phi.shape();
  DkpResidual out{FieldGrid(shape, PayloadKind::wavefunction),
                  FieldGrid(shape, PayloadKind::wavefunction)};
  const Complex i(0.0, 1.0);
  std::array<Matrix5<Complex>, 4> beta_up;
  for (int mu = 0; mu < 4; ++mu) beta_up[mu] = rep.beta_upper(mu);

  for (std::size_t p = 0; p < shape.points(); ++p) {
    const auto phi = field.value(p);
    Wavefunction<Complex> bar;
    {
      Wavefunction<Complex> c;
      for (std::size_t a = 0; a < 5; ++a) c[a] = std::conj(phi[a]);
      bar = apply_left(c, rep.eta);
    }
    Matrix5<Complex> op = Complex(-m) * Matrix5<Complex>::identity();
    Matrix5<Complex> op_bar = Complex(m) * Matrix5<Complex>::identity();
    Wavefunction<Complex> col{}, row{};
    for (int mu = 0; mu < 4; ++mu) {
      const Complex a = potential.at(p, mu);
      op -= (e * a) * beta_up[mu];
      op_bar += (e * a) * beta_up[mu];
      const auto dphi = field.derivative_value(grads, mu, p);
      const auto term = dkp::apply(beta_up[mu], dphi);
      Wavefunction<Complex> dbar_in;
      for (std::size_t k = 0; k < 5; ++k) dbar_in[k] = std::conj(dphi[k]);
      const auto dbar = apply_left(dbar_in, rep.eta);
      const auto term_bar = apply_left(dbar, beta_up[mu]);
      for (std::size_t k = 0; k < 5; ++k) {
        col[k] += i * term[k];
        row[k] += i * term_bar[k];
      }
    }
    const auto rest = dkp::apply(op, phi);
    const auto rest_bar = apply_left(bar, op_bar);
    for (std::size_t k = 0; k < 5; ++k) {
      out.primary.at(p, k) = col[k] + rest[k];
      out.conjugate.at(p, k) = row[k] + rest_bar[k];
    }
  }
  return out;
}

}  // namespace dkp
