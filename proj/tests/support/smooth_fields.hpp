#pragma once

#include <cmath>
#include <random>

#include "dkp/fields.hpp"

namespace dkp::testing {

/// Phi_a(x) = c_a + sum_j d_aj exp(i q_aj . x): smooth, generally not a DKP solution, with
/// closed-form gradients. The constant in slot 4 dominates so Z = -3|phi_4|^2 stays away
/// from zero. Wave vectors vanish on axes of extent 1 so the field respects symmetry axes.
struct SmoothField {
  static constexpr int kModes = 2;
  std::array<Complex, 5> c{};
  std::array<std::array<Complex, kModes>, 5> d{};
  std::array<std::array<FourVector<double>, kModes>, 5> q{};

  Complex value(int a, const std::array<double, 4>& x) const {
    Complex v = c[a];
    for (int j = 0; j < kModes; ++j) v += d[a][j] * std::polar(1.0, phase(a, j, x));
    return v;
  }
  Complex derivative(int a, int mu, const std::array<double, 4>& x) const {
    Complex v(0.0);
    for (int j = 0; j < kModes; ++j)
      v += d[a][j] * Complex(0.0, q[a][j][mu]) * std::polar(1.0, phase(a, j, x));
    return v;
  }

 private:
  double phase(int a, int j, const std::array<double, 4>& x) const {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) s += q[a][j][mu] * x[mu];
    return s;
  }
};

inline SmoothField random_smooth_field(std::mt19937_64& rng, const GridShape& shape) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SmoothField f;
  for (int a = 0; a < 5; ++a) {
    f.c[a] = a == 4 ? Complex(2.0 + 0.5 * u(rng), 0.5 * u(rng)) : Complex(u(rng), u(rng));
    for (int j = 0; j < SmoothField::kModes; ++j) {
      f.d[a][j] = Complex(u(rng), u(rng)) * (a == 4 ? 0.3 : 0.6);
      for (int mu = 0; mu < 4; ++mu) f.q[a][j][mu] = shape.extents[mu] > 1 ? 2.0 * u(rng) : 0.0;
    }
  }
  return f;
}

/// Samples the field; `analytic` attaches the closed-form gradient.
inline PhiField sample(const SmoothField& f, const GridShape& shape, bool analytic = true) {
  PhiField field;
  field.phi = FieldGrid(shape, PayloadKind::wavefunction);
  std::array<FieldGrid, 4> grads;
  for (auto& gr : grads) gr = FieldGrid(shape, PayloadKind::wavefunction);
  for (std::size_t p = 0; p < shape.points(); ++p) {
    const auto x = shape.position(p);
    for (int a = 0; a < 5; ++a) {
      field.phi.at(p, a) = f.value(a, x);
      for (int mu = 0; mu < 4; ++mu) grads[mu].at(p, a) = f.derivative(a, mu, x);
    }
  }
  if (analytic) field.gradient = grads;
  return field;
}

/// Multiplies Phi by exp(i theta(x)) with theta = w.x + b sin(v.x), updating the analytic
/// gradient; d_mu theta is returned through `dtheta` (four-vector grid).
inline PhiField apply_local_phase(const PhiField& in, const FourVector<double>& w, double b,
                                  const FourVector<double>& v, FieldGrid* dtheta = nullptr) {
  const GridShape& shape = in.phi.shape();
  PhiField out = in;
  if (dtheta) *dtheta = FieldGrid(shape, PayloadKind::four_vector);
  for (std::size_t p = 0; p < shape.points(); ++p) {
    const auto x = shape.position(p);
    double wx = 0.0, vx = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      wx += w[mu] * x[mu];
      vx += v[mu] * x[mu];
    }
    const double theta = wx + b * std::sin(vx);
    const Complex u = std::polar(1.0, theta);
    std::array<double, 4> dt;
    for (int mu = 0; mu < 4; ++mu) dt[mu] = w[mu] + b * std::cos(vx) * v[mu];
    if (dtheta)
      for (int mu = 0; mu < 4; ++mu) dtheta->at(p, mu) = dt[mu];
    for (int a = 0; a < 5; ++a) {
      const Complex phi = in.phi.at(p, a);
      out.phi.at(p, a) = u * phi;
      if (in.gradient)
        for (int mu = 0; mu < 4; ++mu)
          (*out.gradient)[mu].at(p, a) =
              u * ((*in.gradient)[mu].at(p, a) + Complex(0.0, dt[mu]) * phi);
    }
  }
  return out;
}

inline GridShape grid(std::array<std::size_t, 4> n, double h) {
  GridShape s;
  s.extents = n;
  s.spacing = {h, h, h, h};
  return s;
}

inline double max_abs(const FieldGrid& g, const std::vector<bool>& mask = {}) {
  double m = 0.0;
  for (std::size_t p = 0; p < g.points(); ++p) {
    if (!mask.empty() && mask[p]) continue;
    for (const auto& v : g.point(p)) m = std::max(m, std::abs(v));
  }
  return m;
}

inline double max_diff(const FieldGrid& a, const FieldGrid& b, const std::vector<bool>& mask = {}) {
  double m = 0.0;
  for (std::size_t p = 0; p < a.points(); ++p) {
    if (!mask.empty() && mask[p]) continue;
    for (std::size_t c = 0; c < a.components(); ++c)
      m = std::max(m, std::abs(a.at(p, c) - b.at(p, c)));
  }
  return m;
}

}  // namespace dkp::testing
