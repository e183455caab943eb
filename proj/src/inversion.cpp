#include "dkp/inversion.hpp"

#include <cmath>
#include <limits>

#include "dkp/errors.hpp"

namespace dkp {

namespace {

const Complex kI(0.0, 1.0);

double g(int mu) { return kMetric[mu]; }

std::size_t t_index(int mu, int nu) { return static_cast<std::size_t>(4 * mu + nu); }

Wavefunction<Complex> conj_eta(const Wavefunction<Complex>& v, const Matrix5<Complex>& eta) {
  Wavefunction<Complex> c;
  for (std::size_t a = 0; a < 5; ++a) c[a] = std::conj(v[a]);
  return apply_left(c, eta);
}

Wavefunction<Complex> transpose_eta(const Wavefunction<Complex>& v, const Matrix5<Complex>& eta) {
  return apply_left(v, eta);
}

// d(x M y) with x, y built from Phi and dPhi.
Complex product_rule(const Wavefunction<Complex>& row, const Wavefunction<Complex>& drow,
                     const Matrix5<Complex>& M, const Wavefunction<Complex>& col,
                     const Wavefunction<Complex>& dcol) {
  return sandwich(drow, M, col) + sandwich(row, M, dcol);
}

void require_not_empty(const CurrentField& cf) {
  if (cf.unmasked() == 0)
    throw EmptyDomainError("every grid point has a singular scalar density Z; nothing to invert");
}

Complex minkowski(const std::span<const Complex> a, const std::span<const Complex> b) {
  Complex acc(0.0);
  for (int mu = 0; mu < 4; ++mu) acc += g(mu) * a[mu] * b[mu];
  return acc;
}

}  // namespace

std::size_t CurrentField::unmasked() const {
  std::size_t n = 0;
  for (bool b : mask) n += b ? 0 : 1;
  return n;
}

void require_physical(double m, double e) {
  if (!(m > 0.0) || !std::isfinite(m)) throw ParameterError("mass m must be positive and finite");
  if (e == 0.0 || !std::isfinite(e)) throw ParameterError("coupling e must be nonzero and finite");
}

CurrentField compute_current_field(const KemmerRep<Complex>& rep, const PhiField& field,
                                   double eps_z) {
  const auto grads = gradients(field);
  const GridShape& shape = field.phi.shape();
  const std::size_t n = shape.points();

  CurrentField cf;
  cf.shape = shape;
  cf.analytic = field.analytic();
  cf.eps_z = eps_z;
  cf.currents.resize(n);
  cf.dJ = FieldGrid(shape, PayloadKind::tensor);
  cf.dH = FieldGrid(shape, PayloadKind::tensor);
  cf.dZ = FieldGrid(shape, PayloadKind::four_vector);
  cf.dZtilde = FieldGrid(shape, PayloadKind::four_vector);
  cf.phase_bracket = FieldGrid(shape, PayloadKind::four_vector);
  cf.charge_kinetic = FieldGrid(shape, PayloadKind::scalar);
  cf.companion_kinetic = FieldGrid(shape, PayloadKind::scalar);
  cf.mask.assign(n, false);

  std::array<Matrix5<Complex>, 4> beta_up, beta_dot_up;
  for (int mu = 0; mu < 4; ++mu) {
    beta_up[mu] = rep.beta_upper(mu);
    beta_dot_up[mu] = rep.beta_dot_upper(mu);
  }
  const auto identity = Matrix5<Complex>::identity();

  for (std::size_t p = 0; p < n; ++p) {
    const auto phi = field.value(p);
    const auto bar = conj_eta(phi, rep.eta);
    const auto tilde = transpose_eta(phi, rep.eta);
    auto& cs = cf.currents[p] = compute_currents(rep, phi);
    cf.mask[p] = is_z_singular(cs, eps_z);

    Complex charge(0.0), companion(0.0);
    for (int mu = 0; mu < 4; ++mu) {
      const auto dphi = field.derivative_value(grads, mu, p);
      const auto dbar = conj_eta(dphi, rep.eta);
      const auto dtilde = transpose_eta(dphi, rep.eta);
      for (int nu = 0; nu < 4; ++nu) {
        cf.dJ.at(p, t_index(mu, nu)) = product_rule(bar, dbar, rep.beta[nu], phi, dphi);
        cf.dH.at(p, t_index(mu, nu)) = product_rule(bar, dbar, rep.beta_dot[nu], phi, dphi);
      }
      cf.dZ.at(p, mu) = product_rule(bar, dbar, rep.zeta, phi, dphi);
      cf.dZtilde.at(p, mu) = product_rule(tilde, dtilde, rep.zeta, phi, dphi);

      const Complex plain = sandwich(bar, identity, dphi) - sandwich(dbar, identity, phi);
      const Complex squared = sandwich(bar, rep.beta_sq, dphi) - sandwich(dbar, rep.beta_sq, phi);
      cf.phase_bracket.at(p, mu) = kI * plain - kI * squared;

      charge += sandwich(bar, beta_up[mu], dphi) - sandwich(dbar, beta_up[mu], phi);
      companion += sandwich(bar, beta_dot_up[mu], dphi) - sandwich(dbar, beta_dot_up[mu], phi);
    }
    cf.charge_kinetic.at(p, 0) = 0.5 * kI * charge;
    cf.companion_kinetic.at(p, 0) = 0.5 * kI * companion;
  }
  return cf;
}

Mask dilate(const Mask& mask, const GridShape& shape, int radius) {
  Mask out = mask;
  if (radius <= 0) return out;
  for (int axis = 0; axis < 4; ++axis) {
    const std::size_t n = shape.extents[axis];
    if (n == 1) continue;
    const std::size_t stride = shape.stride(axis);
    const Mask in = out;
    for (std::size_t p = 0; p < shape.points(); ++p) {
      if (!in[p]) continue;
      const std::size_t i = shape.coords(p)[axis];
      const std::size_t lo = i >= static_cast<std::size_t>(radius) ? i - radius : 0;
      const std::size_t hi = std::min(n - 1, i + static_cast<std::size_t>(radius));
      const std::size_t base = p - i * stride;
      for (std::size_t j = lo; j <= hi; ++j) out[base + j * stride] = true;
    }
  }
  return out;
}

FieldGrid invert_potential_full(const CurrentField& cf, double m, double e) {
  require_physical(m, e);
  require_not_empty(cf);
  FieldGrid A(cf.shape, PayloadKind::four_vector);
  for (std::size_t p = 0; p < cf.points(); ++p) {
    if (cf.mask[p]) continue;
    const auto& cs = cf.currents[p];
    for (int mu = 0; mu < 4; ++mu) {
      A.at(p, mu) = (3.0 * m / (2.0 * e)) * cs.J[mu] / cs.Z +
                    (1.0 / (2.0 * e)) * cf.phase_bracket.at(p, mu) / cs.Z;
    }
  }
  return A;
}

FieldGrid invert_potential_full(const KemmerRep<Complex>& rep, const PhiField& field, double m,
                                double e, double eps_z) {
  require_physical(m, e);
  return invert_potential_full(compute_current_field(rep, field, eps_z), m, e);
}

FieldGrid invert_potential_gauge_fixed(const CurrentField& cf, double m, double e) {
  require_physical(m, e);
  require_not_empty(cf);
  FieldGrid A(cf.shape, PayloadKind::four_vector);
  for (std::size_t p = 0; p < cf.points(); ++p) {
    if (cf.mask[p]) continue;
    const auto& cs = cf.currents[p];
    for (int mu = 0; mu < 4; ++mu) A.at(p, mu) = (3.0 * m / (2.0 * e)) * cs.J[mu] / cs.Z;
  }
  return A;
}

FieldGrid gauge_term(const CurrentField& cf, double e) {
  if (e == 0.0 || !std::isfinite(e)) throw ParameterError("coupling e must be nonzero and finite");
  require_not_empty(cf);
  FieldGrid out(cf.shape, PayloadKind::four_vector);
  for (std::size_t p = 0; p < cf.points(); ++p) {
    if (cf.mask[p]) continue;
    // |Z-tilde| = |Z|, so the Z mask also guards this division.
    const Complex zt = cf.currents[p].tildeZ;
    for (int mu = 0; mu < 4; ++mu) {
      const Complex d = cf.dZtilde.at(p, mu);
      out.at(p, mu) = (1.0 / (2.0 * e)) * 0.5 * kI * (d / zt - std::conj(d) / std::conj(zt));
    }
  }
  return out;
}

FieldGrid gauge_term(const KemmerRep<Complex>& rep, const PhiField& field, double e,
                     double eps_z) {
  return gauge_term(compute_current_field(rep, field, eps_z), e);
}

FieldGrid field_strength_from_potential(const FieldGrid& A) {
  if (A.kind() != PayloadKind::four_vector) throw ShapeError("potential must be a four-vector field");
  std::array<FieldGrid, 4> dA;
  for (int mu = 0; mu < 4; ++mu) dA[mu] = partial_derivative(A, mu);
  FieldGrid F(A.shape(), PayloadKind::tensor);
  for (std::size_t p = 0; p < A.points(); ++p)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        F.at(p, t_index(mu, nu)) = mu == nu ? Complex(0.0) : dA[mu].at(p, nu) - dA[nu].at(p, mu);
  return F;
}

FieldGrid field_strength_bilinear(const CurrentField& cf, double m, double e) {
  require_physical(m, e);
  require_not_empty(cf);
  FieldGrid F(cf.shape, PayloadKind::tensor);
  const double pre = 3.0 * m / (2.0 * e);
  for (std::size_t p = 0; p < cf.points(); ++p) {
    if (cf.mask[p]) continue;
    const auto& cs = cf.currents[p];
    auto DJ = [&](int mu, int nu) {
      return cf.dJ.at(p, t_index(mu, nu)) + 3.0 * m * kI * cs.H[mu] / cs.Z * cs.J[nu];
    };
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        if (mu == nu) continue;
        F.at(p, t_index(mu, nu)) = pre * (DJ(mu, nu) - DJ(nu, mu)) / cs.Z;
      }
  }
  return F;
}

DivergenceResiduals divergence_identities(const CurrentField& cf, const FieldGrid& A, double m,
                                          double e) {
  if (A.shape() != cf.shape) throw ShapeError("grid shape mismatch: currents vs potential");
  if (A.kind() != PayloadKind::four_vector) throw ShapeError("potential must be a four-vector field");
  DivergenceResiduals r{FieldGrid(cf.shape, PayloadKind::scalar), FieldGrid(cf.shape, PayloadKind::scalar),
                        FieldGrid(cf.shape, PayloadKind::scalar), FieldGrid(cf.shape, PayloadKind::scalar)};
  for (std::size_t p = 0; p < cf.points(); ++p) {
    const auto& cs = cf.currents[p];
    Complex divJ(0.0), divH(0.0), JA(0.0), HA(0.0);
    for (int mu = 0; mu < 4; ++mu) {
      divJ += g(mu) * cf.dJ.at(p, t_index(mu, mu));
      divH += g(mu) * cf.dH.at(p, t_index(mu, mu));
      JA += g(mu) * cs.J[mu] * A.at(p, mu);
      HA += g(mu) * cs.H[mu] * A.at(p, mu);
    }
    r.dJ.at(p, 0) = divJ;
    r.dH.at(p, 0) = divH - (1.0 / 3.0) * kI * m * (4.0 * cs.Sflat - 10.0 * cs.S);
    r.JA.at(p, 0) = e * JA - (cf.charge_kinetic.at(p, 0) - m * cs.S);
    r.HA.at(p, 0) = e * HA - cf.companion_kinetic.at(p, 0);
  }
  return r;
}

DivergenceResiduals divergence_identities(const KemmerRep<Complex>& rep, const PhiField& field,
                                          const FieldGrid& A, double m, double e) {
  return divergence_identities(compute_current_field(rep, field), A, m, e);
}

FieldGrid h_elimination_residual(const CurrentField& cf, double m) {
  if (!(m > 0.0)) throw ParameterError("mass m must be positive");
  FieldGrid r(cf.shape, PayloadKind::four_vector);
  for (std::size_t p = 0; p < cf.points(); ++p)
    for (int mu = 0; mu < 4; ++mu)
      r.at(p, mu) = cf.currents[p].H[mu] - kI / (3.0 * m) * cf.dZ.at(p, mu);
  return r;
}

ReducedState make_reduced_state(const CurrentField& cf, double m, double e) {
  require_physical(m, e);
  ReducedState s;
  s.Z = FieldGrid(cf.shape, PayloadKind::scalar);
  s.Jcal = FieldGrid(cf.shape, PayloadKind::four_vector);
  s.m = m;
  s.e = e;
  s.mask = cf.mask;
  // Product-rule derivatives are only worth passing on when d Phi is exact; with stencils
  // the reduced system differentiates Z and Jcal itself (second order up to the boundary).
  FieldGrid dJcal(cf.shape, PayloadKind::tensor);
  for (std::size_t p = 0; p < cf.points(); ++p) {
    const auto& cs = cf.currents[p];
    s.Z.at(p, 0) = cs.Z;
    if (cf.mask[p]) continue;
    for (int nu = 0; nu < 4; ++nu) s.Jcal.at(p, nu) = cs.J[nu] / cs.Z;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        dJcal.at(p, t_index(mu, nu)) =
            (cf.dJ.at(p, t_index(mu, nu)) - s.Jcal.at(p, nu) * cf.dZ.at(p, mu)) / cs.Z;
  }
  if (cf.analytic) {
    s.dZ = cf.dZ;
    s.dJcal = std::move(dJcal);
  }
  return s;
}

ReducedResiduals reduced_system_residuals(const ReducedState& s) {
  require_physical(s.m, s.e);
  const GridShape& shape = s.Z.shape();
  require_same_shape(s.Z, s.Jcal, "Z vs Jcal");
  const std::size_t n = shape.points();
  const Mask mask = s.mask.empty() ? Mask(n, false) : s.mask;
  if (mask.size() != n) throw ShapeError("mask size does not match grid");

  // First derivatives: supplied, or stencils on Z / Jcal. Second derivatives d_a d_b are
  // stencils on the first derivatives, except that without supplied first derivatives the
  // diagonal a == b uses the dedicated second-difference stencil (composition would be
  // first order at the boundary).
  const bool supplied = s.dZ && s.dJcal;
  FieldGrid dZ(shape, PayloadKind::four_vector), dJcal(shape, PayloadKind::tensor);
  if (supplied) {
    dZ = *s.dZ;
    dJcal = *s.dJcal;
  } else {
    for (int mu = 0; mu < 4; ++mu) {
      const auto dz = partial_derivative(s.Z, mu);
      const auto dj = partial_derivative(s.Jcal, mu);
      for (std::size_t p = 0; p < n; ++p) {
        dZ.at(p, mu) = dz.at(p, 0);
        for (int nu = 0; nu < 4; ++nu) dJcal.at(p, t_index(mu, nu)) = dj.at(p, nu);
      }
    }
  }
  // Jcal is zero on masked points; stencils must not read across them.
  const Mask first = supplied ? mask : dilate(mask, shape, 2);
  const Mask second = dilate(first, shape, 2);

  std::array<FieldGrid, 4> ddZ, ddJ;  // ddZ[a](b) = d_a d_b Z, ddJ[a](b, c) = d_a d_b Jcal_c
  for (int a = 0; a < 4; ++a) {
    ddZ[a] = partial_derivative(dZ, a);
    ddJ[a] = partial_derivative(dJcal, a);
    if (supplied) continue;
    const auto d2z = second_partial_derivative(s.Z, a);
    const auto d2j = second_partial_derivative(s.Jcal, a);
    for (std::size_t p = 0; p < n; ++p) {
      ddZ[a].at(p, a) = d2z.at(p, 0);
      for (int c = 0; c < 4; ++c) ddJ[a].at(p, t_index(a, c)) = d2j.at(p, c);
    }
  }

  ReducedResiduals r{FieldGrid(shape, PayloadKind::four_vector), FieldGrid(shape, PayloadKind::four_vector),
                     FieldGrid(shape, PayloadKind::scalar), FieldGrid(shape, PayloadKind::scalar),
                     first, second};
  const double m = s.m, e = s.e;
  for (std::size_t p = 0; p < n; ++p) {
    if (mask[p]) continue;
    const Complex Z = s.Z.at(p, 0);
    const auto J = s.Jcal.point(p);
    const auto dz = dZ.point(p);

    Complex divJ(0.0);
    for (int mu = 0; mu < 4; ++mu) divJ += g(mu) * dJcal.at(p, t_index(mu, mu));
    r.conservation.at(p, 0) = Z * divJ + minkowski(J, dz);

    Complex boxZ(0.0);
    for (int a = 0; a < 4; ++a) boxZ += g(a) * ddZ[a].at(p, a);
    r.modulus.at(p, 0) = minkowski(J, J) -
                         (2.0 / (9.0 * m * m)) * (boxZ / Z - minkowski(dz, dz) / (2.0 * Z * Z)) -
                         4.0 / 9.0;

    for (int mu = 0; mu < 4; ++mu) {
      Complex box(0.0), grad_div(0.0);
      for (int nu = 0; nu < 4; ++nu) {
        box += g(nu) * ddJ[nu].at(p, t_index(nu, mu));
        grad_div += g(nu) * ddJ[mu].at(p, t_index(nu, nu));
      }
      const Complex lhs = box - grad_div;
      r.field_lhs.at(p, mu) = lhs;
      r.field_equation.at(p, mu) = lhs - (2.0 * e * e / m) * Z * J[mu];
    }
  }
  return r;
}

namespace {

FieldGrid difference(const FieldGrid& a, const FieldGrid& b) {
  require_same_shape(a, b, "difference");
  FieldGrid d(a.shape(), a.kind());
  for (std::size_t i = 0; i < a.values().size(); ++i) d.values()[i] = a.values()[i] - b.values()[i];
  return d;
}

FieldGrid antisymmetry_defect(const FieldGrid& F) {
  FieldGrid d(F.shape(), PayloadKind::tensor);
  for (std::size_t p = 0; p < F.points(); ++p)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        d.at(p, t_index(mu, nu)) = F.at(p, t_index(mu, nu)) + F.at(p, t_index(nu, mu));
  return d;
}

// (2e/3m) d^nu F_nu mu.
FieldGrid scaled_divergence(const FieldGrid& F, double m, double e) {
  std::array<FieldGrid, 4> dF;
  for (int nu = 0; nu < 4; ++nu) dF[nu] = partial_derivative(F, nu);
  FieldGrid out(F.shape(), PayloadKind::four_vector);
  for (std::size_t p = 0; p < F.points(); ++p)
    for (int mu = 0; mu < 4; ++mu) {
      Complex acc(0.0);
      for (int nu = 0; nu < 4; ++nu) acc += g(nu) * dF[nu].at(p, t_index(nu, mu));
      out.at(p, mu) = (2.0 * e / (3.0 * m)) * acc;
    }
  return out;
}

double max_component(const FieldGrid& grid) {
  double m = 0.0;
  for (const auto& v : grid.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

InversionOutput invert_pipeline(const KemmerRep<Complex>& rep, const PhiField& field, double m,
                                double e, const InversionOptions& options) {
  require_physical(m, e);
  field.validate();
  if (options.reference_potential) {
    require_same_shape(field.phi, *options.reference_potential, "wavefunction vs reference potential");
    if (options.reference_potential->kind() != PayloadKind::four_vector)
      throw ShapeError("reference potential must be a four-vector field");
  }

  const CurrentField cf = compute_current_field(rep, field, options.eps_z);
  InversionOutput out;
  out.singular_mask = cf.mask;
  out.A_full = invert_potential_full(cf, m, e);  // throws EmptyDomainError
  out.A_gauge_fixed = invert_potential_gauge_fixed(cf, m, e);
  out.gauge_term = gauge_term(cf, e);
  out.F_from_A = field_strength_from_potential(out.A_gauge_fixed);
  out.F_bilinear = field_strength_bilinear(cf, m, e);

  const GridShape& shape = cf.shape;
  const Mask& base = cf.mask;
  const Mask stencil1 = dilate(base, shape, 2);
  const Mask stencil2 = dilate(base, shape, 4);
  const Mask none;
  const double tol = options.tolerance;
  Report& rep_out = out.report;

  rep_out.meta["derivatives"] = cf.analytic ? "analytic" : "finite-difference";
  rep_out.meta["points"] = cf.points();
  rep_out.meta["masked_fraction"] =
      static_cast<double>(cf.points() - cf.unmasked()) / static_cast<double>(cf.points());
  rep_out.meta["m"] = m;
  rep_out.meta["e"] = e;
  rep_out.meta["eps_z"] = options.eps_z;

  std::vector<NamedField> diag_fields;
  auto check = [&](const char* id, const FieldGrid& r, const Mask& mask, double t) {
    rep_out.checks.push_back(make_check(id, residual_stats(r, mask), t));
    out.residual_fields.push_back({id, r, mask});
  };
  auto diagnostic = [&](const char* id, const FieldGrid& r, const Mask& mask) {
    rep_out.diagnostics.push_back(make_check(id, residual_stats(r, mask), tol));
    diag_fields.push_back({id, r, mask});
  };

  FieldGrid decomposition = difference(out.A_full, out.A_gauge_fixed);
  decomposition = difference(decomposition, out.gauge_term);
  check("potential_decomposition", decomposition, base, tol);

  const FieldGrid* A = &out.A_full;
  const Mask* A_mask = &base;
  if (options.reference_potential) {
    const auto& ref = *options.reference_potential;
    check("potential_reference", difference(out.A_full, ref), base, tol * (1.0 + max_component(ref)));
    A = &ref;
    A_mask = &none;
  }

  const auto dkp = dkp_residual(rep, field, *A, m, e);
  check("dkp_equation", dkp.primary, *A_mask, tol);
  FieldGrid conj_defect(shape, PayloadKind::wavefunction);
  for (std::size_t p = 0; p < shape.points(); ++p)
    for (std::size_t k = 0; k < 5; ++k)
      conj_defect.at(p, k) = dkp.conjugate.at(p, k) + std::conj(dkp.primary.at(p, k)) * rep.eta(k, k);
  check("dkp_conjugate_consistency", conj_defect, *A_mask, tol);

  const auto div = divergence_identities(cf, *A, m, e);
  check("current_conservation", div.dJ, none, tol);
  check("companion_divergence", div.dH, none, tol);
  check("charge_coupling", div.JA, *A_mask, tol);
  check("companion_coupling", div.HA, *A_mask, tol);
  check("h_elimination", h_elimination_residual(cf, m), none, tol);

  check("field_strength_antisymmetry_potential", antisymmetry_defect(out.F_from_A), stencil1, 0.0);
  check("field_strength_antisymmetry_bilinear", antisymmetry_defect(out.F_bilinear), base, 0.0);
  check("field_strength_routes", difference(out.F_from_A, out.F_bilinear), stencil1, tol);

  const auto reduced = reduced_system_residuals(make_reduced_state(cf, m, e));
  check("reduced_conservation", reduced.conservation, reduced.first_order_mask, tol);
  check("reduced_modulus", reduced.modulus, reduced.second_order_mask, tol);
  check("reduced_lhs_cross_check",
        difference(reduced.field_lhs, scaled_divergence(out.F_from_A, m, e)), stencil2, tol);

  diagnostic("reduced_field_equation", reduced.field_equation, reduced.second_order_mask);
  diagnostic("field_strength_from_potential", out.F_from_A, stencil1);
  diagnostic("field_strength_bilinear", out.F_bilinear, base);
  for (auto& f : diag_fields) out.residual_fields.push_back(std::move(f));
  return out;
}

bool ConvergenceSummary::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

ConvergenceSummary compare_refinement(const Report& coarse, const Report& fine, double floor) {
  ConvergenceSummary s;
  double max_coarse = 0.0, max_fine = 0.0;
  for (const auto& c : coarse.checks) {
    const auto* f = fine.find(c.identity);
    if (!f) continue;
    ConvergenceEntry e;
    e.identity = c.identity;
    e.coarse = c.stats.max_abs;
    e.fine = f->stats.max_abs;
    max_coarse = std::max(max_coarse, e.coarse);
    max_fine = std::max(max_fine, e.fine);
    if (e.coarse <= floor && e.fine <= floor) {
      e.order = "floor";
      e.pass = true;
    } else {
      e.ratio = e.fine > 0.0 ? e.coarse / e.fine : std::numeric_limits<double>::infinity();
      if (*e.ratio < 3.5) e.order = "slower";
      else if (*e.ratio <= 4.5) e.order = "second-order";
      else e.order = "faster";
      // NaN ratios compare false everywhere and end up "slower".
      e.pass = e.order != "slower";
    }
    s.entries.push_back(std::move(e));
  }
  s.max_residual_ratio = max_fine > 0.0 ? max_coarse / max_fine : std::numeric_limits<double>::infinity();
  return s;
}

nlohmann::ordered_json to_json(const ConvergenceSummary& s) {
  nlohmann::ordered_json j;
  j["max_residual_ratio"] = std::isfinite(s.max_residual_ratio) ? nlohmann::ordered_json(s.max_residual_ratio)
                                                                : nlohmann::ordered_json(nullptr);
  auto& list = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : s.entries) {
    nlohmann::ordered_json r;
    r["identity"] = e.identity;
    r["coarse_max_abs"] = e.coarse;
    r["fine_max_abs"] = e.fine;
    r["ratio"] = e.ratio && std::isfinite(*e.ratio) ? nlohmann::ordered_json(*e.ratio) : nlohmann::ordered_json(nullptr);
    r["order"] = e.order;
    r["pass"] = e.pass;
    list.push_back(std::move(r));
  }
  return j;
}

}  // namespace dkp
