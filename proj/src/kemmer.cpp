#include "dkp/kemmer.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dkp/errors.hpp"

namespace dkp {

template <DkpScalar T>
KemmerRep<T> make_representation(const std::array<Matrix5<T>, 4>& beta, const Matrix5<T>& eta) {
  KemmerRep<T> rep;
  rep.beta = beta;
  rep.eta = eta;
  rep.beta_sq = Matrix5<T>::zero();
  for (int mu = 0; mu < 4; ++mu) rep.beta_sq += T(rep.metric[mu]) * (beta[mu] * beta[mu]);
  for (int mu = 0; mu < 4; ++mu) {
    rep.beta_dot[mu] = (beta[mu] * rep.beta_sq - rep.beta_sq * beta[mu]) * ratio<T>(1, 3);
  }
  rep.zeta = Matrix5<T>::identity() - rep.beta_sq;
  return rep;
}

template <DkpScalar T>
KemmerRep<T> build_representation() {
  std::array<Matrix5<T>, 4> beta;
  for (int mu = 0; mu < 4; ++mu) {
    // beta^mu = e_mu e_4^T + eta^{mu mu} e_4 e_mu^T; lowering multiplies by eta_{mu mu}.
    Matrix5<T> upper = Matrix5<T>::unit(mu, 4) + T(kMetric[mu]) * Matrix5<T>::unit(4, mu);
    beta[mu] = T(kMetric[mu]) * upper;
  }
  const Matrix5<T> beta0_upper = beta[0];
  const Matrix5<T> eta = T(2) * (beta0_upper * beta0_upper) - Matrix5<T>::identity();
  return make_representation(beta, eta);
}

AnyKemmerRep build_representation(ScalarMode mode) {
  if (mode == ScalarMode::exact) return build_representation<GaussianRational>();
  return build_representation<Complex>();
}

namespace {

Matrix5<Complex> matrix_to_float(const Matrix5<GaussianRational>& m) {
  Matrix5<Complex> out;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

}  // namespace

KemmerRep<Complex> to_float(const KemmerRep<GaussianRational>& rep) {
  KemmerRep<Complex> out;
  out.metric = rep.metric;
  for (int mu = 0; mu < 4; ++mu) {
    out.beta[mu] = matrix_to_float(rep.beta[mu]);
    out.beta_dot[mu] = matrix_to_float(rep.beta_dot[mu]);
  }
  out.eta = matrix_to_float(rep.eta);
  out.beta_sq = matrix_to_float(rep.beta_sq);
  out.zeta = matrix_to_float(rep.zeta);
  return out;
}

bool IdentityReport::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
}

const IdentityRecord* IdentityReport::find(const std::string& family) const {
  for (const auto& r : records)
    if (r.family == family) return &r;
  return nullptr;
}

namespace {

std::string label(const char* names, std::initializer_list<int> idx) {
  std::ostringstream os;
  os << "(" << names << ")=(";
  bool first = true;
  for (int i : idx) {
    if (!first) os << ",";
    os << i;
    first = false;
  }
  os << ")";
  return os.str();
}

template <DkpScalar T>
class FamilyCheck {
 public:
  FamilyCheck(std::string family, double tol) : tol_(tol) { record_.family = std::move(family); }

  void check(const Matrix5<T>& residual, const std::string& where) {
    ++record_.cases;
    const double r = residual.max_abs();
    const bool ok = residual.is_zero(ScalarTraits<T>::exact ? 0.0 : tol_);
    note(r, ok, where);
  }
  void check(const T& residual, const std::string& where) {
    ++record_.cases;
    note(magnitude(residual), is_zero(residual, ScalarTraits<T>::exact ? 0.0 : tol_), where);
  }
  IdentityRecord take() && { return std::move(record_); }

 private:
  void note(double r, bool ok, const std::string& where) {
    if (!ok) record_.pass = false;
    if (record_.worst_case.empty() || r > record_.max_residual) {
      record_.worst_case = where;
      record_.max_residual = r;
    }
  }

  double tol_;
  IdentityRecord record_;
};

}  // namespace

template <DkpScalar T>
IdentityReport verify_algebra_identities(const KemmerRep<T>& rep, double tolerance) {
  for (int mu = 0; mu < 4; ++mu) {
    if (rep.metric[mu] != 1 && rep.metric[mu] != -1)
      throw std::invalid_argument("KemmerRep metric must have entries +-1");
  }
  const auto& b = rep.beta;
  const auto& bd = rep.beta_dot;
  const Matrix5<T> I = Matrix5<T>::identity();
  const auto g = [&](int a, int c) { return T(a == c ? rep.metric[a] : 0); };
  const T half = ratio<T>(1, 2);
  const T third = ratio<T>(1, 3);

  IdentityReport report;
  report.mode = ScalarTraits<T>::mode;
  report.tolerance = ScalarTraits<T>::exact ? 0.0 : tolerance;
  auto family = [&](const char* name) { return FamilyCheck<T>(name, tolerance); };

  {
    auto f = family("defining trilinear");
    for (int mu = 0; mu < 4; ++mu)
      for (int rho = 0; rho < 4; ++rho)
        for (int nu = 0; nu < 4; ++nu) {
          Matrix5<T> r = b[mu] * b[rho] * b[nu] + b[nu] * b[rho] * b[mu] - g(mu, rho) * b[nu] -
                         g(nu, rho) * b[mu];
          f.check(r, label("mu,rho,nu", {mu, rho, nu}));
        }
    report.records.push_back(std::move(f).take());
  }
  {
    auto f = family("trace beta beta");
    auto fc = family("trace companion companion");
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        f.check((b[mu] * b[nu]).trace() - T(2) * g(mu, nu), label("mu,nu", {mu, nu}));
        fc.check((bd[mu] * bd[nu]).trace() + T(2) * g(mu, nu), label("mu,nu", {mu, nu}));
      }
    report.records.push_back(std::move(f).take());
    report.records.push_back(std::move(fc).take());
  }
  {
    // Tr(b_k b_l b_mu b_nu) = eta_kl eta_mu,nu + eta_k,nu eta_l,mu: the cyclic-invariant form,
    // and the trace of the quartic reduction below (Tr beta^2 = 8, Tr I = 5).
    auto f = family("trace quartic");
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l)
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu) {
            T r = (b[k] * b[l] * b[mu] * b[nu]).trace() - g(k, l) * g(mu, nu) -
                  g(k, nu) * g(l, mu);
            f.check(r, label("kappa,lambda,mu,nu", {k, l, mu, nu}));
          }
    report.records.push_back(std::move(f).take());
  }
  {
    // Traces that vanish up to degree four: Tr(1-generator), mixed and cubic products.
    auto f = family("trace vanishing");
    for (int mu = 0; mu < 4; ++mu) {
      f.check(b[mu].trace(), label("mu", {mu}));
      f.check(bd[mu].trace(), label("mu", {mu}));
      for (int nu = 0; nu < 4; ++nu) {
        f.check((b[mu] * bd[nu]).trace(), label("mu,nu", {mu, nu}));
        for (int rho = 0; rho < 4; ++rho)
          f.check((b[mu] * b[nu] * b[rho]).trace(), label("mu,nu,rho", {mu, nu, rho}));
      }
    }
    report.records.push_back(std::move(f).take());
  }
  {
    auto f = family("cubic reduction");
    for (int l = 0; l < 4; ++l)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          Matrix5<T> rhs = half * (g(l, mu) * b[nu] + g(nu, mu) * b[l]) +
                           half * (g(nu, mu) * bd[l] - g(l, mu) * bd[nu]);
          f.check(b[l] * b[mu] * b[nu] - rhs, label("lambda,mu,nu", {l, mu, nu}));
        }
    report.records.push_back(std::move(f).take());
  }
  {
    auto f = family("quartic reduction");
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l)
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu) {
            const T c = third * (g(k, l) * g(mu, nu) - g(mu, l) * g(k, nu));
            Matrix5<T> rhs = g(l, mu) * (b[k] * b[nu]) + c * rep.beta_sq - c * I;
            f.check(b[k] * b[l] * b[mu] * b[nu] - rhs, label("kappa,lambda,mu,nu", {k, l, mu, nu}));
          }
    report.records.push_back(std::move(f).take());
  }
  {
    auto fsq = family("companion square");
    auto fmix = family("companion mixed");
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        const auto where = label("mu,nu", {mu, nu});
        fsq.check(bd[mu] * bd[nu] + b[mu] * b[nu], where);
        fmix.check(bd[mu] * b[nu] + b[mu] * bd[nu], where);
        fmix.check(bd[mu] * b[nu] - b[mu] * b[nu] + ratio<T>(2, 3) * g(mu, nu) * (rep.beta_sq - I),
                   where);
        // Same relation in the form -beta_mu beta_dot_nu = beta_mu beta_nu + 2/3 eta (I - beta^2).
        fmix.check(b[mu] * bd[nu] + b[mu] * b[nu] + ratio<T>(2, 3) * g(mu, nu) * rep.zeta, where);
      }
    report.records.push_back(std::move(fsq).take());
    report.records.push_back(std::move(fmix).take());
  }
  {
    auto f = family("product relations");
    for (int mu = 0; mu < 4; ++mu) {
      f.check(b[mu] * rep.beta_sq - (ratio<T>(5, 2) * b[mu] + ratio<T>(3, 2) * bd[mu]),
              label("mu", {mu}) + " beta beta^2");
      f.check(rep.beta_sq * b[mu] - (ratio<T>(5, 2) * b[mu] - ratio<T>(3, 2) * bd[mu]),
              label("mu", {mu}) + " beta^2 beta");
    }
    report.records.push_back(std::move(f).take());
  }
  {
    auto f3 = family("contraction cubic");
    auto f4 = family("contraction quartic");
    for (int rho = 0; rho < 4; ++rho) {
      Matrix5<T> acc3;
      for (int mu = 0; mu < 4; ++mu) acc3 += rep.beta_upper(mu) * b[rho] * b[mu];
      f3.check(acc3 - b[rho], label("rho", {rho}));
      for (int sigma = 0; sigma < 4; ++sigma) {
        Matrix5<T> acc4;
        for (int mu = 0; mu < 4; ++mu) acc4 += rep.beta_upper(mu) * b[rho] * b[sigma] * b[mu];
        f4.check(acc4 - g(rho, sigma) * I, label("rho,sigma", {rho, sigma}));
      }
    }
    report.records.push_back(std::move(f3).take());
    report.records.push_back(std::move(f4).take());
  }
  {
    auto f = family("eta relations");
    f.check(rep.eta - rep.eta.transpose(), "symmetric");
    f.check(rep.eta - rep.eta.conjugate(), "real");
    f.check(rep.eta * rep.eta - I, "involutive");
    for (int mu = 0; mu < 4; ++mu) {
      f.check(rep.eta * b[mu].transpose() * rep.eta - b[mu], label("mu", {mu}) + " beta");
      f.check(rep.eta * bd[mu].transpose() * rep.eta + bd[mu], label("mu", {mu}) + " beta_dot");
    }
    report.records.push_back(std::move(f).take());
  }
  {
    auto f = family("derived elements");
    Matrix5<T> bsq;
    for (int mu = 0; mu < 4; ++mu) bsq += g(mu, mu) * (b[mu] * b[mu]);
    f.check(rep.beta_sq - bsq, "beta^2");
    f.check(rep.zeta - (I - rep.beta_sq), "zeta");
    for (int mu = 0; mu < 4; ++mu)
      f.check(bd[mu] - third * (b[mu] * rep.beta_sq - rep.beta_sq * b[mu]),
              label("mu", {mu}) + " beta_dot");
    report.records.push_back(std::move(f).take());
  }
  {
    auto f = family("zeta identities");
    const auto& z = rep.zeta;
    f.check(z * z + T(3) * z, "zeta^2 = -3 zeta");
    f.check(z * rep.beta_sq * z + T(12) * z, "zeta beta^2 zeta = -12 zeta");
    for (int mu = 0; mu < 4; ++mu) {
      f.check(z * b[mu] * z, label("mu", {mu}) + " zeta beta zeta = 0");
      for (int nu = 0; nu < 4; ++nu)
        f.check(z * b[mu] * b[nu] * z + T(3) * g(mu, nu) * z, label("mu,nu", {mu, nu}));
    }
    const Matrix5<T> p = rep.projector();
    f.check(p * p - p, "(-zeta/3)^2 = -zeta/3");
    report.records.push_back(std::move(f).take());
  }
  return report;
}

template <DkpScalar T>
Matrix5<T> basis_matrix(const KemmerRep<T>& rep, std::size_t index) {
  if (index == 0) return Matrix5<T>::identity();
  if (index < 5) return rep.beta[index - 1];
  if (index < 9) return rep.beta_dot[index - 5];
  if (index < 25) {
    const std::size_t k = index - 9;
    return rep.beta[k / 4] * rep.beta[k % 4];
  }
  throw DomainError("basis index out of range: " + std::to_string(index));
}

template <DkpScalar T>
BasisEnumeration<T> enumerate_basis(const KemmerRep<T>& rep, double tolerance) {
  BasisEnumeration<T> out;
  std::vector<std::vector<T>> vectors;
  vectors.reserve(25);
  for (std::size_t i = 0; i < 25; ++i) {
    out.elements[i] = basis_matrix(rep, i);
    vectors.push_back(flatten(out.elements[i]));
  }
  out.rank = rank(vectors, tolerance);
  if (out.rank < 25) {
    throw RepresentationDefect(
        "basis spans only " + std::to_string(out.rank) + " of 25 dimensions", out.rank);
  }
  std::vector<std::vector<T>> pairs(vectors.begin() + 9, vectors.end());
  const auto coeffs = solve_in_span(pairs, flatten(rep.beta_sq), tolerance);
  if (!coeffs) throw RepresentationDefect("beta^2 is not in the span of beta_mu beta_nu", out.rank);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) out.beta_sq_coefficients[mu][nu] = (*coeffs)[4 * mu + nu];
  return out;
}

template struct KemmerRep<GaussianRational>;
template struct KemmerRep<Complex>;
template KemmerRep<GaussianRational> make_representation(
    const std::array<Matrix5<GaussianRational>, 4>&, const Matrix5<GaussianRational>&);
template KemmerRep<Complex> make_representation(const std::array<Matrix5<Complex>, 4>&,
                                                 const Matrix5<Complex>&);
template KemmerRep<GaussianRational> build_representation();
template KemmerRep<Complex> build_representation();
template IdentityReport verify_algebra_identities(const KemmerRep<GaussianRational>&, double);
template IdentityReport verify_algebra_identities(const KemmerRep<Complex>&, double);
template BasisEnumeration<GaussianRational> enumerate_basis(const KemmerRep<GaussianRational>&,
                                                            double);
template BasisEnumeration<Complex> enumerate_basis(const KemmerRep<Complex>&, double);
template Matrix5<GaussianRational> basis_matrix(const KemmerRep<GaussianRational>&, std::size_t);
template Matrix5<Complex> basis_matrix(const KemmerRep<Complex>&, std::size_t);

}  // namespace dkp
