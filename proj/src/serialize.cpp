#include "dkp/serialize.hpp"

#include <limits>

namespace dkp {

namespace {

nlohmann::json integer(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

// Visits (key, value) pairs in the fixed order. `real` and `imag` project a scalar.
template <class T, class Emit, class Re, class Im>
void visit_current_set(const CurrentSet<T>& cs, Emit&& emit, Re&& real, Im&& imag) {
  auto pair = [&](const std::string& name, const T& v) {
    emit("Re" + name, real(v));
    emit("Im" + name, imag(v));
  };
  emit("S", real(cs.S));
  emit("Sflat", real(cs.Sflat));
  for (int mu = 0; mu < 4; ++mu) emit("J" + std::to_string(mu), real(cs.J[mu]));
  for (int mu = 0; mu < 4; ++mu) emit("ImH" + std::to_string(mu), imag(cs.H[mu]));
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) pair("K" + std::to_string(mu) + std::to_string(nu), cs.K[mu][nu]);
  emit("Z", real(cs.Z));
  pair("TildeS", cs.tildeS);
  pair("TildeSflat", cs.tildeSflat);
  for (int mu = 0; mu < 4; ++mu) pair("TildeJ" + std::to_string(mu), cs.tildeJ[mu]);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      pair("TildeK" + std::to_string(mu) + std::to_string(nu), cs.tildeK[mu][nu]);
  pair("TildeZ", cs.tildeZ);
}

std::string rational(const mpq_class& q) { return q.get_str(); }

}  // namespace

nlohmann::json to_json(const ExactCombination& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : c.coeffs) {
    out.push_back({integer(v.real().get_num()), integer(v.real().get_den()),
                   integer(v.imag().get_num()), integer(v.imag().get_den())});
  }
  return out;
}

nlohmann::json to_json(const BasisCombination<Complex>& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : c.coeffs) out.push_back({v.real(), v.imag()});
  return out;
}

const std::vector<std::string>& current_set_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    visit_current_set(
        CurrentSet<Complex>{}, [&](const std::string& name, double) { k.push_back(name); },
        [](const Complex& v) { return v.real(); }, [](const Complex& v) { return v.imag(); });
    return k;
  }();
  return keys;
}

std::vector<double> current_set_values(const CurrentSet<Complex>& cs) {
  std::vector<double> v;
  v.reserve(current_set_keys().size());
  visit_current_set(
      cs, [&](const std::string&, double x) { v.push_back(x); },
      [](const Complex& z) { return z.real(); }, [](const Complex& z) { return z.imag(); });
  return v;
}

nlohmann::ordered_json to_json(const CurrentSet<Complex>& cs) {
  nlohmann::ordered_json j;
  visit_current_set(
      cs, [&](const std::string& name, double x) { j[name] = x; },
      [](const Complex& z) { return z.real(); }, [](const Complex& z) { return z.imag(); });
  return j;
}

nlohmann::ordered_json to_json(const CurrentSet<GaussianRational>& cs) {
  nlohmann::ordered_json j;
  visit_current_set(
      cs, [&](const std::string& name, const std::string& x) { j[name] = x; },
      [](const GaussianRational& z) { return rational(z.real()); },
      [](const GaussianRational& z) { return rational(z.imag()); });
  return j;
}

}  // namespace dkp
