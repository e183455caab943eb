#include "dkp/report.hpp"

#include <cmath>
#include <sstream>

#include "dkp/errors.hpp"

namespace dkp {

ResidualStats residual_stats(const FieldGrid& residual, const Mask& mask) {
  if (!mask.empty() && mask.size() != residual.points())
    throw ShapeError("mask size does not match grid");
  ResidualStats s;
  double sum_sq = 0.0;
  std::size_t masked = 0, values = 0;
  for (std::size_t p = 0; p < residual.points(); ++p) {
    if (!mask.empty() && mask[p]) {
      ++masked;
      continue;
    }
    ++s.counted;
    for (const auto& v : residual.point(p)) {
      const double a = std::abs(v);
      // NaN must never read as a pass.
      if (std::isnan(a)) s.max_abs = a;
      else if (!std::isnan(s.max_abs)) s.max_abs = std::max(s.max_abs, a);
      sum_sq += a * a;
      ++values;
    }
  }
  s.rms = values ? std::sqrt(sum_sq / static_cast<double>(values)) : 0.0;
  s.masked_fraction =
      residual.points() ? static_cast<double>(masked) / static_cast<double>(residual.points()) : 0.0;
  return s;
}

CheckRecord make_check(std::string identity, const ResidualStats& stats, double tolerance,
                       bool allow_empty) {
  CheckRecord r{std::move(identity), stats, tolerance, false};
  r.pass = (stats.counted > 0 || allow_empty) && stats.max_abs <= tolerance;
  return r;
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckRecord* Report::find(const std::string& identity) const {
  for (const auto* list : {&checks, &diagnostics})
    for (const auto& c : *list)
      if (c.identity == identity) return &c;
  return nullptr;
}

namespace {

// JSON has no NaN; report it as null rather than emitting invalid output.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

nlohmann::ordered_json to_json(const CheckRecord& r) {
  nlohmann::ordered_json j;
  j["identity"] = r.identity;
  j["max_abs"] = number(r.stats.max_abs);
  j["rms"] = number(r.stats.rms);
  j["masked_fraction"] = r.stats.masked_fraction;
  j["pass"] = r.pass;
  j["tolerance"] = r.tolerance;
  return j;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j = r.meta;
  j["all_pass"] = r.all_pass();
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  auto& diags = j["diagnostics"] = nlohmann::ordered_json::array();
  for (const auto& c : r.diagnostics) diags.push_back(to_json(c));
  return j;
}

std::string per_point_csv(const GridShape& shape, const Mask& singular,
                          const std::vector<NamedField>& fields) {
  std::ostringstream os;
  os.precision(17);
  os << "point,x0,x1,x2,x3,masked";
  for (const auto& f : fields) os << ',' << f.name;
  os << '\n';
  for (std::size_t p = 0; p < shape.points(); ++p) {
    const auto x = shape.position(p);
    os << p << ',' << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ','
       << (!singular.empty() && singular[p] ? 1 : 0);
    for (const auto& f : fields) {
      os << ',';
      if (!f.mask.empty() && f.mask[p]) continue;
      double m = 0.0;
      for (const auto& v : f.field.point(p)) m = std::max(m, std::abs(v));
      os << m;
    }
    os << '\n';
  }
  return os.str();
}

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os.precision(17);
  os << "kind,identity,max_abs,rms,masked_fraction,pass,tolerance\n";
  auto rows = [&](const char* kind, const std::vector<CheckRecord>& list) {
    for (const auto& c : list)
      os << kind << ',' << c.identity << ',' << c.stats.max_abs << ',' << c.stats.rms << ','
         << c.stats.masked_fraction << ',' << (c.pass ? "true" : "false") << ',' << c.tolerance
         << '\n';
  };
  rows("check", r.checks);
  rows("diagnostic", r.diagnostics);
  return os.str();
}

}  // namespace dkp
