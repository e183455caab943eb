#include "dkp/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "dkp/basis.hpp"
#include "dkp/errors.hpp"
#include "dkp/inversion.hpp"
#include "dkp/plane_wave.hpp"
#include "dkp/serialize.hpp"

namespace dkp::cli {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- argument parsing

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& tok, const std::string& what,
                  std::optional<double> mass = std::nullopt) {
  if (mass && tok == "m") return *mass;
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (tok.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ParameterError("cannot parse '" + tok + "' as a real number in " + what);
  return v;
}

FourVector<double> parse_four_vector(const std::string& s, const std::string& what,
                                     std::optional<double> mass = std::nullopt) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw ParameterError(what + " needs 4 comma-separated values, got '" + s + "'");
  FourVector<double> v;
  for (int mu = 0; mu < 4; ++mu) v[mu] = parse_real(parts[mu], what, mass);
  return v;
}

std::array<std::size_t, 4> parse_extents(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw ParameterError("--extents needs 4 comma-separated integers");
  std::array<std::size_t, 4> n{};
  for (int a = 0; a < 4; ++a) {
    const auto& tok = parts[a];
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n[a]);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || n[a] == 0)
      throw ParameterError("--extents entries must be positive integers, got '" + tok + "'");
  }
  return n;
}

std::array<double, 4> parse_spacing(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 1 && parts.size() != 4)
    throw ParameterError("--spacing takes one value or 4 comma-separated values");
  std::array<double, 4> h{};
  for (int a = 0; a < 4; ++a) {
    h[a] = parse_real(parts[parts.size() == 1 ? 0 : a], "--spacing");
    if (!(h[a] > 0.0)) throw ParameterError("--spacing must be positive");
  }
  return h;
}

Complex parse_complex(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw ParameterError(what + " takes re,im");
  return {parse_real(parts[0], what), parse_real(parts[1], what)};
}

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> word;
  if (s.empty()) return word;
  for (const auto& tok : split(s, ',')) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParameterError("word entries must be integers, got '" + tok + "'");
    word.push_back(v);
  }
  return word;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error("failed writing " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json four_vector_json(const FourVector<double>& v) { return json::array({v[0], v[1], v[2], v[3]}); }

// ---------------------------------------------------------------- sidecar

struct Sidecar {
  PlaneWaveSpec spec;
  GridShape shape;
};

json sidecar_json(const Sidecar& s) {
  json j;
  j["kind"] = "plane-wave";
  j["p"] = four_vector_json(s.spec.p);
  j["A"] = four_vector_json(s.spec.A);
  j["m"] = s.spec.m;
  j["e"] = s.spec.e;
  j["amplitude"] = json::array({s.spec.amplitude.real(), s.spec.amplitude.imag()});
  j["extents"] = s.shape.extents;
  j["spacing"] = s.shape.spacing;
  return j;
}

Sidecar load_sidecar(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open sidecar " + path);
  Sidecar s;
  try {
    const auto j = nlohmann::json::parse(f);
    for (int mu = 0; mu < 4; ++mu) {
      s.spec.p[mu] = j.at("p").at(mu).get<double>();
      s.spec.A[mu] = j.at("A").at(mu).get<double>();
      s.shape.extents[mu] = j.at("extents").at(mu).get<std::size_t>();
      s.shape.spacing[mu] = j.at("spacing").at(mu).get<double>();
    }
    s.spec.m = j.at("m").get<double>();
    s.spec.e = j.at("e").get<double>();
    s.spec.amplitude = {j.at("amplitude").at(0).get<double>(), j.at("amplitude").at(1).get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("malformed sidecar " + path + ": " + e.what());
  }
  s.shape.validate();
  return s;
}

// ---------------------------------------------------------------- verify-algebra

template <class T>
KemmerRep<T> inject_defect(const KemmerRep<T>& rep, const std::string& defect) {
  if (defect == "none") return rep;
  auto beta = rep.beta;
  if (defect == "scale-beta1") beta[1] = beta[1] * T(2);
  else if (defect == "zero-betas")
    for (auto& b : beta) b = Matrix5<T>();
  return make_representation(beta, rep.eta);
}

struct WordSweep {
  std::size_t words = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
};

template <class T>
WordSweep sweep_words(const KemmerRep<T>& rep, int max_len, double tol) {
  WordSweep s;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<int> word(static_cast<std::size_t>(len), 0);
    while (true) {
      Matrix5<T> product = Matrix5<T>::identity();
      for (int mu : word) product = product * rep.beta[mu];
      const auto reduced = reduce_word(word);
      bool ok;
      if constexpr (ScalarTraits<T>::exact) {
        ok = eval_basis_combination(rep, reduced) == product;
      } else {
        const auto diff = eval_basis_combination(rep, to_float(reduced)) - product;
        ok = diff.max_abs() <= tol * (1.0 + product.max_abs());
      }
      ++s.words;
      if (!ok && s.mismatches++ == 0) {
        std::ostringstream os;
        for (std::size_t i = 0; i < word.size(); ++i) os << (i ? "," : "") << word[i];
        s.first_mismatch = os.str();
      }
      // Odometer over {0..3}^len.
      int pos = len - 1;
      while (pos >= 0 && ++word[pos] == 4) word[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return s;
}

template <class T>
int verify_algebra(const KemmerRep<T>& clean, const std::string& defect, int max_len, double tol,
                   const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto rep = inject_defect(clean, defect);
  const auto basis = enumerate_basis(rep, tol);  // throws RepresentationDefect
  const auto report = verify_algebra_identities(rep, tol);
  const auto sweep = sweep_words(rep, max_len, tol);

  json j;
  j["command"] = "verify-algebra";
  j["mode"] = to_string(ScalarTraits<T>::mode);
  j["tolerance"] = ScalarTraits<T>::exact ? 0.0 : tol;
  j["basis_rank"] = basis.rank;
  auto& ids = j["identities"] = json::array();
  for (const auto& r : report.records) {
    json e;
    e["identity"] = r.family;
    e["cases"] = r.cases;
    e["max_residual"] = r.max_residual;
    e["pass"] = r.pass;
    e["worst_case"] = r.worst_case;
    ids.push_back(std::move(e));
    if (!r.pass)
      err << "FAIL identity " << r.family << " residual " << r.max_residual << " at " << r.worst_case << "\n";
  }
  json w;
  w["max_word_len"] = max_len;
  w["words"] = sweep.words;
  w["mismatches"] = sweep.mismatches;
  w["first_mismatch"] = sweep.mismatches ? json(sweep.first_mismatch) : json(nullptr);
  w["pass"] = sweep.mismatches == 0;
  j["word_sweep"] = w;
  if (sweep.mismatches)
    err << "FAIL word reduction: " << sweep.mismatches << " of " << sweep.words
        << " words differ from the matrix product, first (" << sweep.first_mismatch << ")\n";
  const bool pass = report.all_pass() && sweep.mismatches == 0;
  j["all_pass"] = pass;
  emit(dump(j), out_path, out);
  return pass ? kPass : kQuantitativeFailure;
}

// ---------------------------------------------------------------- field loading

struct LoadedField {
  PhiField field;
  std::optional<Sidecar> sidecar;
  double m = 0.0;
  double e = 0.0;
};

LoadedField load_field(const std::string& in, const std::string& sidecar_path, bool fd,
                       std::optional<double> m, std::optional<double> e) {
  LoadedField lf;
  lf.field.phi = load_grid(in);
  if (lf.field.phi.kind() != PayloadKind::wavefunction)
    throw ShapeError(in + " does not hold a wavefunction grid (payload " +
                     to_string(lf.field.phi.kind()) + ")");
  if (!sidecar_path.empty()) {
    lf.sidecar = load_sidecar(sidecar_path);
    if (!(lf.sidecar->shape == lf.field.phi.shape()))
      throw ShapeError("sidecar extents/spacing do not match " + in);
  }
  auto resolve = [&](std::optional<double> flag, const char* name, double from_sidecar) {
    if (flag && lf.sidecar && *flag != from_sidecar)
      throw ParameterError(std::string("--") + name + " disagrees with the sidecar");
    if (flag) return *flag;
    if (lf.sidecar) return from_sidecar;
    throw ParameterError(std::string("--") + name + " is required (or supply --sidecar)");
  };
  lf.m = resolve(m, "m", lf.sidecar ? lf.sidecar->spec.m : 0.0);
  lf.e = resolve(e, "e", lf.sidecar ? lf.sidecar->spec.e : 0.0);
  require_physical(lf.m, lf.e);
  if (!fd) {
    if (!lf.sidecar)
      throw ParameterError("analytic derivatives need --sidecar with the plane-wave parameters; "
                           "use --fd for finite differences");
    lf.field.gradient = plane_wave_gradient(lf.sidecar->spec, lf.field.phi);
  }
  return lf;
}

GridShape refined(const GridShape& s) {
  GridShape f = s;
  for (int a = 0; a < 4; ++a) {
    if (s.extents[a] == 1) continue;
    f.extents[a] = 2 * s.extents[a] - 1;
    f.spacing[a] = s.spacing[a] / 2.0;
  }
  return f;
}

void store_outputs(const InversionOutput& o, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path d(dir);
  store_grid(o.A_full, d / "A_full.dkp5");
  store_grid(o.A_gauge_fixed, d / "A_gauge_fixed.dkp5");
  store_grid(o.gauge_term, d / "gauge_term.dkp5");
  store_grid(o.F_from_A, d / "F_from_A.dkp5");
  store_grid(o.F_bilinear, d / "F_bilinear.dkp5");
  FieldGrid mask(o.A_full.shape(), PayloadKind::scalar);
  for (std::size_t p = 0; p < mask.points(); ++p) mask.at(p, 0) = o.singular_mask[p] ? 1.0 : 0.0;
  store_grid(mask, d / "singular_mask.dkp5");
}

void report_failures(const Report& r, std::ostream& err) {
  for (const auto& c : r.checks)
    if (!c.pass)
      err << "FAIL " << c.identity << " max_abs " << c.stats.max_abs << " > tolerance " << c.tolerance << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Duffin-Kemmer-Petiau algebra, bilinear currents and potential inversion"};
  app.name("dkp");
  app.require_subcommand(1);

  // verify-algebra
  auto* verify = app.add_subcommand("verify-algebra", "check every algebra identity and the word reducer");
  std::string mode = "exact", defect = "none", out_path;
  int max_len = 5;
  double algebra_tol = 1e-12;
  verify->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  verify->add_option("--max-word-len", max_len, "sweep all words up to this length")->check(CLI::Range(0, 8));
  verify->add_option("--tol", algebra_tol, "tolerance in float mode");
  verify->add_option("--inject-defect", defect, "test hook: corrupt the representation")
      ->check(CLI::IsMember({"none", "scale-beta1", "zero-betas"}));
  verify->add_option("-o,--output", out_path, "report path (default stdout)");

  // reduce-word
  auto* reduce = app.add_subcommand("reduce-word", "reduce a product of betas onto the 25-element basis");
  std::string word_text;
  reduce->add_option("--word", word_text, "comma-separated indices 0..3")->required();
  reduce->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  reduce->add_option("-o,--output", out_path, "output path (default stdout)");

  // manufacture
  auto* manufacture = app.add_subcommand("manufacture", "write a plane-wave solution grid and sidecar");
  std::string p_text, A_text, amp_text = "1,0", extents_text, spacing_text, grid_path;
  std::optional<double> m_opt, e_opt, shell_tol;
  manufacture->add_option("--p", p_text, "phase momentum p_0..p_3 (token m = mass)")->required();
  manufacture->add_option("--A", A_text, "constant potential A_0..A_3")->required();
  manufacture->add_option("--m", m_opt, "mass")->required();
  manufacture->add_option("--e", e_opt, "coupling")->required();
  manufacture->add_option("--amplitude", amp_text, "re,im of the scalar slot");
  manufacture->add_option("--extents", extents_text, "N_t,N_x,N_y,N_z")->required();
  manufacture->add_option("--spacing", spacing_text, "h or h_t,h_x,h_y,h_z")->required();
  manufacture->add_option("--shell-tol", shell_tol, "allowed |k.k - m^2| (default 1e-10 max(1, m^2))");
  manufacture->add_option("-o,--output", grid_path, "grid path; sidecar goes to <path>.json")->required();

  // currents
  auto* currents = app.add_subcommand("currents", "evaluate all bilinear currents on a grid");
  std::string in_path, format = "json";
  currents->add_option("--in", in_path, "wavefunction grid")->required();
  currents->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  currents->add_option("-o,--output", out_path, "output path (default stdout)");

  // invert
  auto* invert = app.add_subcommand("invert", "reconstruct potential and field strength from currents");
  std::string sidecar_path, out_dir, csv_path;
  bool fd = false, refine = false;
  double tol = 1e-10, eps_z = 1e-10, floor = 1e-10;
  invert->add_option("--in", in_path, "wavefunction grid")->required();
  invert->add_option("--m", m_opt, "mass (or from --sidecar)");
  invert->add_option("--e", e_opt, "coupling (or from --sidecar)");
  invert->add_option("--sidecar", sidecar_path, "plane-wave sidecar: analytic derivatives and reference A");
  invert->add_flag("--fd", fd, "finite-difference derivatives");
  invert->add_flag("--refined", refine, "with --fd: repeat at h/2 on the same domain and report ratios");
  invert->add_option("--tol", tol, "tolerance for graded checks");
  invert->add_option("--eps-z", eps_z, "relative singular-Z threshold");
  invert->add_option("--floor", floor, "with --refined: residuals below this at both spacings are round-off");
  invert->add_option("--out-dir", out_dir, "directory for output grids");
  invert->add_option("--csv", csv_path, "per-point residual CSV");
  invert->add_option("-o,--output", out_path, "report path (default stdout)");

  // residuals
  auto* residuals = app.add_subcommand("residuals", "evaluate equation residuals for a given potential");
  std::string A_grid_path;
  residuals->add_option("--in", in_path, "wavefunction grid")->required();
  residuals->add_option("--m", m_opt, "mass (or from --sidecar)");
  residuals->add_option("--e", e_opt, "coupling (or from --sidecar)");
  residuals->add_option("--sidecar", sidecar_path, "plane-wave sidecar");
  residuals->add_option("--A", A_text, "constant potential A_0..A_3");
  residuals->add_option("--A-grid", A_grid_path, "four-vector potential grid");
  residuals->add_flag("--fd", fd, "finite-difference derivatives");
  residuals->add_option("--tol", tol, "tolerance for graded checks");
  residuals->add_option("--eps-z", eps_z, "relative singular-Z threshold");
  residuals->add_option("--csv", csv_path, "per-point residual CSV");
  residuals->add_option("-o,--output", out_path, "report path (default stdout)");

  std::vector<const char*> argv{"dkp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kStructuralError;
  }

  try {
    if (*verify) {
      if (mode == "exact")
        return verify_algebra(build_representation<GaussianRational>(), defect, max_len, algebra_tol,
                              out_path, out, err);
      return verify_algebra(build_representation<Complex>(), defect, max_len, algebra_tol, out_path,
                            out, err);
    }

    if (*reduce) {
      const auto word = parse_word(word_text);
      const auto combo = reduce_word(word);
      const auto rep = build_representation<GaussianRational>();
      Matrix5<GaussianRational> product = Matrix5<GaussianRational>::identity();
      for (int mu : word) product = product * rep.beta[mu];
      json j;
      j["word"] = word;
      j["mode"] = mode;
      json terms = json::object();
      if (mode == "exact") {
        j["coefficients"] = to_json(combo);
        for (std::size_t i = 0; i < kBasisSize; ++i)
          if (!combo.coeffs[i].is_zero()) {
            std::ostringstream os;
            os << combo.coeffs[i];
            terms[basis_label(i)] = os.str();
          }
      } else {
        const auto f = to_float(combo);
        j["coefficients"] = to_json(f);
        for (std::size_t i = 0; i < kBasisSize; ++i)
          if (f.coeffs[i] != Complex(0.0)) terms[basis_label(i)] = json::array({f.coeffs[i].real(), f.coeffs[i].imag()});
      }
      j["terms"] = terms;
      j["matches_matrix_product"] = eval_basis_combination(rep, combo) == product;
      emit(dump(j), out_path, out);
      return kPass;
    }

    if (*manufacture) {
      Sidecar s;
      s.spec.m = *m_opt;
      s.spec.e = *e_opt;
      s.spec.p = parse_four_vector(p_text, "--p", s.spec.m);
      s.spec.A = parse_four_vector(A_text, "--A");
      s.spec.amplitude = parse_complex(amp_text, "--amplitude");
      s.shape.extents = parse_extents(extents_text);
      s.shape.spacing = parse_spacing(spacing_text);
      s.shape.validate();
      const double shell = shell_tol ? *shell_tol : default_shell_tolerance(s.spec.m);
      try {
        const auto grid = manufacture_plane_wave(s.spec, s.shape, shell);
        store_grid(grid, grid_path);
      } catch (const MassShellError& e) {
        err << "error: " << e.what() << "\n";
        err << "|k.k - m^2| = " << e.violation() << "\n";
        return kQuantitativeFailure;
      }
      const std::string sidecar = grid_path + ".json";
      emit(dump(sidecar_json(s)), sidecar, out);
      json j;
      j["command"] = "manufacture";
      j["grid"] = grid_path;
      j["sidecar"] = sidecar;
      j["points"] = s.shape.points();
      j["mass_shell_violation"] = s.spec.mass_shell_violation();
      out << dump(j);
      return kPass;
    }

    if (*currents) {
      const auto grid = load_grid(in_path);
      if (grid.kind() != PayloadKind::wavefunction)
        throw ShapeError(in_path + " does not hold a wavefunction grid");
      const auto rep = build_representation<Complex>();
      const auto& shape = grid.shape();
      if (format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "point,x0,x1,x2,x3";
        for (const auto& k : current_set_keys()) os << ',' << k;
        os << '\n';
        for (std::size_t p = 0; p < shape.points(); ++p) {
          const auto x = shape.position(p);
          os << p << ',' << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3];
          for (double v : current_set_values(compute_currents(rep, wavefunction_at(grid, p)))) os << ',' << v;
          os << '\n';
        }
        emit(os.str(), out_path, out);
      } else {
        json j;
        j["command"] = "currents";
        j["points"] = shape.points();
        j["extents"] = shape.extents;
        j["spacing"] = shape.spacing;
        auto& list = j["currents"] = json::array();
        for (std::size_t p = 0; p < shape.points(); ++p) {
          json e;
          e["point"] = p;
          e["x"] = shape.position(p);
          const json cs = to_json(compute_currents(rep, wavefunction_at(grid, p)));
          for (const auto& [k, v] : cs.items()) e[k] = v;
          list.push_back(std::move(e));
        }
        emit(dump(j), out_path, out);
      }
      return kPass;
    }

    if (*invert) {
      if (refine && (!fd || sidecar_path.empty()))
        throw ParameterError("--refined needs --fd and --sidecar (the grid is re-manufactured at h/2)");
      const auto lf = load_field(in_path, sidecar_path, fd, m_opt, e_opt);
      const auto rep = build_representation<Complex>();
      InversionOptions opt;
      opt.tolerance = tol;
      opt.eps_z = eps_z;
      if (lf.sidecar) opt.reference_potential = constant_four_vector(lf.field.phi.shape(), lf.sidecar->spec.A);
      const auto result = invert_pipeline(rep, lf.field, lf.m, lf.e, opt);

      json j;
      j["command"] = "invert";
      const json body = to_json(result.report);
      for (const auto& [k, v] : body.items()) j[k] = v;
      bool pass = result.report.all_pass();
      report_failures(result.report, err);

      if (refine) {
        const auto fine_shape = refined(lf.field.phi.shape());
        PhiField fine;
        fine.phi = manufacture_plane_wave(lf.sidecar->spec, fine_shape,
                                          std::max(default_shell_tolerance(lf.m),
                                                   lf.sidecar->spec.mass_shell_violation()));
        InversionOptions fine_opt = opt;
        fine_opt.reference_potential = constant_four_vector(fine_shape, lf.sidecar->spec.A);
        const auto fine_result = invert_pipeline(rep, fine, lf.m, lf.e, fine_opt);
        const auto conv = compare_refinement(result.report, fine_result.report, floor);
        const bool ratio_ok = conv.max_residual_ratio >= 3.5 && conv.max_residual_ratio <= 4.5;
        json c = to_json(conv);
        c["fine_extents"] = fine_shape.extents;
        c["fine_spacing"] = fine_shape.spacing;
        c["max_residual_ratio_pass"] = ratio_ok;
        c["pass"] = ratio_ok && conv.all_pass();
        j["convergence"] = c;
        if (!ratio_ok) err << "FAIL max residual ratio " << conv.max_residual_ratio << " outside [3.5, 4.5]\n";
        for (const auto& e : conv.entries)
          if (!e.pass) err << "FAIL convergence " << e.identity << " ratio " << e.ratio.value_or(0.0) << "\n";
        pass = pass && ratio_ok && conv.all_pass();
        j["all_pass"] = pass;
      }
      if (!out_dir.empty()) store_outputs(result, out_dir);
      if (!csv_path.empty())
        emit(per_point_csv(lf.field.phi.shape(), result.singular_mask, result.residual_fields), csv_path, out);
      emit(dump(j), out_path, out);
      return pass ? kPass : kQuantitativeFailure;
    }

    if (*residuals) {
      const auto lf = load_field(in_path, sidecar_path, fd, m_opt, e_opt);
      const auto& shape = lf.field.phi.shape();
      FieldGrid A;
      if (!A_grid_path.empty()) {
        A = load_grid(A_grid_path);
        require_same_shape(lf.field.phi, A, "wavefunction vs potential");
        if (A.kind() != PayloadKind::four_vector) throw ShapeError("--A-grid must hold a four-vector grid");
      } else if (!A_text.empty()) {
        A = constant_four_vector(shape, parse_four_vector(A_text, "--A"));
      } else if (lf.sidecar) {
        A = constant_four_vector(shape, lf.sidecar->spec.A);
      } else {
        throw ParameterError("a potential is required: --A, --A-grid or --sidecar");
      }
      const auto rep = build_representation<Complex>();
      const auto cf = compute_current_field(rep, lf.field, eps_z);
      if (cf.unmasked() == 0) throw EmptyDomainError("every grid point has a singular scalar density Z");

      Report r;
      r.meta["command"] = "residuals";
      r.meta["derivatives"] = cf.analytic ? "analytic" : "finite-difference";
      r.meta["points"] = cf.points();
      r.meta["m"] = lf.m;
      r.meta["e"] = lf.e;
      std::vector<NamedField> fields;
      auto check = [&](const char* id, const FieldGrid& g, const Mask& mask) {
        r.checks.push_back(make_check(id, residual_stats(g, mask), tol));
        fields.push_back({id, g, mask});
      };
      const auto dkp = dkp_residual(rep, lf.field, A, lf.m, lf.e);
      check("dkp_equation", dkp.primary, {});
      const auto div = divergence_identities(cf, A, lf.m, lf.e);
      check("current_conservation", div.dJ, {});
      check("companion_divergence", div.dH, {});
      check("charge_coupling", div.JA, {});
      check("companion_coupling", div.HA, {});
      check("h_elimination", h_elimination_residual(cf, lf.m), {});
      const auto red = reduced_system_residuals(make_reduced_state(cf, lf.m, lf.e));
      check("reduced_conservation", red.conservation, red.first_order_mask);
      check("reduced_modulus", red.modulus, red.second_order_mask);
      r.diagnostics.push_back(make_check("reduced_field_equation",
                                         residual_stats(red.field_equation, red.second_order_mask), tol));
      fields.push_back({"reduced_field_equation", red.field_equation, red.second_order_mask});

      report_failures(r, err);
      if (!csv_path.empty()) emit(per_point_csv(shape, cf.mask, fields), csv_path, out);
      emit(dump(to_json(r)), out_path, out);
      return r.all_pass() ? kPass : kQuantitativeFailure;
    }
  } catch (const MassShellError& e) {
    err << "error: " << e.what() << "\n";
    return kQuantitativeFailure;
  } catch (const std::exception& e) {
    // Representation defects, empty domains, malformed files, bad parameters, stencil and
    // shape errors: structural, not quantitative.
    err << "error: " << e.what() << "\n";
    return kStructuralError;
  }
  return kStructuralError;
}

}  // namespace dkp::cli
