#include "gent/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "gent/bures.hpp"
#include "gent/cm_core.hpp"
#include "gent/cm_io.hpp"
#include "gent/errors.hpp"
#include "gent/fock.hpp"
#include "gent/log.hpp"
#include "gent/relent.hpp"
#include "gent/standard_forms.hpp"

namespace gent::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct StateInput {
  std::string cm_file;
  std::optional<double> b, b2, c, d, r, nbar;

  void attach(CLI::App* app) {
    app->add_option("--cm", cm_file, "CM JSON file {\"v\": 4x4}, ordering q1,p1,q2,p2");
    app->add_option("--b", b, "standard-form b (mode 1)");
    app->add_option("--b2", b2, "standard-form b of mode 2 (defaults to --b)");
    app->add_option("--c", c, "standard-form c");
    app->add_option("--d", d, "standard-form d (signed; entangled states have d < 0)");
    app->add_option("--r", r, "two-mode squeezing of a symmetric squeezed thermal state");
    app->add_option("--nbar", nbar, "thermal photon number for --r (default 0)");
  }

  TwoModeCM resolve() const {
    const int forms = static_cast<int>(!cm_file.empty()) + static_cast<int>(b.has_value()) +
                      static_cast<int>(r.has_value());
    if (forms == 0) throw Error(Errc::ParseError, "no input: give --cm, --b/--c/--d or --r");
    if (forms > 1) throw Error(Errc::ParseError, "give exactly one of --cm, --b, --r");
    if (!cm_file.empty()) return load_cm_json(cm_file);
    if (b) {
      if (!c) throw Error(Errc::ParseError, "field --c is required with --b");
      if (!d) throw Error(Errc::ParseError, "field --d is required with --b");
      return TwoModeCM::standard(*b, b2.value_or(*b), *c, *d);
    }
    const double nb = nbar.value_or(0.0);
    if (*r < 0.0) throw Error(Errc::ParseError, "field --r must be nonnegative");
    if (nb < 0.0) throw Error(Errc::ParseError, "field --nbar must be nonnegative");
    return symmetric_sts(*r, nb).cm();
  }
};

ojson matrix_json(const TwoModeCM& v) {
  ojson rows = ojson::array();
  for (int i = 0; i < 4; ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < 4; ++j) row.push_back(v(i, j));
    rows.push_back(row);
  }
  return rows;
}

ojson header(const char* command) {
  ojson doc;
  doc["version"] = kVersion;
  doc["command"] = command;
  return doc;
}

void emit(std::ostream& out, const ojson& doc, bool text) {
  if (!text) {
    out << doc.dump(2) << "\n";
    return;
  }
  // Flat key/value table; nested objects are printed with dotted keys.
  std::function<void(const ojson&, const std::string&)> walk = [&](const ojson& j,
                                                                    const std::string& prefix) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      if (it->is_object()) {
        walk(*it, key);
      } else if (it->is_number_float()) {
        out << fmt::format("{:<28} {:.12g}\n", key, it->get<double>());
      } else {
        out << fmt::format("{:<28} {}\n", key, it->dump());
      }
    }
  };
  walk(doc, "");
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::UnphysicalState: return kExitUnphysical;
    case Errc::NotSymmetric: return kExitNotSymmetric;
    case Errc::SupportViolation: return kExitSupport;
    default: return kExitParse;
  }
}

int cmd_check(const TwoModeCM& v, std::ostream& out, bool text) {
  ojson doc = header("check");
  doc["input"] = {{"v", matrix_json(v)}};
  const PhysicalityVerdict phys = is_physical(v);
  const Invariants4 inv = invariants(v);
  doc["physical"] = phys.physical;
  doc["uncertainty_det"] = phys.uncertainty_det;
  doc["invariants"] = {
      {"det_v1", inv.det_v1}, {"det_v2", inv.det_v2}, {"det_c", inv.det_c}, {"det_v", inv.det_v}};
  try {
    const SymplecticSpectrum sp = symplectic_spectrum(v);
    doc["kappa_plus"] = sp.kappa_plus;
    doc["kappa_minus"] = sp.kappa_minus;
    doc["kappa_tilde_plus"] = sp.kappa_tilde_plus;
    doc["kappa_tilde_minus"] = sp.kappa_tilde_minus;
  } catch (const Error& e) {
    doc["spectrum_error"] = e.what();
  }
  if (!phys.physical) {
    doc["separable"] = nullptr;
    emit(out, doc, text);
    return kExitUnphysical;
  }
  const SeparabilityVerdict sep = is_separable(v);
  doc["separable"] = sep.separable;
  doc["simon_det"] = sep.simon_det;
  const StandardFormI f = to_standard_form_I(v);
  ojson sf = {{"b1", f.b1}, {"b2", f.b2}, {"c", f.c}, {"d", f.d}};
  const BlockDecomposition bl = v.blocks();
  if (bl.v1(0, 1) == 0.0 && bl.v2(0, 1) == 0.0) {
    sf["u1"] = std::sqrt(bl.v1(0, 0) / bl.v1(1, 1));
    sf["u2"] = std::sqrt(bl.v2(0, 0) / bl.v2(1, 1));
  } else {
    sf["u1"] = nullptr;
    sf["u2"] = nullptr;
  }
  sf["singular_cross"] = f.singular_cross;
  doc["standard_form"] = sf;
  emit(out, doc, text);
  return sep.separable ? kExitOk : kExitEntangled;
}

int cmd_bures(const TwoModeCM& v, bool verify, std::ostream& out, bool text) {
  const SymmetricState s = SymmetricState::from_cm(v);
  const BuresResult r = bures_entanglement(s);
  ojson doc = header("bures");
  doc["input"] = {{"b", s.b()}, {"c", s.c()}, {"d", s.d()}};
  doc["kappa_tilde_minus"] = r.kappa_tilde_minus;
  doc["entangled"] = r.kappa_tilde_minus < 0.5;
  doc["e_b"] = r.e_b;
  doc["f_max"] = r.f_max;
  doc["d_bures"] = r.d_bures;
  if (verify) {
    ojson ver;
    if (r.kappa_tilde_minus < 0.5) {
      const FidelitySearchResult n = numeric_max_fidelity(s);
      ver = {{"f_numeric", n.f_star},
             {"discrepancy", n.f_star - r.f_max},
             {"argmax", {{"b", n.b}, {"c", n.c}, {"d", -n.d_abs}, {"u", n.u}}},
             {"argmax_kappa_tilde_minus", n.kappa_tilde_minus},
             {"agreeing_starts", n.agreeing_starts}};
    } else {
      ver = {{"f_numeric", 1.0}, {"discrepancy", 0.0}};
    }
    doc["verify"] = ver;
  }
  emit(out, doc, text);
  return kExitOk;
}

int cmd_relent(const TwoModeCM& v, bool verify, double grid_max, std::ostream& out, bool text) {
  const SymmetricState s = SymmetricState::from_cm(v);
  const RelEntResult r = rel_ent_entanglement(s);
  ojson doc = header("relent");
  doc["input"] = {{"b", s.b()}, {"c", s.c()}, {"d", s.d()}};
  doc["kappa_plus"] = s.kappa_plus();
  doc["kappa_minus"] = s.kappa_minus();
  doc["kappa_tilde_minus"] = s.kappa_tilde_minus();
  doc["entangled"] = !r.separable;
  doc["e_s"] = r.e_s;
  doc["x1_star"] = r.x1_star;
  doc["x2_star"] = r.x2_star;
  doc["q_s1"] = r.q_s1;
  doc["q_s2"] = r.q_s2;
  doc["s_n1"] = r.s_n1;
  doc["s_n2"] = r.s_n2;
  doc["ordering_violated"] = r.ordering_violated;
  if (verify) {
    const RelEntGrid g = rel_ent_grid(s, 2000, grid_max);
    doc["verify"] = {{"e_s_grid", g.e_s},
                     {"x1_grid", g.x1},
                     {"x2_grid", g.x2},
                     {"grid_points", 2000},
                     {"grid_max", grid_max},
                     {"discrepancy", r.e_s - g.e_s}};
  }
  emit(out, doc, text);
  return kExitOk;
}

struct OracleInput {
  std::optional<double> qq, pp, qq2, pp2;
  std::string cm, cm2;
  std::optional<int> dim;
  bool text = false;

  void attach(CLI::App* app, bool two_states) {
    app->add_option("--qq", qq, "one-mode state: sigma_qq");
    app->add_option("--pp", pp, "one-mode state: sigma_pp");
    app->add_option("--cm", cm, "two-mode state: CM JSON file");
    if (two_states) {
      app->add_option("--qq2", qq2, "one-mode reference state: sigma_qq");
      app->add_option("--pp2", pp2, "one-mode reference state: sigma_pp");
      app->add_option("--cm2", cm2, "two-mode reference state: CM JSON file");
    }
    app->add_option("--dim", dim, "levels per mode (default 60 one-mode, 20 two-mode)");
    app->add_flag("--text", text, "print a table instead of JSON");
  }

  bool one_mode() const { return qq.has_value() || pp.has_value(); }

  OneModeCM first() const {
    if (!qq || !pp) throw Error(Errc::ParseError, "fields --qq and --pp are both required");
    return {*qq, *pp};
  }
  OneModeCM second() const {
    if (!qq2 || !pp2) throw Error(Errc::ParseError, "fields --qq2 and --pp2 are both required");
    return {*qq2, *pp2};
  }
};

int cmd_oracle(const std::string& kind, const OracleInput& in, std::ostream& out) {
  ojson doc = header("oracle");
  doc["kind"] = kind;
  const bool one = in.one_mode();
  if (!one && in.cm.empty()) throw Error(Errc::ParseError, "no input: give --qq/--pp or --cm");
  const int n = in.dim.value_or(one ? 60 : 20);
  if (n < 2) throw Error(Errc::ParseError, "field --dim must be at least 2");
  doc["dim"] = n;
  auto build = [&](bool second) {
    if (one) return gaussian_state_from_cm(second ? in.second() : in.first(), n);
    return gaussian_state_from_cm(load_cm_json(second ? in.cm2 : in.cm), n);
  };
  const FockOperator rho = build(false);
  doc["trace_deficit"] = rho.trace_deficit;
  std::optional<double> closed;
  double oracle = 0.0;
  if (kind == "entropy") {
    oracle = entropy_fock(rho);
    if (one) {
      closed = von_neumann_entropy(in.first());
    } else {
      const Eigen::Vector2d k = symplectic_eigenvalues(load_cm_json(in.cm).matrix());
      closed = von_neumann_entropy_nu(k(0)) + von_neumann_entropy_nu(k(1));
    }
  } else {
    if (!one && in.cm2.empty()) throw Error(Errc::ParseError, "field --cm2 is required");
    const FockOperator rhop = build(true);
    doc["trace_deficit_reference"] = rhop.trace_deficit;
    if (kind == "fidelity") {
      oracle = fidelity_fock(rho, rhop);
      if (one) closed = one_mode_fidelity(in.first(), in.second());
    } else {
      oracle = rel_entropy_fock(rhop, rho);
      if (one) closed = rel_entropy_one_mode(in.second(), in.first());
    }
  }
  doc["oracle"] = oracle;
  doc["closed_form"] = closed ? ojson(*closed) : ojson(nullptr);
  doc["discrepancy"] = closed ? ojson(oracle - *closed) : ojson(nullptr);
  emit(out, doc, in.text);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  init_logging_from_env();
  CLI::App app{
      "Gaussian entanglement measures for symmetric two-mode states.\n"
      "Conventions: hbar = 1, vacuum CM = I/2, quadrature ordering (q1, p1, q2, p2).\n"
      "Logging: GENT_LOG=error|warn|info|debug."};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  StateInput check_in, bures_in, relent_in;
  bool check_text = false, bures_text = false, relent_text = false;
  bool bures_verify = false, relent_verify = false;
  double grid_max = 5.0;

  auto* check = app.add_subcommand("check", "physicality, separability, spectra, invariants");
  check_in.attach(check);
  check->add_flag("--text", check_text, "print a table instead of JSON");

  auto* bures = app.add_subcommand("bures", "Bures-metric entanglement of a symmetric state");
  bures_in.attach(bures);
  bures->add_flag("--verify", bures_verify, "cross-check by direct fidelity maximization");
  bures->add_flag("--text", bures_text, "print a table instead of JSON");

  auto* relent = app.add_subcommand("relent", "relative entropy of entanglement of a symmetric state");
  relent_in.attach(relent);
  relent->add_flag("--verify", relent_verify, "cross-check against a 2000x2000 grid search");
  relent->add_option("--grid-max", grid_max, "upper end of the verification grid (default 5)");
  relent->add_flag("--text", relent_text, "print a table instead of JSON");

  SweepSpec spec;
  std::string measure = "both", param = "r", format = "csv";
  auto* sweep = app.add_subcommand("sweep", "tabulate measures along a family of states");
  sweep->add_option("--measure", measure, "bures | relent | both")
      ->check(CLI::IsMember({"bures", "relent", "both"}));
  sweep->add_option("--param", param, "r | kappa_tilde")->check(CLI::IsMember({"r", "kappa_tilde"}));
  sweep->add_option("--start", spec.start, "first parameter value")->required();
  sweep->add_option("--stop", spec.stop, "last parameter value")->required();
  sweep->add_option("--steps", spec.steps, "number of rows (>= 2)");
  sweep->add_option("--nbar", spec.nbar, "thermal photon number of the family");
  sweep->add_option("--output,-o", spec.output, "output path ('-' for stdout)");
  sweep->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* oracle = app.add_subcommand("oracle", "truncated Fock-basis reference values");
  oracle->require_subcommand(1);
  OracleInput fid_in, rel_in, ent_in;
  auto* o_fid = oracle->add_subcommand("fidelity", "Uhlmann fidelity of two states");
  fid_in.attach(o_fid, true);
  auto* o_rel = oracle->add_subcommand(
      "relent", "relative entropy Tr[rho (ln rho - ln rho')]; rho from --qq/--pp or --cm, "
                "rho' from --qq2/--pp2 or --cm2");
  rel_in.attach(o_rel, true);
  auto* o_ent = oracle->add_subcommand("entropy", "von Neumann entropy of one state");
  ent_in.attach(o_ent, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*check) return cmd_check(check_in.resolve(), out, check_text);
    if (*bures) return cmd_bures(bures_in.resolve(), bures_verify, out, bures_text);
    if (*relent) return cmd_relent(relent_in.resolve(), relent_verify, grid_max, out, relent_text);
    if (*sweep) {
      spec.measure = measure == "bures" ? Measure::Bures
                     : measure == "relent" ? Measure::Relent
                                           : Measure::Both;
      spec.parameter = param == "r" ? SweepParam::R : SweepParam::KappaTilde;
      spec.format = format == "json" ? SweepFormat::Json : SweepFormat::Csv;
      validate(spec);
      std::ofstream file;
      if (!spec.output.empty() && spec.output != "-") {
        file.open(spec.output);
        if (!file) throw Error(Errc::ParseError, "cannot write '" + spec.output + "'");
      }
      const std::vector<SweepRow> rows = run_sweep(spec);
      const std::string body =
          spec.format == SweepFormat::Csv ? sweep_csv(rows) : sweep_json(rows, spec);
      (file.is_open() ? static_cast<std::ostream&>(file) : out) << body;
      return kExitOk;
    }
    if (*o_fid) return cmd_oracle("fidelity", fid_in, out);
    if (*o_rel) return cmd_oracle("relent", rel_in, out);
    if (*o_ent) return cmd_oracle("entropy", ent_in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitParse;
}

}  // namespace gent::cli
