#include "cli.hpp"

#include "output.hpp"
#include "units.hpp"

#include "iontrap/catalog.hpp"
#include "iontrap/chain.hpp"
#include "iontrap/constants.hpp"
#include "iontrap/dynamics.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/normal_modes.hpp"
#include "iontrap/transitions.hpp"
#include "iontrap/validity.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#ifndef IONTRAP_VERSION
#define IONTRAP_VERSION "0.0.0"
#endif

namespace iontrap::cli {

namespace {

// Options every subcommand shares.
struct Common {
  std::string format;
  std::string output;

  Format fmt() const { return format == "json" ? Format::json : Format::csv; }
  std::optional<std::filesystem::path> path() const {
    if (output.empty())
      return std::nullopt;
    return std::filesystem::path(output);
  }
};

void add_common(CLI::App *sub, Common &c, std::string default_format) {
  c.format = std::move(default_format);
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("-o,--output", c.output, "Write to this file instead of stdout");
}

// Renders, writes and (for file outputs) records the manifest.
void finish(const std::string &subcommand, const Common &common, const Json &parameters,
            const std::string &text, std::ostream &out,
            std::vector<std::string> extra_outputs = {}) {
  emit(text, common.path(), out);
  if (!common.path())
    return;
  RunManifest m;
  m.subcommand = subcommand;
  m.parameters = parameters;
  m.outputs.push_back(common.output);
  for (auto &o : extra_outputs)
    m.outputs.push_back(std::move(o));
  m.tool_version = IONTRAP_VERSION;
  m.timestamp = utc_timestamp();
  write_manifest(m, *common.path());
}

std::string dump(const Json &doc) { return doc.dump(2) + "\n"; }

std::string csv_text(const CsvTable &table) {
  std::ostringstream os;
  table.write(os);
  return os.str();
}

Json header(std::string_view command) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  return j;
}

// ---- equilibrium ---------------------------------------------------------

struct EquilibriumArgs {
  Common common;
  int ions = 0;
  std::string trap_freq, mass;
  int charge = 1;
};

void cmd_equilibrium(const EquilibriumArgs &a, std::ostream &out) {
  const bool physical = !a.trap_freq.empty() || !a.mass.empty();
  if (physical && (a.trap_freq.empty() || a.mass.empty()))
    throw DomainError("--trap-freq and --mass must be given together");

  Json params{{"ions", a.ions}};
  ChainEquilibrium eq;
  if (physical) {
    TrapChainConfig cfg{a.ions, parse_angular_frequency(a.trap_freq), parse_mass(a.mass), a.charge};
    params["trap_angular_freq"] = json_number(cfg.trap_angular_freq);
    params["ion_mass_kg"] = json_number(cfg.ion_mass);
    params["charge"] = a.charge;
    eq = equilibrium(cfg);
  } else {
    eq.positions = solve_equilibrium(a.ions);
  }
  const std::vector<double> meters = physical ? eq.positions_meters() : std::vector<double>{};

  std::string text;
  if (a.common.fmt() == Format::csv) {
    std::vector<std::string> cols{"ion_count", "ion", "u"};
    if (physical)
      cols.push_back("position_m");
    CsvTable table(cols);
    for (std::size_t m = 0; m < eq.positions.size(); ++m) {
      std::vector<std::string> row{std::to_string(a.ions), std::to_string(m + 1),
                                   format_number(eq.positions[m])};
      if (physical)
        row.push_back(format_number(meters[m]));
      table.add_row(std::move(row));
    }
    text = csv_text(table);
  } else {
    Json doc = header("equilibrium");
    doc["ion_count"] = a.ions;
    if (physical)
      doc["length_scale_m"] = json_number(eq.length_scale);
    doc["positions"] = Json::array();
    for (std::size_t m = 0; m < eq.positions.size(); ++m) {
      Json row{{"ion", m + 1}, {"u", json_number(eq.positions[m])}};
      if (physical)
        row["position_m"] = json_number(meters[m]);
      doc["positions"].push_back(std::move(row));
    }
    text = dump(doc);
  }
  finish("equilibrium", a.common, params, text, out);
}

// ---- modes ---------------------------------------------------------------

struct ModesArgs {
  Common common;
  int ions = 0;
};

void cmd_modes(const ModesArgs &a, std::ostream &out) {
  const ModeSpectrum spec = normal_modes(a.ions);
  const auto n = spec.size();
  std::string text;
  if (a.common.fmt() == Format::csv) {
    std::vector<std::string> cols{"p", "mu"};
    for (Eigen::Index m = 1; m <= n; ++m)
      cols.push_back("b_" + std::to_string(m));
    for (Eigen::Index m = 1; m <= n; ++m)
      cols.push_back("s_" + std::to_string(m));
    CsvTable table(cols);
    for (Eigen::Index p = 0; p < n; ++p) {
      std::vector<std::string> row{std::to_string(p + 1), format_number(spec.eigenvalues[p])};
      for (Eigen::Index m = 0; m < n; ++m)
        row.push_back(format_number(spec.eigenvectors(p, m)));
      for (Eigen::Index m = 0; m < n; ++m)
        row.push_back(format_number(spec.coupling(p, m)));
      table.add_row(std::move(row));
    }
    text = csv_text(table);
  } else {
    Json doc = header("modes");
    doc["ion_count"] = a.ions;
    doc["min_gap"] = n > 1 ? json_number(spec.min_gap) : Json(nullptr);
    doc["degenerate"] = spec.degenerate;
    doc["modes"] = Json::array();
    for (Eigen::Index p = 0; p < n; ++p) {
      Json b = Json::array(), s = Json::array();
      for (Eigen::Index m = 0; m < n; ++m) {
        b.push_back(json_number(spec.eigenvectors(p, m)));
        s.push_back(json_number(spec.coupling(p, m)));
      }
      doc["modes"].push_back(
          {{"p", p + 1}, {"mu", json_number(spec.eigenvalues[p])}, {"b", b}, {"s", s}});
    }
    text = dump(doc);
  }
  finish("modes", a.common, Json{{"ions", a.ions}}, text, out);
}

// ---- minsep-fit ----------------------------------------------------------

struct MinsepArgs {
  Common common;
  int n_min = 2;
  int n_max = 10;
};

void cmd_minsep_fit(const MinsepArgs &a, std::ostream &out) {
  if (a.n_min < 2)
    throw DomainError("--n-min must be >= 2");
  if (a.n_max - a.n_min < 2)
    throw DomainError("the fit needs at least three chains (n-max - n-min >= 2)");

  std::vector<double> ns, spacing;
  std::vector<std::size_t> left;
  for (int n = a.n_min; n <= a.n_max; ++n) {
    const MinimumSpacing ms = minimum_spacing(solve_equilibrium(n));
    ns.push_back(n);
    spacing.push_back(ms.spacing);
    left.push_back(ms.index + 1);
  }
  const PowerLawFit fit = fit_power_law(ns, spacing);
  const auto fitted = [&](double n) { return fit.prefactor / std::pow(n, fit.exponent); };

  std::string text;
  if (a.common.fmt() == Format::csv) {
    CsvTable table({"ion_count", "min_spacing", "left_ion", "fitted"});
    for (std::size_t i = 0; i < ns.size(); ++i)
      table.add_row({std::to_string(static_cast<int>(ns[i])), format_number(spacing[i]),
                     std::to_string(left[i]), format_number(fitted(ns[i]))});
    text = csv_text(table);
  } else {
    Json doc = header("minsep-fit");
    doc["points"] = Json::array();
    for (std::size_t i = 0; i < ns.size(); ++i)
      doc["points"].push_back({{"ion_count", static_cast<int>(ns[i])},
                               {"min_spacing", json_number(spacing[i])},
                               {"left_ion", left[i]},
                               {"fitted", json_number(fitted(ns[i]))}});
    doc["fit"] = {{"prefactor", json_number(fit.prefactor)},
                  {"exponent", json_number(fit.exponent)},
                  {"method", "least squares on log(u_min) vs log(N)"}};
    text = dump(doc);
  }
  finish("minsep-fit", a.common, Json{{"n_min", a.n_min}, {"n_max", a.n_max}}, text, out);
}

// ---- sigma ---------------------------------------------------------------

struct SigmaArgs {
  Common common;
  int n_min = 2;
  int n_max = 30;
};

void cmd_sigma(const SigmaArgs &a, std::ostream &out) {
  if (a.n_min < 2)
    throw DomainError("Sigma(N) needs N >= 2");
  if (a.n_max < a.n_min)
    throw DomainError("--n-max must be >= --n-min");
  std::string text;
  if (a.common.fmt() == Format::csv) {
    CsvTable table({"ion_count", "sigma"});
    for (int n = a.n_min; n <= a.n_max; ++n)
      table.add_row({std::to_string(n), format_number(sigma_function(n))});
    text = csv_text(table);
  } else {
    Json doc = header("sigma");
    doc["rows"] = Json::array();
    for (int n = a.n_min; n <= a.n_max; ++n)
      doc["rows"].push_back({{"ion_count", n}, {"sigma", json_number(sigma_function(n))}});
    text = dump(doc);
  }
  finish("sigma", a.common, Json{{"n_min", a.n_min}, {"n_max", a.n_max}}, text, out);
}

// ---- rabi ----------------------------------------------------------------

struct RabiArgs {
  Common common;
  std::string catalog, species, transition, m_j, m_j_upper;
  std::string field = "1e4";
  std::string laser_freq;
  std::string axis_angle = "0";
  std::string polarization = "x";
  std::string propagation = "y";
  std::string placement = "node";
  int node_index = 0;
  std::string phase = "0";
  std::string trap_freq;
  int ions = 1;
  int ion = 1;
  std::string detuning = "0";
};

Eigen::Vector3d parse_direction(std::string_view text) {
  if (text == "x")
    return Eigen::Vector3d::UnitX();
  if (text == "y")
    return Eigen::Vector3d::UnitY();
  if (text == "z")
    return Eigen::Vector3d::UnitZ();
  Eigen::Vector3d v;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', start);
    if ((i < 2) == (comma == std::string_view::npos))
      throw DomainError("expected x, y, z or three comma-separated components, got '" +
                        std::string(text) + "'");
    v[i] = parse_number(text.substr(start, comma - start));
    start = comma + 1;
  }
  if (!(v.norm() > 0.0))
    throw DomainError("direction '" + std::string(text) + "' has zero length");
  return v.normalized();
}

void cmd_rabi(const RabiArgs &a, std::ostream &out) {
  const Catalog catalog = load_catalog(a.catalog);
  const IonSpecies &species = catalog.find(a.species);
  const TransitionRecord &record = species.transition(a.transition);
  const TransitionSpec spec =
      to_transition_spec(record, HalfInteger::parse(a.m_j), HalfInteger::parse(a.m_j_upper));

  LaserGeometry geom;
  geom.field_amplitude = parse_number(a.field);
  geom.angular_freq = a.laser_freq.empty() ? constants::speed_of_light * record.wavenumber()
                                           : parse_angular_frequency(a.laser_freq);
  geom.axis_angle = parse_angle(a.axis_angle);
  geom.polarization = parse_direction(a.polarization).cast<std::complex<double>>();
  geom.propagation = parse_direction(a.propagation);
  geom.placement = parse_placement(a.placement);
  geom.node_index = a.node_index;
  geom.phase = parse_angle(a.phase);

  const TrapChainConfig cfg{a.ions, parse_angular_frequency(a.trap_freq), species.mass_kg,
                            species.ionization_degree};
  const double detuning = parse_angular_frequency(a.detuning);
  const auto spectrum = cached_normal_modes(a.ions);
  const HamiltonianCoefficients h =
      hamiltonian_coefficients(spec, geom, cfg, *spectrum, a.ion, detuning);
  const double sigma = geometric_factor(spec, geom);
  const double eta = lamb_dicke(cfg, geom);

  Json params{{"catalog", a.catalog},
              {"species", a.species},
              {"transition", a.transition},
              {"m_j", spec.m_j.str()},
              {"m_j_upper", spec.m_j_upper.str()},
              {"field_amplitude", json_number(geom.field_amplitude)},
              {"laser_angular_freq", json_number(geom.angular_freq)},
              {"axis_angle", json_number(geom.axis_angle)},
              {"polarization", a.polarization},
              {"propagation", a.propagation},
              {"placement", std::string(to_string(geom.placement))},
              {"node_index", geom.node_index},
              {"phase", json_number(geom.phase)},
              {"trap_angular_freq", json_number(cfg.trap_angular_freq)},
              {"ions", a.ions},
              {"ion", a.ion},
              {"detuning", json_number(detuning)}};

  std::string text;
  if (a.common.fmt() == Format::csv) {
    CsvTable table({"multipole", "sigma", "rabi", "eta", "kind", "phase", "detuning"});
    table.add_row({std::string(to_string(spec.multipole)), format_number(sigma),
                   format_number(h.rabi), format_number(eta), std::string(to_string(h.kind)),
                   format_number(h.phase), format_number(h.detuning)});
    text = csv_text(table);
  } else {
    Json doc = header("rabi");
    doc["multipole"] = to_string(spec.multipole);
    doc["einstein_a"] = json_number(spec.einstein_a);
    doc["wavenumber"] = json_number(spec.wavenumber);
    doc["sigma"] = json_number(sigma);
    doc["rabi"] = json_number(h.rabi);
    doc["eta"] = json_number(eta);
    doc["kind"] = to_string(h.kind);
    doc["phase"] = json_number(h.phase);
    doc["detuning"] = json_number(h.detuning);
    doc["modes"] = Json::array();
    for (std::size_t p = 0; p < h.modes.size(); ++p)
      doc["modes"].push_back({{"p", p + 1},
                              {"strength", json_number(h.modes[p].strength)},
                              {"frequency", json_number(h.modes[p].frequency)}});
    text = dump(doc);
  }
  finish("rabi", a.common, params, text, out);
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
  Common common;
  std::string rabi, eta;
  std::string trap_freq = "1";
  int ions = 1;
  int ion = 1;
  double periods = 10.0;
  std::string duration;
  double tolerance = 1e-10;
  std::string initial = "upper-vacuum";
  std::string sample_interval;
  bool com_only = false;
  std::string report;
};

Json simulation_report(const SimulationConfig &cfg, const TimeSeries &series) {
  Json r;
  const double p_ext = extraneous_population(series);
  r["max_p_ext"] = json_number(p_ext);
  if (cfg.ion_count >= 2) {
    const ExtraneousBound bound =
        p_ext_bound(cfg.rabi, cfg.eta, cfg.trap_angular_freq, cfg.ion_count);
    r["p_ext_bound"] = json_number(bound.exact);
    r["p_ext_bound_rounded"] = json_number(bound.rounded);
    r["p_ext_bound_ion"] = json_number(p_ext_bound_for_ion(
        cfg.rabi, cfg.eta, cfg.trap_angular_freq, *cached_normal_modes(cfg.ion_count),
        cfg.ion_index));
  } else {
    r["p_ext_bound"] = 0.0;
    r["p_ext_bound_rounded"] = 0.0;
    r["p_ext_bound_ion"] = 0.0;
  }
  r["max_norm_drift"] = json_number(series.max_norm_drift());
  r["accepted_steps"] = series.accepted_steps;
  r["rejected_steps"] = series.rejected_steps;

  const EnvelopeReport env = envelope_check(series, cfg);
  Json e;
  e["satisfied"] = env.satisfied;
  e["slack"] = json_number(env.slack);
  e["worst_ratio"] = json_number(env.worst_ratio());
  e["modes"] = Json::array();
  for (const auto &m : env.modes)
    e["modes"].push_back({{"p", m.mode + 1},
                          {"alpha_max", json_number(m.alpha_max)},
                          {"alpha_limit", json_number(m.alpha_limit)},
                          {"beta_max", json_number(m.beta_max)},
                          {"beta_limit", json_number(m.beta_limit)}});
  r["envelope"] = std::move(e);
  return r;
}

void cmd_simulate(const SimulateArgs &a, std::ostream &out) {
  SimulationConfig cfg;
  cfg.rabi = parse_angular_frequency(a.rabi);
  cfg.eta = parse_number(a.eta);
  cfg.trap_angular_freq = parse_angular_frequency(a.trap_freq);
  cfg.ion_count = a.ions;
  cfg.ion_index = a.ion;
  cfg.tolerance = a.tolerance;
  cfg.initial = parse_initial_condition(a.initial);
  cfg.com_only = a.com_only;
  if (!a.sample_interval.empty())
    cfg.sample_interval = parse_time(a.sample_interval);
  if (!a.duration.empty()) {
    cfg.duration = parse_time(a.duration);
  } else {
    if (!(a.periods > 0.0))
      throw DomainError("--periods must be > 0");
    cfg.duration = a.periods * cfg.sideband_period();
  }

  const TimeSeries series = integrate(cfg);
  const Json report = simulation_report(cfg, series);

  Json params{{"rabi", json_number(cfg.rabi)},
              {"eta", json_number(cfg.eta)},
              {"trap_angular_freq", json_number(cfg.trap_angular_freq)},
              {"ions", cfg.ion_count},
              {"ion", cfg.ion_index},
              {"duration", json_number(cfg.duration)},
              {"tolerance", json_number(cfg.tolerance)},
              {"initial", std::string(to_string(cfg.initial))},
              {"sample_interval", json_number(cfg.sample_interval)},
              {"com_only", cfg.com_only}};

  std::string text;
  if (a.common.fmt() == Format::csv) {
    CsvTable table({"t", "alpha0_sq", "beta0_sq", "p_ext", "norm"});
    for (const auto &st : series.samples)
      table.add_row({format_number(st.time), format_number(std::norm(st.alpha0)),
                     format_number(std::norm(st.beta0)), format_number(st.extraneous_population()),
                     format_number(st.norm())});
    text = csv_text(table);
  } else {
    Json doc = header("simulate");
    doc["parameters"] = params;
    doc["report"] = report;
    doc["series"] = Json::array();
    for (const auto &st : series.samples)
      doc["series"].push_back({{"t", json_number(st.time)},
                               {"alpha0_sq", json_number(std::norm(st.alpha0))},
                               {"beta0_sq", json_number(std::norm(st.beta0))},
                               {"p_ext", json_number(st.extraneous_population())},
                               {"norm", json_number(st.norm())}});
    text = dump(doc);
  }

  std::vector<std::string> extra;
  if (!a.report.empty()) {
    Json doc = header("simulate");
    doc["parameters"] = params;
    doc["report"] = report;
    emit(dump(doc), std::filesystem::path(a.report), out);
    extra.push_back(a.report);
  }
  finish("simulate", a.common, params, text, out, std::move(extra));
}

// ---- validity ------------------------------------------------------------

struct ValidityArgs {
  Common common;
  std::string rabi, eta, trap_freq;
  int ions = 2;
  double threshold = 0.01;
};

void cmd_validity(const ValidityArgs &a, std::ostream &out) {
  const ValidityReport r = check_sufficiency(parse_angular_frequency(a.rabi), parse_number(a.eta),
                                             parse_angular_frequency(a.trap_freq), a.ions,
                                             a.threshold);
  Json params{{"rabi", json_number(r.rabi)},
              {"eta", json_number(r.eta)},
              {"trap_angular_freq", json_number(r.trap_angular_freq)},
              {"ions", r.ion_count},
              {"threshold", json_number(r.threshold)}};
  std::string text;
  if (a.common.fmt() == Format::csv) {
    CsvTable table({"ion_count", "sigma", "p_ext_bound", "p_ext_bound_rounded", "threshold",
                    "condition_satisfied"});
    table.add_row({std::to_string(r.ion_count), format_number(r.sigma_n),
                   format_number(r.p_ext_bound), format_number(r.p_ext_bound_rounded),
                   format_number(r.threshold), r.condition_satisfied ? "true" : "false"});
    text = csv_text(table);
  } else {
    Json doc = header("validity");
    doc["inputs"] = params;
    doc["sigma_n"] = json_number(r.sigma_n);
    doc["p_ext_bound"] = json_number(r.p_ext_bound);
    doc["p_ext_bound_rounded"] = json_number(r.p_ext_bound_rounded);
    doc["threshold"] = json_number(r.threshold);
    doc["condition_satisfied"] = r.condition_satisfied;
    text = dump(doc);
  }
  finish("validity", a.common, params, text, out);
}

// ---- errors --------------------------------------------------------------

void report_error(std::ostream &err, std::string_view kind, const std::string &message,
                  Json extra = Json::object()) {
  Json e{{"error", kind}, {"message", message}};
  for (auto &[k, v] : extra.items())
    e[k] = v;
  err << e.dump() << '\n';
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Linear ion-trap chain analysis", "iontrap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", IONTRAP_VERSION);

  const auto ion_range = CLI::Range(1, kMaxIons);

  EquilibriumArgs eq;
  auto *s_eq = app.add_subcommand("equilibrium", "Dimensionless equilibrium positions");
  add_common(s_eq, eq.common, "csv");
  s_eq->add_option("-N,--ions", eq.ions, "Number of ions")->required()->check(ion_range);
  s_eq->add_option("--trap-freq", eq.trap_freq, "Axial trap frequency (rad/s or 2pi*<x>Hz)");
  s_eq->add_option("--mass", eq.mass, "Ion mass (kg or <x>u)");
  s_eq->add_option("--charge", eq.charge, "Ionization degree Z")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ModesArgs md;
  auto *s_md = app.add_subcommand("modes", "Normal-mode eigenvalues, eigenvectors, couplings");
  add_common(s_md, md.common, "csv");
  s_md->add_option("-N,--ions", md.ions, "Number of ions")->required()->check(ion_range);

  MinsepArgs ms;
  auto *s_ms = app.add_subcommand("minsep-fit", "Power-law fit of the minimum spacing");
  add_common(s_ms, ms.common, "json");
  s_ms->add_option("--n-min", ms.n_min)->check(CLI::Range(2, kMaxIons))->capture_default_str();
  s_ms->add_option("--n-max", ms.n_max)->check(CLI::Range(2, kMaxIons))->capture_default_str();

  SigmaArgs sg;
  auto *s_sg = app.add_subcommand("sigma", "Extraneous-mode weight Sigma(N)");
  add_common(s_sg, sg.common, "csv");
  s_sg->add_option("--n-min", sg.n_min)->check(CLI::Range(1, kMaxIons))->capture_default_str();
  s_sg->add_option("--n-max", sg.n_max)->check(CLI::Range(1, kMaxIons))->capture_default_str();

  RabiArgs rb;
  auto *s_rb = app.add_subcommand("rabi", "Geometric factor, Rabi frequency and Hamiltonian kind");
  add_common(s_rb, rb.common, "json");
  s_rb->add_option("--catalog", rb.catalog, "Species catalog JSON file")->required();
  s_rb->add_option("--species", rb.species)->required();
  s_rb->add_option("--transition", rb.transition, "Transition label")->required();
  s_rb->add_option("--mj", rb.m_j, "Lower-level m_j, e.g. -1/2")->required();
  s_rb->add_option("--mj-upper", rb.m_j_upper, "Upper-level m_j")->required();
  s_rb->add_option("--field", rb.field, "Field amplitude, V/m")->capture_default_str();
  s_rb->add_option("--laser-freq", rb.laser_freq, "Laser angular frequency (default c k)");
  s_rb->add_option("--axis-angle", rb.axis_angle, "Beam angle to the trap axis (rad or <x>deg)")
      ->capture_default_str();
  s_rb->add_option("--polarization", rb.polarization, "x, y, z or a,b,c")->capture_default_str();
  s_rb->add_option("--propagation", rb.propagation, "x, y, z or a,b,c")->capture_default_str();
  s_rb->add_option("--placement", rb.placement)
      ->check(CLI::IsMember({"node", "antinode"}))
      ->capture_default_str();
  s_rb->add_option("--node-index", rb.node_index)->capture_default_str();
  s_rb->add_option("--phase", rb.phase)->capture_default_str();
  s_rb->add_option("--trap-freq", rb.trap_freq, "Axial trap frequency")->required();
  s_rb->add_option("-N,--ions", rb.ions)->check(ion_range)->capture_default_str();
  s_rb->add_option("--ion", rb.ion, "Addressed ion, 1-based")->capture_default_str();
  s_rb->add_option("--detuning", rb.detuning)->capture_default_str();

  SimulateArgs sm;
  auto *s_sm = app.add_subcommand("simulate", "Integrate the red-sideband amplitude equations");
  add_common(s_sm, sm.common, "csv");
  s_sm->add_option("--rabi", sm.rabi, "Rabi frequency Omega_0")->required();
  s_sm->add_option("--eta", sm.eta, "Lamb-Dicke parameter")->required();
  s_sm->add_option("--trap-freq", sm.trap_freq)->capture_default_str();
  s_sm->add_option("-N,--ions", sm.ions)->check(ion_range)->capture_default_str();
  s_sm->add_option("--ion", sm.ion, "Addressed ion, 1-based")->capture_default_str();
  auto *periods = s_sm->add_option("--periods", sm.periods, "Duration in sideband periods")
                      ->capture_default_str();
  s_sm->add_option("--duration", sm.duration, "Duration (s)")->excludes(periods);
  s_sm->add_option("--tolerance", sm.tolerance)->check(CLI::PositiveNumber)->capture_default_str();
  s_sm->add_option("--initial", sm.initial)
      ->check(CLI::IsMember({"upper-vacuum", "lower-com-phonon"}))
      ->capture_default_str();
  s_sm->add_option("--sample-interval", sm.sample_interval, "Output grid spacing (s)");
  s_sm->add_flag("--com-only", sm.com_only, "Keep only the center-of-mass mode");
  s_sm->add_option("--report", sm.report, "Also write the JSON report to this file");

  ValidityArgs vl;
  auto *s_vl = app.add_subcommand("validity", "Sufficiency check for the COM-only Hamiltonian");
  add_common(s_vl, vl.common, "json");
  s_vl->add_option("--rabi", vl.rabi)->required();
  s_vl->add_option("--eta", vl.eta)->required();
  s_vl->add_option("--trap-freq", vl.trap_freq)->required();
  s_vl->add_option("-N,--ions", vl.ions)->required();
  s_vl->add_option("--threshold", vl.threshold)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    report_error(err, "usage_error", e.what());
    return 2;
  }

  try {
    if (*s_eq)
      cmd_equilibrium(eq, out);
    else if (*s_md)
      cmd_modes(md, out);
    else if (*s_ms)
      cmd_minsep_fit(ms, out);
    else if (*s_sg)
      cmd_sigma(sg, out);
    else if (*s_rb)
      cmd_rabi(rb, out);
    else if (*s_sm)
      cmd_simulate(sm, out);
    else if (*s_vl)
      cmd_validity(vl, out);
    return 0;
  } catch (const CatalogError &e) {
    report_error(err, "catalog_error", e.what(), Json{{"detail", Json::parse(e.to_json())}});
  } catch (const ConvergenceError &e) {
    report_error(err, "convergence_error", e.what(),
                 Json{{"residual", json_number(e.residual())}, {"iterations", e.iterations()}});
  } catch (const StepUnderflowError &e) {
    report_error(err, "step_underflow", e.what(), Json{{"time_reached", json_number(e.time_reached())}});
  } catch (const DomainError &e) {
    report_error(err, "domain_error", e.what());
  } catch (const std::exception &e) {
    report_error(err, "error", e.what());
  }
  return 1;
}

} // namespace iontrap::cli
