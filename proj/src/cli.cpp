#include "cusplab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "cusplab/boundary.hpp"
#include "cusplab/counting.hpp"
#include "cusplab/csv.hpp"
#include "cusplab/ellipticity.hpp"
#include "cusplab/weyl.hpp"

namespace cusplab {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) {
  raise(errc::invalid_config, msg);
}

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(ctx + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.count(item.key())) {
      config_error(ctx + ": unknown key '" + item.key() + "'");
    }
  }
}

const json& required(const json& obj, const std::string& ctx, const char* key) {
  if (!obj.contains(key)) config_error(ctx + ": missing key '" + std::string(key) + "'");
  return obj.at(key);
}

double as_number(const json& v, const std::string& ctx) {
  if (!v.is_number()) config_error(ctx + ": expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& ctx) {
  if (!v.is_number_integer()) config_error(ctx + ": expected an integer");
  return v.get<int>();
}

CuspModelSpec parse_spec(const json& j) {
  check_keys(j, "spec", {"n", "p", "x0"});
  CuspModelSpec spec;
  spec.n = as_int(required(j, "spec", "n"), "spec.n");
  spec.p = as_number(required(j, "spec", "p"), "spec.p");
  spec.x0 = as_number(required(j, "spec", "x0"), "spec.x0");
  spec.validate();
  return spec;
}

Spin parse_spin(const json& v) {
  const std::string s = v.is_string() ? v.get<std::string>() : std::string();
  if (s == "trivial") return Spin::trivial;
  if (s == "nontrivial") return Spin::nontrivial;
  config_error("model.spin: expected \"trivial\" or \"nontrivial\"");
}

BoundaryModel parse_model(const json& j) {
  if (!j.is_object()) config_error("model: expected an object");
  const std::string type = required(j, "model", "type").get<std::string>();
  if (type == "circle") {
    check_keys(j, "model", {"type", "radius", "spin"});
    return BoundaryModel::circle(as_number(required(j, "model", "radius"), "model.radius"),
                                 parse_spin(required(j, "model", "spin")));
  }
  if (type == "synthetic") {
    check_keys(j, "model", {"type", "eigenvalues", "dimension", "volume", "count_majorant"});
    const json& list = required(j, "model", "eigenvalues");
    if (!list.is_array() || list.empty()) {
      config_error("model.eigenvalues: expected a non-empty array of [mu, mult] pairs");
    }
    auto entries = std::make_shared<std::vector<Mode>>();
    for (const auto& e : list) {
      if (!e.is_array() || e.size() != 2) config_error("model.eigenvalues: bad entry");
      entries->push_back({as_number(e[0], "model.eigenvalues.mu"),
                          std::int64_t(as_int(e[1], "model.eigenvalues.mult"))});
    }
    std::stable_sort(entries->begin(), entries->end(), [](const Mode& a, const Mode& b) {
      return std::fabs(a.mu) < std::fabs(b.mu);
    });
    std::optional<double> volume, majorant;
    if (j.contains("volume")) volume = as_number(j.at("volume"), "model.volume");
    if (j.contains("count_majorant")) {
      majorant = as_number(j.at("count_majorant"), "model.count_majorant");
    }
    return BoundaryModel::synthetic(
        [entries](std::size_t i) -> std::optional<Mode> {
          if (i >= entries->size()) return std::nullopt;
          return (*entries)[i];
        },
        as_int(required(j, "model", "dimension"), "model.dimension"), volume, majorant);
  }
  config_error("model.type: expected \"circle\" or \"synthetic\"");
}

Tolerances parse_tolerances(const json& j) {
  Tolerances tol;
  if (j.is_null()) return tol;
  check_keys(j, "tolerances",
             {"points_per_wavelength", "domain_safety_margin", "convergence",
              "max_refinements"});
  if (j.contains("points_per_wavelength")) {
    tol.points_per_wavelength = as_number(j.at("points_per_wavelength"), "tolerances");
  }
  if (j.contains("domain_safety_margin")) {
    tol.domain_safety_margin = as_number(j.at("domain_safety_margin"), "tolerances");
  }
  if (j.contains("convergence")) tol.convergence = as_number(j.at("convergence"), "tolerances");
  if (j.contains("max_refinements")) {
    tol.max_refinements = as_int(j.at("max_refinements"), "tolerances");
  }
  tol.validate();
  return tol;
}

std::vector<double> parse_lambdas(const json& j) {
  std::vector<double> lambdas;
  if (j.is_array()) {
    for (const auto& v : j) lambdas.push_back(as_number(v, "lambdas"));
  } else if (j.is_object()) {
    check_keys(j, "lambdas", {"min", "max", "points"});
    lambdas = geometric_grid(as_number(required(j, "lambdas", "min"), "lambdas.min"),
                             as_number(required(j, "lambdas", "max"), "lambdas.max"),
                             as_int(required(j, "lambdas", "points"), "lambdas.points"));
  } else {
    config_error("lambdas: expected an array or {min,max,points}");
  }
  if (lambdas.empty()) config_error("lambdas: empty");
  for (double l : lambdas) {
    if (!(l > 0.0)) config_error("lambdas: values must be > 0");
  }
  return lambdas;
}

std::vector<double> parse_number_list(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) config_error(ctx + ": expected a non-empty array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(as_number(v, ctx));
  return out;
}

struct FitMode {
  enum Kind { k0, k1, free_k, frozen, critical } kind = k0;
  double a_frozen = 0.0;
  int k_frozen = 0;
  int n_critical = 2;
};

FitMode parse_fit_mode(const json& j) {
  check_keys(j, "fit", {"mode", "a", "k", "n"});
  FitMode fm;
  const std::string mode = required(j, "fit", "mode").get<std::string>();
  if (mode == "k0") {
    fm.kind = FitMode::k0;
  } else if (mode == "k1") {
    fm.kind = FitMode::k1;
  } else if (mode == "free") {
    fm.kind = FitMode::free_k;
  } else if (mode == "frozen") {
    fm.kind = FitMode::frozen;
    fm.a_frozen = as_number(required(j, "fit", "a"), "fit.a");
    if (j.contains("k")) fm.k_frozen = as_int(j.at("k"), "fit.k");
  } else if (mode == "critical") {
    fm.kind = FitMode::critical;
    fm.n_critical = as_int(required(j, "fit", "n"), "fit.n");
  } else {
    config_error("fit.mode: expected k0 | k1 | free | frozen | critical");
  }
  return fm;
}

FitResult apply_fit(const FitMode& fm, const std::vector<CountSample>& samples) {
  switch (fm.kind) {
    case FitMode::k0: return fit_asymptotics(samples, KChoice::k0);
    case FitMode::k1: return fit_asymptotics(samples, KChoice::k1);
    case FitMode::free_k: return fit_asymptotics(samples, KChoice::free_k);
    case FitMode::frozen: return fit_constant(samples, fm.a_frozen, fm.k_frozen);
    case FitMode::critical: {
      const CriticalFit cf = fit_critical_slope(samples, fm.n_critical);
      FitResult out;
      out.a_fit = double(fm.n_critical);
      out.c_fit = cf.slope;
      out.k_fit = 1;
      out.residual = cf.residual;
      out.lambda_min = samples.front().first;
      out.lambda_max = samples.back().first;
      out.samples = std::int64_t(samples.size());
      return out;
    }
  }
  config_error("fit: bad mode");
}

struct Paths {
  std::filesystem::path out_dir;
  std::filesystem::path file(const std::string& name) const { return out_dir / name; }
};

std::vector<CountRow> run_count_rows(const CuspModelSpec& spec, const BoundaryModel& model,
                                     const std::vector<double>& lambdas,
                                     const Tolerances& tol, int jobs) {
  std::vector<CountRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    CountRequest req{spec, model, lambda, tol, jobs};
    const CountResult res = count_states(req);
    rows.push_back({lambda, res.count, res.semiclassical, res.wallclock_seconds});
  }
  return rows;
}

std::vector<CountSample> parse_counts_csv(const std::string& content) {
  std::vector<CountSample> samples;
  std::size_t pos = 0;
  bool header = true;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    const std::string_view line(content.data() + pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
      config_error("fit input: malformed CSV row");
    }
    double lambda = 0.0, count = 0.0;
    const auto r1 = std::from_chars(line.data(), line.data() + c1, lambda);
    const auto r2 = std::from_chars(line.data() + c1 + 1, line.data() + c2, count);
    if (r1.ec != std::errc() || r2.ec != std::errc()) {
      config_error("fit input: malformed number in CSV row");
    }
    samples.emplace_back(lambda, count);
  }
  return samples;
}

std::string fit_csv(const FitResult& fr) {
  std::string out = "a_fit,C_fit,k_fit,residual,lambda_min,lambda_max,samples\n";
  out += format_number(fr.a_fit) + "," + format_number(fr.c_fit) + "," +
         format_number(std::int64_t(fr.k_fit)) + "," + format_number(fr.residual) + "," +
         format_number(fr.lambda_min) + "," + format_number(fr.lambda_max) + "," +
         format_number(fr.samples) + "\n";
  return out;
}

NormalFamilySpec parse_family(const json& cfg) {
  check_keys(cfg, "config",
             {"radius", "spin", "alpha", "xi", "truncation", "threshold"});
  NormalFamilySpec fam;
  fam.radius = as_number(required(cfg, "config", "radius"), "radius");
  fam.spin = parse_spin(required(cfg, "config", "spin"));
  const json& alpha = required(cfg, "config", "alpha");
  if (alpha.is_array()) {
    for (const auto& v : alpha) fam.cos_coeffs.push_back(as_number(v, "alpha"));
  } else if (alpha.is_object()) {
    check_keys(alpha, "alpha", {"cos", "sin"});
    if (alpha.contains("cos")) {
      for (const auto& v : alpha.at("cos")) fam.cos_coeffs.push_back(as_number(v, "alpha.cos"));
    }
    if (alpha.contains("sin")) {
      for (const auto& v : alpha.at("sin")) fam.sin_coeffs.push_back(as_number(v, "alpha.sin"));
    }
  } else {
    config_error("alpha: expected an array or {cos, sin}");
  }
  const json& xi = required(cfg, "config", "xi");
  if (xi.is_array()) {
    fam.xi_grid = parse_number_list(xi, "xi");
  } else if (xi.is_object()) {
    check_keys(xi, "xi", {"max", "half_points"});
    fam.xi_grid = symmetric_xi_grid(as_number(required(xi, "xi", "max"), "xi.max"),
                                    as_int(required(xi, "xi", "half_points"), "xi.half_points"));
  } else {
    config_error("xi: expected an array or {max, half_points}");
  }
  if (cfg.contains("truncation")) fam.truncation = as_int(cfg.at("truncation"), "truncation");
  fam.validate();
  return fam;
}

int dispatch(const std::string& sub, const json& cfg, const Paths& paths, int jobs,
             std::ostream& out) {
  if (sub == "modes") {
    check_keys(cfg, "config", {"model", "mu_max"});
    const auto model = parse_model(required(cfg, "config", "model"));
    const double mu_max = as_number(required(cfg, "config", "mu_max"), "mu_max");
    std::string csv = "mu,mult\n";
    for (const auto& mode : enumerate_modes(model, mu_max)) {
      csv += format_number(mode.mu) + "," + format_number(mode.mult) + "\n";
    }
    write_file(paths.file("modes.csv").string(), csv);
    out << "modes: wrote " << paths.file("modes.csv").string() << "\n";
    return 0;
  }

  if (sub == "zeta") {
    check_keys(cfg, "config", {"model", "s", "epsilon"});
    const auto model = parse_model(required(cfg, "config", "model"));
    const double s = as_number(required(cfg, "config", "s"), "s");
    const double eps = as_number(required(cfg, "config", "epsilon"), "epsilon");
    const double value = zeta_boundary(model, s, eps);
    write_file(paths.file("zeta.csv").string(),
               "s,value\n" + format_number(s) + "," + format_number(value) + "\n");
    out << "zeta(" << format_number(s) << ") = " << format_number(value) << "\n";
    return 0;
  }

  if (sub == "count") {
    check_keys(cfg, "config", {"spec", "model", "lambdas", "tolerances", "timing"});
    const auto spec = parse_spec(required(cfg, "config", "spec"));
    const auto model = parse_model(required(cfg, "config", "model"));
    const auto lambdas = parse_lambdas(required(cfg, "config", "lambdas"));
    const auto tol = parse_tolerances(cfg.contains("tolerances") ? cfg.at("tolerances") : json());
    const bool timing = cfg.contains("timing") && cfg.at("timing").get<bool>();
    const auto rows = run_count_rows(spec, model, lambdas, tol, jobs);
    write_file(paths.file("counts.csv").string(), count_csv(rows, timing));
    for (const auto& row : rows) {
      out << "lambda=" << format_number(row.lambda) << " count=" << row.count
          << " semiclassical=" << format_number(row.semiclassical) << "\n";
    }
    return 0;
  }

  if (sub == "scan-essential") {
    check_keys(cfg, "config", {"spec", "model", "window", "t_list", "points_per_wavelength"});
    const auto spec = parse_spec(required(cfg, "config", "spec"));
    const auto model = parse_model(required(cfg, "config", "model"));
    const auto window = parse_number_list(required(cfg, "config", "window"), "window");
    if (window.size() != 2) config_error("window: expected [a, b]");
    const auto t_list = parse_number_list(required(cfg, "config", "t_list"), "t_list");
    const double ppw = cfg.contains("points_per_wavelength")
                           ? as_number(cfg.at("points_per_wavelength"), "points_per_wavelength")
                           : 10.0;
    std::string csv = "T,count\n";
    for (const auto& [T, count] :
         essential_spectrum_scan(spec, model, window[0], window[1], t_list, ppw)) {
      csv += format_number(T) + "," + format_number(count) + "\n";
    }
    write_file(paths.file("scan.csv").string(), csv);
    out << "scan-essential: wrote " << paths.file("scan.csv").string() << "\n";
    return 0;
  }

  if (sub == "bc-sensitivity") {
    check_keys(cfg, "config", {"spec", "mu", "lambda_max", "deltas", "grid_points"});
    const auto spec = parse_spec(required(cfg, "config", "spec"));
    const double mu = as_number(required(cfg, "config", "mu"), "mu");
    const double lambda_max = as_number(required(cfg, "config", "lambda_max"), "lambda_max");
    const auto deltas = parse_number_list(required(cfg, "config", "deltas"), "deltas");
    const Eigen::Index grid = cfg.contains("grid_points")
                                  ? as_int(cfg.at("grid_points"), "grid_points")
                                  : 4000;
    const DriftReport report = bc_sensitivity(spec, mu, lambda_max, deltas, grid);
    std::string csv = "delta,eigenvalues_below,drift_vs_first\n";
    for (std::size_t i = 0; i < report.deltas.size(); ++i) {
      double drift = 0.0;
      const auto& base = report.eigenvalues.front();
      const auto& cur = report.eigenvalues[i];
      for (std::size_t j = 0; j < std::min(base.size(), cur.size()); ++j) {
        drift = std::max(drift, std::fabs(cur[j] - base[j]));
      }
      csv += format_number(report.deltas[i]) + "," +
             format_number(std::int64_t(cur.size())) + "," + format_number(drift) + "\n";
    }
    write_file(paths.file("bc.csv").string(), csv);
    out << "max_drift=" << format_number(report.max_drift) << "\n";
    return 0;
  }

  if (sub == "predict") {
    check_keys(cfg, "config", {"spec", "model"});
    const auto spec = parse_spec(required(cfg, "config", "spec"));
    const auto model = parse_model(required(cfg, "config", "model"));
    const WeylPrediction pred = predict(spec, model);
    char line[160];
    std::snprintf(line, sizeof(line), "regime=%s a=%g k=%d C=%.6f", to_string(pred.regime),
                  pred.exponent, pred.log_power, pred.constant);
    write_file(paths.file("predict.csv").string(),
               "regime,a,k,C\n" + std::string(to_string(pred.regime)) + "," +
                   format_number(pred.exponent) + "," +
                   format_number(std::int64_t(pred.log_power)) + "," +
                   format_number(pred.constant) + "\n");
    out << line << "\n";
    return 0;
  }

  if (sub == "fit") {
    check_keys(cfg, "config", {"input", "fit"});
    const std::string input = required(cfg, "config", "input").get<std::string>();
    const FitMode fm = parse_fit_mode(required(cfg, "config", "fit"));
    const auto path = std::filesystem::path(input).is_absolute()
                          ? std::filesystem::path(input)
                          : paths.out_dir / input;
    const auto samples = parse_counts_csv(read_file(path.string()));
    const FitResult fr = apply_fit(fm, samples);
    write_file(paths.file("fit.csv").string(), fit_csv(fr));
    out << "a_fit=" << format_number(fr.a_fit) << " C_fit=" << format_number(fr.c_fit)
        << " k_fit=" << fr.k_fit << " residual=" << format_number(fr.residual) << "\n";
    return 0;
  }

  if (sub == "ellipticity") {
    const NormalFamilySpec fam = parse_family(cfg);
    const double threshold = cfg.contains("threshold")
                                 ? as_number(cfg.at("threshold"), "threshold")
                                 : 1e-8;
    const EllipticityVerdict v = scan_invertibility(fam, threshold);
    std::string csv = "fully_elliptic,min_sigma,worst_xi,truncation_converged,K\n";
    csv += std::string(v.fully_elliptic ? "true" : "false") + "," +
           format_number(v.min_sigma) + "," + format_number(v.worst_xi) + "," +
           (v.truncation_converged ? "true" : "false") + "," +
           format_number(std::int64_t(v.truncation_used)) + "\n";
    write_file(paths.file("ellipticity.csv").string(), csv);
    out << "fully_elliptic=" << (v.fully_elliptic ? "true" : "false")
        << " min_sigma=" << format_number(v.min_sigma) << "\n";
    return 0;
  }

  if (sub == "report") {
    check_keys(cfg, "config", {"experiments"});
    const json& experiments = required(cfg, "config", "experiments");
    if (!experiments.is_array() || experiments.empty()) {
      config_error("experiments: expected a non-empty array");
    }
    std::string csv = "regime,a_theory,a_fit,C_theory,C_fit,rel_err\n";
    std::string md =
        "| name | regime | a_theory | a_fit | C_theory | C_fit | rel_err |\n"
        "|---|---|---|---|---|---|---|\n";
    for (const auto& exp : experiments) {
      check_keys(exp, "experiment",
                 {"name", "spec", "model", "lambdas", "tolerances", "fit", "timing"});
      const std::string name = required(exp, "experiment", "name").get<std::string>();
      const auto spec = parse_spec(required(exp, "experiment", "spec"));
      const auto model = parse_model(required(exp, "experiment", "model"));
      const auto lambdas = parse_lambdas(required(exp, "experiment", "lambdas"));
      const auto tol =
          parse_tolerances(exp.contains("tolerances") ? exp.at("tolerances") : json());
      const bool timing = exp.contains("timing") && exp.at("timing").get<bool>();
      const FitMode fm = parse_fit_mode(required(exp, "experiment", "fit"));

      const auto rows = run_count_rows(spec, model, lambdas, tol, jobs);
      write_file(paths.file("counts_" + name + ".csv").string(), count_csv(rows, timing));
      std::vector<CountSample> samples;
      for (const auto& row : rows) samples.emplace_back(row.lambda, double(row.count));
      const WeylPrediction pred = predict(spec, model);
      const FitResult fr = apply_fit(fm, samples);
      const double rel = std::fabs(fr.c_fit - pred.constant) / pred.constant;

      csv += std::string(to_string(pred.regime)) + "," + format_number(pred.exponent) +
             "," + format_number(fr.a_fit) + "," + format_number(pred.constant) + "," +
             format_number(fr.c_fit) + "," + format_number(rel) + "\n";
      md += "| " + name + " | " + to_string(pred.regime) + " | " +
            format_number(pred.exponent) + " | " + format_number(fr.a_fit) + " | " +
            format_number(pred.constant) + " | " + format_number(fr.c_fit) + " | " +
            format_number(rel) + " |\n";
      out << name << ": regime=" << to_string(pred.regime)
          << " a_fit=" << format_number(fr.a_fit) << " C_fit=" << format_number(fr.c_fit)
          << " rel_err=" << format_number(rel) << "\n";
    }
    write_file(paths.file("report.csv").string(), csv);
    write_file(paths.file("report.md").string(), md);
    return 0;
  }

  config_error("unknown subcommand: " + sub);
}

int exit_code_for(errc code) {
  switch (code) {
    case errc::non_convergent:
    case errc::non_convergent_truncation:
      return 2;
    case errc::non_invertible_boundary:
    case errc::divergent_region:
    case errc::infinite_volume:
    case errc::not_pure_point:
    case errc::zero_mode_unsafe:
    case errc::domain_exceeded:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"spectral laboratory for Dirac-type operators on cusp model metrics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int jobs = 1;
  int seed = 0;

  const std::vector<std::string> subs = {"modes",        "zeta",    "count",
                                         "scan-essential", "bc-sensitivity", "predict",
                                         "fit",          "ellipticity", "report"};
  for (const auto& name : subs) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON experiment configuration")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", jobs, "worker threads");
    sub->add_option("--seed", seed, "seed for noise-injection test fixtures");
  }

  std::vector<const char*> argv;
  argv.push_back("cusplab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e, out, err);
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const std::string sub_name = app.get_subcommands().front()->get_name();
    Paths paths{std::filesystem::path(out_dir)};
    std::error_code fs_err;
    std::filesystem::create_directories(paths.out_dir, fs_err);
    if (fs_err) config_error("cannot create output directory: " + out_dir);
    json cfg;
    try {
      cfg = json::parse(read_file(config_path));
    } catch (const json::exception& e) {
      config_error(std::string("config parse: ") + e.what());
    }
    if (jobs < 1) config_error("--jobs must be >= 1");
    return dispatch(sub_name, cfg, paths, jobs, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cusplab
