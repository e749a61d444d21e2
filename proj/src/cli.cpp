#include "qdisk/cli.hpp"

#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qdisk/config.hpp"
#include "qdisk/errors.hpp"
#include "qdisk/format.hpp"
#include "qdisk/integral_means.hpp"
#include "qdisk/nevanlinna_pick.hpp"
#include "qdisk/parallel.hpp"
#include "qdisk/twisting.hpp"
#include "qdisk/verify.hpp"

namespace qdisk {

namespace {

struct Invocation {
  std::string command;
  RunConfig config;
  std::string format = "csv";
  unsigned jobs = 1;
};

// Thrown by commands whose checks ran but did not all pass.
struct VerificationFailed {
  std::string output;
  std::string first_failure;
};

std::string provenance(const Invocation& inv, const std::string& prefix, const std::string& suffix = "") {
  const std::string config_json = effective_json(inv.config);
  std::ostringstream os;
  const auto line = [&](const std::string& text) { os << prefix << text << suffix << '\n'; };
  line(std::string("tool: ") + kToolVersion);
  line("command: " + inv.command);
  line("config_hash: fnv1a64:" + fnv1a_hex(config_json));
  line("seed: " + std::to_string(inv.config.seed));
  line("tolerance.quadrature: " + format_double(inv.config.quadrature_tol));
  line("tolerance.quadrature_max_samples: " + std::to_string(QuadratureOptions{}.max_samples));
  line("tolerance.fd_step: " + format_double(default_fd_step(0.0)) + "*max(1,|z|)");
  line("tolerance.branch_tie: " + format_double(kBranchTieTolerance));
  line("tolerance.closure_defect: " + format_double(1e-8));
  line("tolerance.hull_slack: " + format_double(RegionWk::kContainsSlack));
  line("tolerance.critical_circle: " + format_double(kCriticalCircleTolerance));
  line("tolerance.spiral_convergence: " + format_double(0.02));
  line("tolerance.log_growth_slope: " + format_double(kLogGrowthSlopeBound));
  line("config: " + config_json);
  return os.str();
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += fields[i];
  }
  return row + '\n';
}

std::string opt(const std::optional<double>& value) { return value ? format_double(*value) : ""; }

[[noreturn]] void config_error(const std::string& message) { throw Error(ErrorCode::ConfigError, message); }

const MapSpec& require_map(const RunConfig& config) {
  if (!config.map) config_error("this command needs a map section");
  return *config.map;
}

MapPtr require_disk_map(const RunConfig& config) {
  const MapSpec& spec = require_map(config);
  MapPtr map;
  try {
    map = build_map(spec);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) config_error(e.what());
    throw;
  }
  if (map->domain() != Domain::UnitDisk) config_error("family '" + spec.family + "' is not defined on the unit disk");
  return map;
}

const std::vector<cplx>& require_grid(const RunConfig& config) {
  if (config.t_grid.empty()) config_error("this command needs a grid section");
  return config.t_grid;
}

double require_k(const RunConfig& config, const std::optional<double>& fallback) {
  const std::optional<double> k = config.k ? config.k : fallback;
  if (!k) config_error("this command needs k");
  if (!(*k > 0.0 && *k < 1.0)) config_error("k must lie in (0, 1), got " + format_double(*k));
  return *k;
}

// k for reference curves: the map's own distortion when it is usable, else config k.
std::optional<double> reference_k(const RunConfig& config, const ConformalMap& map) {
  const auto d = map.distortion();
  if (d && *d > 0.0 && *d < 1.0) return d;
  if (config.k && *config.k > 0.0 && *config.k < 1.0) return config.k;
  return std::nullopt;
}

std::string cmd_beta(const Invocation& inv) {
  const RunConfig& config = inv.config;
  const MapPtr map = require_disk_map(config);
  const std::vector<cplx>& grid = require_grid(config);
  const RadiusSchedule schedule(config.schedule.j_min, config.schedule.j_max);
  QuadratureOptions quadrature;
  quadrature.tol = config.quadrature_tol;

  const auto estimates = parallel_map<SpectrumEstimate>(grid.size(), inv.jobs, [&](std::size_t i) {
    try {
      return beta_estimate(*map, grid[i], schedule, config.schedule.tail_length, quadrature);
    } catch (const Error& e) {
      throw Error(e.code(), "t = (" + format_double(grid[i].real()) + ", " + format_double(grid[i].imag()) +
                                "): " + std::string(e.what()).substr(std::string(to_string(e.code())).size() + 2));
    }
  });

  const std::optional<double> k = reference_k(config, *map);
  std::string body = provenance(inv, "# ");
  body += csv_row({"t_re", "t_im", "j", "r_j", "I_j", "local_slope", "beta_limsup", "beta_lsq", "kind", "k",
                   "trivial_upper", "trivial_lower", "theorem_value", "linear_zone", "hedenmalm",
                   "disproved_conjecture", "integrability"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SpectrumEstimate& est = estimates[i];
    const std::string re = format_double(grid[i].real()), im = format_double(grid[i].imag());
    for (std::size_t l = 0; l < est.levels.size(); ++l) {
      const RadiusLevel& level = est.levels[l];
      body += csv_row({re, im, std::to_string(level.j), format_double(level.radius), format_double(level.integral),
                       l ? format_double(est.local_slopes[l - 1]) : "", "", "", "level", "", "", "", "", "", "", "",
                       ""});
    }
    std::vector<std::string> summary = {re, im, "", "", "", "", format_double(est.beta_limsup),
                                        format_double(est.beta_lsq), "summary"};
    if (k && grid[i] != cplx(0.0)) {
      const ReferenceSpectra ref = reference_spectra(*k, grid[i]);
      summary.insert(summary.end(), {format_double(*k), format_double(ref.trivial_upper),
                                     format_double(ref.trivial_lower), opt(ref.theorem_value), opt(ref.linear_zone),
                                     format_double(ref.hedenmalm), format_double(ref.disproved_conjecture),
                                     to_string(integrability_region(*k, grid[i]))});
    } else {
      summary.insert(summary.end(), 8, "");
    }
    body += csv_row(summary);
  }
  return body;
}

std::string cmd_region(const Invocation& inv) {
  const double k = require_k(inv.config, std::nullopt);
  const std::vector<cplx> poly = boundary_polyline(k, inv.config.region_samples);
  if (inv.format == "csv") {
    std::string body = provenance(inv, "# ");
    body += csv_row({"re", "im"});
    for (const cplx w : poly) body += csv_row({format_double(w.real()), format_double(w.imag())});
    return body;
  }

  double x_lo = poly[0].real(), x_hi = x_lo, y_lo = poly[0].imag(), y_hi = y_lo;
  for (const cplx w : poly) {
    x_lo = std::min(x_lo, w.real());
    x_hi = std::max(x_hi, w.real());
    y_lo = std::min(y_lo, w.imag());
    y_hi = std::max(y_hi, w.imag());
  }
  const double scale = std::max(x_hi - x_lo, y_hi - y_lo);
  std::string body = "<!--\n" + provenance(inv, "  ") + "-->\n";
  body += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"512\" height=\"512\">\n";
  body += "<path fill=\"none\" stroke=\"black\" stroke-width=\"0.004\" d=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const double x = (poly[i].real() - x_lo) / scale;
    const double y = (y_hi - poly[i].imag()) / scale;
    body += (i ? " L " : "M ") + format_double(x) + " " + format_double(y);
  }
  body += " Z\"/>\n</svg>\n";
  return body;
}

std::string cmd_spectra(const Invocation& inv) {
  const RunConfig& config = inv.config;
  std::optional<double> fallback;
  if (config.map && !is_motion_family(config.map->family)) {
    const MapPtr map = require_disk_map(config);
    fallback = map->distortion();
  }
  const double k = require_k(config, fallback);
  std::string body = provenance(inv, "# ");
  body += csv_row({"t_re", "t_im", "k", "trivial_upper", "trivial_lower", "theorem_value", "linear_zone", "hedenmalm",
                   "disproved_conjecture", "integrability"});
  for (const cplx t : require_grid(config)) {
    if (t == cplx(0.0)) config_error("t = 0 is not allowed in the spectra grid");
    const ReferenceSpectra ref = reference_spectra(k, t);
    body += csv_row({format_double(t.real()), format_double(t.imag()), format_double(k),
                     format_double(ref.trivial_upper), format_double(ref.trivial_lower), opt(ref.theorem_value),
                     opt(ref.linear_zone), format_double(ref.hedenmalm), format_double(ref.disproved_conjecture),
                     to_string(integrability_region(k, t))});
  }
  return body;
}

std::string cmd_twist(const Invocation& inv) {
  const RunConfig& config = inv.config;
  const MapPtr map = require_disk_map(config);
  const TwistReport report = spiral_exponent(*map, config.twist_zeta, config.twist_j_max);
  const std::optional<double> k = reference_k(config, *map);
  const std::string gamma = format_double(report.gamma_hat);
  const std::string analytic = opt(report.analytic_gamma);
  const std::string bound = k ? format_double(dim_bound(*k, report.gamma_hat)) : "";
  const std::string converged = report.converged ? "true" : "false";

  std::string body = provenance(inv, "# ");
  body += csv_row({"j", "tau_j", "ratio_j", "gamma_hat", "analytic_gamma", "dim_bound", "converged"});
  for (const TwistLevel& level : report.levels) {
    body += csv_row({std::to_string(level.j), format_double(level.tau), format_double(level.ratio), gamma, analytic,
                     bound, converged});
  }
  return body;
}

std::string cmd_verify(const Invocation& inv) {
  const RunConfig& config = inv.config;
  std::vector<InvariantResult> results;
  if (config.map) {
    try {
      if (is_motion_family(config.map->family)) {
        const WeldedStretch m = build_motion(*config.map);
        results.push_back({"config", "map_admissible", true, config.map->family});
        for (auto& r : check_motion(m, config.seed)) results.push_back(std::move(r));
      } else {
        const MapPtr map = build_map(*config.map);
        results.push_back({"config", "map_admissible", true, config.map->family});
        if (map->domain() == Domain::UnitDisk) {
          for (auto& r : check_disk_map(*map, config.seed)) results.push_back(std::move(r));
        }
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError) throw;
      results.push_back({"config", "map_admissible", false, std::string("constructor rejected the map: ") + e.what()});
    }
  }
  VerifyOptions options;
  options.seed = config.seed;
  options.jobs = inv.jobs;
  for (auto& r : run_invariant_suite(options)) results.push_back(std::move(r));

  std::string body = provenance(inv, "# ");
  std::string first_failure;
  std::size_t passed = 0;
  for (const InvariantResult& r : results) {
    body += std::string(r.passed ? "PASS " : "FAIL ") + r.module + "." + r.name + " : " + r.detail + '\n';
    if (r.passed) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = r.module + "." + r.name;
    }
  }
  body += "# summary: " + std::to_string(passed) + "/" + std::to_string(results.size()) + " invariants pass\n";
  if (!first_failure.empty()) throw VerificationFailed{body, first_failure};
  return body;
}

RunConfig load_config(const std::string& path) {
  if (path.empty()) return parse_config("{}");
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read config file '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral means spectra, quasidisk regions and twisting estimates"};
  app.require_subcommand(1, 1);

  std::string config_path, out_path, format = "csv";
  unsigned jobs = default_jobs();
  std::uint64_t seed = 0;
  std::vector<CLI::Option*> seed_options;
  const char* names[][2] = {
      {"beta", "integral means spectrum estimates over a t-grid"},
      {"region", "boundary of the feasible region W_k"},
      {"verify", "run the invariant suites"},
      {"twist", "spiralling rate at a boundary point"},
      {"spectra", "reference spectrum curves for k over a t-grid"},
  };
  for (const auto& entry : names) {
    CLI::App* sub = app.add_subcommand(entry[0], entry[1]);
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_path, "output file (default: standard output)");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    seed_options.push_back(sub->add_option("--seed", seed, "override the configured seed"));
    sub->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  Invocation inv;
  inv.command = app.get_subcommands().front()->get_name();
  inv.format = format;
  inv.jobs = jobs;

  std::string body;
  int code = kExitPass;
  try {
    inv.config = load_config(config_path);
    for (const CLI::Option* o : seed_options) {
      if (o->count()) inv.config.seed = seed;
    }
    if (inv.format == "svg" && inv.command != "region") config_error("--format svg is only available for region");

    const std::map<std::string, std::function<std::string(const Invocation&)>> commands = {
        {"beta", cmd_beta}, {"region", cmd_region}, {"verify", cmd_verify}, {"twist", cmd_twist},
        {"spectra", cmd_spectra}};
    try {
      body = commands.at(inv.command)(inv);
    } catch (const VerificationFailed& failure) {
      body = failure.output;
      err << "verification failed: " << failure.first_failure << '\n';
      code = kExitVerifyFailure;
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == ErrorCode::ConfigError ? kExitConfigError : kExitNumericalFailure;
  }

  if (out_path.empty()) {
    out << body;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "cannot write '" << out_path << "'\n";
      return kExitConfigError;
    }
    file << body;
  }
  return code;
}

}  // namespace qdisk
