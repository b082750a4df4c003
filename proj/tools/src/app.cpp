#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "scatter/error.hpp"
#include "scatter/quantum_mean.hpp"
#include "scatter/unitary.hpp"
#include "scatter_cli/cli.hpp"

namespace scatter::cli {
namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kWarn = 2;

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::Usage, message); }

struct PotentialArgs {
  std::string potential = "square";
  double G = 1.0, R = 1.0;
  int N = 2;

  void attach(CLI::App* app) {
    app->add_option("--potential", potential, "square | singular | yukawa | JSON object | JSON file")
        ->capture_default_str();
    app->add_option("--G", G, "coupling constant");
    app->add_option("--R", R, "square barrier radius");
    app->add_option("--N", N, "singular exponent");
  }

  Potential resolve(const CLI::App* app) const {
    return parse_potential(potential, app->count("--G") ? std::optional(G) : std::nullopt,
                           app->count("--R") ? std::optional(R) : std::nullopt,
                           app->count("--N") ? std::optional(N) : std::nullopt);
  }
};

struct OutputArgs {
  std::string out;
  std::string format = "csv";

  void attach(CLI::App* app, bool with_format) {
    app->add_option("--out", out, "output file (default: stdout)");
    if (with_format)
      app->add_option("--format", format, "csv | json")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
  }

  void emit(const std::string& text, std::ostream& fallback) const {
    if (out.empty()) {
      fallback << text;
      return;
    }
    std::ofstream f(out);
    if (!f) usage("cannot open output file '" + out + "'");
    f << text;
  }

  void emit_table(const Table& t, const json& config, std::ostream& fallback) const {
    if (format == "json") {
      emit(table_json(t, config).dump(2) + "\n", fallback);
    } else {
      std::ostringstream os;
      write_csv(t, os);
      emit(os.str(), fallback);
    }
  }
};

struct McArgs {
  mc::McConfig cfg;
  std::string tail = "closure";

  void attach(CLI::App* app) {
    app->add_option("--paths", cfg.n_paths, "paths per radial node")->capture_default_str();
    app->add_option("--dnu", cfg.d_nu, "time step")->capture_default_str();
    app->add_option("--numax", cfg.nu_max, "time horizon")->capture_default_str();
    app->add_option("--seed", cfg.seed, "stream seed")->capture_default_str();
    app->add_flag("--antithetic,!--no-antithetic", cfg.antithetic, "antithetic path pairs");
    app->add_option("--threads", cfg.threads, "worker threads (0: hardware)");
    app->add_option("--batches", cfg.batches, "jackknife batches")->capture_default_str();
    app->add_option("--tail", tail, "closure | truncate")
        ->check(CLI::IsMember({"closure", "truncate"}))
        ->capture_default_str();
  }

  json config() const {
    return {{"n_paths", cfg.n_paths}, {"d_nu", cfg.d_nu},       {"nu_max", cfg.nu_max},
            {"seed", cfg.seed},       {"antithetic", cfg.antithetic}, {"threads", cfg.threads},
            {"batches", cfg.batches}, {"tail", tail}};
  }
};

json error_json(const ErrorInfo& info) {
  return {{"error", {{"code", info.code}, {"message", info.message}}}};
}

json calibration_error_json(const CalibrationError& e) {
  json j = error_json({std::string(to_string(e.code())), e.what()});
  json scan = json::array();
  for (const auto& s : e.scan()) scan.push_back({s.k_c, s.residual});
  j["error"]["scan"] = scan;
  return j;
}

int table_status(const Table& t) { return t.error_count() > 0 ? kWarn : kOk; }

std::vector<double> grid_or(const std::string& text, const std::string& fallback) {
  return parse_grid(text.empty() ? fallback : text);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scattering lengths, amplitudes and cross sections for repulsive potentials", "scatter_cli"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  PotentialArgs pot_args;
  OutputArgs out_args;
  McArgs mc_args;
  std::string grid, schemes, sweep = "G", variant;
  double b = 1.0, kc = 0.0, k = 1.0, rel_tol = 1e-9, r = 0.0;
  int figure_id = 0;
  CLI::Option *kc_opt = nullptr, *r_opt = nullptr;

  auto* length = app.add_subcommand("length", "scattering length over a sweep");
  pot_args.attach(length);
  out_args.attach(length, true);
  mc_args.attach(length);
  length->add_option("--sweep", sweep, "G | b | N")->check(CLI::IsMember({"G", "b", "N"}))->capture_default_str();
  length->add_option("--grid", grid, "lo:hi:n[:log]");
  length->add_option("--scheme", schemes, "comma list of schemes");
  length->add_option("--b", b, "Brownian spread factor")->capture_default_str();

  auto* xsec = app.add_subcommand("xsec", "total cross section over a momentum grid");
  pot_args.attach(xsec);
  out_args.attach(xsec, true);
  xsec->add_option("--grid", grid, "k grid lo:hi:n[:log]");
  xsec->add_option("--scheme", schemes, "comma list of schemes");
  xsec->add_option("--b", b, "Brownian spread factor")->capture_default_str();
  auto* xsec_kc = xsec->add_option("--kc", kc, "fixed calibration scale (skips the solve)");
  xsec->add_option("--rel-tol", rel_tol, "relative tolerance")->capture_default_str();

  auto* amp = app.add_subcommand("amp", "scattering amplitude over an angle grid");
  pot_args.attach(amp);
  out_args.attach(amp, true);
  amp->add_option("--k", k, "momentum")->capture_default_str();
  amp->add_option("--grid", grid, "theta grid lo:hi:n[:log]");
  amp->add_option("--scheme", schemes, "comma list of schemes");
  amp->add_option("--b", b, "Brownian spread factor")->capture_default_str();
  auto* amp_kc = amp->add_option("--kc", kc, "fixed calibration scale (skips the solve)");
  amp->add_option("--rel-tol", rel_tol, "relative tolerance");

  auto* calibrate = app.add_subcommand("calibrate", "solve a calibration equation for k_c");
  pot_args.attach(calibrate);
  out_args.attach(calibrate, false);
  calibrate->add_option("--variant", variant, "amplitude | sigma | unitary")
      ->required()
      ->check(CLI::IsMember({"amplitude", "sigma", "unitary"}));
  calibrate->add_option("--b", b, "Brownian spread factor")->capture_default_str();

  auto* mc_cmd = app.add_subcommand("mc", "Brownian-path Monte Carlo estimate");
  pot_args.attach(mc_cmd);
  out_args.attach(mc_cmd, false);
  mc_args.attach(mc_cmd);
  r_opt = mc_cmd->add_option("--r", r, "estimate <exp(Phi(r))> at this radius instead of the length");

  auto* figure = app.add_subcommand("figure", "write figure data as CSV");
  figure->add_option("id", figure_id, "figure id 1..8")->required();
  figure->add_option("--grid", grid, "override the sweep axis");
  std::string figure_dir = ".";
  figure->add_option("--out", figure_dir, "output directory")->capture_default_str();

  auto* exact_cmd = app.add_subcommand("exact", "partial-wave phase shifts at one momentum");
  pot_args.attach(exact_cmd);
  out_args.attach(exact_cmd, true);
  exact_cmd->add_option("--k", k, "momentum")->required();

  auto* specfun_cmd = app.add_subcommand("specfun-check", "special functions against references");
  specfun_cmd->group("");
  out_args.attach(specfun_cmd, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << error_json({"usage_error", e.what()}).dump() << "\n";
    return kError;
  }
  kc_opt = xsec->parsed() ? xsec_kc : amp_kc;

  try {
    if (length->parsed()) {
      LengthRequest req;
      req.base = pot_args.resolve(length);
      req.sweep = sweep == "G" ? Sweep::G : sweep == "b" ? Sweep::b : Sweep::N;
      const char* fallback = sweep == "G" ? "0.5:50:20:log" : sweep == "b" ? "0.5:1:11" : "2:40:39";
      req.grid = grid_or(grid, fallback);
      req.schemes = parse_schemes(schemes.empty() ? "qma,exact" : schemes);
      req.b = b;
      req.mc = mc_args.cfg;
      const Table t = length_table(req);
      json config = {{"command", "length"},
                     {"potential", potential_json(req.base)},
                     {"sweep", {{"variable", sweep}, {"grid", req.grid}}},
                     {"schemes", req.schemes},
                     {"b", b}};
      if (std::find(req.schemes.begin(), req.schemes.end(), "mc") != req.schemes.end())
        config["mc"] = mc_args.config();
      out_args.emit_table(t, config, out);
      return table_status(t);
    }
    if (xsec->parsed()) {
      XsecRequest req;
      req.pot = pot_args.resolve(xsec);
      req.k = grid_or(grid, "0.01:10:30:log");
      req.schemes = parse_schemes(schemes.empty() ? "qma,exact" : schemes);
      req.b = b;
      if (kc_opt->count()) req.kc = kc;
      req.rel_tol = rel_tol;
      const Table t = xsec_table(req);
      json config = {{"command", "xsec"},   {"potential", potential_json(req.pot)},
                     {"sweep", {{"variable", "k"}, {"grid", req.k}}},
                     {"schemes", req.schemes}, {"b", b},
                     {"kc", req.kc ? json(*req.kc) : json(nullptr)}, {"rel_tol", rel_tol}};
      out_args.emit_table(t, config, out);
      return table_status(t);
    }
    if (amp->parsed()) {
      AmpRequest req;
      req.pot = pot_args.resolve(amp);
      req.k = k;
      req.theta = grid_or(grid, "0:" + std::to_string(std::numbers::pi) + ":19");
      req.schemes = parse_schemes(schemes.empty() ? "eikonal" : schemes);
      req.b = b;
      if (kc_opt->count()) req.kc = kc;
      if (amp->count("--rel-tol")) req.rel_tol = rel_tol;
      const Table t = amp_table(req);
      json config = {{"command", "amp"},   {"potential", potential_json(req.pot)}, {"k", k},
                     {"sweep", {{"variable", "theta"}, {"grid", req.theta}}},
                     {"schemes", req.schemes}, {"b", b},
                     {"kc", req.kc ? json(*req.kc) : json(nullptr)}, {"rel_tol", req.rel_tol}};
      out_args.emit_table(t, config, out);
      return table_status(t);
    }
    if (calibrate->parsed()) {
      const Potential pot = pot_args.resolve(calibrate);
      json rec;
      try {
        if (variant == "unitary") {
          const auto sol = unitary::solve_unitary(pot);
          rec = {{"k_c", sol.k_c},
                 {"residual", sol.residual},
                 {"candidates", sol.candidates},
                 {"scattering_length", sol.scattering_length},
                 {"forward_amplitude", sol.forward_amplitude},
                 {"threshold", sol.threshold}};
        } else {
          const auto cal = variant == "amplitude" ? qma::calibrate_kc_amplitude(pot, b)
                                                  : qma::calibrate_kc_sigma(pot, b);
          rec = {{"k_c", cal.k_c}, {"residual", cal.residual}, {"candidates", cal.candidates}};
        }
      } catch (const CalibrationError& e) {
        err << calibration_error_json(e).dump() << "\n";
        return kError;
      }
      rec["variant"] = variant;
      rec["config"] = {{"command", "calibrate"}, {"potential", potential_json(pot)}, {"variant", variant}};
      if (variant != "unitary") rec["config"]["b"] = b;
      out_args.emit(rec.dump(2) + "\n", out);
      return kOk;
    }
    if (mc_cmd->parsed()) {
      const Potential pot = pot_args.resolve(mc_cmd);
      json rec;
      mc::McEstimate est;
      if (r_opt->count()) {
        est = mc::mc_phi(pot, r, mc_args.cfg);
        rec["r"] = r;
      } else {
        const auto res = mc::mc_scattering_length(
            pot, mc_args.cfg,
            mc_args.tail == "closure" ? mc::TailTreatment::Closure : mc::TailTreatment::Truncate);
        est = res.estimate;
        json nodes = json::array();
        for (const auto& n : res.nodes)
          nodes.push_back({{"r", n.r}, {"weight", n.weight}, {"psi", n.psi},
                           {"psi_stderr", n.psi_std_error}, {"ess", n.ess}});
        rec["nodes"] = nodes;
      }
      rec["mean"] = est.mean;
      rec["stderr"] = est.std_error;
      rec["ess"] = est.ess;
      rec["zero_weights"] = est.zero_weights;
      rec["config"] = mc_args.config();
      rec["config"]["command"] = "mc";
      rec["config"]["potential"] = potential_json(pot);
      json warnings = json::array();
      if (est.ess < 100.0)
        warnings.push_back({{"code", "low_ess"}, {"message", "effective sample size below 100"}});
      rec["warnings"] = warnings;
      out_args.emit(rec.dump(2) + "\n", out);
      return warnings.empty() ? kOk : kWarn;
    }
    if (figure->parsed()) {
      FigureOptions fo;
      if (!grid.empty()) fo.grid = parse_grid(grid);
      const Table t = figure_table(figure_id, fo);
      std::filesystem::create_directories(figure_dir);
      const auto path = std::filesystem::path(figure_dir) / ("figure" + std::to_string(figure_id) + ".csv");
      std::ofstream f(path);
      if (!f) usage("cannot open output file '" + path.string() + "'");
      write_csv(t, f);
      json summary = {{"figure", figure_id}, {"file", path.string()},
                      {"rows", t.rows.size()},  {"errors", t.error_count()}};
      out << summary.dump() << "\n";
      return table_status(t);
    }
    if (exact_cmd->parsed()) {
      const Potential pot = pot_args.resolve(exact_cmd);
      const Table t = phase_shift_table(pot, k);
      out_args.emit_table(t, {{"command", "exact"}, {"potential", potential_json(pot)}, {"k", k}}, out);
      return kOk;
    }
    if (specfun_cmd->parsed()) {
      const json rep = specfun_report();
      out_args.emit(rep.dump(2) + "\n", out);
      return rep["max_rel_error"].get<double>() <= 1e-12 ? kOk : kWarn;
    }
  } catch (...) {
    err << error_json(describe_current_exception()).dump() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace scatter::cli
