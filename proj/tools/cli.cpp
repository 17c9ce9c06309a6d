#include "cli.hpp"

#include "CLI11.hpp"
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include "json.hpp"
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "momlab/arith.hpp"
#include "momlab/cfkrs.hpp"
#include "momlab/empirical.hpp"
#include "momlab/errors.hpp"
#include "momlab/fit.hpp"
#include "momlab/rmt.hpp"

namespace momlab::cli {
namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  int k = 1;
  int beta = 1;
  std::vector<double> T_grid{1e4};
  std::vector<int> N_grid{20};
  double x = 50.0;
  std::vector<double> h;
  std::string method = "direct";
  std::string group = "unitary";
  bool exact = false;
  std::int64_t samples = 0;  // 0: command default
  std::uint64_t seed = 1;
  std::int64_t prime_cutoff = kDefaultPrimeCutoff;
  double abs_tol = 1e-8;
  double rel_tol = 1e-10;
  double window = 1.0;
  std::vector<double> scales;
  std::vector<double> values;
  std::string format = "csv";
  std::string out_path;

  json echo() const {
    return {{"command", command},   {"k", k},
            {"beta", beta},         {"T_grid", T_grid},
            {"N_grid", N_grid},     {"x", x},
            {"h", h},               {"method", method},
            {"group", group},       {"exact", exact},
            {"samples", samples},   {"seed", seed},
            {"prime_cutoff", prime_cutoff},
            {"tolerances", {{"abs", abs_tol}, {"rel", rel_tol}}},
            {"window", window},     {"scales", scales},
            {"values", values},     {"format", format},
            {"out", out_path}};
  }
};

struct Record {
  std::string command;
  int k = 0;
  int beta = 0;
  double scale = 0.0;
  double value = 0.0;
  std::optional<double> uncertainty;
  std::string method;
  std::optional<std::uint64_t> seed;
  json extra = json::object();
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_output(const RunConfig& cfg, const std::vector<Record>& records, const json& extra_meta,
                  std::ostream& out) {
  json meta = {{"schema", kSchema}, {"version", kVersion}, {"config", cfg.echo()}, {"timestamp", timestamp()}};
  for (const auto& [key, val] : extra_meta.items()) meta[key] = val;
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& r : records) {
      rows.push_back({{"command", r.command},
                      {"k", r.k},
                      {"beta", r.beta},
                      {"scale", r.scale},
                      {"value", r.value},
                      {"uncertainty", r.uncertainty ? json(*r.uncertainty) : json(nullptr)},
                      {"method", r.method},
                      {"seed", r.seed ? json(*r.seed) : json(nullptr)},
                      {"extra", r.extra}});
    }
    out << json{{"metadata", meta}, {"records", rows}}.dump(2) << "\n";
    return;
  }
  out << "# " << meta.dump() << "\n";
  out << "command,k,beta,scale,value,uncertainty,method,seed,extra\n";
  for (const auto& r : records) {
    out << csv_field(r.command) << ',' << r.k << ',' << r.beta << ',' << num(r.scale) << ',' << num(r.value) << ','
        << (r.uncertainty ? num(*r.uncertainty) : "") << ',' << csv_field(r.method) << ','
        << (r.seed ? std::to_string(*r.seed) : "") << ',' << csv_field(r.extra.dump()) << "\n";
  }
}

double X_of(double T) { return std::log(T / (2.0 * std::numbers::pi)); }

CfkrsConfig cfkrs_config(const RunConfig& cfg) {
  CfkrsConfig c;
  c.abs_tol = cfg.abs_tol;
  c.rel_tol = cfg.rel_tol;
  return c;
}

Record from_estimate(const std::string& command, const MomentEstimate& e) {
  Record r;
  r.command = command;
  r.k = e.params.k;
  r.beta = e.params.beta;
  r.scale = e.scale;
  r.value = e.value;
  r.method = e.method;
  if (e.std_error) {
    r.uncertainty = *e.std_error;
    r.seed = e.seed;
    r.extra["samples"] = e.samples;
  } else {
    r.uncertainty = e.quadrature_error;
  }
  return r;
}

json fit_json(const FitResult& f) {
  return {{"exponent", f.exponent}, {"log_coefficient", f.log_coefficient}, {"r_squared", f.r_squared}};
}

std::vector<double> default_shifts(int k) {
  std::vector<double> h;
  for (int j = 0; j < k; ++j) h.push_back((j + 0.5) / k);
  return h;
}

std::vector<Record> execute(RunConfig& cfg, json& meta) {
  const MomParams params{cfg.k, cfg.beta};
  std::vector<Record> records;
  const std::string& cmd = cfg.command;

  if (cmd == "zeta-mom") {
    EmpiricalConfig ec;
    ec.window = cfg.window;
    for (double T : cfg.T_grid) records.push_back(from_estimate(cmd, mom_zeta(params, T, cfg.samples, cfg.seed, ec)));
  } else if (cmd == "cfkrs-mom") {
    const auto cc = cfkrs_config(cfg);
    for (double T : cfg.T_grid) records.push_back(from_estimate(cmd, mom_p(params, T, cc)));
  } else if (cmd == "cfkrs-predict") {
    if (cfg.h.empty()) cfg.h = default_shifts(cfg.k);
    const auto cc = cfkrs_config(cfg);
    CfkrsValue v;
    if (cfg.method == "direct") {
      v = p_direct(params, cfg.x, cfg.h, cc);
    } else if (cfg.method == "decomposed") {
      v = p_decomposed(params, cfg.x, cfg.h, cc);
    } else {
      v = p_time_average(params, cfg.x, cfg.h, cc);
    }
    Record r{cmd, cfg.k, cfg.beta, cfg.x, v.value, v.refinement_delta, v.method, std::nullopt, json::object()};
    r.extra = {{"h", cfg.h}, {"imag", v.imag}, {"nodes", v.nodes}};
    records.push_back(r);
    meta["node_count"] = v.nodes;
  } else if (cmd == "rmt-mom") {
    const Symmetry g = parse_symmetry(cfg.group);
    for (int N : cfg.N_grid) {
      auto r = from_estimate(cmd, cfg.exact ? mom_group_exact(g, N, params) : mom_group(g, N, params, cfg.samples, cfg.seed));
      r.extra["group"] = to_string(g);
      if (params.k == 1 && g == Symmetry::unitary) r.extra["ks_exact"] = ks_exact(N, params.beta);
      records.push_back(r);
    }
  } else if (cmd == "arith-factor") {
    const auto a = a_zero(cfg.k, cfg.beta, cfg.prime_cutoff);
    Record r{cmd, cfg.k, cfg.beta, static_cast<double>(a.prime_cutoff), a.value.real(), a.tail_bound,
             "euler-product", std::nullopt, json::object()};
    r.extra = {{"tail_bound", a.tail_bound}, {"prime_cutoff", a.prime_cutoff}};
    records.push_back(r);
  } else if (cmd == "gamma-coeff") {
    const auto g = gamma_coeff(params, cfkrs_config(cfg));
    Record r{cmd, cfg.k, cfg.beta, 0.0, g.value, g.uncertainty, "gamma-kernel", std::nullopt, json::object()};
    r.extra = {{"imag", g.imag}, {"tail", g.tail}};
    records.push_back(r);
  } else if (cmd == "fit-exponent") {
    if (cfg.scales.size() != cfg.values.size()) throw DomainError("fit-exponent: --scales and --values differ in length");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < cfg.scales.size(); ++i) pts.emplace_back(cfg.scales[i], cfg.values[i]);
    const auto f = fit_power_law(pts);
    Record r{cmd, cfg.k, cfg.beta, cfg.scales.back(), f.exponent, std::nullopt, "log-log-least-squares",
             std::nullopt, fit_json(f)};
    r.extra["expected_exponent"] = expected_exponent(params, parse_symmetry(cfg.group));
    records.push_back(r);
  } else if (cmd == "compare") {
    const auto cc = cfkrs_config(cfg);
    EmpiricalConfig ec;
    ec.window = cfg.window;
    std::vector<std::pair<double, double>> emp;
    std::vector<std::pair<double, double>> pred;
    std::vector<std::pair<double, double>> lead;
    for (double T : cfg.T_grid) {
      const auto e = mom_zeta(params, T, cfg.samples, cfg.seed, ec);
      const auto p = mom_p(params, T, cc);
      const double l = leading_prediction(params, T, cc);
      auto r = from_estimate(cmd, e);
      r.extra["predictor"] = p.value;
      r.extra["predictor_error"] = p.quadrature_error;
      r.extra["leading_prediction"] = l;
      records.push_back(r);
      emp.emplace_back(X_of(T), e.value);
      pred.emplace_back(X_of(T), p.value);
      lead.emplace_back(X_of(T), l);
    }
    if (cfg.T_grid.size() >= 3) {
      const std::pair<const char*, const std::vector<std::pair<double, double>>*> columns[] = {
          {"empirical", &emp}, {"predictor", &pred}, {"leading_prediction", &lead}};
      for (const auto& [name, pts] : columns) {
        const auto f = fit_power_law(*pts);
        Record r{cmd, cfg.k, cfg.beta, cfg.T_grid.back(), f.exponent, std::nullopt,
                 std::string("fit:") + name, std::nullopt, fit_json(f)};
        r.extra["expected_exponent"] = params.exponent();
        r.extra["scale_variable"] = "log(T/2pi)";
        records.push_back(r);
      }
    }
  }
  return records;
}

const char* error_type(const std::exception& e) {
  if (dynamic_cast<const PoleError*>(&e)) return "PoleError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const RangeError*>(&e)) return "RangeError";
  if (dynamic_cast<const BudgetExhausted*>(&e)) return "BudgetExhausted";
  if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
  if (dynamic_cast<const ConsistencyError*>(&e)) return "ConsistencyError";
  return "Error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"mom-lab: moments of moments of zeta, the CFKRS predictor and random matrices"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "output encoding")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_path, "write records to this file instead of stdout");

  auto add_kb = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "number of shifts (moment order)")->check(CLI::Range(1, 4));
    sub->add_option("--beta", cfg.beta, "half the power of |zeta|")->check(CLI::Range(1, 6));
  };
  auto add_T = [&](CLI::App* sub) {
    auto* single = sub->add_option_function<double>("--T", [&](double t) { cfg.T_grid = {t}; }, "height T");
    sub->add_option("--T-grid", cfg.T_grid, "comma-separated heights")->delimiter(',')->excludes(single);
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--abs-tol", cfg.abs_tol, "contour absolute tolerance");
    sub->add_option("--rel-tol", cfg.rel_tol, "contour relative tolerance");
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "Monte-Carlo sample count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "RNG seed");
  };

  auto* zeta = app.add_subcommand("zeta-mom", "stratified Monte Carlo of mom over zeta windows");
  add_kb(zeta);
  add_T(zeta);
  add_mc(zeta);
  zeta->add_option("--window", cfg.window, "inner window length")->check(CLI::PositiveNumber);

  auto* cmom = app.add_subcommand("cfkrs-mom", "mom of the CFKRS predictor");
  add_kb(cmom);
  add_T(cmom);
  add_tol(cmom);

  auto* cpred = app.add_subcommand("cfkrs-predict", "P_{k,beta}(x; h)");
  add_kb(cpred);
  add_tol(cpred);
  cpred->add_option("--x", cfg.x, "log(t/2pi), or log(T/2pi) for time-average");
  cpred->add_option("--shifts", cfg.h, "comma-separated shifts h")->delimiter(',');
  cpred->add_option("--method", cfg.method, "evaluator")
      ->check(CLI::IsMember({"direct", "decomposed", "time-average"}));

  auto* rmt = app.add_subcommand("rmt-mom", "mom over a classical compact group");
  add_kb(rmt);
  rmt->add_option("--group", cfg.group, "unitary, symplectic or orthogonal");
  auto* n_single = rmt->add_option_function<int>("--N", [&](int n) { cfg.N_grid = {n}; }, "matrix rank");
  rmt->add_option("--N-grid", cfg.N_grid, "comma-separated ranks")->delimiter(',')->excludes(n_single);
  rmt->add_flag("--exact", cfg.exact, "use the Heine determinant evaluator (k <= 2)");
  add_mc(rmt);

  auto* arith = app.add_subcommand("arith-factor", "arithmetic factor at the origin");
  add_kb(arith);
  arith->add_option("--prime-cutoff", cfg.prime_cutoff, "largest prime in the Euler product");

  auto* gamma = app.add_subcommand("gamma-coeff", "non-arithmetic leading coefficient");
  add_kb(gamma);
  add_tol(gamma);

  auto* fitc = app.add_subcommand("fit-exponent", "log-log power-law fit");
  add_kb(fitc);
  fitc->add_option("--scales", cfg.scales, "comma-separated scales")->delimiter(',')->required();
  fitc->add_option("--values", cfg.values, "comma-separated values")->delimiter(',')->required();
  fitc->add_option("--group", cfg.group, "symmetry for the expected exponent");

  auto* cmp = app.add_subcommand("compare", "empirical vs predictor vs leading term");
  add_kb(cmp);
  add_T(cmp);
  add_tol(cmp);
  cmp->add_option("--samples", cfg.samples, "Monte-Carlo sample count")->check(CLI::PositiveNumber);
  cmp->add_option("--seed", cfg.seed, "RNG seed");
  cmp->add_option("--window", cfg.window, "inner window length")->check(CLI::PositiveNumber);
  cmp->callback([&] {
    if (cmp->count("--T") + cmp->count("--T-grid") == 0) cfg.T_grid = {1e3, 3e3, 1e4};
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.samples == 0) cfg.samples = cfg.command == "rmt-mom" ? 10000 : 1000;
  if (cfg.command == "rmt-mom" || cfg.command == "fit-exponent") {
    try {
      parse_symmetry(cfg.group);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n" << app.help();
      return 2;
    }
  }

  try {
    json meta = json::object();
    const auto records = execute(cfg, meta);
    if (cfg.out_path.empty()) {
      write_output(cfg, records, meta, out);
    } else {
      std::ofstream file(cfg.out_path);
      if (!file) throw RangeError("cannot open output file " + cfg.out_path);
      write_output(cfg, records, meta, file);
    }
  } catch (const Error& e) {
    err << json{{"error", {{"type", error_type(e)}, {"message", e.what()}, {"command", cfg.command}}}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace momlab::cli
