#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nakamoto/decision.hpp"
#include "nakamoto/errors.hpp"
#include "nakamoto/simulator.hpp"

namespace nakamoto::cli {
namespace {

using nlohmann::ordered_json;

constexpr const char* kSeedEnv = "NAKAMOTO_PROFIT_SEED";
constexpr std::uint64_t kDefaultSeed = 1;

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::stod(fmt12(x)); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  const double x = std::stod(trim(s), &used);
  if (used != trim(s).size()) throw std::invalid_argument("not a number: " + s);
  return x;
}

const char* variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::q: return "q";
    case SweepVariable::A: return "A";
    case SweepVariable::z: return "z";
    case SweepVariable::v: return "v";
  }
  return "?";
}

const char* output_column(SweepOutput o) {
  switch (o) {
    case SweepOutput::P: return "P";
    case SweepOutput::E_R: return "E_R_over_b";
    case SweepOutput::E_T: return "E_T_over_tau0";
    case SweepOutput::Gamma: return "Gamma";
    case SweepOutput::Gamma_H: return "Gamma_H";
  }
  return "?";
}

double pick(const model::ClosedFormReport& r, SweepOutput o) {
  switch (o) {
    case SweepOutput::P: return r.p_success;
    case SweepOutput::E_R: return r.e_revenue_b;
    case SweepOutput::E_T: return r.e_duration_tau0;
    case SweepOutput::Gamma: return r.gamma_attack;
    case SweepOutput::Gamma_H: return r.gamma_honest;
  }
  return 0.0;
}

std::int64_t as_integer(double x, const char* what) {
  if (std::floor(x) != x) throw DomainError(std::string(what) + " must be an integer");
  return static_cast<std::int64_t>(x);
}

ordered_json report_json(const model::AttackParams& p, const model::ClosedFormReport& r) {
  ordered_json j;
  j["q"] = p.q;
  j["z"] = p.z;
  j["A"] = p.A;
  j["v"] = p.v;
  j["b"] = p.b;
  j["tau0"] = p.tau0;
  j["p_success"] = r.p_success;
  j["e_revenue_b"] = r.e_revenue_b;
  j["e_duration_tau0"] = r.e_duration_tau0;
  j["gamma_attack"] = r.gamma_attack;
  j["gamma_honest"] = r.gamma_honest;
  j["profitable"] = r.profitable;
  return j;
}

ordered_json estimate_json(const model::AsymptoticEstimate& e) {
  return {{"estimate", e.estimate}, {"exact", e.exact}, {"relative_gap", e.relative_gap}};
}

void print_text(std::ostream& out, const ordered_json& j, int indent = 0) {
  std::size_t width = 0;
  for (const auto& [k, _] : j.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : j.items()) {
    out << std::string(indent, ' ') << std::left << std::setw(static_cast<int>(width) + 2) << k;
    if (v.is_object()) {
      out << '\n';
      print_text(out, v, indent + 2);
    } else if (v.is_number_float()) {
      out << fmt12(v.get<double>()) << '\n';
    } else {
      out << v.dump() << '\n';
    }
  }
}

void emit(std::ostream& out, const ordered_json& j, const std::string& format) {
  if (format == "text") {
    print_text(out, j);
  } else {
    out << j.dump(2) << '\n';
  }
}

void add_attack_flags(CLI::App* cmd, model::AttackParams& p) {
  cmd->add_option("--q", p.q, "attacker relative hashrate, in (0, 1/2)")->capture_default_str();
  cmd->add_option("--z", p.z, "confirmations requested by the merchant")->capture_default_str();
  cmd->add_option("--A", p.A, "give-up lag threshold, A >= z")->capture_default_str();
  cmd->add_option("--v", p.v, "double-spend value in coinbase units")->capture_default_str();
  cmd->add_option("--b", p.b, "coinbase reward (display only)")->capture_default_str();
  cmd->add_option("--tau0", p.tau0, "mean inter-block time in seconds (display only)")
      ->capture_default_str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    std::size_t used = 0;
    const auto s = std::stoull(env, &used);
    if (env[used] != '\0') throw std::invalid_argument(std::string(kSeedEnv) + " is not an integer");
    return s;
  }
  return kDefaultSeed;
}

int cmd_compute(const model::AttackParams& p, bool with_asymptotics, std::optional<double> price,
                const std::string& format, std::ostream& out) {
  const auto report = model::evaluate(p);
  auto j = report_json(p, report);
  j["e_revenue_coins"] = report.e_revenue_b * p.b;
  j["e_duration_seconds"] = report.e_duration_tau0 * p.tau0;
  if (price) j["e_revenue_fiat"] = report.e_revenue_b * p.b * *price;
  if (with_asymptotics) {
    const auto a = model::asymptotics(p);
    ordered_json aj;
    for (const auto* e : {&a.p_inf_large_z, &a.p_inf_small_q, &a.revenue_small_q,
                          &a.duration_small_q, &a.gamma_small_q, &a.duration_large_A,
                          &a.revenue_large_A}) {
      aj[e->name] = estimate_json(*e);
    }
    j["asymptotics"] = aj;
  }
  emit(out, j, format);
  return kOk;
}

int cmd_simulate(const model::AttackParams& p, std::uint64_t cycles, std::uint64_t seed,
                 unsigned threads, const std::string& format, std::ostream& out) {
  p.validate();
  if (cycles < 1) throw DomainError("cycles must be >= 1");
  const auto exact = model::evaluate(p);
  const auto batch = simulator::run_batch({p, cycles, seed, threads});

  ordered_json j;
  j["q"] = p.q;
  j["z"] = p.z;
  j["A"] = p.A;
  j["v"] = p.v;
  j["cycles"] = cycles;
  j["seed"] = seed;
  j["std_error_available"] = cycles >= 2;
  auto row = [&](const simulator::MonteCarloEstimate& e, double truth) {
    ordered_json r;
    r["estimate"] = e.mean;
    r["exact"] = truth;
    if (e.std_error) {
      r["std_error"] = *e.std_error;
      r["z_score"] = *e.std_error > 0.0 ? (e.mean - truth) / *e.std_error : 0.0;
    } else {
      r["std_error"] = nullptr;
      r["z_score"] = nullptr;
    }
    return r;
  };
  j["p_success"] = row(batch.p_success, exact.p_success);
  j["revenue_b"] = row(batch.revenue_b, exact.e_revenue_b);
  j["duration_tau0"] = row(batch.duration_tau0, exact.e_duration_tau0);
  j["gamma"] = {{"estimate", batch.gamma_estimate}, {"exact", exact.gamma_attack}};

  if (format == "text") {
    out << "simulated " << cycles << " cycles, seed " << seed << ", q=" << fmt12(p.q)
        << " z=" << p.z << " A=" << p.A << " v=" << fmt12(p.v) << '\n';
    out << std::left << std::setw(16) << "quantity" << std::setw(20) << "estimate"
        << std::setw(20) << "std_error" << std::setw(20) << "exact"
        << "z_score\n";
    for (const char* key : {"p_success", "revenue_b", "duration_tau0"}) {
      const auto& r = j[key];
      out << std::setw(16) << key << std::setw(20) << fmt12(r["estimate"].get<double>())
          << std::setw(20) << (r["std_error"].is_null() ? "n/a" : fmt12(r["std_error"].get<double>()))
          << std::setw(20) << fmt12(r["exact"].get<double>())
          << (r["z_score"].is_null() ? "n/a" : fmt12(r["z_score"].get<double>())) << '\n';
    }
    out << std::setw(16) << "gamma" << std::setw(20) << fmt12(batch.gamma_estimate)
        << std::setw(20) << "" << std::setw(20) << fmt12(exact.gamma_attack) << '\n';
    if (cycles < 2) out << "note: standard errors need at least 2 cycles\n";
  } else {
    out << j.dump(2) << '\n';
  }
  return kOk;
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("range step must be > 0");
    const double slack = step * 1e-9;
    for (std::int64_t i = 0;; ++i) {
      const double x = start + static_cast<double>(i) * step;
      if (x > stop + slack) break;
      values.push_back(round12(x));
    }
  } else {
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!trim(item).empty()) values.push_back(round12(parse_number(item)));
    }
  }
  if (values.empty()) throw std::invalid_argument("empty range: " + text);
  return values;
}

SweepVariable parse_variable(const std::string& name) {
  if (name == "q") return SweepVariable::q;
  if (name == "A") return SweepVariable::A;
  if (name == "z") return SweepVariable::z;
  if (name == "v") return SweepVariable::v;
  throw std::invalid_argument("unknown sweep variable: " + name);
}

std::vector<SweepOutput> parse_outputs(const std::string& list) {
  std::vector<SweepOutput> outs;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (item == "P") outs.push_back(SweepOutput::P);
    else if (item == "E_R") outs.push_back(SweepOutput::E_R);
    else if (item == "E_T") outs.push_back(SweepOutput::E_T);
    else if (item == "Gamma") outs.push_back(SweepOutput::Gamma);
    else if (item == "Gamma_H") outs.push_back(SweepOutput::Gamma_H);
    else throw std::invalid_argument("unknown output: " + item);
  }
  if (outs.empty()) throw std::invalid_argument("no outputs selected");
  return outs;
}

void write_sweep_csv(const SweepSpec& spec, std::ostream& out) {
  if (spec.values.empty()) throw std::invalid_argument("empty sweep range");
  // Validate the whole grid before printing anything.
  std::vector<model::AttackParams> grid;
  grid.reserve(spec.values.size());
  for (double x : spec.values) {
    auto p = spec.fixed;
    switch (spec.variable) {
      case SweepVariable::q: p.q = x; break;
      case SweepVariable::A: p.A = as_integer(x, "A"); break;
      case SweepVariable::z: p.z = as_integer(x, "z"); break;
      case SweepVariable::v: p.v = x; break;
    }
    p.validate();
    grid.push_back(p);
  }

  out << variable_name(spec.variable);
  for (auto o : spec.outputs) out << ',' << output_column(o);
  out << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto r = model::evaluate(grid[i]);
    out << fmt12(spec.values[i]);
    for (auto o : spec.outputs) out << ',' << fmt12(pick(r, o));
    out << '\n';
  }
}

void write_figure_csv(int figure, std::ostream& out) {
  if (figure < 1 || figure > 3) throw std::invalid_argument("figure must be 1, 2 or 3");
  constexpr std::int64_t z = 2;
  constexpr double v = 1.0;
  const std::int64_t thresholds[] = {3, 5, 10};
  const auto qs = parse_range("0.01:0.49:0.01");

  const char* column = figure == 1 ? "P" : figure == 2 ? "E_R_over_b" : "Gamma";
  out << 'q';
  for (auto A : thresholds) out << ',' << column << "_A" << A;
  if (figure == 1) out << ",P_inf";
  if (figure == 3) out << ",Gamma_H";
  out << '\n';

  for (double q : qs) {
    const model::NakamotoModel m(q, z);
    out << fmt12(q);
    for (auto A : thresholds) {
      const auto r = m.report(A, v);
      const double value = figure == 1 ? r.p_success : figure == 2 ? r.e_revenue_b : r.gamma_attack;
      out << ',' << fmt12(value);
    }
    if (figure == 1) out << ',' << fmt12(m.success_probability_inf());
    if (figure == 3) out << ',' << fmt12(model::honest_revenue_ratio(q));
    out << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Profitability of the (A,1) Nakamoto double-spend attack", "nakamoto-profit"};
  app.require_subcommand(1);

  model::AttackParams params;
  std::string format = "json";

  auto* compute = app.add_subcommand("compute", "closed-form success probability, revenue, duration");
  add_attack_flags(compute, params);
  bool with_asymptotics = false;
  std::optional<double> price;
  compute->add_flag("--asymptotics", with_asymptotics, "include asymptotic estimates");
  compute->add_option("--price", price, "fiat price of one coin (display only)");
  compute->add_option("--format", format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate compared with the closed form");
  add_attack_flags(simulate, params);
  std::uint64_t cycles = 1000000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  simulate->add_option("--cycles", cycles, "number of attack cycles")->capture_default_str();
  simulate->add_option("--seed", seed, std::string("root seed (fallback: ") + kSeedEnv + ")");
  simulate->add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();
  simulate->add_option("--format", format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "CSV sweep of closed-form quantities");
  add_attack_flags(sweep, params);
  int figure = 0;
  std::string variable = "q";
  std::string range = "0.01:0.49:0.01";
  std::string outputs = "P,E_R,E_T,Gamma,Gamma_H";
  sweep->add_option("--figure", figure, "preset reproducing figure 1, 2 or 3")
      ->check(CLI::Range(1, 3));
  sweep->add_option("--variable", variable, "swept variable: q, A, z or v")
      ->check(CLI::IsMember({"q", "A", "z", "v"}))
      ->capture_default_str();
  sweep->add_option("--range", range, "start:stop:step or comma list")->capture_default_str();
  sweep->add_option("--outputs", outputs, "subset of P,E_R,E_T,Gamma,Gamma_H")->capture_default_str();

  auto* decide = app.add_subcommand("decide", "inverse and optimisation queries");
  decide->require_subcommand(1);
  std::int64_t a_max = 0;
  std::int64_t z_max = 100;

  auto* min_value = decide->add_subcommand("min-value", "minimal profitable double-spend value");
  min_value->add_option("--q", params.q)->capture_default_str();
  min_value->add_option("--z", params.z)->capture_default_str();
  min_value->add_option("--A-max", a_max, "threshold search cap (default 10 z + 100)");

  auto* min_conf = decide->add_subcommand("min-confirmations", "minimal safe confirmation count");
  min_conf->add_option("--q", params.q)->capture_default_str();
  min_conf->add_option("--v", params.v)->capture_default_str();
  min_conf->add_option("--z-max", z_max)->capture_default_str();

  auto* optimal = decide->add_subcommand("optimal-A", "give-up threshold maximising the revenue ratio");
  optimal->add_option("--q", params.q)->capture_default_str();
  optimal->add_option("--z", params.z)->capture_default_str();
  optimal->add_option("--v", params.v)->capture_default_str();
  optimal->add_option("--A-max", a_max, "threshold search cap (default 10 z + 100)");

  std::vector<std::string> argv_store{"nakamoto-profit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*compute) return cmd_compute(params, with_asymptotics, price, format, out);
    if (*simulate) return cmd_simulate(params, cycles, resolve_seed(seed), threads, format, out);
    if (*sweep) {
      if (figure != 0) {
        write_figure_csv(figure, out);
        return kOk;
      }
      SweepSpec spec;
      spec.variable = parse_variable(variable);
      spec.values = parse_range(range);
      spec.fixed = params;
      spec.outputs = parse_outputs(outputs);
      std::ostringstream buffer;
      write_sweep_csv(spec, buffer);
      out << buffer.str();
      return kOk;
    }
    if (*min_value) {
      const std::int64_t cap = a_max != 0 ? a_max : 10 * params.z + 100;
      const double asym = decision::min_profitable_value_asymptotic(params.q, params.z);
      const auto exact = decision::min_profitable_value_over_threshold(params.q, params.z, cap);
      ordered_json j;
      j["q"] = params.q;
      j["z"] = params.z;
      j["asymptotic"] = asym;
      j["exact"] = exact.value;
      j["exact_A"] = exact.A;
      j["A_max"] = cap;
      j["relative_gap"] = std::abs(exact.value - asym) / asym;
      out << j.dump(2) << '\n';
      return kOk;
    }
    if (*min_conf) {
      const auto r = decision::min_safe_confirmations({params.q, params.v, z_max});
      ordered_json j;
      j["q"] = params.q;
      j["v"] = params.v;
      j["z_max"] = z_max;
      j["min_confirmations"] = r.z;
      j["found"] = r.found;
      j["best_attacker_gamma"] = r.found ? ordered_json(r.best_gamma) : ordered_json(nullptr);
      j["gamma_honest"] = model::honest_revenue_ratio(params.q);
      out << j.dump(2) << '\n';
      return kOk;
    }
    if (*optimal) {
      const auto r = decision::optimal_threshold({params.q, params.z, params.v, a_max});
      ordered_json j;
      j["q"] = params.q;
      j["z"] = params.z;
      j["v"] = params.v;
      j["A0"] = r.A0;
      j["gamma_at_A0"] = r.gamma_at_A0;
      j["gamma_honest"] = model::honest_revenue_ratio(params.q);
      j["A_max_searched"] = r.A_max_searched;
      out << j.dump(2) << '\n';
      return kOk;
    }
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const UnsatisfiableError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const SearchBoundError& e) {
    err << "search bound error: " << e.what() << '\n';
    return kSearchBound;
  } catch (const IntegrityError& e) {
    err << "computational integrity error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace nakamoto::cli
