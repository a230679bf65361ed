// ksz: command-line front end.
//
//   ksz norms {weak|marcinkiewicz|orlicz-seq|l-hn|k-functional} < input.json
//   ksz lift --input dirichlet.json [--stats-only]
//   ksz experiment run --config cfg.json --out report.json [--csv report.csv]
//                      [--threads T] [--seed S] [--check]
//   ksz experiment suite --out dir/ [--seed S] [--threads T] [--check]
//
// Exit codes: 0 success, 2 invalid input, 3 budget exceeded, 4 band
// violation (with --check).

#include <omp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ksz/dirichlet.hpp"
#include "ksz/error.hpp"
#include "ksz/harness.hpp"
#include "ksz/interp.hpp"
#include "ksz/norms.hpp"
#include "ksz/report_io.hpp"

namespace {

using nlohmann::json;
using ksz::cplx;

constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;
constexpr int kExitBand = 4;

cplx scalar_from(const json& v) {
  if (v.is_number()) return v.get<double>();
  ksz::require(v.is_array() && v.size() == 2, "complex entries are numbers or [re, im] pairs");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<cplx> vector_from(const json& j, const char* key) {
  ksz::require(j.contains(key) && j.at(key).is_array(), std::string("input needs an array '") + key + "'");
  std::vector<cplx> out;
  for (const auto& v : j.at(key)) out.push_back(scalar_from(v));
  return out;
}

double number_from(const json& j, const char* key) {
  ksz::require(j.contains(key) && j.at(key).is_number(), std::string("input needs a number '") + key + "'");
  return j.at(key).get<double>();
}

json read_stdin_json() {
  const std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ksz::InvalidArgument(std::string("invalid JSON on stdin: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  ksz::require(static_cast<bool>(in), "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

double run_norm(const std::string& which, const json& in) {
  if (which == "weak") return ksz::weak_norm(vector_from(in, "x"), number_from(in, "q"));
  if (which == "marcinkiewicz") {
    const auto w = in.at("w").get<std::vector<double>>();
    return ksz::marcinkiewicz_norm(vector_from(in, "x"), ksz::WeightSequence(w));
  }
  if (which == "orlicz-seq") {
    // phi^-1(t) = t^a, i.e. the l_{1/a} norm; the general case lives in the library.
    const double a = number_from(in, "phi_inverse_power");
    ksz::require(a > 0.0, "phi_inverse_power must be positive");
    return ksz::orlicz_seq_norm(vector_from(in, "x"), [a](double t) { return std::pow(t, a); });
  }
  if (which == "l-hn") return ksz::l_hN_norm(vector_from(in, "xi"));
  if (which == "k-functional") {
    const std::string couple = in.value("couple", std::string("l1-l2"));
    if (couple == "l1-l2") return ksz::k_functional_l1_l2(number_from(in, "t"), vector_from(in, "x"));
    if (couple == "weighted-linf")
      return ksz::k_functional_weighted_linf(number_from(in, "s"), number_from(in, "t"), vector_from(in, "xi"),
                                             in.value("k_lo", 0));
    throw ksz::InvalidArgument("unknown couple '" + couple + "' (expected l1-l2 or weighted-linf)");
  }
  throw ksz::InvalidArgument("unknown norm '" + which + "'");
}

ksz::DirichletPoly dirichlet_from(const json& in) {
  ksz::require(in.contains("coeffs") && in.at("coeffs").is_array(),
               "lift input needs 'coeffs': [{\"n\": 12, \"a\": 1.0}, ...]");
  ksz::DirichletPoly d;
  for (const auto& t : in.at("coeffs")) d.set(t.at("n").get<std::uint64_t>(), scalar_from(t.at("a")));
  return d;
}

json lift_json(const ksz::DirichletPoly& d, bool stats_only) {
  const auto support = d.support();
  const auto stats = ksz::prime_stats(support);
  json fact = json::object();
  for (const auto& [n, f] : stats.factorizations) {
    json pairs = json::array();
    for (const auto& [k, e] : f) pairs.push_back({k, e});
    fact[std::to_string(n)] = pairs;
  }
  json out{{"Pi", stats.Pi}, {"Omega", stats.Omega}, {"factorizations", fact}};
  if (!stats_only) {
    const auto p = ksz::bohr_lift(d);
    json terms = json::array();
    for (const auto& [alpha, c] : p.terms()) terms.push_back({{"alpha", alpha}, {"c", {c.real(), c.imag()}}});
    out["poly"] = {{"n", p.n()}, {"degree", p.degree()}, {"terms", terms}};
  }
  return out;
}

bool print_bands(const ksz::Report& report) {
  bool ok = true;
  for (const auto& b : ksz::check_bands(report)) {
    std::cerr << (b.pass ? "PASS " : "FAIL ") << ksz::report_name(report.spec) << ": " << b.name << " = " << b.value
              << " in [" << b.lo << ", " << b.hi << "]\n";
    ok = ok && b.pass;
  }
  return ok;
}

ksz::Report timed_run(const ksz::ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  auto report = ksz::run_experiment(spec);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::cerr << ksz::report_name(spec) << ": " << elapsed.count() << " s\n";
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for subgaussian KSZ inequalities"};
  app.require_subcommand(1);

  auto* norms = app.add_subcommand("norms", "One-shot norm computations from JSON on stdin");
  std::string norm_kind;
  norms->add_option("kind", norm_kind, "weak | marcinkiewicz | orlicz-seq | l-hn | k-functional")
      ->required()
      ->check(CLI::IsMember({"weak", "marcinkiewicz", "orlicz-seq", "l-hn", "k-functional"}));

  auto* lift = app.add_subcommand("lift", "Prime statistics and Bohr lift of a Dirichlet polynomial");
  std::string lift_input;
  bool stats_only = false;
  lift->add_option("--input", lift_input, "Dirichlet polynomial JSON")->required();
  lift->add_flag("--stats-only", stats_only, "Print only Pi, Omega and the factorizations");

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
  experiment->require_subcommand(1);
  auto* run = experiment->add_subcommand("run", "Run one experiment spec");
  std::string config, out_path, csv_path;
  int threads = 0;
  std::uint64_t seed = 0;
  bool check = false;
  run->add_option("--config", config, "ExperimentSpec JSON")->required();
  run->add_option("--out", out_path, "Report JSON path")->required();
  run->add_option("--csv", csv_path, "Optional CSV path");
  run->add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
  auto* seed_opt = run->add_option("--seed", seed, "Override the spec seed");
  run->add_flag("--check", check, "Exit 4 when an acceptance band is violated");

  auto* suite = experiment->add_subcommand("suite", "Run E1-E6 at acceptance settings");
  std::string suite_dir;
  std::uint64_t suite_seed = 42;
  suite->add_option("--out", suite_dir, "Output directory")->required();
  suite->add_option("--seed", suite_seed, "Suite seed");
  suite->add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
  suite->add_flag("--check", check, "Exit 4 when an acceptance band is violated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);
    if (*norms) {
      const double value = run_norm(norm_kind, read_stdin_json());
      std::cout << json{{"norm", norm_kind}, {"value", value}}.dump(2) << "\n";
      return 0;
    }
    if (*lift) {
      json in;
      try {
        in = json::parse(read_file(lift_input));
      } catch (const json::parse_error& e) {
        throw ksz::InvalidArgument(std::string("invalid JSON in ") + lift_input + ": " + e.what());
      }
      std::cout << lift_json(dirichlet_from(in), stats_only).dump(2) << "\n";
      return 0;
    }
    if (*run) {
      auto spec = ksz::spec_from_json(read_file(config));
      if (*seed_opt) spec.seed = seed;
      const auto report = timed_run(spec);
      write_file(out_path, ksz::report_to_json(report));
      if (!csv_path.empty()) write_file(csv_path, ksz::report_to_csv(report));
      const bool ok = print_bands(report);
      return check && !ok ? kExitBand : 0;
    }
    if (*suite) {
      std::filesystem::create_directories(suite_dir);
      bool ok = true;
      for (const auto& spec : ksz::acceptance_suite(suite_seed)) {
        const auto report = timed_run(spec);
        const auto stem = (std::filesystem::path(suite_dir) / ksz::report_name(spec)).string();
        write_file(stem + ".json", ksz::report_to_json(report));
        write_file(stem + ".csv", ksz::report_to_csv(report));
        ok = print_bands(report) && ok;
      }
      return check && !ok ? kExitBand : 0;
    }
  } catch (const ksz::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ksz::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
