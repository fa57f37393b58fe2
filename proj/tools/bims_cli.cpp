// Command-line surface for the BIMS extremes library: channel analysis,
// envelope/figure data as CSV, BSEC synthesis, and the verification suite.
//
// Exit codes: 0 ok, 1 failed verification, 2 usage/parse error,
// 3 invalid channel, 4 infeasible synthesis target.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bims/channel.hpp"
#include "bims/exponents.hpp"
#include "bims/extremes.hpp"
#include "bims/gallager.hpp"
#include "bims/verify.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidChannel = 3;
constexpr int kExitInfeasible = 4;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
}

bims::BimsChannel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bims::ChannelSpecError("cannot read channel spec " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return bims::channel_from_spec(buffer.str());
}

std::vector<double> default_rhos() { return {0.5, 1.0, 2.0}; }

// [0, 1] grid with the given step; the 1.0 endpoint is always included.
std::vector<double> grid01(double step) {
  std::vector<double> grid;
  for (int i = 0; i * step < 1.0 - 1e-12; ++i) grid.push_back(i * step);
  grid.push_back(1.0);
  return grid;
}

int cmd_analyze(const std::string& spec_path, std::vector<double> rhos,
                const std::string& out_path) {
  if (rhos.empty()) rhos = default_rhos();
  const bims::BimsChannel ch = load_channel(spec_path);
  const bims::GallagerReport report = bims::gallager_report(ch, rhos);
  nlohmann::json e0_at = nlohmann::json::array();
  for (const auto& [rho, value] : report.e0_at)
    e0_at.push_back({{"rho", rho}, {"e0", value}});
  const nlohmann::json doc = {
      {"capacity", report.capacity}, {"f1", report.f1},
      {"e0", std::move(e0_at)},      {"z", report.z},
      {"r0", report.r0},             {"dispersion", report.dispersion},
  };
  emit(doc.dump(2) + "\n", out_path);
  return kExitOk;
}

int cmd_region(std::vector<double> rhos, double c_step, const std::string& out_path) {
  if (rhos.empty()) rhos = {-0.99, 1.0, 10.0};
  std::ostringstream csv;
  csv << "rho,C,f_bec,f_bsc\n";
  for (double rho : rhos) {
    for (double c : grid01(c_step)) {
      csv << fmt12(rho) << ',' << fmt12(c) << ',' << fmt12(bims::f_bec_of_c(rho, c))
          << ',' << fmt12(bims::f_bsc_of_c(rho, c)) << '\n';
    }
  }
  emit(csv.str(), out_path);
  return kExitOk;
}

int cmd_exponents(const std::string& spec_path, std::vector<std::string> kind_names,
                  double r_step, const std::string& out_path) {
  if (kind_names.empty())
    kind_names = {"random_coding", "sphere_packing", "expurgated",
                  "strong_converse", "gfb", "dtb"};
  std::vector<bims::ExponentKind> kinds;
  for (const auto& name : kind_names) {
    const auto kind = bims::exponent_kind_from_name(name);
    if (!kind) {
      std::cerr << "unknown exponent kind '" << name << "'\n";
      return kExitUsage;
    }
    kinds.push_back(*kind);
  }

  const bims::BimsChannel ch = load_channel(spec_path);
  const double c = bims::capacity(ch);

  std::ostringstream csv;
  csv << "R";
  for (const auto kind : kinds) {
    const char* n = bims::exponent_kind_name(kind);
    csv << ',' << n << ',' << n << "_rho_star," << n << "_flag," << n << "_env_lower,"
        << n << "_env_upper";
  }
  csv << '\n';

  for (double rate : grid01(r_step)) {
    csv << fmt12(rate);
    for (const auto kind : kinds) {
      const bims::ExponentResult res = bims::evaluate_exponent(kind, ch, rate);
      const bims::EnvelopePair env = bims::exponent_envelope(kind, c, rate);
      csv << ',' << fmt12(res.value) << ',' << fmt12(res.rho_star) << ','
          << bims::boundary_flag_name(res.at_boundary) << ',' << fmt12(env.lower)
          << ',' << fmt12(env.upper);
    }
    csv << '\n';
  }
  emit(csv.str(), out_path);
  return kExitOk;
}

int cmd_synthesize(double c, double f, double rho, const std::string& out_path) {
  const bims::BsecParams params = bims::synthesize_bsec(c, f, rho);
  const nlohmann::json doc = {
      {"kind", "bsec"},
      {"eps_s", params.eps_s},
      {"eps_e", params.eps_e},
      {"capacity", bims::bsec_capacity(params.eps_s, params.eps_e)},
      {"f_rho", bims::f_bsec(rho, params.eps_s, params.eps_e)},
      {"rho", rho},
  };
  emit(doc.dump(2) + "\n", out_path);
  return kExitOk;
}

int cmd_dispersion(double c_step, const std::string& out_path) {
  std::ostringstream csv;
  csv << "C,v_bec,v_bsc\n";
  for (double c : grid01(c_step)) {
    const double v_bec = c * (1.0 - c);
    const double v_bsc =
        bims::dispersion(bims::BimsChannel::bsc(bims::binary_entropy_inv(1.0 - c)));
    csv << fmt12(c) << ',' << fmt12(v_bec) << ',' << fmt12(v_bsc) << '\n';
  }
  emit(csv.str(), out_path);
  return kExitOk;
}

int cmd_c_vs_z(double z_step, const std::string& out_path) {
  std::ostringstream csv;
  csv << "Z,c_lower,c_upper\n";
  for (double z : grid01(z_step)) {
    const bims::EnvelopePair env = bims::c_envelope_at_z(z);
    csv << fmt12(z) << ',' << fmt12(env.lower) << ',' << fmt12(env.upper) << '\n';
  }
  emit(csv.str(), out_path);
  return kExitOk;
}

int cmd_verify(const std::string& check, std::uint64_t seed, int trials,
               const std::string& out_path) {
  std::vector<bims::CheckReport> reports;
  if (check == "all") {
    reports = bims::run_all_checks(seed, trials);
  } else {
    reports.push_back(bims::run_check(check, seed, trials));
  }
  bool all_passed = true;
  for (const auto& r : reports) {
    std::fprintf(stderr, "%-20s %s  trials=%ld  max_violation=%.3e  tol=%.1e\n",
                 r.name.c_str(), r.passed ? "PASS" : "FAIL", r.trials,
                 r.max_violation, r.tolerance);
    all_passed = all_passed && r.passed;
  }
  emit(bims::check_reports_json(reports) + "\n", out_path);
  return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gallager E0, error exponents, and BEC/BSC extremal envelopes "
               "for binary-input symmetric channels"};
  app.require_subcommand(1);

  std::string spec_path, out_path, check_name = "all";
  std::vector<double> rhos;
  std::vector<std::string> kind_names;
  double c_step = 0.01, r_step = 0.01, z_step = 0.01;
  double syn_c = 0.0, syn_f = 0.0, syn_rho = 0.0;
  std::uint64_t seed = 42;
  int trials = 0;

  auto* analyze = app.add_subcommand("analyze", "Gallager report for a channel spec");
  analyze->add_option("channel", spec_path, "channel spec JSON file")->required();
  analyze->add_option("--rho", rhos, "rho values for E0 (repeatable)");
  analyze->add_option("--out", out_path, "write output to file");

  auto* region = app.add_subcommand("region", "feasible (C, F(rho)) region CSV");
  region->add_option("--rho", rhos, "rho values (repeatable)");
  region->add_option("--c-step", c_step, "capacity grid step")->check(CLI::PositiveNumber);
  region->add_option("--out", out_path, "write output to file");

  auto* exponents = app.add_subcommand("exponents", "exponent curves with envelopes CSV");
  exponents->add_option("channel", spec_path, "channel spec JSON file")->required();
  exponents->add_option("--kind", kind_names,
                        "exponent kinds (repeatable): random_coding, sphere_packing, "
                        "expurgated, strong_converse, gfb, dtb");
  exponents->add_option("--r-step", r_step, "rate grid step")->check(CLI::PositiveNumber);
  exponents->add_option("--out", out_path, "write output to file");

  auto* synthesize =
      app.add_subcommand("synthesize", "BSEC attaining a feasible (C, F, rho)");
  synthesize->add_option("C", syn_c, "target capacity in bits")->required();
  synthesize->add_option("F", syn_f, "target F(rho)")->required();
  synthesize->add_option("rho", syn_rho, "rho")->required();
  synthesize->add_option("--out", out_path, "write output to file");

  auto* dispersion = app.add_subcommand("dispersion", "dispersion extremes CSV");
  dispersion->add_option("--c-step", c_step, "capacity grid step")
      ->check(CLI::PositiveNumber);
  dispersion->add_option("--out", out_path, "write output to file");

  auto* cvz = app.add_subcommand("c-vs-z", "capacity band at fixed Bhattacharyya Z");
  cvz->add_option("--c-step", z_step, "Z grid step")->check(CLI::PositiveNumber);
  cvz->add_option("--out", out_path, "write output to file");

  auto* verify = app.add_subcommand("verify", "run verification checks");
  verify->add_option("check", check_name, "check name or 'all'");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--trials", trials, "override per-check trial count");
  verify->add_option("--out", out_path, "write JSON report to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(spec_path, rhos, out_path);
    if (region->parsed()) return cmd_region(rhos, c_step, out_path);
    if (exponents->parsed()) return cmd_exponents(spec_path, kind_names, r_step, out_path);
    if (synthesize->parsed()) return cmd_synthesize(syn_c, syn_f, syn_rho, out_path);
    if (dispersion->parsed()) return cmd_dispersion(c_step, out_path);
    if (cvz->parsed()) return cmd_c_vs_z(z_step, out_path);
    if (verify->parsed()) return cmd_verify(check_name, seed, trials, out_path);
  } catch (const bims::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const bims::InvalidChannelError& e) {
    std::cerr << "invalid channel: " << e.what() << "\n";
    return kExitInvalidChannel;
  } catch (const bims::ChannelSpecError& e) {
    std::cerr << "channel spec error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bims::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
