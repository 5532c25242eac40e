// Command-line front end. Talks to the library only through skf.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skf/skf.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::string take(char* s) {
  std::string out = s ? s : "";
  skf_string_free(s);
  return out;
}

int config_error(const std::string& what) {
  std::cerr << "skf: " << what << "\n";
  return kExitConfig;
}

// "a,b,c,d,e" -> five doubles.
bool parse_point(const std::string& text, std::vector<double>& out) {
  std::stringstream ss(text);
  std::string item;
  std::vector<double> v;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  if (v.size() != 5) return false;
  out.insert(out.end(), v.begin(), v.end());
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify Killing forms and toric data on T11 and its cone"};
  std::string config_path, report_path, mode;
  std::vector<std::string> checks, at;
  int points = 0;
  std::uint64_t seed = 0;
  bool emit = false, list = false, quiet = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--check", checks, "Check to run (repeatable; replaces the configured list)");
  auto* points_opt = app.add_option("--points", points, "Sample points per check")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Sampling seed");
  app.add_option("--mode", mode, "Derivatives: analytic or fd")->check(CLI::IsMember({"analytic", "fd"}));
  app.add_option("--report", report_path, "Write the JSON report here");
  app.add_flag("--emit-forms", emit, "Print the candidate forms as JSON and exit");
  app.add_option("--at", at, "Point theta1,phi1,theta2,phi2,psi for --emit-forms (repeatable)");
  app.add_flag("--list-checks", list, "Print the check names and exit");
  app.add_flag("-q,--quiet", quiet, "Only print the overall result");
  app.set_version_flag("--version", std::string(skf_version()));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (list) {
    char* names = nullptr;
    if (skf_check_names(&names) != SKF_OK) return config_error(skf_last_error());
    std::cout << take(names);
    return 0;
  }

  if (emit) {
    std::vector<double> coords;
    if (at.empty()) at = {"1.5707963267948966,0,1.5707963267948966,0,0"};
    for (const auto& a : at)
      if (!parse_point(a, coords)) return config_error("--at expects five comma-separated numbers, got '" + a + "'");
    char* out = nullptr;
    if (skf_emit_forms(coords.data(), coords.size() / 5, &out) != SKF_OK) return config_error(skf_last_error());
    std::cout << take(out) << "\n";
    return 0;
  }

  skf_config* config = nullptr;
  skf_status st = SKF_OK;
  if (config_path.empty()) {
    st = skf_config_default(&config);
  } else {
    std::ifstream in(config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    st = skf_config_from_json(buf.str().c_str(), &config);
  }
  if (st != SKF_OK) return config_error(skf_last_error());

  auto apply = [&]() -> skf_status {
    if (!checks.empty()) {
      skf_config_clear_checks(config);
      for (const auto& c : checks)
        if (auto s = skf_config_add_check(config, c.c_str()); s != SKF_OK) return s;
    }
    if (*points_opt)
      if (auto s = skf_config_set_points(config, points); s != SKF_OK) return s;
    if (*seed_opt) skf_config_set_seed(config, seed);
    if (!mode.empty())
      if (auto s = skf_config_set_mode(config, mode.c_str()); s != SKF_OK) return s;
    return SKF_OK;
  };
  if (apply() != SKF_OK) {
    const std::string msg = skf_last_error();
    skf_config_free(config);
    return config_error(msg);
  }

  skf_report* report = nullptr;
  st = skf_run(config, &report);
  skf_config_free(config);
  if (st != SKF_OK) return st == SKF_ERR_CONFIG ? config_error(skf_last_error()) : (std::cerr << "skf: " << skf_last_error() << "\n", kExitFail);

  const bool pass = skf_report_overall_pass(report) != 0;
  char* text = nullptr;
  if (!quiet && skf_report_summary(report, &text) == SKF_OK) std::cout << take(text);
  if (quiet) std::cout << (pass ? "PASS" : "FAIL") << "\n";
  if (!report_path.empty()) {
    char* json = nullptr;
    if (skf_report_json(report, 1, &json) != SKF_OK) {
      skf_report_free(report);
      std::cerr << "skf: " << skf_last_error() << "\n";
      return kExitFail;
    }
    std::ofstream out(report_path);
    out << take(json) << "\n";
    if (!out) {
      skf_report_free(report);
      std::cerr << "skf: cannot write " << report_path << "\n";
      return kExitFail;
    }
  }
  skf_report_free(report);
  return pass ? 0 : kExitFail;
}
