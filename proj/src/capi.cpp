#include "skf/skf.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "skf/chart.hpp"
#include "skf/run.hpp"

struct skf_config {
  skf::RunConfig value;
};

struct skf_report {
  skf::RunReport value;
};

namespace {

thread_local std::string last_error;

skf_status fail(skf_status s, const std::string& message) {
  last_error = message;
  return s;
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

skf_status give_string(const std::string& s, char** out) {
  *out = copy_string(s);
  return *out ? SKF_OK : fail(SKF_ERR_INTERNAL, "out of memory");
}

// Runs f, mapping exceptions to status codes.
template <class F>
skf_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const skf::ConfigError& e) {
    return fail(SKF_ERR_CONFIG, e.what());
  } catch (const skf::Error& e) {
    return fail(SKF_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SKF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SKF_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* skf_version(void) { return skf::library_version(); }

const char* skf_last_error(void) { return last_error.c_str(); }

skf_status skf_config_default(skf_config** out) {
  if (!out) return fail(SKF_ERR_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new skf_config{skf::default_config()};
    return SKF_OK;
  });
}

skf_status skf_config_from_json(const char* json, skf_config** out) {
  if (!json || !out) return fail(SKF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new skf_config{skf::parse_config(json)};
    return SKF_OK;
  });
}

skf_status skf_config_to_json(const skf_config* config, char** out) {
  if (!config || !out) return fail(SKF_ERR_ARGUMENT, "null argument");
  return guarded([&] { return give_string(skf::config_to_json(config->value), out); });
}

skf_status skf_config_set_points(skf_config* config, int points) {
  if (!config) return fail(SKF_ERR_ARGUMENT, "null config");
  if (points < 1) return fail(SKF_ERR_CONFIG, "points must be at least 1");
  config->value.sampling.points = points;
  return SKF_OK;
}

skf_status skf_config_set_seed(skf_config* config, uint64_t seed) {
  if (!config) return fail(SKF_ERR_ARGUMENT, "null config");
  config->value.sampling.seed = seed;
  return SKF_OK;
}

skf_status skf_config_set_mode(skf_config* config, const char* mode) {
  if (!config || !mode) return fail(SKF_ERR_ARGUMENT, "null argument");
  if (std::strcmp(mode, "analytic") == 0) {
    config->value.derivatives.mode = skf::Differentiation::Mode::kAnalytic;
  } else if (std::strcmp(mode, "fd") == 0) {
    config->value.derivatives.mode = skf::Differentiation::Mode::kFiniteDifference;
  } else {
    return fail(SKF_ERR_CONFIG, std::string("unknown derivative mode '") + mode + "'");
  }
  return SKF_OK;
}

skf_status skf_config_clear_checks(skf_config* config) {
  if (!config) return fail(SKF_ERR_ARGUMENT, "null config");
  config->value.checks.clear();
  return SKF_OK;
}

skf_status skf_config_add_check(skf_config* config, const char* name) {
  if (!config || !name) return fail(SKF_ERR_ARGUMENT, "null argument");
  const auto& names = skf::check_names();
  for (const auto& n : names)
    if (n == name) {
      config->value.checks.push_back(n);
      return SKF_OK;
    }
  return fail(SKF_ERR_CONFIG, std::string("unknown check '") + name + "'");
}

void skf_config_free(skf_config* config) { delete config; }

skf_status skf_check_names(char** out) {
  if (!out) return fail(SKF_ERR_ARGUMENT, "null output pointer");
  std::string s;
  for (const auto& n : skf::check_names()) s += n + "\n";
  return give_string(s, out);
}

skf_status skf_run(const skf_config* config, skf_report** out) {
  if (!config || !out) return fail(SKF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new skf_report{skf::run(config->value)};
    return SKF_OK;
  });
}

int skf_report_overall_pass(const skf_report* report) { return report && report->value.overall_pass ? 1 : 0; }

size_t skf_report_check_count(const skf_report* report) { return report ? report->value.results.size() : 0; }

skf_status skf_report_json(const skf_report* report, int include_timing, char** out) {
  if (!report || !out) return fail(SKF_ERR_ARGUMENT, "null argument");
  return guarded([&] { return give_string(skf::report_to_json(report->value, include_timing != 0), out); });
}

skf_status skf_report_summary(const skf_report* report, char** out) {
  if (!report || !out) return fail(SKF_ERR_ARGUMENT, "null argument");
  return guarded([&] { return give_string(skf::report_summary(report->value), out); });
}

void skf_report_free(skf_report* report) { delete report; }

skf_status skf_emit_forms(const double* coords, size_t n_points, char** out) {
  if (!coords || !out || n_points == 0) return fail(SKF_ERR_ARGUMENT, "need at least one point");
  return guarded([&] {
    auto base = skf::t11_chart();
    std::vector<skf::ChartPoint> points;
    for (size_t i = 0; i < n_points; ++i)
      points.push_back(skf::make_point(base, std::vector<double>(coords + 5 * i, coords + 5 * i + 5)));
    return give_string(skf::emit_forms(points), out);
  });
}

void skf_string_free(char* s) { std::free(s); }

}  // extern "C"
