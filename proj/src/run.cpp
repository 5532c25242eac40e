#include "skf/run.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "skf/displays.hpp"
#include "skf/killing.hpp"
#include "skf/verify.hpp"

namespace skf {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

const std::vector<std::string> kChecks{"einstein", "kahler",   "killing-yano", "cky",         "special-killing",
                                       "parallel", "legendre", "ricci-flat-potential",        "momentum",
                                       "gorenstein", "reeb-search", "geodesic", "paper-displays"};

const std::map<std::string, double> kTolerances{
    {"einstein", 1e-7},
    {"einstein-cone", 1e-6},
    {"kahler-j2", 1e-10},
    {"kahler-parallel", 1e-6},
    {"kahler-display", 1e-10},
    {"killing-yano", 1e-7},
    {"cky", 1e-7},
    {"closed", 1e-9},
    {"special-killing", 1e-7},
    {"special-killing-stddev", 1e-6},
    {"parallel", 1e-6},
    {"extraction-fit", 1e-9},
    {"legendre-reeb", 1e-9},
    {"legendre-duality", 1e-12},
    {"legendre-inverse", 1e-10},
    {"legendre-newton", 1e-9},
    {"z-agreement", 1e-9},
    {"ricci-flat-potential", 1e-8},
    {"momentum", 1e-12},
    {"reeb-search", 1e-12},
    {"reeb-position", 1e-4},
    {"geodesic-stackel", 1e-6},
    {"geodesic-energy", 1e-8},
    {"geodesic-momentum", 1e-8},
    {"geodesic-order", 1.0},
};

const std::vector<std::string> kSpecialLabels{"eta", "Psi1", "Psi2", "RePsi", "ImPsi"};
const std::vector<std::string> kClosedLabels{"Phi1", "Phi2"};

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void require_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}

json report_json(const ResidualReport& r) {
  json j;
  j["check"] = r.check;
  j["n_points"] = r.n_points;
  j["max_abs"] = r.max_abs;
  j["mean_abs"] = r.mean_abs;
  j["tolerance"] = r.tolerance;
  j["fitted"] = r.fitted;
  j["pass"] = r.pass;
  j["notes"] = r.notes;
  if (!r.parts.empty()) {
    j["parts"] = json::array();
    for (const auto& p : r.parts) j["parts"].push_back(report_json(p));
  }
  return j;
}

ResidualReport renamed(ResidualReport r, std::string name) {
  r.check = std::move(name);
  return r;
}

// A single-number residual as a report.
ResidualReport scalar_report(std::string name, int n, double value, double tolerance) {
  ResidualAccumulator acc;
  acc.add(value);
  auto r = acc.finish(std::move(name), tolerance);
  r.n_points = n;
  return r;
}

bool is_conifold_normals(const ToricData& td) { return td.normals == conifold_toric_data().normalized.normals; }

// Lazily built geometry shared by the checks of one run.
class RunContext {
 public:
  explicit RunContext(const RunConfig& c)
      : config(c),
        base(t11_chart(c.sampling.theta_margin)),
        cone(cone_chart(base, c.sampling.r_min, c.sampling.r_max)),
        g(t11_metric(base, c.metric.round, c.metric.fiber)),
        gbar(cone_metric(g, cone)),
        base_points(sample_points(base, c.sampling.points, c.sampling.seed)),
        cone_points(sample_points(cone, c.sampling.points, c.sampling.seed)) {}

  const RunConfig& config;
  ChartPtr base;
  ChartPtr cone;
  MetricField g;
  MetricField gbar;
  std::vector<ChartPoint> base_points;
  std::vector<ChartPoint> cone_points;
  std::optional<ReebSearchResult> search;

  double tol(const std::string& key) const { return config.tolerances.at(key); }
  const Differentiation& diff() const { return config.derivatives; }

  const std::vector<KillingCandidate>& candidates() {
    if (candidates_.empty()) candidates_ = t11_candidates(base);
    return candidates_;
  }
  const DiffForm& candidate(const std::string& label) {
    for (const auto& c : candidates())
      if (c.label == label) return c.form;
    throw Error("no candidate named " + label);
  }

  const ReebSearchResult& reeb_search_result() {
    if (!search) {
      ReebSearchOptions opts;
      opts.seed = config.sampling.seed;
      search = reeb_search(config.toric, opts);
    }
    return *search;
  }

  // Toric data with the configured or searched Reeb vector.
  ToricData resolved_toric() {
    ToricData td = config.toric;
    if (config.search_reeb) {
      const auto& s = reeb_search_result();
      if (!s.converged) throw Error("Reeb search did not converge");
      td.reeb = s.reeb;
    }
    td.require_reeb();
    return td;
  }

  const std::vector<RealVec>& momenta() {
    if (momenta_.empty()) momenta_ = sample_cone_interior(config.toric, config.sampling.potential_points, config.sampling.seed);
    return momenta_;
  }

 private:
  std::vector<KillingCandidate> candidates_;
  std::vector<RealVec> momenta_;
};

using CheckFn = std::function<CheckResult(RunContext&)>;

CheckResult check_einstein(RunContext& c) {
  const double lambda = 4.0;
  auto base = renamed(einstein_residual(c.g, lambda, c.base_points, c.tol("einstein"), c.diff()), "base");
  auto cone = renamed(einstein_residual(c.gbar, 0.0, c.cone_points, c.tol("einstein-cone"), c.diff()), "cone");
  CheckResult out;
  out.report = aggregate("einstein", {base, cone});
  out.report.fitted["lambda"] = lambda;
  return out;
}

CheckResult check_kahler(RunContext& c) {
  KahlerTolerances t{c.tol("kahler-j2"), c.tol("kahler-parallel"), c.tol("kahler-display")};
  CheckResult out;
  out.report = kahler_checks(c.g, c.cone_points, t, c.diff());
  out.report.check = "kahler";
  return out;
}

CheckResult check_killing_yano(RunContext& c) {
  std::vector<ResidualReport> parts;
  for (const auto& label : kSpecialLabels)
    parts.push_back(renamed(killing_yano_residual(c.g, c.candidate(label), c.base_points, c.tol("killing-yano"), c.diff()), label));
  CheckResult out;
  out.report = aggregate("killing-yano", std::move(parts));
  return out;
}

CheckResult check_cky(RunContext& c) {
  std::vector<ResidualReport> parts;
  for (const auto& label : kClosedLabels) {
    parts.push_back(renamed(cky_residual(c.g, c.candidate(label), c.base_points, c.tol("cky"), c.diff()), label));
    parts.push_back(renamed(closedness_residual(c.candidate(label), c.base_points, c.tol("closed"), c.diff()), label + "-closed"));
  }
  CheckResult out;
  out.report = aggregate("cky", std::move(parts));
  return out;
}

CheckResult check_special_killing(RunContext& c) {
  std::vector<ResidualReport> parts;
  std::map<std::string, double> constants;
  for (const auto& label : kSpecialLabels) {
    auto r = special_killing_fit(c.g, c.candidate(label), c.base_points, c.tol("special-killing"),
                                 c.tol("special-killing-stddev"), c.diff());
    constants["c_" + label] = r.fitted.at("c");
    parts.push_back(renamed(std::move(r), label));
  }
  CheckResult out;
  out.report = aggregate("special-killing", std::move(parts));
  out.report.fitted = constants;
  return out;
}

CheckResult check_parallel(RunContext& c) {
  std::vector<ResidualReport> parts;
  for (const auto& label : kSpecialLabels)
    parts.push_back(renamed(parallel_residual(c.gbar, cone_lift(c.candidate(label), c.cone), c.cone_points,
                                              c.tol("parallel"), c.diff()),
                            "lift-" + label));
  auto omega = holomorphic_volume_form(c.cone);
  parts.push_back(renamed(parallel_residual(c.gbar, real_part(omega), c.cone_points, c.tol("parallel"), c.diff()), "Re-Omega"));
  parts.push_back(renamed(parallel_residual(c.gbar, imag_part(omega), c.cone_points, c.tol("parallel"), c.diff()), "Im-Omega"));

  auto ex = extract_base_form(omega, c.base);
  auto shown = re_im_psi_closed_forms(c.base);
  auto fit = fit_global_scale(ex.form, shown.re + Complex(0.0, 1.0) * shown.im, c.base_points);
  auto fr = scalar_report("extraction-fit", static_cast<int>(c.base_points.size()), fit.residual, c.tol("extraction-fit"));
  fr.fitted["scale_re"] = fit.scale.re;
  fr.fitted["scale_im"] = fit.scale.im;
  fr.fitted["shape_residual"] = ex.shape_residual;
  parts.push_back(fr);

  CheckResult out;
  out.report = aggregate("parallel", std::move(parts));
  out.report.fitted["psi_scale_re"] = fit.scale.re;
  out.report.fitted["psi_scale_im"] = fit.scale.im;
  return out;
}

CheckResult check_legendre(RunContext& c) {
  const auto td = c.resolved_toric();
  SymplecticPotential sp(td);
  const auto& ys = c.momenta();
  const auto& b = *td.reeb;
  const int n = td.n;
  ResidualAccumulator reeb, dual, inv, newton;
  for (const auto& y : ys) {
    auto h = hessian_G(sp, y);
    double w = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += 2.0 * h.G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
      w = std::max(w, std::abs(s - b[static_cast<std::size_t>(i)]));
    }
    reeb.add(w);
    dual.add(legendre_F(sp, y).duality_residual);
    double wi = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
          s += h.F[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * h.G[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        wi = std::max(wi, std::abs(s - (i == k ? 1.0 : 0.0)));
      }
    inv.add(wi);
    RealVec seed = y;
    for (auto& v : seed) v *= 1.1;
    auto back = invert_gradient(sp, grad_G(sp, y), seed);
    double wn = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) wn = std::max(wn, std::abs(back[i] - y[i]));
    newton.add(wn);
  }
  std::vector<ResidualReport> parts{reeb.finish("reeb-identity", c.tol("legendre-reeb")),
                                    dual.finish("duality", c.tol("legendre-duality")),
                                    inv.finish("inverse-hessian", c.tol("legendre-inverse")),
                                    newton.finish("newton-round-trip", c.tol("legendre-newton"))};
  CheckResult out;
  std::vector<std::string> notes;
  std::map<std::string, double> fitted;
  if (is_conifold_normals(td)) {
    // x = grad G at the momentum image against Re z, modulo a constant vector.
    const int m = static_cast<int>(c.cone_points.size());
    std::vector<std::array<double, 3>> diffs;
    std::array<double, 3> mean{};
    for (const auto& p : c.cone_points) {
      auto x = grad_G(sp, momentum_map_t11(p, MomentumBasis::kTransformed));
      auto z = complex_coords_t11(p);
      std::array<double, 3> d{x[0] - z[0].re, x[1] - z[1].re, x[2] - z[2].re};
      for (std::size_t k = 0; k < 3; ++k) mean[k] += d[k] / m;
      diffs.push_back(d);
    }
    ResidualAccumulator za;
    for (const auto& d : diffs) {
      double w = 0.0;
      for (std::size_t k = 0; k < 3; ++k) w = std::max(w, std::abs(d[k] - mean[k]));
      za.add(w);
    }
    parts.push_back(za.finish("z-agreement", c.tol("z-agreement")));
    for (std::size_t k = 0; k < 3; ++k) fitted["x_constant_" + std::to_string(k + 1)] = mean[k];
  } else {
    notes.push_back("z-agreement skipped: toric data is not the conifold");
  }
  out.report = aggregate("legendre", std::move(parts));
  out.report.fitted = fitted;
  out.report.notes = notes;
  return out;
}

CheckResult check_ricci_flat_potential(RunContext& c) {
  SymplecticPotential sp(c.resolved_toric());
  CheckResult out;
  out.report = ricci_flat_residual(sp, c.momenta(), c.tol("ricci-flat-potential"));
  out.report.check = "ricci-flat-potential";
  return out;
}

CheckResult check_momentum(RunContext& c) {
  const auto td = c.resolved_toric();
  const auto conifold = conifold_toric_data();
  const auto b_old = conifold.T.inverse().apply(*td.reeb);
  ResidualAccumulator interior, dual, pairing, lb;
  for (const auto& p : c.cone_points) {
    auto mu = momentum_map_t11(p, MomentumBasis::kOriginal);
    auto mup = momentum_map_t11(p, MomentumBasis::kTransformed);
    interior.add(in_cone_interior(td, mup) ? 0.0 : 1.0);
    auto mapped = conifold.T.apply_dual(mu);
    double w = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) w = std::max(w, std::abs(mapped[i] - mup[i]));
    dual.add(w);
    pairing.add(dot(b_old, mu) - dot(*td.reeb, mup));
    lb.add(dot(*td.reeb, mup) - 0.5 * p[0] * p[0]);
  }
  const double t = c.tol("momentum");
  CheckResult out;
  out.report = aggregate("momentum", {interior.finish("image-in-cone", 0.5), dual.finish("dual-basis", t),
                                      pairing.finish("reeb-pairing-invariance", t), lb.finish("reeb-pairing-r2", t)});
  return out;
}

CheckResult check_gorenstein(RunContext& c) {
  c.config.toric.validate();
  const auto conifold = conifold_toric_data();
  double mismatch = 0.0;
  for (std::size_t a = 0; a < conifold.raw.normals.size(); ++a) {
    auto v = conifold.T.apply(conifold.raw.normals[a]);
    if (v != conifold.normalized.normals[a]) mismatch = 1.0;
  }
  const IntVec b_can_expected{4, 2, 2};
  IntVec b_can(3, 0);
  for (const auto& v : conifold.normalized.normals)
    for (std::size_t i = 0; i < 3; ++i) b_can[i] += v[i];
  std::vector<ResidualReport> parts{
      scalar_report("conifold-normalization", 4, mismatch + (b_can == b_can_expected ? 0.0 : 1.0), 0.5),
      scalar_report("configured-data", static_cast<int>(c.config.toric.normals.size()),
                    is_gorenstein(c.config.toric) ? 0.0 : 1.0, 0.5)};
  CheckResult out;
  out.report = aggregate("gorenstein", std::move(parts));
  out.report.fitted["det_T"] = static_cast<double>(conifold.T.det());
  return out;
}

CheckResult check_reeb_search(RunContext& c) {
  const auto& s = c.reeb_search_result();
  std::vector<ResidualReport> parts;
  auto obj = scalar_report("objective", c.config.sampling.potential_points, s.objective, c.tol("reeb-search"));
  parts.push_back(obj);
  if (c.config.toric.reeb) {
    double w = 0.0;
    for (std::size_t i = 0; i < s.reeb.size(); ++i) w = std::max(w, std::abs(s.reeb[i] - (*c.config.toric.reeb)[i]));
    parts.push_back(scalar_report("against-configured-reeb", 1, w, c.tol("reeb-position")));
  }
  CheckResult out;
  out.report = aggregate("reeb-search", std::move(parts));
  if (!s.converged) {
    out.report.pass = false;
    out.report.notes.push_back("optimizer did not reach the variance tolerance");
  }
  out.report.fitted["objective"] = s.objective;
  out.report.fitted["iterations"] = s.iterations;
  out.report.fitted["converged"] = s.converged ? 1.0 : 0.0;
  out.vectors["reeb_found"] = s.reeb;
  return out;
}

CheckResult check_geodesic(RunContext& c) {
  const auto& gc = c.config.geodesic;
  if (gc.count < 1) throw Error("geodesic: count must be positive");
  auto psi = re_im_psi_closed_forms(c.base);
  const auto& psi1 = c.candidate("Psi1");
  // Pairs of equal degree among Re Psi, Im Psi, Psi1.
  std::vector<std::pair<std::string, StackelKillingTensor>> tensors{
      {"K(RePsi,RePsi)", stackel_killing(c.g, psi.re, psi.re)},
      {"K(RePsi,ImPsi)", stackel_killing(c.g, psi.re, psi.im)},
      {"K(ImPsi,ImPsi)", stackel_killing(c.g, psi.im, psi.im)},
      {"K(Psi1,Psi1)", stackel_killing(c.g, psi1, psi1)},
  };
  auto momentum = musical_flat(c.g, reeb_field_t11(c.base));
  StackelKillingTensor energy(c.g);

  std::vector<std::vector<ResidualReport>> per_tensor(tensors.size());
  std::vector<ResidualReport> energy_parts, momentum_parts;
  std::vector<double> first_drift;
  for (int i = 0; i < gc.count; ++i) {
    auto traj = random_geodesic(c.g, gc.t_end, gc.dt, c.config.sampling.seed + static_cast<std::uint64_t>(i), 200, c.diff());
    for (std::size_t k = 0; k < tensors.size(); ++k)
      per_tensor[k].push_back(conserved_quantity_drift(tensors[k].second, traj, c.tol("geodesic-stackel")));
    energy_parts.push_back(conserved_quantity_drift(energy, traj, c.tol("geodesic-energy")));
    momentum_parts.push_back(linear_quantity_drift(momentum, traj, c.tol("geodesic-momentum")));
    if (i == 0) first_drift.push_back(energy_parts.back().max_abs);
  }
  // Fourth-order convergence of the energy drift on the first trajectory.
  for (double factor : {2.0, 4.0}) {
    auto traj = random_geodesic(c.g, gc.t_end, gc.dt * factor, c.config.sampling.seed, 200, c.diff());
    first_drift.insert(first_drift.begin(), conserved_quantity_drift(energy, traj, 1.0).max_abs);
  }
  ResidualAccumulator order;
  std::map<std::string, double> fitted;
  for (std::size_t k = 0; k + 1 < first_drift.size(); ++k) {
    const double ratio = first_drift[k] / first_drift[k + 1];
    fitted["energy_ratio_" + std::to_string(k + 1)] = ratio;
    order.add(std::log2(ratio) - 4.0);
  }

  std::vector<ResidualReport> parts;
  for (std::size_t k = 0; k < tensors.size(); ++k) {
    auto r = aggregate(tensors[k].first, per_tensor[k]);
    double kmax = 0.0;
    for (const auto& p : per_tensor[k]) kmax = std::max(kmax, p.fitted.at("K_max"));
    r.fitted["K_max"] = kmax;
    if (kmax < 1e-10) r.notes.push_back("tensor vanishes identically on T11");
    r.parts.clear();
    parts.push_back(std::move(r));
  }
  auto e = aggregate("energy", energy_parts);
  e.parts.clear();
  auto m = aggregate("reeb-momentum", momentum_parts);
  m.parts.clear();
  parts.push_back(e);
  parts.push_back(m);
  auto o = order.finish("dt4-order", c.tol("geodesic-order"));
  o.fitted = fitted;
  parts.push_back(o);

  CheckResult out;
  out.report = aggregate("geodesic", std::move(parts));
  out.report.fitted = fitted;
  out.report.fitted["trajectories"] = gc.count;
  return out;
}

CheckResult check_paper_displays(RunContext& c) {
  auto parts = display_diagnostics(c.base_points, c.cone_points);
  CheckResult out;
  out.informational = true;
  std::vector<std::string> mismatched;
  for (const auto& p : parts)
    if (p.fitted.at("agrees") == 0.0) mismatched.push_back(p.check);
  out.report = aggregate("paper-displays", std::move(parts));
  out.report.fitted["mismatches"] = static_cast<double>(mismatched.size());
  for (const auto& m : mismatched) out.report.notes.push_back("mismatch: " + m);
  return out;
}

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> r{
      {"einstein", check_einstein},
      {"kahler", check_kahler},
      {"killing-yano", check_killing_yano},
      {"cky", check_cky},
      {"special-killing", check_special_killing},
      {"parallel", check_parallel},
      {"legendre", check_legendre},
      {"ricci-flat-potential", check_ricci_flat_potential},
      {"momentum", check_momentum},
      {"gorenstein", check_gorenstein},
      {"reeb-search", check_reeb_search},
      {"geodesic", check_geodesic},
      {"paper-displays", check_paper_displays},
  };
  return r;
}

// Display ordering of the base coordinates: psi, theta1, theta2, phi1, phi2.
const std::array<int, 5> kDisplayOrder{kPsi, kTheta1, kTheta2, kPhi1, kPhi2};
const std::array<const char*, 5> kDisplayNames{"dpsi", "dtheta1", "dtheta2", "dphi1", "dphi2"};

// Engine coefficients of the candidates in display ordering.
const std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>& coefficient_strings() {
  static const std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> s{
      {"eta", {{"dpsi", "1/3"}, {"dphi1", "cos(theta1)/3"}, {"dphi2", "cos(theta2)/3"}}},
      {"Phi1", {{"dtheta1^dphi1", "-sin(theta1)/3"}, {"dtheta2^dphi2", "-sin(theta2)/3"}}},
      {"Phi2", {{"dtheta1^dtheta2^dphi1^dphi2", "-(2/9) sin(theta1) sin(theta2)"}}},
      {"Psi1",
       {{"dpsi^dtheta1^dphi1", "-sin(theta1)/9"},
        {"dpsi^dtheta2^dphi2", "-sin(theta2)/9"},
        {"dtheta1^dphi1^dphi2", "-sin(theta1) cos(theta2)/9"},
        {"dtheta2^dphi1^dphi2", "cos(theta1) sin(theta2)/9"}}},
      {"Psi2", {{"dpsi^dtheta1^dtheta2^dphi1^dphi2", "-(2/27) sin(theta1) sin(theta2)"}}},
      {"RePsi",
       {{"dtheta1^dtheta2", "cos(psi)"},
        {"dtheta1^dphi2", "sin(theta2) sin(psi)"},
        {"dtheta2^dphi1", "-sin(theta1) sin(psi)"},
        {"dphi1^dphi2", "-sin(theta1) sin(theta2) cos(psi)"}}},
      {"ImPsi",
       {{"dtheta1^dtheta2", "sin(psi)"},
        {"dtheta1^dphi2", "-sin(theta2) cos(psi)"},
        {"dtheta2^dphi1", "sin(theta1) cos(psi)"},
        {"dphi1^dphi2", "-sin(theta1) sin(theta2) sin(psi)"}}},
  };
  return s;
}

// Nonzero components of a base form, keyed by display-ordered labels.
json display_components(const DiffForm& form, const ChartPoint& p) {
  json out = json::object();
  const int deg = form.degree();
  // Subsets of display positions in lexicographic order.
  for (unsigned mask = 1; mask < (1u << 5); ++mask) {
    if (std::popcount(mask) != deg) continue;
    std::vector<int> idx;
    std::string label;
    for (int k = 0; k < 5; ++k) {
      if (!(mask & (1u << k))) continue;
      idx.push_back(kDisplayOrder[static_cast<std::size_t>(k)]);
      if (!label.empty()) label += "^";
      label += kDisplayNames[static_cast<std::size_t>(k)];
    }
    const auto v = form.component(p, std::span<const int>(idx));
    if (abs(v) < 1e-14) continue;
    if (std::abs(v.im) < 1e-14) {
      out[label] = v.re;
    } else {
      out[label] = json::array({v.re, v.im});
    }
  }
  return out;
}

}  // namespace

const char* library_version() { return kVersion; }

const std::vector<std::string>& check_names() { return kChecks; }

const std::map<std::string, double>& default_tolerances() { return kTolerances; }

RunConfig default_config() {
  RunConfig c;
  c.toric = conifold_toric_data().normalized;
  c.toric.reeb = RealVec{3.0, 1.5, 1.5};
  c.tolerances = kTolerances;
  c.checks = kChecks;
  return c;
}

void validate_config(const RunConfig& c) {
  if (c.sampling.points < 1) throw ConfigError("sampling.points must be at least 1");
  if (c.sampling.potential_points < 1) throw ConfigError("sampling.potential_points must be at least 1");
  if (!(c.sampling.theta_margin > 0.0) || c.sampling.theta_margin >= std::numbers::pi / 2)
    throw ConfigError("sampling.theta_margin must lie in (0, pi/2)");
  if (!(c.sampling.r_min > 0.0) || !(c.sampling.r_max > c.sampling.r_min))
    throw ConfigError("sampling.r_range must satisfy 0 < r_min < r_max");
  if (!(c.derivatives.fd_step > 0.0)) throw ConfigError("derivatives.fd_step must be positive");
  if (!(c.geodesic.dt > 0.0) || !(c.geodesic.t_end > 0.0) || c.geodesic.count < 1)
    throw ConfigError("geodesic: count >= 1, t_end > 0 and dt > 0 are required");
  if (!(c.metric.round > 0.0) || !(c.metric.fiber > 0.0)) throw ConfigError("debug metric coefficients must be positive");
  for (const auto& name : c.checks)
    if (!registry().count(name)) throw ConfigError("unknown check '" + name + "'");
  for (const auto& [key, value] : c.tolerances) {
    if (!kTolerances.count(key)) throw ConfigError("unknown tolerance '" + key + "'");
    if (!(value > 0.0)) throw ConfigError("tolerance '" + key + "' must be positive");
  }
  if (!c.search_reeb && !c.toric.reeb) throw ConfigError("toric.reeb must be a vector or \"search\"");
  if (c.toric.reeb && static_cast<int>(c.toric.reeb->size()) != c.toric.n)
    throw ConfigError("toric.reeb must have one component per torus direction");
  try {
    c.toric.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("toric: ") + e.what());
  }
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c = default_config();
  try {
    require_keys(j, "config", {"toric", "sampling", "derivatives", "tolerances", "checks", "geodesic", "debug"});
    if (j.contains("toric")) {
      const auto& t = j.at("toric");
      require_keys(t, "toric", {"normals", "reeb"});
      if (t.contains("normals")) {
        c.toric.normals = t.at("normals").get<std::vector<IntVec>>();
        if (c.toric.normals.empty()) throw ConfigError("toric.normals is empty");
        c.toric.n = static_cast<int>(c.toric.normals.front().size());
        c.toric.reeb.reset();
      }
      if (t.contains("reeb")) {
        const auto& r = t.at("reeb");
        if (r.is_string()) {
          if (r.get<std::string>() != "search") throw ConfigError("toric.reeb: expected a vector or \"search\"");
          c.search_reeb = true;
          c.toric.reeb.reset();
        } else {
          c.toric.reeb = r.get<RealVec>();
          c.search_reeb = false;
        }
      } else if (t.contains("normals")) {
        throw ConfigError("toric.reeb is required when normals are given");
      }
    }
    if (j.contains("sampling")) {
      const auto& s = j.at("sampling");
      require_keys(s, "sampling", {"points", "seed", "theta_margin", "r_range", "potential_points"});
      c.sampling.points = get_or(s, "points", c.sampling.points);
      c.sampling.seed = get_or(s, "seed", c.sampling.seed);
      c.sampling.theta_margin = get_or(s, "theta_margin", c.sampling.theta_margin);
      c.sampling.potential_points = get_or(s, "potential_points", c.sampling.potential_points);
      if (s.contains("r_range")) {
        auto rr = s.at("r_range").get<std::vector<double>>();
        if (rr.size() != 2) throw ConfigError("sampling.r_range must have two entries");
        c.sampling.r_min = rr[0];
        c.sampling.r_max = rr[1];
      }
    }
    if (j.contains("derivatives")) {
      const auto& d = j.at("derivatives");
      require_keys(d, "derivatives", {"mode", "fd_step"});
      const auto mode = get_or<std::string>(d, "mode", "analytic");
      if (mode == "analytic") {
        c.derivatives.mode = Differentiation::Mode::kAnalytic;
      } else if (mode == "fd") {
        c.derivatives.mode = Differentiation::Mode::kFiniteDifference;
      } else {
        throw ConfigError("derivatives.mode must be \"analytic\" or \"fd\"");
      }
      c.derivatives.fd_step = get_or(d, "fd_step", c.derivatives.fd_step);
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (!t.is_object()) throw ConfigError("tolerances must be an object");
      for (const auto& [key, value] : t.items()) {
        if (!kTolerances.count(key)) throw ConfigError("unknown tolerance '" + key + "'");
        c.tolerances[key] = value.get<double>();
      }
    }
    if (j.contains("checks")) c.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("geodesic")) {
      const auto& g = j.at("geodesic");
      require_keys(g, "geodesic", {"count", "t_end", "dt"});
      c.geodesic.count = get_or(g, "count", c.geodesic.count);
      c.geodesic.t_end = get_or(g, "t_end", c.geodesic.t_end);
      c.geodesic.dt = get_or(g, "dt", c.geodesic.dt);
    }
    if (j.contains("debug")) {
      const auto& d = j.at("debug");
      require_keys(d, "debug", {"round_coeff", "fiber_coeff"});
      c.metric.round = get_or(d, "round_coeff", c.metric.round);
      c.metric.fiber = get_or(d, "fiber_coeff", c.metric.fiber);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
  }
  validate_config(c);
  return c;
}

namespace {

json config_json(const RunConfig& c) {
  json j;
  j["toric"]["normals"] = c.toric.normals;
  if (c.search_reeb) {
    j["toric"]["reeb"] = "search";
  } else if (c.toric.reeb) {
    j["toric"]["reeb"] = *c.toric.reeb;
  }
  j["sampling"] = {{"points", c.sampling.points},
                   {"seed", c.sampling.seed},
                   {"theta_margin", c.sampling.theta_margin},
                   {"r_range", {c.sampling.r_min, c.sampling.r_max}},
                   {"potential_points", c.sampling.potential_points}};
  j["derivatives"] = {{"mode", c.derivatives.analytic() ? "analytic" : "fd"}, {"fd_step", c.derivatives.fd_step}};
  j["tolerances"] = c.tolerances;
  j["checks"] = c.checks;
  j["geodesic"] = {{"count", c.geodesic.count}, {"t_end", c.geodesic.t_end}, {"dt", c.geodesic.dt}};
  j["debug"] = {{"round_coeff", c.metric.round}, {"fiber_coeff", c.metric.fiber}};
  return j;
}

}  // namespace

std::string config_to_json(const RunConfig& config) { return config_json(config).dump(2); }

RunReport run(const RunConfig& config) {
  validate_config(config);
  RunReport report;
  report.config = config;
  RunContext ctx(config);
  report.overall_pass = !config.checks.empty();
  for (const auto& name : config.checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = registry().at(name)(ctx);
    } catch (const std::exception& e) {
      r = CheckResult{};
      r.report.check = name;
      r.report.max_abs = std::numeric_limits<double>::quiet_NaN();
      r.report.pass = false;
      r.error = e.what();
      r.report.notes.push_back(std::string("error: ") + e.what());
    }
    r.report.check = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.overall_pass = report.overall_pass && (r.report.pass || r.informational);
    report.results.push_back(std::move(r));
  }
  report.reeb_search = ctx.search;
  return report;
}

std::string report_to_json(const RunReport& report, bool include_timing) {
  json j;
  j["version"] = kVersion;
  j["config"] = config_json(report.config);
  j["results"] = json::array();
  for (const auto& r : report.results) {
    auto e = report_json(r.report);
    if (include_timing) e["seconds"] = r.seconds;
    e["informational"] = r.informational;
    if (!r.error.empty()) e["error"] = r.error;
    for (const auto& [k, v] : r.vectors) e[k] = v;
    if (r.report.check == "reeb-search" && r.error.empty()) {
      e["objective"] = r.report.fitted.at("objective");
      e["iterations"] = static_cast<int>(r.report.fitted.at("iterations"));
    }
    j["results"].push_back(std::move(e));
  }
  if (report.reeb_search) {
    j["reeb_found"] = report.reeb_search->reeb;
    j["objective"] = report.reeb_search->objective;
    j["iterations"] = report.reeb_search->iterations;
  }
  j["overall_pass"] = report.overall_pass;
  return j.dump(2);
}

std::string report_summary(const RunReport& report) {
  std::ostringstream out;
  char line[256];
  for (const auto& r : report.results) {
    const char* status = r.informational ? "INFO" : (r.report.pass ? "PASS" : "FAIL");
    std::snprintf(line, sizeof line, "%-4s %-22s max=%-11.3e points=%-4d %.2fs", status, r.report.check.c_str(),
                  r.report.max_abs, r.report.n_points, r.seconds);
    out << line << "\n";
    if (!r.error.empty()) out << "     error: " << r.error << "\n";
    if (r.informational)
      for (const auto& n : r.report.notes) out << "     " << n << "\n";
    if (!r.report.pass && r.error.empty())
      for (const auto& p : r.report.parts)
        if (!p.pass) {
          std::snprintf(line, sizeof line, "     failed part %s: max=%.3e tolerance=%.1e", p.check.c_str(), p.max_abs, p.tolerance);
          out << line << "\n";
        }
  }
  if (report.reeb_search) {
    const auto& b = report.reeb_search->reeb;
    out << "reeb found:";
    for (double v : b) {
      std::snprintf(line, sizeof line, " %.8f", v);
      out << line;
    }
    out << "\n";
  }
  out << "overall: " << (report.overall_pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string emit_forms(const std::vector<ChartPoint>& points) {
  if (points.empty()) throw Error("emit_forms: no points");
  const auto& base = points.front().chart;
  if (!base || base->dim() != 5) throw ChartMismatch("emit_forms: expects points on the T11 chart");
  auto candidates = t11_candidates(base);
  json j;
  j["coordinates"] = base->coords;
  j["ordering"] = json(std::vector<std::string>(kDisplayNames.begin(), kDisplayNames.end()));
  j["forms"] = json::array();
  for (const auto& [label, coeffs] : coefficient_strings()) {
    json f;
    f["name"] = label;
    for (const auto& c : candidates)
      if (c.label == label) f["degree"] = c.degree;
    f["coefficients"] = json::object();
    for (const auto& [k, v] : coeffs) f["coefficients"][k] = v;
    j["forms"].push_back(std::move(f));
  }
  j["points"] = json::array();
  for (const auto& p : points) {
    require_same_chart(base, p.chart, "emit_forms");
    json pj;
    pj["at"] = p.values;
    pj["values"] = json::object();
    for (const auto& [label, coeffs] : coefficient_strings()) {
      for (const auto& c : candidates)
        if (c.label == label) pj["values"][label] = display_components(c.form, p);
    }
    j["points"].push_back(std::move(pj));
  }
  return j.dump(2);
}

}  // namespace skf
