#include "sgsim/experiment.hpp"

#include "sgsim/analytics.hpp"
#include "sgsim/checkpoint.hpp"
#include "sgsim/dmrg.hpp"
#include "sgsim/fits.hpp"
#include "sgsim/measure.hpp"
#include "sgsim/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sgsim {

namespace {

using nlohmann::json;

json provenance_block(const Config& cfg, const DmrgSchedule* schedule) {
  json prov;
  prov["code_version"] = kCodeVersion;
  prov["seed"] = cfg.get_int("run", "seed", 12345);
  prov["threads"] = cfg.get_int("run", "threads", 1);
  prov["config"] = cfg.dump();
  if (schedule != nullptr) {
    json st = json::array();
    for (const auto& s : schedule->stages)
      st.push_back({{"chi", s.chi},
                    {"sv_cutoff", s.sv_cutoff},
                    {"lanczos_tol", s.lanczos_tol},
                    {"max_sweeps", s.max_sweeps}});
    prov["schedule"] = {{"stages", st},
                       {"energy_tol", schedule->energy_tol},
                       {"entropy_tol", schedule->entropy_tol},
                       {"rng_seed", schedule->rng_seed}};
  }
  return prov;
}

DmrgSchedule schedule_from_config(const Config& cfg) {
  const auto chi_start = static_cast<std::size_t>(cfg.get_int("schedule", "chi_start", 8));
  const auto chi_max = static_cast<std::size_t>(cfg.get_int("schedule", "chi_max", 32));
  const double sv_cutoff = cfg.get_double("schedule", "sv_cutoff", 1e-10);
  const auto max_sweeps = static_cast<std::size_t>(cfg.get_int("schedule", "max_sweeps", 100));
  auto sched = DmrgSchedule::ramp(chi_start, chi_max, sv_cutoff, max_sweeps);
  sched.energy_tol = cfg.get_double("schedule", "energy_tol", 1e-9);
  sched.entropy_tol = cfg.get_double("schedule", "entropy_tol", 1e-4);
  sched.rng_seed = static_cast<std::uint64_t>(cfg.get_int("run", "seed", 12345));
  return sched;
}

models::QecParams qec_from_config(const Config& cfg) {
  models::QecParams p;
  p.e_c0 = cfg.get_double("model", "e_c0", 1.0);
  p.delta = cfg.get_double("model", "delta", 0.2);
  p.e_g = cfg.get_double("model", "e_g", 0.0);
  p.e_j = cfg.get_double("model", "e_j", 0.0);
  p.e_j0 = cfg.get_double("model", "e_j0", 0.0);
  p.n_max = static_cast<int>(cfg.get_int("model", "n_max", 4));
  p.a = cfg.get_double("model", "a", 1.0);
  p.validate();
  return p;
}

models::XyzParams xyz_from_config(const Config& cfg) {
  models::XyzParams p;
  p.jx = cfg.get_double("model", "jx", 1.0);
  p.jy = cfg.get_double("model", "jy", 1.0);
  p.jz = cfg.get_double("model", "jz", 0.0);
  return p;
}

struct PointResult {
  double energy = 0.0;     // total (finite) or per-site (infinite)
  double entropy = 0.0;    // center bond
  double xi = std::nan(""); // infinite only
  double order = std::nan(""); // |<e^{i phi}>| or |<sigma^+>|
  double es_spacing = std::nan("");
  MpsState state;
};

PointResult run_point(const Config& cfg, const DmrgSchedule& sched) {
  const std::string type = cfg.get_string("model", "type");
  const std::string mode = cfg.get_string("model", "mode", "infinite");
  const bool infinite = mode == "infinite";
  if (!infinite && mode != "finite")
    throw ConfigError("model.mode must be finite or infinite");
  const auto length = static_cast<std::size_t>(cfg.get_int("model", "length", 0));

  MpoOperator h = [&] {
    if (type == "qec") return models::build_qec_mpo(qec_from_config(cfg), infinite ? 0 : length);
    if (type == "xyz") return models::build_xyz_mpo(xyz_from_config(cfg), infinite ? 0 : length);
    throw ConfigError("model.type must be qec or xyz");
  }();

  DenseTensor order_op = type == "qec"
      ? models::vertex_operator_matrix(static_cast<int>(cfg.get_int("model", "n_max", 4)))
      : models::sigma_plus();

  PointResult out;
  if (infinite) {
    auto res = run_idmrg(h, sched);
    out.energy = res.energy_density;
    out.state = std::move(res.state);
    out.entropy = entanglement_entropy(out.state, 0);
    try {
      out.xi = correlation_length(out.state);
    } catch (const NumericalError&) {
      // degenerate transfer spectrum: leave NaN, recorded as missing
    }
    out.order = std::abs(measure_local(out.state, order_op, 0));
    try {
      out.es_spacing = fits::extract_es_spacing(entanglement_spectrum(out.state, 0));
    } catch (const fits::FitError&) {
    }
  } else {
    if (length < 4) throw ConfigError("finite runs need model.length >= 4");
    auto res = run_finite_dmrg(h, length, sched);
    out.energy = res.energy;
    out.state = std::move(res.state);
    out.entropy = entanglement_entropy(out.state, length / 2 - 1);
    out.order = std::abs(measure_local(out.state, order_op, length / 2));
  }
  return out;
}

json point_to_json(const PointResult& p) {
  json j;
  j["energy"] = p.energy;
  j["entropy"] = p.entropy;
  if (std::isfinite(p.xi)) j["correlation_length"] = p.xi;
  if (std::isfinite(p.order)) j["order_parameter"] = p.order;
  if (std::isfinite(p.es_spacing)) j["es_spacing"] = p.es_spacing;
  return j;
}

ExperimentResult finish(json summary, const std::filesystem::path& out_dir,
                        std::vector<std::filesystem::path> artifacts) {
  std::filesystem::create_directories(out_dir);
  ExperimentResult res;
  res.summary_path = out_dir / "summary.json";
  std::ofstream out(res.summary_path);
  out << summary.dump(2) << '\n';
  res.summary = std::move(summary);
  res.artifacts = std::move(artifacts);
  return res;
}

ExperimentResult run_predict(const Config& cfg, const std::filesystem::path& out_dir) {
  const double beta2 = cfg.get_double("sg", "beta2");
  double m0 = cfg.get_double("sg", "m0", std::nan(""));
  double m;
  if (cfg.has("sg", "m")) {
    m = cfg.get_double("sg", "m");
    m0 = analytics::mass_parameter_from_soliton(beta2, m);
  } else {
    if (!std::isfinite(m0)) throw ConfigError("predict needs sg.m0 or sg.m");
    m = analytics::soliton_mass(beta2, m0);
  }
  const double xi = analytics::xi_sg(beta2);

  json summary;
  summary["experiment"] = "predict";
  summary["sg"] = {{"beta2", beta2}, {"xi", xi}, {"m0", m0}, {"soliton_mass", m}};
  summary["vacuum_energy_density"] = analytics::vacuum_energy_density(m, beta2);

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> artifacts;

  const int n_breathers = static_cast<int>(std::floor(1.0 / xi));
  std::vector<std::vector<double>> mass_rows;
  json masses = json::array();
  for (int n = 1; n <= n_breathers; ++n) {
    const double mn = analytics::breather_mass(n, m, beta2);
    mass_rows.push_back({static_cast<double>(n), mn});
    masses.push_back(mn);
  }
  summary["breather_masses"] = masses;
  if (n_breathers >= 1)
    summary["vertex_vev"] = analytics::vertex_vev(beta2, analytics::breather_mass(1, m, beta2));
  const auto mass_csv = out_dir / "masses.csv";
  write_csv(mass_csv, {"n", "mass"}, mass_rows);
  artifacts.push_back(mass_csv);

  if (cfg.has("predict", "r_values")) {
    models::SgParams sg;
    sg.beta2 = beta2;
    sg.xi_sg = xi;
    sg.m0 = m0;
    sg.m = m;
    sg.u = cfg.get_double("sg", "u", 1.0);
    sg.a = cfg.get_double("sg", "a", 1.0);
    std::vector<std::vector<double>> rows;
    for (double r : cfg.get_doubles("predict", "r_values"))
      rows.push_back({r, analytics::two_point_ff(r, sg)});
    const auto tp_csv = out_dir / "two_point.csv";
    write_csv(tp_csv, {"r", "two_point"}, rows);
    artifacts.push_back(tp_csv);
  }

  summary["provenance"] = provenance_block(cfg, nullptr);
  json files = json::array();
  for (const auto& a : artifacts) files.push_back(a.filename().string());
  summary["artifacts"] = files;
  return finish(std::move(summary), out_dir, std::move(artifacts));
}

ExperimentResult run_dmrg_experiment(const Config& cfg, const std::filesystem::path& out_dir) {
  const auto sched = schedule_from_config(cfg);
  auto point = run_point(cfg, sched);

  json summary;
  summary["experiment"] = "dmrg";
  summary["result"] = point_to_json(point);
  summary["provenance"] = provenance_block(cfg, &sched);

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> artifacts;
  if (cfg.get_bool("output", "checkpoint", true)) {
    const auto ckpt = out_dir / "state.json";
    save_mps(ckpt, point.state, {{"experiment", "dmrg"}});
    artifacts.push_back(ckpt);
    summary["checkpoint"] = ckpt.filename().string();
  }
  return finish(std::move(summary), out_dir, std::move(artifacts));
}

// applies an optional [fit] block to two named columns of the scan table
json apply_scan_fit(const Config& cfg, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
  json out;
  const std::string kind = cfg.get_string("fit", "kind", "linear");
  const std::string xname = cfg.get_string("fit", "x");
  const std::string yname = cfg.get_string("fit", "y");
  const auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("fit column not in scan table: " + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xc = col(xname), yc = col(yname);
  std::vector<double> xs, ys;
  for (const auto& row : rows) {
    if (!std::isfinite(row[xc]) || !std::isfinite(row[yc])) continue;
    xs.push_back(row[xc]);
    ys.push_back(row[yc]);
  }
  if (kind == "loglog" || kind == "logx") {
    for (auto& x : xs) x = std::log(x);
  }
  if (kind == "loglog" || kind == "logy") {
    for (auto& y : ys) y = std::log(y);
  }
  std::size_t begin = 0, end = xs.size();
  if (cfg.get_string("fit", "window", "interior") == "interior")
    std::tie(begin, end) = fits::interior_window(xs.size());
  const auto fit = fits::fit_linear(xs, ys, begin, end);
  out["kind"] = kind;
  out["x"] = xname;
  out["y"] = yname;
  out["slope"] = fit.slope;
  out["intercept"] = fit.intercept;
  out["residual_rms"] = fit.residual_rms;
  out["window"] = {fit.window_begin, fit.window_end};
  out["points_used"] = xs.size();
  if (cfg.has("fit", "expected_slope")) {
    const double expected = cfg.get_double("fit", "expected_slope");
    const double rtol = cfg.get_double("fit", "rtol", 0.05);
    out["expected_slope"] = expected;
    out["rtol"] = rtol;
    out["pass"] = std::abs(fit.slope - expected) <= rtol * std::abs(expected);
  }
  return out;
}

ExperimentResult run_scan(const Config& cfg, const std::filesystem::path& out_dir) {
  const std::string param = cfg.get_string("scan", "parameter"); // section.key
  const auto dot = param.find('.');
  if (dot == std::string::npos)
    throw ConfigError("scan.parameter must be section.key");
  const std::string psec = param.substr(0, dot);
  const std::string pkey = param.substr(dot + 1);
  const auto values = cfg.get_doubles("scan", "values");
  const auto sched = schedule_from_config(cfg);

  const std::vector<std::string> header = {param,     "energy", "entropy",
                                           "corr_len", "order",  "es_spacing"};
  std::vector<std::vector<double>> rows;
  json points = json::array();
  for (double v : values) {
    Config point_cfg = cfg;
    std::ostringstream vs;
    vs.precision(17);
    vs << v;
    point_cfg.set(psec, pkey, vs.str());
    json rec;
    rec[param] = v;
    try {
      const auto p = run_point(point_cfg, sched);
      rec.update(point_to_json(p));
      rec["status"] = "ok";
      rows.push_back({v, p.energy, p.entropy, p.xi, p.order, p.es_spacing});
    } catch (const std::exception& e) {
      rec["status"] = "error";
      rec["error"] = e.what();
    }
    points.push_back(std::move(rec));
  }

  std::filesystem::create_directories(out_dir);
  const auto csv = out_dir / "points.csv";
  write_csv(csv, header, rows);

  json summary;
  summary["experiment"] = "scan";
  summary["parameter"] = param;
  summary["points"] = std::move(points);
  summary["points_ok"] = rows.size();
  summary["points_total"] = values.size();
  if (cfg.has("fit", "x")) {
    try {
      summary["fit"] = apply_scan_fit(cfg, header, rows);
    } catch (const std::exception& e) {
      summary["fit"] = {{"status", "error"}, {"error", e.what()}};
    }
  }
  summary["provenance"] = provenance_block(cfg, &sched);
  summary["artifacts"] = {csv.filename().string()};
  return finish(std::move(summary), out_dir, {csv});
}

ExperimentResult run_fit(const Config& cfg, const std::filesystem::path& out_dir) {
  const std::filesystem::path input = cfg.get_string("fit", "input");
  const std::string kind = cfg.get_string("fit", "kind", "linear");
  json summary;
  summary["experiment"] = "fit";
  summary["input"] = input.string();

  if (kind == "cardy") {
    auto ls = read_csv_column(input, cfg.get_string("fit", "x", "length"));
    auto es = read_csv_column(input, cfg.get_string("fit", "y", "energy"));
    std::vector<std::pair<std::size_t, double>> pts;
    for (std::size_t i = 0; i < ls.size(); ++i)
      pts.emplace_back(static_cast<std::size_t>(std::llround(ls[i])), es[i]);
    const auto fit = fits::fit_cardy(pts, cfg.get_double("fit", "c", 1.0));
    summary["fit"] = {{"kind", "cardy"},
                      {"e0", fit.e0},
                      {"u", fit.u},
                      {"b", fit.b},
                      {"residual_rms", fit.residual_rms}};
  } else if (kind == "central_charge") {
    auto xi = read_csv_column(input, cfg.get_string("fit", "x", "corr_len"));
    auto s = read_csv_column(input, cfg.get_string("fit", "y", "entropy"));
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < xi.size(); ++i) pts.emplace_back(xi[i], s[i]);
    summary["fit"] = {{"kind", "central_charge"},
                      {"c", fits::fit_central_charge(pts)}};
  } else {
    auto xs = read_csv_column(input, cfg.get_string("fit", "x"));
    auto ys = read_csv_column(input, cfg.get_string("fit", "y"));
    if (kind == "loglog" || kind == "logx")
      for (auto& x : xs) x = std::log(x);
    if (kind == "loglog" || kind == "logy")
      for (auto& y : ys) y = std::log(y);
    std::size_t begin = 0, end = xs.size();
    if (cfg.get_string("fit", "window", "full") == "interior")
      std::tie(begin, end) = fits::interior_window(xs.size());
    const auto fit = fits::fit_linear(xs, ys, begin, end);
    summary["fit"] = {{"kind", kind},
                      {"slope", fit.slope},
                      {"intercept", fit.intercept},
                      {"residual_rms", fit.residual_rms},
                      {"window", {fit.window_begin, fit.window_end}}};
  }
  summary["provenance"] = provenance_block(cfg, nullptr);
  return finish(std::move(summary), out_dir, {});
}

ExperimentResult run_compare(const Config& cfg, const std::filesystem::path& out_dir) {
  // linear comparison of two measured columns: slope, intercept and the
  // residual RMS as a fraction of the data range, with an optional gate
  const std::filesystem::path input = cfg.get_string("compare", "input");
  auto xs = read_csv_column(input, cfg.get_string("compare", "x"));
  auto ys = read_csv_column(input, cfg.get_string("compare", "y"));
  const auto fit = fits::fit_linear(xs, ys);
  const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
  const double range = *ymax - *ymin;
  const double frac = range > 0.0 ? fit.residual_rms / range : 0.0;

  json summary;
  summary["experiment"] = "compare";
  summary["input"] = input.string();
  summary["fit"] = {{"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"residual_rms", fit.residual_rms},
                    {"residual_frac_of_range", frac}};
  if (cfg.has("compare", "max_residual_frac")) {
    const double gate = cfg.get_double("compare", "max_residual_frac");
    summary["pass"] = frac <= gate;
    summary["max_residual_frac"] = gate;
  }
  summary["provenance"] = provenance_block(cfg, nullptr);
  return finish(std::move(summary), out_dir, {});
}

} // namespace

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open CSV for writing: " + path.string());
  out.precision(17);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw ConfigError("CSV row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
}

std::vector<double> read_csv_column(const std::filesystem::path& path,
                                    const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV: " + path.string());
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end())
    throw ConfigError("CSV column '" + column + "' not found in " + path.string());
  const auto idx = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::size_t i = 0;
    double value = std::nan("");
    while (std::getline(ls, cell, ',')) {
      if (i == idx) value = std::stod(cell);
      ++i;
    }
    if (i <= idx) throw ConfigError("short CSV row in " + path.string());
    out.push_back(value);
  }
  return out;
}

ExperimentResult run_experiment(const Config& cfg, const std::filesystem::path& out_dir) {
  const std::string kind = cfg.get_string("experiment", "kind");
  if (kind == "predict") return run_predict(cfg, out_dir);
  if (kind == "dmrg") return run_dmrg_experiment(cfg, out_dir);
  if (kind == "scan") return run_scan(cfg, out_dir);
  if (kind == "fit") return run_fit(cfg, out_dir);
  if (kind == "compare") return run_compare(cfg, out_dir);
  throw ConfigError("unknown experiment kind: " + kind);
}

} // namespace sgsim
