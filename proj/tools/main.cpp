// cornerscat command-line interface.
//
// Exit codes: 0 success, 1 domain failure (refutation, non-convergence,
// solver failure), 2 usage or configuration error.

#include "config.hpp"

#include <cornerscat/certify/certifier.hpp>
#include <cornerscat/inverse/invert.hpp>
#include <cornerscat/scatter/disk_series.hpp>
#include <cornerscat/scatter/far_field.hpp>
#include <cornerscat/scatter/transmission.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>

namespace fs = std::filesystem;
using namespace cornerscat;
using cli::ConfigError;
using cli::json;
using cli::Node;

namespace {

struct DomainFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << j.dump(2) << '\n';
}

/// <output_dir>/<tag>, created on demand.
fs::path run_directory(const Node& root, const std::string& default_tag) {
  const auto dir = fs::path(root.text("output_dir", "runs")) / root.text("tag", default_tag);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("output_dir: cannot create " + dir.string() + " (" + ec.message() + ")");
  return dir;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// ---------------------------------------------------------------- certify

certify::WavenumberPair parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    throw ConfigError("--pairs: expected q1,q2 but got '" + s + "'");
  try {
    return {exact::BigRational::parse(s.substr(0, comma)), exact::BigRational::parse(s.substr(comma + 1))};
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--pairs '" + s + "': " + e.what());
  }
}

int cmd_certify(int m_min, int m_max, const std::vector<std::string>& pair_args, const std::string& out) {
  if (m_min < 6) throw ConfigError("--m-min: order must be >= 6");
  if (m_min > m_max) throw ConfigError("--m-min must not exceed --m-max");
  std::vector<certify::WavenumberPair> pairs;
  for (const auto& s : pair_args) pairs.push_back(parse_pair(s));
  if (pairs.empty()) pairs = certify::default_pairs();

  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ConfigError("--out: cannot create " + out + " (" + ec.message() + ")");

  bool all = true;
  std::cout << std::setw(4) << "M" << std::setw(8) << "rank" << std::setw(9) << "nullity" << "  verdict\n";
  for (int m = m_min; m <= m_max; ++m) {
    const auto rep = certify::certify_vanishing(m, pairs);
    write_json(fs::path(out) / ("certificate_M" + std::to_string(m) + ".json"), certify::to_json(rep));
    std::cout << std::setw(4) << m << std::setw(8) << rep.rank << std::setw(9) << rep.nullity << "  "
              << certify::to_string(rep.verdict) << std::endl;
    all = all && rep.verdict == certify::Verdict::certified;
  }
  return all ? 0 : 1;
}

// ---------------------------------------------------------------- forward

int cmd_forward(const std::string& path) {
  const json cfg = cli::load_json(path);
  const Node root(cfg, "");
  const auto geom = cli::parse_geometry(root.child("geometry"));
  const auto medium = cli::parse_medium(root.child("medium"));
  const auto wave = cli::parse_wave(root.child("wave"));
  const auto n_dirs = root.count("n_directions", 64);
  if (n_dirs < 8) throw ConfigError("n_directions: need at least 8");
  const bool is_rect = std::holds_alternative<scatter::Rectangle>(geom);
  std::size_t count = is_rect ? 64 : 256;
  double grading_p = 4.0;
  if (root.has("discretization")) {
    const auto d = root.child("discretization");
    const char* key = is_rect ? "n_per_side" : "n_nodes";
    count = d.count(key, count);
    grading_p = d.number("grading_p", grading_p);
    if (count < 8) throw ConfigError(cli::join(d.path(), key) + ": need at least 8");
    if (!is_rect && count % 2 != 0) throw ConfigError(cli::join(d.path(), key) + ": must be even");
    if (is_rect && !(grading_p >= 2.0)) throw ConfigError(cli::join(d.path(), "grading_p") + ": must be >= 2");
  }
  const bool oracle = root.flag("oracle", false);
  if (oracle && is_rect) throw ConfigError("oracle: the series oracle needs a disk geometry");
  const auto dir = run_directory(root, "forward");

  if (medium.degenerate()) std::cerr << "warning: q0 = 1 means no contrast; the far field is identically zero\n";

  scatter::FarFieldPattern far, far2;
  double rcond = 1.0;
  std::size_t n_nodes = 0;
  try {
    const auto disc = scatter::discretize(geom, count, grading_p);
    const auto sol = scatter::solve_transmission(geom, medium, wave, disc);
    far = scatter::evaluate_far(sol, n_dirs);
    rcond = sol.rcond;
    n_nodes = disc.size();
    const auto disc2 = scatter::discretize(geom, 2 * count, grading_p);
    far2 = scatter::evaluate_far(scatter::solve_transmission(geom, medium, wave, disc2), n_dirs);
  } catch (const scatter::BadMesh& e) {
    throw ConfigError(std::string("discretization: ") + e.what());
  } catch (const scatter::SingularSystem& e) {
    throw DomainFailure(e.what());
  }
  scatter::write_csv((dir / "far_field.csv").string(), far);

  const double norm = scatter::l2_norm(far);
  const double est = scatter::l2_distance(far, far2);
  json side = {{"config", cfg},
               {"n_nodes", n_nodes},
               {"rcond", rcond},
               {"far_field_l2_norm", norm},
               {"error_estimate", est},
               {"timestamp", iso_timestamp()}};
  std::cout << "far field: " << (dir / "far_field.csv").string() << "  (" << n_nodes << " nodes, ||u_inf|| = "
            << fmt(norm) << ", error estimate " << fmt(est) << ")\n";

  if (oracle) {
    const auto& disk = std::get<scatter::Disk>(geom);
    const auto series = scatter::disk_series_solution(medium, disk.radius, wave,
                                                      scatter::default_disk_terms(medium, disk.radius), n_dirs,
                                                      disk.center);
    scatter::write_csv((dir / "oracle.csv").string(), series);
    const double ref = scatter::l2_norm(series);
    const double rel = ref > 0.0 ? scatter::l2_distance(far, series) / ref : scatter::l2_distance(far, series);
    side["oracle_relative_l2"] = rel;
    std::cout << "oracle relative L2 discrepancy: " << fmt(rel) << '\n';
  }
  write_json(dir / "far_field.json", side);
  return 0;
}

// ---------------------------------------------------------------- invert

struct DataSource {
  scatter::FarFieldPattern g;
  std::optional<inverse::RectangleParams> truth;
};

/// Synthetic data from a "truth" block, or a measured CSV from "measurement".
DataSource load_data(const Node& root, const inverse::MeasurementSetup& setup, const fs::path& config_path) {
  DataSource d;
  if (root.has("truth")) {
    d.truth = cli::parse_rectangle_params(root.child("truth"));
    try {
      d.g = inverse::synthesize_measurement(*d.truth, setup);
    } catch (const scatter::BadMesh& e) {
      throw ConfigError(std::string("setup.forward: ") + e.what());
    }
    return d;
  }
  if (!root.has("measurement")) throw ConfigError("truth: missing (or give a measurement CSV path)");
  fs::path p = root.text("measurement");
  if (p.is_relative()) p = config_path.parent_path() / p;
  try {
    d.g = scatter::read_csv(p.string());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("measurement: ") + e.what());
  }
  if (d.g.size() != setup.n_directions)
    throw ConfigError("measurement: file has " + std::to_string(d.g.size()) + " directions, setup.n_directions is " +
                      std::to_string(setup.n_directions));
  return d;
}

int cmd_invert(const std::string& path) {
  const json cfg = cli::load_json(path);
  const Node root(cfg, "");
  const auto setup = cli::parse_setup(root.child("setup"));
  const auto opt = root.has("optimizer") ? cli::parse_optimizer(root.child("optimizer")) : inverse::OptConfig{};
  const auto dir = run_directory(root, "invert");
  const auto data = load_data(root, setup, path);
  scatter::write_csv((dir / "data.csv").string(), data.g);

  const auto t0 = std::chrono::steady_clock::now();
  const auto res = inverse::invert(data.g, setup, opt);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json out = inverse::to_json(res);
  write_json(dir / "result.json", out);

  const char* names[5] = {"c1", "c2", "a", "b", "phi"};
  const auto est = res.theta_hat.to_array();
  if (data.truth) {
    const auto truth = inverse::canonicalize(*data.truth);
    const auto rel = inverse::relative_errors(res.theta_hat, *data.truth);
    const auto tv = truth.to_array();
    json cmp = json::object();
    std::cout << std::setw(6) << "param" << std::setw(26) << "recovered" << std::setw(26) << "true" << std::setw(26)
              << "relative error\n";
    for (std::size_t i = 0; i < 5; ++i) {
      cmp[names[i]] = {{"recovered", est[i]}, {"true", tv[i]}, {"relative_error", rel[i]}};
      std::cout << std::setw(6) << names[i] << std::setw(26) << fmt(est[i]) << std::setw(26) << fmt(tv[i])
                << std::setw(26) << fmt(rel[i]) << '\n';
    }
    write_json(dir / "comparison.json", {{"truth", inverse::to_json(truth)}, {"parameters", cmp}});
  } else {
    for (std::size_t i = 0; i < 5; ++i) std::cout << std::setw(6) << names[i] << std::setw(26) << fmt(est[i]) << '\n';
  }
  write_json(dir / "run.json", {{"config", cfg},
                                {"setup", cli::setup_json(setup)},
                                {"optimizer", cli::optimizer_json(opt)},
                                {"seconds", seconds},
                                {"timestamp", iso_timestamp()}});
  std::cout << "misfit " << fmt(res.misfit) << ", " << res.n_forward_solves << " forward solves, "
            << (res.converged ? "converged" : "NOT converged") << '\n';
  return res.converged ? 0 : 1;
}

// ---------------------------------------------------------------- landscape

inverse::LandscapeAxis parse_axis(const Node& n) {
  inverse::LandscapeAxis ax{n.text("name"), n.number("lo"), n.number("hi"), n.count("count")};
  cli::checked(n.path(), [&] {
    (void)inverse::parameter_index(ax.name);
    (void)ax.values();
    return 0;
  });
  return ax;
}

int cmd_landscape(const std::string& path) {
  const json cfg = cli::load_json(path);
  const Node root(cfg, "");
  const auto setup = cli::parse_setup(root.child("setup"));
  const auto ax1 = parse_axis(root.child("axis1"));
  const auto ax2 = parse_axis(root.child("axis2"));
  if (ax1.name == ax2.name) throw ConfigError("axis2.name: must differ from axis1.name");
  const auto dir = run_directory(root, "landscape");
  const auto data = load_data(root, setup, path);
  inverse::RectangleParams fixed;
  if (root.has("fixed"))
    fixed = cli::parse_rectangle_params(root.child("fixed"));
  else if (data.truth)
    fixed = *data.truth;
  else
    throw ConfigError("fixed: missing (needed when no truth is given)");

  const auto grid = inverse::landscape(data.g, setup, ax1, ax2, fixed);
  {
    std::ofstream os(dir / "landscape.csv");
    if (!os) throw std::runtime_error("cannot write " + (dir / "landscape.csv").string());
    inverse::write_landscape_csv(os, grid);
  }
  Eigen::Index r = 0, c = 0;
  const double best = grid.misfit.minCoeff(&r, &c);
  json side = {{"config", cfg},
               {"axis1", ax1.name},
               {"axis2", ax2.name},
               {"rows", grid.values1.size() * grid.values2.size()},
               {"minimum", {{"p1", grid.values1[static_cast<std::size_t>(r)]},
                            {"p2", grid.values2[static_cast<std::size_t>(c)]},
                            {"misfit", best}}},
               {"timestamp", iso_timestamp()}};
  if (data.truth) side["truth"] = inverse::to_json(*data.truth);
  write_json(dir / "landscape.json", side);
  std::cout << "landscape: " << (dir / "landscape.csv").string() << " (" << grid.values1.size() * grid.values2.size()
            << " rows), minimum " << fmt(best) << " at (" << fmt(grid.values1[static_cast<std::size_t>(r)]) << ", "
            << fmt(grid.values2[static_cast<std::size_t>(c)]) << ")\n";
  return 0;
}

// ---------------------------------------------------------------- gap

int cmd_gap(const std::string& path) {
  const json cfg = cli::load_json(path);
  const Node root(cfg, "");
  const auto setup = cli::parse_setup(root.child("setup"));
  const auto t1 = cli::parse_rectangle_params(root.child("rectangle1"));
  const auto t2 = cli::parse_rectangle_params(root.child("rectangle2"));
  const double factor = root.number("factor", 1e3);
  if (!(factor > 0.0)) throw ConfigError("factor: must be positive");
  const auto dir = run_directory(root, "gap");
  double gap = 0, e1 = 0, e2 = 0;
  try {
    gap = inverse::far_field_gap(t1, t2, setup);
    e1 = inverse::solver_error_estimate(t1, setup);
    e2 = inverse::solver_error_estimate(t2, setup);
  } catch (const scatter::BadMesh& e) {
    throw ConfigError(std::string("setup.forward: ") + e.what());
  }
  const double threshold = factor * (e1 + e2);
  const bool exceeds = gap > threshold;
  write_json(dir / "gap.json", {{"gap", gap}, {"threshold", threshold}, {"exceeds", exceeds}});
  write_json(dir / "run.json", {{"config", cfg},
                                {"error_estimate1", e1},
                                {"error_estimate2", e2},
                                {"timestamp", iso_timestamp()}});
  std::cout << "gap " << fmt(gap) << ", threshold " << fmt(threshold) << (exceeds ? ": exceeds" : ": below") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cornerscat: corner scattering certification, forward solver and inversion"};
  app.require_subcommand(1);

  int m_min = 6, m_max = 40;
  std::vector<std::string> pairs;
  std::string out = "runs/certify";
  auto* certify = app.add_subcommand("certify", "certify vanishing of corner Taylor coefficients for a range of orders");
  certify->add_option("--m-min", m_min, "smallest truncation order (>= 6)");
  certify->add_option("--m-max", m_max, "largest truncation order");
  certify->add_option("--pairs", pairs, "wavenumber pair q1,q2 as rationals (repeatable)")->delimiter('\0');
  certify->add_option("--out", out, "directory for the certificate JSON files");

  std::string config;
  auto add_cfg = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("config", config, "JSON run configuration")->required();
    return c;
  };
  auto* forward = add_cfg("forward", "solve the transmission problem and write the far field");
  auto* invert = add_cfg("invert", "recover a rectangle from one far-field pattern");
  auto* landscape = add_cfg("landscape", "scan the misfit over two rectangle parameters");
  auto* gap = add_cfg("gap", "far-field gap between two rectangles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*certify) return cmd_certify(m_min, m_max, pairs, out);
    if (*forward) return cmd_forward(config);
    if (*invert) return cmd_invert(config);
    if (*landscape) return cmd_landscape(config);
    if (*gap) return cmd_gap(config);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
