// Copyright 2026 The Capillary Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "capillary/diagnostics.hpp"
#include "capillary/json_writer.hpp"
#include "capillary/pipeline.hpp"

namespace fs = std::filesystem;
using namespace capillary;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
  std::string config_path;
  std::string demo_name;
  int level = 4;
  std::string out_dir;
  double tol = 1e-9;
  int max_iter = 120;
  std::string seed_h_path;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_solver) {
  cmd->add_option("--config", args.config_path, "Configuration JSON file");
  cmd->add_option("--demo", args.demo_name,
                  "Built-in configuration (sphere-m1, antipodal-m2, "
                  "equatorial-m3, tetrahedral-m4, rightangle-m2)");
  if (with_solver) {
    cmd->add_option("--level", args.level, "Subdivision depth, 0..7")
        ->check(CLI::Range(0, 7));
    cmd->add_option("--out", args.out_dir, "Output directory");
    cmd->add_option("--tol", args.tol, "Solver area tolerance");
    cmd->add_option("--max-iter", args.max_iter, "Solver iteration cap");
    cmd->add_option("--seed-h", args.seed_h_path,
                    "JSON array with the initial support vector");
  }
}

CapillaryConfig resolve_config(const CommonArgs& args) {
  if (!args.demo_name.empty()) return demo_config(args.demo_name);
  if (args.config_path.empty()) {
    throw CLI::ValidationError("either --config or --demo is required");
  }
  return load_config(args.config_path);
}

SolverOptions resolve_solver(const CommonArgs& args) {
  SolverOptions opts;
  opts.area_tolerance = args.tol;
  opts.max_iterations = args.max_iter;
  if (!args.seed_h_path.empty()) {
    std::ifstream in(args.seed_h_path);
    if (!in) {
      throw std::invalid_argument("cannot open seed file " + args.seed_h_path);
    }
    nlohmann::json doc = nlohmann::json::parse(in);
    opts.initial_h = doc.get<std::vector<double>>();
  }
  return opts;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string planes_to_json(const CapillaryOutput& output) {
  JsonWriter w;
  w.begin_array();
  for (const ContainerPlane& plane : output.planes) {
    w.begin_object();
    w.key("face").value(plane.face);
    w.key("normal").value(std::vector<double>{
        plane.normal.x(), plane.normal.y(), plane.normal.z()});
    w.key("support").value(plane.support);
    w.end_object();
  }
  w.end_array();
  return w.take() + "\n";
}

std::string support_to_json(const CapillaryOutput& output) {
  JsonWriter w;
  w.begin_object();
  w.key("atom_count").value(static_cast<int>(output.support.values.size()));
  w.key("area_residual").value(output.stats.solver_area_residual);
  w.key("h").begin_array();
  for (double h : output.support.values) w.value(h);
  w.end_array();
  w.key("areas").begin_array();
  for (const auto& f : output.polytope.facets) w.value(f.area);
  w.end_array();
  w.end_object();
  return w.take() + "\n";
}

int cmd_check(const CommonArgs& args) {
  const CapillaryConfig config = resolve_config(args);
  std::cout << "faces: " << config.size() << ", H = " << config.H << "\n";
  try {
    validate(config);
  } catch (const std::exception& e) {
    std::cout << "invalid: " << e.what() << "\n";
    return kExitDomain;
  }
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t j = i + 1; j < config.size(); ++j) {
      const double sep = config.faces[i].normal.angle_to(config.faces[j].normal);
      const double need =
          config.cap_angular_radius(i) + config.cap_angular_radius(j);
      std::cout << "caps " << i << "," << j << ": separation "
                << sep * 180.0 / kPi << " deg, required "
                << need * 180.0 / kPi << " deg, margin "
                << (sep - need) * 180.0 / kPi << " deg\n";
    }
  }
  const Vec3 residual = check_balancing(config);
  std::cout << "balancing residual: [" << residual.x() << ", " << residual.y()
            << ", " << residual.z() << "], norm " << residual.norm() << "\n";
  if (residual.norm() > args.tol) {
    std::cout << "unbalanced beyond tolerance " << args.tol
              << "; run 'capillary repair'\n";
    return kExitDomain;
  }
  std::cout << "ok\n";
  return kExitOk;
}

int cmd_repair(const CommonArgs& args) {
  CapillaryConfig config = resolve_config(args);
  const CapillaryConfig repaired = repair_areas(config);
  const std::string text = config_to_json(repaired);
  if (args.out_dir.empty()) {
    std::cout << text;
  } else {
    fs::create_directories(args.out_dir);
    write_file(fs::path(args.out_dir) / "repaired.json", text);
    std::cout << "wrote " << (fs::path(args.out_dir) / "repaired.json").string()
              << "\n";
  }
  std::cout << "residual after repair: " << check_balancing(repaired).norm()
            << "\n";
  return kExitOk;
}

void print_summary(const DiagnosticsReport& report) {
  std::cout << "atoms " << report.atom_count << ", solver iterations "
            << report.solver_iterations << ", area residual "
            << report.solver_area_residual << "\n";
  std::cout << "sigma: " << report.sigma_vertices << " vertices, area "
            << report.sigma_area << ", energy " << report.energy << "\n";
  std::cout << "convexity violation " << report.convexity_violation
            << ", patch radius error " << report.patch_radius_max_rel_error
            << "\n";
  for (const FaceDiagnostics& fd : report.faces) {
    std::cout << "face " << fd.face << ": theta " << fd.theta_deg
              << " deg, measured " << fd.contact_angle_mean_deg
              << " deg (max dev " << fd.contact_angle_max_dev_deg
              << "), identity residual " << fd.area_identity_residual
              << ", disk area " << fd.disk_area << "\n";
  }
}

int cmd_solve(const CommonArgs& args, bool export_polytope) {
  const CapillaryConfig config = resolve_config(args);
  const SolverOptions opts = resolve_solver(args);
  const CapillaryOutput output = run(config, args.level, opts);
  const DiagnosticsReport report = build_report(output);

  const fs::path dir = args.out_dir.empty() ? fs::path(".") : fs::path(args.out_dir);
  fs::create_directories(dir);
  if (export_polytope) {
    write_file(dir / "polytope.off", to_off(output.polytope));
    write_file(dir / "support.json", support_to_json(output));
    std::cout << "wrote polytope.off, support.json in " << dir.string() << "\n";
  } else {
    write_file(dir / "sigma.obj", sigma_to_obj(output));
    write_file(dir / "disks.obj", disks_to_obj(output));
    write_file(dir / "planes.json", planes_to_json(output));
    write_file(dir / "report.json", report_to_json(report));
    std::cout << "wrote sigma.obj, disks.obj, planes.json, report.json in "
              << dir.string() << "\n";
  }
  print_summary(report);
  return kExitOk;
}

int cmd_verify(const CommonArgs& args) {
  const CapillaryConfig config = resolve_config(args);
  const SolverOptions opts = resolve_solver(args);
  const CapillaryOutput output = run(config, args.level, opts);
  DiagnosticsReport report = build_report(output);

  report.hausdorff_uniqueness = verify_uniqueness(config, args.level, opts);
  const double diameter = output.polytope.diameter() + 2.0 * output.scale;
  std::cout << "uniqueness hausdorff: " << *report.hausdorff_uniqueness
            << " (diameter " << diameter << ")\n";

  const auto symmetries = detect_symmetries(config);
  std::cout << "detected reflection symmetries: " << symmetries.size() << "\n";
  if (!symmetries.empty()) {
    double worst = 0.0;
    for (const auto& sym : symmetries) {
      const double d = verify_symmetry(config, args.level, sym.plane_normal,
                                       sym.permutation, opts);
      worst = std::max(worst, d);
    }
    report.hausdorff_symmetry = worst;
    std::cout << "symmetry hausdorff (worst): " << worst << "\n";
  }
  print_summary(report);
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    write_file(fs::path(args.out_dir) / "report.json", report_to_json(report));
    std::cout << "wrote report.json in " << args.out_dir << "\n";
  }
  return kExitOk;
}

int cmd_demo(const CommonArgs& args) {
  if (args.demo_name.empty()) {
    std::cerr << "demo: --demo NAME is required; names:";
    for (const auto& name : demo_names()) std::cerr << " " << name;
    std::cerr << "\n";
    return kExitUsage;
  }
  const CapillaryConfig config = demo_config(args.demo_name);
  const std::string text = config_to_json(config);
  if (args.out_dir.empty()) {
    std::cout << text;
  } else {
    fs::create_directories(args.out_dir);
    const fs::path path = fs::path(args.out_dir) / (args.demo_name + ".json");
    write_file(path, text);
    std::cout << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Constant-mean-curvature capillary surfaces in polyhedral containers: "
      "build the convex body with prescribed facet data, extract the free "
      "surface, and verify it"};
  app.require_subcommand(1);

  CommonArgs check_args, repair_args, solve_args, verify_args, demo_args,
      export_args;
  CLI::App* check = app.add_subcommand(
      "check", "Validate a configuration and report the balancing residual");
  add_common(check, check_args, false);
  check->add_option("--tol", check_args.tol, "Balancing tolerance");

  CLI::App* repair = app.add_subcommand(
      "repair", "Minimum-norm area correction restoring the balance");
  add_common(repair, repair_args, false);
  repair->add_option("--out", repair_args.out_dir, "Output directory");

  CLI::App* solve = app.add_subcommand(
      "solve", "Run the construction and write meshes and the report");
  add_common(solve, solve_args, true);

  CLI::App* verify = app.add_subcommand(
      "verify", "Solve plus uniqueness and symmetry cross-checks");
  add_common(verify, verify_args, true);

  CLI::App* demo =
      app.add_subcommand("demo", "Emit a built-in configuration as JSON");
  add_common(demo, demo_args, false);
  demo->add_option("--out", demo_args.out_dir, "Output directory");

  CLI::App* exporter = app.add_subcommand(
      "export", "Run the construction and export the generating polytope");
  add_common(exporter, export_args, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_args);
    if (repair->parsed()) return cmd_repair(repair_args);
    if (solve->parsed()) return cmd_solve(solve_args, false);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (demo->parsed()) return cmd_demo(demo_args);
    if (exporter->parsed()) return cmd_solve(export_args, true);
  } catch (const std::invalid_argument& e) {
    // Unknown demo names and malformed inputs are usage errors.
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    if (what.find("unknown demo") != std::string::npos ||
        what.find("JSON parse error") != std::string::npos ||
        what.find("cannot open") != std::string::npos ||
        what.find("malformed") != std::string::npos) {
      return kExitUsage;
    }
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
