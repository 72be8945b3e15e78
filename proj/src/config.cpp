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

#include "capillary/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace capillary {

namespace {

bool is_half_pi(double theta) {
  return std::abs(theta - 0.5 * kPi) <= CapillaryConfig::kAngleSnapTol;
}
bool is_pi(double theta) {
  return std::abs(theta - kPi) <= CapillaryConfig::kAngleSnapTol;
}

}  // namespace

bool CapillaryConfig::has_half_pi_face() const {
  for (const Face& f : faces) {
    if (is_half_pi(f.theta)) return true;
  }
  return false;
}

std::size_t CapillaryConfig::half_pi_face_index() const {
  for (std::size_t j = 0; j < faces.size(); ++j) {
    if (is_half_pi(faces[j].theta)) return j;
  }
  throw std::logic_error("config has no right-angle face");
}

Vec3 check_balancing(const CapillaryConfig& config) {
  const double c = kPi / (4.0 * config.H * config.H);
  Vec3 residual = Vec3::Zero();
  for (const Face& f : config.faces) {
    const double s = std::sin(f.theta);
    residual += (f.area - c * s * s) * f.normal.vec();
  }
  return residual;
}

void validate(const CapillaryConfig& config) {
  if (!(config.H > 0.0)) {
    throw std::invalid_argument("config: H must be positive");
  }
  if (config.faces.empty()) {
    throw std::invalid_argument("config: at least one face required");
  }
  std::size_t half_pi_count = 0;
  for (std::size_t j = 0; j < config.faces.size(); ++j) {
    const Face& f = config.faces[j];
    if (!(f.area > 0.0)) {
      throw std::invalid_argument("config: face " + std::to_string(j) +
                                  ": a_j must be positive");
    }
    if (is_half_pi(f.theta)) {
      if (!config.flags.allow_theta_half_pi) {
        throw std::invalid_argument(
            "config: face " + std::to_string(j) +
            ": theta = 90 deg requires the allow_theta_half_pi flag");
      }
      ++half_pi_count;
      continue;
    }
    if (is_pi(f.theta)) {
      if (!config.flags.allow_theta_pi) {
        throw std::invalid_argument(
            "config: face " + std::to_string(j) +
            ": theta = 180 deg requires the allow_theta_pi flag");
      }
      continue;
    }
    if (!(f.theta > 0.5 * kPi) || !(f.theta < kPi)) {
      throw std::invalid_argument("config: face " + std::to_string(j) +
                                  ": theta must lie in (90, 180) degrees");
    }
  }
  if (half_pi_count > 1) {
    throw std::invalid_argument(
        "config: at most one face may have theta = 90 deg");
  }

  // Closed caps of angular radius pi - theta_j must not overlap. Exact
  // tangency is accepted (the angle tolerance absorbs rounding).
  constexpr double kAngleTol = 1e-9;
  for (std::size_t i = 0; i < config.faces.size(); ++i) {
    for (std::size_t j = i + 1; j < config.faces.size(); ++j) {
      const double sep = config.faces[i].normal.angle_to(config.faces[j].normal);
      const double need =
          config.cap_angular_radius(i) + config.cap_angular_radius(j);
      if (sep < need - kAngleTol) {
        std::ostringstream msg;
        msg << "config: caps of faces " << i << " and " << j
            << " overlap: separation " << sep << " rad < " << need << " rad";
        throw std::invalid_argument(msg.str());
      }
    }
  }

  // With one or two non-antipodal faces the geometry forces
  // a_j = pi/(4H^2) sin^2 theta_j.
  const double c = kPi / (4.0 * config.H * config.H);
  auto forced = [&](std::size_t j) {
    const double s = std::sin(config.faces[j].theta);
    return c * s * s;
  };
  if (config.faces.size() == 2) {
    const double sep = config.faces[0].normal.angle_to(config.faces[1].normal);
    if (sep < kPi - 1e-9) {
      for (std::size_t j = 0; j < 2; ++j) {
        const double want = forced(j);
        if (std::abs(config.faces[j].area - want) > 1e-9 * std::max(1.0, want)) {
          std::ostringstream msg;
          msg << "config: two non-antipodal faces force a_" << j << " = "
              << want << " (pi/(4 H^2) sin^2 theta), got "
              << config.faces[j].area;
          throw std::invalid_argument(msg.str());
        }
      }
    }
  }
}

bool is_balanced(const CapillaryConfig& config, double tol) {
  try {
    validate(config);
  } catch (const std::exception&) {
    return false;
  }
  return check_balancing(config).norm() <= tol;
}

CapillaryConfig repair_areas(const CapillaryConfig& config) {
  const Vec3 residual = check_balancing(config);
  const std::size_t m = config.faces.size();
  Eigen::MatrixXd P(3, m);
  for (std::size_t j = 0; j < m; ++j) P.col(j) = config.faces[j].normal.vec();
  // Minimum-norm solution of P * delta = -residual. The residual always lies
  // in the column span of P, so the least-squares solution is exact.
  Eigen::VectorXd delta =
      P.completeOrthogonalDecomposition().solve(-residual);
  CapillaryConfig repaired = config;
  for (std::size_t j = 0; j < m; ++j) {
    repaired.faces[j].area += delta[static_cast<Eigen::Index>(j)];
    if (!(repaired.faces[j].area > 0.0)) {
      throw std::runtime_error(
          "repair_areas: correction would make a_" + std::to_string(j) +
          " non-positive");
    }
  }
  return repaired;
}

CapillaryConfig config_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") +
                                e.what());
  }
  CapillaryConfig config;
  try {
    config.H = doc.at("H").get<double>();
    for (const auto& face : doc.at("faces")) {
      const auto& p = face.at("p");
      Face f;
      f.normal = UnitVector(p.at(0).get<double>(), p.at(1).get<double>(),
                            p.at(2).get<double>());
      f.theta = face.at("theta_deg").get<double>() * kPi / 180.0;
      f.area = face.at("a").get<double>();
      config.faces.push_back(f);
    }
    if (doc.contains("flags")) {
      const auto& flags = doc["flags"];
      config.flags.allow_theta_pi = flags.value("allow_theta_pi", false);
      config.flags.allow_theta_half_pi =
          flags.value("allow_theta_half_pi", false);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: malformed field: ") +
                                e.what());
  }
  return config;
}

CapillaryConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

std::string config_to_json(const CapillaryConfig& config) {
  nlohmann::ordered_json doc;
  doc["H"] = config.H;
  doc["faces"] = nlohmann::ordered_json::array();
  for (const Face& f : config.faces) {
    nlohmann::ordered_json face;
    face["p"] = {f.normal.x(), f.normal.y(), f.normal.z()};
    face["theta_deg"] = f.theta * 180.0 / kPi;
    face["a"] = f.area;
    doc["faces"].push_back(face);
  }
  if (config.flags.allow_theta_pi || config.flags.allow_theta_half_pi) {
    doc["flags"] = {{"allow_theta_pi", config.flags.allow_theta_pi},
                    {"allow_theta_half_pi", config.flags.allow_theta_half_pi}};
  }
  return doc.dump(2) + "\n";
}

CapillaryConfig demo_config(const std::string& name) {
  CapillaryConfig config;
  config.H = 0.5;
  auto face = [](double x, double y, double z, double theta, double a) {
    Face f;
    f.normal = UnitVector(x, y, z);
    f.theta = theta;
    f.area = a;
    return f;
  };
  const double s3 = std::sqrt(3.0);
  if (name == "sphere-m1") {
    // Truncated ball: a = pi sin^2 theta, the unique balanced choice.
    config.faces = {face(0, 0, 1, 2.0 * kPi / 3.0, 0.75 * kPi)};
  } else if (name == "antipodal-m2") {
    // Any equal pair balances; this one is not a piece of a sphere.
    config.faces = {face(0, 0, 1, 0.75 * kPi, 2.0),
                    face(0, 0, -1, 0.75 * kPi, 2.0)};
  } else if (name == "equatorial-m3") {
    // Caps of angular radius 60 deg at 120 deg spacing touch tangentially.
    const double theta = 2.0 * kPi / 3.0;
    const double a = 0.75 * kPi;
    config.faces = {face(1, 0, 0, theta, a),
                    face(-0.5, 0.5 * s3, 0, theta, a),
                    face(-0.5, -0.5 * s3, 0, theta, a)};
  } else if (name == "tetrahedral-m4") {
    // theta = 135 deg keeps the four 45 deg caps clear of the 109.47 deg
    // tetrahedral separation; equal weights balance by symmetry.
    const double theta = 0.75 * kPi;
    const double a = 2.0;
    config.faces = {face(1, 1, 1, theta, a), face(1, -1, -1, theta, a),
                    face(-1, 1, -1, theta, a), face(-1, -1, 1, theta, a)};
  } else if (name == "rightangle-m2") {
    config.faces = {face(0, 0, -1, 2.0 * kPi / 3.0, 0.75 * kPi),
                    face(0, 0, 1, 0.5 * kPi, kPi)};
    config.flags.allow_theta_half_pi = true;
  } else {
    throw std::invalid_argument("unknown demo '" + name + "'");
  }
  return config;
}

std::vector<std::string> demo_names() {
  return {"sphere-m1", "antipodal-m2", "equatorial-m3", "tetrahedral-m4",
          "rightangle-m2"};
}

}  // namespace capillary
