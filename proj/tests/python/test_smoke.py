# Copyright 2026 The Capillary Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import capillary


def test_cap_formulas():
    assert capillary.cap_area(1.0) == pytest.approx(2 * math.pi)
    assert capillary.cap_area(math.sqrt(3) / 2) == pytest.approx(math.pi)
    mx, my, mz = capillary.cap_moment((0, 0, 1), 0.5)
    assert (mx, my) == (0, 0)
    assert mz == pytest.approx(math.pi / 4)
    ax, ay, az = capillary.annulus_moment((0, 0, 1), 0.5, 0.2)
    assert az == pytest.approx(0.45 * math.pi)


def test_demo_configs_balanced():
    for name in capillary.demo_names():
        config = capillary.Config.demo(name)
        config.validate()
        residual = config.balancing_residual()
        assert math.hypot(*residual) < 1e-12
        round_trip = capillary.Config.from_json(config.to_json())
        assert round_trip.face_count == config.face_count


def test_minkowski_cube():
    normals = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1),
               (0, 0, -1)]
    solution = capillary.solve_minkowski(normals, [4.0] * 6)
    assert solution["residual"] < 1e-10
    for h in solution["h"]:
        assert h == pytest.approx(1.0, abs=1e-9)


def test_sphere_demo_pipeline():
    config = capillary.Config.demo("sphere-m1")
    output = capillary.solve(config, level=3)
    assert output.scale == pytest.approx(1.0)

    rep = capillary.report(output)
    assert rep["solver_area_residual"] < 1e-10
    assert rep["patch_radius_max_rel_error"] < 1e-12
    assert rep["faces"][0]["area_identity_residual"] < 0.02
    # Truncated-ball solution: container plane near height 1, wetted disk
    # near area 3 pi.
    assert output.plane_supports()[0] == pytest.approx(1.0, abs=0.05)
    assert output.disk_areas()[0] == pytest.approx(3 * math.pi, rel=0.03)

    center_norms = [math.hypot(*v) for v in output.sigma_vertices()]
    assert min(center_norms) > 1.9
    assert max(center_norms) < 2.1

    assert output.sigma_obj().startswith("o sigma")
    assert output.polytope_off().startswith("OFF")


def test_repair():
    bad = capillary.Config.from_json(
        '{"H": 0.5, "faces": [{"p": [0, 0, 1], "theta_deg": 120, "a": 2.0}]}'
    )
    fixed = bad.repair()
    assert math.hypot(*fixed.balancing_residual()) < 1e-12
