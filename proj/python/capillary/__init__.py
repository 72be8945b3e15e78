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

"""Capillary constant-mean-curvature surfaces in polyhedral containers."""

import json as _json

from ._core import (  # noqa: F401
    Config,
    Output,
    __version__,
    annulus_moment,
    cap_area,
    cap_moment,
    demo_names,
    solve,
    solve_minkowski,
    verify_uniqueness,
)


def report(output):
    """Diagnostics for a solved output as a plain dictionary."""
    return _json.loads(output.report_json())


__all__ = [
    "Config",
    "Output",
    "annulus_moment",
    "cap_area",
    "cap_moment",
    "demo_names",
    "report",
    "solve",
    "solve_minkowski",
    "verify_uniqueness",
]
