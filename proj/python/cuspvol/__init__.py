# Copyright 2026 The cuspvol Authors.
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

"""Volumes of cusped hyperbolic 3-manifolds and their representations."""

import json

from ._cuspvol import (
    REGULAR_IDEAL_VOLUME,
    CuspvolError,
    Triangulation,
    develop,
    load_triangulation,
    lobachevsky,
    parse_triangulation,
    relator_residual,
    run_cli,
    solve,
    tet_volume,
    volume_of_shapes,
)
from . import _cuspvol


def scan(t, restarts=50, seed=0, fillings=None, edges_only=False):
    """Multi-start solve; returns the solver report as a dict."""
    return json.loads(_cuspvol.scan_json(t, restarts, seed, fillings or {}, edges_only))


def straighten_volume(t, generators, policy="attracting", relator_tolerance=1e-8):
    """Straightened volume report of a representation given as (a, b, c, d) tuples."""
    return json.loads(
        _cuspvol.straighten_volume_json(t, generators, policy, relator_tolerance))


__all__ = [
    "REGULAR_IDEAL_VOLUME",
    "CuspvolError",
    "Triangulation",
    "develop",
    "load_triangulation",
    "lobachevsky",
    "parse_triangulation",
    "relator_residual",
    "run_cli",
    "scan",
    "solve",
    "straighten_volume",
    "tet_volume",
    "volume_of_shapes",
]
