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

import json
import math
import os

import pytest

import cuspvol

FIXTURES = os.environ.get(
    "CUSPVOL_FIXTURE_DIR",
    os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"))
FIG8_VOLUME = 2.0298832128


def fixture(name):
    return os.path.join(FIXTURES, name)


@pytest.fixture(scope="module")
def fig8():
    return cuspvol.load_triangulation(fixture("fig8.trig"))


def test_fig8_combinatorics(fig8):
    assert (fig8.tet_count, fig8.edge_count, fig8.cusp_count) == (2, 2, 1)
    assert fig8.edge_valences() == [6, 6]
    assert fig8.generator_count == 3
    assert fig8.relator_count == 2


def test_lobachevsky_and_regular_volume():
    assert cuspvol.lobachevsky(math.pi / 3) * 3 == pytest.approx(1.0149416064, abs=1e-10)
    assert cuspvol.tet_volume(complex(0.5, math.sqrt(3) / 2)) == pytest.approx(
        cuspvol.REGULAR_IDEAL_VOLUME, abs=1e-14)


def test_solve_complete_and_filled(fig8):
    complete = cuspvol.solve(fig8)
    assert complete["volume"] == pytest.approx(FIG8_VOLUME, abs=1e-9)
    assert complete["residual"] <= 1e-12
    filled = cuspvol.solve(fig8, {0: (5, 1)})
    assert 0 < filled["volume"] < FIG8_VOLUME


def test_develop_and_straighten_round_trip(fig8):
    shapes = cuspvol.solve(fig8, {0: (6, 1)})["shapes"]
    generators = cuspvol.develop(fig8, shapes)
    assert cuspvol.relator_residual(fig8, generators) <= 1e-10
    report = cuspvol.straighten_volume(fig8, generators)
    assert report["total"] == pytest.approx(cuspvol.volume_of_shapes(shapes), abs=1e-8)
    mirror = [tuple(x.conjugate() for x in g) for g in generators]
    assert cuspvol.straighten_volume(fig8, mirror)["total"] == pytest.approx(
        -report["total"], abs=1e-9)


def test_trivial_representation(fig8):
    report = cuspvol.straighten_volume(fig8, [(1, 0, 0, 1)] * 3)
    assert report["total"] == 0
    assert all(t["modulus"].startswith("degenerate:") for t in report["per_tet"])


def test_scan_is_deterministic(fig8):
    a = cuspvol.scan(fig8, restarts=20, seed=3)
    b = cuspvol.scan(fig8, restarts=20, seed=3)
    assert a == b
    assert a["solutions"][a["max_volume_index"]]["volume"] == pytest.approx(FIG8_VOLUME, abs=1e-9)


def test_errors_carry_their_kind(fig8):
    with pytest.raises(cuspvol.CuspvolError) as err:
        cuspvol.load_triangulation(fixture("corrupt/non_torus.trig"))
    assert err.value.args[1] == "NonTorusLink"
    corrupted = json.load(open(fixture("reps/fig8_corrupted.json")))
    gens = [tuple(complex(*g[k]) for k in "abcd") for g in corrupted["generators"]]
    with pytest.raises(cuspvol.CuspvolError) as err:
        cuspvol.straighten_volume(fig8, gens)
    assert err.value.args[1] == "RelatorResidualTooLarge"


def test_cli_entry_point():
    code, out, _ = cuspvol.run_cli(["info", fixture("fig8.trig")])
    assert code == 0
    assert out.strip() == "tets=2 edges=2 cusps=1 generators=3 relators=2"
    code, _, err = cuspvol.run_cli(["info", fixture("corrupt/malformed.trig")])
    assert code == 2 and "MalformedInput" in err
