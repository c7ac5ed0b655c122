#    Copyright 2026 Genesis Corporation.
#
#    All Rights Reserved.
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.

from __future__ import annotations

import pytest

from gcl_v2g.common import constants
from gcl_v2g.common import utils
from gcl_v2g.controllers.report import Outcome
from gcl_v2g.scenario import exceptions as scn_exc
from gcl_v2g.scenario import runner
from gcl_v2g.scenario import topology
from gcl_v2g.tests.functional import conftest


def _run(spec, directory):
    directory.mkdir()
    capture_path = directory / "run.cap"
    report_path = directory / "report.json"
    runner.run(spec, capture_path=str(capture_path), report_path=str(report_path))
    document = utils.load_json(str(report_path))
    document.pop("capturePath")
    return capture_path.read_bytes(), document


@pytest.mark.parametrize("name", conftest.GOLDEN)
class TestGoldenRuns:
    def test_expectations(self, name):
        try:
            report = runner.run(conftest.golden(name))
        except scn_exc.SimulationTimeout as e:
            pytest.fail(f"{name} timed out: {e}")

        assert report.expectations_met

    def test_same_seed_same_artifacts(self, name, tmp_path):
        spec = conftest.golden(name)

        first = _run(spec, tmp_path / "first")
        second = _run(spec, tmp_path / "second")

        assert first == second

    def test_seed_changes_session_ids_only(self, name):
        spec = conftest.golden(name)

        _, first = runner.simulate(spec)
        _, second = runner.simulate(spec.with_seed(spec.seed + 1))

        assert second.seed != first.seed
        for ev, report in first.per_ev.items():
            other = second.per_ev[ev]
            assert other.outcome is report.outcome
            assert other.last_stage_reached == report.last_stage_reached
            if report.outcome is Outcome.COMPLETED:
                assert other.session_id != report.session_id


def test_environment_seed(monkeypatch):
    monkeypatch.setenv(constants.SEED_ENV_VAR, "77")
    text = conftest.golden_text("basic").replace("seed = 1\n", "")

    spec = topology.loads_topology(text)

    _, report = runner.simulate(spec)

    assert report.seed == 77
    assert report.per_ev["ev1"].outcome is Outcome.COMPLETED
