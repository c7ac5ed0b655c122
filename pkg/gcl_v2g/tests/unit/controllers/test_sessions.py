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

import random

import pytest

from gcl_v2g.controllers import config as ctl_config
from gcl_v2g.controllers import evcc
from gcl_v2g.controllers import report as ctl_report
from gcl_v2g.controllers import secc
from gcl_v2g.controllers import states
from gcl_v2g.messages import models
from gcl_v2g.messages import sequence
from gcl_v2g.netsim import network
from gcl_v2g.securechannel import identity as sc_identity
from gcl_v2g.tests.unit.netsim.conftest import host
from gcl_v2g.tests.unit.netsim.conftest import switch

Outcome = ctl_report.Outcome
Mode = models.EnergyTransferMode


@pytest.fixture
def sim() -> network.Simulation:
    return network.build_network(
        [host("ev1", "sw", role="ev"), host("se1", "sw", role="se"), switch("sw")]
    )


@pytest.fixture
def root() -> sc_identity.Identity:
    return sc_identity.generate_identity("root", None, random.Random("root"))


def _charge(sim, ev_config, se_config=None):
    column = secc.secc_start(se_config or ctl_config.SeConfig(), sim.host("se1"))
    process = sim.spawn(evcc.ev_charge(ev_config, sim.host("ev1")))
    sim.run()
    return process.result(), column


class TestSessions:
    def test_ac_session_completes(self, sim):
        report, column = _charge(sim, ctl_config.EvConfig())

        assert report.outcome is Outcome.COMPLETED
        assert report.last_stage_reached is sequence.Stage.SESSION_STOP
        assert report.messages_sent == report.messages_received == 12
        assert report.peer_port == 15118
        assert not report.secured
        [served] = column.sessions
        assert served.session_id == report.session_id
        assert served.state == states.SeccState.DONE.value
        assert all(code.is_ok for code in served.response_codes)

    def test_transcript_stages_never_decrease(self, sim):
        report, _ = _charge(sim, ctl_config.EvConfig(charging_loop_iterations=5))

        stages = [entry.stage for entry in report.transcript]
        assert stages == sorted(stages)
        assert report.transcript[0].kind == "SupportedAppProtocolReq"
        assert report.transcript[-1].kind == "SessionStopRes"

    def test_dc_session_with_metering_receipts(self, sim):
        se_config = ctl_config.SeConfig(
            energy_transfer_modes_supported=(Mode.DC_EXTENDED,),
            metering_receipt=True,
        )
        ev_config = ctl_config.EvConfig(energy_transfer_mode_requested=Mode.DC_EXTENDED)

        report, _ = _charge(sim, ev_config, se_config)

        kinds = [e.kind for e in report.transcript]
        assert report.outcome is Outcome.COMPLETED
        assert kinds.count("MeteringReceiptReq") == 3
        assert "WeldingDetectionReq" in kinds
        assert report.meter_final.meter_reading > 0

    def test_configured_session_id(self, sim):
        requested = models.SessionId.from_hex("0011223344556677")

        report, _ = _charge(sim, ctl_config.EvConfig(session_id=requested))

        assert report.session_id == requested

    def test_energy_mode_mismatch(self, sim):
        ev_config = ctl_config.EvConfig(energy_transfer_mode_requested=Mode.DC_EXTENDED)

        report, _ = _charge(sim, ev_config)

        assert report.outcome is Outcome.FAILED_WRONG_ENERGY_TRANSFER_MODE
        assert report.last_stage_reached is sequence.Stage.CHARGE_PARAMETER_DISCOVERY
        code = models.ResponseCode.FAILED_WRONG_ENERGY_TRANSFER_MODE
        assert report.response_code is code

    def test_no_secc(self, sim):
        process = sim.spawn(evcc.ev_charge(ctl_config.EvConfig(), sim.host("ev1")))
        sim.run()

        report = process.result()
        assert report.outcome is Outcome.FAILED_DISCOVERY_TIMEOUT
        assert report.finished >= evcc.SDP_ATTEMPTS * evcc.SDP_INTERVAL
        assert report.last_stage_reached is sequence.Stage.NONE

    def test_same_seed_same_report(self):
        reports = []
        for _ in range(2):
            sim = network.build_network(
                [host("ev1", "sw"), host("se1", "sw"), switch("sw")], seed=5
            )
            report, _ = _charge(sim, ctl_config.EvConfig())
            reports.append(report.to_dict())

        assert reports[0] == reports[1]


class TestSecuredSessions:
    def test_secured_session(self, sim, root):
        se_config = ctl_config.SeConfig(
            tls_identity=sc_identity.generate_identity("se1", root),
            tls_required=True,
        )
        ev_config = ctl_config.EvConfig(tls=True, trust_anchor=root.as_anchor())

        report, column = _charge(sim, ev_config, se_config)

        assert report.outcome is Outcome.COMPLETED
        assert report.secured
        assert column.sessions[0].secured

    def test_plain_ev_against_secured_only_secc(self, sim, root):
        se_config = ctl_config.SeConfig(
            tls_identity=sc_identity.generate_identity("se1", root),
            tls_required=True,
        )

        report, column = _charge(sim, ctl_config.EvConfig(), se_config)

        assert report.outcome is Outcome.FAILED_HANDSHAKE
        assert not column.sessions

    def test_untrusted_secc(self, sim, root):
        stranger = sc_identity.generate_identity("other", None, random.Random(4))
        se_config = ctl_config.SeConfig(
            tls_identity=sc_identity.generate_identity("se1", stranger),
            tls_required=True,
        )
        ev_config = ctl_config.EvConfig(tls=True, trust_anchor=root.as_anchor())

        report, column = _charge(sim, ev_config, se_config)

        assert report.outcome is Outcome.FAILED_HANDSHAKE
        assert report.failure_reason == "CertificateVerifyFailure"
        assert not column.sessions[0].secured

    def test_tls_ev_against_plain_secc(self, sim, root):
        ev_config = ctl_config.EvConfig(tls=True, trust_anchor=root.as_anchor())

        report, _ = _charge(sim, ev_config)

        assert report.outcome is Outcome.COMPLETED
        assert not report.secured
