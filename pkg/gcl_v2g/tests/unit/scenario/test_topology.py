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

import os

import pytest

from gcl_v2g.attacks import scenarios
from gcl_v2g.common import constants
from gcl_v2g.controllers.report import Outcome
from gcl_v2g.messages import models
from gcl_v2g.netsim import addresses
from gcl_v2g.scenario import exceptions as scn_exc
from gcl_v2g.scenario import runner
from gcl_v2g.scenario import topology

TOPOLOGIES = os.path.join(os.path.dirname(topology.__file__), "topologies")

BASIC = """
[topology]
seed = 3
duration = 10

[node ev1]
kind = ev
links = sw1@2.5
energy.transfermode.requested = DC_extended

[node se1]
kind = se
links = sw1
energy.transfermodes.supported = AC_three_phase , DC_extended

[node sw1]
kind = switch
"""

WITH_MITM = """
[node ev1]
kind = ev
links = sw1

[node se1]
kind = se
links = sw1

[node attacker]
kind = mitm
links = sw1

[node sw1]
kind = switch
"""


class TestLoadsTopology:
    def test_nodes_and_settings(self):
        spec = topology.loads_topology(BASIC)

        assert spec.seed == 3
        assert spec.duration == 10 * constants.SEC
        assert not spec.parallel
        assert [d.name for d in spec.nodes] == ["ev1", "se1", "sw1"]
        assert [d.name for d in spec.evs] == ["ev1"]
        assert [d.name for d in spec.ses] == ["se1"]
        assert spec.scenario is None

    def test_link_latency_in_milliseconds(self):
        spec = topology.loads_topology(BASIC)

        assert spec.node("ev1").links == (
            topology.LinkDecl("sw1", int(2.5 * constants.MSEC)),
        )
        assert spec.node("se1").links == (topology.LinkDecl("sw1"),)

    def test_zero_latency_is_kept(self):
        spec = topology.loads_topology(BASIC.replace("sw1@2.5", "sw1@0"))

        sim = runner.build(spec)

        assert spec.node("ev1").links == (topology.LinkDecl("sw1", 0),)
        [link] = [link for link in sim.links if sim.host("ev1") in (link.a, link.b)]
        assert link.latency == 0

    def test_node_configs(self):
        spec = topology.loads_topology(BASIC)

        ev = spec.node("ev1").config
        se = spec.node("se1").config
        mode = ev.energy_transfer_mode_requested
        assert mode is models.EnergyTransferMode.DC_EXTENDED
        assert se.energy_transfer_modes_supported == (
            models.EnergyTransferMode.AC_THREE_PHASE,
            models.EnergyTransferMode.DC_EXTENDED,
        )
        assert spec.node("sw1").config is None

    def test_unknown_node(self):
        spec = topology.loads_topology(BASIC)

        with pytest.raises(KeyError):
            spec.node("ev9")

    def test_default_expectation_is_completed(self):
        spec = topology.loads_topology(BASIC)

        assert spec.expect == {}
        assert spec.expected("ev1") is Outcome.COMPLETED

    def test_expect_for_every_ev(self):
        spec = topology.loads_topology(
            BASIC.replace("duration = 10", "expect = FailedNegotiation")
        )

        assert spec.expected("ev1") is Outcome.FAILED_NEGOTIATION

    def test_expect_per_ev(self):
        spec = topology.loads_topology(
            BASIC.replace("duration = 10", "expect = ev1:FailedHandshake")
        )

        assert spec.expect == {"ev1": Outcome.FAILED_HANDSHAKE}

    def test_addresses(self):
        spec = topology.loads_topology(
            BASIC.replace(
                "kind = ev\n",
                "kind = ev\nlink.address = 02:00:00:00:00:42\n"
                "net.address = fe80::42\n",
            )
        )

        ev = spec.node("ev1")
        assert ev.address("link.address") == addresses.LinkAddress.parse(
            "02:00:00:00:00:42"
        )
        assert ev.address("net.address") == addresses.NetAddress.parse("fe80::42")
        assert spec.node("se1").address("net.address") is None

    def test_comments_are_ignored(self):
        spec = topology.loads_topology(
            "# leading comment\n" + BASIC.replace("seed = 3", "seed = 3  # inline")
        )

        assert spec.seed == 3


class TestTopologyErrors:
    def test_bad_value(self):
        with pytest.raises(scn_exc.ConstraintViolation) as e:
            topology.loads_topology(
                WITH_MITM.replace("kind = se\n", "kind = se\nfree.service = maybe\n")
            )

        assert "free.service" in str(e.value)

    def test_unknown_property(self):
        with pytest.raises(scn_exc.UnknownPropertyKey) as e:
            topology.loads_topology(
                WITH_MITM.replace("kind = ev\n", "kind = ev\nwheels = 4\n")
            )

        assert e.value.node == "ev1"
        assert e.value.key == "wheels"

    def test_property_of_another_kind(self):
        with pytest.raises(scn_exc.UnknownPropertyKey):
            topology.loads_topology(
                WITH_MITM.replace("kind = ev\n", "kind = ev\nfree.service = true\n")
            )

    def test_unknown_topology_key(self):
        with pytest.raises(scn_exc.UnknownPropertyKey):
            topology.loads_topology("[topology]\nspeed = 3\n" + WITH_MITM)

    def test_duplicate_section(self):
        with pytest.raises(scn_exc.ConstraintViolation) as e:
            topology.loads_topology(WITH_MITM + "\n[node ev1]\nkind = ev\n")

        assert "duplicate" in e.value.reason

    def test_duplicate_node_name(self):
        with pytest.raises(scn_exc.ConstraintViolation) as e:
            topology.loads_topology(WITH_MITM + "\n[node  ev1]\nkind = ev\n")

        assert "duplicate node name" in e.value.reason

    def test_duplicate_key(self):
        with pytest.raises(scn_exc.ParseError):
            topology.loads_topology(
                WITH_MITM.replace("kind = ev\n", "kind = ev\nkind = ev\n")
            )

    def test_key_outside_section(self):
        with pytest.raises(scn_exc.ParseError) as e:
            topology.loads_topology("seed = 1\n" + WITH_MITM, path="t.toplgy")

        assert e.value.path == "t.toplgy"
        assert e.value.line == 1

    def test_unparsable_line(self):
        with pytest.raises(scn_exc.ParseError):
            topology.loads_topology(WITH_MITM + "\nnot a key value line\n")

    def test_unknown_section(self):
        with pytest.raises(scn_exc.ParseError) as e:
            topology.loads_topology(WITH_MITM + "\n[charger]\n")

        assert "unknown section" in e.value.reason

    def test_no_nodes(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            topology.loads_topology("[topology]\nseed = 1\n")

    def test_missing_kind(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            topology.loads_topology("[node x]\nlinks = y\n")

    def test_unknown_kind(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            topology.loads_topology("[node x]\nkind = toaster\n")

    def test_unknown_link_peer(self):
        with pytest.raises(scn_exc.ConstraintViolation) as e:
            topology.loads_topology(WITH_MITM.replace("links = sw1", "links = sw9", 1))

        assert "sw9" in e.value.reason

    def test_bad_latency(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            topology.loads_topology(
                WITH_MITM.replace("links = sw1", "links = sw1@x", 1)
            )

    def test_two_mitm_nodes(self):
        with pytest.raises(scn_exc.ConstraintViolation) as e:
            topology.loads_topology(
                WITH_MITM + "\n[node attacker2]\nkind = mitm\nlinks = sw1\n"
            )

        assert "more than one mitm" in e.value.reason

    def test_expect_unknown_outcome(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            topology.loads_topology("[topology]\nexpect = Maybe\n" + WITH_MITM)

    def test_expect_unknown_ev(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            topology.loads_topology(
                "[topology]\nexpect = ev7:Completed\n" + WITH_MITM
            )

    def test_invalid_node_config(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            topology.loads_topology(
                WITH_MITM.replace("kind = ev\n", "kind = ev\ntls = true\n")
            )


class TestScenarioSection:
    def _load(self, scenario: str) -> topology.TopologySpec:
        return topology.loads_topology(WITH_MITM + "\n[scenario]\n" + scenario)

    def test_defaults_to_the_mitm_switch(self):
        spec = self._load("kind = PassthroughLogger\n")

        assert spec.scenario.mitm == "attacker"
        assert spec.scenario.switch == "sw1"
        assert not spec.scenario.spoof
        kind = spec.scenario.scenario.kind
        assert kind is scenarios.ScenarioKind.PASSTHROUGH_LOGGER

    def test_switch_declared_on_switch_side(self):
        text = WITH_MITM.replace(
            "kind = mitm\nlinks = sw1\n", "kind = mitm\n"
        ).replace("kind = switch\n", "kind = switch\nlinks = attacker\n")
        text += "\n[scenario]\nkind = PassthroughLogger\n"

        spec = topology.loads_topology(text)

        assert spec.scenario.switch == "sw1"

    def test_spoof_without_switch(self):
        spec = self._load("kind = DosVersionRewrite\nspoof = true\n")

        assert spec.scenario.spoof
        assert spec.scenario.switch is None

    def test_port_rewrite(self):
        spec = self._load(
            "kind = SdpPortRewrite\nnew.port = 15119\nrewrite.address = true\n"
        )

        assert spec.scenario.scenario.new_port == 15119
        assert spec.scenario.scenario.rewrite_address

    def test_service_list_tamper(self):
        spec = self._load(
            "kind = ServiceListTamper\nadd = DC_extended\n"
            "remove = AC_single_phase, AC_three_phase\n"
        )

        scenario = spec.scenario.scenario
        assert scenario.add_modes == (models.EnergyTransferMode.DC_EXTENDED,)
        assert scenario.remove_modes == (
            models.EnergyTransferMode.AC_SINGLE_PHASE,
            models.EnergyTransferMode.AC_THREE_PHASE,
        )

    def test_payment_option_tamper(self):
        spec = self._load("kind = PaymentOptionTamper\nremove = ExternalPayment\n")

        assert spec.scenario.scenario.remove_payment_options == (
            models.PaymentOption.EXTERNAL_PAYMENT,
        )

    def test_victims(self):
        spec = self._load("kind = PassthroughLogger\nvictims = ev1, se1\n")

        assert spec.scenario.victims == ("ev1", "se1")

    def test_victim_must_be_ev_or_se(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            self._load("kind = PassthroughLogger\nvictims = sw1\n")

    def test_kind_required(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            self._load("spoof = true\n")

    def test_unknown_kind(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            self._load("kind = Teleport\n")

    def test_unknown_key(self):
        with pytest.raises(scn_exc.UnknownPropertyKey):
            self._load("kind = PassthroughLogger\nloud = true\n")

    def test_needs_mitm_node(self):
        text = BASIC + "\n[scenario]\nkind = PassthroughLogger\n"

        with pytest.raises(scn_exc.ConstraintViolation):
            topology.loads_topology(text)

    def test_unknown_switch(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            self._load("kind = PassthroughLogger\nswitch = ev1\n")

    def test_invalid_scenario(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            self._load("kind = ServiceListTamper\n")


class TestSeed:
    def test_argument_wins(self, monkeypatch):
        monkeypatch.setenv(constants.SEED_ENV_VAR, "11")

        assert topology.loads_topology(BASIC, seed=5).seed == 5

    def test_file_wins_over_environment(self, monkeypatch):
        monkeypatch.setenv(constants.SEED_ENV_VAR, "11")

        assert topology.loads_topology(BASIC).seed == 3

    def test_environment(self, monkeypatch):
        monkeypatch.setenv(constants.SEED_ENV_VAR, "11")

        assert topology.loads_topology(WITH_MITM).seed == 11

    def test_default(self, monkeypatch):
        monkeypatch.delenv(constants.SEED_ENV_VAR, raising=False)

        assert topology.loads_topology(WITH_MITM).seed == constants.DEFAULT_SEED

    def test_bad_environment(self, monkeypatch):
        monkeypatch.setenv(constants.SEED_ENV_VAR, "soon")

        with pytest.raises(scn_exc.ConstraintViolation):
            topology.loads_topology(WITH_MITM)

    def test_with_seed(self):
        spec = topology.loads_topology(BASIC)

        assert spec.with_seed(9).seed == 9
        assert spec.with_seed(9).nodes == spec.nodes


class TestDigest:
    def test_stable(self):
        assert (
            topology.loads_topology(BASIC).digest
            == topology.loads_topology(BASIC).digest
        )

    def test_ignores_formatting(self):
        reformatted = "# comment\n" + BASIC.replace("seed = 3", "seed=3")

        assert (
            topology.loads_topology(reformatted).digest
            == topology.loads_topology(BASIC).digest
        )

    def test_changes_with_seed(self):
        spec = topology.loads_topology(BASIC)

        assert spec.with_seed(4).digest != spec.digest


class TestGoldenTopologies:
    @pytest.mark.parametrize(
        "name",
        [
            "basic",
            "dos",
            "energy-mismatch",
            "port-rewrite",
            "tls-countermeasure",
            "two-columns",
        ],
    )
    def test_parse(self, name):
        spec = topology.parse_topology(os.path.join(TOPOLOGIES, f"{name}.toplgy"))

        assert spec.evs
        assert spec.ses
        assert spec.path.endswith(f"{name}.toplgy")

    def test_tls_countermeasure(self):
        spec = topology.parse_topology(
            os.path.join(TOPOLOGIES, "tls-countermeasure.toplgy")
        )

        assert spec.pki_seed == 42
        assert spec.node("ev1").config.tls
        assert spec.node("se1").config.tls_identity is not None
        assert spec.expected("ev1") is Outcome.FAILED_HANDSHAKE

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            topology.parse_topology(str(tmp_path / "absent.toplgy"))
