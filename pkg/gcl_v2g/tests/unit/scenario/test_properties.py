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

from gcl_v2g.messages import models
from gcl_v2g.scenario import exceptions as scn_exc
from gcl_v2g.scenario import properties
from gcl_v2g.securechannel import identity as sc_identity


class TestConvert:
    def test_ev_property(self):
        assert properties.convert("ev", "ev1", "charging.loop.iterations", "4") == (
            "charging_loop_iterations",
            4,
        )

    def test_list_is_normalized(self):
        field, value = properties.convert(
            "se", "se1", "energy.transfermodes.supported", " AC_single_phase ,, "
        )

        assert field == "energy_transfer_modes_supported"
        assert value == [models.EnergyTransferMode.AC_SINGLE_PHASE]

    def test_session_id(self):
        _, value = properties.convert("ev", "ev1", "session.id", "0102030405060708")

        assert value == bytes(range(1, 9))

    @pytest.mark.parametrize(
        "kind,key,raw",
        [
            ("ev", "voltage.accuracy", "2"),
            ("ev", "session.id", "0102"),
            ("ev", "sdp.port", "70000"),
            ("se", "free.service", "maybe"),
            ("se", "payment.options", "Cash"),
            ("se", "energy.transfermodes.supported", "AC_core"),
        ],
    )
    def test_bad_values(self, kind, key, raw):
        with pytest.raises(scn_exc.ConstraintViolation):
            properties.convert(kind, "node", key, raw)

    @pytest.mark.parametrize(
        "kind,key",
        [("ev", "free.service"), ("se", "tls"), ("switch", "net.address")],
    )
    def test_unknown_keys(self, kind, key):
        with pytest.raises(scn_exc.UnknownPropertyKey):
            properties.convert(kind, "node", key, "x")


class TestPki:
    def test_deterministic(self):
        first = properties.Pki(7)
        second = properties.Pki(7)

        assert first.root.certificate == second.root.certificate
        assert first.identity("se1").certificate == second.identity("se1").certificate

    def test_seed_changes_keys(self):
        assert (
            properties.Pki(7).root.certificate != properties.Pki(8).root.certificate
        )

    def test_issued_identity_verifies(self):
        pki = properties.Pki(7)

        identity = pki.identity("se1")

        assert identity.name == "se1"
        assert pki.identity("se1") is identity
        assert sc_identity.verify(identity.certificate, pki.anchor())


class TestNodeConfigs:
    def test_ev_generated_anchor(self):
        pki = properties.Pki(1)

        config = properties.ev_config(
            "ev1", [("tls", "true"), ("tls.trust.anchor", "generate")], pki
        )

        assert config.tls
        assert config.trust_anchor == pki.anchor()

    def test_ev_session_id(self):
        config = properties.ev_config(
            "ev1", [("session.id", "0102030405060708")], properties.Pki(1)
        )

        assert config.session_id == models.SessionId(bytes(range(1, 9)))

    def test_addresses_are_not_config(self):
        config = properties.ev_config(
            "ev1", [("net.address", "fe80::1")], properties.Pki(1)
        )

        assert config.tls is False

    def test_ev_anchor_file(self, tmp_path):
        pki = properties.Pki(1)
        sc_identity.save_anchor(str(tmp_path / "root.json"), pki.anchor())

        config = properties.ev_config(
            "ev1",
            [("tls", "true"), ("tls.trust.anchor", "root.json")],
            pki,
            base_dir=str(tmp_path),
        )

        assert config.trust_anchor == pki.anchor()

    def test_ev_missing_anchor_file(self, tmp_path):
        with pytest.raises(scn_exc.ConstraintViolation):
            properties.ev_config(
                "ev1",
                [("tls", "true"), ("tls.trust.anchor", "absent.json")],
                properties.Pki(1),
                base_dir=str(tmp_path),
            )

    def test_se_generated_identity(self):
        pki = properties.Pki(1)

        config = properties.se_config("se1", [("tls.identity", "generate")], pki)

        assert config.tls_identity.name == "se1"

    def test_se_identity_file(self, tmp_path):
        pki = properties.Pki(1)
        path = tmp_path / "se1.json"
        sc_identity.save_identity(str(path), pki.identity("se1"))

        config = properties.se_config("se1", [("tls.identity", str(path))], pki)

        assert config.tls_identity.certificate == pki.identity("se1").certificate

    def test_se_lists(self):
        config = properties.se_config(
            "se1",
            [
                ("energy.transfermodes.supported", "DC_extended"),
                ("payment.options", "ExternalPayment"),
            ],
            properties.Pki(1),
        )

        assert config.energy_transfer_modes_supported == (
            models.EnergyTransferMode.DC_EXTENDED,
        )
        assert config.payment_options == (models.PaymentOption.EXTERNAL_PAYMENT,)

    def test_se_invalid_config(self):
        with pytest.raises(scn_exc.ConstraintViolation):
            properties.se_config(
                "se1",
                [("energy.transfermodes.supported", "DC_extended, DC_extended")],
                properties.Pki(1),
            )
