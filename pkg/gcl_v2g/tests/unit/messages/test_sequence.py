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

from gcl_v2g.messages import exceptions as msg_exc
from gcl_v2g.messages import models
from gcl_v2g.messages import sequence
from gcl_v2g.tests import samples

AC = models.ChargingBranch.AC
DC = models.ChargingBranch.DC
Stage = sequence.Stage


class TestStageOf:
    def test_order(self):
        assert sequence.stage_of(models.SessionSetupReq) == 1
        assert sequence.stage_of(models.ServiceDiscoveryReq) == 2

    def test_minimum_and_maximum(self):
        stages = [
            s
            for s in (sequence.stage_of(c) for c in models.BODY_TYPES.values())
            if s is not None
        ]

        assert sequence.stage_of(models.SupportedAppProtocolReq) == min(stages) == 0
        assert sequence.stage_of(models.SessionStopReq) == max(stages) == 12

    def test_power_delivery(self):
        start = models.PowerDeliveryReq(models.ChargeProgress.START)
        stop = models.PowerDeliveryReq(models.ChargeProgress.STOP)

        assert sequence.stage_of(start) is Stage.POWER_DELIVERY_START
        assert sequence.stage_of(stop) is Stage.POWER_DELIVERY_STOP

    def test_response_shares_request_stage(self):
        assert sequence.stage_of(models.AuthorizationRes) is Stage.AUTHORIZATION

    def test_certificate_kinds(self):
        assert sequence.stage_of(models.CertificateInstallationReq) is None
        assert sequence.stage_of(models.CertificateUpdateRes) is None


class TestExpectedKinds:
    def test_start(self):
        assert sequence.expected_kinds(None, AC) == ("SupportedAppProtocolReq",)

    def test_branches_after_parameters(self):
        previous = Stage.CHARGE_PARAMETER_DISCOVERY

        assert sequence.expected_kinds(previous, AC) == ("PowerDeliveryReq(Start)",)
        assert sequence.expected_kinds(previous, DC) == ("CableCheckReq",)

    def test_loop_may_stop(self):
        kinds = sequence.expected_kinds(Stage.CHARGING_LOOP, AC)

        assert "ChargingStatusReq" in kinds
        assert kinds[-1] == "PowerDeliveryReq(Stop)"

    def test_after_session_stop(self):
        assert sequence.expected_kinds(Stage.SESSION_STOP, AC) == ()


class TestValidateTransition:
    def test_ac_power_delivery_after_parameters(self):
        body = models.PowerDeliveryReq(models.ChargeProgress.START)

        assert (
            sequence.validate_transition(Stage.CHARGE_PARAMETER_DISCOVERY, body, AC)
            is Stage.POWER_DELIVERY_START
        )

    def test_dc_requires_cable_check(self):
        body = models.PowerDeliveryReq(models.ChargeProgress.START)

        with pytest.raises(msg_exc.SequenceViolation) as e:
            sequence.validate_transition(Stage.CHARGE_PARAMETER_DISCOVERY, body, DC)

        assert e.value.expected == ("CableCheckReq",)

    def test_skipped_stage(self):
        body = models.PowerDeliveryReq(models.ChargeProgress.START)

        with pytest.raises(msg_exc.SequenceViolation) as e:
            sequence.validate_transition(Stage.SESSION_SETUP, body, AC)

        assert e.value.got == "PowerDeliveryReq(Start)"
        assert e.value.expected == ("ServiceDiscoveryReq",)

    def test_loop_repeats_then_stop(self):
        stage = Stage.POWER_DELIVERY_START
        for _ in range(3):
            stage = sequence.validate_transition(stage, models.ChargingStatusReq(), AC)
            assert stage is Stage.CHARGING_LOOP

        stop = models.PowerDeliveryReq(models.ChargeProgress.STOP)
        stage = sequence.validate_transition(stage, stop, AC)
        assert stage is Stage.POWER_DELIVERY_STOP

    def test_metering_receipt_interleaves(self):
        meter = models.MeterInfo("M", 1, 1)
        demand = models.CurrentDemandReq(400, 10)
        receipt = models.MeteringReceiptReq(meter)
        stage = sequence.validate_transition(Stage.POWER_DELIVERY_START, demand, DC)
        stage = sequence.validate_transition(stage, receipt, DC)
        stage = sequence.validate_transition(stage, demand, DC)

        assert stage is Stage.CHARGING_LOOP

    def test_ac_rejects_current_demand(self):
        with pytest.raises(msg_exc.SequenceViolation):
            sequence.validate_transition(
                Stage.POWER_DELIVERY_START, models.CurrentDemandReq(400, 10), AC
            )

    def test_start_again_in_loop_rejected(self):
        start = models.PowerDeliveryReq(models.ChargeProgress.START)

        with pytest.raises(msg_exc.SequenceViolation):
            sequence.validate_transition(Stage.CHARGING_LOOP, start, AC)

    def test_first_message(self):
        with pytest.raises(msg_exc.SequenceViolation):
            sequence.validate_transition(None, models.SessionSetupReq(bytes(6)), AC)

    def test_nothing_after_session_stop(self):
        with pytest.raises(msg_exc.SequenceViolation) as e:
            sequence.validate_transition(
                Stage.SESSION_STOP, models.ServiceDiscoveryReq(), AC
            )

        assert e.value.expected == ()

    def test_certificate_kind_never_legal(self):
        with pytest.raises(msg_exc.SequenceViolation):
            sequence.validate_transition(
                Stage.AUTHORIZATION, models.CertificateInstallationReq(), AC
            )

    @pytest.mark.parametrize("branch", [AC, DC])
    def test_reference_sequence(self, branch):
        stage = None
        for message in samples.reference_sequence(branch):
            if message.is_request:
                stage = sequence.validate_transition(stage, message.body, branch)

        assert stage is Stage.SESSION_STOP

    @pytest.mark.parametrize("branch", [AC, DC])
    def test_session_id_discipline(self, branch):
        for message in samples.reference_sequence(branch):
            if sequence.stage_of(message.body) >= Stage.SERVICE_DISCOVERY:
                assert not message.session_id.is_zero
            if sequence.stage_of(message.body) is Stage.SUPPORTED_APP_PROTOCOL:
                assert message.session_id.is_zero
