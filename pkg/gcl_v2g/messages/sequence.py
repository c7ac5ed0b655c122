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

"""Ordering of the charge sequence.

Stages follow the message flow of a charging session::

    SupportedAppProtocol -> SessionSetup -> ServiceDiscovery
      -> PaymentServiceSelection -> Authorization -> ChargeParameterDiscovery
      -> [DC: CableCheck -> PreCharge] -> PowerDelivery(Start)
      -> loop {ChargingStatus | CurrentDemand | MeteringReceipt}
      -> PowerDelivery(Stop) -> [DC: WeldingDetection] -> SessionStop
"""

from __future__ import annotations

import enum

from gcl_v2g.messages import exceptions as msg_exc
from gcl_v2g.messages import models


class Stage(enum.IntEnum):
    NONE = -1
    SUPPORTED_APP_PROTOCOL = 0
    SESSION_SETUP = 1
    SERVICE_DISCOVERY = 2
    PAYMENT_SERVICE_SELECTION = 3
    AUTHORIZATION = 4
    CHARGE_PARAMETER_DISCOVERY = 5
    CABLE_CHECK = 6
    PRE_CHARGE = 7
    POWER_DELIVERY_START = 8
    CHARGING_LOOP = 9
    POWER_DELIVERY_STOP = 10
    WELDING_DETECTION = 11
    SESSION_STOP = 12


_STAGES: dict[type[models.Body], Stage] = {}
for _req, _stage in (
    (models.SupportedAppProtocolReq, Stage.SUPPORTED_APP_PROTOCOL),
    (models.SessionSetupReq, Stage.SESSION_SETUP),
    (models.ServiceDiscoveryReq, Stage.SERVICE_DISCOVERY),
    (models.PaymentServiceSelectionReq, Stage.PAYMENT_SERVICE_SELECTION),
    (models.AuthorizationReq, Stage.AUTHORIZATION),
    (models.ChargeParameterDiscoveryReq, Stage.CHARGE_PARAMETER_DISCOVERY),
    (models.CableCheckReq, Stage.CABLE_CHECK),
    (models.PreChargeReq, Stage.PRE_CHARGE),
    (models.PowerDeliveryReq, Stage.POWER_DELIVERY_START),
    (models.ChargingStatusReq, Stage.CHARGING_LOOP),
    (models.CurrentDemandReq, Stage.CHARGING_LOOP),
    (models.MeteringReceiptReq, Stage.CHARGING_LOOP),
    (models.WeldingDetectionReq, Stage.WELDING_DETECTION),
    (models.SessionStopReq, Stage.SESSION_STOP),
):
    _STAGES[_req] = _stage
    _STAGES[models.REQUEST_RESPONSE[_req]] = _stage

_LOOP_KINDS = {
    models.ChargingBranch.AC: (models.ChargingStatusReq, models.MeteringReceiptReq),
    models.ChargingBranch.DC: (models.CurrentDemandReq, models.MeteringReceiptReq),
}


def stage_of(body: models.Body | type[models.Body]) -> Stage | None:
    """Stage of a message body or body class.

    PowerDeliveryReq(Stop) maps to POWER_DELIVERY_STOP; any other
    PowerDelivery body (and the class itself) maps to POWER_DELIVERY_START.
    Certificate messages have no stage.
    """
    if isinstance(body, models.PowerDeliveryReq):
        if body.charge_progress is models.ChargeProgress.STOP:
            return Stage.POWER_DELIVERY_STOP
        return Stage.POWER_DELIVERY_START
    cls = body if isinstance(body, type) else type(body)
    return _STAGES.get(cls)


def _next_kinds(
    previous: Stage, branch: models.ChargingBranch
) -> tuple[tuple[type[models.Request], Stage], ...]:
    dc = branch is models.ChargingBranch.DC
    loop = tuple((kind, Stage.CHARGING_LOOP) for kind in _LOOP_KINDS[branch])

    if previous is Stage.NONE:
        return ((models.SupportedAppProtocolReq, Stage.SUPPORTED_APP_PROTOCOL),)
    if previous is Stage.SUPPORTED_APP_PROTOCOL:
        return ((models.SessionSetupReq, Stage.SESSION_SETUP),)
    if previous is Stage.SESSION_SETUP:
        return ((models.ServiceDiscoveryReq, Stage.SERVICE_DISCOVERY),)
    if previous is Stage.SERVICE_DISCOVERY:
        return (
            (models.PaymentServiceSelectionReq, Stage.PAYMENT_SERVICE_SELECTION),
        )
    if previous is Stage.PAYMENT_SERVICE_SELECTION:
        return ((models.AuthorizationReq, Stage.AUTHORIZATION),)
    if previous is Stage.AUTHORIZATION:
        return (
            (models.ChargeParameterDiscoveryReq, Stage.CHARGE_PARAMETER_DISCOVERY),
        )
    if previous is Stage.CHARGE_PARAMETER_DISCOVERY:
        if dc:
            return ((models.CableCheckReq, Stage.CABLE_CHECK),)
        return ((models.PowerDeliveryReq, Stage.POWER_DELIVERY_START),)
    if previous is Stage.CABLE_CHECK and dc:
        return ((models.PreChargeReq, Stage.PRE_CHARGE),)
    if previous is Stage.PRE_CHARGE and dc:
        return ((models.PowerDeliveryReq, Stage.POWER_DELIVERY_START),)
    if previous is Stage.POWER_DELIVERY_START:
        return loop
    if previous is Stage.CHARGING_LOOP:
        return loop + ((models.PowerDeliveryReq, Stage.POWER_DELIVERY_STOP),)
    if previous is Stage.POWER_DELIVERY_STOP:
        if dc:
            return ((models.WeldingDetectionReq, Stage.WELDING_DETECTION),)
        return ((models.SessionStopReq, Stage.SESSION_STOP),)
    if previous is Stage.WELDING_DETECTION and dc:
        return ((models.SessionStopReq, Stage.SESSION_STOP),)
    return ()


def _label(kind: type[models.Request], stage: Stage) -> str:
    if kind is models.PowerDeliveryReq:
        progress = "Stop" if stage is Stage.POWER_DELIVERY_STOP else "Start"
        return f"{kind.kind()}({progress})"
    return kind.kind()


def expected_kinds(
    previous: Stage | None, branch: models.ChargingBranch
) -> tuple[str, ...]:
    previous = Stage.NONE if previous is None else previous
    return tuple(_label(kind, stage) for kind, stage in _next_kinds(previous, branch))


def validate_transition(
    previous: Stage | None,
    body: models.Body,
    branch: models.ChargingBranch,
) -> Stage:
    """Check that `body` is a legal next request and return its stage."""
    previous = Stage.NONE if previous is None else previous
    candidates = _next_kinds(previous, branch)
    stage = stage_of(body)
    for kind, next_stage in candidates:
        if isinstance(body, kind) and stage is next_stage:
            return next_stage

    got = body.kind()
    if isinstance(body, models.PowerDeliveryReq):
        got = f"{got}({body.charge_progress.value})"
    raise msg_exc.SequenceViolation(
        expected=expected_kinds(previous, branch), got=got
    )
