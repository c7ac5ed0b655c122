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

"""Controller states.

Both controllers walk the pre-session states and then one state per stage of
the charge sequence; the stage order itself is enforced by
``messages.sequence.validate_transition``.
"""

from __future__ import annotations

import enum

from gcl_v2g.controllers import exceptions as ctl_exc
from gcl_v2g.messages import sequence


class EvccState(str, enum.Enum):
    IDLE = "Idle"
    DISCOVERING = "Discovering"
    CONNECTING = "Connecting"
    HANDSHAKING = "Handshaking"
    NEGOTIATING = "Negotiating"
    SESSION_SETUP = "SessionSetup"
    SERVICE_DISCOVERY = "ServiceDiscovery"
    PAYMENT_SERVICE_SELECTION = "PaymentServiceSelection"
    AUTHORIZATION = "Authorization"
    CHARGE_PARAMETER_DISCOVERY = "ChargeParameterDiscovery"
    CABLE_CHECK = "CableCheck"
    PRE_CHARGE = "PreCharge"
    POWER_DELIVERY_START = "PowerDeliveryStart"
    CHARGING_LOOP = "ChargingLoop"
    POWER_DELIVERY_STOP = "PowerDeliveryStop"
    WELDING_DETECTION = "WeldingDetection"
    SESSION_STOP = "SessionStop"
    DONE = "Done"
    FAILED = "Failed"


class SeccState(str, enum.Enum):
    IDLE = "Idle"
    HANDSHAKING = "Handshaking"
    NEGOTIATING = "Negotiating"
    SESSION_SETUP = "SessionSetup"
    SERVICE_DISCOVERY = "ServiceDiscovery"
    PAYMENT_SERVICE_SELECTION = "PaymentServiceSelection"
    AUTHORIZATION = "Authorization"
    CHARGE_PARAMETER_DISCOVERY = "ChargeParameterDiscovery"
    CABLE_CHECK = "CableCheck"
    PRE_CHARGE = "PreCharge"
    POWER_DELIVERY_START = "PowerDeliveryStart"
    CHARGING_LOOP = "ChargingLoop"
    POWER_DELIVERY_STOP = "PowerDeliveryStop"
    WELDING_DETECTION = "WeldingDetection"
    SESSION_STOP = "SessionStop"
    DONE = "Done"
    FAILED = "Failed"


# Keyed by member name per state class: members of the two str enums with equal
# values compare and hash equal.
_PRE_SESSION: dict[type, dict[str, frozenset[str]]] = {
    EvccState: {
        "IDLE": frozenset({"DISCOVERING"}),
        "DISCOVERING": frozenset({"CONNECTING"}),
        "CONNECTING": frozenset({"HANDSHAKING", "NEGOTIATING"}),
        "HANDSHAKING": frozenset({"NEGOTIATING"}),
    },
    SeccState: {
        "IDLE": frozenset({"HANDSHAKING", "NEGOTIATING"}),
        "HANDSHAKING": frozenset({"NEGOTIATING"}),
    },
}


def for_stage(state_type: type[EvccState] | type[SeccState], stage: sequence.Stage):
    if stage is sequence.Stage.SUPPORTED_APP_PROTOCOL:
        return state_type.NEGOTIATING
    return state_type[stage.name]


def stage_of_state(state: EvccState | SeccState) -> sequence.Stage | None:
    if state.name == "NEGOTIATING":
        return sequence.Stage.SUPPORTED_APP_PROTOCOL
    return sequence.Stage.__members__.get(state.name)


def check_transition(current: EvccState | SeccState, target: EvccState | SeccState):
    """Return `target` if the controller may move there from `current`."""
    if type(target) is not type(current):
        raise ctl_exc.InvalidTransition(current=current.value, target=target.value)
    if target.name == "FAILED" and current.name not in ("DONE", "FAILED"):
        return target
    if target.name in _PRE_SESSION[type(current)].get(current.name, ()):
        return target
    if current.name == "SESSION_STOP" and target.name == "DONE":
        return target
    current_stage = stage_of_state(current)
    target_stage = stage_of_state(target)
    if (
        current_stage is not None
        and target_stage is not None
        and target_stage >= current_stage
    ):
        return target
    raise ctl_exc.InvalidTransition(current=current.value, target=target.value)
