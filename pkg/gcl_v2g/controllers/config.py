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

from gcl_v2g.common import constants
from gcl_v2g.controllers import exceptions as ctl_exc
from gcl_v2g.messages import models
from gcl_v2g.securechannel import identity as sc_identity

ISO_15118_2 = "urn:iso:15118:2:2013:MsgDef"
DIN_70121 = "urn:din:70121:2012:MsgDef"

SECC_PROTOCOLS = (
    models.AppProtocol(ISO_15118_2, 2, 0, schema_id=10, priority=1),
    models.AppProtocol(DIN_70121, 2, 0, schema_id=20, priority=2),
)
EVCC_PROTOCOLS = (models.AppProtocol(ISO_15118_2, 2, 0, schema_id=10, priority=1),)


@dataclasses.dataclass(frozen=True)
class EvConfig:
    voltage_accuracy: float = 0.05
    tls: bool = False
    session_id: models.SessionId | None = None
    network_interface: str = "eth0"
    energy_transfer_mode_requested: models.EnergyTransferMode = (
        models.EnergyTransferMode.AC_THREE_PHASE
    )
    # Defaults to the host link address.
    evcc_id: bytes | None = None
    charging_loop_iterations: int = 3
    sdp_port: int = constants.V2G_SDP_PORT
    trust_anchor: sc_identity.TrustAnchor | None = None
    app_protocols: tuple[models.AppProtocol, ...] = EVCC_PROTOCOLS
    # Wh
    energy_request: int = 20000
    max_voltage: int = 400
    max_current: int = 32

    def __post_init__(self) -> None:
        if self.charging_loop_iterations < 1:
            raise ctl_exc.InvalidConfig(
                role="EV", reason="charging loop iterations must be at least 1"
            )
        if not 0 < self.voltage_accuracy <= 1:
            raise ctl_exc.InvalidConfig(
                role="EV", reason="voltage accuracy must be in (0, 1]"
            )
        if self.evcc_id is not None and len(self.evcc_id) != models.EVCC_ID_SIZE:
            raise ctl_exc.InvalidConfig(
                role="EV", reason=f"EVCC ID must be {models.EVCC_ID_SIZE} bytes"
            )
        if not self.app_protocols:
            raise ctl_exc.InvalidConfig(role="EV", reason="no app protocol offered")
        if self.tls and self.trust_anchor is None:
            raise ctl_exc.InvalidConfig(
                role="EV", reason="tls requires a trust anchor"
            )


@dataclasses.dataclass(frozen=True)
class SeConfig:
    free_service: bool = False
    network_interface: str = "eth0"
    energy_transfer_modes_supported: tuple[models.EnergyTransferMode, ...] = (
        models.EnergyTransferMode.AC_SINGLE_PHASE,
        models.EnergyTransferMode.AC_THREE_PHASE,
    )
    evse_id: str = "DE*GCL*E0001"
    sdp_port: int = constants.V2G_SDP_PORT
    v2g_port: int = constants.V2G_SECC_PORT
    tls_identity: sc_identity.Identity | None = None
    tls_required: bool = False
    metering_receipt: bool = False
    app_protocols: tuple[models.AppProtocol, ...] = SECC_PROTOCOLS
    payment_options: tuple[models.PaymentOption, ...] = (
        models.PaymentOption.EXTERNAL_PAYMENT,
        models.PaymentOption.CONTRACT,
    )
    max_voltage: int = 400
    max_current: int = 32

    def __post_init__(self) -> None:
        modes = self.energy_transfer_modes_supported
        if not modes:
            raise ctl_exc.InvalidConfig(
                role="SE", reason="energy transfer mode list is empty"
            )
        if len(set(modes)) != len(modes):
            raise ctl_exc.InvalidConfig(
                role="SE", reason="energy transfer mode list has duplicates"
            )
        if self.tls_required and self.tls_identity is None:
            raise ctl_exc.InvalidConfig(
                role="SE", reason="tls.required needs a tls identity"
            )
        for port in (self.sdp_port, self.v2g_port):
            if not 0 < port < 65536:
                raise ctl_exc.InvalidConfig(role="SE", reason=f"bad port {port}")
