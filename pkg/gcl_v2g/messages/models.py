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
import typing as tp

SESSION_ID_SIZE = 8
EVCC_ID_SIZE = 6
MIN_PRIORITY = 1
MAX_PRIORITY = 20


class EnergyTransferMode(str, enum.Enum):
    AC_SINGLE_PHASE = "AC_single_phase"
    AC_THREE_PHASE = "AC_three_phase"
    DC_EXTENDED = "DC_extended"

    @property
    def is_dc(self) -> bool:
        return self is EnergyTransferMode.DC_EXTENDED

    @property
    def branch(self) -> ChargingBranch:
        return ChargingBranch.DC if self.is_dc else ChargingBranch.AC


class ChargingBranch(str, enum.Enum):
    AC = "AC"
    DC = "DC"


class ResponseCode(str, enum.Enum):
    OK = "OK"
    FAILED_NO_NEGOTIATION = "FAILED_NoNegotiation"
    FAILED_UNKNOWN_SESSION = "FAILED_UnknownSession"
    FAILED_WRONG_ENERGY_TRANSFER_MODE = "FAILED_WrongEnergyTransferMode"
    FAILED_SERVICE_SELECTION = "FAILED_ServiceSelection"
    FAILED = "FAILED"

    @property
    def is_ok(self) -> bool:
        return self is ResponseCode.OK


class PaymentOption(str, enum.Enum):
    CONTRACT = "Contract"
    EXTERNAL_PAYMENT = "ExternalPayment"


class ChargeProgress(str, enum.Enum):
    START = "Start"
    STOP = "Stop"


class TerminationType(str, enum.Enum):
    TERMINATE = "Terminate"
    PAUSE = "Pause"


@dataclasses.dataclass(frozen=True)
class SessionId:
    value: bytes

    def __post_init__(self) -> None:
        if len(self.value) != SESSION_ID_SIZE:
            raise ValueError(
                f"Session ID must be {SESSION_ID_SIZE} bytes, got {len(self.value)}"
            )

    @classmethod
    def zero(cls) -> SessionId:
        return cls(bytes(SESSION_ID_SIZE))

    @classmethod
    def from_hex(cls, value: str) -> SessionId:
        return cls(bytes.fromhex(value))

    @property
    def is_zero(self) -> bool:
        return not any(self.value)

    @property
    def hex(self) -> str:
        return self.value.hex().upper()

    def __str__(self) -> str:
        return self.hex


@dataclasses.dataclass(frozen=True)
class AppProtocol:
    protocol_namespace: str
    version_number_major: int
    version_number_minor: int
    schema_id: int
    priority: int

    def __post_init__(self) -> None:
        if not MIN_PRIORITY <= self.priority <= MAX_PRIORITY:
            raise ValueError(f"Priority {self.priority} out of range")
        if self.version_number_major < 0 or self.version_number_minor < 0:
            raise ValueError("Protocol versions must be non-negative")


@dataclasses.dataclass(frozen=True)
class MeterInfo:
    meter_id: str
    meter_reading: int
    timestamp: int

    def __post_init__(self) -> None:
        if self.meter_reading < 0:
            raise ValueError("Meter reading must be non-negative")


class Body:
    """Base of every message body.

    Subclasses are frozen dataclasses; the class name is the message kind
    and the element name in documents.
    """

    is_request: tp.ClassVar[bool] = True

    @classmethod
    def kind(cls) -> str:
        return cls.__name__


class Request(Body):
    is_request = True


class Response(Body):
    is_request = False

    response_code: ResponseCode


def _items(name: str) -> tp.Any:
    return dataclasses.field(default=(), metadata={"item": name})


@dataclasses.dataclass(frozen=True)
class SupportedAppProtocolReq(Request):
    app_protocols: tuple[AppProtocol, ...] = _items("appProtocol")

    def __post_init__(self) -> None:
        if not self.app_protocols:
            raise ValueError("At least one app protocol must be offered")
        priorities = [p.priority for p in self.app_protocols]
        if len(set(priorities)) != len(priorities):
            raise ValueError("App protocol priorities must be unique")


@dataclasses.dataclass(frozen=True)
class SupportedAppProtocolRes(Response):
    response_code: ResponseCode
    schema_id: int | None = None


@dataclasses.dataclass(frozen=True)
class SessionSetupReq(Request):
    evcc_id: bytes

    def __post_init__(self) -> None:
        if len(self.evcc_id) != EVCC_ID_SIZE:
            raise ValueError(f"EVCC ID must be {EVCC_ID_SIZE} bytes")


@dataclasses.dataclass(frozen=True)
class SessionSetupRes(Response):
    response_code: ResponseCode
    evse_id: str = ""


@dataclasses.dataclass(frozen=True)
class ServiceDiscoveryReq(Request):
    pass


@dataclasses.dataclass(frozen=True)
class ServiceDiscoveryRes(Response):
    response_code: ResponseCode
    payment_options: tuple[PaymentOption, ...] = _items("paymentOption")
    free_service: bool = False
    energy_transfer_modes: tuple[EnergyTransferMode, ...] = _items(
        "energyTransferMode"
    )


@dataclasses.dataclass(frozen=True)
class PaymentServiceSelectionReq(Request):
    selected_payment_option: PaymentOption


@dataclasses.dataclass(frozen=True)
class PaymentServiceSelectionRes(Response):
    response_code: ResponseCode


@dataclasses.dataclass(frozen=True)
class AuthorizationReq(Request):
    pass


@dataclasses.dataclass(frozen=True)
class AuthorizationRes(Response):
    response_code: ResponseCode


@dataclasses.dataclass(frozen=True)
class ChargeParameterDiscoveryReq(Request):
    requested_energy_transfer_mode: EnergyTransferMode
    max_voltage: int
    max_current: int
    energy_request: int


@dataclasses.dataclass(frozen=True)
class ChargeParameterDiscoveryRes(Response):
    response_code: ResponseCode
    evse_max_voltage: int = 0
    evse_max_current: int = 0


@dataclasses.dataclass(frozen=True)
class CableCheckReq(Request):
    pass


@dataclasses.dataclass(frozen=True)
class CableCheckRes(Response):
    response_code: ResponseCode


@dataclasses.dataclass(frozen=True)
class PreChargeReq(Request):
    target_voltage: int


@dataclasses.dataclass(frozen=True)
class PreChargeRes(Response):
    response_code: ResponseCode
    present_voltage: int = 0


@dataclasses.dataclass(frozen=True)
class PowerDeliveryReq(Request):
    charge_progress: ChargeProgress
    # Energy per charging loop pass, Wh.
    charging_profile: tuple[int, ...] = _items("entry")


@dataclasses.dataclass(frozen=True)
class PowerDeliveryRes(Response):
    response_code: ResponseCode


@dataclasses.dataclass(frozen=True)
class ChargingStatusReq(Request):
    pass


@dataclasses.dataclass(frozen=True)
class ChargingStatusRes(Response):
    response_code: ResponseCode
    evse_id: str = ""
    meter_info: MeterInfo | None = None
    receipt_required: bool = False


@dataclasses.dataclass(frozen=True)
class CurrentDemandReq(Request):
    target_voltage: int
    target_current: int


@dataclasses.dataclass(frozen=True)
class CurrentDemandRes(Response):
    response_code: ResponseCode
    present_voltage: int = 0
    present_current: int = 0
    meter_info: MeterInfo | None = None
    receipt_required: bool = False


@dataclasses.dataclass(frozen=True)
class WeldingDetectionReq(Request):
    pass


@dataclasses.dataclass(frozen=True)
class WeldingDetectionRes(Response):
    response_code: ResponseCode
    present_voltage: int = 0


@dataclasses.dataclass(frozen=True)
class MeteringReceiptReq(Request):
    meter_info: MeterInfo


@dataclasses.dataclass(frozen=True)
class MeteringReceiptRes(Response):
    response_code: ResponseCode


@dataclasses.dataclass(frozen=True)
class SessionStopReq(Request):
    termination_type: TerminationType


@dataclasses.dataclass(frozen=True)
class SessionStopRes(Response):
    response_code: ResponseCode


# Recognized for completeness, never part of a legal sequence.
@dataclasses.dataclass(frozen=True)
class CertificateInstallationReq(Request):
    pass


@dataclasses.dataclass(frozen=True)
class CertificateInstallationRes(Response):
    response_code: ResponseCode


@dataclasses.dataclass(frozen=True)
class CertificateUpdateReq(Request):
    pass


@dataclasses.dataclass(frozen=True)
class CertificateUpdateRes(Response):
    response_code: ResponseCode


REQUEST_RESPONSE: dict[type[Request], type[Response]] = {
    SupportedAppProtocolReq: SupportedAppProtocolRes,
    SessionSetupReq: SessionSetupRes,
    ServiceDiscoveryReq: ServiceDiscoveryRes,
    PaymentServiceSelectionReq: PaymentServiceSelectionRes,
    AuthorizationReq: AuthorizationRes,
    ChargeParameterDiscoveryReq: ChargeParameterDiscoveryRes,
    CableCheckReq: CableCheckRes,
    PreChargeReq: PreChargeRes,
    PowerDeliveryReq: PowerDeliveryRes,
    ChargingStatusReq: ChargingStatusRes,
    CurrentDemandReq: CurrentDemandRes,
    WeldingDetectionReq: WeldingDetectionRes,
    MeteringReceiptReq: MeteringReceiptRes,
    SessionStopReq: SessionStopRes,
    CertificateInstallationReq: CertificateInstallationRes,
    CertificateUpdateReq: CertificateUpdateRes,
}
RESPONSE_REQUEST: dict[type[Response], type[Request]] = {
    res: req for req, res in REQUEST_RESPONSE.items()
}
CERTIFICATE_KINDS: frozenset[type[Body]] = frozenset(
    {
        CertificateInstallationReq,
        CertificateInstallationRes,
        CertificateUpdateReq,
        CertificateUpdateRes,
    }
)

BODY_TYPES: dict[str, type[Body]] = {
    cls.kind(): cls for pair in REQUEST_RESPONSE.items() for cls in pair
}


def response_type(body: Request | type[Request]) -> type[Response]:
    cls = body if isinstance(body, type) else type(body)
    return REQUEST_RESPONSE[cls]


@dataclasses.dataclass(frozen=True)
class V2GMessage:
    session_id: SessionId
    body: Body

    @property
    def kind(self) -> str:
        return self.body.kind()

    @property
    def is_request(self) -> bool:
        return self.body.is_request
